// Runs the acceptance criteria and prints one line per criterion.
//   acceptance [--quick] [--threads N] [--criterion K]
// Exit status 0 when every criterion that ran passed, 1 otherwise.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "chainpart/acceptance.hpp"

int main(int argc, char** argv) {
  chainpart::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      opts.profile = chainpart::Profile::Quick;
    } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      opts.threads = static_cast<unsigned>(std::atoi(argv[++i]));
    } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      opts.only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--quick] [--threads N] [--criterion K]\n";
      return 1;
    }
  }
  bool ok = true;
  for (const auto& r : chainpart::run_acceptance(opts)) {
    std::cout << chainpart::format_text(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
