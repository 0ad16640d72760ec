#include "chainpart/serialize.hpp"

#include <json.hpp>

namespace chainpart {

using ordered_json = nlohmann::ordered_json;

std::string to_json(const Partition& pt, const PQSystem& sys, bool with_values) {
  ordered_json j;
  j["p"] = sys.p();
  j["q"] = sys.q();
  ordered_json parts = ordered_json::array();
  for (Exponents e : pt.parts()) parts.push_back({e.a, e.b});
  j["parts"] = std::move(parts);
  if (with_values) {
    ordered_json values = ordered_json::array();
    for (Exponents e : pt.parts()) values.push_back(to_decimal(part_value(e, sys)));
    j["values"] = std::move(values);
  }
  j["sum"] = to_decimal(value(pt, sys));
  return j.dump();
}

Partition partition_from_json(std::string_view text, const PQSystem& sys) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    if (j.at("p").get<unsigned long>() != sys.p() || j.at("q").get<unsigned long>() != sys.q()) {
      throw DomainError("partition was written for a different (p,q)");
    }
    std::vector<Exponents> chain;
    for (const auto& pair : j.at("parts")) {
      if (!pair.is_array() || pair.size() != 2) throw DomainError("each part must be an [a,b] pair");
      chain.push_back({pair[0].get<std::uint32_t>(), pair[1].get<std::uint32_t>()});
    }
    Partition pt = Partition::from_chain(std::move(chain));
    if (j.contains("sum") && parse_nat(j["sum"].get<std::string>()) != value(pt, sys)) {
      throw DomainError("\"sum\" does not match the parts");
    }
    return pt;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed partition JSON: ") + e.what());
  }
}

std::string to_sum_string(const Partition& pt, const PQSystem& sys) {
  if (pt.empty()) return "0";
  std::string out;
  for (Exponents e : pt.parts()) {
    if (!out.empty()) out += '+';
    out += to_decimal(part_value(e, sys));
  }
  return out;
}

}  // namespace chainpart
