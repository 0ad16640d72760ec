#pragma once

#include <string>
#include <string_view>

#include "chainpart/core.hpp"

namespace chainpart {

/// {"p":2,"q":3,"parts":[[1,2],[0,0]],"sum":"19"}; with_values adds
/// "values":["18","1"] after "parts".
std::string to_json(const Partition& pt, const PQSystem& sys, bool with_values = false);

/// Parses the object written by to_json. The system must match and "sum",
/// when present, must equal the value of the parts.
Partition partition_from_json(std::string_view text, const PQSystem& sys);

/// "18+1" style, largest part first; "0" for the empty partition.
std::string to_sum_string(const Partition& pt, const PQSystem& sys);

}  // namespace chainpart
