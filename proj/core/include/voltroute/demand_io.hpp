#pragma once

#include <string>
#include <string_view>

#include "voltroute/electric_router.hpp"

namespace voltroute {

// Demand-set text format:
//
//   n k
//   <k lines>
//
// Each line is either a dense column of n reals, or the shorthand
// "s t amount" for amount * (chi_s - chi_t). A line with exactly n tokens is
// always read as a dense column, so for n = 3 every line is dense.
// '#' starts a comment. Throws ParseError with the line number.
DemandSet parse_demand_set(std::string_view text);

// Dense form, one column per line.
std::string serialize_demand_set(const DemandSet& ds);

}  // namespace voltroute
