#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "linset/subspace.hpp"
#include "linset/tower.hpp"

namespace linset {

// Subspace text format. Header line `p h n r e m`, then m rows of r*(n/e)
// decimal entries over F_{q^e}; each entry is the packed value of the element
// (e*h base-p digits, low-first). Rows are the F_{q^e}-level reduced echelon
// basis, so the round trip is exact.
[[nodiscard]] std::string serialize_subspace(const Subspace& u);
[[nodiscard]] Subspace parse_subspace(const std::string& text,
                                      uint64_t table_limit = kDefaultTableLimit);
[[nodiscard]] Subspace read_subspace_file(const std::string& path,
                                          uint64_t table_limit = kDefaultTableLimit);

// Additive-function table: Q non-comment lines `x f(x)` with both entries as
// packed field values over the prime subfield; Q must be a prime power p^h
// and every x in [0, Q) must appear exactly once.
struct FunctionTable {
    TowerPtr tower;                 // tower (p, 1, h) so the top field is F_Q
    std::vector<Fe> values;         // f(x) indexed by packed value of x
};
[[nodiscard]] FunctionTable parse_function_table(const std::string& text,
                                                 uint64_t table_limit = kDefaultTableLimit);
[[nodiscard]] std::string serialize_function_table(const FunctionTable& f);

// Distinguishes the two `directions` input shapes: a subspace file has a
// 6-integer header, a function table has 2-integer lines.
enum class InputKind { subspace, function_table };
[[nodiscard]] InputKind sniff_input(const std::string& text);

[[nodiscard]] std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace linset
