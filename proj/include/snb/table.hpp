#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "snb/core.hpp"

namespace snb {

/// One result cell. Lists hold multi-valued attributes ("emails", path node
/// sequences, ...). Doubles are produced by identical expressions in the
/// engine and the oracle, so equality comparison is exact.
using Value = std::variant<std::int64_t, double, std::string, bool, std::vector<std::int64_t>,
                           std::vector<std::string>>;

using Row = std::vector<Value>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

/// Three-way comparison; throws SnbError when the alternatives differ.
int compare_values(const Value& a, const Value& b);

/// Lexicographic over cells; shorter row first on shared prefix.
int compare_rows(const Row& a, const Row& b);

struct SortKey {
    std::size_t column = 0;
    bool descending = false;
};

/// Orders rows by the keys, breaking remaining ties by the whole row
/// ascending so the final order never depends on input order.
void sort_rows(ResultTable& t, const std::vector<SortKey>& keys);

void truncate_rows(ResultTable& t, std::size_t limit);

/// Doubles as "%.12g", bools as true/false, lists ';'-joined.
std::string format_value(const Value& v);
std::string format_row(const Row& r);  // cells '|'-joined

bool table_equal(const ResultTable& a, const ResultTable& b);
/// Empty string when equal, otherwise a description of the first difference.
std::string table_diff(const ResultTable& a, const ResultTable& b);

}  // namespace snb
