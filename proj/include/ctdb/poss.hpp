#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ctdb/ctable.hpp"

namespace ctdb {
namespace poss {

/// A complete tuple given as (column name, constant) pairs, in any order.
/// The names must cover exactly the columns of the target table.
struct GroundTuple {
    std::vector<std::pair<std::string, std::uint32_t>> entries;
};

/// Largest tuple set accepted by the set variants.
inline constexpr std::size_t kMaxTupleSet = 4;

/// Reorders `t` against `schema`, returning the value for each column
/// position. Throws ColumnMismatchError on missing, unknown or duplicate
/// columns.
std::vector<std::uint32_t> align_tuple(const Schema& schema, const GroundTuple& t);

/// The formula "row u becomes t": per column, a constant cell contributes
/// TRUE/FALSE by equality and a variable cell contributes var = value;
/// conjoined with u's local condition.
Condition match_condition(const CTuple& u, const GroundTuple& t, const Schema& schema);

/// True iff some valuation admissible under `g` realizes `t` in `src`.
bool is_possible(const GroundTuple& t, const CTable& src, const GlobalCondition& g);

/// True iff `t` appears in `src` under every admissible valuation.
bool is_certain(const GroundTuple& t, const CTable& src, const GlobalCondition& g);

/// True iff one admissible valuation realizes all tuples simultaneously.
bool is_possible_set(const std::vector<GroundTuple>& ts, const CTable& src,
                     const GlobalCondition& g);

/// True iff every admissible valuation realizes all tuples.
bool is_certain_set(const std::vector<GroundTuple>& ts, const CTable& src,
                    const GlobalCondition& g);

} // namespace poss
} // namespace ctdb
