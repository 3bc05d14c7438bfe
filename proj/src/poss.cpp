#include "ctdb/poss.hpp"

namespace ctdb {
namespace poss {

std::vector<std::uint32_t> align_tuple(const Schema& schema, const GroundTuple& t) {
    if (t.entries.size() != schema.columns.size()) {
        throw ColumnMismatchError("tuple has " + std::to_string(t.entries.size()) +
                                  " columns, table has " +
                                  std::to_string(schema.columns.size()));
    }
    std::vector<std::uint32_t> values(schema.columns.size(), 0);
    std::vector<bool> filled(schema.columns.size(), false);
    for (const auto& [name, value] : t.entries) {
        auto idx = find_column(schema, name);
        if (!idx) throw ColumnMismatchError("unknown column " + name);
        if (filled[*idx]) throw ColumnMismatchError("duplicate column " + name);
        filled[*idx] = true;
        values[*idx] = value;
    }
    return values;
}

namespace {

Condition match_aligned(const CTuple& u, const std::vector<std::uint32_t>& values) {
    std::vector<Condition> parts;
    parts.reserve(values.size() + 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        Term cell = u.terms[i];
        if (cell.is_constant()) {
            if (cell.constant_code() != values[i]) return Condition::never();
        } else {
            parts.push_back(Condition::atom(
                Atom{cell, CmpOp::Eq, Term::constant(values[i])}));
        }
    }
    parts.push_back(u.local);
    return Condition::all_of(std::move(parts));
}

// Disjunction over rows of "row u becomes t".
Condition any_row_matches(const CTable& src, const std::vector<std::uint32_t>& values) {
    std::vector<Condition> options;
    options.reserve(src.rows.size());
    for (const auto& row : src.rows) options.push_back(match_aligned(row, values));
    return Condition::any_of(std::move(options));
}

Condition set_condition(const std::vector<GroundTuple>& ts, const CTable& src) {
    if (ts.size() > kMaxTupleSet) {
        throw SetTooLargeError("tuple sets are limited to " + std::to_string(kMaxTupleSet) +
                               " tuples");
    }
    std::vector<Condition> per_tuple;
    per_tuple.reserve(ts.size());
    for (const auto& t : ts) {
        per_tuple.push_back(any_row_matches(src, align_tuple(src.schema, t)));
    }
    return Condition::all_of(std::move(per_tuple));
}

} // namespace

Condition match_condition(const CTuple& u, const GroundTuple& t, const Schema& schema) {
    return match_aligned(u, align_tuple(schema, t));
}

bool is_possible(const GroundTuple& t, const CTable& src, const GlobalCondition& g) {
    std::vector<std::uint32_t> values = align_tuple(src.schema, t);
    for (const auto& row : src.rows) {
        if (sat_under(match_aligned(row, values), g)) return true;
    }
    return false;
}

bool is_certain(const GroundTuple& t, const CTable& src, const GlobalCondition& g) {
    return taut_under(any_row_matches(src, align_tuple(src.schema, t)), g);
}

bool is_possible_set(const std::vector<GroundTuple>& ts, const CTable& src,
                     const GlobalCondition& g) {
    return sat_under(set_condition(ts, src), g);
}

bool is_certain_set(const std::vector<GroundTuple>& ts, const CTable& src,
                    const GlobalCondition& g) {
    return taut_under(set_condition(ts, src), g);
}

} // namespace poss
} // namespace ctdb
