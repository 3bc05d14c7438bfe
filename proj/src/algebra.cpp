#include "ctdb/algebra.hpp"

#include <map>

namespace ctdb {
namespace algebra {

void validate_predicate(const Predicate& p, std::size_t arity) {
    p.for_each_atom([&](const PredAtom& a) {
        for (const PredOperand* side : {&a.lhs, &a.rhs}) {
            if (side->is_column() && side->column_index() >= arity) {
                throw SchemaMismatchError("predicate references column index " +
                                          std::to_string(side->column_index()) +
                                          " beyond arity " + std::to_string(arity));
            }
        }
    });
}

Condition specialize(const Predicate& p, std::span<const Term> row_terms) {
    auto resolve = [&](const PredOperand& operand) -> Term {
        if (!operand.is_column()) return operand.term();
        std::size_t idx = operand.column_index();
        if (idx >= row_terms.size()) {
            throw SchemaMismatchError("predicate column index out of range");
        }
        return row_terms[idx];
    };
    return p.map_atoms(
        [&](const PredAtom& a) { return Atom{resolve(a.lhs), a.op, resolve(a.rhs)}; });
}

namespace {

bool condition_has_vars(const Condition& c) {
    bool found = false;
    c.for_each_atom([&](const Atom& a) {
        if (a.lhs.is_variable() || a.rhs.is_variable()) found = true;
    });
    return found;
}

// Shared row filter: keep the row iff `candidate` is satisfiable, storing
// its simplification; count dropped variable-bearing rows as pruned.
bool keep_row(const Condition& candidate, const GlobalCondition& g, Condition& out,
              OpStats* stats) {
    Condition simplified = simplify(candidate, g);
    if (simplified.is_false()) {
        if (stats && condition_has_vars(candidate)) ++stats->pruned_rows;
        return false;
    }
    out = std::move(simplified);
    return true;
}

} // namespace

CTable select_(const CTable& t, const Predicate& p, const GlobalCondition& g, OpStats* stats) {
    validate_predicate(p, t.schema.columns.size());
    CTable out{t.schema, {}};
    for (const auto& row : t.rows) {
        Condition candidate =
            Condition::all_of({row.local, specialize(p, row.terms)});
        Condition kept;
        if (keep_row(candidate, g, kept, stats)) {
            out.rows.push_back(CTuple{row.terms, std::move(kept)});
        }
    }
    return out;
}

CTable project(const CTable& t, const std::vector<std::size_t>& cols, const GlobalCondition& g) {
    if (cols.empty()) throw SchemaMismatchError("projection must keep at least one column");
    Schema out_schema{t.schema.table_name, {}};
    for (std::size_t c : cols) {
        if (c >= t.schema.columns.size()) {
            throw SchemaMismatchError("projection column index out of range");
        }
        out_schema.columns.push_back(t.schema.columns[c]);
    }
    CTable out{std::move(out_schema), {}};
    // First-occurrence order; duplicate term arrays OR-merge their conditions.
    std::map<std::vector<Term>, std::size_t> seen;
    std::vector<bool> merged;
    for (const auto& row : t.rows) {
        std::vector<Term> projected;
        projected.reserve(cols.size());
        for (std::size_t c : cols) projected.push_back(row.terms[c]);
        auto [it, inserted] = seen.emplace(projected, out.rows.size());
        if (inserted) {
            out.rows.push_back(CTuple{std::move(projected), row.local});
            merged.push_back(false);
        } else {
            CTuple& target = out.rows[it->second];
            target.local = Condition::any_of({target.local, row.local});
            merged[it->second] = true;
        }
    }
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        if (merged[i]) out.rows[i].local = simplify(out.rows[i].local, g);
    }
    return out;
}

CTable join(const CTable& l, const CTable& r, const Predicate& on, const GlobalCondition& g,
            OpStats* stats) {
    std::size_t arity = l.schema.columns.size() + r.schema.columns.size();
    validate_predicate(on, arity);
    Schema out_schema{l.schema.table_name, l.schema.columns};
    out_schema.columns.insert(out_schema.columns.end(), r.schema.columns.begin(),
                              r.schema.columns.end());
    validate_schema(out_schema);
    CTable out{std::move(out_schema), {}};
    std::vector<Term> combined;
    for (const auto& lrow : l.rows) {
        for (const auto& rrow : r.rows) {
            combined = lrow.terms;
            combined.insert(combined.end(), rrow.terms.begin(), rrow.terms.end());
            Condition candidate = Condition::all_of(
                {lrow.local, rrow.local, specialize(on, combined)});
            Condition kept;
            if (keep_row(candidate, g, kept, stats)) {
                out.rows.push_back(CTuple{combined, std::move(kept)});
            }
        }
    }
    return out;
}

void insert_tuple(CTable& t, std::vector<Term> terms, Condition local, const GlobalCondition& g) {
    if (terms.size() != t.schema.columns.size()) {
        throw SchemaMismatchError("expected " + std::to_string(t.schema.columns.size()) +
                                  " values, got " + std::to_string(terms.size()));
    }
    for (Term term : terms) {
        if (term.is_variable() && !g.contains(term.var_id())) {
            throw UnknownVariableError("variable x" + std::to_string(term.var_id()) +
                                       " is not declared");
        }
    }
    for (std::uint32_t var : vars_of(local)) {
        if (!g.contains(var)) {
            throw UnknownVariableError("variable x" + std::to_string(var) + " is not declared");
        }
    }
    t.rows.push_back(CTuple{std::move(terms), std::move(local)});
}

CTable prune(const CTable& t, const GlobalCondition& g, OpStats* stats) {
    CTable out{t.schema, {}};
    for (const auto& row : t.rows) {
        Condition kept;
        if (keep_row(row.local, g, kept, stats)) {
            out.rows.push_back(CTuple{row.terms, std::move(kept)});
        }
    }
    return out;
}

} // namespace algebra
} // namespace ctdb
