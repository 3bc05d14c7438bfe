#include "ctdb/ctable.hpp"

#include <algorithm>
#include <cctype>

namespace ctdb {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<std::size_t> find_column(const Schema& schema, std::string_view name) {
    for (std::size_t i = 0; i < schema.columns.size(); ++i) {
        if (iequals(schema.columns[i], name)) return i;
    }
    return std::nullopt;
}

void validate_schema(const Schema& schema) {
    if (schema.columns.empty()) {
        throw SchemaMismatchError("table " + schema.table_name + " must have at least one column");
    }
    std::set<std::string> seen;
    for (const auto& col : schema.columns) {
        if (!seen.insert(to_lower(col)).second) {
            throw SchemaMismatchError("duplicate column name " + col);
        }
    }
}

std::set<std::uint32_t> table_vars(const CTable& t) {
    std::set<std::uint32_t> vars;
    for (const auto& row : t.rows) {
        for (Term term : row.terms) {
            if (term.is_variable()) vars.insert(term.var_id());
        }
        collect_vars(row.local, vars);
    }
    return vars;
}

Relation apply_valuation(const CTable& t, const Valuation& v) {
    Relation out(t.schema);
    for (const auto& row : t.rows) {
        if (!eval_ground(row.local, v)) continue;
        std::vector<std::uint32_t> ground;
        ground.reserve(row.terms.size());
        for (Term term : row.terms) {
            if (term.is_constant()) {
                ground.push_back(term.constant_code());
            } else {
                auto bound = v.value_of(term.var_id());
                if (!bound) {
                    throw UnboundVariableError("variable x" + std::to_string(term.var_id()) +
                                               " is not bound");
                }
                ground.push_back(*bound);
            }
        }
        out.insert(std::move(ground));
    }
    return out;
}

ValuationEnumerator::ValuationEnumerator(const GlobalCondition& g,
                                         const std::set<std::uint32_t>& vars, std::uint64_t cap)
    : vars_(vars.begin(), vars.end()), idx_(vars.size(), 0) {
    domains_.reserve(vars_.size());
    for (std::uint32_t var : vars_) {
        const auto* dom = g.domain_of(var);
        if (!dom) throw UnknownVariableError("variable x" + std::to_string(var) + " has no domain");
        if (total_ > cap / dom->size()) {
            throw EnumerationCapError("valuation count exceeds enumeration cap");
        }
        total_ *= dom->size();
        domains_.push_back(*dom);
    }
}

bool ValuationEnumerator::next(Valuation& out) {
    if (done_) return false;
    if (first_) {
        first_ = false;
    } else {
        std::size_t pos = vars_.size();
        for (;;) {
            if (pos == 0) {
                done_ = true;
                return false;
            }
            --pos;
            if (++idx_[pos] < domains_[pos].size()) break;
            idx_[pos] = 0;
        }
    }
    out = Valuation();
    for (std::size_t i = 0; i < vars_.size(); ++i) out.bind(vars_[i], domains_[i][idx_[i]]);
    if (vars_.empty()) done_ = true; // single empty valuation
    return true;
}

std::vector<Valuation> enumerate_valuations(const GlobalCondition& g,
                                            const std::set<std::uint32_t>& vars,
                                            std::uint64_t cap) {
    ValuationEnumerator en(g, vars, cap);
    std::vector<Valuation> out;
    out.reserve(en.total());
    Valuation v;
    while (en.next(v)) out.push_back(v);
    return out;
}

std::set<Relation> possible_worlds(const CTable& t, const GlobalCondition& g, std::uint64_t cap) {
    ValuationEnumerator en(g, table_vars(t), cap);
    std::set<Relation> worlds;
    Valuation v;
    while (en.next(v)) worlds.insert(apply_valuation(t, v));
    return worlds;
}

Relation certain_answer(const CTable& t, const GlobalCondition& g, std::uint64_t cap) {
    ValuationEnumerator en(g, table_vars(t), cap);
    Relation acc(t.schema);
    bool first = true;
    Valuation v;
    while (en.next(v)) {
        Relation world = apply_valuation(t, v);
        if (first) {
            acc = std::move(world);
            first = false;
            continue;
        }
        Relation kept(t.schema);
        for (const auto& row : acc.rows()) {
            if (world.contains(row)) kept.insert(row);
        }
        acc = std::move(kept);
        if (acc.size() == 0) break;
    }
    return acc;
}

Relation possible_answer(const CTable& t, const GlobalCondition& g, std::uint64_t cap) {
    ValuationEnumerator en(g, table_vars(t), cap);
    Relation acc(t.schema);
    Valuation v;
    while (en.next(v)) {
        Relation world = apply_valuation(t, v);
        for (const auto& row : world.rows()) acc.insert(row);
    }
    return acc;
}

} // namespace ctdb
