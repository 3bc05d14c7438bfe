#include "ctdb/condition.hpp"

#include <algorithm>

namespace ctdb {

CmpOp complement_op(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
    }
    return CmpOp::Eq;
}

CmpOp mirror_op(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return CmpOp::Eq;
    case CmpOp::Ne: return CmpOp::Ne;
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Gt: return CmpOp::Lt;
    case CmpOp::Ge: return CmpOp::Le;
    }
    return CmpOp::Eq;
}

const char* op_symbol(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "=";
}

bool compare_values(std::uint32_t lhs, CmpOp op, std::uint32_t rhs) {
    switch (op) {
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Ge: return lhs >= rhs;
    }
    return false;
}

Atom complement_atom(const Atom& a) {
    return Atom{a.lhs, complement_op(a.op), a.rhs};
}

void GlobalCondition::declare(std::uint32_t var, std::vector<std::uint32_t> domain) {
    if (var == 0) throw InvalidValueError("variable ids must be >= 1");
    if (domain.empty()) throw InvalidValueError("variable domains must be non-empty");
    if (domains_.contains(var)) {
        throw DuplicateObjectError("variable x" + std::to_string(var) + " already declared");
    }
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    for (std::uint32_t c : domain) {
        if (c == 0) throw InvalidValueError("domain constants must be >= 1");
    }
    domains_.emplace(var, std::move(domain));
}

const std::vector<std::uint32_t>* GlobalCondition::domain_of(std::uint32_t var) const {
    auto it = domains_.find(var);
    return it == domains_.end() ? nullptr : &it->second;
}

std::vector<std::uint32_t> GlobalCondition::sorted_ids() const {
    std::vector<std::uint32_t> ids;
    ids.reserve(domains_.size());
    for (const auto& [id, dom] : domains_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::uint32_t GlobalCondition::max_var_id() const {
    std::uint32_t max_id = 0;
    for (const auto& [id, dom] : domains_) max_id = std::max(max_id, id);
    return max_id;
}

void Valuation::bind(std::uint32_t var, std::uint32_t value) {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                               [](const auto& entry, std::uint32_t v) { return entry.first < v; });
    if (it != bindings_.end() && it->first == var) {
        it->second = value;
    } else {
        bindings_.insert(it, {var, value});
    }
}

std::optional<std::uint32_t> Valuation::value_of(std::uint32_t var) const {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                               [](const auto& entry, std::uint32_t v) { return entry.first < v; });
    if (it == bindings_.end() || it->first != var) return std::nullopt;
    return it->second;
}

Dnf to_dnf(const Condition& c, std::size_t cap) {
    switch (c.kind()) {
    case Condition::Kind::True:
        return Dnf{{{}}};
    case Condition::Kind::False:
        return Dnf{{}};
    case Condition::Kind::Atom:
        return Dnf{{{c.as_atom()}}};
    case Condition::Kind::Or: {
        Dnf out;
        for (const auto& child : c.children()) {
            Dnf sub = to_dnf(child, cap);
            if (out.disjuncts.size() + sub.disjuncts.size() > cap) {
                throw DnfBlowupError("DNF disjunct count exceeds cap");
            }
            for (auto& d : sub.disjuncts) out.disjuncts.push_back(std::move(d));
        }
        return out;
    }
    case Condition::Kind::And: {
        // Distribute left to right: acc x child.
        Dnf acc{{{}}};
        for (const auto& child : c.children()) {
            Dnf sub = to_dnf(child, cap);
            Dnf next;
            if (!sub.disjuncts.empty() && acc.disjuncts.size() > cap / sub.disjuncts.size()) {
                throw DnfBlowupError("DNF disjunct count exceeds cap");
            }
            next.disjuncts.reserve(acc.disjuncts.size() * sub.disjuncts.size());
            for (const auto& left : acc.disjuncts) {
                for (const auto& right : sub.disjuncts) {
                    std::vector<Atom> merged = left;
                    merged.insert(merged.end(), right.begin(), right.end());
                    next.disjuncts.push_back(std::move(merged));
                }
            }
            acc = std::move(next);
        }
        return acc;
    }
    }
    return Dnf{{{}}};
}

namespace {

std::uint32_t term_value(Term t, const Valuation& v) {
    if (t.is_constant()) return t.constant_code();
    auto bound = v.value_of(t.var_id());
    if (!bound) {
        throw UnboundVariableError("variable x" + std::to_string(t.var_id()) + " is not bound");
    }
    return *bound;
}

void collect_term_var(Term t, std::set<std::uint32_t>& out) {
    if (t.is_variable()) out.insert(t.var_id());
}

// Odometer over the sorted domains of `vars`; invokes `fn` on every
// valuation until it returns true. Returns whether `fn` ever did.
template <typename Fn>
bool enumerate_domains(const std::vector<std::uint32_t>& vars, const GlobalCondition& g,
                       std::uint64_t cap, Fn&& fn) {
    std::vector<const std::vector<std::uint32_t>*> domains;
    domains.reserve(vars.size());
    std::uint64_t count = 1;
    for (std::uint32_t var : vars) {
        const auto* dom = g.domain_of(var);
        if (!dom) throw UnknownVariableError("variable x" + std::to_string(var) + " has no domain");
        if (count > cap / dom->size()) throw EnumerationCapError("domain cross product exceeds cap");
        count *= dom->size();
        domains.push_back(dom);
    }
    std::vector<std::size_t> idx(vars.size(), 0);
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v.bind(vars[i], (*domains[i])[0]);
    if (vars.empty()) return fn(v); // single empty valuation
    for (;;) {
        if (fn(v)) return true;
        // Advance the odometer, last variable fastest.
        std::size_t pos = vars.size();
        for (;;) {
            if (pos == 0) return false;
            --pos;
            if (++idx[pos] < domains[pos]->size()) {
                v.bind(vars[pos], (*domains[pos])[idx[pos]]);
                break;
            }
            idx[pos] = 0;
            v.bind(vars[pos], (*domains[pos])[0]);
        }
    }
}

} // namespace

bool eval_atom(const Atom& a, const Valuation& v) {
    return compare_values(term_value(a.lhs, v), a.op, term_value(a.rhs, v));
}

bool eval_ground(const Condition& c, const Valuation& v) {
    switch (c.kind()) {
    case Condition::Kind::True:
        return true;
    case Condition::Kind::False:
        return false;
    case Condition::Kind::Atom:
        return eval_atom(c.as_atom(), v);
    case Condition::Kind::And:
        for (const auto& child : c.children()) {
            if (!eval_ground(child, v)) return false;
        }
        return true;
    case Condition::Kind::Or:
        for (const auto& child : c.children()) {
            if (eval_ground(child, v)) return true;
        }
        return false;
    }
    return false;
}

namespace {

bool condition_is_ground(const Condition& c) {
    bool ground = true;
    c.for_each_atom([&](const Atom& a) {
        if (a.lhs.is_variable() || a.rhs.is_variable()) ground = false;
    });
    return ground;
}

void push_term_var(Term t, std::vector<std::uint32_t>& out) {
    if (t.is_variable()) out.push_back(t.var_id());
}

void sort_unique(std::vector<std::uint32_t>& vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
}

} // namespace

bool sat_under(const Condition& c, const GlobalCondition& g, std::uint64_t cap) {
    // Variable-free conditions have a single (empty) valuation.
    if (condition_is_ground(c)) return eval_ground(c, Valuation{});
    Dnf dnf = to_dnf(c);
    std::vector<std::uint32_t> vars;
    for (const auto& disjunct : dnf.disjuncts) {
        vars.clear();
        for (const auto& a : disjunct) {
            push_term_var(a.lhs, vars);
            push_term_var(a.rhs, vars);
        }
        sort_unique(vars);
        bool found = enumerate_domains(vars, g, cap, [&](const Valuation& v) {
            for (const auto& a : disjunct) {
                if (!eval_atom(a, v)) return false;
            }
            return true;
        });
        if (found) return true;
    }
    return false;
}

bool taut_under(const Condition& c, const GlobalCondition& g, std::uint64_t cap) {
    if (condition_is_ground(c)) return eval_ground(c, Valuation{});
    std::vector<std::uint32_t> vars;
    c.for_each_atom([&](const Atom& a) {
        push_term_var(a.lhs, vars);
        push_term_var(a.rhs, vars);
    });
    sort_unique(vars);
    bool counterexample = enumerate_domains(vars, g, cap, [&](const Valuation& v) {
        return !eval_ground(c, v);
    });
    return !counterexample;
}

namespace {

// Structural pass: folds ground atoms to TRUE/FALSE and lets the node
// factories absorb them.
Condition fold_ground(const Condition& c) {
    switch (c.kind()) {
    case Condition::Kind::True:
    case Condition::Kind::False:
        return c;
    case Condition::Kind::Atom: {
        const Atom& a = c.as_atom();
        if (a.lhs.is_constant() && a.rhs.is_constant()) {
            return compare_values(a.lhs.constant_code(), a.op, a.rhs.constant_code())
                       ? Condition::always()
                       : Condition::never();
        }
        return c;
    }
    case Condition::Kind::And:
    case Condition::Kind::Or: {
        std::vector<Condition> folded;
        folded.reserve(c.children().size());
        for (const auto& child : c.children()) folded.push_back(fold_ground(child));
        return c.kind() == Condition::Kind::And ? Condition::all_of(std::move(folded))
                                                : Condition::any_of(std::move(folded));
    }
    }
    return c;
}

} // namespace

Condition simplify(const Condition& c, const GlobalCondition& g, std::uint64_t cap) {
    if (!sat_under(c, g, cap)) return Condition::never();
    if (taut_under(c, g, cap)) return Condition::always();
    return fold_ground(c);
}

Atom bind_atom(const Atom& a, const Valuation& partial) {
    auto sub = [&](Term t) {
        if (t.is_variable()) {
            if (auto bound = partial.value_of(t.var_id())) return Term::constant(*bound);
        }
        return t;
    };
    return Atom{sub(a.lhs), a.op, sub(a.rhs)};
}

Condition bind(const Condition& c, const Valuation& partial) {
    return c.map_atoms([&](const Atom& a) { return bind_atom(a, partial); });
}

void collect_vars(const Condition& c, std::set<std::uint32_t>& out) {
    c.for_each_atom([&](const Atom& a) {
        collect_term_var(a.lhs, out);
        collect_term_var(a.rhs, out);
    });
}

std::set<std::uint32_t> vars_of(const Condition& c) {
    std::set<std::uint32_t> out;
    collect_vars(c, out);
    return out;
}

std::string render_term(Term t, const ConstantFormatter& fmt) {
    if (t.is_variable()) return "x" + std::to_string(t.var_id());
    if (fmt) return fmt(t.constant_code());
    return std::to_string(t.constant_code());
}

namespace {

std::string render_atom(const Atom& a, const ConstantFormatter& fmt) {
    Term lhs = a.lhs;
    Term rhs = a.rhs;
    CmpOp op = a.op;
    // Display constant-vs-variable atoms variable first.
    if (lhs.is_constant() && rhs.is_variable()) {
        std::swap(lhs, rhs);
        op = mirror_op(op);
    }
    return render_term(lhs, fmt) + op_symbol(op) + render_term(rhs, fmt);
}

void render_node(const Condition& c, const ConstantFormatter& fmt, bool parenthesize_or,
                 std::string& out) {
    switch (c.kind()) {
    case Condition::Kind::True:
        out += "TRUE";
        return;
    case Condition::Kind::False:
        out += "FALSE";
        return;
    case Condition::Kind::Atom:
        out += render_atom(c.as_atom(), fmt);
        return;
    case Condition::Kind::And: {
        bool first = true;
        for (const auto& child : c.children()) {
            if (!first) out += " AND ";
            first = false;
            render_node(child, fmt, true, out);
        }
        return;
    }
    case Condition::Kind::Or: {
        if (parenthesize_or) out += "(";
        bool first = true;
        for (const auto& child : c.children()) {
            if (!first) out += " OR ";
            first = false;
            render_node(child, fmt, false, out);
        }
        if (parenthesize_or) out += ")";
        return;
    }
    }
}

} // namespace

std::string render_condition(const Condition& c, const ConstantFormatter& fmt) {
    std::string out;
    render_node(c, fmt, false, out);
    return out;
}

} // namespace ctdb
