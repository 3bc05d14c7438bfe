#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctdb/bool_expr.hpp"
#include "ctdb/errors.hpp"

namespace ctdb {

/// Comparison operator of a condition atom. The set is closed under
/// complement so negation never needs its own node.
enum class CmpOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

CmpOp complement_op(CmpOp op);
/// Operator for the atom with swapped operands (a < b  <=>  b > a).
CmpOp mirror_op(CmpOp op);
const char* op_symbol(CmpOp op);
bool compare_values(std::uint32_t lhs, CmpOp op, std::uint32_t rhs);

/// A cell value: a positive-integer constant or a variable. Encoded as one
/// signed integer, constant c as +c and variable k as -k; zero is invalid.
class Term {
public:
    static Term constant(std::uint32_t code) {
        if (code == 0) throw InvalidValueError("constants must be >= 1");
        return Term(static_cast<std::int64_t>(code));
    }

    static Term variable(std::uint32_t id) {
        if (id == 0) throw InvalidValueError("variable ids must be >= 1");
        return Term(-static_cast<std::int64_t>(id));
    }

    static Term from_encoded(std::int64_t enc) {
        if (enc == 0) throw InvalidValueError("term encoding 0 is reserved");
        return Term(enc);
    }

    bool is_constant() const { return enc_ > 0; }
    bool is_variable() const { return enc_ < 0; }
    std::uint32_t constant_code() const { return static_cast<std::uint32_t>(enc_); }
    std::uint32_t var_id() const { return static_cast<std::uint32_t>(-enc_); }
    std::int64_t encoded() const { return enc_; }

    friend bool operator==(Term, Term) = default;
    friend auto operator<=>(Term a, Term b) { return a.enc_ <=> b.enc_; }

private:
    explicit Term(std::int64_t enc) : enc_(enc) {}

    std::int64_t enc_;
};

struct Atom {
    Term lhs;
    CmpOp op;
    Term rhs;

    friend bool operator==(const Atom&, const Atom&) = default;
};

Atom complement_atom(const Atom& a);

using Condition = BoolExpr<Atom>;

/// DNF view of a condition: a disjunction of conjunctions of atoms.
/// No disjuncts means FALSE; a disjunct with no atoms means TRUE.
struct Dnf {
    std::vector<std::vector<Atom>> disjuncts;
};

/// Per-variable finite domains, keyed by variable id. This is the CNF of
/// the global condition: one clause (x=c1 v x=c2 v ...) per variable,
/// stored so that domain lookup by id is the only access path. Hash
/// storage; every consumer that needs an order goes through sorted_ids().
class GlobalCondition {
public:
    /// Registers a domain; values are sorted and deduplicated.
    /// Throws DuplicateObjectError on redeclaration, InvalidValueError on
    /// an empty domain.
    void declare(std::uint32_t var, std::vector<std::uint32_t> domain);

    const std::vector<std::uint32_t>* domain_of(std::uint32_t var) const;
    bool contains(std::uint32_t var) const { return domains_.contains(var); }
    std::size_t size() const { return domains_.size(); }
    std::vector<std::uint32_t> sorted_ids() const;
    std::uint32_t max_var_id() const;

private:
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> domains_;
};

/// Total or partial map from variables to constants. Flat sorted storage;
/// rebinding an already-bound variable assigns in place.
class Valuation {
public:
    Valuation() = default;

    void bind(std::uint32_t var, std::uint32_t value);
    std::optional<std::uint32_t> value_of(std::uint32_t var) const;
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& bindings() const {
        return bindings_;
    }

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bindings_; // sorted by variable
};

inline constexpr std::size_t kDnfCap = 4096;
inline constexpr std::uint64_t kEnumerationCap = 1'000'000;

/// Standard AND-over-OR distribution; left-to-right disjunct order.
/// Throws DnfBlowupError past `cap` disjuncts.
Dnf to_dnf(const Condition& c, std::size_t cap = kDnfCap);

/// Boolean value of `c` with every variable substituted from `v`.
/// Throws UnboundVariableError if a variable of `c` is missing.
bool eval_ground(const Condition& c, const Valuation& v);
bool eval_atom(const Atom& a, const Valuation& v);

/// True iff some valuation drawn from the domains in `g` satisfies `c`.
/// Checked disjunct by disjunct over the DNF; each disjunct enumerates the
/// cross product of its variables' domains and short-circuits on the first
/// witness. Throws EnumerationCapError when a disjunct's cross product
/// exceeds `cap`, UnknownVariableError when a variable has no domain.
bool sat_under(const Condition& c, const GlobalCondition& g, std::uint64_t cap = kEnumerationCap);

/// True iff every valuation drawn from the domains in `g` satisfies `c`;
/// enumerates the full cross product of the involved domains.
bool taut_under(const Condition& c, const GlobalCondition& g, std::uint64_t cap = kEnumerationCap);

/// FALSE when unsatisfiable with `g`, TRUE when implied by `g`, otherwise
/// `c` with ground atoms folded and TRUE/FALSE absorbed into AND/OR.
Condition simplify(const Condition& c, const GlobalCondition& g, std::uint64_t cap = kEnumerationCap);

/// Substitutes bound variables with their constants. No folding.
Condition bind(const Condition& c, const Valuation& partial);
Atom bind_atom(const Atom& a, const Valuation& partial);

void collect_vars(const Condition& c, std::set<std::uint32_t>& out);
std::set<std::uint32_t> vars_of(const Condition& c);

/// Formats a constant code for rendering; defaults to decimal digits.
using ConstantFormatter = std::function<std::string(std::uint32_t)>;

std::string render_term(Term t, const ConstantFormatter& fmt = nullptr);
/// Canonical condition text: `TRUE`, `FALSE`, infix atoms, AND/OR with OR
/// children of an AND parenthesized. Constant-vs-variable atoms display
/// with the variable on the left.
std::string render_condition(const Condition& c, const ConstantFormatter& fmt = nullptr);

} // namespace ctdb
