#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ctdb/ctable.hpp"

namespace ctdb {
namespace algebra {

/// Operand of a predicate atom: a column position of the input schema or a
/// fixed term (constant or variable).
class PredOperand {
public:
    static PredOperand column(std::size_t index) { return PredOperand(ColumnRef{index}); }
    static PredOperand value(Term term) { return PredOperand(term); }

    bool is_column() const { return std::holds_alternative<ColumnRef>(v_); }
    std::size_t column_index() const { return std::get<ColumnRef>(v_).index; }
    Term term() const { return std::get<Term>(v_); }

    friend bool operator==(const PredOperand&, const PredOperand&) = default;

private:
    struct ColumnRef {
        std::size_t index;
        friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
    };
    using Alt = std::variant<ColumnRef, Term>;
    explicit PredOperand(Alt v) : v_(std::move(v)) {}

    Alt v_;
};

struct PredAtom {
    PredOperand lhs;
    CmpOp op;
    PredOperand rhs;

    friend bool operator==(const PredAtom&, const PredAtom&) = default;
};

/// A condition whose atoms may reference columns in place of terms.
using Predicate = BoolExpr<PredAtom>;

/// Number of rows an operator dropped because a variable-bearing local
/// condition contradicted the global condition. Ground filtering (a
/// constant cell failing a constant predicate) is classical selection and
/// is not counted.
struct OpStats {
    std::uint64_t pruned_rows = 0;
};

/// Throws SchemaMismatchError if some column index is out of range for
/// `arity`.
void validate_predicate(const Predicate& p, std::size_t arity);

/// Substitutes each column reference with the row's term. Pure
/// substitution; ground atoms are not folded here.
Condition specialize(const Predicate& p, std::span<const Term> row_terms);

/// Selection with pruning: a row survives iff local AND specialize(p, row)
/// is satisfiable with `g`; surviving conditions are simplified.
CTable select_(const CTable& t, const Predicate& p, const GlobalCondition& g,
               OpStats* stats = nullptr);

/// Projection onto `cols` (indices into t's schema). Rows with identical
/// projected terms merge by OR-ing their conditions, then simplify.
CTable project(const CTable& t, const std::vector<std::size_t>& cols, const GlobalCondition& g);

/// Join: output columns are l's then r's; each row pair carries the
/// conjunction of both local conditions and the specialized ON predicate,
/// with unsatisfiable rows dropped and implied conditions collapsed to
/// TRUE. Cross product is join with on = TRUE.
CTable join(const CTable& l, const CTable& r, const Predicate& on, const GlobalCondition& g,
            OpStats* stats = nullptr);

/// Appends a tuple. All variables in terms and condition must be
/// registered in `g`. An absent condition means TRUE.
void insert_tuple(CTable& t, std::vector<Term> terms, Condition local, const GlobalCondition& g);

/// Drops rows whose condition contradicts `g` and simplifies the rest.
/// Idempotent; never changes the possible worlds.
CTable prune(const CTable& t, const GlobalCondition& g, OpStats* stats = nullptr);

} // namespace algebra
} // namespace ctdb
