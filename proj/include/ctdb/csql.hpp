#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ctdb/bool_expr.hpp"
#include "ctdb/condition.hpp"

namespace ctdb {
namespace csql {

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class TokKind : std::uint8_t { Keyword, Ident, Int, String, Symbol, Var, End };

struct Token {
    TokKind kind;
    std::string text; // keyword text uppercased; string tokens hold the unquoted value
    std::string raw;  // exact source lexeme; raws plus skipped whitespace rebuild the input
    std::size_t offset;
};

/// Keywords are case-insensitive; identifiers matching x[0-9]+ lex as
/// variable tokens; string literals use single quotes with no escapes.
/// Throws LexError with the offending offset.
std::vector<Token> tokenize(std::string_view text);

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

struct Literal {
    std::variant<std::uint32_t, std::string> value;

    bool is_string() const { return std::holds_alternative<std::string>(value); }
    std::uint32_t number() const { return std::get<std::uint32_t>(value); }
    const std::string& text() const { return std::get<std::string>(value); }

    static Literal integer(std::uint32_t n) { return Literal{n}; }
    static Literal string(std::string s) { return Literal{std::move(s)}; }

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct VarRef {
    std::uint32_t id;
    friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct ColRef {
    std::string qualifier; // empty when unqualified
    std::string column;
    friend bool operator==(const ColRef&, const ColRef&) = default;
};

struct Operand {
    std::variant<ColRef, VarRef, Literal> value;
    friend bool operator==(const Operand&, const Operand&) = default;
};

struct AstAtom {
    Operand lhs;
    CmpOp op;
    Operand rhs;
    friend bool operator==(const AstAtom&, const AstAtom&) = default;
};

using AstCond = BoolExpr<AstAtom>;

using AstTerm = std::variant<VarRef, Literal>;

struct SelectItem {
    ColRef col;
    std::string alias; // empty when no AS
    friend bool operator==(const SelectItem&, const SelectItem&) = default;
};

struct FromItem {
    std::string table;
    std::string alias; // empty when none
    friend bool operator==(const FromItem&, const FromItem&) = default;
};

struct JoinClause {
    FromItem item;
    AstCond on;
    friend bool operator==(const JoinClause&, const JoinClause&) = default;
};

struct SelectStmt {
    bool star = false;
    std::vector<SelectItem> items; // empty when star
    FromItem from;
    std::vector<JoinClause> joins;
    std::optional<AstCond> where;
    friend bool operator==(const SelectStmt&, const SelectStmt&) = default;
};

struct CreateStmt {
    std::string name;
    std::vector<std::string> columns;
    friend bool operator==(const CreateStmt&, const CreateStmt&) = default;
};

struct CreateAsStmt {
    std::string name;
    SelectStmt query;
    friend bool operator==(const CreateAsStmt&, const CreateAsStmt&) = default;
};

struct DeclareStmt {
    std::uint32_t var = 0;
    std::vector<Literal> domain;
    friend bool operator==(const DeclareStmt&, const DeclareStmt&) = default;
};

struct InsertStmt {
    std::string table;
    std::vector<AstTerm> values;
    std::optional<AstCond> condition;
    friend bool operator==(const InsertStmt&, const InsertStmt&) = default;
};

struct TuplePair {
    std::string column;
    Literal value;
    friend bool operator==(const TuplePair&, const TuplePair&) = default;
};

struct AstTuple {
    std::vector<TuplePair> pairs;
    friend bool operator==(const AstTuple&, const AstTuple&) = default;
};

/// IS POSSIBLE / IS CERTAIN over a stored c-table or a query result.
struct PossibilityStmt {
    bool certain = false;
    std::vector<AstTuple> tuples;
    std::variant<std::string, SelectStmt> target;
    friend bool operator==(const PossibilityStmt&, const PossibilityStmt&) = default;
};

/// Console meta command; the text after the backslash, verbatim.
struct MetaStmt {
    std::string command;
    friend bool operator==(const MetaStmt&, const MetaStmt&) = default;
};

using Statement = std::variant<CreateStmt, CreateAsStmt, DeclareStmt, InsertStmt, SelectStmt,
                               PossibilityStmt, MetaStmt>;

// ---------------------------------------------------------------------------
// Parse / render
// ---------------------------------------------------------------------------

/// Parses one statement; a trailing semicolon is optional. Inputs starting
/// with a backslash parse as MetaStmt. Throws LexError/ParseError.
Statement parse(std::string_view text);

/// Parses condition syntax alone (used by the storage format); operands
/// are restricted to variables and integer constants.
Condition parse_storage_condition(std::string_view text);

/// Canonical single-line text; parse(render(s)) == s.
std::string render(const Statement& s);
std::string render(const AstCond& c);
std::string render(const Literal& lit);

} // namespace csql
} // namespace ctdb
