#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ctdb/algebra.hpp"
#include "ctdb/csql.hpp"
#include "ctdb/ctable.hpp"

namespace ctdb {

/// Catalog, global condition and the string dictionary. The engine core is
/// integer-pure: string literals are interned once and compared as their
/// positive-integer codes from then on.
class Database {
public:
    // dictionary ------------------------------------------------------------
    std::uint32_t intern_string(std::string_view s);
    std::optional<std::uint32_t> lookup_string(std::string_view s) const;
    const std::string* string_for_code(std::uint32_t code) const;
    std::size_t dictionary_size() const { return dict_.size(); }

    // catalog ---------------------------------------------------------------
    /// Throws DuplicateObjectError when the (case-insensitive) name exists.
    CTable& create_table(Schema schema);
    const CTable* find_table(std::string_view name) const;
    CTable* find_table(std::string_view name);
    const std::vector<std::string>& table_order() const { return order_; }

    // global condition --------------------------------------------------------
    const GlobalCondition& global() const { return global_; }
    GlobalCondition& global() { return global_; }

private:
    std::vector<std::string> dict_; // code = index + 1
    std::unordered_map<std::string, std::uint32_t> dict_index_;
    std::map<std::string, CTable> catalog_; // keyed by lowercase name
    std::vector<std::string> order_;        // creation order, original case
    GlobalCondition global_;
};

struct Ack {
    std::string message;
};

struct BoolResult {
    bool value = false;
};

struct ResultTable {
    CTable table;
};

using ExecResult = std::variant<Ack, BoolResult, ResultTable>;

struct QueryStats {
    std::uint64_t pruned_rows = 0;
};

/// Executes one statement; DDL and INSERT mutate `db`, queries never do.
/// SELECT returns the pruned exact-answer c-table. MetaStmt is not handled
/// here (the console owns meta commands).
ExecResult execute(Database& db, const csql::Statement& stmt, QueryStats* stats = nullptr);

/// Plans and evaluates a select: left-deep joins in source order, WHERE
/// after joins, projection last, pruning after every node.
CTable eval_select(const Database& db, const csql::SelectStmt& sel, QueryStats* stats = nullptr);

/// Resolves a literal to its constant code. Integers are their own codes;
/// strings must already be interned (UnknownLiteralError otherwise).
std::uint32_t resolve_literal(const Database& db, const csql::Literal& lit);

} // namespace ctdb
