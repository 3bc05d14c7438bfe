#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctdb/condition.hpp"

namespace ctdb {

struct Schema {
    std::string table_name;
    std::vector<std::string> columns;

    friend bool operator==(const Schema&, const Schema&) = default;
};

/// Case-insensitive column lookup.
std::optional<std::size_t> find_column(const Schema& schema, std::string_view name);
/// Throws SchemaMismatchError unless the schema has >= 1 column and the
/// names are case-insensitively unique.
void validate_schema(const Schema& schema);
bool iequals(std::string_view a, std::string_view b);
std::string to_lower(std::string_view s);

/// One conditional tuple: terms plus the local condition phi(t).
struct CTuple {
    std::vector<Term> terms;
    Condition local;
};

/// A named schema with conditional tuples. Variables appearing anywhere in
/// a c-table must be registered in the database's global condition.
struct CTable {
    Schema schema;
    std::vector<CTuple> rows;
};

std::set<std::uint32_t> table_vars(const CTable& t);

/// A complete relation: ground rows under set semantics.
class Relation {
public:
    Relation() = default;
    explicit Relation(Schema schema) : schema_(std::move(schema)) {}

    const Schema& schema() const { return schema_; }
    const std::set<std::vector<std::uint32_t>>& rows() const { return rows_; }
    bool insert(std::vector<std::uint32_t> row) { return rows_.insert(std::move(row)).second; }
    bool contains(const std::vector<std::uint32_t>& row) const { return rows_.contains(row); }
    std::size_t size() const { return rows_.size(); }

    // Relations compare by row set; worlds of one table share a schema.
    friend bool operator==(const Relation& a, const Relation& b) { return a.rows_ == b.rows_; }
    friend bool operator<(const Relation& a, const Relation& b) { return a.rows_ < b.rows_; }

private:
    Schema schema_;
    std::set<std::vector<std::uint32_t>> rows_;
};

/// Ground rows of `t` under `v`: rows whose bound local condition holds,
/// duplicates collapsed. Throws UnboundVariableError if `v` misses a
/// variable of `t`.
Relation apply_valuation(const CTable& t, const Valuation& v);

/// Streaming lexicographic enumeration of all valuations of `vars` over
/// their domains in `g` (variables sorted by id, domains ascending).
/// Construction throws EnumerationCapError when the total count exceeds
/// the cap, UnknownVariableError when a variable has no domain.
class ValuationEnumerator {
public:
    ValuationEnumerator(const GlobalCondition& g, const std::set<std::uint32_t>& vars,
                        std::uint64_t cap = kEnumerationCap);

    /// Fills `out` with the next valuation; false when exhausted.
    bool next(Valuation& out);
    std::uint64_t total() const { return total_; }

private:
    std::vector<std::uint32_t> vars_;
    std::vector<std::vector<std::uint32_t>> domains_;
    std::vector<std::size_t> idx_;
    bool done_ = false;
    bool first_ = true;
    std::uint64_t total_ = 1;
};

std::vector<Valuation> enumerate_valuations(const GlobalCondition& g,
                                            const std::set<std::uint32_t>& vars,
                                            std::uint64_t cap = kEnumerationCap);

/// Brute-force possible-worlds oracle: every world of `t` admissible
/// under `g`, duplicates collapsed.
std::set<Relation> possible_worlds(const CTable& t, const GlobalCondition& g,
                                   std::uint64_t cap = kEnumerationCap);

/// Intersection of all possible worlds.
Relation certain_answer(const CTable& t, const GlobalCondition& g,
                        std::uint64_t cap = kEnumerationCap);

/// Union of all possible worlds.
Relation possible_answer(const CTable& t, const GlobalCondition& g,
                         std::uint64_t cap = kEnumerationCap);

} // namespace ctdb
