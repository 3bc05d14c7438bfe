#include "ctdb/engine.hpp"

#include "ctdb/poss.hpp"

namespace ctdb {

std::uint32_t Database::intern_string(std::string_view s) {
    auto it = dict_index_.find(std::string(s));
    if (it != dict_index_.end()) return it->second;
    dict_.emplace_back(s);
    std::uint32_t code = static_cast<std::uint32_t>(dict_.size());
    dict_index_.emplace(std::string(s), code);
    return code;
}

std::optional<std::uint32_t> Database::lookup_string(std::string_view s) const {
    auto it = dict_index_.find(std::string(s));
    if (it == dict_index_.end()) return std::nullopt;
    return it->second;
}

const std::string* Database::string_for_code(std::uint32_t code) const {
    if (code == 0 || code > dict_.size()) return nullptr;
    return &dict_[code - 1];
}

CTable& Database::create_table(Schema schema) {
    validate_schema(schema);
    std::string key = to_lower(schema.table_name);
    if (catalog_.contains(key)) {
        throw DuplicateObjectError("ctable " + schema.table_name + " already exists");
    }
    order_.push_back(schema.table_name);
    auto [it, inserted] = catalog_.emplace(std::move(key), CTable{std::move(schema), {}});
    return it->second;
}

const CTable* Database::find_table(std::string_view name) const {
    auto it = catalog_.find(to_lower(name));
    return it == catalog_.end() ? nullptr : &it->second;
}

CTable* Database::find_table(std::string_view name) {
    auto it = catalog_.find(to_lower(name));
    return it == catalog_.end() ? nullptr : &it->second;
}

std::uint32_t resolve_literal(const Database& db, const csql::Literal& lit) {
    if (!lit.is_string()) {
        if (lit.number() == 0) throw InvalidValueError("integer constants must be >= 1");
        return lit.number();
    }
    auto code = db.lookup_string(lit.text());
    if (!code) throw UnknownLiteralError("unknown string literal '" + lit.text() + "'");
    return *code;
}

namespace {

std::uint32_t intern_literal(Database& db, const csql::Literal& lit) {
    if (!lit.is_string()) {
        if (lit.number() == 0) throw InvalidValueError("integer constants must be >= 1");
        return lit.number();
    }
    return db.intern_string(lit.text());
}

// Column lookup over a (possibly alias-qualified) schema. When the select
// has a single from item its columns stay unqualified and
// `single_qualifier` carries the alias they would have had.
class ColumnResolver {
public:
    ColumnResolver(const Schema& schema, std::string single_qualifier)
        : schema_(schema), single_qualifier_(std::move(single_qualifier)) {}

    std::size_t resolve(const csql::ColRef& ref) const {
        if (!ref.qualifier.empty()) {
            std::string full = ref.qualifier + "." + ref.column;
            if (auto idx = find_column(schema_, full)) return *idx;
            if (!single_qualifier_.empty() && iequals(ref.qualifier, single_qualifier_)) {
                if (auto idx = find_column(schema_, ref.column)) return *idx;
            }
            throw UnknownColumnError("unknown column " + full);
        }
        // Unqualified: exact name first, then unique qualified suffix.
        if (auto idx = find_column(schema_, ref.column)) return *idx;
        std::optional<std::size_t> match;
        for (std::size_t i = 0; i < schema_.columns.size(); ++i) {
            const std::string& col = schema_.columns[i];
            if (col.size() > ref.column.size() + 1 &&
                col[col.size() - ref.column.size() - 1] == '.' &&
                iequals(std::string_view(col).substr(col.size() - ref.column.size()),
                        ref.column)) {
                if (match) throw UnknownColumnError("ambiguous column " + ref.column);
                match = i;
            }
        }
        if (!match) throw UnknownColumnError("unknown column " + ref.column);
        return *match;
    }

private:
    const Schema& schema_;
    std::string single_qualifier_;
};

algebra::Predicate lower_predicate(const Database& db, const csql::AstCond& cond,
                                   const ColumnResolver& resolver) {
    return cond.map_atoms([&](const csql::AstAtom& a) {
        auto to_operand = [&](const csql::Operand& operand) -> algebra::PredOperand {
            if (const auto* col = std::get_if<csql::ColRef>(&operand.value)) {
                return algebra::PredOperand::column(resolver.resolve(*col));
            }
            if (const auto* var = std::get_if<csql::VarRef>(&operand.value)) {
                if (!db.global().contains(var->id)) {
                    throw UnknownVariableError("variable x" + std::to_string(var->id) +
                                               " is not declared");
                }
                return algebra::PredOperand::value(Term::variable(var->id));
            }
            const auto& lit = std::get<csql::Literal>(operand.value);
            return algebra::PredOperand::value(Term::constant(resolve_literal(db, lit)));
        };
        return algebra::PredAtom{to_operand(a.lhs), a.op, to_operand(a.rhs)};
    });
}

// Lowers an insert CONDITION, which has no columns in scope; strings are
// interned on first use like the inserted values themselves.
Condition lower_insert_condition(Database& db, const csql::AstCond& cond) {
    return cond.map_atoms([&](const csql::AstAtom& a) {
        auto to_term = [&](const csql::Operand& operand) -> Term {
            if (std::holds_alternative<csql::ColRef>(operand.value)) {
                throw UnknownColumnError("column references are not allowed in INSERT conditions");
            }
            if (const auto* var = std::get_if<csql::VarRef>(&operand.value)) {
                return Term::variable(var->id);
            }
            return Term::constant(intern_literal(db, std::get<csql::Literal>(operand.value)));
        };
        return Atom{to_term(a.lhs), a.op, to_term(a.rhs)};
    });
}

std::string effective_qualifier(const csql::FromItem& item) {
    return item.alias.empty() ? item.table : item.alias;
}

// Resolves and prunes a from item in one pass, qualifying column names
// when the select joins multiple tables (required to keep self-join
// schemas unambiguous).
CTable load_from_item(const Database& db, const csql::FromItem& item, bool qualify,
                      algebra::OpStats* stats) {
    const CTable* table = db.find_table(item.table);
    if (!table) throw UnknownTableError("unknown ctable " + item.table);
    CTable out = algebra::prune(*table, db.global(), stats);
    if (qualify) {
        std::string prefix = effective_qualifier(item) + ".";
        for (auto& col : out.schema.columns) col = prefix + col;
    }
    return out;
}

poss::GroundTuple to_ground_tuple(const Database& db, const csql::AstTuple& tuple) {
    poss::GroundTuple out;
    out.entries.reserve(tuple.pairs.size());
    for (const auto& pair : tuple.pairs) {
        out.entries.emplace_back(pair.column, resolve_literal(db, pair.value));
    }
    return out;
}

} // namespace

CTable eval_select(const Database& db, const csql::SelectStmt& sel, QueryStats* stats) {
    algebra::OpStats op_stats;
    bool qualify = !sel.joins.empty();
    CTable acc;
    if (!qualify && sel.where) {
        // Single-table WHERE: selection subsumes the base prune (the
        // candidate condition conjoins the local condition), so skip the
        // full intermediate copy.
        const CTable* stored = db.find_table(sel.from.table);
        if (!stored) throw UnknownTableError("unknown ctable " + sel.from.table);
        ColumnResolver where_resolver(stored->schema, effective_qualifier(sel.from));
        acc = algebra::select_(*stored, lower_predicate(db, *sel.where, where_resolver),
                               db.global(), &op_stats);
    } else {
        acc = load_from_item(db, sel.from, qualify, &op_stats);
        for (const auto& jc : sel.joins) {
            CTable right = load_from_item(db, jc.item, qualify, &op_stats);
            Schema combined{acc.schema.table_name, acc.schema.columns};
            combined.columns.insert(combined.columns.end(), right.schema.columns.begin(),
                                    right.schema.columns.end());
            ColumnResolver on_resolver(combined, "");
            acc = algebra::join(acc, right, lower_predicate(db, jc.on, on_resolver), db.global(),
                                &op_stats);
        }
        if (sel.where) {
            ColumnResolver where_resolver(acc.schema, "");
            acc = algebra::select_(acc, lower_predicate(db, *sel.where, where_resolver),
                                   db.global(), &op_stats);
        }
    }
    std::string single_qual = sel.joins.empty() ? effective_qualifier(sel.from) : "";
    ColumnResolver resolver(acc.schema, single_qual);
    if (!sel.star) {
        std::vector<std::size_t> cols;
        std::vector<std::string> names;
        cols.reserve(sel.items.size());
        for (const auto& item : sel.items) {
            cols.push_back(resolver.resolve(item.col));
            if (!item.alias.empty()) {
                names.push_back(item.alias);
            } else if (item.col.qualifier.empty()) {
                names.push_back(acc.schema.columns[cols.back()]);
            } else {
                names.push_back(item.col.qualifier + "." + item.col.column);
            }
        }
        acc = algebra::project(acc, cols, db.global());
        acc.schema.columns = std::move(names);
        validate_schema(acc.schema);
        acc = algebra::prune(acc, db.global(), &op_stats);
    }
    acc.schema.table_name.clear();
    if (stats) stats->pruned_rows += op_stats.pruned_rows;
    return acc;
}

namespace {

struct ExecVisitor {
    Database& db;
    QueryStats* stats;

    ExecResult operator()(const csql::CreateStmt& c) {
        db.create_table(Schema{c.name, c.columns});
        return Ack{"created ctable " + c.name};
    }

    ExecResult operator()(const csql::CreateAsStmt& c) {
        CTable result = eval_select(db, c.query, stats);
        result.schema.table_name = c.name;
        CTable& stored = db.create_table(result.schema);
        stored.rows = std::move(result.rows);
        return Ack{"created ctable " + c.name + " (" + std::to_string(stored.rows.size()) +
                   " rows)"};
    }

    ExecResult operator()(const csql::DeclareStmt& d) {
        std::vector<std::uint32_t> domain;
        domain.reserve(d.domain.size());
        for (const auto& lit : d.domain) domain.push_back(intern_literal(db, lit));
        db.global().declare(d.var, std::move(domain));
        return Ack{"declared variable x" + std::to_string(d.var)};
    }

    ExecResult operator()(const csql::InsertStmt& ins) {
        CTable* table = db.find_table(ins.table);
        if (!table) throw UnknownTableError("unknown ctable " + ins.table);
        if (ins.values.size() != table->schema.columns.size()) {
            throw ArityMismatchError("table " + ins.table + " has " +
                                     std::to_string(table->schema.columns.size()) +
                                     " columns, got " + std::to_string(ins.values.size()) +
                                     " values");
        }
        std::vector<Term> terms;
        terms.reserve(ins.values.size());
        for (const auto& value : ins.values) {
            if (const auto* var = std::get_if<csql::VarRef>(&value)) {
                terms.push_back(Term::variable(var->id));
            } else {
                terms.push_back(Term::constant(intern_literal(db, std::get<csql::Literal>(value))));
            }
        }
        Condition local = ins.condition ? lower_insert_condition(db, *ins.condition)
                                        : Condition::always();
        algebra::insert_tuple(*table, std::move(terms), std::move(local), db.global());
        return Ack{"inserted 1 row"};
    }

    ExecResult operator()(const csql::SelectStmt& sel) {
        return ResultTable{eval_select(db, sel, stats)};
    }

    ExecResult operator()(const csql::PossibilityStmt& p) {
        CTable materialized;
        const CTable* target = nullptr;
        if (const auto* name = std::get_if<std::string>(&p.target)) {
            target = db.find_table(*name);
            if (!target) throw UnknownTableError("unknown ctable " + *name);
        } else {
            // Certainty over a query runs against the materialized exact answer.
            materialized = eval_select(db, std::get<csql::SelectStmt>(p.target), stats);
            target = &materialized;
        }
        std::vector<poss::GroundTuple> tuples;
        tuples.reserve(p.tuples.size());
        for (const auto& t : p.tuples) tuples.push_back(to_ground_tuple(db, t));
        bool value = false;
        if (tuples.size() == 1) {
            value = p.certain ? poss::is_certain(tuples.front(), *target, db.global())
                              : poss::is_possible(tuples.front(), *target, db.global());
        } else {
            value = p.certain ? poss::is_certain_set(tuples, *target, db.global())
                              : poss::is_possible_set(tuples, *target, db.global());
        }
        return BoolResult{value};
    }

    ExecResult operator()(const csql::MetaStmt&) {
        throw Error("meta commands are handled by the console");
    }
};

} // namespace

ExecResult execute(Database& db, const csql::Statement& stmt, QueryStats* stats) {
    ExecVisitor visitor{db, stats};
    return std::visit(visitor, stmt);
}

} // namespace ctdb
