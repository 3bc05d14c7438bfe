#include "ctdb/storage.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ctdb/csql.hpp"

namespace ctdb {
namespace storage {

void save_db(const Database& db, std::ostream& out) {
    out << "PDB 1\n";
    for (std::size_t code = 1; code <= db.dictionary_size(); ++code) {
        out << "DICT " << code << ' ' << *db.string_for_code(static_cast<std::uint32_t>(code))
            << '\n';
    }
    for (std::uint32_t id : db.global().sorted_ids()) {
        out << "VAR " << id << " :";
        for (std::uint32_t c : *db.global().domain_of(id)) out << ' ' << c;
        out << '\n';
    }
    for (const std::string& name : db.table_order()) {
        const CTable* table = db.find_table(name);
        out << "TABLE " << table->schema.table_name << ' ' << table->schema.columns.size();
        for (const auto& col : table->schema.columns) out << ' ' << col;
        out << '\n';
        for (const auto& row : table->rows) {
            out << "ROW";
            for (Term term : row.terms) out << ' ' << term.encoded();
            out << " | " << render_condition(row.local) << '\n';
        }
    }
    if (!out) throw IoError("write failed");
}

std::string save_db_string(const Database& db) {
    std::ostringstream out;
    save_db(db, out);
    return out.str();
}

void save_db_file(const Database& db, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    save_db(db, out);
}

namespace {

struct Cursor {
    std::string_view line;
    std::size_t lineno;

    void skip_spaces() {
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    }

    std::string_view word() {
        skip_spaces();
        std::size_t end = 0;
        while (end < line.size() && line[end] != ' ') ++end;
        std::string_view w = line.substr(0, end);
        line.remove_prefix(end);
        return w;
    }

    std::int64_t integer(std::string_view what) {
        std::string_view w = word();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
        if (w.empty() || ec != std::errc() || ptr != w.data() + w.size()) {
            throw FormatError("expected " + std::string(what), lineno);
        }
        return value;
    }

    std::string_view rest() {
        skip_spaces();
        return line;
    }

    // Remainder after exactly one separator space, verbatim (dictionary
    // strings may begin with spaces).
    std::string_view rest_verbatim() {
        if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        return line;
    }

    bool empty() {
        skip_spaces();
        return line.empty();
    }
};

void validate_table_vars(const CTable& table, const GlobalCondition& g, std::size_t lineno) {
    for (const auto& row : table.rows) {
        for (Term term : row.terms) {
            if (term.is_variable() && !g.contains(term.var_id())) {
                throw FormatError("row references undeclared variable x" +
                                      std::to_string(term.var_id()),
                                  lineno);
            }
        }
        for (std::uint32_t var : vars_of(row.local)) {
            if (!g.contains(var)) {
                throw FormatError("condition references undeclared variable x" +
                                      std::to_string(var),
                                  lineno);
            }
        }
    }
}

} // namespace

Database load_db(std::istream& in) {
    Database db;
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw FormatError("empty file", 1);
    ++lineno;
    if (line == "PDB 1") {
        // current version
    } else if (line.rfind("PDB ", 0) == 0) {
        throw VersionError("unsupported version: " + line);
    } else {
        throw FormatError("missing PDB header", lineno);
    }

    enum class Section { Dict, Vars, Tables };
    Section section = Section::Dict;
    CTable* current = nullptr;
    std::uint32_t next_code = 1;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Cursor cur{line, lineno};
        std::string_view tag = cur.word();
        if (tag == "DICT") {
            if (section != Section::Dict) throw FormatError("DICT after VAR/TABLE", lineno);
            std::int64_t code = cur.integer("dictionary code");
            if (code != next_code) {
                throw FormatError("dictionary codes must ascend from 1", lineno);
            }
            std::string_view text = cur.rest_verbatim();
            if (text.empty()) throw FormatError("empty dictionary entry", lineno);
            db.intern_string(text);
            ++next_code;
        } else if (tag == "VAR") {
            if (section == Section::Tables) throw FormatError("VAR after TABLE", lineno);
            section = Section::Vars;
            std::int64_t id = cur.integer("variable id");
            if (id < 1) throw FormatError("variable ids must be >= 1", lineno);
            if (cur.word() != ":") throw FormatError("expected ':' after variable id", lineno);
            std::vector<std::uint32_t> domain;
            while (!cur.empty()) {
                std::int64_t c = cur.integer("domain constant");
                if (c < 1) throw FormatError("domain constants must be >= 1", lineno);
                domain.push_back(static_cast<std::uint32_t>(c));
            }
            if (domain.empty()) throw FormatError("empty variable domain", lineno);
            try {
                db.global().declare(static_cast<std::uint32_t>(id), std::move(domain));
            } catch (const Error& e) {
                throw FormatError(e.what(), lineno);
            }
        } else if (tag == "TABLE") {
            section = Section::Tables;
            std::string name(cur.word());
            if (name.empty()) throw FormatError("missing table name", lineno);
            std::int64_t arity = cur.integer("arity");
            if (arity < 1) throw FormatError("arity must be >= 1", lineno);
            Schema schema{name, {}};
            for (std::int64_t i = 0; i < arity; ++i) {
                std::string_view col = cur.word();
                if (col.empty()) throw FormatError("missing column name", lineno);
                schema.columns.emplace_back(col);
            }
            if (!cur.empty()) throw FormatError("trailing data after columns", lineno);
            try {
                current = &db.create_table(std::move(schema));
            } catch (const Error& e) {
                throw FormatError(e.what(), lineno);
            }
        } else if (tag == "ROW") {
            if (current == nullptr) throw FormatError("ROW before TABLE", lineno);
            CTuple row;
            for (std::size_t i = 0; i < current->schema.columns.size(); ++i) {
                std::int64_t enc = cur.integer("term");
                if (enc == 0) throw FormatError("term encoding 0 is reserved", lineno);
                row.terms.push_back(Term::from_encoded(enc));
            }
            if (cur.word() != "|") throw FormatError("expected '|' before condition", lineno);
            std::string_view cond_text = cur.rest();
            if (cond_text.empty()) throw FormatError("missing condition", lineno);
            try {
                row.local = csql::parse_storage_condition(cond_text);
            } catch (const Error& e) {
                throw FormatError(std::string("bad condition: ") + e.what(), lineno);
            }
            current->rows.push_back(std::move(row));
            validate_table_vars(CTable{current->schema, {current->rows.back()}}, db.global(),
                                lineno);
        } else {
            throw FormatError("unknown line tag '" + std::string(tag) + "'", lineno);
        }
    }
    return db;
}

Database load_db_string(const std::string& image) {
    std::istringstream in(image);
    return load_db(in);
}

Database load_db_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return load_db(in);
}

} // namespace storage
} // namespace ctdb
