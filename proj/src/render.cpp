#include "ctdb/render.hpp"

#include <sstream>

namespace ctdb {
namespace render {

namespace {

ConstantFormatter quoted_formatter(const Database& db) {
    return [&db](std::uint32_t code) {
        if (const std::string* s = db.string_for_code(code)) return "'" + *s + "'";
        return std::to_string(code);
    };
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string cell_text(Term term, const Database& db) {
    if (term.is_variable()) return "x" + std::to_string(term.var_id());
    if (const std::string* s = db.string_for_code(term.constant_code())) return *s;
    return std::to_string(term.constant_code());
}

std::string condition_text(const Condition& c, const Database& db) {
    return render_condition(c, quoted_formatter(db));
}

std::string table_text(const CTable& t, const Database& db) {
    const std::size_t arity = t.schema.columns.size();
    std::vector<std::vector<std::string>> cells;
    cells.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        line.reserve(arity + 1);
        for (Term term : row.terms) line.push_back(cell_text(term, db));
        line.push_back(condition_text(row.local, db));
        cells.push_back(std::move(line));
    }

    std::vector<std::size_t> widths(arity + 1);
    for (std::size_t c = 0; c < arity; ++c) widths[c] = t.schema.columns[c].size();
    widths[arity] = 6; // "phi(t)"
    for (const auto& line : cells) {
        for (std::size_t c = 0; c <= arity; ++c) widths[c] = std::max(widths[c], line[c].size());
    }

    auto pad = [](const std::string& s, std::size_t width, bool last) {
        if (last) return s; // no trailing spaces
        return s + std::string(width - s.size(), ' ');
    };

    std::ostringstream out;
    for (std::size_t c = 0; c < arity; ++c) out << pad(t.schema.columns[c], widths[c], false) << "  ";
    out << "phi(t)" << '\n';
    for (std::size_t c = 0; c <= arity; ++c) {
        out << std::string(widths[c], '-');
        out << (c == arity ? "\n" : "  ");
    }
    for (const auto& line : cells) {
        for (std::size_t c = 0; c <= arity; ++c) {
            out << pad(line[c], widths[c], c == arity);
            if (c != arity) out << "  ";
        }
        out << '\n';
    }
    out << "(" << t.rows.size() << (t.rows.size() == 1 ? " row)" : " rows)") << '\n';
    return out.str();
}

std::string table_csv(const CTable& t, const Database& db) {
    std::ostringstream out;
    for (std::size_t c = 0; c < t.schema.columns.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(t.schema.columns[c]);
    }
    out << ",phi(t)\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.terms.size(); ++c) {
            if (c) out << ',';
            out << csv_escape(cell_text(row.terms[c], db));
        }
        out << ',' << csv_escape(condition_text(row.local, db)) << '\n';
    }
    return out.str();
}

} // namespace render
} // namespace ctdb
