#include "ctdb/csql.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>

#include "ctdb/errors.hpp"

namespace ctdb {
namespace csql {

namespace {

constexpr std::array<std::string_view, 24> kKeywords = {
    "SELECT", "FROM",   "WHERE",    "CREATE",  "CTABLE",    "AS",    "DECLARE", "VARIABLE",
    "DOMAIN", "INSERT", "INTO",     "VALUES",  "CONDITION", "INNER", "JOIN",    "ON",
    "IS",     "POSSIBLE", "CERTAIN", "IN",     "AND",       "OR",    "TRUE",    "FALSE"};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::optional<std::uint32_t> parse_var_name(std::string_view lexeme) {
    if (lexeme.size() < 2 || lexeme[0] != 'x') return std::nullopt;
    for (char c : lexeme.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    }
    std::uint64_t id = 0;
    auto [ptr, ec] = std::from_chars(lexeme.data() + 1, lexeme.data() + lexeme.size(), id);
    if (ec != std::errc() || ptr != lexeme.data() + lexeme.size() || id == 0 ||
        id > 0x7FFFFFFFull) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(id);
}

} // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (is_ident_start(c)) {
            while (i < text.size() && is_ident_char(text[i])) ++i;
            std::string lexeme(text.substr(start, i - start));
            if (auto var = parse_var_name(lexeme)) {
                out.push_back(Token{TokKind::Var, lexeme, lexeme, start});
                continue;
            }
            std::string up = upper(lexeme);
            bool keyword = false;
            for (std::string_view kw : kKeywords) {
                if (kw == up) {
                    keyword = true;
                    break;
                }
            }
            out.push_back(Token{keyword ? TokKind::Keyword : TokKind::Ident,
                                keyword ? std::move(up) : lexeme, lexeme, start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            std::string digits(text.substr(start, i - start));
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc() || value > 0x7FFFFFFFull) {
                throw LexError("integer literal too large", start);
            }
            out.push_back(Token{TokKind::Int, digits, digits, start});
            continue;
        }
        if (c == '\'') {
            ++i;
            std::string value;
            for (;;) {
                if (i >= text.size() || text[i] == '\n') {
                    throw LexError("unterminated string literal", start);
                }
                if (text[i] == '\'') break;
                value.push_back(text[i]);
                ++i;
            }
            ++i; // closing quote
            out.push_back(Token{TokKind::String, std::move(value),
                                std::string(text.substr(start, i - start)), start});
            continue;
        }
        switch (c) {
        case '(':
        case ')':
        case ',':
        case ';':
        case '*':
        case '.':
        case '=':
            out.push_back(Token{TokKind::Symbol, std::string(1, c), std::string(1, c), start});
            ++i;
            continue;
        case '!':
            if (i + 1 < text.size() && text[i + 1] == '=') {
                out.push_back(Token{TokKind::Symbol, "!=", "!=", start});
                i += 2;
                continue;
            }
            throw LexError("expected '=' after '!'", start);
        case '<':
        case '>': {
            std::string sym(1, c);
            ++i;
            if (i < text.size() && text[i] == '=') {
                sym.push_back('=');
                ++i;
            }
            out.push_back(Token{TokKind::Symbol, sym, sym, start});
            continue;
        }
        default:
            throw LexError("unexpected character", start);
        }
    }
    out.push_back(Token{TokKind::End, "", "", text.size()});
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Statement statement() {
        const Token& t = peek();
        if (t.kind == TokKind::Keyword) {
            if (t.text == "CREATE") return create();
            if (t.text == "DECLARE") return declare();
            if (t.text == "INSERT") return insert();
            if (t.text == "SELECT") return select();
            if (t.text == "IS") return possibility();
        }
        throw ParseError("expected CREATE, DECLARE, INSERT, SELECT or IS", t.offset);
    }

    void finish() {
        accept_symbol(";");
        if (peek().kind != TokKind::End) {
            throw ParseError("unexpected trailing input", peek().offset);
        }
    }

    AstCond condition() { return or_expr(); }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t idx = pos_ + ahead;
        if (idx >= toks_.size()) idx = toks_.size() - 1;
        return toks_[idx];
    }

    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool check_keyword(std::string_view kw) const {
        return peek().kind == TokKind::Keyword && peek().text == kw;
    }

    bool accept_keyword(std::string_view kw) {
        if (!check_keyword(kw)) return false;
        advance();
        return true;
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) {
            throw ParseError("expected " + std::string(kw), peek().offset);
        }
    }

    bool check_symbol(std::string_view sym, std::size_t ahead = 0) const {
        return peek(ahead).kind == TokKind::Symbol && peek(ahead).text == sym;
    }

    bool accept_symbol(std::string_view sym) {
        if (!check_symbol(sym)) return false;
        advance();
        return true;
    }

    void expect_symbol(std::string_view sym) {
        if (!accept_symbol(sym)) {
            throw ParseError("expected '" + std::string(sym) + "'", peek().offset);
        }
    }

    std::string expect_ident(std::string_view what) {
        if (peek().kind != TokKind::Ident) {
            throw ParseError("expected " + std::string(what), peek().offset);
        }
        return advance().text;
    }

    std::uint32_t expect_var() {
        if (peek().kind != TokKind::Var) {
            throw ParseError("expected variable (x<digits>)", peek().offset);
        }
        return *parse_var_name(advance().text);
    }

    Literal expect_literal() {
        const Token& t = peek();
        if (t.kind == TokKind::Int) {
            advance();
            return Literal::integer(static_cast<std::uint32_t>(std::stoul(t.text)));
        }
        if (t.kind == TokKind::String) {
            advance();
            return Literal::string(t.text);
        }
        throw ParseError("expected integer or string literal", t.offset);
    }

    Statement create() {
        expect_keyword("CREATE");
        expect_keyword("CTABLE");
        std::string name = expect_ident("table name");
        if (accept_keyword("AS")) {
            return CreateAsStmt{std::move(name), select_body()};
        }
        expect_symbol("(");
        std::vector<std::string> columns;
        do {
            columns.push_back(expect_ident("column name"));
        } while (accept_symbol(","));
        expect_symbol(")");
        return CreateStmt{std::move(name), std::move(columns)};
    }

    Statement declare() {
        expect_keyword("DECLARE");
        expect_keyword("VARIABLE");
        std::uint32_t var = expect_var();
        expect_keyword("DOMAIN");
        expect_symbol("(");
        std::vector<Literal> domain;
        do {
            domain.push_back(expect_literal());
        } while (accept_symbol(","));
        expect_symbol(")");
        return DeclareStmt{var, std::move(domain)};
    }

    Statement insert() {
        expect_keyword("INSERT");
        expect_keyword("INTO");
        std::string table = expect_ident("table name");
        expect_keyword("VALUES");
        expect_symbol("(");
        std::vector<AstTerm> values;
        do {
            if (peek().kind == TokKind::Var) {
                values.emplace_back(VarRef{expect_var()});
            } else {
                values.emplace_back(expect_literal());
            }
        } while (accept_symbol(","));
        expect_symbol(")");
        std::optional<AstCond> cond;
        if (accept_keyword("CONDITION")) cond = condition();
        return InsertStmt{std::move(table), std::move(values), std::move(cond)};
    }

    Statement select() { return select_body(); }

    SelectStmt select_body() {
        expect_keyword("SELECT");
        SelectStmt out;
        if (accept_symbol("*")) {
            out.star = true;
        } else {
            do {
                SelectItem item;
                item.col = colref();
                if (accept_keyword("AS")) item.alias = expect_ident("output column name");
                out.items.push_back(std::move(item));
            } while (accept_symbol(","));
        }
        expect_keyword("FROM");
        out.from = from_item();
        while (check_keyword("INNER")) {
            expect_keyword("INNER");
            expect_keyword("JOIN");
            JoinClause jc;
            jc.item = from_item();
            expect_keyword("ON");
            jc.on = condition();
            out.joins.push_back(std::move(jc));
        }
        if (accept_keyword("WHERE")) out.where = condition();
        return out;
    }

    Statement possibility() {
        expect_keyword("IS");
        PossibilityStmt out;
        if (accept_keyword("POSSIBLE")) {
            out.certain = false;
        } else if (accept_keyword("CERTAIN")) {
            out.certain = true;
        } else {
            throw ParseError("expected POSSIBLE or CERTAIN", peek().offset);
        }
        out.tuples = tuple_set();
        expect_keyword("IN");
        if (check_keyword("SELECT")) {
            out.target = select_body();
        } else {
            out.target = expect_ident("table name or SELECT");
        }
        return out;
    }

    std::vector<AstTuple> tuple_set() {
        std::vector<AstTuple> tuples;
        if (check_symbol("(") && check_symbol("(", 1)) {
            expect_symbol("(");
            do {
                tuples.push_back(tuple());
            } while (accept_symbol(","));
            expect_symbol(")");
        } else {
            tuples.push_back(tuple());
        }
        return tuples;
    }

    AstTuple tuple() {
        expect_symbol("(");
        AstTuple out;
        for (;;) {
            TuplePair pair;
            pair.column = expect_ident("column name");
            expect_symbol(",");
            pair.value = expect_literal();
            out.pairs.push_back(std::move(pair));
            if (!accept_symbol(",")) break;
        }
        expect_symbol(")");
        return out;
    }

    FromItem from_item() {
        FromItem out;
        out.table = expect_ident("table name");
        if (peek().kind == TokKind::Ident) out.alias = advance().text;
        return out;
    }

    ColRef colref() {
        std::string first = expect_ident("column reference");
        if (accept_symbol(".")) {
            std::string column = expect_ident("column name after '.'");
            return ColRef{std::move(first), std::move(column)};
        }
        return ColRef{"", std::move(first)};
    }

    AstCond or_expr() {
        std::vector<AstCond> parts;
        parts.push_back(and_expr());
        while (accept_keyword("OR")) parts.push_back(and_expr());
        return AstCond::any_of(std::move(parts));
    }

    AstCond and_expr() {
        std::vector<AstCond> parts;
        parts.push_back(primary());
        while (accept_keyword("AND")) parts.push_back(primary());
        return AstCond::all_of(std::move(parts));
    }

    AstCond primary() {
        if (accept_symbol("(")) {
            AstCond inner = or_expr();
            expect_symbol(")");
            return inner;
        }
        if (accept_keyword("TRUE")) return AstCond::always();
        if (accept_keyword("FALSE")) return AstCond::never();
        Operand lhs = operand();
        CmpOp op = comparison();
        Operand rhs = operand();
        return AstCond::atom(AstAtom{std::move(lhs), op, std::move(rhs)});
    }

    Operand operand() {
        const Token& t = peek();
        switch (t.kind) {
        case TokKind::Var:
            return Operand{VarRef{expect_var()}};
        case TokKind::Int:
        case TokKind::String:
            return Operand{expect_literal()};
        case TokKind::Ident:
            return Operand{colref()};
        default:
            throw ParseError("expected column, variable or literal", t.offset);
        }
    }

    CmpOp comparison() {
        const Token& t = peek();
        if (t.kind == TokKind::Symbol) {
            if (t.text == "=") { advance(); return CmpOp::Eq; }
            if (t.text == "!=") { advance(); return CmpOp::Ne; }
            if (t.text == "<") { advance(); return CmpOp::Lt; }
            if (t.text == "<=") { advance(); return CmpOp::Le; }
            if (t.text == ">") { advance(); return CmpOp::Gt; }
            if (t.text == ">=") { advance(); return CmpOp::Ge; }
        }
        throw ParseError("expected comparison operator", t.offset);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    std::size_t begin = 0;
    while (begin < s.size() && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    std::size_t end = s.size();
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

} // namespace

Statement parse(std::string_view text) {
    std::string_view trimmed = trim(text);
    if (trimmed.empty()) throw ParseError("empty statement", 0);
    if (trimmed.front() == '\\') {
        return MetaStmt{std::string(trimmed.substr(1))};
    }
    Parser p(tokenize(text));
    Statement stmt = p.statement();
    p.finish();
    return stmt;
}

Condition parse_storage_condition(std::string_view text) {
    Parser p(tokenize(text));
    AstCond ast = p.condition();
    p.finish();
    return ast.map_atoms([](const AstAtom& a) {
        auto to_term = [](const Operand& operand) -> Term {
            if (const auto* var = std::get_if<VarRef>(&operand.value)) {
                return Term::variable(var->id);
            }
            if (const auto* lit = std::get_if<Literal>(&operand.value)) {
                if (!lit->is_string() && lit->number() >= 1) {
                    return Term::constant(lit->number());
                }
            }
            throw ParseError("expected variable or positive integer constant", 0);
        };
        return Atom{to_term(a.lhs), a.op, to_term(a.rhs)};
    });
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string render_operand(const Operand& operand) {
    if (const auto* col = std::get_if<ColRef>(&operand.value)) {
        return col->qualifier.empty() ? col->column : col->qualifier + "." + col->column;
    }
    if (const auto* var = std::get_if<VarRef>(&operand.value)) {
        return "x" + std::to_string(var->id);
    }
    return render(std::get<Literal>(operand.value));
}

void render_cond_node(const AstCond& c, AstCond::Kind parent, std::string& out) {
    using Kind = AstCond::Kind;
    switch (c.kind()) {
    case Kind::True:
        out += "TRUE";
        return;
    case Kind::False:
        out += "FALSE";
        return;
    case Kind::Atom: {
        const AstAtom& a = c.as_atom();
        out += render_operand(a.lhs);
        out += ' ';
        out += op_symbol(a.op);
        out += ' ';
        out += render_operand(a.rhs);
        return;
    }
    case Kind::And:
    case Kind::Or: {
        // Parenthesize whenever flat reparsing would not rebuild this node.
        bool parens = (c.kind() == Kind::And && parent == Kind::And) ||
                      (c.kind() == Kind::Or && parent != Kind::True);
        if (parens) out += '(';
        const char* sep = c.kind() == Kind::And ? " AND " : " OR ";
        bool first = true;
        for (const auto& child : c.children()) {
            if (!first) out += sep;
            first = false;
            render_cond_node(child, c.kind(), out);
        }
        if (parens) out += ')';
        return;
    }
    }
}

std::string render_select(const SelectStmt& s) {
    std::string out = "SELECT ";
    if (s.star) {
        out += "*";
    } else {
        bool first = true;
        for (const auto& item : s.items) {
            if (!first) out += ", ";
            first = false;
            out += render_operand(Operand{item.col});
            if (!item.alias.empty()) out += " AS " + item.alias;
        }
    }
    auto render_from = [](const FromItem& f) {
        return f.alias.empty() ? f.table : f.table + " " + f.alias;
    };
    out += " FROM " + render_from(s.from);
    for (const auto& jc : s.joins) {
        out += " INNER JOIN " + render_from(jc.item) + " ON " + render(jc.on);
    }
    if (s.where) out += " WHERE " + render(*s.where);
    return out;
}

std::string render_tuple(const AstTuple& t) {
    std::string out = "(";
    bool first = true;
    for (const auto& pair : t.pairs) {
        if (!first) out += ", ";
        first = false;
        out += pair.column + ", " + render(pair.value);
    }
    out += ")";
    return out;
}

} // namespace

std::string render(const Literal& lit) {
    if (lit.is_string()) return "'" + lit.text() + "'";
    return std::to_string(lit.number());
}

std::string render(const AstCond& c) {
    std::string out;
    // Kind::True stands in for "no parent" at the top level.
    render_cond_node(c, AstCond::Kind::True, out);
    return out;
}

std::string render(const Statement& s) {
    struct Visitor {
        std::string operator()(const CreateStmt& c) const {
            std::string out = "CREATE CTABLE " + c.name + " (";
            bool first = true;
            for (const auto& col : c.columns) {
                if (!first) out += ", ";
                first = false;
                out += col;
            }
            return out + ")";
        }
        std::string operator()(const CreateAsStmt& c) const {
            return "CREATE CTABLE " + c.name + " AS " + render_select(c.query);
        }
        std::string operator()(const DeclareStmt& d) const {
            std::string out = "DECLARE VARIABLE x" + std::to_string(d.var) + " DOMAIN (";
            bool first = true;
            for (const auto& lit : d.domain) {
                if (!first) out += ", ";
                first = false;
                out += render(lit);
            }
            return out + ")";
        }
        std::string operator()(const InsertStmt& i) const {
            std::string out = "INSERT INTO " + i.table + " VALUES (";
            bool first = true;
            for (const auto& term : i.values) {
                if (!first) out += ", ";
                first = false;
                if (const auto* var = std::get_if<VarRef>(&term)) {
                    out += "x" + std::to_string(var->id);
                } else {
                    out += render(std::get<Literal>(term));
                }
            }
            out += ")";
            if (i.condition) out += " CONDITION " + render(*i.condition);
            return out;
        }
        std::string operator()(const SelectStmt& s) const { return render_select(s); }
        std::string operator()(const PossibilityStmt& p) const {
            std::string out = p.certain ? "IS CERTAIN " : "IS POSSIBLE ";
            if (p.tuples.size() == 1) {
                out += render_tuple(p.tuples.front());
            } else {
                out += "(";
                bool first = true;
                for (const auto& t : p.tuples) {
                    if (!first) out += ", ";
                    first = false;
                    out += render_tuple(t);
                }
                out += ")";
            }
            out += " IN ";
            if (const auto* name = std::get_if<std::string>(&p.target)) {
                out += *name;
            } else {
                out += render_select(std::get<SelectStmt>(p.target));
            }
            return out;
        }
        std::string operator()(const MetaStmt& m) const { return "\\" + m.command; }
    };
    return std::visit(Visitor{}, s);
}

} // namespace csql
} // namespace ctdb
