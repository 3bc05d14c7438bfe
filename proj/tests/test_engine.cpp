#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctdb/engine.hpp"
#include "ctdb/render.hpp"
#include "support/emp_fixture.hpp"
#include "support/instance_gen.hpp"
#include "support/oracle.hpp"

using namespace ctdb;
using testsupport::code_of;
using testsupport::make_emp_db;

namespace {

CTable run_select(Database& db, std::string_view text) {
    ExecResult r = execute(db, csql::parse(text));
    return std::get<ResultTable>(r).table;
}

bool run_bool(Database& db, std::string_view text) {
    return std::get<BoolResult>(execute(db, csql::parse(text))).value;
}

} // namespace

TEST_CASE("the worked-example script yields the exact selection answer") {
    Database db = make_emp_db();
    CTable out = run_select(db, "SELECT * FROM Emp WHERE Dept = 'IT';");

    REQUIRE(out.rows.size() == 3);
    CHECK(out.schema.columns == std::vector<std::string>{"Name", "Gender", "Mstat", "Dept"});
    CHECK(render::cell_text(out.rows[0].terms[0], db) == "Alice");
    CHECK(out.rows[0].local.is_true());
    CHECK(render::cell_text(out.rows[1].terms[0], db) == "David");
    CHECK(render::condition_text(out.rows[1].local, db) == "x4='IT'");
    CHECK(render::cell_text(out.rows[2].terms[0], db) == "Ella");
    CHECK(render::condition_text(out.rows[2].local, db) == "x4='IT'");
}

TEST_CASE("the self-join query yields the five surviving pairs") {
    Database db = make_emp_db();
    CTable out = run_select(db,
                            "SELECT e1.Name AS Name1, e2.Name AS Name2 "
                            "FROM Emp e1 INNER JOIN Emp e2 ON e1.Dept = e2.Dept "
                            "WHERE e1.Gender = 'M' AND e2.Gender = 'F';");
    REQUIRE(out.rows.size() == 5);
    CHECK(out.schema.columns == std::vector<std::string>{"Name1", "Name2"});
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& row : out.rows) {
        pairs.emplace_back(render::cell_text(row.terms[0], db),
                           render::cell_text(row.terms[1], db));
    }
    std::vector<std::pair<std::string, std::string>> expected = {
        {"Alice", "Ella"}, {"Bob", "Cecilia"}, {"Cecilia", "Bob"}, {"David", "Alice"},
        {"David", "Ella"}};
    CHECK(pairs == expected);
    CHECK(out.rows[4].local.is_true());
}

TEST_CASE("possibility and certainty statements") {
    Database db = make_emp_db();
    CHECK(run_bool(db, "IS POSSIBLE (Name,'Bob',Gender,'M',Mstat,'married',Dept,'HR') IN Emp;"));
    CHECK_FALSE(
        run_bool(db, "IS CERTAIN (Name,'Bob',Gender,'M',Mstat,'married',Dept,'HR') IN Emp;"));
    CHECK(run_bool(db, "IS CERTAIN (Name,'Bob',Dept,'HR') IN SELECT Name, Dept FROM Emp;"));
    CHECK_FALSE(run_bool(
        db, "IS CERTAIN (Name,'Bob',Gender,'M',Dept,'HR') IN SELECT Name, Gender, Dept FROM Emp;"));

    // Set form: the two Ajax employees can sit in IT together.
    CHECK(run_bool(db, "IS POSSIBLE ((Name,'David',Gender,'M',Mstat,'married',Dept,'IT'),"
                       "(Name,'Ella',Gender,'F',Mstat,'single',Dept,'IT')) IN Emp;"));
    CHECK_FALSE(run_bool(db, "IS POSSIBLE ((Name,'Bob',Gender,'M',Mstat,'married',Dept,'HR'),"
                             "(Name,'Bob',Gender,'F',Mstat,'married',Dept,'HR')) IN Emp;"));
}

TEST_CASE("redeclaration and duplicate tables are errors") {
    Database db = make_emp_db();
    CHECK_THROWS_AS(execute(db, csql::parse("DECLARE VARIABLE x4 DOMAIN ('IT','PR');")),
                    DuplicateObjectError);
    CHECK_THROWS_AS(execute(db, csql::parse("CREATE CTABLE emp (A);")), DuplicateObjectError);
}

TEST_CASE("select never mutates the stored table") {
    Database db = make_emp_db();
    execute(db, csql::parse("INSERT INTO Emp VALUES ('Smith','M','single',x4) "
                            "CONDITION (x4 = 'HR');")); // unsatisfiable: HR not in x4's domain
    REQUIRE(db.find_table("Emp")->rows.size() == 6);

    CTable out = run_select(db, "SELECT * FROM Emp;");
    CHECK(out.rows.size() == 5); // pruned in the answer only
    CHECK(db.find_table("Emp")->rows.size() == 6);
    // The stored condition is untouched.
    CHECK(render::condition_text(db.find_table("Emp")->rows[5].local, db) == "x4='HR'");
}

TEST_CASE("materialized query results are queryable ctables") {
    Database db = make_emp_db();
    execute(db, csql::parse("CREATE CTABLE Q AS SELECT Name, Dept FROM Emp;"));
    REQUIRE(db.find_table("Q") != nullptr);
    CHECK(db.find_table("Q")->rows.size() == 5);
    CHECK(run_bool(db, "IS CERTAIN (Name,'Bob',Dept,'HR') IN Q;"));
    CTable out = run_select(db, "SELECT * FROM Q WHERE Dept = 'HR';");
    CHECK(out.rows.size() == 2);
}

TEST_CASE("name resolution") {
    Database db = make_emp_db();
    // Qualified references against a single aliased table.
    CTable out = run_select(db, "SELECT e.Name FROM Emp e WHERE e.Dept = 'IT';");
    CHECK(out.rows.size() == 3);
    // The same column may be projected twice under different names.
    CTable twice = run_select(db, "SELECT Name AS A, Name AS B FROM Emp;");
    CHECK(twice.schema.columns == std::vector<std::string>{"A", "B"});
    CHECK(twice.rows.size() == 5);
    // ... but duplicate output names are rejected.
    CHECK_THROWS_AS(run_select(db, "SELECT Name, Name FROM Emp;"), SchemaMismatchError);
    // Unqualified reference over a join is ambiguous.
    CHECK_THROWS_AS(run_select(db, "SELECT Name FROM Emp e1 INNER JOIN Emp e2 ON e1.Name = e2.Name;"),
                    UnknownColumnError);
    // Star over a join exposes qualified columns.
    CTable star = run_select(db, "SELECT * FROM Emp e1 INNER JOIN Emp e2 ON e1.Name = e2.Name;");
    CHECK(star.schema.columns.front() == "e1.Name");
    CHECK(star.schema.columns.back() == "e2.Dept");
    CHECK(star.rows.size() == 5); // names are unique, each row pairs with itself
}

TEST_CASE("execution errors") {
    Database db = make_emp_db();
    CHECK_THROWS_AS(run_select(db, "SELECT * FROM Nope;"), UnknownTableError);
    CHECK_THROWS_AS(run_select(db, "SELECT Salary FROM Emp;"), UnknownColumnError);
    CHECK_THROWS_AS(execute(db, csql::parse("INSERT INTO Emp VALUES ('A','B');")),
                    ArityMismatchError);
    CHECK_THROWS_AS(run_select(db, "SELECT * FROM Emp WHERE Dept = 'Sales';"),
                    UnknownLiteralError);
    CHECK_THROWS_AS(run_bool(db, "IS POSSIBLE (Name,'Nobody',Gender,'M',Mstat,'married',"
                                 "Dept,'HR') IN Emp;"),
                    UnknownLiteralError);
    CHECK_THROWS_AS(execute(db, csql::parse("INSERT INTO Emp VALUES ('Z','M','single','IT') "
                                            "CONDITION (Dept = 'IT');")),
                    UnknownColumnError);
    CHECK_THROWS_AS(execute(db, csql::parse("INSERT INTO Emp VALUES ('Z','M','single',x9);")),
                    UnknownVariableError);
    CHECK_THROWS_AS(run_select(db, "SELECT * FROM Emp WHERE Gender = x9;"), UnknownVariableError);
}

TEST_CASE("dictionary encodes strings once and decodes them back") {
    Database db = make_emp_db();
    auto code = db.lookup_string("married");
    REQUIRE(code.has_value());
    CHECK(*db.string_for_code(*code) == "married");
    CHECK(db.string_for_code(9999) == nullptr);

    std::size_t before = db.dictionary_size();
    execute(db, csql::parse("INSERT INTO Emp VALUES ('Alice','M','married','IT');"));
    CHECK(db.dictionary_size() == before); // all strings already interned

    // Integer literals are their own codes; mixed data stays integer-pure.
    Database ints;
    execute(ints, csql::parse("CREATE CTABLE R (A, B);"));
    execute(ints, csql::parse("DECLARE VARIABLE x1 DOMAIN (5, 6, 7);"));
    execute(ints, csql::parse("INSERT INTO R VALUES (8, 9);"));
    execute(ints, csql::parse("INSERT INTO R VALUES (8, x1);"));
    CTable out = run_select(ints, "SELECT * FROM R WHERE A = 8;");
    REQUIRE(out.rows.size() == 2);
    CHECK(out.rows[0].terms[1] == Term::constant(9));
    CTable big = run_select(ints, "SELECT * FROM R WHERE B > 6;");
    REQUIRE(big.rows.size() == 2);
    CHECK(render::condition_text(big.rows[1].local, ints) == "x1>6");
}

TEST_CASE("randomized: end-to-end select matches per-world classical evaluation") {
    testsupport::Rng rng(9090);
    for (int iter = 0; iter < 80; ++iter) {
        auto inst = testsupport::random_instance(rng, 3, 3, 6);
        Database db;
        for (std::uint32_t id : inst.g.sorted_ids()) {
            db.global().declare(id, *inst.g.domain_of(id));
        }
        for (const CTable& t : inst.tables) {
            CTable& stored = db.create_table(t.schema);
            stored.rows = t.rows;
        }

        const CTable& t0 = inst.tables[0];
        std::size_t arity = t0.schema.columns.size();

        // Random ground WHERE over t0, mirrored as an index predicate.
        std::vector<algebra::PredAtom> atoms;
        std::size_t natoms = 1 + testsupport::pick(rng, 2);
        for (std::size_t i = 0; i < natoms; ++i) {
            atoms.push_back(algebra::PredAtom{
                algebra::PredOperand::column(testsupport::pick(rng, arity)),
                testsupport::pick(rng, 2) == 0 ? CmpOp::Eq : CmpOp::Ne,
                algebra::PredOperand::value(
                    Term::constant(static_cast<std::uint32_t>(1 + testsupport::pick(rng, 4))))});
        }
        bool conj = testsupport::pick(rng, 2) == 0;
        std::vector<algebra::Predicate> parts;
        for (const auto& a : atoms) parts.push_back(algebra::Predicate::atom(a));
        algebra::Predicate pred = conj ? algebra::Predicate::all_of(parts)
                                       : algebra::Predicate::any_of(parts);

        std::string where;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i) where += conj ? " AND " : " OR ";
            where += t0.schema.columns[atoms[i].lhs.column_index()];
            where += atoms[i].op == CmpOp::Eq ? " = " : " != ";
            where += std::to_string(atoms[i].rhs.term().constant_code());
        }
        std::string query = "SELECT * FROM " + t0.schema.table_name + " WHERE " + where + ";";

        CTable answer = run_select(db, query);
        auto answer_worlds = possible_worlds(answer, db.global());

        std::set<Relation> expected;
        for (const Valuation& v :
             testsupport::oracle_valuations(inst.g, testsupport::instance_vars(inst))) {
            expected.insert(testsupport::rel_select(apply_valuation(t0, v), pred));
        }
        CHECK(answer_worlds == expected);
    }
}
