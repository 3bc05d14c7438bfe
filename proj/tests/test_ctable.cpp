#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctdb/ctable.hpp"
#include "support/instance_gen.hpp"
#include "support/oracle.hpp"

using namespace ctdb;

namespace {

Term c(std::uint32_t v) { return Term::constant(v); }
Term x(std::uint32_t id) { return Term::variable(id); }
Condition eq(Term lhs, Term rhs) { return Condition::atom(Atom{lhs, CmpOp::Eq, rhs}); }

// Codes: M=1 F=2 IT=3 PR=4 Alice=5 married=6 Bob=7 HR=8 Cecilia=9 David=10
// Ella=11 single=12.
CTable emp_table() {
    CTable t{Schema{"Emp", {"Name", "Gender", "Mstat", "Dept"}}, {}};
    t.rows.push_back({{c(5), x(1), c(6), c(3)}, Condition::always()});
    t.rows.push_back({{c(7), x(2), c(6), c(8)}, Condition::always()});
    t.rows.push_back({{c(9), x(3), c(6), c(8)}, Condition::always()});
    t.rows.push_back({{c(10), c(1), c(6), x(4)}, Condition::always()});
    t.rows.push_back({{c(11), c(2), c(12), x(4)}, Condition::always()});
    return t;
}

GlobalCondition emp_domains() {
    GlobalCondition g;
    g.declare(1, {1, 2});
    g.declare(2, {1, 2});
    g.declare(3, {1, 2});
    g.declare(4, {3, 4});
    return g;
}

} // namespace

TEST_CASE("apply_valuation grounds the employee table") {
    CTable emp = emp_table();
    Valuation v;
    v.bind(1, 1);
    v.bind(2, 1);
    v.bind(3, 1);
    v.bind(4, 3);
    Relation w = apply_valuation(emp, v);
    REQUIRE(w.size() == 5);
    CHECK(w.contains({5, 1, 6, 3}));  // Alice M married IT
    CHECK(w.contains({10, 1, 6, 3})); // David in IT
    CHECK(w.contains({11, 2, 12, 3})); // Ella in IT
}

TEST_CASE("apply_valuation drops rows with failing conditions") {
    CTable t{Schema{"T", {"a", "b"}}, {{{c(1), c(2)}, Condition::never()}}};
    CHECK(apply_valuation(t, Valuation{}).size() == 0);

    // The selection-result table: Alice/TRUE, David and Ella under x4='IT'.
    CTable sel{Schema{"Q", {"Name", "Dept"}}, {}};
    sel.rows.push_back({{c(5), c(3)}, Condition::always()});
    sel.rows.push_back({{c(10), x(4)}, eq(x(4), c(3))});
    sel.rows.push_back({{c(11), x(4)}, eq(x(4), c(3))});
    Valuation pr;
    pr.bind(4, 4); // x4 -> PR
    Relation w = apply_valuation(sel, pr);
    REQUIRE(w.size() == 1);
    CHECK(w.contains({5, 3}));
}

TEST_CASE("apply_valuation requires every variable bound") {
    CTable t{Schema{"T", {"a"}}, {{{x(1)}, Condition::always()}}};
    CHECK_THROWS_AS(apply_valuation(t, Valuation{}), UnboundVariableError);
}

TEST_CASE("enumerate_valuations is lexicographic and complete") {
    GlobalCondition g;
    g.declare(1, {1, 2});
    auto vs = enumerate_valuations(g, {1});
    REQUIRE(vs.size() == 2);
    CHECK(vs[0].value_of(1) == 1);
    CHECK(vs[1].value_of(1) == 2);

    CHECK(enumerate_valuations(emp_domains(), {1, 2, 3, 4}).size() == 16);

    auto empty = enumerate_valuations(g, {});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].bindings().empty());

    GlobalCondition big;
    big.declare(1, {1, 2, 3});
    big.declare(2, {1, 2, 3});
    CHECK_THROWS_AS(enumerate_valuations(big, {1, 2}, 8), EnumerationCapError);
    CHECK_THROWS_AS(enumerate_valuations(big, {7}), UnknownVariableError);
}

TEST_CASE("possible_worlds of the employee table") {
    auto worlds = possible_worlds(emp_table(), emp_domains());
    CHECK(worlds.size() == 16);
    // David and Ella share x4: same department in every world.
    for (const Relation& w : worlds) {
        std::uint32_t david_dept = 0;
        std::uint32_t ella_dept = 0;
        for (const auto& row : w.rows()) {
            if (row[0] == 10) david_dept = row[3];
            if (row[0] == 11) ella_dept = row[3];
        }
        CHECK(david_dept == ella_dept);
    }
}

TEST_CASE("possible_worlds degenerate cases") {
    CTable complete{Schema{"T", {"a", "b"}},
                    {{{c(1), c(2)}, Condition::always()}, {{c(3), c(4)}, Condition::always()}}};
    GlobalCondition g;
    auto worlds = possible_worlds(complete, g);
    REQUIRE(worlds.size() == 1);
    CHECK(worlds.begin()->contains({1, 2}));
    CHECK(worlds.begin()->contains({3, 4}));

    CTable single{Schema{"T", {"a"}}, {{{x(1)}, Condition::always()}}};
    GlobalCondition g2;
    g2.declare(1, {1, 2});
    auto two = possible_worlds(single, g2);
    REQUIRE(two.size() == 2);
}

TEST_CASE("certain and possible answers") {
    CTable complete{Schema{"T", {"a"}}, {{{c(1)}, Condition::always()}}};
    GlobalCondition none;
    CHECK(certain_answer(complete, none).contains({1}));
    CHECK(possible_answer(complete, none).contains({1}));

    // The join-result table: only (David, Ella) carries TRUE.
    GlobalCondition g = emp_domains();
    CTable q{Schema{"Q", {"Name1", "Name2"}}, {}};
    q.rows.push_back({{c(5), c(11)}, Condition::all_of({eq(x(1), c(1)), eq(x(4), c(3))})});
    q.rows.push_back({{c(7), c(9)}, Condition::all_of({eq(x(2), c(1)), eq(x(3), c(2))})});
    q.rows.push_back({{c(9), c(7)}, Condition::all_of({eq(x(3), c(1)), eq(x(2), c(2))})});
    q.rows.push_back({{c(10), c(5)}, Condition::all_of({eq(x(1), c(2)), eq(x(4), c(3))})});
    q.rows.push_back({{c(10), c(11)}, Condition::always()});

    Relation cert = certain_answer(q, g);
    REQUIRE(cert.size() == 1);
    CHECK(cert.contains({10, 11}));

    // Union over all 16 valuations: every listed pair shows up somewhere.
    Relation poss = possible_answer(q, g);
    CHECK(poss.size() == 5);
    for (const auto& row : q.rows) {
        CHECK(poss.contains({row.terms[0].constant_code(), row.terms[1].constant_code()}));
    }

    CTable unknown{Schema{"T", {"a"}}, {{{x(1)}, Condition::always()}}};
    GlobalCondition g2;
    g2.declare(1, {1, 2});
    CHECK(certain_answer(unknown, g2).size() == 0);
    Relation p = possible_answer(unknown, g2);
    CHECK(p.contains({1}));
    CHECK(p.contains({2}));
}

TEST_CASE("randomized: certain is contained in possible") {
    testsupport::Rng rng(411);
    for (int iter = 0; iter < 60; ++iter) {
        auto inst = testsupport::random_instance(rng);
        for (const CTable& t : inst.tables) {
            Relation cert = certain_answer(t, inst.g);
            Relation poss = possible_answer(t, inst.g);
            for (const auto& row : cert.rows()) CHECK(poss.contains(row));
        }
    }
}
