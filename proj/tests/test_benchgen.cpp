#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "ctdb/benchgen.hpp"
#include "ctdb/storage.hpp"

using namespace ctdb;
using namespace ctdb::benchgen;

TEST_CASE("splitmix64 matches the pinned vectors") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFull);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ull);

    SplitMix64 other(1);
    CHECK(other.next() == 0x910A2DEC89025CC1ull);
    CHECK(SplitMix64(0).next() != SplitMix64(1).next());
}

TEST_CASE("identical specs generate byte-identical databases") {
    NoiseSpec spec;
    spec.rows = 200;
    spec.cols = 5;
    spec.noise_pct = 10.0;
    spec.seed = 7;

    auto save = [&]() {
        Database db;
        install(db, gen_census(spec, "R", census_columns()));
        return storage::save_db_string(db);
    };
    std::string a = save();
    std::string b = save();
    CHECK(a == b);

    NoiseSpec other = spec;
    other.seed = 8;
    Database db;
    install(db, gen_census(other, "R", census_columns()));
    CHECK(storage::save_db_string(db) != a);
}

TEST_CASE("noise accounting is exact") {
    NoiseSpec spec;
    spec.rows = 1000;
    spec.cols = 5;
    spec.noise_pct = 10.0;
    spec.seed = 3;
    GenResult gen = gen_census(spec, "R");
    CHECK(gen.variable_cells == 500); // 10% of 5000 cells

    std::uint64_t var_terms = 0;
    std::set<std::uint32_t> seen_vars;
    for (const auto& row : gen.table.rows) {
        REQUIRE(row.terms.size() == 5);
        CHECK(row.local.is_true());
        for (Term t : row.terms) {
            if (t.is_variable()) {
                ++var_terms;
                // Fresh variable per cell: no id repeats.
                CHECK(seen_vars.insert(t.var_id()).second);
            } else {
                CHECK(t.constant_code() >= 1);
                CHECK(t.constant_code() <= spec.value_max);
            }
        }
    }
    CHECK(var_terms == 500);
    CHECK(gen.variables.size() == 500);
    for (std::uint32_t id : gen.variables.sorted_ids()) {
        const auto& dom = *gen.variables.domain_of(id);
        CHECK(dom.size() >= 2);
        CHECK(dom.size() <= 8);
        for (std::uint32_t v : dom) {
            CHECK(v >= 1);
            CHECK(v <= spec.value_max);
        }
    }
}

TEST_CASE("noise extremes") {
    NoiseSpec spec;
    spec.rows = 40;
    spec.cols = 3;
    spec.seed = 11;

    spec.noise_pct = 0.0;
    GenResult clean = gen_census(spec, "R");
    CHECK(clean.variable_cells == 0);
    CHECK(clean.variables.size() == 0);

    spec.noise_pct = 100.0;
    GenResult noisy = gen_census(spec, "R");
    CHECK(noisy.variable_cells == 120);
    for (const auto& row : noisy.table.rows) {
        for (Term t : row.terms) CHECK(t.is_variable());
    }
}

TEST_CASE("noise spec validation") {
    NoiseSpec spec;
    spec.rows = 10;
    spec.cols = 2;
    spec.seed = 1;

    NoiseSpec bad = spec;
    bad.value_max = 4; // cannot fill domains of up to 8 distinct values
    CHECK_THROWS_AS(gen_census(bad, "R"), InvalidValueError);

    bad = spec;
    bad.noise_pct = 101.0;
    CHECK_THROWS_AS(gen_census(bad, "R"), InvalidValueError);

    bad = spec;
    bad.rows = 0;
    CHECK_THROWS_AS(gen_census(bad, "R"), InvalidValueError);

    bad = spec;
    bad.noise_pct = 50.0; // 10 fresh variables, but only 5 ids left
    CHECK_THROWS_AS(gen_census(bad, "R", {}, 0x7FFFFFFAu), CapacityError);

    CHECK_THROWS_AS(gen_census(spec, "R", {"only", "two", "names?"}), SchemaMismatchError);
}

TEST_CASE("run_bench produces one report row per query and size") {
    NoiseSpec shape;
    shape.cols = 5;
    shape.noise_pct = 10.0;
    shape.seed = 21;
    std::vector<std::uint64_t> sizes = {50, 100};
    BenchReport report = run_bench(shape, census_queries(), sizes, 3);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].query_id == "Q1");
    CHECK(report.rows[0].rows == 50);
    CHECK(report.rows[1].query_id == "Q2");
    CHECK(report.rows[2].rows == 100);
    for (const auto& row : report.rows) CHECK(row.median_ms >= 0.0);

    std::string csv = to_csv(report);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "query_id,rows,noise_pct,median_ms,output_rows,pruned_rows");
    int data_lines = 0;
    while (std::getline(lines, line)) {
        ++data_lines;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
    }
    CHECK(data_lines == 4);
}

TEST_CASE("at zero noise the queries degenerate to classical selection") {
    NoiseSpec shape;
    shape.cols = 5;
    shape.noise_pct = 0.0;
    shape.seed = 5;
    shape.rows = 400;
    Database db;
    install(db, gen_census(shape, "R", census_columns()));

    ExecResult result = execute(db, csql::parse(census_queries()[0].text));
    const CTable& out = std::get<ResultTable>(result).table;
    // Columns: STATEFIP OCC1990 CITIZEN SUBFAM VETSTAT.
    std::uint64_t expected = 0;
    for (const auto& row : db.find_table("R")->rows) {
        if (row.terms[4] == Term::constant(8) && row.terms[2] == Term::constant(9)) ++expected;
    }
    CHECK(out.rows.size() == expected);
    for (const auto& row : out.rows) CHECK(row.local.is_true());

    QueryStats stats;
    execute(db, csql::parse(census_queries()[1].text), &stats);
    CHECK(stats.pruned_rows == 0); // nothing variable to prune
}
