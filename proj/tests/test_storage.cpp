#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctdb/render.hpp"
#include "ctdb/storage.hpp"
#include "support/emp_fixture.hpp"
#include "support/golden_emp.hpp"
#include "support/instance_gen.hpp"

using namespace ctdb;
using testsupport::kGoldenEmp;
using testsupport::make_emp_db;

TEST_CASE("save writes the golden employee image") {
    CHECK(storage::save_db_string(make_emp_db()) == kGoldenEmp);
}

TEST_CASE("empty database image is just the header") {
    CHECK(storage::save_db_string(Database{}) == "PDB 1\n");
    Database back = storage::load_db_string("PDB 1\n");
    CHECK(back.table_order().empty());
}

TEST_CASE("save then load then save is byte-identical") {
    Database db = make_emp_db();
    // Add a condition-bearing row so condition text round-trips too.
    execute(db, csql::parse("INSERT INTO Emp VALUES ('Smith','M','single',x4) "
                            "CONDITION (x4 = 'HR' OR x4 = 'PR');"));
    std::string first = storage::save_db_string(db);
    Database loaded = storage::load_db_string(first);
    CHECK(storage::save_db_string(loaded) == first);
    CHECK(first.find("ROW 13 1 12 -4 | x4=8 OR x4=4\n") != std::string::npos);
}

TEST_CASE("loading the golden image restores the worked example") {
    Database db = storage::load_db_string(kGoldenEmp);
    REQUIRE(db.find_table("Emp") != nullptr);
    CHECK(db.find_table("Emp")->rows.size() == 5);
    CHECK(std::get<BoolResult>(
              execute(db, csql::parse("IS POSSIBLE (Name,'Bob',Gender,'M',Mstat,'married',"
                                      "Dept,'HR') IN Emp;")))
              .value);
    CTable out = std::get<ResultTable>(
                     execute(db, csql::parse("SELECT * FROM Emp WHERE Dept = 'IT';")))
                     .table;
    CHECK(out.rows.size() == 3);
}

TEST_CASE("file round-trip through disk") {
    Database db = make_emp_db();
    std::string path = "emp_roundtrip.pdb";
    storage::save_db_file(db, path);
    Database loaded = storage::load_db_file(path);
    CHECK(storage::save_db_string(loaded) == kGoldenEmp);
    std::remove(path.c_str());
    CHECK_THROWS_AS(storage::load_db_file("does_not_exist.pdb"), IoError);
}

TEST_CASE("malformed images raise FormatError with the line") {
    // Truncated mid-row.
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nTABLE T 2 a b\nROW 1\n"), FormatError);
    // Unregistered variable in a term.
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nTABLE T 1 a\nROW -5 | TRUE\n"), FormatError);
    // Unregistered variable in a condition.
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nTABLE T 1 a\nROW 1 | x5=1\n"), FormatError);
    // Dictionary codes must ascend from 1.
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nDICT 2 x\n"), FormatError);
    // Sections are ordered.
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nTABLE T 1 a\nDICT 1 x\n"), FormatError);
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nROW 1 | TRUE\n"), FormatError);
    // Unknown tags and headers.
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nBLOB 1\n"), FormatError);
    CHECK_THROWS_AS(storage::load_db_string("nonsense\n"), FormatError);
    CHECK_THROWS_AS(storage::load_db_string(""), FormatError);
    CHECK_THROWS_AS(storage::load_db_string("PDB 1\nTABLE T 1 a\nROW 0 | TRUE\n"), FormatError);

    try {
        storage::load_db_string("PDB 1\nTABLE T 2 a b\nROW 1\n");
    } catch (const FormatError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("unknown versions raise VersionError") {
    CHECK_THROWS_AS(storage::load_db_string("PDB 2\n"), VersionError);
}

TEST_CASE("randomized: semantic round-trip preserves worlds and catalog") {
    testsupport::Rng rng(2468);
    for (int iter = 0; iter < 40; ++iter) {
        auto inst = testsupport::random_instance(rng, 3, 3, 5);
        Database db;
        for (std::uint32_t id : inst.g.sorted_ids()) {
            db.global().declare(id, *inst.g.domain_of(id));
        }
        for (const CTable& t : inst.tables) {
            CTable& stored = db.create_table(t.schema);
            stored.rows = t.rows;
        }

        Database back = storage::load_db_string(storage::save_db_string(db));
        CHECK(back.table_order() == db.table_order());
        CHECK(back.global().sorted_ids() == db.global().sorted_ids());
        for (const std::string& name : db.table_order()) {
            const CTable* a = db.find_table(name);
            const CTable* b = back.find_table(name);
            REQUIRE(b != nullptr);
            CHECK(a->schema == b->schema);
            REQUIRE(a->rows.size() == b->rows.size());
            for (std::size_t i = 0; i < a->rows.size(); ++i) {
                CHECK(a->rows[i].terms == b->rows[i].terms);
            }
            CHECK(possible_worlds(*a, db.global()) == possible_worlds(*b, back.global()));
        }
    }
}
