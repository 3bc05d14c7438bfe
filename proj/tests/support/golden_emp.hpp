#pragma once

namespace ctdb {
namespace testsupport {

// Derived by hand from the format rules: dictionary codes in first-use
// order of the fixture script (declares before inserts), variables and
// domains ascending, rows in insertion order with the +const/-var encoding.
inline const char* kGoldenEmp =
    "PDB 1\n"
    "DICT 1 M\n"
    "DICT 2 F\n"
    "DICT 3 IT\n"
    "DICT 4 PR\n"
    "DICT 5 Alice\n"
    "DICT 6 married\n"
    "DICT 7 Bob\n"
    "DICT 8 HR\n"
    "DICT 9 Cecilia\n"
    "DICT 10 David\n"
    "DICT 11 Ella\n"
    "DICT 12 single\n"
    "VAR 1 : 1 2\n"
    "VAR 2 : 1 2\n"
    "VAR 3 : 1 2\n"
    "VAR 4 : 3 4\n"
    "TABLE Emp 4 Name Gender Mstat Dept\n"
    "ROW 5 -1 6 3 | TRUE\n"
    "ROW 7 -2 6 8 | TRUE\n"
    "ROW 9 -3 6 8 | TRUE\n"
    "ROW 10 1 6 -4 | TRUE\n"
    "ROW 11 2 12 -4 | TRUE\n";

} // namespace testsupport
} // namespace ctdb
