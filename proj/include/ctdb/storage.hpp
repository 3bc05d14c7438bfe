#pragma once

#include <iosfwd>
#include <string>

#include "ctdb/engine.hpp"

namespace ctdb {
namespace storage {

/// Writes the line-oriented database image:
///
///   PDB 1
///   DICT <code> <string>            codes ascending from 1
///   VAR <id> : <c1> <c2> ...        ids ascending, domains ascending
///   TABLE <name> <arity> <col...>   tables in creation order
///   ROW <i1> ... <iN> | <condition> constants as +code, variable k as -k
///
/// Deterministic: saving the same database twice yields identical bytes.
void save_db(const Database& db, std::ostream& out);
std::string save_db_string(const Database& db);
void save_db_file(const Database& db, const std::string& path);

/// Inverse of save_db on canonical images; liberal in condition spelling
/// (reparsed conditions re-render canonically on the next save). Throws
/// FormatError with the offending line, VersionError on a bad header.
Database load_db(std::istream& in);
Database load_db_string(const std::string& image);
Database load_db_file(const std::string& path);

} // namespace storage
} // namespace ctdb
