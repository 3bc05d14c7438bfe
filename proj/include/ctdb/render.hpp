#pragma once

#include <string>

#include "ctdb/engine.hpp"

namespace ctdb {
namespace render {

/// Cell text: variables as x<id>, constants via the dictionary (bare, no
/// quotes) or as digits when the code has no dictionary entry.
std::string cell_text(Term term, const Database& db);

/// Condition text with dictionary constants quoted, e.g. x4='IT'.
std::string condition_text(const Condition& c, const Database& db);

/// Aligned-column rendering with a trailing phi(t) column and a row-count
/// footer.
std::string table_text(const CTable& t, const Database& db);

/// One header line plus one line per row; the condition column comes last.
/// Fields containing commas, quotes or newlines are double-quoted.
std::string table_csv(const CTable& t, const Database& db);

} // namespace render
} // namespace ctdb
