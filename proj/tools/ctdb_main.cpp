#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define CTDB_ISATTY _isatty(0)
#else
#include <unistd.h>
#define CTDB_ISATTY isatty(0)
#endif

#include <CLI11.hpp>

#include "ctdb/benchgen.hpp"
#include "ctdb/csql.hpp"
#include "ctdb/engine.hpp"
#include "ctdb/errors.hpp"
#include "ctdb/render.hpp"
#include "ctdb/storage.hpp"

namespace {

struct Options {
    std::string db_path;
    std::string batch_path;
    std::string format = "table";
    bool stop_on_error = false;
    bool timing = false;
};

struct Session {
    ctdb::Database db;
    bool timing = false;
    bool csv = false;
    bool done = false;
};

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

void print_global(const ctdb::Database& db, std::ostream& out) {
    auto ids = db.global().sorted_ids();
    if (ids.empty()) {
        out << "(no variables)\n";
        return;
    }
    for (std::uint32_t id : ids) {
        out << "x" << id << " :";
        for (std::uint32_t code : *db.global().domain_of(id)) {
            if (const std::string* s = db.string_for_code(code)) {
                out << " '" << *s << "'";
            } else {
                out << " " << code;
            }
        }
        out << "\n";
    }
}

// Returns false on a failed meta command.
bool run_meta(Session& session, const std::string& command, std::ostream& out) {
    std::istringstream args(command);
    std::string verb;
    args >> verb;
    try {
        if (verb == "quit" || verb == "q") {
            session.done = true;
            return true;
        }
        if (verb == "open") {
            std::string path;
            if (!(args >> path)) throw ctdb::Error("usage: \\open <path>");
            session.db = ctdb::storage::load_db_file(path);
            out << "opened " << path << "\n";
            return true;
        }
        if (verb == "save") {
            std::string path;
            if (!(args >> path)) throw ctdb::Error("usage: \\save <path>");
            ctdb::storage::save_db_file(session.db, path);
            out << "saved " << path << "\n";
            return true;
        }
        if (verb == "timing") {
            std::string mode;
            args >> mode;
            if (mode == "on") session.timing = true;
            else if (mode == "off") session.timing = false;
            else throw ctdb::Error("usage: \\timing on|off");
            out << "timing " << mode << "\n";
            return true;
        }
        if (verb == "tables") {
            if (session.db.table_order().empty()) {
                out << "(no ctables)\n";
            } else {
                for (const auto& name : session.db.table_order()) out << name << "\n";
            }
            return true;
        }
        if (verb == "global") {
            print_global(session.db, out);
            return true;
        }
        throw ctdb::Error("unknown meta command \\" + verb);
    } catch (const ctdb::Error& e) {
        out << "error: " << e.what() << "\n";
        return false;
    }
}

bool run_statement(Session& session, const std::string& text, std::ostream& out) {
    auto start = std::chrono::steady_clock::now();
    try {
        ctdb::csql::Statement stmt = ctdb::csql::parse(text);
        if (const auto* meta = std::get_if<ctdb::csql::MetaStmt>(&stmt)) {
            return run_meta(session, meta->command, out);
        }
        ctdb::ExecResult result = ctdb::execute(session.db, stmt);
        if (const auto* table = std::get_if<ctdb::ResultTable>(&result)) {
            out << (session.csv ? ctdb::render::table_csv(table->table, session.db)
                                : ctdb::render::table_text(table->table, session.db));
        } else if (const auto* b = std::get_if<ctdb::BoolResult>(&result)) {
            out << (b->value ? "true" : "false") << "\n";
        } else if (!session.csv) {
            out << std::get<ctdb::Ack>(result).message << "\n";
        }
        if (session.timing) {
            auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                start)
                          .count();
            char buf[64];
            std::snprintf(buf, sizeof(buf), "Time: %.3f ms", ms);
            out << buf << "\n";
        }
        return true;
    } catch (const ctdb::Error& e) {
        out << "error: " << e.what() << "\n";
        return false;
    }
}

// Cuts the first statement ending in ';' outside string literals.
std::size_t find_statement_end(const std::string& buffer) {
    bool in_string = false;
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        if (buffer[i] == '\'') in_string = !in_string;
        else if (buffer[i] == ';' && !in_string) return i;
    }
    return std::string::npos;
}

int run_stream(Session& session, std::istream& in, const Options& opts, bool interactive) {
    std::string buffer;
    std::string line;
    bool failed = false;
    auto prompt = [&]() {
        if (interactive) {
            std::cout << (trim(buffer).empty() ? "ctdb> " : "  ... ") << std::flush;
        }
    };
    prompt();
    while (!session.done && std::getline(in, line)) {
        if (trim(buffer).empty()) {
            std::string t = trim(line);
            if (!t.empty() && t.front() == '\\') {
                if (!run_meta(session, t.substr(1), std::cout)) {
                    failed = true;
                    if (opts.stop_on_error) return 1;
                }
                prompt();
                continue;
            }
        }
        buffer += line;
        buffer += '\n';
        std::size_t end;
        while ((end = find_statement_end(buffer)) != std::string::npos) {
            std::string stmt_text = buffer.substr(0, end);
            buffer.erase(0, end + 1);
            if (trim(stmt_text).empty()) continue;
            if (!run_statement(session, stmt_text, std::cout)) {
                failed = true;
                if (opts.stop_on_error) return 1;
            }
            if (session.done) break;
        }
        prompt();
    }
    if (!session.done && !trim(buffer).empty()) {
        if (!run_statement(session, buffer, std::cout)) failed = true;
    }
    return (failed && opts.stop_on_error) ? 1 : 0;
}

int run_bench_command(const std::vector<std::uint64_t>& sizes, double noise, std::uint64_t seed,
                      int reps, std::uint32_t value_max, const std::string& out_path) {
    ctdb::benchgen::NoiseSpec shape;
    shape.cols = static_cast<std::uint32_t>(ctdb::benchgen::census_columns().size());
    shape.noise_pct = noise;
    shape.seed = seed;
    shape.value_max = value_max;
    ctdb::benchgen::BenchReport report = ctdb::benchgen::run_bench(
        shape, ctdb::benchgen::census_queries(), sizes, reps);
    std::string csv = ctdb::benchgen::to_csv(report);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot open " << out_path << " for writing\n";
            return 1;
        }
        out << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditional-table database console"};
    Options opts;
    app.add_option("--db", opts.db_path, "database file to open on start");
    app.add_option("--batch", opts.batch_path, "execute a script instead of the console");
    app.add_option("--format", opts.format, "result format")
        ->check(CLI::IsMember({"table", "csv"}));
    app.add_flag("--stop-on-error", opts.stop_on_error, "abort the script on the first error");
    app.add_flag("--timing", opts.timing, "print per-statement wall time");

    std::vector<std::uint64_t> bench_sizes{10000, 100000};
    double bench_noise = 10.0;
    std::uint64_t bench_seed = 42;
    int bench_reps = 3;
    std::uint32_t bench_value_max = 16;
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "generate census-style data and time queries");
    bench->add_option("--rows", bench_sizes, "table sizes to test");
    bench->add_option("--noise", bench_noise, "noise ratio in percent");
    bench->add_option("--seed", bench_seed, "generator seed");
    bench->add_option("--reps", bench_reps, "repetitions per query (median reported)");
    bench->add_option("--value-max", bench_value_max, "constants drawn from [1, value-max]");
    bench->add_option("--out", bench_out, "write the CSV report to a file");

    CLI11_PARSE(app, argc, argv);

    if (*bench) {
        try {
            return run_bench_command(bench_sizes, bench_noise, bench_seed, bench_reps,
                                     bench_value_max, bench_out);
        } catch (const ctdb::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    Session session;
    session.timing = opts.timing;
    session.csv = opts.format == "csv";
    if (!opts.db_path.empty()) {
        try {
            session.db = ctdb::storage::load_db_file(opts.db_path);
        } catch (const ctdb::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (!opts.batch_path.empty()) {
        std::ifstream in(opts.batch_path);
        if (!in) {
            std::cerr << "error: cannot open " << opts.batch_path << "\n";
            return 1;
        }
        return run_stream(session, in, opts, false);
    }
    return run_stream(session, std::cin, opts, CTDB_ISATTY);
}
