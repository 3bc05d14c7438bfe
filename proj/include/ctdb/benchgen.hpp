#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctdb/engine.hpp"

namespace ctdb {
namespace benchgen {

/// splitmix64. The generator is pinned so that a given seed always yields
/// the same dataset, on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

struct NoiseSpec {
    std::uint64_t rows = 0;
    std::uint32_t cols = 0;
    std::uint32_t value_max = 16;  // constants drawn uniformly from [1, value_max]
    double noise_pct = 0.0;        // percent of cells replaced by variables
    std::uint32_t domain_min = 2;
    std::uint32_t domain_max = 8;
    std::uint64_t seed = 0;
};

struct GenResult {
    CTable table;
    GlobalCondition variables; // domains of the fresh variables only
    std::uint64_t variable_cells = 0;
};

/// Census-style table: uniform constants with exactly
/// round(noise_pct% * rows * cols) distinct cells replaced by fresh
/// variables, each with a domain of k distinct constants, k uniform in
/// [domain_min, domain_max]. Every variable occurs in exactly one cell and
/// all local conditions are TRUE. Fresh ids start at `first_var_id`.
GenResult gen_census(const NoiseSpec& spec, const std::string& table_name,
                     std::vector<std::string> columns = {}, std::uint32_t first_var_id = 1);

/// Installs a generated table (and its variables) into a database.
void install(Database& db, GenResult&& gen);

struct BenchQuery {
    std::string id;
    std::string text;
};

/// The census-shaped workload: Q1 is a constant selection, Q2 mixes a
/// column-column equality with constant predicates and an order atom.
const std::vector<BenchQuery>& census_queries();
/// Column names used by the census queries; gen_census tables meant for
/// them must use this layout.
const std::vector<std::string>& census_columns();

struct BenchRow {
    std::string query_id;
    std::uint64_t rows = 0;
    double noise_pct = 0.0;
    double median_ms = 0.0;
    std::uint64_t output_rows = 0;
    std::uint64_t pruned_rows = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

/// Generates a fresh table named R per size from `shape` (rows overridden)
/// and runs every query `repetitions` times, reporting the median wall
/// time. Queries run sequentially.
BenchReport run_bench(const NoiseSpec& shape, std::span<const BenchQuery> queries,
                      std::span<const std::uint64_t> sizes, int repetitions);

/// CSV with header query_id,rows,noise_pct,median_ms,output_rows,pruned_rows.
std::string to_csv(const BenchReport& report);

} // namespace benchgen
} // namespace ctdb
