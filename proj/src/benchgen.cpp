#include "ctdb/benchgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ctdb {
namespace benchgen {

namespace {

constexpr std::uint32_t kMaxVarId = 0x7FFFFFFF;

std::vector<std::string> default_columns(std::uint32_t cols) {
    std::vector<std::string> out;
    out.reserve(cols);
    for (std::uint32_t i = 1; i <= cols; ++i) out.push_back("C" + std::to_string(i));
    return out;
}

} // namespace

GenResult gen_census(const NoiseSpec& spec, const std::string& table_name,
                     std::vector<std::string> columns, std::uint32_t first_var_id) {
    if (spec.rows == 0 || spec.cols == 0) {
        throw InvalidValueError("census spec needs rows >= 1 and cols >= 1");
    }
    if (spec.noise_pct < 0.0 || spec.noise_pct > 100.0) {
        throw InvalidValueError("noise ratio must be within [0, 100]");
    }
    if (spec.domain_min < 2 || spec.domain_max < spec.domain_min) {
        throw InvalidValueError("domain size range must satisfy 2 <= min <= max");
    }
    if (spec.value_max < spec.domain_max) {
        throw InvalidValueError("value_max must be >= the largest domain size");
    }
    if (columns.empty()) columns = default_columns(spec.cols);
    if (columns.size() != spec.cols) {
        throw SchemaMismatchError("expected " + std::to_string(spec.cols) + " column names");
    }

    const std::uint64_t total_cells = spec.rows * spec.cols;
    const std::uint64_t noisy_cells =
        static_cast<std::uint64_t>(std::llround(spec.noise_pct * static_cast<double>(total_cells) / 100.0));
    if (noisy_cells > kMaxVarId - first_var_id) {
        throw CapacityError("fresh variable count would overflow the id space");
    }

    SplitMix64 rng(spec.seed);
    GenResult out;
    out.table.schema = Schema{table_name, std::move(columns)};
    validate_schema(out.table.schema);
    out.table.rows.reserve(spec.rows);
    for (std::uint64_t r = 0; r < spec.rows; ++r) {
        CTuple row;
        row.terms.reserve(spec.cols);
        for (std::uint32_t c = 0; c < spec.cols; ++c) {
            row.terms.push_back(
                Term::constant(static_cast<std::uint32_t>(rng.below(spec.value_max)) + 1));
        }
        row.local = Condition::always();
        out.table.rows.push_back(std::move(row));
    }

    // Pick the noisy cells without replacement: a partial Fisher-Yates over
    // the flat cell index space, first noisy_cells positions.
    std::vector<std::uint64_t> cells(total_cells);
    std::iota(cells.begin(), cells.end(), 0);
    std::uint32_t var = first_var_id;
    const std::uint32_t domain_span = spec.domain_max - spec.domain_min + 1;
    for (std::uint64_t k = 0; k < noisy_cells; ++k) {
        std::uint64_t j = k + rng.below(total_cells - k);
        std::swap(cells[k], cells[j]);
        std::uint64_t cell = cells[k];
        out.table.rows[cell / spec.cols].terms[cell % spec.cols] = Term::variable(var);
        std::uint32_t size = spec.domain_min + static_cast<std::uint32_t>(rng.below(domain_span));
        std::vector<std::uint32_t> domain;
        domain.reserve(size);
        while (domain.size() < size) {
            std::uint32_t value = static_cast<std::uint32_t>(rng.below(spec.value_max)) + 1;
            if (std::find(domain.begin(), domain.end(), value) == domain.end()) {
                domain.push_back(value);
            }
        }
        out.variables.declare(var, std::move(domain));
        ++var;
    }
    out.variable_cells = noisy_cells;
    return out;
}

void install(Database& db, GenResult&& gen) {
    for (std::uint32_t id : gen.variables.sorted_ids()) {
        db.global().declare(id, *gen.variables.domain_of(id));
    }
    CTable& stored = db.create_table(gen.table.schema);
    stored.rows = std::move(gen.table.rows);
}

const std::vector<BenchQuery>& census_queries() {
    static const std::vector<BenchQuery> queries = {
        {"Q1", "SELECT * FROM R WHERE VETSTAT = 8 AND CITIZEN = 9"},
        {"Q2", "SELECT STATEFIP, OCC1990, CITIZEN, SUBFAM FROM R "
               "WHERE STATEFIP = OCC1990 AND CITIZEN = 1 AND SUBFAM > 4"},
    };
    return queries;
}

const std::vector<std::string>& census_columns() {
    static const std::vector<std::string> columns = {"STATEFIP", "OCC1990", "CITIZEN", "SUBFAM",
                                                     "VETSTAT"};
    return columns;
}

BenchReport run_bench(const NoiseSpec& shape, std::span<const BenchQuery> queries,
                      std::span<const std::uint64_t> sizes, int repetitions) {
    if (repetitions < 1) throw InvalidValueError("repetitions must be >= 1");
    BenchReport report;
    for (std::uint64_t size : sizes) {
        NoiseSpec spec = shape;
        spec.rows = size;
        Database db;
        install(db, gen_census(spec, "R", census_columns()));
        for (const auto& query : queries) {
            csql::Statement stmt = csql::parse(query.text);
            std::vector<double> times_ms;
            times_ms.reserve(static_cast<std::size_t>(repetitions));
            std::uint64_t output_rows = 0;
            std::uint64_t pruned_rows = 0;
            for (int rep = 0; rep < repetitions; ++rep) {
                QueryStats stats;
                auto start = std::chrono::steady_clock::now();
                ExecResult result = execute(db, stmt, &stats);
                auto stop = std::chrono::steady_clock::now();
                times_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
                output_rows = std::get<ResultTable>(result).table.rows.size();
                pruned_rows = stats.pruned_rows;
            }
            std::sort(times_ms.begin(), times_ms.end());
            std::size_t n = times_ms.size();
            double median = (n % 2 == 1) ? times_ms[n / 2]
                                         : (times_ms[n / 2 - 1] + times_ms[n / 2]) / 2.0;
            report.rows.push_back(BenchRow{query.id, size, spec.noise_pct, median, output_rows,
                                           pruned_rows});
        }
    }
    return report;
}

std::string to_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "query_id,rows,noise_pct,median_ms,output_rows,pruned_rows\n";
    for (const auto& row : report.rows) {
        out << row.query_id << ',' << row.rows << ',' << row.noise_pct << ',' << row.median_ms
            << ',' << row.output_rows << ',' << row.pruned_rows << '\n';
    }
    return out.str();
}

} // namespace benchgen
} // namespace ctdb
