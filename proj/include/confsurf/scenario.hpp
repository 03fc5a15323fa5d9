#ifndef CONFSURF_SCENARIO_HPP
#define CONFSURF_SCENARIO_HPP

// Scenario runner behind the CLI: parses a JSON batch config, validates every
// scenario before any numerical work, runs them into scenario-scoped output
// directories and writes a manifest with content hashes. Outputs are
// deterministic: identical config and build give byte-identical data files
// (the manifest carries the only timestamp).

#include <filesystem>
#include <string>
#include <vector>

#include "confsurf/io.hpp"
#include "confsurf/ratfn.hpp"

namespace confsurf {
namespace scenario {

const std::vector<std::string>& kinds();

// Runs the whole batch; throws ConfigError before any computation when a
// scenario fails validation. Numerical failures mark the scenario as failed
// in the manifest and are rethrown after the manifest is written.
void run_batch(const io::json& config, const std::filesystem::path& base_dir);

// Pass/fail table assembled from the manifest and the per-scenario reports.
std::string report_text(const std::filesystem::path& manifest_path);

// Rational-oracle comparison battery shared by the oracle_test kind and the
// acceptance suite: spectral P^-, Hilbert transform and derivative against
// the exact periodized rational forms, interior grid points.
struct OracleRow {
    std::string fn;
    double err_pminus;
    double err_hilbert;
    double err_deriv;
};
std::vector<RationalFn> oracle_battery();
std::vector<OracleRow> oracle_comparison(const Grid& g);

} // namespace scenario
} // namespace confsurf

#endif
