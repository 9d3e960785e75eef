#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pcd/mc.hpp"
#include "pcd/models.hpp"
#include "pcd/multi_interval.hpp"

namespace pcd {

// Decimal with 17 significant digits: enough for exact double round-trips,
// and stable across runs so report diffs mean something.
std::string fmt17(double v);

// Point file: one coordinate per line (blank lines and '#' comments are
// skipped), or a JSON array of numbers when the first non-space byte is '['.
// Errors: BadConfig for an unreadable file or a non-numeric token.
std::vector<double> read_points(const std::string& path);

// Model lookup shared by the CLI and verify_grid. Accepts "uniform",
// "uniform(a,b)", any named example ("linear-b", "abs-sine-c", "arcsine-f",
// "sine-d(r)", "beta(v1,v2)"), or a path to a JSON descriptor
//   {"name": "piecewise-poly", "breaks": [...], "pieces": [[...], ...]}
// (the other names work in JSON form too). Errors: BadConfig.
std::shared_ptr<const DistributionModel> load_model(const std::string& spec);

// Simulation job: the experiment plus which estimator to run.
struct SimulateJob {
    McConfig config;
    bool estimate_p = false;  // true for {"estimator": "p"}, else gamma pmf
};

// JSON schema (all keys optional unless noted): replicates* (int), seed
// (int), n* (int), m (int), r* (number or "inf"), c* (number), x_model /
// y_model (model spec strings), fixed_y (array), parallel_chunks (int),
// estimator ("p" | "pmf"). Unknown keys are rejected. Errors: BadConfig.
SimulateJob load_mc_config(const std::string& path);

// GridSpec from JSON: models, n, r, c (arrays), replicates, seed,
// z_threshold. Missing keys keep the defaults from mc.hpp; unknown keys are
// rejected. Errors: BadConfig.
GridSpec load_grid_spec(const std::string& path);

// CSV emitters. Byte-identical output for identical inputs.
void write_pmf_csv(const GammaPmf& pmf, std::ostream& os);
void write_verification_csv(const VerificationReport& report, std::ostream& os);

}  // namespace pcd
