#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pcd/models.hpp"
#include "pcd/multi_interval.hpp"
#include "pcd/params.hpp"

namespace pcd {

// One Monte Carlo experiment. Models ride in shared pointers so configs copy
// freely; a null x_model means uniform(0, 1). Y points come from y_model when
// set, otherwise they sit pinned at fixed_y; with both unset the experiment
// runs on the unit cell alone (the single-interval law, m = 2 boundary
// points in the paper's counting).
//
// Replicate index k always draws from SplitMix64 stream (seed, k), so the
// estimate is a pure function of (seed, config) no matter how the replicates
// are chunked across workers.
struct McConfig {
    long replicates = 0;
    std::uint64_t seed = 0;
    int n = 0;
    int m = 2;
    Params params;
    std::shared_ptr<const DistributionModel> x_model;
    std::shared_ptr<const DistributionModel> y_model;
    std::vector<double> fixed_y;
    int parallel_chunks = 0;  // 0 = one chunk per worker thread
};

struct McEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/R)
    long replicates = 0;
};

// Fraction of replicates whose single-cell domination number is 2: n draws
// from x_model on its support, gamma from the exact cell solver. Requires
// m == 2 (the cell's two boundary points) and replicates >= 1 -> BadConfig.
McEstimate mc_estimate_p(const McConfig& config);

// Empirical law of gamma_{n,m}: per replicate, m Y points (sampled or
// pinned) split the support and n X points are scored by the exact solver.
// The result carries observed atoms only, normalized by the replicate count.
GammaPmf mc_gamma_pmf(const McConfig& config);

// Worker threads: CDL_THREADS when set (must parse to 1..256 -> BadConfig
// otherwise), else the hardware concurrency.
int mc_worker_count();

// One verification point: closed-form/quadrature references against MC.
// For the uniform model `exact` is the closed form and `numeric` the
// quadrature of the same probability; other models carry the quadrature
// value in both columns. pass <=> |z| <= threshold.
struct VerificationRow {
    std::string model;
    int n = 0;
    Params params;
    double exact = 0.0;
    double numeric = 0.0;
    double mc = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    bool pass = true;
};

struct VerificationReport {
    std::vector<VerificationRow> rows;
    double max_abs_z = 0.0;
    int failures = 0;
    double z_threshold = 3.0;
};

// Cartesian grid of single-interval verification points.
struct GridSpec {
    std::vector<std::string> models{"uniform"};  // names load_model understands
    std::vector<int> n_values{2, 3, 5, 8};
    std::vector<double> r_values{1.5, 2.0};
    std::vector<double> c_values{0.3, 0.5};
    long replicates = 200000;
    std::uint64_t seed = 0x7665726966790a01ULL;
    double z_threshold = 3.0;
};

VerificationReport verify_grid(const GridSpec& grid);

}  // namespace pcd
