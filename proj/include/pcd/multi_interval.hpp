#pragma once

#include <functional>
#include <vector>

#include "pcd/asymptotic.hpp"
#include "pcd/models.hpp"
#include "pcd/params.hpp"
#include "pcd/quad.hpp"

namespace pcd {

// Enumerator for the composition space Theta^S_{a,b}: b-tuples with entries
// in {0, ..., max_element} summing to a. Enumeration is lexicographic and
// count() is computed by an independent recursion so callers can cross-check
// the visit count against it.
class CompositionSpace {
  public:
    CompositionSpace(int total, int parts, int max_element);

    // Calls fn once per tuple; the referenced vector is reused across calls.
    void for_each(const std::function<void(const std::vector<int>&)>& fn) const;
    long long count() const;

    int total() const { return total_; }
    int parts() const { return parts_; }
    int max_element() const { return max_element_; }

  private:
    int total_;
    int parts_;
    int max_element_;
};

// Distribution of the domination number for n X-points against m Y-points.
// Support lists only the atoms with positive mass, in increasing order.
struct GammaPmf {
    std::vector<int> support;
    std::vector<double> probability;
    int n = 0;
    int m = 0;
    Params params;

    double mean() const;
    double prob_of(int q) const;  // 0 when q carries no mass
};

// Exact pmf when both samples are uniform on the same interval. The m Y-order
// statistics cut the interval into m + 1 cells; every X-count vector over the
// cells is equally likely (weight n!m!/(n+m)!), end cells contribute 1 when
// occupied, and each interior cell with k >= 1 points contributes 1 plus a
// Bernoulli(p_k) from the single-interval law. Enumeration cost grows like
// C(n + m, m); n + m > 24 raises EnumerationTooLarge.
GammaPmf pmf_uniform_multi(int n, int m, const Params& params);

// Pmf with the Y-points pinned at fixed positions strictly inside the X
// support. Cell masses come from the X cdf; interior cells rescale onto the
// unit interval, where uniform X keeps the closed-form single-interval law
// and any other model goes through the quadrature path.
GammaPmf pmf_fixed_y(const DistributionModel& x_model, std::vector<double> y_points, int n,
                     const Params& params, const QuadratureSpec& spec = {});

// Pmf with both samples random: X from x_model, Y from y_model, on a common
// support. For m <= 3 the ordered Y-vector is integrated out by nested
// quadrature; beyond that the Y-average is a fixed-seed Monte Carlo over
// Y-draws with the conditional pmf still exact. The n + m <= 24 cap applies
// throughout.
GammaPmf pmf_general_multi(const DistributionModel& x_model, const DistributionModel& y_model,
                           int n, int m, const Params& params, const QuadratureSpec& spec = {});

// E[gamma_{n,m}] for the uniform/uniform case, by the occupancy identity
//   2n/(n+m) + sum_{interior cells} sum_k P(N = k) (1 + p_k),
// with P(N = k) = C(n-k+m-1, m-1) / C(n+m, m). This is a different route
// than pmf_uniform_multi and is used to cross-check its mean.
double expected_gamma_uniform(int n, int m, const Params& params);

// Same identity with Y pinned: end terms are occupancy probabilities of the
// outer cells, interior counts are Binomial(n, cell mass).
double expected_gamma_fixed_y(const DistributionModel& x_model, std::vector<double> y_points,
                              int n, const Params& params, const QuadratureSpec& spec = {});

// Limit law of gamma_{n,m} as n -> infinity with m fixed, for X drawn from
// `model` conditionally on each cell. With tau = max(c, 1-c):
//   r > 1/tau          point mass at m + 1
//   r < 1/tau          point mass at 2m
//   r = 1/tau          (m + 1) + Binomial(m - 1, p), p the interior-cell
//                      critical limit (4/9 for uniform cells at r = 2).
// Only the m - 1 interior cells can keep a second dominator in the limit;
// the end cells always settle at one.
enum class MultiLawKind { point_mass, shifted_binomial };

struct MultiAsymptoticResult {
    MultiLawKind kind = MultiLawKind::point_mass;
    int point = 0;   // location when kind == point_mass
    int base = 0;    // gamma -> base + Binomial(trials, p) otherwise
    int trials = 0;
    double p = 0.0;
};

MultiAsymptoticResult asymptotic_multi(int m, const Params& params,
                                       const DistributionModel& model);

// Opposite regime: n fixed, m -> infinity. Every X-point eventually sits in
// its own cell, so gamma converges to n.
int gamma_limit_fixed_n(int n);

}  // namespace pcd
