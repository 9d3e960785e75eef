#pragma once

#include "pcd/models.hpp"
#include "pcd/params.hpp"

namespace pcd {

enum class GammaLaw {
    point_mass_1,       // gamma -> 1 in probability
    point_mass_2,       // gamma -> 2 in probability
    one_plus_bernoulli, // gamma -> 1 + Ber(limit_p)
};

const char* gamma_law_name(GammaLaw law);

// Limit of gamma_{n,2} as n -> infinity. `order_k` / `order_ell` hold the
// detected derivative orders at the left/right critical pairs (-1 when the
// operation does not detect on that side); `delta_limit` marks values
// obtained through the unbounded-density delta sequence. The rate fields are
// populated by rate_constants() only.
struct AsymptoticResult {
    double limit_p = 0.0;
    bool degenerate = true;  // limit_p in {0, 1}
    GammaLaw law = GammaLaw::point_mass_1;
    int order_k = -1;
    int order_ell = -1;
    bool delta_limit = false;

    bool has_rate = false;
    double rate_exponent = 0.0;  // (order+2)/(order+1), in (1, 2]
    double rate_constant = 0.0;  // kappa_1 or kappa_2 at the reference n
    double comp1 = 0.0, comp2 = 0.0, comp3 = 0.0;  // s1,s2,s3 or q1,q2,q3
};

// Uniform trichotomy in tau = max(c, 1-c): r = 1/tau gives 1 + Ber(r/(r+1)),
// r > 1/tau collapses to 1, r < 1/tau collapses to 2. The lone exception is
// (r, c) = (2, 1/2), where the limit is 1 + Ber(4/9) even though the
// along-the-boundary limit of r/(r+1) would be 2/3. c in {0, 1} gives the
// finite-sample constant gamma = 1.
AsymptoticResult asymptotic_uniform(const Params& params);

// Limit at the left critical value c = (r-1)/r for r in (1, 2): detects the
// smallest k with a nonvanishing derivative pair at y1+ and
// (y1 + (r-1)(y2-y1)/r)+ and returns f^(k)(y1+) / (f^(k)(y1+) +
// r^-(k+1) f^(k)(M+)). Densities unbounded at either point go through the
// delta-sequence limit. Errors: BadParameter for r outside (1, 2);
// OrderDetectionFailed when no pair qualifies up to order 4.
AsymptoticResult asymptotic_general_left(const DistributionModel& model, double r);

// Mirror limit at c = 1/r using left derivatives at y2 and y1+(y2-y1)/r.
AsymptoticResult asymptotic_general_right(const DistributionModel& model, double r);

// The (r, c) = (2, 1/2) limit for models whose support reaches both ends and
// the midpoint: the product of the left ratio (order k, base 2^-(k+1)) and
// the right ratio (order ell, base 2^-(ell+1)).
AsymptoticResult asymptotic_cccd(const DistributionModel& model);

// Rate-of-convergence fields for the side's critical limit: exponent
// (k+2)/(k+1) and the kappa constant assembled from the printed component
// triplet (s1, s2, s3 on the left; q1, q2, q3 with alternating signs on the
// right), evaluated at reference sample size n. Errors: OrderDetectionFailed
// when the order-(k+1) derivative is unavailable, when the limit came from
// the delta path, or when the limit is degenerate (the kappa display divides
// by p).
AsymptoticResult rate_constants(const DistributionModel& model, double r, Side side,
                                int n = 1);

} // namespace pcd
