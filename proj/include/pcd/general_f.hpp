#pragma once

#include <algorithm>

#include "pcd/models.hpp"
#include "pcd/params.hpp"
#include "pcd/quad.hpp"

namespace pcd {

// Gamma_1 endpoint geometry on the unit reference interval, bundled with the
// evaluation inputs. The region is (X_(n)/r, M] u [M, (X_(1)+r-1)/r) with
// M = c; a piece collapses onto M when its endpoint crosses M, so delta1 and
// delta2 always satisfy delta1 <= delta2 and the region is empty exactly when
// they coincide.
struct IntegrandContext {
    const DistributionModel& model;
    Params params;
    int n;

    double delta1(double xn) const {
        if (params.r_is_infinite()) return 0.0;
        return std::min(xn / params.r, params.c);
    }
    double delta2(double x1) const {
        if (params.r_is_infinite()) return 1.0;
        return std::max((x1 + params.r - 1.0) / params.r, params.c);
    }
    bool gamma1_empty(double x1, double xn) const { return !(delta1(xn) < delta2(x1)); }
};

struct GammaMoments {
    double mean = 1.0;
    double variance = 0.0;
};

// P(gamma = 2) for n points drawn from `model` on the unit reference
// interval, by quadrature of the joint min/max density over the four
// Gamma_1 shape regions. Requires n >= 2 (BadSampleSize) and model support
// inside [0, 1] (UnsupportedSupport). The integration runs on the
// probability scale u = F(x), which keeps the integrand bounded even for
// models with pole densities (arcsine); see notes in the implementation.
double p_numeric_general(const DistributionModel& model, const Params& params, int n,
                         const QuadratureSpec& spec = {});

// gamma_{n,2} ~ 1 + Bernoulli(p): mean 1 + p, variance p(1 - p).
GammaMoments mean_variance_from_p(double p);

// Moments with p = p_numeric_general(model, params, n); errors propagate.
GammaMoments mean_variance_gamma(const DistributionModel& model, const Params& params, int n,
                                 const QuadratureSpec& spec = {});

} // namespace pcd
