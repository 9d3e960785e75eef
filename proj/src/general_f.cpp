#include "pcd/general_f.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "pcd/error.hpp"
#include "pcd/exact_uniform.hpp"

namespace pcd {

namespace {

// base^m for base in [0, 1]. Exact binary powering for small exponents; the
// log1p/exp composition takes over for large m, where it keeps full relative
// accuracy near base = 1 (the regime that dominates the integrals).
double powm(double base, long long m) {
    if (m <= 0) return 1.0;
    if (base <= 0.0) return 0.0;
    if (m < 48) return ipow(base, m);
    return std::exp(static_cast<double>(m) * std::log1p(base - 1.0));
}

// One Gamma_1 shape region of the (x1, xn) integration domain. The bracket
// (the F-measure of (x1, xn) \ Gamma_1) is F(xn) + [F(xn/r) if scaled] +
// k(x1); regions whose bracket has no F(xn/r) term admit an analytic inner
// integral since d/dxn [ (F(xn)+k)^{n-1} ] = (n-1) f(xn) (F(xn)+k)^{n-2}.
struct FRegion {
    double x1_lo, x1_hi;
    bool scaled;
    std::function<double(double)> k_of;
    std::function<double(double)> xn_lo;
    std::function<double(double)> xn_hi;
    std::vector<double> breaks;  // x1 values where the xn bounds switch branch
};

// Everything the per-region quadrature needs about the model, fixed once per
// call. Bounded densities integrate in x directly (density zeros stay
// harmless polynomial factors); a density with a pole at a support endpoint
// flips to the probability scale u = F(x), where the substitution cancels
// the f(x1) f(xn) factors against the Jacobians and the integrand is bounded.
// The seam list splits panels wherever f is only piecewise-smooth.
struct ModelFacts {
    const DistributionModel& model;
    Interval sup;
    bool prob_scale;
    std::vector<double> seams;
};

double integrate_region(const ModelFacts& mf, double r, int n, const FRegion& reg,
                        const QuadratureSpec& outer_spec, const QuadratureSpec& inner_spec) {
    const DistributionModel& model = mf.model;
    const double lo = std::max(reg.x1_lo, mf.sup.lo);
    const double hi = std::min(reg.x1_hi, mf.sup.hi);
    if (!(lo < hi)) return 0.0;

    // Outer split points: branch switches of the xn bounds, density seams,
    // and the x1 pullbacks of each seam through b(x1) = (x1 + r - 1)/r and
    // r*x1 (both feed the inner bounds and the k_of kernel).
    std::vector<double> xcuts{lo, hi};
    auto push = [&](double x) {
        if (x > lo && x < hi) xcuts.push_back(x);
    };
    for (double b : reg.breaks) push(b);
    for (double s : mf.seams) {
        push(s);
        push(r * s - r + 1.0);
        push(s / r);
    }
    std::sort(xcuts.begin(), xcuts.end());

    const double nn = n;
    auto outer = [&](double t1) {
        const double x1 = mf.prob_scale ? model.quantile(t1) : t1;
        const double w1 = mf.prob_scale ? 1.0 : model.pdf(x1);
        if (w1 == 0.0) return 0.0;
        const double xlo = std::max(reg.xn_lo(x1), mf.sup.lo);
        const double xhi = std::min(reg.xn_hi(x1), mf.sup.hi);
        if (!(xlo < xhi)) return 0.0;
        const double k = reg.k_of(x1);
        if (!reg.scaled) {
            const double bhi = std::max(model.cdf(xhi) + k, 0.0);
            const double blo = std::max(model.cdf(xlo) + k, 0.0);
            return nn * w1 * (powm(bhi, n - 1) - powm(blo, n - 1));
        }
        // Inner split points: seams crossed by xn itself and by xn/r.
        std::vector<double> icuts{xlo, xhi};
        for (double s : mf.seams) {
            if (s > xlo && s < xhi) icuts.push_back(s);
            if (r * s > xlo && r * s < xhi) icuts.push_back(r * s);
        }
        std::sort(icuts.begin(), icuts.end());

        auto inner = [&](double v) {
            const double xn = mf.prob_scale ? model.quantile(v) : v;
            const double wn = mf.prob_scale ? 1.0 : model.pdf(xn);
            if (wn == 0.0) return 0.0;
            const double Fxn = mf.prob_scale ? v : model.cdf(xn);
            const double bracket = Fxn + model.cdf(xn / r) + k;
            return wn * powm(std::max(bracket, 0.0), n - 2);
        };
        double iv = 0.0;
        for (std::size_t i = 0; i + 1 < icuts.size(); ++i) {
            const double va = mf.prob_scale ? model.cdf(icuts[i]) : icuts[i];
            const double vb = mf.prob_scale ? model.cdf(icuts[i + 1]) : icuts[i + 1];
            if (!(vb - va > 1e-300)) continue;
            iv += integrate(inner, va, vb, inner_spec);
        }
        return nn * (nn - 1.0) * w1 * iv;
    };

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xcuts.size(); ++i) {
        const double ta = mf.prob_scale ? model.cdf(xcuts[i]) : xcuts[i];
        const double tb = mf.prob_scale ? model.cdf(xcuts[i + 1]) : xcuts[i + 1];
        if (!(tb - ta > 1e-300)) continue;
        total += integrate(outer, ta, tb, outer_spec);
    }
    return total;
}

// The left-piece-only region, integrated with xn outermost. Its bracket
// F(xn) - F(x1) - F(c) + F(xn/r) involves x1 only through F(x1), so the x1
// integral collapses: int_0^h f(x1) (K - F(x1))^{n-2} dx1 =
// [K^{n-1} - (K - F(h))^{n-1}] / (n - 1) with K = F(xn) + F(xn/r) - F(c).
// Keeping the numeric dimension single matters at the right critical value
// c = 1/r, where this region owns the O(1/n) corner layer at
// (x1, xn) -> (0, 1): a nested numeric inner stalls the outer refinement on
// its noise floor once n reaches the thousands, while the 1-D form is a
// plain boundary-layer integral.
double integrate_case2(const ModelFacts& mf, double r, int n, double c, double u0,
                       const QuadratureSpec& spec) {
    const DistributionModel& model = mf.model;
    const double m1 = std::min(u0, c);  // x1 stays below both u0 and c
    if (!(m1 > 0.0)) return 0.0;
    const double lo = std::max(c, mf.sup.lo);
    const double hi = std::min(std::min(c * r, 1.0), mf.sup.hi);
    if (!(lo < hi)) return 0.0;
    const double Fc = model.cdf(c);

    std::vector<double> xcuts{lo, hi};
    auto push = [&](double x) {
        if (x > lo && x < hi) xcuts.push_back(x);
    };
    push(r * m1);         // the x1 range stops growing with xn here
    push(r * mf.sup.lo);  // F(xn/r) leaves its flat piece
    push(r * mf.sup.hi);
    for (double s : mf.seams) {
        push(s);
        push(r * s);
    }
    std::sort(xcuts.begin(), xcuts.end());

    const double nn = n;
    auto outer = [&](double t) {
        const double xn = mf.prob_scale ? model.quantile(t) : t;
        const double wn = mf.prob_scale ? 1.0 : model.pdf(xn);
        if (wn == 0.0) return 0.0;
        const double K = (mf.prob_scale ? t : model.cdf(xn)) + model.cdf(xn / r) - Fc;
        const double h = std::min(m1, xn / r);
        const double inner = powm(std::max(K, 0.0), n - 1) -
                             powm(std::max(K - model.cdf(h), 0.0), n - 1);
        return nn * wn * inner;
    };

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xcuts.size(); ++i) {
        const double ta = mf.prob_scale ? model.cdf(xcuts[i]) : xcuts[i];
        const double tb = mf.prob_scale ? model.cdf(xcuts[i + 1]) : xcuts[i + 1];
        if (!(tb - ta > 1e-300)) continue;
        total += integrate(outer, ta, tb, spec);
    }
    return total;
}

} // namespace

double p_numeric_general(const DistributionModel& model, const Params& params, int n,
                         const QuadratureSpec& spec) {
    if (n < 2) fail(ErrorCode::BadSampleSize, "the two-endpoint density needs n >= 2");
    const Interval sup = model.support();
    if (sup.lo < 0.0 || sup.hi > 1.0)
        fail(ErrorCode::UnsupportedSupport,
             "model support must sit inside the unit reference interval; got " +
                 model.name());

    const double c = params.c;
    if (params.r_is_infinite() || c == 0.0 || c == 1.0) return 0.0;
    const double r = params.r;
    const double u0 = r * c - r + 1;          // x1 above u0 <=> right piece nonempty
    const double x1star = c * r * r - r + 1;  // where b(x1) crosses c*r
    const double s = 1 / (r + 1);             // where b(x1) crosses r*x1
    auto b_of = [r](double x1) { return (x1 + r - 1) / r; };
    const double Fc = model.cdf(c);
    auto F = [&model](double x) { return model.cdf(x); };

    const ModelFacts mf{model, sup,
                        model.one_sided_derivative(0, sup.lo, Side::right).unbounded ||
                            model.one_sided_derivative(0, sup.hi, Side::left).unbounded,
                        model.seams()};

    // The inner quadrature runs two digits tighter than the outer one so its
    // residual error reads as smooth to the outer refinement loop.
    QuadratureSpec inner_spec = spec;
    inner_spec.rel_tol *= 1e-2;
    inner_spec.abs_tol *= 1e-2;

    double total = 0.0;

    // Both pieces nonempty, Gamma_1 = (xn/r, b(x1)) inside (x1, xn):
    // bracket = F(xn) - F(x1) - F(b(x1)) + F(xn/r).
    total += integrate_region(
        mf, r, n,
        {std::max(0.0, u0), c, true, [&](double x1) { return -(F(x1) + F(b_of(x1))); },
         [&](double x1) { return std::max(b_of(x1), r * x1); },
         [&](double) { return std::min(c * r, 1.0); },
         {x1star, s, 1 / r}},
        spec, inner_spec);

    // Left piece only, Gamma_1 = (xn/r, c]: bracket = F(xn) - F(x1) - F(c) + F(xn/r);
    // x1 in (0, min(u0, c)), xn in [max(c, r x1), min(cr, 1)).
    total += integrate_case2(mf, r, n, c, u0, spec);

    // Right piece only, Gamma_1 = [c, b(x1)): bracket = F(xn) - F(x1) - F(b(x1)) + F(c).
    total += integrate_region(
        mf, r, n,
        {std::max(0.0, u0), c, false, [&](double x1) { return Fc - (F(x1) + F(b_of(x1))); },
         [&](double x1) { return std::max(c * r, b_of(x1)); }, [](double) { return 1.0; },
         {x1star}},
        spec, inner_spec);

    // Gamma_1 empty (gamma = 2 outright): bracket = F(xn) - F(x1).
    total += integrate_region(mf, r, n,
                              {0.0, std::min(u0, c), false,
                               [&](double x1) { return -F(x1); },
                               [&](double) { return c * r; }, [](double) { return 1.0; },
                               {}},
                              spec, inner_spec);

    return std::clamp(total, 0.0, 1.0);
}

GammaMoments mean_variance_from_p(double p) { return {1.0 + p, p * (1.0 - p)}; }

GammaMoments mean_variance_gamma(const DistributionModel& model, const Params& params, int n,
                                 const QuadratureSpec& spec) {
    return mean_variance_from_p(p_numeric_general(model, params, n, spec));
}

} // namespace pcd
