#include "pcd/asymptotic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pcd/error.hpp"

namespace pcd {

namespace {

constexpr int kMaxOrder = 4;
constexpr double kZeroTol = 1e-12;
// Relative slack for deciding r == 1/tau; boundary cases in practice are
// constructed from exact reciprocals, anything else lands well clear of it.
constexpr double kBoundaryTol = 1e-12;

[[noreturn]] void fail_detection(const std::string& what) {
    throw Error(ErrorCode::OrderDetectionFailed, what);
}

AsymptoticResult from_p(double p) {
    AsymptoticResult res;
    res.limit_p = p;
    res.degenerate = (p == 0.0 || p == 1.0);
    if (p == 0.0)
        res.law = GammaLaw::point_mass_1;
    else if (p == 1.0)
        res.law = GammaLaw::point_mass_2;
    else
        res.law = GammaLaw::one_plus_bernoulli;
    return res;
}

// Ratio sequence f^(k)(main + d)/(f^(k)(main + d) + r^-(k+1) f^(k)(other + d))
// walked inward along d = 1e-3 .. 1e-8. An unbounded density approaches its
// limit like a fractional power of d, so the raw tail is still a few 1e-4
// away; Aitken extrapolation over the last three terms removes that.
double delta_limit_ratio(const DistributionModel& model, double main_x, Side main_side,
                         double other_x, Side other_side, double r, int k) {
    const double scale = std::pow(r, -(k + 1.0));
    std::array<double, 6> ratio{};
    double delta = 1e-3;
    for (std::size_t i = 0; i < ratio.size(); ++i, delta *= 0.1) {
        const double va = derivative_near(model, k, main_x, main_side, delta).value;
        const double vb = derivative_near(model, k, other_x, other_side, delta).value;
        const double denom = va + scale * vb;
        if (!std::isfinite(denom) || denom == 0.0)
            fail_detection("delta sequence hit a degenerate denominator at order " +
                           std::to_string(k));
        ratio[i] = va / denom;
    }
    const double d_prev = ratio[4] - ratio[3];
    const double d_last = ratio[5] - ratio[4];
    if (!(std::fabs(d_last) < 1e-3) || std::fabs(d_last) > std::fabs(d_prev) + kZeroTol)
        fail_detection("delta sequence is not settling (last step " +
                       std::to_string(d_last) + ")");
    double limit = ratio[5];
    const double curv = d_last - d_prev;
    if (std::fabs(curv) > kZeroTol) limit = ratio[5] - d_last * d_last / curv;
    return std::clamp(limit, 0.0, 1.0);
}

// Smallest order k at which the derivative pair (f^(k) at main, f^(k) at
// other, one-sided) stops being identically zero, and the limit ratio
// f^(k)(main)/(f^(k)(main) + r^-(k+1) f^(k)(other)). A divergent derivative
// reroutes through the delta sequence.
double detect_ratio(const DistributionModel& model, double main_x, Side main_side,
                    double other_x, Side other_side, double r, int& order,
                    bool& used_delta) {
    for (int k = 0; k <= kMaxOrder; ++k) {
        const DerivativeValue da = model.one_sided_derivative(k, main_x, main_side);
        const DerivativeValue db = model.one_sided_derivative(k, other_x, other_side);
        if (da.unbounded || db.unbounded) {
            order = k;
            used_delta = true;
            return delta_limit_ratio(model, main_x, main_side, other_x, other_side, r, k);
        }
        // Snap sub-tolerance values to an exact zero so that e.g. a density
        // whose value at the endpoint is a rounding residue of sin(2*pi)
        // yields a limit of exactly 0 rather than 1e-16.
        const double va = std::fabs(da.value) <= kZeroTol ? 0.0 : da.value;
        const double vb = std::fabs(db.value) <= kZeroTol ? 0.0 : db.value;
        if (va == 0.0 && vb == 0.0) continue;
        const double denom = va + std::pow(r, -(k + 1.0)) * vb;
        if (std::fabs(denom) <= kZeroTol)
            fail_detection("derivative pair cancels exactly at order " + std::to_string(k));
        order = k;
        used_delta = false;
        return std::clamp(va / denom, 0.0, 1.0);
    }
    fail_detection("no nonvanishing derivative pair up to order " +
                   std::to_string(kMaxOrder));
}

double factorial(int m) {
    double out = 1.0;
    for (int i = 2; i <= m; ++i) out *= i;
    return out;
}

} // namespace

const char* gamma_law_name(GammaLaw law) {
    switch (law) {
    case GammaLaw::point_mass_1: return "point-mass-1";
    case GammaLaw::point_mass_2: return "point-mass-2";
    case GammaLaw::one_plus_bernoulli: return "one-plus-bernoulli";
    }
    return "unknown";
}

AsymptoticResult asymptotic_uniform(const Params& params) {
    const double c = params.c;
    if (c == 0.0 || c == 1.0) return from_p(0.0);  // gamma == 1 already at finite n
    if (!params.r_is_infinite() && params.r == 2.0 && c == 0.5) return from_p(4.0 / 9.0);
    if (params.r_is_infinite()) return from_p(0.0);
    const double tau = std::max(c, 1.0 - c);
    const double rt = params.r * tau;
    if (std::fabs(rt - 1.0) <= kBoundaryTol)
        return from_p(params.r / (params.r + 1.0));
    return from_p(rt > 1.0 ? 0.0 : 1.0);
}

AsymptoticResult asymptotic_general_left(const DistributionModel& model, double r) {
    if (!(r > 1.0 && r < 2.0))
        throw Error(ErrorCode::BadParameter,
                    "the left critical limit is stated for r in (1, 2)");
    const Interval sup = model.support();
    const double m1 = sup.lo + (r - 1.0) * (sup.hi - sup.lo) / r;
    int k = -1;
    bool used_delta = false;
    const double p =
        detect_ratio(model, sup.lo, Side::right, m1, Side::right, r, k, used_delta);
    AsymptoticResult res = from_p(p);
    res.order_k = k;
    res.delta_limit = used_delta;
    return res;
}

AsymptoticResult asymptotic_general_right(const DistributionModel& model, double r) {
    if (!(r > 1.0 && r < 2.0))
        throw Error(ErrorCode::BadParameter,
                    "the right critical limit is stated for r in (1, 2)");
    const Interval sup = model.support();
    const double m2 = sup.lo + (sup.hi - sup.lo) / r;
    int ell = -1;
    bool used_delta = false;
    const double p =
        detect_ratio(model, sup.hi, Side::left, m2, Side::left, r, ell, used_delta);
    AsymptoticResult res = from_p(p);
    res.order_ell = ell;
    res.delta_limit = used_delta;
    return res;
}

AsymptoticResult asymptotic_cccd(const DistributionModel& model) {
    const Interval sup = model.support();
    const double mid = 0.5 * (sup.lo + sup.hi);
    int k = -1;
    int ell = -1;
    bool delta_left = false;
    bool delta_right = false;
    const double left =
        detect_ratio(model, sup.lo, Side::right, mid, Side::right, 2.0, k, delta_left);
    const double right =
        detect_ratio(model, sup.hi, Side::left, mid, Side::left, 2.0, ell, delta_right);
    AsymptoticResult res = from_p(std::clamp(left * right, 0.0, 1.0));
    res.order_k = k;
    res.order_ell = ell;
    res.delta_limit = delta_left || delta_right;
    return res;
}

AsymptoticResult rate_constants(const DistributionModel& model, double r, Side side,
                                int n) {
    if (n < 1)
        throw Error(ErrorCode::BadParameter, "reference sample size must be positive");
    AsymptoticResult res = side == Side::left ? asymptotic_general_left(model, r)
                                              : asymptotic_general_right(model, r);
    if (res.delta_limit)
        fail_detection("rate constants need bounded one-sided derivatives");
    if (res.degenerate)
        fail_detection("the kappa display divides by the limit; it needs p in (0, 1)");
    const int ord = side == Side::left ? res.order_k : res.order_ell;
    const Interval sup = model.support();
    const double x0 = side == Side::left ? sup.lo : sup.hi;
    const Side inward = side == Side::left ? Side::right : Side::left;
    const DerivativeValue fk = model.one_sided_derivative(ord, x0, inward);
    const DerivativeValue fk1 = model.one_sided_derivative(ord + 1, x0, inward);
    if (fk.unbounded || fk1.unbounded)
        fail_detection("rate constants need the order-" + std::to_string(ord + 1) +
                       " derivative to stay bounded");

    const double p = res.limit_p;
    const double expo = (ord + 2.0) / (ord + 1.0);
    // In both kappa displays the f^(ord) component multiplies the fractional
    // power of the third component and the f^(ord+1) component multiplies the
    // Gamma factor; the two sides just list them in opposite order (s1,s2,s3
    // versus q1,q2,q3) and the right side carries alternating signs.
    double value_comp = 0.0, deriv_comp = 0.0, third = 0.0;
    if (side == Side::left) {
        value_comp = fk.value / (std::pow(n, ord + 1.0) * factorial(ord));
        deriv_comp = fk1.value / (n * factorial(ord + 1));
        third = p / factorial(ord + 1);
    } else {
        const double sgn = (ord % 2 == 0) ? 1.0 : -1.0;  // (-1)^ell
        value_comp = sgn * fk.value / (std::pow(n, ord + 1.0) * factorial(ord));
        deriv_comp = -sgn * fk1.value / (n * factorial(ord + 1));  // (-1)^(ell+1)
        third = -sgn * p / factorial(ord + 1);
    }
    const double kappa =
        (value_comp * std::pow(third, 1.0 / (ord + 1.0)) + deriv_comp * std::tgamma(expo)) /
        ((ord + 1.0) * std::pow(third, expo));
    const double c1 = side == Side::left ? value_comp : deriv_comp;  // s1 or q1
    const double c2 = side == Side::left ? deriv_comp : value_comp;  // s2 or q2
    const double c3 = third;

    res.has_rate = true;
    res.rate_exponent = expo;
    res.rate_constant = kappa;
    res.comp1 = c1;
    res.comp2 = c2;
    res.comp3 = c3;
    return res;
}

} // namespace pcd
