#include "pcd/exact_uniform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace pcd {

double ipow(double base, long long e) {
    if (e < 0) fail(ErrorCode::BadParameter, "ipow requires a nonnegative exponent");
    double acc = 1.0, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::degenerate_c: return "degenerate-c";
        case Regime::n_one: return "n=1";
        case Regime::r_infinite: return "r=inf";
        case Regime::pi1: return "pi1";
        case Regime::pi2: return "pi2";
        case Regime::pi3: return "pi3";
        case Regime::pi4: return "pi4";
        case Regime::theta1: return "theta1";
        case Regime::theta2: return "theta2";
        case Regime::theta3: return "theta3";
        case Regime::theta4: return "theta4";
        case Regime::nu1: return "nu1";
        case Regime::nu2: return "nu2";
        case Regime::nu3: return "nu3";
        case Regime::nu4: return "nu4";
        case Regime::half_high: return "half-high";
        case Regime::half_low: return "half-low";
        case Regime::half_r1: return "half-r1";
        case Regime::half_two: return "half-two";
    }
    return "unknown";
}

namespace {

const double kGolden = (3.0 - std::sqrt(5.0)) / 2.0;  // case-order split point

double q(double b, long long e) { return ipow(b, e); }

// All closed forms below keep every power on a single fused base whose
// magnitude stays bounded by ~1 inside the regime that uses it, so they stay
// finite and cancellation-free for large n.

// pi1 == theta1: r >= 1/c (also the c = 1/2, r >= 2 branch; c-free).
double pi1_form(int n, double r, double) {
    return 2.0 * r / ((r + 1) * (r + 1)) * (q(2.0 / r, n - 1) - q((r - 1) / (r * r), n - 1));
}

// pi2 == theta2: second regime on either case order.
double pi2_form(int n, double r, double c) {
    const double K = c * r * r + c * r - r + 1;
    const double d = c * r + c - 1;
    double v = r / (r + 1) * (q((1 + c * r) / r, n) - q((1 - c) / r, n));
    v -= r / ((r + 1) * (r + 1)) * q(K / r, n);
    v -= 1.0 / ((r + 1) * (r + 1)) *
         (r * q((r - 1) / (r * r), n - 1) + d * q((r - 1) * d / r, n - 1));
    return v;
}

// Shared trailing term of pi3/pi4: (c^n + (1-c)^n)(r^n + r^{1-n})/(r+1).
double edge_mass_term(int n, double r, double c) {
    return (q(c * r, n) + q((1 - c) * r, n) + r * (q(c / r, n) + q((1 - c) / r, n))) / (r + 1);
}

double pi3_form(int n, double r, double c) {
    const double d = c * r + c - 1;   // >= 0 here
    const double e = r - c * r - c;   // >= 0 here
    double v = 1.0 + (q(r - 1, n) - d * q((r - 1) * d / r, n - 1) - e * q((r - 1) * e / r, n - 1)) /
                         ((r + 1) * (r + 1));
    return v - edge_mass_term(n, r, c);
}

double pi4_form(int n, double r, double c) {
    const double d = 1 - c * r - c;  // >= 0 here
    const double e = r - c * r - c;
    double v = 1.0 + (q(r - 1, n) + d * q((r - 1) * d, n - 1) - e * q((r - 1) * e / r, n - 1)) /
                         ((r + 1) * (r + 1));
    return v - edge_mass_term(n, r, c);
}

double theta3_form(int n, double r, double c) {
    const double x1star = c * r * r - r + 1;
    const double tail = r / (r + 1) * (q((c * r + 1) / r, n) - q((1 - c) / r, n));
    if (x1star <= 0) return tail - q(c, n);
    const double K = c * r * r + c * r - r + 1;
    const double d = 1 - c * r - c;  // > 0 in this regime
    const double head = (-r * q(K / r, n) + d * q((r - 1) * d, n - 1) -
                         r * q((r - 1) / (r * r), n - 1)) /
                        ((r + 1) * (r + 1));
    return head + tail;
}

double nu1_form(int n, double c) {
    // Valid on (1/4, 1/3] only: below c = 1/4 the both-pieces Gamma_1 shape
    // is unreachable and this form overcounts for n >= 3 (see nu1_low_form).
    return 2.0 / 3 * q(c + 0.5, n) - 8.0 / 9 * q(0.25, n) - 2.0 / 3 * q((1 - c) / 2, n) +
           1.0 / 9 * q(1 - 3 * c, n) - 2.0 / 9 * q(3 * c - 0.5, n);
}

double nu1_low_form(int n, double c) {
    // c in (0, 1/4]: only the right-piece-only shape contributes; agrees with
    // nu1_form at c = 1/4 (and at n = 2 everywhere, where the classical form's
    // per-case errors cancel). Continuous to 0 as c -> 0.
    return 2.0 / 3 * (q(c + 0.5, n) - q((1 - c) / 2, n)) - q(c, n);
}

double nu2_form(int n, double c) {
    return 2.0 / 3 * q(c + 0.5, n) - 8.0 / 9 * q(0.25, n) - 2.0 / 3 * q((1 - c) / 2, n) -
           2.0 / 9 * q((3 * c - 1) / 2, n) - 2.0 / 9 * q(3 * c - 0.5, n);
}

double half_low_form(int n, double r) {
    return 1.0 - (q(1 / (2 * r), n - 1) + r * q(r / 2, n - 1)) / (r + 1) +
           (q(r - 1, n) - (r - 1) * q((r - 1) * (r - 1) / (2 * r), n - 1)) /
               ((r + 1) * (r + 1));
}

} // namespace

ExactProbability p_exact_2_half(int n) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need n >= 1");
    return {4.0 / 9 - 16.0 / 9 * q(0.25, n), Regime::half_two, false};
}

ExactProbability p_exact_r2_c(int n, double c) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need n >= 1");
    if (std::isnan(c) || c < 0 || c > 1) fail(ErrorCode::BadParameter, "c must lie in [0, 1]");
    if (c == 0.0 || c == 1.0) return {0.0, Regime::degenerate_c, false};
    if (n == 1) return {0.0, Regime::n_one, false};
    if (c <= 0.25) return {nu1_low_form(n, c), Regime::nu1, false};
    if (c <= 1.0 / 3) return {nu1_form(n, c), Regime::nu1, false};
    if (c <= 0.5) return {nu2_form(n, c), Regime::nu2, false};
    if (c <= 2.0 / 3) return {nu2_form(n, 1 - c), Regime::nu3, true};
    if (c < 0.75) return {nu1_form(n, 1 - c), Regime::nu4, true};
    return {nu1_low_form(n, 1 - c), Regime::nu4, true};
}

ExactProbability p_exact_r_half(int n, double r) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need n >= 1");
    if (std::isnan(r) || r < 1) fail(ErrorCode::BadParameter, "need r >= 1");
    if (std::isinf(r)) return {0.0, Regime::r_infinite, false};
    if (n == 1) return {0.0, Regime::n_one, false};
    if (r == 2.0) return {p_exact_2_half(n).value, Regime::half_two, false};
    if (r > 2.0) return {pi1_form(n, r, 0.5), Regime::half_high, false};
    if (r == 1.0) return {half_low_form(n, r), Regime::half_r1, false};
    return {half_low_form(n, r), Regime::half_low, false};
}

ExactProbability p_exact_full(int n, const Params& params) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need n >= 1");
    if (params.c == 0.0 || params.c == 1.0) return {0.0, Regime::degenerate_c, false};
    if (params.r_is_infinite()) return {0.0, Regime::r_infinite, false};
    if (params.c == 0.5) return p_exact_r_half(n, params.r);

    const bool mirrored = params.c > 0.5;
    const double c = mirrored ? 1 - params.c : params.c;
    const double r = params.r;
    if (n == 1) return {0.0, Regime::n_one, mirrored};

    Regime regime;
    double value;
    if (c <= kGolden) {
        if (r >= 1 / c) {
            regime = Regime::theta1;
            value = pi1_form(n, r, c);
        } else if (r >= (1 - c) / c) {
            regime = Regime::theta2;
            value = pi2_form(n, r, c);
        } else if (r >= 1 / (1 - c)) {
            regime = Regime::theta3;
            value = theta3_form(n, r, c);
        } else {
            regime = Regime::theta4;
            value = pi4_form(n, r, c);
        }
    } else {
        if (r >= 1 / c) {
            regime = Regime::pi1;
            value = pi1_form(n, r, c);
        } else if (r >= 1 / (1 - c)) {
            regime = Regime::pi2;
            value = pi2_form(n, r, c);
        } else if (r >= (1 - c) / c) {
            regime = Regime::pi3;
            value = pi3_form(n, r, c);
        } else {
            regime = Regime::pi4;
            value = pi4_form(n, r, c);
        }
    }
    return {value, regime, mirrored};
}

// ---------------------------------------------------------------------------
// Closed per-case partials.

namespace {

double case1_closed(int n, double r, double c) {
    const double g = kGolden;
    if (r >= 1 / c) return pi1_form(n, r, c);

    const double K = c * r * r + c * r - r + 1;
    const double d = c * r + c - 1;
    const double e = r - c * r - c;
    const double w = 1 - c * r - c;
    const double coef = r * r / ((r + 1) * (r + 1));

    const bool v2 = (c > g) ? (r >= 1 / (1 - c)) : (r >= (1 - c) / c);
    if (v2) {
        return coef * (q(K / r, n) - d * q((r - 1) * d / r, n - 1) -
                       (1 / r) * q((r - 1) / (r * r), n - 1));
    }
    if (c > g) {
        if (r >= (1 - c) / c) {  // pi3 territory
            return coef *
                   (q(r - 1, n) - e * q((r - 1) * e / r, n - 1) - d * q((r - 1) * d / r, n - 1));
        }
    } else if (r >= 1 / (1 - c)) {  // theta3 territory: x1 runs from 0 to x1*
        const double x1star = c * r * r - r + 1;
        if (x1star <= 0) return 0.0;
        return coef * (w * q((r - 1) * w, n - 1) - (1 / r) * q((r - 1) / (r * r), n - 1) +
                       q(K / r, n));
    }
    // pi4 / theta4 territory: x1 runs from u0 to x1*
    return coef * (q(r - 1, n) + w * q((r - 1) * w, n - 1) - e * q((r - 1) * e / r, n - 1));
}

double case2_closed(int n, double r, double c) {
    if (r * c - r + 1 <= 0) return 0.0;  // u0 <= 0: the left-piece-only shape is unreachable
    const double e = r - c * r - c;
    return r / (r + 1) *
           (q(c * r, n) - q(c / r, n) - q(r - 1, n) + q((r - 1) * e / r, n));
}

double case3_closed(int n, double r, double c) {
    if (c * r >= 1) return 0.0;  // the left piece can never be empty
    const double g = kGolden;
    const double K = c * r * r + c * r - r + 1;
    const double d = c * r + c - 1;
    const double w = 1 - c * r - c;

    const bool v1 = (c > g) ? (r >= 1 / (1 - c)) : (r >= (1 - c) / c);
    if (v1) {  // rectangle over x1 in (0, c), xn in [cr, 1)
        return ((r - 1) * d * q((r - 1) * d / r, n - 1) + r * q((1 + c * r) / r, n) -
                r * q(K / r, n) - r * q((1 - c) / r, n)) /
               (r + 1);
    }
    if (c > g) {
        if (r >= (1 - c) / c) {  // rectangle over x1 in (u0, c)
            return r / (r + 1) *
                   (q(r * (1 - c), n) - q((1 - c) / r, n) + q((r - 1) * d / r, n) - q(r - 1, n));
        }
    } else if (r >= 1 / (1 - c)) {  // xn >= b cut, x1 from 0
        const double x1star = c * r * r - r + 1;
        const double tail = r / (r + 1) * (q((c * r + 1) / r, n) - q((1 - c) / r, n));
        if (x1star <= 0) return tail - q(c, n);
        return tail - r / (r + 1) * q(K / r, n) - q((r - 1) * w, n) / (r + 1);
    }
    // pi4 / theta4: xn >= b cut, x1 from u0
    return r / (r + 1) * (q(r * (1 - c), n) - q((1 - c) / r, n) - q(r - 1, n)) -
           q((r - 1) * w, n) / (r + 1);
}

double case4_closed(int n, double r, double c) {
    if (r * c - r + 1 <= 0) return 0.0;  // u0 <= 0: Gamma_1 never empties
    return 1 + q(r - 1, n) - q(c * r, n) - q(r * (1 - c), n);
}

} // namespace

CasePartials p_exact_cases(int n, const Params& params) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need n >= 1");
    CasePartials out;
    if (n == 1 || params.r_is_infinite() || params.c == 0.0 || params.c == 1.0) return out;
    const double r = params.r;
    if (params.c <= 0.5) {
        out.case1 = case1_closed(n, r, params.c);
        out.case2 = case2_closed(n, r, params.c);
        out.case3 = case3_closed(n, r, params.c);
        out.case4 = case4_closed(n, r, params.c);
    } else {
        // reflection x -> 1-x swaps the two one-piece shapes
        const double c = 1 - params.c;
        out.case1 = case1_closed(n, r, c);
        out.case2 = case3_closed(n, r, c);
        out.case3 = case2_closed(n, r, c);
        out.case4 = case4_closed(n, r, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quadrature oracle over the exact case regions.

namespace {

struct CaseRegion {
    double x1_lo, x1_hi;
    // inner kernel base B(x1, xn) = beta*xn + alpha(x1); limits lo(x1)..hi(x1)
    double beta;
    std::function<double(double)> alpha;
    std::function<double(double)> xn_lo;
    std::function<double(double)> xn_hi;
    std::vector<double> breaks;
};

double integrate_region(int n, const CaseRegion& reg, const QuadratureSpec& spec) {
    if (!(reg.x1_lo < reg.x1_hi)) return 0.0;
    std::vector<double> cuts{reg.x1_lo, reg.x1_hi};
    for (double b : reg.breaks)
        if (b > reg.x1_lo && b < reg.x1_hi) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    const double nn = n;
    auto outer = [&](double x1) {
        const double lo = reg.xn_lo(x1);
        const double hi = reg.xn_hi(x1);
        if (!(lo < hi)) return 0.0;
        const double a = reg.alpha(x1);
        const double b_hi = std::max(reg.beta * hi + a, 0.0);
        const double b_lo = std::max(reg.beta * lo + a, 0.0);
        return nn / reg.beta * (q(b_hi, n - 1) - q(b_lo, n - 1));
    };

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-300) continue;
        total += integrate(outer, cuts[i], cuts[i + 1], spec);
    }
    return total;
}

} // namespace

CasePartials p_numeric_oracle(int n, const Params& params, const QuadratureSpec& spec) {
    if (n < 2) fail(ErrorCode::BadSampleSize, "the two-endpoint density needs n >= 2");
    CasePartials out;
    const double c = params.c;
    if (params.r_is_infinite() || c == 0.0 || c == 1.0) return out;
    const double r = params.r;
    const double u0 = r * c - r + 1;
    const double x1star = c * r * r - r + 1;
    const double s = 1 / (r + 1);
    auto b_of = [r](double x1) { return (x1 + r - 1) / r; };

    // Gamma_1 = (a, b), both pieces nonempty: x1 > u0, xn in [max(b, r x1), min(cr, 1)).
    CaseRegion c1{std::max(0.0, u0),
                  c,
                  (r + 1) / r,
                  [r](double x1) { return -(1 + 1 / r) * x1 - (r - 1) / r; },
                  [&](double x1) { return std::max(b_of(x1), r * x1); },
                  [&](double) { return std::min(c * r, 1.0); },
                  {x1star, s, 1 / r}};
    out.case1 = integrate_region(n, c1, spec);

    // Gamma_1 = (a, c]: x1 <= u0, xn in [max(c, r x1), min(cr, 1)).
    CaseRegion c2{0.0,
                  std::min(u0, c),
                  (r + 1) / r,
                  [c](double x1) { return -x1 - c; },
                  [&](double x1) { return std::max(c, r * x1); },
                  [&](double) { return std::min(c * r, 1.0); },
                  {c / r, 1 / r}};
    out.case2 = integrate_region(n, c2, spec);

    // Gamma_1 = [c, b): x1 in (u0, c), xn in [max(cr, b), 1).
    CaseRegion c3{std::max(0.0, u0),
                  c,
                  1.0,
                  [&](double x1) { return -(1 + 1 / r) * x1 + c - (r - 1) / r; },
                  [&](double x1) { return std::max(c * r, b_of(x1)); },
                  [](double) { return 1.0; },
                  {x1star}};
    out.case3 = integrate_region(n, c3, spec);

    // Gamma_1 empty: x1 <= u0, xn >= cr.
    CaseRegion c4{0.0,
                  std::min(u0, c),
                  1.0,
                  [](double x1) { return -x1; },
                  [&](double) { return c * r; },
                  [](double) { return 1.0; },
                  {}};
    out.case4 = integrate_region(n, c4, spec);

    // kernel scale n(n-1) enters through the inner antiderivative: the factor
    // (n-1) cancels against the exponent bump, leaving n/beta * [B^{n-1}].
    return out;
}

} // namespace pcd
