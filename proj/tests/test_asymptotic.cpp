// Limit laws of the domination number: the uniform trichotomy with its
// (2, 1/2) exception, the left/right critical-value limits for general
// densities (order detection, delta-limit path, failure modes), the (2, 1/2)
// product law, rate constants, and corroboration of every limit against the
// exact/quadrature finite-n sequences.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcd/asymptotic.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pcd/error.hpp"
#include "pcd/exact_uniform.hpp"
#include "pcd/general_f.hpp"

using namespace pcd;

namespace {

Params P(double r, double c) { return Params::make(r, c); }

void check_close(double got, double want, double tol) {
    INFO("got " << got << " want " << want << " tol " << tol);
    CHECK(std::fabs(got - want) <= tol);
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a pcd::Error");
    return ErrorCode::BadParameter;
}

// Every result must keep the degenerate flag and the law tag in lockstep
// with the limit value.
void check_consistent(const AsymptoticResult& res) {
    CHECK(res.limit_p >= 0.0);
    CHECK(res.limit_p <= 1.0);
    CHECK(res.degenerate == (res.limit_p == 0.0 || res.limit_p == 1.0));
    if (res.limit_p == 0.0) CHECK(res.law == GammaLaw::point_mass_1);
    if (res.limit_p == 1.0) CHECK(res.law == GammaLaw::point_mass_2);
    if (!res.degenerate) CHECK(res.law == GammaLaw::one_plus_bernoulli);
    CHECK(std::string(gamma_law_name(res.law)).size() > 0);
}

// A density that vanishes to fifth order at 0 and is identically zero on a
// strip covering the second probe point (r = 1.5 puts it at 1/3): no
// derivative pair up to order four can wake up, so detection must refuse.
std::unique_ptr<DistributionModel> quintic_flat_model() {
    const double a = 0.3 * 6.0 / std::pow(0.3, 6.0);  // mass 0.3 on [0, 0.3]
    return piecewise_poly_model({0.0, 0.3, 0.4, 1.0},
                                {{0.0, 0.0, 0.0, 0.0, 0.0, a}, {0.0}, {7.0 / 6.0}});
}

} // namespace

TEST_CASE("uniform trichotomy, the (2,1/2) override, and the jump structure") {
    // Supercritical r collapses gamma to 1, subcritical to 2, critical to
    // 1 + Ber(r/(r+1)) -- except at exactly (2, 1/2).
    auto crit = asymptotic_uniform(P(1.6, 0.375));  // tau = 0.625 = 1/1.6
    check_consistent(crit);
    CHECK(crit.law == GammaLaw::one_plus_bernoulli);
    check_close(crit.limit_p, 1.6 / 2.6, 1e-15);

    auto super = asymptotic_uniform(P(3.0, 0.5));
    check_consistent(super);
    CHECK(super.law == GammaLaw::point_mass_1);
    auto sub = asymptotic_uniform(P(1.2, 0.5));
    check_consistent(sub);
    CHECK(sub.law == GammaLaw::point_mass_2);

    auto cccd = asymptotic_uniform(P(2.0, 0.5));
    check_consistent(cccd);
    CHECK(cccd.law == GammaLaw::one_plus_bernoulli);
    check_close(cccd.limit_p, 4.0 / 9.0, 1e-15);

    // Degenerate centers and infinite expansion pin gamma to 1.
    CHECK(asymptotic_uniform(P(1.7, 0.0)).law == GammaLaw::point_mass_1);
    CHECK(asymptotic_uniform(P(1.7, 1.0)).law == GammaLaw::point_mass_1);
    CHECK(asymptotic_uniform(P(kInfiniteR, 0.3)).law == GammaLaw::point_mass_1);
    CHECK(asymptotic_uniform(P(1.0, 0.5)).law == GammaLaw::point_mass_2);

    // Fine grid straddling the critical line r = 1/tau for several centers.
    for (double c : {0.3, 0.44, 0.5, 0.62, 0.8}) {
        const double rc = 1.0 / std::max(c, 1.0 - c);
        if (rc != 2.0 || c != 0.5) {
            auto on = asymptotic_uniform(P(rc, c));
            CHECK(on.law == GammaLaw::one_plus_bernoulli);
            check_close(on.limit_p, rc / (rc + 1.0), 1e-12);
        }
        CHECK(asymptotic_uniform(P(rc * (1.0 + 1e-6), c)).law == GammaLaw::point_mass_1);
        CHECK(asymptotic_uniform(P(rc * (1.0 - 1e-6), c)).law == GammaLaw::point_mass_2);
    }

    // Walking the critical diagonal c = (r-1)/r into r = 2 leaves p at
    // r/(r+1) -> 2/3, yet the value at the endpoint itself is 4/9.
    const double r_near = 2.0 - 1e-9;
    auto near = asymptotic_uniform(P(r_near, (r_near - 1.0) / r_near));
    check_close(near.limit_p, 2.0 / 3.0, 1e-8);
    CHECK(std::fabs(near.limit_p - cccd.limit_p) > 0.2);
}

TEST_CASE("the trichotomy matches exact finite-sample values at n = 400") {
    CHECK(p_exact_full(400, P(3.0, 0.5)).value < 5e-3);
    CHECK(p_exact_full(400, P(1.2, 0.5)).value > 1.0 - 5e-3);
    check_close(p_exact_full(400, P(1.5, 1.0 / 3.0)).value, 1.5 / 2.5, 5e-3);
    check_close(p_exact_full(400, P(2.0, 0.5)).value, 4.0 / 9.0, 5e-3);
}

TEST_CASE("left critical limits reproduce the example table") {
    for (double r : {1.2, 1.5, 1.9}) {
        auto uni = asymptotic_general_left(*uniform_model(0.0, 1.0), r);
        check_consistent(uni);
        CHECK(uni.order_k == 0);
        CHECK_FALSE(uni.delta_limit);
        check_close(uni.limit_p, r / (r + 1.0), 1e-12);

        // The limit only sees the density near its own support, so a shifted
        // and stretched uniform gives the same answer.
        check_close(asymptotic_general_left(*uniform_model(2.0, 4.0), r).limit_p,
                    r / (r + 1.0), 1e-12);

        auto lb = asymptotic_general_left(*named_example_model("linear-b"), r);
        CHECK(lb.order_k == 0);
        check_close(lb.limit_p, r * r / (r * r + 3.0 * r - 2.0), 1e-12);

        auto as = asymptotic_general_left(*named_example_model("abs-sine-c"), r);
        check_consistent(as);
        CHECK(as.order_k == 0);
        CHECK(as.law == GammaLaw::point_mass_1);
        CHECK(as.limit_p == 0.0);

        auto bt = asymptotic_general_left(*beta_model(2.0, 3.0), r);
        CHECK(bt.order_k == 0);
        CHECK(bt.limit_p == 0.0);

        // beta(1, 2) keeps a positive density at 0, so the order stays 0 but
        // the value is nontrivial: 2 / (2 + r^-1 * 2/r) = r^2/(r^2+1).
        auto b12 = asymptotic_general_left(*beta_model(1.0, 2.0), r);
        CHECK(b12.order_k == 0);
        check_close(b12.limit_p, r * r / (r * r + 1.0), 1e-12);

        auto arc = asymptotic_general_left(*named_example_model("arcsine-f"), r);
        check_consistent(arc);
        CHECK(arc.delta_limit);
        CHECK(arc.limit_p == 1.0);
        CHECK(arc.law == GammaLaw::point_mass_2);
    }

    // sine-d: both the density and the tail vanish at the critical point with
    // equal first derivatives, so k = 1 and p = 1/(1 + r^-2); the flat tail
    // breaks the first-order match (its value at w+ is r/2 != 0) and the
    // limit collapses to 0 instead. The tail shape decides the answer.
    const double r = 1.5;
    for (auto tail : {SineDTail::ramp, SineDTail::ramp2}) {
        auto sd = asymptotic_general_left(*sine_d_model(r, tail), r);
        CHECK(sd.order_k == 1);
        check_close(sd.limit_p, r * r / (r * r + 1.0), 1e-12);
    }
    auto flat = asymptotic_general_left(*sine_d_model(r, SineDTail::flat), r);
    CHECK(flat.order_k == 0);
    CHECK(flat.limit_p == 0.0);
}

TEST_CASE("right critical limits reproduce the example table") {
    for (double r : {1.2, 1.5, 1.9}) {
        auto uni = asymptotic_general_right(*uniform_model(0.0, 1.0), r);
        check_consistent(uni);
        CHECK(uni.order_ell == 0);
        check_close(uni.limit_p, r / (r + 1.0), 1e-12);
        check_close(asymptotic_general_right(*uniform_model(2.0, 4.0), r).limit_p,
                    r / (r + 1.0), 1e-12);

        auto lb = asymptotic_general_right(*named_example_model("linear-b"), r);
        CHECK(lb.order_ell == 0);
        check_close(lb.limit_p, 3.0 * r * r / (3.0 * r * r + r + 2.0), 1e-12);

        auto as = asymptotic_general_right(*named_example_model("abs-sine-c"), r);
        CHECK(as.order_ell == 0);
        CHECK(as.limit_p == 0.0);

        auto bt = asymptotic_general_right(*beta_model(2.0, 3.0), r);
        CHECK(bt.order_ell == 0);
        CHECK(bt.limit_p == 0.0);

        auto arc = asymptotic_general_right(*named_example_model("arcsine-f"), r);
        CHECK(arc.delta_limit);
        CHECK(arc.limit_p == 1.0);
    }
}

TEST_CASE("the (2,1/2) product law, with quadrature adjudicating abs-sine") {
    auto uni = asymptotic_cccd(*uniform_model(0.0, 1.0));
    check_consistent(uni);
    CHECK(uni.order_k == 0);
    CHECK(uni.order_ell == 0);
    check_close(uni.limit_p, 4.0 / 9.0, 1e-14);

    // linear-b by hand: left ratio (1/2)/(1/2 + 1/2 * 1) = 1/2, right ratio
    // (3/2)/(3/2 + 1/2 * 1) = 3/4, product 3/8.
    auto lb = asymptotic_cccd(*named_example_model("linear-b"));
    check_close(lb.limit_p, 3.0 / 8.0, 1e-14);

    auto arc = asymptotic_cccd(*named_example_model("arcsine-f"));
    CHECK(arc.delta_limit);
    CHECK(arc.limit_p == 1.0);

    // sine-d's density is positive at the midpoint but zero at 0, so the
    // left ratio kills the product.
    CHECK(asymptotic_cccd(*sine_d_model(1.5)).limit_p == 0.0);

    // abs-sine vanishes at 0, 1/2, and 1, so both detections land at order 1
    // (slope pi^2 at every probe point) and each ratio is 1/(1 + 1/4):
    // p = 16/25. Note this differs from the one-sided critical limits, which
    // are 0 for every r in (1, 2); at r = 2 the midpoint zero changes the
    // order. The finite-n quadrature sequence corroborates 16/25.
    auto as = asymptotic_cccd(*named_example_model("abs-sine-c"));
    check_consistent(as);
    CHECK(as.order_k == 1);
    CHECK(as.order_ell == 1);
    check_close(as.limit_p, 16.0 / 25.0, 1e-12);
    const double p200 =
        p_numeric_general(*named_example_model("abs-sine-c"), P(2.0, 0.5), 200);
    const double p800 =
        p_numeric_general(*named_example_model("abs-sine-c"), P(2.0, 0.5), 800);
    CHECK(std::fabs(p800 - 16.0 / 25.0) < std::fabs(p200 - 16.0 / 25.0));
    check_close(p800, 16.0 / 25.0, 5e-4);
}

TEST_CASE("matching jets collapse to the uniform limit") {
    const double r = 1.5;
    // Piecewise-linear density arranged so f(0+) = f(M+) = 1 while being
    // decidedly non-uniform elsewhere: the detected order is 0 and the limit
    // must equal 1/(1 + 1/r), the uniform answer.
    const double m1 = 0.5 / 1.5;
    auto same = piecewise_poly_model({0.0, m1, 1.0}, {{1.0, 1.0}, {13.0 / 12.0, -0.25}});
    auto res = asymptotic_general_left(*same, r);
    CHECK(res.order_k == 0);
    check_close(res.limit_p, r / (r + 1.0), 1e-12);
    check_close(res.limit_p, 1.0 / (1.0 + std::pow(r, -(res.order_k + 1.0))), 1e-12);

    // Same-jet identity at order 1: sine-d against 1/(1 + r^-2).
    auto sd = asymptotic_general_left(*sine_d_model(r), r);
    check_close(sd.limit_p, 1.0 / (1.0 + std::pow(r, -(sd.order_k + 1.0))), 1e-12);

    // The general detector agrees with the closed-form trichotomy on the
    // uniform family along the left critical diagonal.
    for (double rr : {1.2, 1.5, 1.9}) {
        auto gen = asymptotic_general_left(*uniform_model(0.0, 1.0), rr);
        auto uni = asymptotic_uniform(P(rr, (rr - 1.0) / rr));
        CHECK(gen.law == uni.law);
        check_close(gen.limit_p, uni.limit_p, 1e-12);
    }

    // A locally constant density near both right-side probe points also
    // reproduces the uniform value even though the global shape is far from
    // uniform (quintic spike near 0, dead zone, flat tail).
    auto flat_right = asymptotic_general_right(*quintic_flat_model(), r);
    CHECK(flat_right.order_ell == 0);
    check_close(flat_right.limit_p, r / (r + 1.0), 1e-12);
}

TEST_CASE("parameter and detection failures are loud and typed") {
    auto uni = uniform_model(0.0, 1.0);
    for (double r : {1.0, 2.0, 2.5}) {
        CHECK(code_of([&] { asymptotic_general_left(*uni, r); }) ==
              ErrorCode::BadParameter);
        CHECK(code_of([&] { asymptotic_general_right(*uni, r); }) ==
              ErrorCode::BadParameter);
    }

    // Flat beyond order four at both left probe points: detection refuses
    // rather than guessing an order.
    auto quintic = quintic_flat_model();
    CHECK(code_of([&] { asymptotic_general_left(*quintic, 1.5); }) ==
          ErrorCode::OrderDetectionFailed);
    // Its midpoint sits in the flat tail, so the cccd product is well defined
    // and the left ratio zeroes it.
    CHECK(asymptotic_cccd(*quintic).limit_p == 0.0);

    // Rate constants refuse degenerate limits (the display divides by p),
    // delta-path limits, and nonsense reference sizes.
    CHECK(code_of([&] { rate_constants(*beta_model(2.0, 3.0), 1.5, Side::left); }) ==
          ErrorCode::OrderDetectionFailed);
    CHECK(code_of([&] {
              rate_constants(*named_example_model("arcsine-f"), 1.5, Side::left);
          }) == ErrorCode::OrderDetectionFailed);
    CHECK(code_of([&] { rate_constants(*uni, 1.5, Side::left, 0); }) ==
          ErrorCode::BadParameter);
}

TEST_CASE("rate constants expose the exponent and the printed components") {
    // Uniform, left, r = 1.5: k = 0, exponent (k+2)/(k+1) = 2, and at the
    // reference size n = 1 the components are s1 = f(0+) = 1, s2 = f'(0+) = 0,
    // s3 = p/1! = 0.6, giving kappa = s1 s3 / s3^2 = 1/s3 = 5/3.
    auto rl = rate_constants(*uniform_model(0.0, 1.0), 1.5, Side::left);
    CHECK(rl.has_rate);
    CHECK(rl.order_k == 0);
    check_close(rl.rate_exponent, 2.0, 1e-15);
    check_close(rl.comp1, 1.0, 1e-15);
    check_close(rl.comp2, 0.0, 1e-15);
    check_close(rl.comp3, 0.6, 1e-15);
    check_close(rl.rate_constant, 5.0 / 3.0, 1e-12);

    // Right side: q2 = f(1-) = 1, q1 = 0, q3 = -p; the alternating signs in
    // the printed components flip kappa's sign.
    auto rr = rate_constants(*uniform_model(0.0, 1.0), 1.5, Side::right);
    check_close(rr.rate_exponent, 2.0, 1e-15);
    check_close(rr.rate_constant, -5.0 / 3.0, 1e-12);

    // sine-d detects k = 1, so the exponent drops to 3/2.
    auto rs = rate_constants(*sine_d_model(1.5), 1.5, Side::left);
    CHECK(rs.order_k == 1);
    check_close(rs.rate_exponent, 1.5, 1e-15);
    CHECK(std::isfinite(rs.rate_constant));

    auto rb = rate_constants(*named_example_model("linear-b"), 1.5, Side::left);
    check_close(rb.rate_exponent, 2.0, 1e-15);
    CHECK(std::isfinite(rb.rate_constant));

    // The plain limit operations leave the rate fields unpopulated.
    CHECK_FALSE(asymptotic_general_left(*uniform_model(0.0, 1.0), 1.5).has_rate);
}

TEST_CASE("finite-n sequences approach the limits at their measured pace") {
    // linear-b at the left critical value: the quadrature sequence approaches
    // 9/19 from above with first-order corrections that shrink like 1/n
    // (measured slope about -0.96 over n in [50, 400]).
    auto lb = named_example_model("linear-b");
    const Params params = P(1.5, 1.0 / 3.0);
    const double p_inf = 9.0 / 19.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double prev_gap = 1.0;
    int m = 0;
    for (int n : {50, 100, 200, 400}) {
        const double pn = p_numeric_general(*lb, params, n);
        const double gap = pn - p_inf;
        CHECK(gap > 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        const double lx = std::log(static_cast<double>(n));
        const double ly = std::log(gap);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    INFO("fitted slope " << slope);
    CHECK(slope < -0.85);
    CHECK(slope > -1.15);

    // The uniform sequence at its critical value converges geometrically --
    // every closed-form term is an exponential in n -- so by n = 400 the gap
    // sits at rounding-noise level, far below any polynomial envelope.
    check_close(p_exact_full(400, params).value, 0.6, 1e-13);
}
