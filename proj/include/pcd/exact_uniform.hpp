#pragma once

#include "pcd/params.hpp"
#include "pcd/quad.hpp"

namespace pcd {

// Which closed-form branch produced a probability. The pi/theta families are
// the two Main-Result case orders (c above/below (3-sqrt(5))/2), nu is the
// r == 2 family, half_* the c == 1/2 family.
enum class Regime {
    degenerate_c,
    n_one,
    r_infinite,
    pi1,
    pi2,
    pi3,
    pi4,
    theta1,
    theta2,
    theta3,
    theta4,
    nu1,
    nu2,
    nu3,
    nu4,
    half_high,  // c = 1/2, r >= 2
    half_low,   // c = 1/2, 1 < r < 2
    half_r1,    // c = 1/2, r = 1
    half_two,   // the (r, c) = (2, 1/2) special value
};

const char* regime_name(Regime r);

struct ExactProbability {
    double value = 0.0;
    Regime regime = Regime::degenerate_c;
    bool mirrored = false;  // evaluated at 1-c via the reflection symmetry
};

// Exact integer-exponent power (binary exponentiation): keeps the sign of
// negative bases exact for alternating terms. Requires e >= 0.
double ipow(double base, long long e);

// P(gamma = 2) for X ~ U(0,1), m = 2, at (r, c) = (2, 1/2): 4/9 - (16/9) 4^-n.
ExactProbability p_exact_2_half(int n);

// r == 2, c in [0, 1] (nu family).
ExactProbability p_exact_r2_c(int n, double c);

// c == 1/2, r in [1, inf].
ExactProbability p_exact_r_half(int n, double r);

// Full (r, c) web; delegates to the c == 1/2 family on the diagonal and
// mirrors c > 1/2 onto 1-c.
ExactProbability p_exact_full(int n, const Params& params);

// Per-case partial probabilities, keyed by the shape of the Gamma_1 region:
// case1 = both pieces nonempty, case2 = left piece only, case3 = right piece
// only, case4 = empty region.
struct CasePartials {
    double case1 = 0.0;
    double case2 = 0.0;
    double case3 = 0.0;
    double case4 = 0.0;
    double total() const { return case1 + case2 + case3 + case4; }
};

// Independent quadrature oracle: integrates the order-statistic density over
// the exact case regions. Requires n >= 2 (BadSampleSize otherwise).
CasePartials p_numeric_oracle(int n, const Params& params, const QuadratureSpec& spec = {});

// Closed forms for the same per-case partials (regime-dispatched).
CasePartials p_exact_cases(int n, const Params& params);

} // namespace pcd
