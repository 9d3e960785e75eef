#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pcd/interval.hpp"
#include "pcd/params.hpp"
#include "pcd/rng.hpp"

namespace pcd {

enum class Side { left, right };

// One-sided derivative of a pdf. When `unbounded` is set the derivative
// diverges at that point from that side; `value` is then meaningless and
// callers should probe f at x +/- delta instead (see derivative_near below).
struct DerivativeValue {
    double value = 0.0;
    bool unbounded = false;
};

// Absolutely continuous distribution on an open interval. Immutable and
// stateless after construction, so instances may be shared across threads.
//
// Conventions: pdf() is 0 outside the open support, cdf() clamps to 0/1
// outside, quantile(u) expects u in [0,1] and maps 0/1 to the support
// endpoints. one_sided_derivative(k, x, side) is the k-th derivative of the
// pdf restricted to the side of x named by `side` (k = 0 is the one-sided
// limit of f itself), so jump points report the piece the side selects.
class DistributionModel {
  public:
    virtual ~DistributionModel() = default;

    virtual std::string name() const = 0;
    virtual Interval support() const = 0;
    virtual double pdf(double x) const = 0;
    virtual double cdf(double x) const = 0;
    virtual double quantile(double u) const = 0;
    virtual DerivativeValue one_sided_derivative(int k, double x, Side side) const = 0;

    // Highest order served analytically; orders above this fall back to
    // side-restricted finite differences (k <= 2 only, ~1e-4 accuracy).
    virtual int analytic_order() const = 0;

    // False when the cdf has a flat stretch inside the support, in which case
    // the quantile is not a genuine inverse and N_F is undefined.
    virtual bool strictly_increasing() const { return true; }

    // Interior abscissae where the density is only piecewise-smooth (kinks or
    // jumps). Quadrature consumers split their panels here so adaptive
    // refinement never has to chase a non-smooth point.
    virtual std::vector<double> seams() const { return {}; }

    // Inverse-cdf sampling; consumes exactly one double per draw except that
    // an exact 0 is redrawn so samples stay inside the open support.
    double sample(SplitMix64& rng) const;
    std::vector<double> sample_n(int n, SplitMix64& rng) const;

    // Side-restricted finite differences for orders a model does not serve
    // analytically. Supported for k <= 2 only; higher orders raise
    // BadParameter. Accuracy is ~1e-4, so callers doing order detection must
    // widen their tolerances accordingly.
    DerivativeValue numeric_one_sided(int k, double x, Side side) const;
};

// f^{(k)} evaluated a step `delta` inside the support from x toward `side`.
// Drives delta -> 0 limit sequences where one_sided_derivative reports an
// unbounded value (the arcsine endpoints being the motivating case).
DerivativeValue derivative_near(const DistributionModel& model, int k, double x, Side side,
                                double delta);

// Uniform on (a, b). Errors: BadSupport when a >= b or either bound is
// non-finite.
std::unique_ptr<DistributionModel> uniform_model(double a, double b);

// Tail shape for sine_d_model on ((r-1)/r, 1); every choice carries mass 1/2.
//  - ramp:  triangle leaving (r-1)/r with slope matching the sine piece's
//           initial slope, so the density's first-order behavior at the two
//           critical points agrees.
//  - ramp2: same value and slope at ((r-1)/r)+ as `ramp` but a different
//           shape beyond first order.
//  - flat:  constant r/2, which does not vanish at ((r-1)/r)+.
enum class SineDTail { ramp, ramp2, flat };

std::unique_ptr<DistributionModel> sine_d_model(double r, SineDTail tail = SineDTail::ramp);

// Beta(nu1, nu2) on (0, 1), restricted to nu1, nu2 >= 1. Integer parameters
// get exact polynomial derivatives of every order; non-integer parameters get
// analytic order 0 everywhere, analytic endpoint classification for k >= 1
// (finite, zero, or unbounded by exponent counting), and the numeric fallback
// at interior points.
std::unique_ptr<DistributionModel> beta_model(double nu1, double nu2);

// Piecewise-polynomial density: pieces[j] holds ascending-power coefficients
// of f on [breakpoints[j], breakpoints[j+1]). Checked at construction:
// breakpoints strictly increasing and finite, one coefficient list per piece,
// nonnegative on a dense grid, total mass 1 within 1e-9. Violations raise
// BadParameter (BadSupport when fewer than two breakpoints).
std::unique_ptr<DistributionModel> piecewise_poly_model(std::vector<double> breakpoints,
                                                        std::vector<std::vector<double>> pieces);

// Same, parsed from JSON: {"breakpoints":[...], "pieces":[[c0,c1,...],...]}.
// Malformed JSON or wrong shapes raise BadConfig; the numeric checks above
// still apply.
std::unique_ptr<DistributionModel> piecewise_poly_from_json(const std::string& json_text);

// Factory for the worked examples. Accepts "linear-b", "abs-sine-c",
// "arcsine-f", "sine-d(r)" with r in (1,2), and "beta(nu1,nu2)"; unknown
// names or malformed arguments raise BadParameter.
std::unique_ptr<DistributionModel> named_example_model(const std::string& name);

// Transformed proximity map N_F(x, r, c) = F^{-1}(N(F(x), r, c)) with the
// region taken on the unit interval between reference points {0, 1}.
// Errors: OutOfInterval when x is outside the support, NotInvertible when
// the model's cdf is not strictly increasing.
Interval transformed_proximity_map_check(const DistributionModel& model, double x,
                                         const Params& params);

} // namespace pcd
