#include "pcd/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "pcd/error.hpp"

namespace pcd {

namespace {

constexpr double kPi = std::numbers::pi;

// Solves F(x) = u on [lo, hi] for nondecreasing F: Newton steps guarded by a
// sign-tracking bisection bracket, so flat or vanishing derivatives cannot
// stall the iteration outside the bracket.
template <class Fn, class Dn>
double invert_monotone(Fn&& F, Dn&& dF, double u, double lo, double hi) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 220; ++it) {
        double fx = F(x) - u;
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        double d = dF(x);
        double xn = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 1e-16 * std::max(1.0, std::fabs(xn))) return xn;
        x = xn;
    }
    return x;
}

double poly_eval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Coefficients of the k-th derivative (ascending powers, possibly empty).
std::vector<double> poly_derive(std::vector<double> coeffs, int k) {
    for (int pass = 0; pass < k && !coeffs.empty(); ++pass) {
        for (std::size_t i = 1; i < coeffs.size(); ++i)
            coeffs[i - 1] = coeffs[i] * static_cast<double>(i);
        coeffs.pop_back();
    }
    return coeffs;
}

// Antiderivative with constant term 0.
std::vector<double> poly_integrate(const std::vector<double>& coeffs) {
    std::vector<double> out(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        out[i + 1] = coeffs[i] / static_cast<double>(i + 1);
    return out;
}

void check_order_nonnegative(int k) {
    if (k < 0) fail(ErrorCode::BadParameter, "derivative order must be nonnegative");
}

// ---------------------------------------------------------------------------
// Uniform(a, b)

class UniformModel final : public DistributionModel {
  public:
    UniformModel(double a, double b) : a_(a), b_(b), inv_(1.0 / (b - a)) {}

    std::string name() const override {
        std::ostringstream os;
        os << "uniform(" << a_ << "," << b_ << ")";
        return os.str();
    }
    Interval support() const override { return {a_, b_}; }
    double pdf(double x) const override { return (a_ < x && x < b_) ? inv_ : 0.0; }
    double cdf(double x) const override {
        return std::clamp((x - a_) * inv_, 0.0, 1.0);
    }
    double quantile(double u) const override { return a_ + u * (b_ - a_); }
    int analytic_order() const override { return 64; }

    DerivativeValue one_sided_derivative(int k, double x, Side side) const override {
        check_order_nonnegative(k);
        bool inside = side == Side::right ? (a_ <= x && x < b_) : (a_ < x && x <= b_);
        if (!inside || k >= 1) return {0.0, false};
        return {inv_, false};
    }

  private:
    double a_, b_, inv_;
};

// ---------------------------------------------------------------------------
// Example (b): f(x) = x + 1/2 on (0, 1)

class LinearBModel final : public DistributionModel {
  public:
    std::string name() const override { return "linear-b"; }
    Interval support() const override { return {0.0, 1.0}; }
    double pdf(double x) const override { return (0.0 < x && x < 1.0) ? x + 0.5 : 0.0; }
    double cdf(double x) const override {
        return std::clamp(0.5 * x * x + 0.5 * x, 0.0, 1.0);
    }
    double quantile(double u) const override {
        // Rationalized root of x^2/2 + x/2 = u; stable as u -> 0.
        return 2.0 * u / (0.5 + std::sqrt(0.25 + 2.0 * u));
    }
    int analytic_order() const override { return 64; }

    DerivativeValue one_sided_derivative(int k, double x, Side side) const override {
        check_order_nonnegative(k);
        bool inside = side == Side::right ? (0.0 <= x && x < 1.0) : (0.0 < x && x <= 1.0);
        if (!inside || k >= 2) return {0.0, false};
        return {k == 0 ? x + 0.5 : 1.0, false};
    }
};

// ---------------------------------------------------------------------------
// Example (c): f(x) = (pi/2)|sin(2 pi x)| on (0, 1)

class AbsSineModel final : public DistributionModel {
  public:
    std::string name() const override { return "abs-sine-c"; }
    Interval support() const override { return {0.0, 1.0}; }

    double pdf(double x) const override {
        if (!(0.0 < x && x < 1.0)) return 0.0;
        return 0.5 * kPi * std::fabs(std::sin(2.0 * kPi * x));
    }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        // Half-angle form avoids the 1 - cos cancellation near each hump foot.
        if (x <= 0.5) {
            double s = std::sin(kPi * x);
            return 0.5 * s * s;
        }
        double s = std::sin(kPi * (x - 0.5));
        return 0.5 + 0.5 * s * s;
    }
    double quantile(double u) const override {
        if (u <= 0.5) return std::asin(std::sqrt(2.0 * u)) / kPi;
        return 0.5 + std::asin(std::sqrt(2.0 * (u - 0.5))) / kPi;
    }
    int analytic_order() const override { return 64; }
    std::vector<double> seams() const override { return {0.5}; }

    DerivativeValue one_sided_derivative(int k, double x, Side side) const override {
        check_order_nonnegative(k);
        bool inside = side == Side::right ? (0.0 <= x && x < 1.0) : (0.0 < x && x <= 1.0);
        if (!inside) return {0.0, false};
        // |sin| flips sign across x = 1/2; the side picks the hump.
        bool first_hump = side == Side::right ? x < 0.5 : x <= 0.5;
        double sign = first_hump ? 1.0 : -1.0;
        double v = sign * 0.5 * kPi * std::pow(2.0 * kPi, k) *
                   std::sin(2.0 * kPi * x + 0.5 * kPi * k);
        return {v, false};
    }
};

// ---------------------------------------------------------------------------
// Example (d): sine hump of mass 1/2 on (0, (r-1)/r] plus a tail g of mass
// 1/2 on ((r-1)/r, 1). The tail is piecewise linear in all three variants.

struct LinSeg {
    double x0, x1;   // segment span
    double y0;       // value at x0
    double slope;
    double mass0;    // tail mass accumulated before this segment

    double length() const { return x1 - x0; }
    double value(double x) const { return y0 + slope * (x - x0); }
    double mass() const { return (y0 + 0.5 * slope * length()) * length(); }
};

class SineDModel final : public DistributionModel {
  public:
    SineDModel(double r, SineDTail tail) : r_(r), tail_(tail), w_((r - 1.0) / r) {
        amp_ = 0.25 * kPi / w_;          // pdf scale: pi r / (4 (r-1))
        slope0_ = amp_ * kPi / w_;       // f'(0+), matched by the ramp tails
        build_tail();
    }

    std::string name() const override {
        std::ostringstream os;
        os << "sine-d(r=" << r_ << ","
           << (tail_ == SineDTail::ramp ? "ramp" : tail_ == SineDTail::ramp2 ? "ramp2" : "flat")
           << ")";
        return os.str();
    }
    Interval support() const override { return {0.0, 1.0}; }

    double pdf(double x) const override {
        if (!(0.0 < x && x < 1.0)) return 0.0;
        if (x <= w_) return amp_ * std::sin(kPi * x / w_);
        return tail_value(x);
    }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        if (x <= w_) {
            double s = std::sin(0.5 * kPi * x / w_);
            return 0.5 * s * s;
        }
        const LinSeg& seg = segs_[tail_index(x)];
        double t = x - seg.x0;
        return 0.5 + seg.mass0 + (seg.y0 + 0.5 * seg.slope * t) * t;
    }
    double quantile(double u) const override {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        if (u <= 0.5) return (2.0 * w_ / kPi) * std::asin(std::sqrt(2.0 * u));
        double m = u - 0.5;
        std::size_t j = 0;
        while (j + 1 < segs_.size() && segs_[j + 1].mass0 <= m) ++j;
        const LinSeg& seg = segs_[j];
        m -= seg.mass0;
        double disc = std::max(seg.y0 * seg.y0 + 2.0 * seg.slope * m, 0.0);
        double denom = seg.y0 + std::sqrt(disc);
        double t = denom > 0.0 ? 2.0 * m / denom : 0.0;
        return std::min(seg.x0 + t, seg.x1);
    }
    int analytic_order() const override { return 64; }
    std::vector<double> seams() const override {
        std::vector<double> out;
        for (const auto& seg : segs_) out.push_back(seg.x0);  // segs_[0].x0 == w_
        return out;
    }

    DerivativeValue one_sided_derivative(int k, double x, Side side) const override {
        check_order_nonnegative(k);
        bool inside = side == Side::right ? (0.0 <= x && x < 1.0) : (0.0 < x && x <= 1.0);
        if (!inside) return {0.0, false};
        bool sine_piece = side == Side::right ? x < w_ : x <= w_;
        if (sine_piece) {
            double v = amp_ * std::pow(kPi / w_, k) * std::sin(kPi * x / w_ + 0.5 * kPi * k);
            return {v, false};
        }
        const LinSeg& seg = side == Side::right ? segs_[tail_index(x)]
                                                : segs_[tail_index_left(x)];
        if (k == 0) return {seg.value(x), false};
        if (k == 1) return {seg.slope, false};
        return {0.0, false};
    }

  private:
    void build_tail() {
        double span = 1.0 - w_;  // = 1/r
        if (tail_ == SineDTail::flat) {
            segs_.push_back({w_, 1.0, 0.5 * r_, 0.0, 0.0});
        } else if (tail_ == SineDTail::ramp) {
            // Triangle: rise at the sine piece's initial slope, peak height
            // r so the area under the tail is exactly 1/2.
            double h = 1.0 / span;
            double t0 = w_ + h / slope0_;
            segs_.push_back({w_, t0, 0.0, slope0_, 0.0});
            segs_.push_back({t0, 1.0, h, -h / (1.0 - t0), 0.0});
        } else {
            // Same value/slope at w+ as `ramp`, then a dip back to zero and a
            // separate triangle carrying the remaining mass.
            double d = std::min(0.5 / (slope0_ * span), 0.25 * span);
            double spike = slope0_ * d * d;
            double base = span - 2.0 * d;
            double h2 = (1.0 - 2.0 * spike) / base;
            double mid = w_ + 2.0 * d + 0.5 * base;
            segs_.push_back({w_, w_ + d, 0.0, slope0_, 0.0});
            segs_.push_back({w_ + d, w_ + 2.0 * d, slope0_ * d, -slope0_, 0.0});
            segs_.push_back({w_ + 2.0 * d, mid, 0.0, h2 / (0.5 * base), 0.0});
            segs_.push_back({mid, 1.0, h2, -h2 / (0.5 * base), 0.0});
        }
        double acc = 0.0;
        for (auto& seg : segs_) {
            seg.mass0 = acc;
            acc += seg.mass();
        }
    }

    std::size_t tail_index(double x) const {  // piece containing [x, x+eps)
        std::size_t j = 0;
        while (j + 1 < segs_.size() && x >= segs_[j + 1].x0) ++j;
        return j;
    }
    std::size_t tail_index_left(double x) const {  // piece containing (x-eps, x]
        std::size_t j = segs_.size() - 1;
        while (j > 0 && x <= segs_[j].x0) --j;
        return j;
    }
    double tail_value(double x) const { return segs_[tail_index(x)].value(x); }

    double r_;
    SineDTail tail_;
    double w_, amp_, slope0_;
    std::vector<LinSeg> segs_;
};

// ---------------------------------------------------------------------------
// Beta(nu1, nu2), nu1, nu2 >= 1

double beta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 400; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 3e-16) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x);
    double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

bool near_integer(double v) { return std::fabs(v - std::round(v)) < 1e-9; }

class BetaModel final : public DistributionModel {
  public:
    BetaModel(double a, double b) : a_(a), b_(b) {
        log_beta_ = std::lgamma(a_) + std::lgamma(b_) - std::lgamma(a_ + b_);
        poly_path_ = near_integer(a_) && near_integer(b_) && a_ + b_ <= 20.5;
        if (poly_path_) {
            int ia = static_cast<int>(std::round(a_));
            int ib = static_cast<int>(std::round(b_));
            // x^(a-1) (1-x)^(b-1) / B expanded; degree a+b-2 stays small
            // enough here that the alternating binomials are benign.
            coeffs_.assign(static_cast<std::size_t>(ia + ib - 1), 0.0);
            double binom = 1.0;
            for (int j = 0; j < ib; ++j) {
                coeffs_[static_cast<std::size_t>(ia - 1 + j)] =
                    (j % 2 == 0 ? binom : -binom) * std::exp(-log_beta_);
                binom = binom * (ib - 1 - j) / (j + 1.0);
            }
            anti_ = poly_integrate(coeffs_);  // anti(0) = 0, so cdf(x) = anti(x)
        }
    }

    std::string name() const override {
        std::ostringstream os;
        os << "beta(" << a_ << "," << b_ << ")";
        return os.str();
    }
    Interval support() const override { return {0.0, 1.0}; }

    double pdf(double x) const override {
        if (!(0.0 < x && x < 1.0)) return 0.0;
        return std::exp((a_ - 1.0) * std::log(x) + (b_ - 1.0) * std::log1p(-x) - log_beta_);
    }
    double cdf(double x) const override {
        if (poly_path_) {
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return std::clamp(poly_eval(anti_, x), 0.0, 1.0);
        }
        return reg_inc_beta(a_, b_, x);
    }
    double quantile(double u) const override {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        return invert_monotone([this](double x) { return cdf(x); },
                               [this](double x) { return pdf(x); }, u, 0.0, 1.0);
    }
    int analytic_order() const override { return poly_path_ ? 64 : 2; }

    DerivativeValue one_sided_derivative(int k, double x, Side side) const override {
        check_order_nonnegative(k);
        bool inside = side == Side::right ? (0.0 <= x && x < 1.0) : (0.0 < x && x <= 1.0);
        if (!inside) return {0.0, false};
        if (poly_path_) return {poly_eval(poly_derive(coeffs_, k), x), false};
        bool at_left = x == 0.0;
        bool at_right = x == 1.0;
        if (at_left || at_right) return endpoint_derivative(k, at_left);
        if (k == 0) return {pdf(x), false};
        double f = pdf(x);
        double u = (a_ - 1.0) / x - (b_ - 1.0) / (1.0 - x);
        if (k == 1) return {f * u, false};
        if (k == 2) {
            double du = -(a_ - 1.0) / (x * x) - (b_ - 1.0) / ((1.0 - x) * (1.0 - x));
            return {f * (u * u + du), false};
        }
        return numeric_one_sided(k, x, side);
    }

  private:
    // f ~ t^(p-1) s(t) / B near an endpoint (t the distance in, p the shape
    // there, s smooth with s(0) = 1). Exponent counting decides: derivative
    // order above p-1 diverges for fractional p and terminates for integer p.
    DerivativeValue endpoint_derivative(int k, bool left) const {
        double p = left ? a_ : b_;
        double other = left ? b_ : a_;
        double excess = p - 1.0 - k;
        if (excess > 0.0) return {0.0, false};
        if (!near_integer(p)) return {0.0, true};
        int m = k - static_cast<int>(std::round(p)) + 1;  // derivatives landing on s
        double binom = 1.0;  // C(k, p-1) * (p-1)!
        for (int i = 0; i < static_cast<int>(std::round(p)) - 1; ++i)
            binom *= static_cast<double>(k - i);
        double sm = 1.0;  // s^(m)(0) = (-1)^m (other-1)...(other-m)
        for (int i = 1; i <= m; ++i) sm *= -(other - i);
        double inward = binom * sm * std::exp(-log_beta_);
        // Left endpoint differentiates in x directly; the right endpoint picks
        // up (-1)^k from the t = 1-x substitution.
        return {left ? inward : (k % 2 == 0 ? inward : -inward), false};
    }

    double a_, b_, log_beta_;
    bool poly_path_ = false;
    std::vector<double> coeffs_;
    std::vector<double> anti_;
};

// ---------------------------------------------------------------------------
// Example (f): arcsine density, unbounded at both support endpoints

class ArcsineModel final : public DistributionModel {
  public:
    std::string name() const override { return "arcsine-f"; }
    Interval support() const override { return {0.0, 1.0}; }

    double pdf(double x) const override {
        if (!(0.0 < x && x < 1.0)) return 0.0;
        return 1.0 / (kPi * std::sqrt(x * (1.0 - x)));
    }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return (2.0 / kPi) * std::asin(std::sqrt(x));
    }
    double quantile(double u) const override {
        double s = std::sin(0.5 * kPi * u);
        return s * s;
    }
    int analytic_order() const override { return 2; }

    DerivativeValue one_sided_derivative(int k, double x, Side side) const override {
        check_order_nonnegative(k);
        bool inside = side == Side::right ? (0.0 <= x && x < 1.0) : (0.0 < x && x <= 1.0);
        if (!inside) return {0.0, false};
        if (x == 0.0 || x == 1.0) return {0.0, true};  // every order diverges
        double s = x * (1.0 - x);
        if (k == 0) return {pdf(x), false};
        if (k == 1) return {(2.0 * x - 1.0) / (2.0 * kPi * std::pow(s, 1.5)), false};
        if (k == 2) {
            double v = (1.0 / kPi) * (std::pow(s, -1.5) +
                                      0.75 * (2.0 * x - 1.0) * (2.0 * x - 1.0) *
                                          std::pow(s, -2.5));
            return {v, false};
        }
        return numeric_one_sided(k, x, side);
    }
};

// ---------------------------------------------------------------------------
// Piecewise-polynomial pdf

class PiecewisePolyModel final : public DistributionModel {
  public:
    PiecewisePolyModel(std::vector<double> breaks, std::vector<std::vector<double>> pieces)
        : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
        if (breaks_.size() < 2)
            fail(ErrorCode::BadSupport, "piecewise pdf needs at least two breakpoints");
        for (double b : breaks_)
            if (!std::isfinite(b))
                fail(ErrorCode::BadParameter, "breakpoints must be finite");
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (!(breaks_[i - 1] < breaks_[i]))
                fail(ErrorCode::BadParameter, "breakpoints must be strictly increasing");
        if (pieces_.size() != breaks_.size() - 1)
            fail(ErrorCode::BadParameter, "need exactly one coefficient list per piece");
        for (const auto& piece : pieces_) {
            if (piece.empty())
                fail(ErrorCode::BadParameter, "each piece needs at least one coefficient");
            for (double coef : piece)
                if (!std::isfinite(coef))
                    fail(ErrorCode::BadParameter, "coefficients must be finite");
        }

        // Dense-grid nonnegativity plus analytic mass accumulation.
        cum_.assign(pieces_.size() + 1, 0.0);
        anti_.reserve(pieces_.size());
        for (std::size_t j = 0; j < pieces_.size(); ++j) {
            double lo = breaks_[j], hi = breaks_[j + 1];
            for (int g = 0; g <= 512; ++g) {
                double x = lo + (hi - lo) * g / 512.0;
                if (poly_eval(pieces_[j], x) < -1e-9)
                    fail(ErrorCode::BadParameter, "pdf must be nonnegative on every piece");
            }
            anti_.push_back(poly_integrate(pieces_[j]));
            cum_[j + 1] = cum_[j] + poly_eval(anti_[j], hi) - poly_eval(anti_[j], lo);
            all_positive_ = all_positive_ && !zero_piece(pieces_[j]);
        }
        if (std::fabs(cum_.back() - 1.0) > 1e-9)
            fail(ErrorCode::BadParameter, "pdf mass must equal 1 within 1e-9");
    }

    std::string name() const override { return "piecewise-poly"; }
    Interval support() const override { return {breaks_.front(), breaks_.back()}; }

    double pdf(double x) const override {
        if (!(breaks_.front() < x && x < breaks_.back())) return 0.0;
        return poly_eval(pieces_[piece_right(x)], x);
    }
    double cdf(double x) const override {
        if (x <= breaks_.front()) return 0.0;
        if (x >= breaks_.back()) return 1.0;
        std::size_t j = piece_right(x);
        return std::clamp(cum_[j] + poly_eval(anti_[j], x) - poly_eval(anti_[j], breaks_[j]),
                          0.0, 1.0);
    }
    double quantile(double u) const override {
        if (u <= 0.0) return breaks_.front();
        if (u >= 1.0) return breaks_.back();
        std::size_t j = 0;
        while (j + 2 < cum_.size() && cum_[j + 1] <= u) ++j;
        return invert_monotone([this](double x) { return cdf(x); },
                               [this](double x) { return pdf(x); }, u, breaks_[j],
                               breaks_[j + 1]);
    }
    int analytic_order() const override { return 64; }
    bool strictly_increasing() const override { return all_positive_; }
    std::vector<double> seams() const override {
        return {breaks_.begin() + 1, breaks_.end() - 1};
    }

    DerivativeValue one_sided_derivative(int k, double x, Side side) const override {
        check_order_nonnegative(k);
        if (side == Side::right) {
            if (x < breaks_.front() || x >= breaks_.back()) return {0.0, false};
            return {poly_eval(poly_derive(pieces_[piece_right(x)], k), x), false};
        }
        if (x <= breaks_.front() || x > breaks_.back()) return {0.0, false};
        return {poly_eval(poly_derive(pieces_[piece_left(x)], k), x), false};
    }

  private:
    static bool zero_piece(const std::vector<double>& piece) {
        for (double coef : piece)
            if (coef != 0.0) return false;
        return true;
    }
    std::size_t piece_right(double x) const {  // piece covering [x, x+eps)
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
        return static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1;
    }
    std::size_t piece_left(double x) const {  // piece covering (x-eps, x]
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
        return static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1;
    }

    std::vector<double> breaks_;
    std::vector<std::vector<double>> pieces_;
    std::vector<std::vector<double>> anti_;
    std::vector<double> cum_;
    bool all_positive_ = true;
};

} // namespace

// ---------------------------------------------------------------------------
// Base-class helpers

double DistributionModel::sample(SplitMix64& rng) const {
    double u = rng.next_double();
    while (u == 0.0) u = rng.next_double();
    return quantile(u);
}

std::vector<double> DistributionModel::sample_n(int n, SplitMix64& rng) const {
    if (n < 0) fail(ErrorCode::BadSampleSize, "sample size must be nonnegative");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
}

DerivativeValue DistributionModel::numeric_one_sided(int k, double x, Side side) const {
    check_order_nonnegative(k);
    if (k > 2)
        fail(ErrorCode::BadParameter, "numeric derivative fallback supports k <= 2 only");
    double s = side == Side::right ? 1.0 : -1.0;
    double h = k == 2 ? 1e-4 : 1e-5;
    auto f = [&](int i) { return pdf(x + s * h * i); };
    if (k == 0) return {f(1), false};
    if (k == 1) return {(-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * s * h), false};
    return {(2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / (h * h), false};
}

DerivativeValue derivative_near(const DistributionModel& model, int k, double x, Side side,
                                double delta) {
    if (!(delta > 0.0)) fail(ErrorCode::BadParameter, "delta must be positive");
    double z = side == Side::right ? x + delta : x - delta;
    return model.one_sided_derivative(k, z, side);
}

// ---------------------------------------------------------------------------
// Factories

std::unique_ptr<DistributionModel> uniform_model(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a >= b)
        fail(ErrorCode::BadSupport, "uniform support needs finite a < b");
    return std::make_unique<UniformModel>(a, b);
}

std::unique_ptr<DistributionModel> sine_d_model(double r, SineDTail tail) {
    if (!(r > 1.0 && r < 2.0))
        fail(ErrorCode::BadParameter, "sine-d requires r in (1, 2)");
    return std::make_unique<SineDModel>(r, tail);
}

std::unique_ptr<DistributionModel> beta_model(double nu1, double nu2) {
    if (!std::isfinite(nu1) || !std::isfinite(nu2) || nu1 < 1.0 || nu2 < 1.0)
        fail(ErrorCode::BadParameter, "beta shape parameters must satisfy nu1, nu2 >= 1");
    return std::make_unique<BetaModel>(nu1, nu2);
}

std::unique_ptr<DistributionModel> piecewise_poly_model(
    std::vector<double> breakpoints, std::vector<std::vector<double>> pieces) {
    return std::make_unique<PiecewisePolyModel>(std::move(breakpoints), std::move(pieces));
}

std::unique_ptr<DistributionModel> piecewise_poly_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::BadConfig, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("breakpoints") || !doc.contains("pieces"))
        fail(ErrorCode::BadConfig, "expected an object with \"breakpoints\" and \"pieces\"");
    std::vector<double> breaks;
    std::vector<std::vector<double>> pieces;
    try {
        breaks = doc.at("breakpoints").get<std::vector<double>>();
        pieces = doc.at("pieces").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::BadConfig, std::string("wrong field shape: ") + e.what());
    }
    return piecewise_poly_model(std::move(breaks), std::move(pieces));
}

namespace {

// Parses "name(arg1,arg2,...)"; bare names yield an empty argument list.
bool parse_call(const std::string& text, std::string& head, std::vector<double>& args) {
    auto open = text.find('(');
    if (open == std::string::npos) {
        head = text;
        return true;
    }
    if (text.back() != ')') return false;
    head = text.substr(0, open);
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            args.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) return false;
        } catch (const std::exception&) {
            return false;
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return true;
}

} // namespace

std::unique_ptr<DistributionModel> named_example_model(const std::string& name) {
    std::string head;
    std::vector<double> args;
    if (!parse_call(name, head, args))
        fail(ErrorCode::BadParameter, "malformed model name: " + name);
    if (head == "linear-b" && args.empty()) return std::make_unique<LinearBModel>();
    if (head == "abs-sine-c" && args.empty()) return std::make_unique<AbsSineModel>();
    if (head == "arcsine-f" && args.empty()) return std::make_unique<ArcsineModel>();
    if (head == "sine-d" && args.size() == 1) return sine_d_model(args[0]);
    if (head == "beta" && args.size() == 2) return beta_model(args[0], args[1]);
    fail(ErrorCode::BadParameter, "unknown model name: " + name);
}

Interval transformed_proximity_map_check(const DistributionModel& model, double x,
                                         const Params& params) {
    if (!model.strictly_increasing())
        fail(ErrorCode::NotInvertible, "cdf has a flat stretch; N_F is undefined");
    Interval s = model.support();
    if (!(s.lo < x && x < s.hi))
        fail(ErrorCode::OutOfInterval, "x must lie inside the model support");
    static const Intervalization unit = intervalize({0.0, 1.0});
    double u = model.cdf(x);
    Interval region = proximity_region(u, unit, params);
    if (region.lo == region.hi) return {x, x};
    return {model.quantile(std::max(region.lo, 0.0)), model.quantile(std::min(region.hi, 1.0))};
}

} // namespace pcd
