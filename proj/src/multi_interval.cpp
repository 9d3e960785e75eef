#include "pcd/multi_interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "pcd/error.hpp"
#include "pcd/exact_uniform.hpp"
#include "pcd/general_f.hpp"
#include "pcd/rng.hpp"

namespace pcd {

namespace {

// Past this the composition enumeration stops being "instant" and the caller
// should be sampling instead of enumerating.
constexpr int kEnumerationCap = 24;

// Fixed seed and replicate count for the Y-averaging fallback. The seed is
// baked in so repeated calls are bit-identical.
constexpr std::uint64_t kYAverageSeed = 0x6d756c7469593031ULL;
constexpr int kYAverageReps = 20000;

constexpr double kAtomDust = 1e-15;

void check_counts(int n, int m) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need at least one X point");
    if (m < 1) fail(ErrorCode::BadParameter, "need at least one Y point");
    if (n + m > kEnumerationCap) {
        std::ostringstream os;
        os << "n + m = " << n + m << " exceeds the exact-enumeration cap of "
           << kEnumerationCap;
        fail(ErrorCode::EnumerationTooLarge, os.str());
    }
}

// C(a, b) as an exact double; every intermediate here stays an integer well
// below 2^53 for the sample sizes the cap admits.
double binom(int a, int b) {
    if (b < 0 || b > a) return 0.0;
    b = std::min(b, a - b);
    double v = 1.0;
    for (int i = 1; i <= b; ++i) v = v * (a - b + i) / i;
    return std::round(v);
}

bool uniform_family(const DistributionModel& model) {
    return model.name().rfind("uniform(", 0) == 0;
}

// P(gamma = 2) for k uniform points on a cell, k = 0..n. Restricting a
// uniform to any cell and rescaling gives back a uniform, so one table
// serves every cell.
std::vector<double> uniform_p_table(int n, const Params& params) {
    std::vector<double> table(n + 1, 0.0);
    for (int k = 2; k <= n; ++k) table[k] = p_exact_full(k, params).value;
    return table;
}

// X restricted to (a, b) and rescaled onto the unit cell. Derivatives pick up
// one factor of the width per order plus one from the density rescale.
class CellRestrictedModel final : public DistributionModel {
  public:
    CellRestrictedModel(const DistributionModel& base, double a, double b)
        : base_(base), a_(a), w_(b - a), fa_(base.cdf(a)), mass_(base.cdf(b) - fa_) {
        if (!(mass_ > 0.0)) fail(ErrorCode::BadParameter, "cell carries no X mass");
    }

    std::string name() const override {
        std::ostringstream os;
        os << "cell(" << base_.name() << "," << a_ << "," << a_ + w_ << ")";
        return os.str();
    }
    Interval support() const override { return {0.0, 1.0}; }
    double pdf(double t) const override {
        if (!(0.0 < t && t < 1.0)) return 0.0;
        return base_.pdf(a_ + t * w_) * w_ / mass_;
    }
    double cdf(double t) const override {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return std::clamp((base_.cdf(a_ + t * w_) - fa_) / mass_, 0.0, 1.0);
    }
    double quantile(double u) const override {
        const double x = base_.quantile(fa_ + std::clamp(u, 0.0, 1.0) * mass_);
        return std::clamp((x - a_) / w_, 0.0, 1.0);
    }
    DerivativeValue one_sided_derivative(int k, double t, Side side) const override {
        DerivativeValue d = base_.one_sided_derivative(k, a_ + t * w_, side);
        d.value *= std::pow(w_, k + 1) / mass_;
        return d;
    }
    int analytic_order() const override { return base_.analytic_order(); }
    bool strictly_increasing() const override { return base_.strictly_increasing(); }
    std::vector<double> seams() const override {
        std::vector<double> out;
        for (double s : base_.seams())
            if (a_ < s && s < a_ + w_) out.push_back((s - a_) / w_);
        return out;
    }

  private:
    const DistributionModel& base_;
    double a_, w_, fa_, mass_;
};

// Per-cell p table for an interior cell (a, b). Zero-mass cells can never be
// occupied, so their table is never consulted and zeros are fine.
std::vector<double> cell_p_table(const DistributionModel& x_model, double a, double b, int n,
                                 const Params& params, const QuadratureSpec& spec) {
    std::vector<double> table(n + 1, 0.0);
    if (n < 2 || !(x_model.cdf(b) - x_model.cdf(a) > 0.0)) return table;
    const CellRestrictedModel cell(x_model, a, b);
    for (int k = 2; k <= n; ++k) table[k] = p_numeric_general(cell, params, k, spec);
    return table;
}

// What one cell adds to gamma, as a distribution over {0, 1, 2}. End cells
// add 1 exactly when occupied; an interior cell with k points adds 1 plus a
// Bernoulli(p_k).
struct CellDist {
    double q0 = 0.0, q1 = 0.0, q2 = 0.0;
};

CellDist end_cell(int k) { return k == 0 ? CellDist{1.0, 0.0, 0.0} : CellDist{0.0, 1.0, 0.0}; }

CellDist interior_cell(int k, double pk) {
    if (k == 0) return {1.0, 0.0, 0.0};
    if (k == 1) return {0.0, 1.0, 0.0};
    return {0.0, 1.0 - pk, pk};
}

// The double sum over cell counts and per-cell contributions, folded into a
// dense pmf over q = 0..2m. Each X-count vector is weighted either by the
// flat interleaving probability 1/C(n+m, m) (uniform/uniform case) or by the
// multinomial law of the given cell masses; the inner sum over contribution
// vectors is carried as a running convolution.
std::vector<double> conditional_pmf(int n, int m, const std::vector<double>& masses,
                                    const std::vector<const std::vector<double>*>& tables,
                                    bool flat_weights) {
    const int cells = m + 1;
    std::vector<double> pmf(2 * m + 1, 0.0);
    const double flat_w = 1.0 / binom(n + m, m);
    std::vector<double> conv, next;
    CompositionSpace space(n, cells, n);
    space.for_each([&](const std::vector<int>& counts) {
        double w = flat_w;
        if (!flat_weights) {
            w = 1.0;
            int used = 0;
            for (int i = 0; i < cells && w > 0.0; ++i) {
                if (counts[i] == 0) continue;
                if (!(masses[i] > 0.0)) {
                    w = 0.0;
                    break;
                }
                used += counts[i];
                w *= binom(used, counts[i]) * std::pow(masses[i], counts[i]);
            }
            if (w <= 0.0) return;
        }
        conv.assign(1, 1.0);
        for (int i = 0; i < cells; ++i) {
            const CellDist d = (i == 0 || i == m)
                                   ? end_cell(counts[i])
                                   : interior_cell(counts[i], (*tables[i])[counts[i]]);
            next.assign(conv.size() + 2, 0.0);
            for (std::size_t q = 0; q < conv.size(); ++q) {
                if (conv[q] == 0.0) continue;
                next[q] += conv[q] * d.q0;
                next[q + 1] += conv[q] * d.q1;
                next[q + 2] += conv[q] * d.q2;
            }
            conv.swap(next);
        }
        const std::size_t top = std::min(conv.size(), pmf.size());
        for (std::size_t q = 0; q < top; ++q) pmf[q] += w * conv[q];
    });
    return pmf;
}

GammaPmf assemble(const std::vector<double>& dense, int n, int m, const Params& params) {
    GammaPmf out;
    out.n = n;
    out.m = m;
    out.params = params;
    for (std::size_t q = 0; q < dense.size(); ++q) {
        if (dense[q] > kAtomDust) {
            out.support.push_back(static_cast<int>(q));
            out.probability.push_back(dense[q]);
        }
    }
    return out;
}

// Cell boundaries lo, y_1, ..., y_m, hi for pinned Y points; validates order
// and placement against the X support.
std::vector<double> cell_boundaries(const Interval& sup, std::vector<double> y_points) {
    std::sort(y_points.begin(), y_points.end());
    for (std::size_t i = 0; i + 1 < y_points.size(); ++i)
        if (y_points[i] == y_points[i + 1])
            fail(ErrorCode::CoincidentPoint, "pinned Y points must be distinct");
    for (double y : y_points)
        if (!(sup.lo < y && y < sup.hi))
            fail(ErrorCode::BadParameter, "pinned Y point lies outside the open X support");
    std::vector<double> bounds;
    bounds.reserve(y_points.size() + 2);
    bounds.push_back(sup.lo);
    bounds.insert(bounds.end(), y_points.begin(), y_points.end());
    bounds.push_back(sup.hi);
    return bounds;
}

std::vector<double> cell_masses(const DistributionModel& x_model,
                                const std::vector<double>& bounds) {
    std::vector<double> masses(bounds.size() - 1);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
        masses[i] = x_model.cdf(bounds[i + 1]) - x_model.cdf(bounds[i]);
    return masses;
}

// Interior-cell p tables for the given boundaries. Owns the storage; the
// returned pointer vector is what conditional_pmf consumes (end entries point
// at a shared zero table that is never read).
struct CellTables {
    std::vector<std::vector<double>> storage;
    std::vector<const std::vector<double>*> view;
};

CellTables build_tables(const DistributionModel& x_model, const std::vector<double>& bounds,
                        int n, const Params& params, const QuadratureSpec& spec) {
    const int m = static_cast<int>(bounds.size()) - 2;
    CellTables tables;
    tables.view.assign(m + 1, nullptr);
    if (uniform_family(x_model)) {
        tables.storage.push_back(uniform_p_table(n, params));
        for (int i = 0; i <= m; ++i) tables.view[i] = &tables.storage[0];
        return tables;
    }
    tables.storage.reserve(m + 1);
    tables.storage.emplace_back(n + 1, 0.0);  // shared zero table for the end cells
    tables.view[0] = tables.view[m] = &tables.storage[0];
    for (int i = 1; i < m; ++i) {
        tables.storage.push_back(cell_p_table(x_model, bounds[i], bounds[i + 1], n, params, spec));
        tables.view[i] = &tables.storage.back();
    }
    return tables;
}

// Adaptive integration of fn over (a, b) split at the given interior cuts, so
// density seams never land inside a panel.
double integrate_split(const std::function<double(double)>& fn, double a, double b,
                       const std::vector<double>& cuts, const QuadratureSpec& spec) {
    std::vector<double> edges{a, b};
    for (double s : cuts)
        if (a < s && s < b) edges.push_back(s);
    std::sort(edges.begin(), edges.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] - edges[i] > 1e-300)) continue;
        total += integrate(fn, edges[i], edges[i + 1], spec);
    }
    return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// CompositionSpace

CompositionSpace::CompositionSpace(int total, int parts, int max_element)
    : total_(total), parts_(parts), max_element_(max_element) {
    if (total < 0 || parts < 1 || max_element < 0)
        fail(ErrorCode::BadParameter,
             "composition space needs total >= 0, parts >= 1, max_element >= 0");
}

void CompositionSpace::for_each(const std::function<void(const std::vector<int>&)>& fn) const {
    std::vector<int> buf(parts_, 0);
    std::function<void(int, int)> descend = [&](int idx, int remaining) {
        if (idx == parts_ - 1) {
            if (remaining <= max_element_) {
                buf[idx] = remaining;
                fn(buf);
            }
            return;
        }
        const int top = std::min(remaining, max_element_);
        for (int v = 0; v <= top; ++v) {
            buf[idx] = v;
            descend(idx + 1, remaining - v);
        }
    };
    descend(0, total_);
}

long long CompositionSpace::count() const {
    // Deliberately a different recursion than for_each: ways[s] after i parts
    // is the number of prefixes summing to s.
    std::vector<long long> ways(total_ + 1, 0);
    ways[0] = 1;
    for (int i = 0; i < parts_; ++i) {
        std::vector<long long> next(total_ + 1, 0);
        for (int s = 0; s <= total_; ++s) {
            if (ways[s] == 0) continue;
            for (int v = 0; v <= max_element_ && s + v <= total_; ++v) next[s + v] += ways[s];
        }
        ways.swap(next);
    }
    return ways[total_];
}

// ---------------------------------------------------------------------------
// GammaPmf

double GammaPmf::mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) acc += support[i] * probability[i];
    return acc;
}

double GammaPmf::prob_of(int q) const {
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i] == q) return probability[i];
    return 0.0;
}

// ---------------------------------------------------------------------------
// Exact pmfs

GammaPmf pmf_uniform_multi(int n, int m, const Params& params) {
    check_counts(n, m);
    const std::vector<double> table = uniform_p_table(n, params);
    const std::vector<const std::vector<double>*> tables(m + 1, &table);
    const std::vector<double> no_masses;
    return assemble(conditional_pmf(n, m, no_masses, tables, /*flat_weights=*/true), n, m,
                    params);
}

GammaPmf pmf_fixed_y(const DistributionModel& x_model, std::vector<double> y_points, int n,
                     const Params& params, const QuadratureSpec& spec) {
    const int m = static_cast<int>(y_points.size());
    check_counts(n, m);
    const std::vector<double> bounds = cell_boundaries(x_model.support(), std::move(y_points));
    const std::vector<double> masses = cell_masses(x_model, bounds);
    const CellTables tables = build_tables(x_model, bounds, n, params, spec);
    return assemble(conditional_pmf(n, m, masses, tables.view, /*flat_weights=*/false), n, m,
                    params);
}

GammaPmf pmf_general_multi(const DistributionModel& x_model, const DistributionModel& y_model,
                           int n, int m, const Params& params, const QuadratureSpec& spec) {
    check_counts(n, m);
    const Interval sx = x_model.support();
    const Interval sy = y_model.support();
    if (sx.lo != sy.lo || sx.hi != sy.hi)
        fail(ErrorCode::UnsupportedSupport, "X and Y models must share one support interval");
    const bool unif_x = uniform_family(x_model);

    if (m > 3) {
        // Average the exact conditional pmf over Monte Carlo draws of the
        // Y-order statistics. Interior-cell laws by quadrature per draw would
        // be ruinous, so this path insists on uniform cells.
        if (!unif_x)
            fail(ErrorCode::UnsupportedSupport,
                 "Y-averaged pmf beyond m = 3 supports uniform X only");
        const std::vector<double> table = uniform_p_table(n, params);
        const std::vector<const std::vector<double>*> tables(m + 1, &table);
        std::vector<double> dense(2 * m + 1, 0.0);
        std::vector<double> bounds(m + 2);
        bounds.front() = sx.lo;
        bounds.back() = sx.hi;
        for (int rep = 0; rep < kYAverageReps; ++rep) {
            SplitMix64 rng = SplitMix64::stream(kYAverageSeed, static_cast<std::uint64_t>(rep));
            std::vector<double> y = y_model.sample_n(m, rng);
            std::sort(y.begin(), y.end());
            std::copy(y.begin(), y.end(), bounds.begin() + 1);
            const std::vector<double> masses = cell_masses(x_model, bounds);
            const std::vector<double> cond =
                conditional_pmf(n, m, masses, tables, /*flat_weights=*/false);
            for (std::size_t q = 0; q < dense.size(); ++q)
                dense[q] += cond[q] / kYAverageReps;
        }
        return assemble(dense, n, m, params);
    }

    // m <= 3: integrate the ordered Y-vector out with nested quadrature, one
    // scalar integral per atom. The ordered density is m! * prod f_Y on the
    // simplex lo < y_1 < ... < y_m < hi.
    const std::vector<double> uniform_table =
        unif_x ? uniform_p_table(n, params) : std::vector<double>{};
    const std::vector<double> y_cuts = y_model.seams();
    const double mfact = m == 1 ? 1.0 : (m == 2 ? 2.0 : 6.0);
    std::vector<double> dense(2 * m + 1, 0.0);
    std::vector<double> bounds(m + 2);
    bounds.front() = sx.lo;
    bounds.back() = sx.hi;

    // Outer levels run one decade looser per level so their error estimates
    // sit safely above the noise floor of the integrals nested inside them.
    std::vector<QuadratureSpec> level_spec(m, spec);
    for (int d = 0; d < m; ++d) {
        const double loosen = std::pow(10.0, m - 1 - d);
        level_spec[d].rel_tol = spec.rel_tol * loosen;
        level_spec[d].abs_tol = spec.abs_tol * loosen;
    }

    auto conditional_atom = [&](int q) {
        const std::vector<double> masses = cell_masses(x_model, bounds);
        if (unif_x) {
            const std::vector<const std::vector<double>*> tables(m + 1, &uniform_table);
            return conditional_pmf(n, m, masses, tables, /*flat_weights=*/false)[q];
        }
        const CellTables tables = build_tables(x_model, bounds, n, params, spec);
        return conditional_pmf(n, m, masses, tables.view, /*flat_weights=*/false)[q];
    };

    for (int q = 1; q <= 2 * m; ++q) {
        std::function<double(int, double)> level = [&](int depth, double lower) -> double {
            auto integrand = [&](double y) {
                bounds[depth + 1] = y;
                const double fy = y_model.pdf(y);
                if (fy == 0.0) return 0.0;
                if (depth == m - 1) return fy * mfact * conditional_atom(q);
                return fy * level(depth + 1, y);
            };
            return integrate_split(integrand, lower, sx.hi, y_cuts, level_spec[depth]);
        };
        dense[q] = level(0, sx.lo);
    }
    return assemble(dense, n, m, params);
}

// ---------------------------------------------------------------------------
// Expected values

double expected_gamma_uniform(int n, int m, const Params& params) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need at least one X point");
    if (m < 1) fail(ErrorCode::BadParameter, "need at least one Y point");
    const std::vector<double> table = uniform_p_table(n, params);
    const double total = binom(n + m, m);
    double interior = 0.0;
    for (int k = 1; k <= n; ++k)
        interior += binom(n - k + m - 1, m - 1) / total * (1.0 + table[k]);
    return 2.0 * n / (n + m) + (m - 1) * interior;
}

double expected_gamma_fixed_y(const DistributionModel& x_model, std::vector<double> y_points,
                              int n, const Params& params, const QuadratureSpec& spec) {
    const int m = static_cast<int>(y_points.size());
    if (n < 1) fail(ErrorCode::BadSampleSize, "need at least one X point");
    if (m < 1) fail(ErrorCode::BadParameter, "need at least one Y point");
    const std::vector<double> bounds = cell_boundaries(x_model.support(), std::move(y_points));
    const std::vector<double> masses = cell_masses(x_model, bounds);
    double eg = (1.0 - std::pow(1.0 - masses.front(), n)) +
                (1.0 - std::pow(1.0 - masses.back(), n));
    for (int i = 1; i < m; ++i) {
        if (!(masses[i] > 0.0)) continue;
        const std::vector<double> table =
            cell_p_table(x_model, bounds[i], bounds[i + 1], n, params, spec);
        for (int k = 1; k <= n; ++k)
            eg += binom(n, k) * std::pow(masses[i], k) * std::pow(1.0 - masses[i], n - k) *
                  (1.0 + table[k]);
    }
    return eg;
}

// ---------------------------------------------------------------------------
// Limit laws

MultiAsymptoticResult asymptotic_multi(int m, const Params& params,
                                       const DistributionModel& model) {
    if (m < 1) fail(ErrorCode::BadParameter, "need at least one Y point");
    MultiAsymptoticResult out;
    const double c = params.c;
    if (c == 0.0 || c == 1.0 || params.r_is_infinite()) {
        out.kind = MultiLawKind::point_mass;
        out.point = m + 1;
        return out;
    }
    const double tau = std::max(c, 1.0 - c);
    const double rt = params.r * tau;
    if (std::fabs(rt - 1.0) > 1e-12) {
        out.kind = MultiLawKind::point_mass;
        out.point = rt > 1.0 ? m + 1 : 2 * m;
        return out;
    }
    // Critical expansion: each of the m - 1 interior cells keeps a second
    // dominator with the single-cell limiting probability.
    double p = 0.0;
    if (uniform_family(model)) {
        p = asymptotic_uniform(params).limit_p;
    } else if (params.r == 2.0 && c == 0.5) {
        p = asymptotic_cccd(model).limit_p;
    } else if (c < 0.5) {
        p = asymptotic_general_left(model, params.r).limit_p;
    } else {
        p = asymptotic_general_right(model, params.r).limit_p;
    }
    if (m == 1) {
        out.kind = MultiLawKind::point_mass;
        out.point = 2;
        return out;
    }
    out.kind = MultiLawKind::shifted_binomial;
    out.base = m + 1;
    out.trials = m - 1;
    out.p = p;
    return out;
}

int gamma_limit_fixed_n(int n) {
    if (n < 1) fail(ErrorCode::BadSampleSize, "need at least one X point");
    return n;
}

}  // namespace pcd
