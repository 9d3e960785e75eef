#include "pcd/domination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace pcd {

Gamma1Region gamma1_region(const std::vector<double>& points, Interval cell,
                           const Params& params) {
    if (points.empty()) fail(ErrorCode::EmptyCell, "gamma1 region needs a nonempty cell");
    if (!cell.bounded()) fail(ErrorCode::BadParameter, "gamma1 region is defined on bounded cells");
    double mn = points.front(), mx = points.front();
    for (double p : points) {
        if (!cell.contains_open(p)) fail(ErrorCode::OutOfInterval, "point outside its cell");
        mn = std::min(mn, p);
        mx = std::max(mx, p);
    }
    Gamma1Region g;
    g.center = cell.lo + params.c * (cell.hi - cell.lo);
    if (params.r_is_infinite()) {
        g.left = {cell.lo, g.center};
        g.right = {g.center, cell.hi};
    } else {
        g.left = {cell.lo + (mx - cell.lo) / params.r, g.center};
        g.right = {g.center, cell.hi - (cell.hi - mn) / params.r};
    }
    g.left_nonempty = g.left.lo < g.center;
    g.right_nonempty = g.center < g.right.hi;
    return g;
}

namespace {

struct CellView {
    const double* first;
    const double* last;  // one past the end
    int count() const { return static_cast<int>(last - first); }
};

// Smallest point strictly greater than v, if any.
std::optional<double> first_above(const CellView& cv, double v) {
    const double* it = std::upper_bound(cv.first, cv.last, v);
    if (it == cv.last) return std::nullopt;
    return *it;
}

CellDomination solve_end_cell(const CellView& cv, int cell, bool left_end) {
    CellDomination out;
    out.cell = cell;
    out.count = cv.count();
    out.gamma = 1;
    // The point farthest from the adjacent reference dominates the cell: its
    // region stretches all the way back to the reference.
    out.witness.push_back(left_end ? *cv.first : *(cv.last - 1));
    return out;
}

CellDomination solve_middle_cell(const CellView& cv, int cell, Interval cl, const Params& params) {
    CellDomination out;
    out.cell = cell;
    out.count = cv.count();

    const double mn = *cv.first;
    const double mx = *(cv.last - 1);
    if (params.r_is_infinite()) {
        out.gamma = 1;  // every vertex catches the whole cell
        out.witness.push_back(mn);
        return out;
    }

    const double center = cl.lo + params.c * (cl.hi - cl.lo);
    const double* split = std::upper_bound(cv.first, cv.last, center);  // ties go left
    const int n_left = static_cast<int>(split - cv.first);
    const int n_right = out.count - n_left;
    const double r = params.r;
    const double thr_left = cl.lo + (mx - cl.lo) / r;    // left-branch vertex above this covers mx
    const double thr_right = cl.hi - (cl.hi - mn) / r;   // right-branch vertex below this covers mn

    if (n_right == 0) {
        out.gamma = 1;
        auto w = first_above(cv, thr_left);
        out.witness.push_back(w ? *w : mx);  // r == 1 falls back to self-domination by the max
        return out;
    }
    if (n_left == 0) {
        out.gamma = 1;
        out.witness.push_back(mn);  // mn covers everything above it (or itself at r == 1)
        return out;
    }

    std::optional<double> left_dom;
    if (auto w = first_above(cv, thr_left); w && *w <= center) left_dom = *w;
    const double xp = *split;  // smallest right-branch vertex
    const bool right_dom = xp < thr_right;

    if (left_dom) {
        out.gamma = 1;
        out.witness.push_back(*left_dom);
    } else if (right_dom) {
        out.gamma = 1;
        out.witness.push_back(xp);
    } else {
        out.gamma = 2;
        out.witness.push_back(*(split - 1));  // closest pair straddling the center
        out.witness.push_back(xp);
    }
    return out;
}

// Shared cell sweep: xs ascending, cells[i] the cell index of xs[i].
DominationResult solve_sorted(const std::vector<double>& xs, const std::vector<int>& cells,
                              const Intervalization& ref, const Params& params) {
    DominationResult res;
    const int n = static_cast<int>(xs.size());
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && cells[j] == cells[i]) ++j;
        const CellView cv{xs.data() + i, xs.data() + j};
        const int cell = cells[i];
        CellDomination cd = ref.is_end_cell(cell)
                                ? solve_end_cell(cv, cell, cell == 0)
                                : solve_middle_cell(cv, cell, ref.cell(cell), params);
        res.gamma += cd.gamma;
        res.witness.insert(res.witness.end(), cd.witness.begin(), cd.witness.end());
        res.cells.push_back(std::move(cd));
        i = j;
    }
    return res;
}

} // namespace

DominationResult domination_number(const CatchDigraph& g) {
    return solve_sorted(g.x, g.cell_of, g.ref, g.params);
}

DominationResult domination_number(const std::vector<double>& x, const std::vector<double>& y,
                                   const Params& params) {
    std::vector<double> xs(x);
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        fail(ErrorCode::CoincidentPoint, "duplicate data point");
    const Intervalization ref = intervalize(y);
    std::vector<int> cells(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i])) fail(ErrorCode::BadParameter, "data point must be finite");
        cells[i] = ref.locate(xs[i]);
        if (cells[i] < 0)
            fail(ErrorCode::CoincidentPoint, "data point coincides with a reference point");
    }
    return solve_sorted(xs, cells, ref, params);
}

int domination_number_r1(const std::vector<double>& x, const std::vector<double>& y,
                         const Params& params) {
    if (params.r_is_infinite() || params.r != 1.0)
        fail(ErrorCode::WrongSpecialization, "domination_number_r1 requires r == 1");
    std::vector<double> xs(x);
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        fail(ErrorCode::CoincidentPoint, "duplicate data point");
    const Intervalization ref = intervalize(y);

    // At r == 1 each occupied cell side needs (and gets) its own dominator.
    int gamma = 0;
    std::size_t i = 0;
    while (i < xs.size()) {
        const int cell = ref.locate(xs[i]);
        if (cell < 0) fail(ErrorCode::CoincidentPoint, "data point coincides with a reference point");
        std::size_t j = i;
        while (j < xs.size() && ref.locate(xs[j]) == cell) ++j;
        if (ref.is_end_cell(cell)) {
            gamma += 1;
        } else {
            const double center = ref.center(cell, params.c);
            const bool left = xs[i] <= center;
            const bool right = xs[j - 1] > center;
            gamma += (left ? 1 : 0) + (right ? 1 : 0);
        }
        i = j;
    }
    return gamma;
}

DominationResult brute_force_domination(const CatchDigraph& g) {
    const int n = g.order();
    if (n > 16) fail(ErrorCode::OracleTooLarge, "exhaustive search capped at 16 vertices");
    DominationResult res;
    if (n == 0) return res;

    std::vector<std::uint32_t> cover(n);
    for (int i = 0; i < n; ++i) {
        std::uint32_t m = 1u << i;
        for (int j : g.out[i]) m |= 1u << j;
        cover[i] = m;
    }
    const std::uint32_t full = (1u << n) - 1u;

    std::vector<int> idx;
    for (int k = 1; k <= n; ++k) {
        idx.resize(k);
        for (int t = 0; t < k; ++t) idx[t] = t;
        while (true) {
            std::uint32_t m = 0;
            for (int t : idx) m |= cover[t];
            if (m == full) {
                res.gamma = k;
                for (int t : idx) res.witness.push_back(g.x[t]);
                // Per-cell breakdown: count witnesses per cell.
                int i = 0;
                while (i < n) {
                    int j = i;
                    while (j < n && g.cell_of[j] == g.cell_of[i]) ++j;
                    CellDomination cd;
                    cd.cell = g.cell_of[i];
                    cd.count = j - i;
                    for (int t : idx)
                        if (t >= i && t < j) {
                            ++cd.gamma;
                            cd.witness.push_back(g.x[t]);
                        }
                    res.cells.push_back(std::move(cd));
                    i = j;
                }
                return res;
            }
            // next lexicographic k-combination
            int t = k - 1;
            while (t >= 0 && idx[t] == n - k + t) --t;
            if (t < 0) break;
            ++idx[t];
            for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
        }
    }
    return res;  // unreachable: the full vertex set always dominates
}

bool DominationResult::witness_dominates(const CatchDigraph& g) const {
    const int n = g.order();
    std::vector<char> covered(n, 0);
    for (double w : witness) {
        auto it = std::lower_bound(g.x.begin(), g.x.end(), w);
        if (it == g.x.end() || *it != w) return false;  // witness must be a vertex
        const int i = static_cast<int>(it - g.x.begin());
        covered[i] = 1;
        for (int j : g.out[i]) covered[j] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (!covered[i]) return false;
    return true;
}

} // namespace pcd
