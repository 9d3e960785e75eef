#include "pcd/digraph.hpp"

#include <algorithm>

namespace pcd {

CatchDigraph build_digraph(std::vector<double> x, const std::vector<double>& y,
                           const Params& params) {
    for (double v : x)
        if (!std::isfinite(v)) fail(ErrorCode::BadParameter, "data points must be finite");
    std::sort(x.begin(), x.end());
    if (std::adjacent_find(x.begin(), x.end()) != x.end())
        fail(ErrorCode::CoincidentPoint, "duplicate data point");

    CatchDigraph g{intervalize(y), params, std::move(x), {}, {}, {}, 0};
    const int n = g.order();
    g.region.reserve(n);
    g.cell_of.reserve(n);
    g.out.assign(n, {});

    for (int i = 0; i < n; ++i) {
        const int loc = g.ref.locate(g.x[i]);
        if (loc < 0) fail(ErrorCode::CoincidentPoint, "data point coincides with a reference point");
        g.cell_of.push_back(loc);
        g.region.push_back(proximity_region(g.x[i], g.ref, params));
    }

    // Arcs stay within a cell, so scan the sorted points once per vertex using
    // the open-interval region bounds.
    for (int i = 0; i < n; ++i) {
        const Interval reg = g.region[i];
        auto lo = std::upper_bound(g.x.begin(), g.x.end(), reg.lo);
        auto hi = std::lower_bound(g.x.begin(), g.x.end(), reg.hi);
        for (auto it = lo; it != hi; ++it) {
            const int j = static_cast<int>(it - g.x.begin());
            if (j == i) continue;
            g.out[i].push_back(j);
            ++g.arc_count;
        }
    }
    return g;
}

} // namespace pcd
