#pragma once

#include <cstddef>
#include <vector>

#include "pcd/interval.hpp"

namespace pcd {

// Proximity catch digraph: vertex i catches j (arc i -> j) iff x_j lies in
// N(x_i, r, c). Vertices are stored in ascending coordinate order; arcs only
// ever connect vertices in the same cell of the intervalization.
struct CatchDigraph {
    Intervalization ref;
    Params params;
    std::vector<double> x;              // ascending
    std::vector<Interval> region;       // N(x_i) per vertex
    std::vector<int> cell_of;           // cell index per vertex
    std::vector<std::vector<int>> out;  // out-neighbors, ascending
    std::size_t arc_count = 0;

    int order() const { return static_cast<int>(x.size()); }
};

// Errors: CoincidentPoint on duplicate x or x hitting a reference point,
// BadParameter on non-finite x, plus anything intervalize() raises.
CatchDigraph build_digraph(std::vector<double> x, const std::vector<double>& y,
                           const Params& params);

} // namespace pcd
