#pragma once

#include <vector>

#include "pcd/digraph.hpp"

namespace pcd {

// Gamma_1 region of a bounded cell: the locus where a single vertex dominates
// the whole cell. Two half-open pieces hugging the center M from either side:
// (lo_left, M] and [M, hi_right). A piece is empty when its bounds cross.
struct Gamma1Region {
    double center = 0.0;
    Interval left;   // (left.lo, M]
    Interval right;  // [M, right.hi)
    bool left_nonempty = false;
    bool right_nonempty = false;

    bool empty() const { return !left_nonempty && !right_nonempty; }
    // Closed-at-M membership test matching the piece conventions above.
    bool contains(double z) const {
        return (left_nonempty && left.lo < z && z <= center) ||
               (right_nonempty && center <= z && z < right.hi);
    }
};

// points: the cell's vertices (any order, all strictly inside `cell`).
// The center is derived from params.c. Errors: EmptyCell when points is
// empty, BadParameter for an unbounded cell, OutOfInterval when a point falls
// outside the cell.
Gamma1Region gamma1_region(const std::vector<double>& points, Interval cell,
                           const Params& params);

struct CellDomination {
    int cell = 0;        // index into the intervalization
    int count = 0;       // vertices in the cell
    int gamma = 0;       // contribution: ends 1, middles 1 or 2
    std::vector<double> witness;  // dominating vertices for this cell
};

struct DominationResult {
    int gamma = 0;
    std::vector<CellDomination> cells;  // occupied cells only, ascending
    std::vector<double> witness;        // concatenation, ascending

    bool witness_dominates(const CatchDigraph& g) const;
};

// Exact domination number in O(n log n) via the per-cell characterization.
DominationResult domination_number(const CatchDigraph& g);

// Same computation straight from coordinates, skipping arc materialization.
// Errors as build_digraph: CoincidentPoint on duplicates or reference hits,
// BadParameter on non-finite x, plus anything intervalize() raises.
DominationResult domination_number(const std::vector<double>& x, const std::vector<double>& y,
                                   const Params& params);

// r == 1 specialization: gamma counts occupied cell-sides. Errors:
// WrongSpecialization unless params.r == 1.
int domination_number_r1(const std::vector<double>& x, const std::vector<double>& y,
                         const Params& params);

// Independent oracle: exhaustive subset search over the materialized arcs,
// lexicographically smallest witness among minimum dominating sets.
// Errors: OracleTooLarge for n > 16.
DominationResult brute_force_domination(const CatchDigraph& g);

} // namespace pcd
