#pragma once

#include <vector>

#include "pcd/params.hpp"

namespace pcd {

// Open interval (lo, hi); lo/hi may be -inf/+inf for the end cells.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    double length() const { return hi - lo; }
    bool contains_open(double x) const { return lo < x && x < hi; }
};

// Partition of the line induced by the sorted reference points y_1 < ... < y_m:
// cell 0 = (-inf, y_1), cell i = (y_i, y_{i+1}) for 0 < i < m, cell m = (y_m, +inf).
class Intervalization {
  public:
    explicit Intervalization(std::vector<double> sorted_y) : y_(std::move(sorted_y)) {}

    const std::vector<double>& y() const { return y_; }
    int cell_count() const { return static_cast<int>(y_.size()) + 1; }
    bool is_end_cell(int i) const { return i == 0 || i == static_cast<int>(y_.size()); }

    Interval cell(int i) const;

    // M_{c,i} = y_i + c (y_{i+1} - y_i); only defined for middle (bounded) cells.
    double center(int i, double c) const;

    // Cell index containing x, or -(j+1) if x coincides with reference y_j.
    int locate(double x) const;

  private:
    std::vector<double> y_;
};

// Validates and sorts the reference points. Errors: EmptyReference when y is
// empty, DegenerateReference on duplicates, BadParameter on non-finite input.
Intervalization intervalize(std::vector<double> y);

// Proximity region N(x, r, c) as an open interval; collapses to the singleton
// {x} (lo == hi == x) when x coincides with a reference point.
Interval proximity_region(double x, const Intervalization& ref, const Params& params);

} // namespace pcd
