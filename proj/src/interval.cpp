#include "pcd/interval.hpp"

#include <algorithm>
#include <limits>

namespace pcd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Interval Intervalization::cell(int i) const {
    const int m = static_cast<int>(y_.size());
    if (i < 0 || i > m) fail(ErrorCode::BadParameter, "cell index out of range");
    const double lo = (i == 0) ? -kInf : y_[i - 1];
    const double hi = (i == m) ? kInf : y_[i];
    return {lo, hi};
}

double Intervalization::center(int i, double c) const {
    if (is_end_cell(i)) fail(ErrorCode::BadParameter, "end cells have no center");
    const Interval cl = cell(i);
    return cl.lo + c * (cl.hi - cl.lo);
}

int Intervalization::locate(double x) const {
    auto it = std::lower_bound(y_.begin(), y_.end(), x);
    if (it != y_.end() && *it == x) return -static_cast<int>(it - y_.begin()) - 1;
    return static_cast<int>(it - y_.begin());
}

Intervalization intervalize(std::vector<double> y) {
    if (y.empty()) fail(ErrorCode::EmptyReference, "need at least one reference point");
    for (double v : y)
        if (!std::isfinite(v)) fail(ErrorCode::BadParameter, "reference points must be finite");
    std::sort(y.begin(), y.end());
    if (std::adjacent_find(y.begin(), y.end()) != y.end())
        fail(ErrorCode::DegenerateReference, "duplicate reference point");
    return Intervalization(std::move(y));
}

Interval proximity_region(double x, const Intervalization& ref, const Params& params) {
    if (!std::isfinite(x)) fail(ErrorCode::OutOfInterval, "query point must be finite");
    const int loc = ref.locate(x);
    if (loc < 0) return {x, x};  // x sits on a reference point: N(x) = {x}

    const Interval cl = ref.cell(loc);
    if (params.r_is_infinite()) return cl;
    const double r = params.r;

    if (ref.is_end_cell(loc)) {
        // End cells ignore c; the region grows away from the adjacent reference.
        if (loc == 0) {
            const double y1 = cl.hi;
            return {y1 - r * (y1 - x), y1};
        }
        const double ym = cl.lo;
        return {ym, ym + r * (x - ym)};
    }

    const double center = ref.center(loc, params.c);
    if (x <= center) {  // ties at the center take the left branch
        return {cl.lo, std::min(cl.lo + r * (x - cl.lo), cl.hi)};
    }
    return {std::max(cl.hi - r * (cl.hi - x), cl.lo), cl.hi};
}

} // namespace pcd
