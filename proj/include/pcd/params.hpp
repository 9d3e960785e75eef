#pragma once

#include <cmath>
#include <limits>

#include "pcd/error.hpp"

namespace pcd {

// Proximity parameters: expansion r in [1, inf] and edge proportion c in [0, 1].
//
// r == +infinity is a distinguished value: consumers must branch on
// `r_is_infinite()` before doing any arithmetic with `r`, so the whole-cell
// region semantics hold exactly rather than approximately.
struct Params {
    double r = 1.0;
    double c = 0.5;

    static Params make(double r, double c) {
        if (std::isnan(r) || r < 1.0)
            fail(ErrorCode::BadParameter, "expansion parameter r must satisfy r >= 1");
        if (std::isnan(c) || c < 0.0 || c > 1.0)
            fail(ErrorCode::BadParameter, "edge proportion c must lie in [0, 1]");
        return Params{r, c};
    }

    bool r_is_infinite() const { return std::isinf(r); }
};

inline constexpr double kInfiniteR = std::numeric_limits<double>::infinity();

} // namespace pcd
