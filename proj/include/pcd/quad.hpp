#pragma once

#include <functional>

namespace pcd {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_depth = 40;
    long max_panels = 2'000'000;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]. Errors: QuadratureFailed when the
// panel budget or recursion depth is exhausted before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

} // namespace pcd
