#pragma once
#include "bsl/hypgeo.hpp"

#include <functional>
#include <vector>

namespace bsl {

struct QuadResult {
    cplx value;
    double error = 0;
    int evaluations = 0;
};

// adaptive Gauss-Kronrod 7/15 on [a,b], splitting first at the given breakpoints.
// Throws NumericalIntegration if the tolerance is not met within max_intervals.
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                        double abs_tol = 0.0, const std::vector<double>& breaks = {}, int max_intervals = 20000);

} // namespace bsl
