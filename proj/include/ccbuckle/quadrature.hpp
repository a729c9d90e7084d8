#pragma once

#include <functional>

namespace ccb::quad {

struct Result {
    double value;
    double error;     // estimated absolute error
    int evaluations;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b]. Intervals
/// with the largest error estimate are bisected until the total estimate is
/// below max(abs_tol, rel_tol * |value|). Throws QuadratureFailure when the
/// interval budget is exhausted first.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol = 0.0, int max_intervals = 2000);

}  // namespace ccb::quad
