#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ccbuckle/exec.hpp"

namespace ccb::roots {

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Evaluates f on every grid point. Evaluations that throw are stored as NaN
/// so a scan can step over regions where the residual is undefined.
std::vector<double> sample(const std::function<double(double)>& f, std::span<const double> grid,
                           Exec exec = Exec::parallel);

/// Adjacent grid pairs whose finite values have opposite signs (or where the
/// value is exactly zero at the right end), in grid order.
std::vector<Bracket> sign_changes(std::span<const double> grid, std::span<const double> values);

/// Plain bisection until the bracket is narrower than xtol.
double bisect(const std::function<double(double)>& f, Bracket b, double xtol, int max_iter = 200);

/// Illinois-modified regula falsi with a bisection fallback: keeps a valid
/// bracket at every step and stops when it is narrower than xtol or the
/// residual magnitude drops to ftol.
double solve_bracketed(const std::function<double(double)>& f, Bracket b, double xtol,
                       double ftol = 0.0, int max_iter = 200);

}  // namespace ccb::roots
