#include "ccbuckle/roots.hpp"

#include <cmath>
#include <limits>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ccb {

int max_threads() noexcept {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace ccb

namespace ccb::roots {

std::vector<double> sample(const std::function<double(double)>& f, std::span<const double> grid,
                           Exec exec) {
    std::vector<double> values(grid.size());
    for_each_index(grid.size(), exec, [&](std::size_t i) {
        try {
            values[i] = f(grid[i]);
        } catch (const std::exception&) {
            values[i] = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return values;
}

std::vector<Bracket> sign_changes(std::span<const double> grid, std::span<const double> values) {
    std::vector<Bracket> out;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = values[i];
        const double b = values[i + 1];
        if (!std::isfinite(a) || !std::isfinite(b) || a == 0.0) {
            continue;
        }
        if (b == 0.0 || std::signbit(a) != std::signbit(b)) {
            out.push_back({grid[i], grid[i + 1], a, b});
        }
    }
    return out;
}

double bisect(const std::function<double(double)>& f, Bracket b, double xtol, int max_iter) {
    if (b.f_hi == 0.0) {
        return b.hi;
    }
    for (int it = 0; it < max_iter && std::abs(b.hi - b.lo) > xtol; ++it) {
        const double mid = 0.5 * (b.lo + b.hi);
        if (mid == b.lo || mid == b.hi) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if (std::signbit(fm) == std::signbit(b.f_lo)) {
            b.lo = mid;
            b.f_lo = fm;
        } else {
            b.hi = mid;
            b.f_hi = fm;
        }
    }
    return 0.5 * (b.lo + b.hi);
}

double solve_bracketed(const std::function<double(double)>& f, Bracket b, double xtol, double ftol,
                       int max_iter) {
    if (b.f_lo == 0.0) {
        return b.lo;
    }
    if (b.f_hi == 0.0) {
        return b.hi;
    }
    int side = 0;
    double x = 0.5 * (b.lo + b.hi);
    for (int it = 0; it < max_iter; ++it) {
        const double width = b.hi - b.lo;
        if (std::abs(width) <= xtol) {
            break;
        }
        x = (b.lo * b.f_hi - b.hi * b.f_lo) / (b.f_hi - b.f_lo);
        // Fall back to bisection when the secant lands too close to an end.
        const double margin = 0.01 * std::abs(width);
        if (!std::isfinite(x) || std::abs(x - b.lo) < margin || std::abs(b.hi - x) < margin) {
            x = 0.5 * (b.lo + b.hi);
        }
        if (x == b.lo || x == b.hi) {
            break;
        }
        const double fx = f(x);
        if (fx == 0.0 || std::abs(fx) <= ftol) {
            return x;
        }
        if (std::signbit(fx) == std::signbit(b.f_lo)) {
            b.lo = x;
            b.f_lo = fx;
            if (side == -1) {
                b.f_hi *= 0.5;
            }
            side = -1;
        } else {
            b.hi = x;
            b.f_hi = fx;
            if (side == 1) {
                b.f_lo *= 0.5;
            }
            side = 1;
        }
    }
    return std::abs(b.f_lo) < std::abs(b.f_hi) ? b.lo : b.hi;
}

}  // namespace ccb::roots
