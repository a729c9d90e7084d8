#include "ccbuckle/rodlinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>
#include <fmt/core.h>

#include "ccbuckle/csv.hpp"
#include "ccbuckle/errors.hpp"
#include "ccbuckle/roots.hpp"

namespace ccb::rod {

namespace {

using std::numbers::pi;

// The four terms of the characteristic function. In tension every term is
// multiplied by exp(-x) so that large arguments do not overflow; this does
// not move the roots.
std::array<double, 4> terms(double x, LoadSign sign, const RodModel& m) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(fmt::format("characteristic: alpha_l = {} must be positive", x));
    }
    const double c = m.chi_hat;
    double ch = 0.0;
    double sh = 0.0;
    double one_minus_ch = 0.0;
    double lead = 0.0;
    if (sign == LoadSign::tension) {
        const double e = std::exp(-2.0 * x);
        ch = 0.5 * (1.0 + e);
        sh = 0.5 * (1.0 - e);
        const double d = -std::expm1(-x);
        one_minus_ch = -0.5 * d * d;
        lead = 1.0;
    } else {
        ch = std::cos(x);
        sh = -std::sin(x);   // sqrt(-1) sinh(sqrt(-1) x) = -sin x
        const double s = std::sin(0.5 * x);
        one_minus_ch = 2.0 * s * s;
        lead = -1.0;
    }
    const double first = lead * (1.0 + c) * x * ch;
    const double second = -c * sh;
    // The bracket multiplying k / (B alpha).
    const double b1 = (1.0 + c) * x * sh;
    const double b2 = c * one_minus_ch;
    if (m.clamped) {
        return {0.0, 0.0, b1 / x, b2 / x};
    }
    const double kx = m.kappa() / x;
    return {first, second, kx * b1, kx * b2};
}

// Derivative of characteristic() with respect to x; g is the part outside
// the spring bracket and h the bracket divided by x.
double characteristic_slope(double x, LoadSign sign, const RodModel& m) {
    const double c = m.chi_hat;
    double dg = 0.0;
    double dh = 0.0;
    if (sign == LoadSign::tension) {
        // Scaled factors q = exp(-x) Q satisfy q' = exp(-x) Q' - q.
        const double e = std::exp(-2.0 * x);
        const double ch = 0.5 * (1.0 + e);
        const double sh = 0.5 * (1.0 - e);
        const double d = -std::expm1(-x);
        const double omc = -0.5 * d * d;
        const double g = (1.0 + c) * x * ch - c * sh;
        const double h = (1.0 + c) * sh + c * omc / x;
        dg = (1.0 + c) * (ch + x * sh) - c * ch - g;
        dh = (1.0 + c) * ch + c * (-sh / x - omc / (x * x)) - h;
    } else {
        const double co = std::cos(x);
        const double si = std::sin(x);
        const double hs = std::sin(0.5 * x);
        const double omc = 2.0 * hs * hs;
        dg = -(1.0 + c) * (co - x * si) + c * co;
        dh = -(1.0 + c) * co + c * (si / x - omc / (x * x));
    }
    return m.clamped ? dh : dg + m.kappa() * dh;
}

// Basis functions of the general solution (l = 1, a = alpha l) and their
// first three derivatives at t.
std::array<std::array<double, 4>, 4> basis(double a, LoadSign sign, double t) {
    const double a2 = a * a;
    std::array<std::array<double, 4>, 4> b{};
    if (sign == LoadSign::tension) {
        const double ch = std::cosh(a * t);
        const double sh = std::sinh(a * t);
        b[0] = {ch / a2, sh / a, ch, a * sh};
        b[1] = {sh / a2, ch / a, sh, a * ch};
    } else {
        const double co = std::cos(a * t);
        const double si = std::sin(a * t);
        b[0] = {co / a2, -si / a, -co, a * si};
        b[1] = {-si / a2, -co / a, si, a * co};
    }
    b[2] = {t, 1.0, 0.0, 0.0};
    b[3] = {1.0, 0.0, 0.0, 0.0};
    return b;
}

Eigen::Matrix4d bc_matrix(double a, LoadSign sign, const RodModel& m) {
    const auto at0 = basis(a, sign, 0.0);
    const auto at1 = basis(a, sign, 1.0);
    const double s = static_cast<double>(static_cast<int>(sign));
    const double c = m.chi_hat;
    const double kappa = m.kappa();
    Eigen::Matrix4d M;
    for (int j = 0; j < 4; ++j) {
        const auto& e = at1[j];
        M(0, j) = at0[j][0];
        M(1, j) = at0[j][1];
        // Shear condition (sgn F / alpha^2) v''' = phi + v'. Written with the
        // opposite sign it would contradict both the cantilever limit and
        // the characteristic equation.
        M(2, j) = (s / (a * a)) * e[3] - e[1] - c * e[0];
        M(3, j) = m.clamped ? e[1] + c * e[0] : -e[2] - kappa * (e[1] + c * e[0]);
    }
    for (int r = 0; r < 4; ++r) {
        const double scale = M.row(r).cwiseAbs().maxCoeff();
        if (scale > 0.0) {
            M.row(r) /= scale;
        }
    }
    return M;
}

}  // namespace

void RodModel::validate() const {
    if (!(B > 0.0) || !std::isfinite(B)) {
        throw DomainError("RodModel: bending stiffness B must be positive");
    }
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw DomainError("RodModel: length l must be positive");
    }
    if (!clamped && (!(k >= 0.0) || !std::isfinite(k))) {
        throw DomainError("RodModel: spring stiffness k must be finite and non-negative");
    }
    if (!std::isfinite(chi_hat)) {
        throw DomainError("RodModel: curvature must be finite");
    }
}

const char* to_string(LoadSign s) noexcept {
    return s == LoadSign::tension ? "tension" : "compression";
}

double characteristic(double alpha_l, LoadSign sign, const RodModel& model) {
    const auto t = terms(alpha_l, sign, model);
    return (t[0] + t[1]) + (t[2] + t[3]);
}

double characteristic_scale(double alpha_l, LoadSign sign, const RodModel& model) {
    (void)terms(alpha_l, sign, model);
    const double x = alpha_l;
    const double c = model.chi_hat;
    // Envelope of the terms: trigonometric and scaled hyperbolic factors are
    // bounded by one, 1 - cos by two.
    const double bracket = std::abs(1.0 + c) + 2.0 * std::abs(c) / x;
    if (model.clamped) {
        return bracket;
    }
    return std::abs(1.0 + c) * x + std::abs(c) + model.kappa() * bracket;
}

std::vector<BucklingMode> find_critical_loads(const RodModel& model, LoadSign sign,
                                              double alpha_l_max, int max_modes, double step,
                                              Exec exec) {
    model.validate();
    if (!(alpha_l_max > 0.0) || !std::isfinite(alpha_l_max)) {
        throw DomainError("find_critical_loads: alpha_l_max must be positive");
    }
    if (!(step > 0.0)) {
        throw DomainError("find_critical_loads: scan step must be positive");
    }
    // One extra step past the end lets a tangential root sitting exactly at
    // alpha_l_max be seen; roots beyond the end are dropped below.
    std::vector<double> grid;
    for (std::size_t i = 1;; ++i) {
        const double x = static_cast<double>(i) * step;
        if (x >= alpha_l_max) {
            break;
        }
        grid.push_back(x);
    }
    grid.push_back(alpha_l_max);
    grid.push_back(alpha_l_max + step);

    auto f = [&](double x) { return characteristic(x, sign, model); };
    const auto values = roots::sample(f, grid, exec);
    const auto brackets = roots::sign_changes(grid, values);

    std::vector<double> found;
    for (const auto& b : brackets) {
        found.push_back(roots::bisect(f, b, 0.0, 200));
    }
    // Tangential roots (the function touches zero without crossing, e.g. the
    // clamped end on a circle centred at the clamp) show up as a local minimum
    // of |f| between two same-signed samples. They are located as zeros of
    // the derivative and kept when the function vanishes there.
    auto df = [&](double x) { return characteristic_slope(x, sign, model); };
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double a = values[i - 1];
        const double m = values[i];
        const double c = values[i + 1];
        if (!std::isfinite(a) || !std::isfinite(m) || !std::isfinite(c) || m == 0.0 ||
            std::signbit(a) != std::signbit(m) || std::signbit(m) != std::signbit(c) ||
            std::abs(m) > std::abs(a) || std::abs(m) > std::abs(c)) {
            continue;
        }
        const double lo = grid[i - 1];
        const double hi = grid[i + 1];
        const double d_lo = df(lo);
        const double d_hi = df(hi);
        if (std::signbit(d_lo) == std::signbit(d_hi)) {
            continue;
        }
        const double x = roots::bisect(df, {lo, hi, d_lo, d_hi}, 0.0, 200);
        if (std::abs(f(x)) <= 1e-12 * characteristic_scale(x, sign, model)) {
            found.push_back(x);
        }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end(),
                            [&](double p, double q) { return q - p < 0.5 * step; }),
                found.end());

    std::vector<BucklingMode> modes;
    const double s = static_cast<double>(static_cast<int>(sign));
    for (double x : found) {
        if (x > alpha_l_max * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
            break;
        }
        if (static_cast<int>(modes.size()) >= max_modes) {
            break;
        }
        const double F = s * x * x * model.B / (model.l * model.l);
        modes.push_back({sign, static_cast<int>(modes.size()) + 1, x, F, s * x * x / (pi * pi),
                         pi / x});
    }
    return modes;
}

double effective_length_factor(double F_cr, const RodModel& model) {
    if (F_cr == 0.0) {
        throw DegenerateLoad("effective_length_factor: zero critical load");
    }
    return pi * std::sqrt(model.B / std::abs(F_cr)) / model.l;
}

double bc_determinant(double alpha_l, LoadSign sign, const RodModel& model) {
    if (!(alpha_l > 0.0)) {
        throw DomainError("bc_determinant: alpha_l must be positive");
    }
    return bc_matrix(alpha_l, sign, model).determinant();
}

ModeShape mode_shape(const BucklingMode& mode, const RodModel& model, std::size_t n) {
    model.validate();
    if (n < 2) {
        throw DomainError("mode_shape: need at least two samples");
    }
    const double a = mode.alpha_l;
    const Eigen::Matrix4d M = bc_matrix(a, mode.sign, model);
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(3) <= 1e-7 * sv(0))) {
        throw NotCritical(fmt::format("mode_shape: alpha_l = {} is not a critical load "
                                      "(singular value ratio {})", a, sv(3) / sv(0)));
    }
    const Eigen::Vector4d C = svd.matrixV().col(3);

    ModeShape out;
    const double l = model.l;
    out.z.resize(n);
    out.v.resize(n);
    out.dv.resize(n);
    out.d2v.resize(n);
    out.d3v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        const auto b = basis(a, mode.sign, t);
        std::array<double, 4> d{};
        for (int j = 0; j < 4; ++j) {
            for (int r = 0; r < 4; ++r) {
                d[r] += C(j) * b[j][r];
            }
        }
        out.z[i] = t * l;
        out.v[i] = d[0];
        out.dv[i] = d[1] / l;
        out.d2v[i] = d[2] / (l * l);
        out.d3v[i] = d[3] / (l * l * l);
    }
    double peak = 0.0;
    for (double v : out.v) {
        if (std::abs(v) > std::abs(peak)) {
            peak = v;
        }
    }
    if (peak == 0.0) {
        throw NotCritical("mode_shape: null-space vector gives a zero displacement field");
    }
    for (auto* col : {&out.v, &out.dv, &out.d2v, &out.d3v}) {
        for (double& v : *col) {
            v /= peak;
        }
    }
    out.phi = model.chi_hat * out.v.back() / l;
    return out;
}

std::vector<TableRow> critical_table(const RodModel& base, std::span<const double> chi_grid,
                                     double alpha_l_max, int max_modes, Exec exec) {
    std::vector<std::vector<TableRow>> per_chi(chi_grid.size());
    for_each_index(chi_grid.size(), exec, [&](std::size_t i) {
        RodModel m = base;
        m.chi_hat = chi_grid[i];
        for (LoadSign sign : {LoadSign::tension, LoadSign::compression}) {
            for (const auto& mode : find_critical_loads(m, sign, alpha_l_max, max_modes, kScanStep,
                                                        Exec::serial)) {
                per_chi[i].push_back({m.chi_hat, mode});
            }
        }
    });
    std::vector<TableRow> rows;
    for (auto& part : per_chi) {
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

void write_table_csv(std::ostream& out, std::span<const TableRow> rows) {
    out << "chi_hat,sign,mode_index,alpha_l,Fcr_normalized,xi\n";
    for (const auto& r : rows) {
        out << csv::num(r.chi_hat) << ',' << to_string(r.mode.sign) << ',' << r.mode.mode_index << ','
            << csv::num(r.mode.alpha_l) << ',' << csv::num(r.mode.F_cr_normalized) << ','
            << csv::num(r.mode.xi) << '\n';
    }
}

}  // namespace ccb::rod
