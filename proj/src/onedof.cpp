#include "ccbuckle/onedof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <fmt/core.h>

#include "ccbuckle/errors.hpp"

namespace ccb::onedof {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// f, f', f'' of the circle of signed curvature c tangent to the psi axis at 0.
// The form c psi^2 / (1 + q) avoids cancellation near psi = 0 and is exact for
// c = 0.
double circle_f(double c, double psi) {
    const double q = std::sqrt(std::max(0.0, 1.0 - c * c * psi * psi));
    return c * psi * psi / (1.0 + q);
}

double circle_df(double c, double psi) {
    const double q = std::sqrt(std::max(0.0, 1.0 - c * c * psi * psi));
    return c * psi / q;
}

double circle_d2f(double c, double psi) {
    const double q2 = std::max(0.0, 1.0 - c * c * psi * psi);
    return c / (q2 * std::sqrt(q2));
}

double circle_reach(double chi_hat) {
    return chi_hat == 0.0 ? 1.0 : std::min(1.0, 1.0 / std::abs(chi_hat));
}

double stability_value(double phi, double F, double curvature, const OneDofSystem& sys) {
    const double psi = std::sin(phi);
    const double c = std::cos(phi);
    return sys.k + F * sys.l * (c - sys.profile.df(psi) * psi + curvature * c * c);
}

Stability classify(double value, double k) {
    if (std::abs(value) < 1e-9 * k) {
        return Stability::critical;
    }
    return value > 0.0 ? Stability::stable : Stability::unstable;
}

}  // namespace

ProfileShape::ProfileShape(std::string name, Fn f, Fn df, Fn d2f, double psi_min, double psi_max,
                           double curvature_left_at_0, double curvature_right_at_0)
    : name_(std::move(name)),
      f_(std::move(f)),
      df_(std::move(df)),
      d2f_(std::move(d2f)),
      psi_min_(psi_min),
      psi_max_(psi_max),
      left0_(curvature_left_at_0),
      right0_(curvature_right_at_0) {
    if (!(psi_min <= 0.0 && psi_max >= 0.0 && psi_min >= -1.0 && psi_max <= 1.0)) {
        throw DomainError(fmt::format("ProfileShape '{}': domain [{}, {}] must contain 0 and lie in [-1, 1]",
                                      name_, psi_min, psi_max));
    }
}

void ProfileShape::check(double psi) const {
    // sin(asin(x)) may overshoot x by an ulp or two; tolerate that much.
    const double slack = 4.0 * kEps;
    if (!std::isfinite(psi) || psi < psi_min_ - slack || psi > psi_max_ + slack) {
        throw DomainError(fmt::format("profile '{}': psi = {} outside [{}, {}]", name_, psi,
                                      psi_min_, psi_max_));
    }
}

double ProfileShape::f(double psi) const {
    check(psi);
    return f_(std::clamp(psi, psi_min_, psi_max_));
}

double ProfileShape::df(double psi) const {
    check(psi);
    return df_(std::clamp(psi, psi_min_, psi_max_));
}

double ProfileShape::d2f(double psi) const {
    check(psi);
    return d2f_(std::clamp(psi, psi_min_, psi_max_));
}

ProfileShape profile_flat() {
    auto zero = [](double) { return 0.0; };
    return ProfileShape("flat", zero, zero, zero, -1.0, 1.0, 0.0, 0.0);
}

ProfileShape profile_circular(double chi_hat) {
    if (!std::isfinite(chi_hat)) {
        throw DomainError("profile_circular: curvature must be finite");
    }
    const double reach = circle_reach(chi_hat);
    return ProfileShape(
        fmt::format("circular({})", chi_hat), [chi_hat](double p) { return circle_f(chi_hat, p); },
        [chi_hat](double p) { return circle_df(chi_hat, p); },
        [chi_hat](double p) { return circle_d2f(chi_hat, p); }, -reach, reach, chi_hat, chi_hat);
}

ProfileShape profile_s_shaped(double magnitude) {
    if (!(magnitude > 0.0) || !std::isfinite(magnitude)) {
        throw DomainError("profile_s_shaped: magnitude must be positive and finite");
    }
    const double m = magnitude;
    auto side = [m](double p) { return p >= 0.0 ? -m : m; };
    const double reach = circle_reach(m);
    return ProfileShape(
        fmt::format("s-shaped({})", m), [side](double p) { return circle_f(side(p), p); },
        [side](double p) { return circle_df(side(p), p); },
        [side](double p) { return circle_d2f(side(p), p); }, -reach, reach, m, -m);
}

void OneDofSystem::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw DomainError("OneDofSystem: spring stiffness k must be positive");
    }
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw DomainError("OneDofSystem: bar length l must be positive");
    }
    if (!(std::abs(phi0) < std::numbers::pi / 2)) {
        throw DomainError("OneDofSystem: |phi0| must be below pi/2");
    }
    if (!profile.contains(std::sin(phi0))) {
        throw DomainError("OneDofSystem: imperfection puts the pin outside the profile");
    }
}

const char* to_string(Stability s) noexcept {
    switch (s) {
        case Stability::stable:
            return "stable";
        case Stability::unstable:
            return "unstable";
        case Stability::critical:
            return "critical";
    }
    return "?";
}

double equilibrium_force(double phi, const OneDofSystem& sys) {
    const double psi = std::sin(phi);
    const double den = psi + std::cos(phi) * sys.profile.df(psi);
    if (den == 0.0 || std::isnan(den)) {
        throw SingularConfiguration(
            fmt::format("equilibrium_force: vertical tangency of the load path at phi = {}", phi), phi);
    }
    // An infinite slope (pin at a vertical tangent of the profile) gives the
    // limit F = 0.
    return -sys.k * (phi - sys.phi0) / (sys.l * den);
}

double critical_load(const OneDofSystem& sys) {
    if (sys.phi0 != 0.0) {
        throw DomainError("critical_load: defined for the perfect system (phi0 = 0)");
    }
    const double left = sys.profile.curvature_left_at_0();
    const double right = sys.profile.curvature_right_at_0();
    if (left != right) {
        throw DomainError("critical_load: profile curvature jumps at 0, use critical_loads_s_shaped");
    }
    const double den = 1.0 + right;
    if (den == 0.0) {
        throw DegenerateLoad("critical_load: f''(0) = -1 puts the critical load at infinity");
    }
    return -sys.k / (sys.l * den);
}

SidedLoads critical_loads_s_shaped(const OneDofSystem& sys) {
    if (sys.phi0 != 0.0) {
        throw DomainError("critical_loads_s_shaped: defined for the perfect system (phi0 = 0)");
    }
    auto one = [&](double curvature) {
        const double den = 1.0 + curvature;
        if (den == 0.0) {
            throw DegenerateLoad("critical_loads_s_shaped: one-sided curvature -1 gives an infinite load");
        }
        return -sys.k / (sys.l * den);
    };
    return {one(sys.profile.curvature_right_at_0()), one(sys.profile.curvature_left_at_0())};
}

double energy_second_derivative(double phi, double F, const OneDofSystem& sys) {
    return stability_value(phi, F, sys.profile.d2f(std::sin(phi)), sys);
}

Stability stability_of(double phi, double F, const OneDofSystem& sys) {
    const double left = sys.profile.curvature_left_at_0();
    const double right = sys.profile.curvature_right_at_0();
    if (std::sin(phi) == 0.0 && left != right) {
        const Stability a = classify(stability_value(phi, F, left, sys), sys.k);
        const Stability b = classify(stability_value(phi, F, right, sys), sys.k);
        if (a == Stability::unstable || b == Stability::unstable) {
            return Stability::unstable;
        }
        return (a == Stability::critical || b == Stability::critical) ? Stability::critical
                                                                      : Stability::stable;
    }
    return classify(energy_second_derivative(phi, F, sys), sys.k);
}

double elongation(double phi, const OneDofSystem& sys) {
    return sys.l * (std::cos(phi) - std::cos(sys.phi0) - sys.profile.f(std::sin(phi)) +
                    sys.profile.f(std::sin(sys.phi0)));
}

double potential_energy(double phi, double F, const OneDofSystem& sys) {
    const double d = phi - sys.phi0;
    return 0.5 * sys.k * d * d - F * elongation(phi, sys);
}

BranchTrace trace_branch(const OneDofSystem& sys, std::span<const double> phi_grid,
                         std::string label, Exec exec) {
    sys.validate();
    BranchTrace trace{std::move(label), std::vector<EquilibriumPoint>(phi_grid.size())};
    for_each_index(phi_grid.size(), exec, [&](std::size_t i) {
        const double phi = phi_grid[i];
        const double F = equilibrium_force(phi, sys);
        trace.points[i] = {phi, F, elongation(phi, sys), stability_of(phi, F, sys)};
    });
    return trace;
}

CirclePoint circle_equilibrium(double omega, double chi_hat, int side, const OneDofSystem& sys) {
    if (chi_hat == 0.0 || !std::isfinite(chi_hat)) {
        throw DomainError("circle_equilibrium: curvature must be finite and nonzero");
    }
    if (side != 1 && side != -1) {
        throw DomainError("circle_equilibrium: side must be +1 or -1");
    }
    const double r = 1.0 / std::abs(chi_hat);
    const double sw = std::sin(omega);
    const double cw = std::cos(omega);
    const double psi = side * r * sw;
    if (std::abs(psi) > 1.0) {
        throw DomainError(fmt::format("circle_equilibrium: pin at omega = {} is out of reach of the bar",
                                      omega));
    }
    const double f = (1.0 - cw) / chi_hat;
    const double psi_t = side * r * cw;
    const double psi_tt = -psi;
    const double f_t = sw / chi_hat;
    const double f_tt = cw / chi_hat;

    const double phi = std::asin(psi);
    const double c = std::cos(phi);
    const double den = psi * psi_t + c * f_t;
    if (den == 0.0 || !std::isfinite(den)) {
        throw SingularConfiguration(
            fmt::format("circle_equilibrium: singular configuration at omega = {}", omega), phi);
    }
    const double F = -sys.k * (phi - sys.phi0) * psi_t / (sys.l * den);

    // Second derivative of the energy along the circle. At equilibrium it
    // has the sign of d2W/dphi2 wherever dphi/domega does not vanish.
    const double phi_t = psi_t / c;
    const double phi_tt = (psi_tt + psi * phi_t * phi_t) / c;
    const double e_tt = -c * phi_t * phi_t - psi * phi_tt - f_tt;
    const double w_tt = sys.k * (phi_t * phi_t + (phi - sys.phi0) * phi_tt) - F * sys.l * e_tt;

    const double delta = sys.l * (c - std::cos(sys.phi0) - f + sys.profile.f(std::sin(sys.phi0)));
    return {omega, phi, F, delta, classify(w_tt, sys.k)};
}

CircleTrace trace_circle_branch(const OneDofSystem& sys, double chi_hat, int side,
                                std::span<const double> omega_grid, std::string label, Exec exec) {
    sys.validate();
    CircleTrace trace{std::move(label), chi_hat, side, std::vector<CirclePoint>(omega_grid.size())};
    for_each_index(omega_grid.size(), exec, [&](std::size_t i) {
        trace.points[i] = circle_equilibrium(omega_grid[i], chi_hat, side, sys);
    });
    return trace;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        // Written so both end points are reproduced exactly.
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = (1.0 - t) * a + t * b;
    }
    return out;
}

}  // namespace ccb::onedof
