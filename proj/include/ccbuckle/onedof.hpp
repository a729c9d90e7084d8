#pragma once

// Rigid bar of length l with a rotational spring k at one end and a pin at the
// other end sliding on a constraint profile x2 = l f(x1 / l). The bar rotation
// phi puts the pin at psi = sin(phi); positive F is tension, positive delta is
// lengthening.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ccbuckle/exec.hpp"

namespace ccb::onedof {

/// Constraint profile f(psi) with its first two derivatives on a closed
/// interval of psi. Curvatures at psi = 0 are stored one-sided so that
/// profiles with a curvature jump (the S-shaped constraint) can be handled.
class ProfileShape {
public:
    using Fn = std::function<double(double)>;

    ProfileShape(std::string name, Fn f, Fn df, Fn d2f, double psi_min, double psi_max,
                 double curvature_left_at_0, double curvature_right_at_0);

    double f(double psi) const;
    double df(double psi) const;
    double d2f(double psi) const;

    const std::string& name() const noexcept { return name_; }
    double psi_min() const noexcept { return psi_min_; }
    double psi_max() const noexcept { return psi_max_; }
    double curvature_left_at_0() const noexcept { return left0_; }
    double curvature_right_at_0() const noexcept { return right0_; }
    bool contains(double psi) const noexcept { return psi >= psi_min_ && psi <= psi_max_; }

private:
    void check(double psi) const;

    std::string name_;
    Fn f_;
    Fn df_;
    Fn d2f_;
    double psi_min_;
    double psi_max_;
    double left0_;
    double right0_;
};

/// Straight constraint f = 0 on [-1, 1].
ProfileShape profile_flat();

/// Circle tangent to the psi axis at the origin with f''(0) = chi_hat:
/// f = (1 - sqrt(1 - chi_hat^2 psi^2)) / chi_hat on |psi| <= min(1, 1/|chi_hat|).
/// chi_hat = 0 gives the straight profile.
ProfileShape profile_circular(double chi_hat);

/// Two circular arcs joined at psi = 0: curvature -magnitude for psi > 0
/// (tension side) and +magnitude for psi < 0.
ProfileShape profile_s_shaped(double magnitude);

struct OneDofSystem {
    double k;       // rotational spring stiffness
    double l;       // bar length
    double phi0;    // imperfection angle
    ProfileShape profile;

    /// Throws DomainError unless k > 0, l > 0 and |phi0| < pi/2.
    void validate() const;
};

enum class Stability { stable, unstable, critical };

const char* to_string(Stability s) noexcept;

struct EquilibriumPoint {
    double phi;
    double F;
    double delta;
    Stability stability;
};

struct BranchTrace {
    std::string label;
    std::vector<EquilibriumPoint> points;
};

/// F = -k (phi - phi0) / (l [sin phi + cos phi f'(sin phi)]). Throws
/// SingularConfiguration when the bracket vanishes.
double equilibrium_force(double phi, const OneDofSystem& sys);

/// F_cr = -k / (l [1 + f''(0)]) for the perfect system with a profile whose
/// curvature is continuous at 0. Throws DegenerateLoad when f''(0) = -1.
double critical_load(const OneDofSystem& sys);

/// Critical loads of each side of a profile with one-sided curvatures.
struct SidedLoads {
    double right;   // psi > 0 branch, tensile for the S-shaped constraint
    double left;    // psi < 0 branch
};

SidedLoads critical_loads_s_shaped(const OneDofSystem& sys);

/// Second derivative of the potential energy with respect to phi.
double energy_second_derivative(double phi, double F, const OneDofSystem& sys);

/// Sign of the energy second derivative; |value| < 1e-9 k is `critical`. At
/// psi = 0 on a profile with a curvature jump both sides are checked and the
/// less stable one is reported.
Stability stability_of(double phi, double F, const OneDofSystem& sys);

/// delta = l [cos phi - cos phi0 - f(sin phi) + f(sin phi0)].
double elongation(double phi, const OneDofSystem& sys);

/// W = k (phi - phi0)^2 / 2 - F delta(phi).
double potential_energy(double phi, double F, const OneDofSystem& sys);

/// Equilibrium points on the given rotations; grid points are independent and
/// evaluated with the requested policy. Propagates SingularConfiguration from
/// the lowest offending grid index.
BranchTrace trace_branch(const OneDofSystem& sys, std::span<const double> phi_grid,
                         std::string label = "branch", Exec exec = Exec::parallel);

// --- Full circular constraint -----------------------------------------------
//
// The graph f(psi) of a circle ends at its vertical tangent. Past that point
// the pin keeps moving round the circle while the bar rotation turns back, and
// the axial force changes sign. Parametrizing by the pin's polar angle omega on
// the circle (omega = 0 at the tangency with the psi axis) covers the whole
// loop.

struct CirclePoint {
    double omega;   // pin polar angle on the circle
    double phi;
    double F;
    double delta;
    Stability stability;
};

struct CircleTrace {
    std::string label;
    double chi_hat;
    int side;       // +1 pin moves to psi > 0, -1 to psi < 0
    std::vector<CirclePoint> points;
};

/// Equilibrium with the pin at polar angle omega on a circle of signed
/// curvature chi_hat through the origin. `side` selects the psi half-plane.
/// k, l and phi0 are taken from `sys`; its profile is only used for the
/// reference value f(sin phi0).
CirclePoint circle_equilibrium(double omega, double chi_hat, int side, const OneDofSystem& sys);

CircleTrace trace_circle_branch(const OneDofSystem& sys, double chi_hat, int side,
                                std::span<const double> omega_grid, std::string label = "circle",
                                Exec exec = Exec::parallel);

/// Evenly spaced grid on [a, b] with n points (n >= 2), or {a} for n == 1.
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace ccb::onedof
