#pragma once

// Constraint profiles designed so that the rigid-bar system follows a
// prescribed postcritical force law beta(psi) = F l / k. Designed profiles
// use the normalization f(0) = 1, f'(0) = 0.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ccbuckle/exec.hpp"
#include "ccbuckle/onedof.hpp"

namespace ccb::design {

struct TargetForceLaw {
    std::string name;
    std::function<double(double)> beta;
    /// Optional derivative of beta; a central difference is used when empty.
    std::function<double(double)> dbeta;
    double psi_max;   // law is defined on [0, psi_max], psi_max < 1

    double slope(double psi) const;
    /// Throws DomainError if psi_max is out of range or beta vanishes (or
    /// changes sign) on a dense sample of [0, psi_max].
    void validate() const;
};

TargetForceLaw constant_law(double beta, double psi_max = 0.99);

/// beta0 (1 + amplitude sin(2 pi psi / period)).
TargetForceLaw sinusoidal_law(double beta0, double amplitude, double period, double psi_max = 0.95);

/// beta0 - (radius - sqrt(radius^2 - psi^2)): a circular arc in the (psi, beta)
/// plane, tangent to the constant law at psi = 0. Needs psi_max < radius.
TargetForceLaw circular_law(double beta0, double radius, double psi_max = 0.95);

/// Piecewise-linear interpolation of tabulated (psi, beta) pairs. The first
/// abscissa must be 0 and the abscissae strictly increasing.
TargetForceLaw tabulated_law(std::vector<double> psi, std::vector<double> beta);

/// f(psi) = sqrt(1 - psi^2) - int_0^{asin psi} tau / beta(sin tau) dtau on
/// [0, psi_max]. Each evaluation of f runs an adaptive quadrature to absolute
/// tolerance `tol`; f' and f'' are analytic.
onedof::ProfileShape design_profile(const TargetForceLaw& law, double tol = 1e-12);

/// Constant-force profile f = sqrt(1 - psi^2) - asin(psi)^2 / (2 beta) on
/// [-psi_max, psi_max]. Throws DegenerateLoad for beta = 0.
onedof::ProfileShape neutral_profile(double beta, double psi_max = 0.999);

/// Max over the rotation grid of |F l / k - beta(sin phi)| / |beta(sin phi)|
/// with F from the equilibrium equation on `profile` (k = l = 1, phi0 = 0).
double closed_loop_validate(const onedof::ProfileShape& profile, const TargetForceLaw& law,
                            std::span<const double> phi_grid, Exec exec = Exec::parallel);

struct ProfileSample {
    double psi;
    double f;
};

/// n >= 2 points uniformly spaced over the profile's domain.
std::vector<ProfileSample> sample_profile(const onedof::ProfileShape& profile, std::size_t n,
                                          Exec exec = Exec::parallel);

/// CSV with header `psi,f`.
void write_profile_csv(std::ostream& out, std::span<const ProfileSample> samples);

}  // namespace ccb::design
