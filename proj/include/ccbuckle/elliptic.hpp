#pragma once

// Incomplete elliptic integrals and Jacobi elliptic functions of real modulus
// k >= 0, including the k > 1 regime reached by roller-constrained elastica.
//
// Conventions (Legendre form, modulus not parameter):
//   F(beta, k) = int_0^beta dt / sqrt(1 - k^2 sin^2 t)
//   E(beta, k) = int_0^beta sqrt(1 - k^2 sin^2 t) dt
//   am(F(beta, k), k) = beta
//
// For k > 1 the integrals are real only for |k sin beta| <= 1 with
// |beta| <= pi/2. The Jacobi functions are continued to every real u through
// the reciprocal-modulus relations
//   sn(u, k) = sn(k u, 1/k) / k,  cn(u, k) = dn(k u, 1/k),  dn(u, k) = cn(k u, 1/k),
// so am(u, k) oscillates inside [-asin(1/k), asin(1/k)] and dn changes sign
// at the turning points. All angles are radians.

namespace ccb::elliptic {

/// Carlson's symmetric integral R_F(x, y, z); x, y, z >= 0, at most one zero.
double carlson_rf(double x, double y, double z);

/// Carlson's symmetric integral R_D(x, y, z); x, y >= 0 (not both zero), z > 0.
double carlson_rd(double x, double y, double z);

/// Complete integral of the first kind K(k), 0 <= k < 1.
double complete_k(double k);

/// Complete integral of the second kind E(k), 0 <= k <= 1.
double complete_e(double k);

/// Incomplete integral of the first kind. Throws DomainError when k > 1 and
/// |k sin beta| > 1 (or |beta| > pi/2), when k == 1 and |beta| >= pi/2, and
/// on non-finite arguments or negative k.
double ellint_f(double beta, double k);

/// Incomplete integral of the second kind; same domain as ellint_f except
/// that k == 1 is finite everywhere.
double ellint_e(double beta, double k);

/// Values of the Jacobi functions at one argument. `epsilon` is Jacobi's
/// epsilon function int_0^u dn^2(t, k) dt, which equals E(am(u, k), k) for
/// k <= 1 and is its continuous continuation for k > 1.
struct JacobiPoint {
    double am;
    double sn;
    double cn;
    double dn;
    double epsilon;
};

JacobiPoint jacobi(double u, double k);

/// Amplitude by safeguarded Newton inversion of ellint_f.
double jacobi_am(double u, double k);

/// Amplitude by the descending Landen (arithmetic-geometric mean) scheme.
/// Independent of jacobi_am; both agree to ~1e-14.
double jacobi_am_landen(double u, double k);

double jacobi_sn(double u, double k);
double jacobi_cn(double u, double k);

/// Delta amplitude. For k > 1 this is cn(k u, 1/k) and may be negative.
double jacobi_dn(double u, double k);

double jacobi_epsilon(double u, double k);

}  // namespace ccb::elliptic
