#include "ccbuckle/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ccbuckle/errors.hpp"

namespace ccb::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(double a, double b, const char* fn) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError(std::string(fn) + ": non-finite argument");
    }
}

void require_modulus(double k, const char* fn) {
    if (k < 0.0) {
        throw DomainError(std::string(fn) + ": negative modulus");
    }
}

// 1 - k^2 s^2 written to avoid cancellation when k and |s| are both near 1.
double delta_squared(double k, double s, double c) {
    if (k < 1.0) {
        return (1.0 - k) * (1.0 + k) + k * k * c * c;
    }
    const double ks = k * s;
    return (1.0 - ks) * (1.0 + ks);
}

// F and E on |phi| <= pi/2 for 0 <= k <= 1, from sin/cos of the amplitude.
double f_principal(double s, double c, double k) {
    return s * carlson_rf(c * c, delta_squared(k, s, c), 1.0);
}

double e_principal(double s, double c, double k) {
    const double c2 = c * c;
    const double d2 = delta_squared(k, s, c);
    return s * carlson_rf(c2, d2, 1.0) - (k * k / 3.0) * s * s * s * carlson_rd(c2, d2, 1.0);
}

struct Reduced {
    double n;    // number of half periods in amplitude
    double r;    // residual amplitude in [-pi/2, pi/2]
};

Reduced reduce_amplitude(double beta) {
    const double n = std::nearbyint(beta / kPi);
    return {n, beta - n * kPi};
}

// Amplitude for 0 <= k < 1 by safeguarded Newton on F.
double am_below_one(double u, double k) {
    if (k == 0.0) {
        return u;
    }
    const double big_k = complete_k(k);
    const double n = std::nearbyint(u / (2.0 * big_k));
    const double r = u - 2.0 * n * big_k;

    double lo = -kHalfPi;
    double hi = kHalfPi;
    double phi = std::clamp(r * kHalfPi / big_k, lo, hi);
    for (int it = 0; it < 100; ++it) {
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        const double g = f_principal(s, c, k) - r;
        if (g == 0.0) {
            break;
        }
        if (g > 0.0) {
            hi = phi;
        } else {
            lo = phi;
        }
        double next = phi - g * std::sqrt(delta_squared(k, s, c));
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::abs(next - phi);
        phi = next;
        if (step <= 2.0 * kEps * std::max(1.0, std::abs(phi)) || hi - lo <= 2.0 * kEps) {
            break;
        }
    }
    return n * kPi + phi;
}

double am_landen_below_one(double u, double k) {
    if (k == 0.0) {
        return u;
    }
    constexpr int kMaxLevels = 32;
    double a[kMaxLevels + 1];
    double c[kMaxLevels + 1];
    a[0] = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    c[0] = k;
    int levels = 0;
    while (std::abs(c[levels]) > kEps && levels < kMaxLevels) {
        const double an = a[levels];
        a[levels + 1] = 0.5 * (an + b);
        c[levels + 1] = 0.5 * (an - b);
        b = std::sqrt(an * b);
        ++levels;
    }
    double phi = std::ldexp(a[levels] * u, levels);
    for (int n = levels; n > 0; --n) {
        phi = 0.5 * (phi + std::asin(c[n] / a[n] * std::sin(phi)));
    }
    return phi;
}

// Epsilon function for 0 <= k <= 1 at amplitude `am`.
double epsilon_below_one(double am, double k) {
    const auto [n, r] = reduce_amplitude(am);
    if (k == 1.0) {
        return std::sin(r) + 2.0 * n;
    }
    double value = e_principal(std::sin(r), std::cos(r), k);
    if (n != 0.0) {
        value += 2.0 * n * complete_e(k);
    }
    return value;
}

}  // namespace

double carlson_rf(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0 || (x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
        throw DomainError("carlson_rf: invalid arguments");
    }
    const double a0 = (x + y + z) / 3.0;
    double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
               std::pow(3.0 * kEps, 1.0 / 6.0);
    double a = a0;
    while (q >= std::abs(a)) {
        const double sx = std::sqrt(x);
        const double sy = std::sqrt(y);
        const double sz = std::sqrt(z);
        const double lambda = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        q *= 0.25;
    }
    const double dx = (a - x) / a;
    const double dy = (a - y) / a;
    const double dz = -dx - dy;
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

double carlson_rd(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z <= 0.0 || (x == 0.0 && y == 0.0)) {
        throw DomainError("carlson_rd: invalid arguments");
    }
    const double a0 = (x + y + 3.0 * z) / 5.0;
    double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
               std::pow(0.25 * kEps, 1.0 / 6.0);
    double a = a0;
    double sum = 0.0;
    double fac = 1.0;
    while (q >= std::abs(a)) {
        const double sx = std::sqrt(x);
        const double sy = std::sqrt(y);
        const double sz = std::sqrt(z);
        const double lambda = sx * sy + sx * sz + sy * sz;
        sum += fac / (sz * (z + lambda));
        fac *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        q *= 0.25;
    }
    const double dx = (a - x) / a;
    const double dy = (a - y) / a;
    const double dz = -(dx + dy) / 3.0;
    const double xy = dx * dy;
    const double z2 = dz * dz;
    const double e2 = xy - 6.0 * z2;
    const double e3 = (3.0 * xy - 8.0 * z2) * dz;
    const double e4 = 3.0 * (xy - z2) * z2;
    const double e5 = xy * z2 * dz;
    const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                          9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return fac * series / (a * std::sqrt(a)) + 3.0 * sum;
}

double complete_k(double k) {
    require_modulus(k, "complete_k");
    if (k >= 1.0) {
        throw DomainError("complete_k: modulus must be below 1");
    }
    return carlson_rf(0.0, (1.0 - k) * (1.0 + k), 1.0);
}

double complete_e(double k) {
    require_modulus(k, "complete_e");
    if (k > 1.0) {
        throw DomainError("complete_e: modulus must not exceed 1");
    }
    if (k == 1.0) {
        return 1.0;
    }
    const double kc2 = (1.0 - k) * (1.0 + k);
    return carlson_rf(0.0, kc2, 1.0) - (k * k / 3.0) * carlson_rd(0.0, kc2, 1.0);
}

double ellint_f(double beta, double k) {
    require_finite(beta, k, "ellint_f");
    require_modulus(k, "ellint_f");
    if (k < 1.0) {
        const auto [n, r] = reduce_amplitude(beta);
        double value = f_principal(std::sin(r), std::cos(r), k);
        if (n != 0.0) {
            value += 2.0 * n * complete_k(k);
        }
        return value;
    }
    if (k == 1.0) {
        if (std::abs(beta) >= kHalfPi) {
            throw DomainError("ellint_f: integral diverges for k = 1 and |beta| >= pi/2");
        }
        return std::atanh(std::sin(beta));
    }
    // Reciprocal modulus: sin(gamma) = k sin(beta), F(beta, k) = F(gamma, 1/k) / k.
    if (std::abs(beta) > kHalfPi) {
        throw DomainError("ellint_f: |beta| > pi/2 with modulus above 1");
    }
    double s = k * std::sin(beta);
    if (std::abs(s) > 1.0 + 8.0 * kEps) {
        throw DomainError("ellint_f: |k sin(beta)| > 1");
    }
    s = std::clamp(s, -1.0, 1.0);
    const double cg2 = std::max(0.0, (1.0 - s) * (1.0 + s));
    const double cb = std::cos(beta);
    return s * carlson_rf(cg2, cb * cb, 1.0) / k;
}

double ellint_e(double beta, double k) {
    require_finite(beta, k, "ellint_e");
    require_modulus(k, "ellint_e");
    if (k <= 1.0) {
        return epsilon_below_one(beta, k);
    }
    if (std::abs(beta) > kHalfPi) {
        throw DomainError("ellint_e: |beta| > pi/2 with modulus above 1");
    }
    double s = k * std::sin(beta);
    if (std::abs(s) > 1.0 + 8.0 * kEps) {
        throw DomainError("ellint_e: |k sin(beta)| > 1");
    }
    s = std::clamp(s, -1.0, 1.0);
    const double m = 1.0 / k;
    const double cg2 = std::max(0.0, (1.0 - s) * (1.0 + s));
    const double cb = std::cos(beta);
    const double rf = carlson_rf(cg2, cb * cb, 1.0);
    const double f_m = s * rf;
    const double e_m = f_m - (m * m / 3.0) * s * s * s * carlson_rd(cg2, cb * cb, 1.0);
    return k * e_m - (k - 1.0) * (k + 1.0) / k * f_m;
}

JacobiPoint jacobi(double u, double k) {
    require_finite(u, k, "jacobi");
    require_modulus(k, "jacobi");
    if (k == 0.0) {
        return {u, std::sin(u), std::cos(u), 1.0, u};
    }
    if (k < 1.0) {
        const double am = am_below_one(u, k);
        const double s = std::sin(am);
        const double c = std::cos(am);
        return {am, s, c, std::sqrt(delta_squared(k, s, c)), epsilon_below_one(am, k)};
    }
    if (k == 1.0) {
        const double t = std::tanh(u);
        const double sech = 1.0 / std::cosh(u);
        return {std::atan(std::sinh(u)), t, sech, sech, t};
    }
    const double m = 1.0 / k;
    const double inner = am_below_one(k * u, m);
    const double s = std::sin(inner);
    const double c = std::cos(inner);
    const double excess = (k - 1.0) * (k + 1.0);
    const double cn = std::sqrt(excess + c * c) / k;
    return {std::atan2(s, std::sqrt(excess + c * c)), s / k, cn, c,
            k * epsilon_below_one(inner, m) - excess * u};
}

double jacobi_am(double u, double k) {
    require_finite(u, k, "jacobi_am");
    require_modulus(k, "jacobi_am");
    if (k < 1.0) {
        return am_below_one(u, k);
    }
    if (k == 1.0) {
        return std::atan(std::sinh(u));
    }
    const double inner = am_below_one(k * u, 1.0 / k);
    const double c = std::cos(inner);
    return std::atan2(std::sin(inner), std::sqrt((k - 1.0) * (k + 1.0) + c * c));
}

double jacobi_am_landen(double u, double k) {
    require_finite(u, k, "jacobi_am_landen");
    require_modulus(k, "jacobi_am_landen");
    if (k < 1.0) {
        return am_landen_below_one(u, k);
    }
    if (k == 1.0) {
        return std::atan(std::sinh(u));
    }
    const double inner = am_landen_below_one(k * u, 1.0 / k);
    const double c = std::cos(inner);
    return std::atan2(std::sin(inner), std::sqrt((k - 1.0) * (k + 1.0) + c * c));
}

double jacobi_sn(double u, double k) { return jacobi(u, k).sn; }
double jacobi_cn(double u, double k) { return jacobi(u, k).cn; }

double jacobi_dn(double u, double k) {
    require_finite(u, k, "jacobi_dn");
    require_modulus(k, "jacobi_dn");
    if (k <= 1.0) {
        if (k == 1.0) {
            return 1.0 / std::cosh(u);
        }
        const double am = am_below_one(u, k);
        return std::sqrt(delta_squared(k, std::sin(am), std::cos(am)));
    }
    return std::cos(am_below_one(k * u, 1.0 / k));
}

double jacobi_epsilon(double u, double k) { return jacobi(u, k).epsilon; }

}  // namespace ccb::elliptic
