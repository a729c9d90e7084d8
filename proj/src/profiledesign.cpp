#include "ccbuckle/profiledesign.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <ostream>
#include <utility>

#include <fmt/core.h>

#include "ccbuckle/csv.hpp"
#include "ccbuckle/errors.hpp"
#include "ccbuckle/quadrature.hpp"

namespace ccb::design {

namespace {

void require_beta(double beta, const char* fn) {
    if (beta == 0.0) {
        throw DegenerateLoad(fmt::format("{}: target force must not vanish", fn));
    }
    if (!std::isfinite(beta)) {
        throw DomainError(fmt::format("{}: target force must be finite", fn));
    }
}

// f'' of a designed profile given beta and beta' at psi.
double designed_d2f(double psi, double beta, double dbeta) {
    const double c2 = (1.0 - psi) * (1.0 + psi);
    const double c = std::sqrt(c2);
    const double t = std::asin(psi);
    return -1.0 / (c2 * c) - 1.0 / (beta * c2) + t * dbeta / (beta * beta * c) -
           t * psi / (beta * c2 * c);
}

double designed_df(double psi, double beta) {
    const double c = std::sqrt((1.0 - psi) * (1.0 + psi));
    return -psi / c - std::asin(psi) / (beta * c);
}

}  // namespace

double TargetForceLaw::slope(double psi) const {
    if (dbeta) {
        return dbeta(psi);
    }
    constexpr double h = 1e-6;
    if (psi - h >= 0.0 && psi + h <= psi_max) {
        return (beta(psi + h) - beta(psi - h)) / (2.0 * h);
    }
    if (psi - h < 0.0) {
        return (-3.0 * beta(psi) + 4.0 * beta(psi + h) - beta(psi + 2.0 * h)) / (2.0 * h);
    }
    return (3.0 * beta(psi) - 4.0 * beta(psi - h) + beta(psi - 2.0 * h)) / (2.0 * h);
}

void TargetForceLaw::validate() const {
    if (!beta) {
        throw DomainError(fmt::format("target law '{}': no force function", name));
    }
    if (!(psi_max > 0.0 && psi_max < 1.0)) {
        throw DomainError(fmt::format("target law '{}': psi_max = {} must lie in (0, 1)", name, psi_max));
    }
    constexpr int kSamples = 4000;
    const double b0 = beta(0.0);
    for (int i = 0; i <= kSamples; ++i) {
        const double psi = psi_max * i / kSamples;
        const double b = beta(psi);
        if (!std::isfinite(b) || b == 0.0 || std::signbit(b) != std::signbit(b0)) {
            throw DomainError(fmt::format("target law '{}': force vanishes or changes sign near psi = {}",
                                          name, psi));
        }
    }
}

TargetForceLaw constant_law(double beta, double psi_max) {
    require_beta(beta, "constant_law");
    return {fmt::format("constant({})", beta), [beta](double) { return beta; },
            [](double) { return 0.0; }, psi_max};
}

TargetForceLaw sinusoidal_law(double beta0, double amplitude, double period, double psi_max) {
    require_beta(beta0, "sinusoidal_law");
    if (!(period > 0.0)) {
        throw DomainError("sinusoidal_law: period must be positive");
    }
    const double w = 2.0 * std::numbers::pi / period;
    return {fmt::format("sinusoidal({}, {}, {})", beta0, amplitude, period),
            [=](double p) { return beta0 * (1.0 + amplitude * std::sin(w * p)); },
            [=](double p) { return beta0 * amplitude * w * std::cos(w * p); }, psi_max};
}

TargetForceLaw circular_law(double beta0, double radius, double psi_max) {
    require_beta(beta0, "circular_law");
    if (!(radius > psi_max)) {
        throw DomainError("circular_law: radius must exceed psi_max");
    }
    return {fmt::format("circular({}, {})", beta0, radius),
            [=](double p) { return beta0 - (radius - std::sqrt(radius * radius - p * p)); },
            [=](double p) { return -p / std::sqrt(radius * radius - p * p); }, psi_max};
}

TargetForceLaw tabulated_law(std::vector<double> psi, std::vector<double> beta) {
    if (psi.size() < 2 || psi.size() != beta.size()) {
        throw DomainError("tabulated_law: need at least two (psi, beta) pairs of equal count");
    }
    if (psi.front() != 0.0) {
        throw DomainError("tabulated_law: first abscissa must be 0");
    }
    for (std::size_t i = 1; i < psi.size(); ++i) {
        if (!(psi[i] > psi[i - 1])) {
            throw DomainError("tabulated_law: abscissae must be strictly increasing");
        }
    }
    // Piecewise linear: a zero or sign change shows up at the nodes.
    for (double b : beta) {
        if (!std::isfinite(b) || b == 0.0 || std::signbit(b) != std::signbit(beta.front())) {
            throw DomainError(fmt::format("tabulated_law: force vanishes or changes sign (value {})", b));
        }
    }
    const double top = psi.back();
    auto table = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(std::move(psi),
                                                                                     std::move(beta));
    auto segment = [table](double p) {
        const auto& xs = table->first;
        const auto it = std::upper_bound(xs.begin(), xs.end(), p);
        std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
        return std::min(i, xs.size() - 2);
    };
    return {"tabulated",
            [table, segment](double p) {
                const auto& [xs, ys] = *table;
                const std::size_t i = segment(p);
                const double t = (p - xs[i]) / (xs[i + 1] - xs[i]);
                return (1.0 - t) * ys[i] + t * ys[i + 1];
            },
            [table, segment](double p) {
                const auto& [xs, ys] = *table;
                const std::size_t i = segment(p);
                return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
            },
            top};
}

onedof::ProfileShape design_profile(const TargetForceLaw& law, double tol) {
    law.validate();
    if (!(tol > 0.0)) {
        throw DomainError("design_profile: tolerance must be positive");
    }
    auto f = [law, tol](double psi) {
        const double top = std::asin(psi);
        auto integrand = [&law](double tau) { return tau / law.beta(std::sin(tau)); };
        return std::sqrt((1.0 - psi) * (1.0 + psi)) - quad::integrate(integrand, 0.0, top, tol).value;
    };
    auto df = [law](double psi) { return designed_df(psi, law.beta(psi)); };
    auto d2f = [law](double psi) { return designed_d2f(psi, law.beta(psi), law.slope(psi)); };
    const double curv0 = -1.0 - 1.0 / law.beta(0.0);
    return onedof::ProfileShape("designed " + law.name, f, df, d2f, 0.0, law.psi_max, curv0, curv0);
}

onedof::ProfileShape neutral_profile(double beta, double psi_max) {
    require_beta(beta, "neutral_profile");
    if (!(psi_max > 0.0 && psi_max < 1.0)) {
        throw DomainError("neutral_profile: psi_max must lie in (0, 1)");
    }
    auto f = [beta](double psi) {
        const double t = std::asin(psi);
        return std::sqrt((1.0 - psi) * (1.0 + psi)) - t * t / (2.0 * beta);
    };
    auto df = [beta](double psi) { return designed_df(psi, beta); };
    auto d2f = [beta](double psi) { return designed_d2f(psi, beta, 0.0); };
    const double curv0 = -1.0 - 1.0 / beta;
    return onedof::ProfileShape(fmt::format("neutral({})", beta), f, df, d2f, -psi_max, psi_max,
                                curv0, curv0);
}

double closed_loop_validate(const onedof::ProfileShape& profile, const TargetForceLaw& law,
                            std::span<const double> phi_grid, Exec exec) {
    const onedof::OneDofSystem sys{1.0, 1.0, 0.0, profile};
    std::vector<double> errors(phi_grid.size());
    for_each_index(phi_grid.size(), exec, [&](std::size_t i) {
        const double phi = phi_grid[i];
        const double target = law.beta(std::sin(phi));
        errors[i] = std::abs(onedof::equilibrium_force(phi, sys) - target) / std::abs(target);
    });
    double worst = 0.0;
    for (double e : errors) {
        worst = std::max(worst, e);
    }
    return worst;
}

std::vector<ProfileSample> sample_profile(const onedof::ProfileShape& profile, std::size_t n, Exec exec) {
    if (n < 2) {
        throw DomainError("sample_profile: need at least two samples");
    }
    const auto psi = onedof::linspace(profile.psi_min(), profile.psi_max(), n);
    std::vector<ProfileSample> out(n);
    for_each_index(n, exec, [&](std::size_t i) { out[i] = {psi[i], profile.f(psi[i])}; });
    return out;
}

void write_profile_csv(std::ostream& out, std::span<const ProfileSample> samples) {
    out << "psi,f\n";
    for (const auto& s : samples) {
        out << csv::num(s.psi) << ',' << csv::num(s.f) << '\n';
    }
}

}  // namespace ccb::design
