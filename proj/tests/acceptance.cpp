// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/core.h>

#include "ccbuckle/elastica.hpp"
#include "ccbuckle/elliptic.hpp"
#include "ccbuckle/onedof.hpp"
#include "ccbuckle/profiledesign.hpp"
#include "ccbuckle/rodlinear.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using std::numbers::pi;
using namespace ccb;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1 ------------------------------------------------------------------------

Outcome closed_form_critical_loads() {
    const auto sys = [](double chi) { return onedof::OneDofSystem{1.0, 1.0, 0.0, onedof::profile_circular(chi)}; };
    const auto s0 = sys(0.0);
    const auto s1 = sys(-4.0);
    const auto s2 = sys(4.0);
    const auto t0 = Clock::now();
    const double a = onedof::critical_load(s0);
    const double b = onedof::critical_load(s1);
    const double c = onedof::critical_load(s2);
    const double elapsed = seconds_since(t0);
    const double err = std::max({std::abs(a + 1.0), std::abs(b - 1.0 / 3.0), std::abs(c + 0.2)});
    return {err <= 1e-14 && elapsed < 1e-3, fmt::format("max error {:.1e}, {:.3f} ms", err, elapsed * 1e3)};
}

// 2 ------------------------------------------------------------------------

// Force and stability indicator on a circular constraint written out directly.
double circle_force(double phi, double chi) {
    const double s = std::sin(phi);
    const double q = std::sqrt(1.0 - chi * chi * s * s);
    return -phi * q / (s * (chi * std::cos(phi) + q));
}

double circle_stability(double phi, double chi) {
    const double s = std::sin(phi);
    const double q = std::sqrt(1.0 - chi * chi * s * s);
    return 1.0 - chi * chi * s * s - phi * (1.0 / std::tan(phi) - chi * s * q);
}

Outcome circular_closed_form() {
    double worst = 0.0;
    int mismatches = 0;
    int compared = 0;
    for (double chi : {-4.0, -0.5, 0.5, 4.0}) {
        const onedof::OneDofSystem sys{1.0, 1.0, 0.0, onedof::profile_circular(chi)};
        const double reach = std::asin(std::min(1.0, 1.0 / std::abs(chi)));
        for (int i = 0; i < 500; ++i) {
            const double phi = -reach + 2.0 * reach * (i + 0.5) / 500.0;
            const double F = onedof::equilibrium_force(phi, sys);
            const double ref = circle_force(phi, chi);
            worst = std::max(worst, std::abs(F - ref) / std::max(1.0, std::abs(ref)));
            const double ind = circle_stability(phi, chi);
            if (std::abs(ind) > 1e-9) {
                ++compared;
                mismatches += (onedof::stability_of(phi, F, sys) == onedof::Stability::stable) != (ind > 0);
            }
        }
    }
    return {worst < 1e-12 && mismatches == 0,
            fmt::format("force error {:.1e}, stability mismatches {}/{}", worst, mismatches, compared)};
}

// 3 ------------------------------------------------------------------------

Outcome energy_stationarity() {
    const double h = 1e-6;
    const onedof::OneDofSystem systems[] = {
        {1.0, 1.0, 0.05, onedof::profile_flat()},
        {1.0, 1.0, 0.01, onedof::profile_circular(4.0)},
        {2.0, 1.5, 0.01, onedof::profile_s_shaped(4.0)},
        {1.0, 1.0, 0.0, design::neutral_profile(-1.0)},
    };
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& sys : systems) {
        // Even count on a symmetric range keeps phi = 0 off the grid.
        const double reach = std::asin(std::min(1.0, sys.profile.psi_max())) * 0.98;
        const auto grid = onedof::linspace(-reach, reach, 250);
        for (const auto& pt : onedof::trace_branch(sys, grid).points) {
            const double dW = (onedof::potential_energy(pt.phi + h, pt.F, sys) -
                               onedof::potential_energy(pt.phi - h, pt.F, sys)) / (2 * h);
            worst = std::max(worst, std::abs(dW) / sys.k);
            ++n;
        }
    }
    return {worst < 1e-8 && n == 1000, fmt::format("{} points, max |dW/dphi| / k = {:.1e}", n, worst)};
}

// 4 ------------------------------------------------------------------------

Outcome neutral_closed_loop() {
    const auto t0 = Clock::now();
    const auto phi = onedof::linspace(0.05, 1.2, 200);
    const double neutral = design::closed_loop_validate(design::neutral_profile(-1.0), design::constant_law(-1.0), phi);
    const auto sin_law = design::sinusoidal_law(-1.0, 0.3, 1.2);
    const auto circ_law = design::circular_law(-1.0, 2.0);
    const double sinusoidal = design::closed_loop_validate(design::design_profile(sin_law), sin_law, phi);
    const double circular = design::closed_loop_validate(design::design_profile(circ_law), circ_law, phi);
    const double elapsed = seconds_since(t0);
    const double worst = std::max({neutral, sinusoidal, circular});
    return {worst < 1e-6 && elapsed < 1.0,
            fmt::format("neutral {:.1e}, sinusoidal {:.1e}, circular {:.1e}, {:.3f} s", neutral, sinusoidal,
                        circular, elapsed)};
}

// 5 ------------------------------------------------------------------------

double oracle_f(double beta, double k) {
    if (beta == 0.0) {
        return 0.0;
    }
    boost::math::quadrature::tanh_sinh<double> ts;
    auto g = [k](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(std::max(0.0, 1.0 - k * k * s * s));
    };
    return std::copysign(ts.integrate(g, 0.0, std::abs(beta), 1e-15), beta);
}

double oracle_e(double beta, double k) {
    auto g = [k](double t) {
        const double s = std::sin(t);
        return std::sqrt(std::max(0.0, 1.0 - k * k * s * s));
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, beta, 15, 1e-15);
}

double beta_max(double k) { return k > 1.0 ? std::asin(1.0 / k) : pi / 2; }

Outcome elliptic_suite() {
    double roundtrip = 0.0;
    double identity = 0.0;
    for (double k : {0.1, 0.5, 0.9, 1.2}) {
        const double bmax = beta_max(k);
        for (int i = 0; i < 200; ++i) {
            const double beta = -bmax + 2.0 * bmax * (i + 0.5) / 200.0;
            const double u = elliptic::ellint_f(beta, k);
            const double am = elliptic::jacobi_am(u, k);
            const double dn = elliptic::jacobi_dn(u, k);
            roundtrip = std::max(roundtrip, std::abs(am - beta));
            identity = std::max(identity, std::abs(dn * dn + k * k * std::sin(am) * std::sin(am) - 1.0));
        }
    }
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> kd(0.0, 2.5);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    double oracle = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double k = kd(rng);
        const double beta = ud(rng) * beta_max(k);
        oracle = std::max({oracle, std::abs(elliptic::ellint_f(beta, k) - oracle_f(beta, k)),
                           std::abs(elliptic::ellint_e(beta, k) - oracle_e(beta, k))});
    }
    return {roundtrip < 1e-10 && identity < 1e-10 && oracle < 1e-9,
            fmt::format("roundtrip {:.1e}, dn identity {:.1e}, quadrature oracle {:.1e}", roundtrip, identity, oracle)};
}

// 6 ------------------------------------------------------------------------

Outcome rod_characteristic() {
    using rod::LoadSign;
    const std::vector<double> grid{-5.0, -2.0, -1.25, -1.0, -0.8, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0};
    const rod::RodModel models[] = {{1.0, 1.0, 0.0, false, 0.0}, {1.0, 1.0, 1.0, false, 0.0},
                                    {1.0, 1.0, 0.0, true, 0.0}};
    bool ok = true;
    double slowest = 0.0;
    double drift = 0.0;
    for (auto m : models) {
        const auto t0 = Clock::now();
        for (double chi : grid) {
            m.chi_hat = chi;
            const auto a = rod::find_critical_loads(m, LoadSign::compression, 6 * pi, 1000, rod::kScanStep);
            const auto b = rod::find_critical_loads(m, LoadSign::compression, 6 * pi, 1000, rod::kScanStep / 2);
            ok = ok && a.size() == b.size() && a.size() >= 3;
            for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
                drift = std::max(drift, std::abs(a[i].alpha_l - b[i].alpha_l));
            }
        }
        slowest = std::max(slowest, seconds_since(t0));
    }

    // Comparative claims, roller end.
    auto first = [](double chi, LoadSign s) {
        const auto r = rod::find_critical_loads({1.0, 1.0, 0.0, false, chi}, s, 6 * pi, 1);
        return r.empty() ? std::nan("") : std::abs(r.front().F_cr);
    };
    int absent = 0;
    for (double chi : {0.5, 1.0, -0.8}) {
        absent += std::isnan(first(chi, LoadSign::tension));
    }
    const double t5 = first(-5.0, LoadSign::tension);
    const double c5 = first(-5.0, LoadSign::compression);
    const double t8 = first(-1.0 / 0.8, LoadSign::tension);
    const double c8 = first(-1.0 / 0.8, LoadSign::compression);
    const bool claims = absent == 3 && t5 < c5 && t8 > c8;
    ok = ok && drift <= 1e-12 && claims && slowest < 1.0;
    return {ok, fmt::format("step-halving drift {:.1e}, no-tension {}/3, |Ft|/|Fc| = {:.3f} (chi -5) and {:.3f} "
                            "(chi -1.25), slowest model {:.3f} s",
                            drift, absent, t5 / c5, t8 / c8, slowest)};
}

// 7 ------------------------------------------------------------------------

Outcome linear_nonlinear_coherence() {
    using rod::LoadSign;
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double chi : {-5.0, -2.0, -1.25}) {
        const elastica::ElasticaProblem p{1.0, 1.0, 0.0, -1.0 / chi, elastica::Half::left};
        const rod::RodModel m{1.0, 1.0, 0.0, false, chi};
        for (auto sign : {LoadSign::tension, LoadSign::compression}) {
            const double linear = rod::find_critical_loads(m, sign, 8 * pi, 1).front().F_cr;
            const double nonlinear = elastica::solve_R(1e-4, p, sign).F;
            worst = std::max(worst, std::abs(nonlinear / linear - 1.0));
        }
    }
    const double elapsed = seconds_since(t0);
    return {worst < 1e-3 && elapsed < 10.0, fmt::format("max relative difference {:.1e}, {:.3f} s", worst, elapsed)};
}

// 8 and 9 share the roller traces on the two circles ------------------------

const elastica::ElasticaProblem kTensile{1.0, 1.0, 0.0, 0.6, elastica::Half::left};
const elastica::ElasticaProblem kCompressive{1.0, 1.0, 0.0, 0.6, elastica::Half::right};

const std::vector<elastica::BranchTrace>& bicircle_traces() {
    static const auto traces = [] {
        const auto s = elastica::default_schedule(3.0);
        const std::vector<elastica::TraceRequest> req{{kTensile, s, rod::LoadSign::tension},
                                                      {kCompressive, s, rod::LoadSign::compression}};
        return elastica::trace_branches(req);
    }();
    return traces;
}

Outcome elastica_correctness() {
    const auto& trace = bicircle_traces()[0];
    if (!trace.complete) {
        return {false, trace.diagnostic};
    }
    double ode = 0.0;
    double first_integral = 0.0;
    double bc = 0.0;
    double arclength = 0.0;
    double residual = 0.0;
    const double h = 1e-4;
    for (int j = 1; j <= 20; ++j) {
        const auto st = elastica::solve_on_branch(trace, elastica::Quantity::phi, 0.75 * pi * j / 20.0);
        const double R = st.R;
        const double B = st.problem.B;
        const double a2 = std::abs(R) / B;
        const double k = st.modulus;
        auto th = [&](double s) { return elastica::theta_at(s, st); };
        for (int i = 1; i <= 20; ++i) {
            const double s = i / 21.0;
            const double d2 = (th(s + h) - 2 * th(s) + th(s - h)) / (h * h);
            ode = std::max(ode, std::abs(d2 - (R / B) * std::sin(th(s))) / a2);
            const double d1 = (th(s + 1e-5) - th(s - 1e-5)) / 2e-5;
            const double rhs = 2 * a2 * (2 / (k * k) - 1 - (R > 0 ? 1 : -1) * std::cos(th(s)));
            first_integral = std::max(first_integral, std::abs(d1 * d1 - rhs) / std::max(a2, std::abs(rhs)));
        }
        // Roller: inflexion at the constrained end.
        const double slope0 = (-3 * th(0) + 4 * th(h) - th(2 * h)) / (2 * h);
        const double expected0 = st.theta0 * st.problem.k_r / B;
        bc = std::max({bc, std::abs(slope0 - expected0) / std::max(std::abs(expected0), std::sqrt(a2)),
                       std::abs(th(st.problem.l) - st.phi), std::abs(th(0.0) - st.theta0)});
        const auto shape = elastica::shape_export(st, 1000);
        double length = 0.0;
        for (std::size_t i = 1; i < shape.size(); ++i) {
            length += std::hypot(shape[i].x1 - shape[i - 1].x1, shape[i].x2 - shape[i - 1].x2);
        }
        arclength = std::max(arclength, std::abs(length - st.problem.l));
        residual = std::max(residual, std::abs(st.residual));
    }
    const bool ok = ode < 1e-4 && first_integral < 1e-6 && bc < 1e-6 && arclength < 1e-4 && residual < 1e-10;
    return {ok, fmt::format("20 states: ODE {:.1e}, first integral {:.1e}, boundary {:.1e}, arclength {:.1e}, "
                            "compatibility {:.1e}",
                            ode, first_integral, bc, arclength, residual)};
}

Outcome postcritical_structure() {
    const auto& traces = bicircle_traces();
    bool ok = true;
    double worst_softening = 0.0;
    double worst_zero = 0.0;
    for (const auto& t : traces) {
        ok = ok && t.complete && !t.events.empty();
        for (std::size_t i = 1; i < t.points.size(); ++i) {
            const double dF = t.points[i].F - t.points[i - 1].F;
            const double dd = t.points[i].delta - t.points[i - 1].delta;
            worst_softening = std::max(worst_softening, dF * dd);
        }
        for (const auto& e : t.events) {
            const auto& z = t.points[e.index];
            worst_zero = std::max({worst_zero, std::abs(z.F) / std::abs(t.points.front().F),
                                   std::abs(z.phi - pi / 2) / pi});
        }
    }
    const auto shift = elastica::branch_shift(traces[0], traces[1]);
    ok = ok && worst_softening <= 1e-14 && worst_zero < 1e-12 && shift.max_force_deviation < 1e-6 &&
         std::abs(shift.measured_shift - shift.expected_shift) < 1e-6;
    return {ok, fmt::format("softening violation {:.1e}, |F| at phi = pi/2 {:.1e}, shift {:.9f} (2 R_c = {}), "
                            "aligned force deviation {:.1e} over {} points",
                            worst_softening, worst_zero, shift.measured_shift, shift.expected_shift,
                            shift.max_force_deviation, shift.points_compared)};
}

// 10 -----------------------------------------------------------------------

Outcome imperfection_asymmetry() {
    using onedof::Stability;
    const double reach = std::asin(0.25);
    const onedof::OneDofSystem pos{1.0, 1.0, 0.01, onedof::profile_s_shaped(4.0)};
    const auto up = onedof::trace_branch(pos, onedof::linspace(0.01 + 1e-4, reach - 1e-4, 600)).points;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < up.size(); ++i) {
        if (up[i].F > up[peak].F) {
            peak = i;
        }
    }
    const bool interior_peak = peak > 0 && peak + 1 < up.size();
    const bool stable_before = std::all_of(up.begin(), up.begin() + static_cast<long>(peak),
                                           [](const auto& p) { return p.stability == Stability::stable; });
    const bool unstable_after = std::all_of(up.begin() + static_cast<long>(peak) + 1, up.end(),
                                            [](const auto& p) { return p.stability == Stability::unstable; });

    const onedof::OneDofSystem neg{1.0, 1.0, -0.01, onedof::profile_s_shaped(4.0)};
    const auto down = onedof::trace_branch(neg, onedof::linspace(-0.01 + 1e-5, -1e-5, 600)).points;
    bool monotone = true;
    for (std::size_t i = 1; i < down.size(); ++i) {
        monotone = monotone && down[i].F > down[i - 1].F;
    }
    const bool all_stable = std::all_of(down.begin(), down.end(),
                                        [](const auto& p) { return p.stability == Stability::stable; });
    const bool tensile = down.front().F > 0.0;
    const bool ok = interior_peak && stable_before && unstable_after && monotone && all_stable && tensile;
    return {ok, fmt::format("phi0 = +0.01: peak F = {:.6f} at phi = {:.4f}, unstable after: {}; phi0 = -0.01: "
                            "monotone {}, all stable {}, F rising to {:.1f} as phi -> 0",
                            up[peak].F, up[peak].phi, unstable_after, monotone, all_stable, down.back().F)};
}

// 11 -----------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli_reproducibility() {
    const fs::path root = fs::temp_directory_path() / "ccbuckle_acceptance";
    fs::remove_all(root);
    std::ostringstream sink;
    const auto t0 = Clock::now();
    int failures = 0;
    for (const auto& name : cli::scenario_names()) {
        failures += cli::run_cli({"--out", (root / "a").string(), "--scenario", name}, sink, sink) != cli::kExitOk;
    }
    const double elapsed = seconds_since(t0);
    failures += cli::run_cli({"--out", (root / "b").string(), "--scenario", "fig1"}, sink, sink) != cli::kExitOk;
    int compared = 0;
    int differ = 0;
    for (const auto& e : fs::directory_iterator(root / "b")) {
        ++compared;
        differ += slurp(e.path()) != slurp(root / "a" / e.path().filename());
    }
    fs::remove_all(root);
    return {failures == 0 && differ == 0 && compared > 0 && elapsed < 60.0,
            fmt::format("fig1 files identical {}/{}, full scenario suite {:.2f} s, failed runs {}", compared - differ,
                        compared, elapsed, failures)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"Closed-form 1-DOF critical loads", closed_form_critical_loads},
        {"Circular-constraint closed-form agreement", circular_closed_form},
        {"Energy stationarity", energy_stationarity},
        {"Neutral-profile closed loop", neutral_closed_loop},
        {"Elliptic suite", elliptic_suite},
        {"Rod characteristic equation", rod_characteristic},
        {"Linear/nonlinear coherence", linear_nonlinear_coherence},
        {"Elastica correctness", elastica_correctness},
        {"Postcritical structure", postcritical_structure},
        {"Imperfection asymmetry", imperfection_asymmetry},
        {"CLI reproducibility", cli_reproducibility},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << fmt::format("{} {:>2} {} ({:.3f} s): {}\n", o.pass ? "PASS" : "FAIL", index, name,
                                 seconds_since(t0), o.detail);
    }
    std::cout << fmt::format("{}/{} criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
