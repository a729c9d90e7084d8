#include "ccbuckle/elastica.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/core.h>

#include "ccbuckle/csv.hpp"
#include "ccbuckle/elliptic.hpp"
#include "ccbuckle/errors.hpp"
#include "ccbuckle/roots.hpp"

namespace ccb::elastica {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double sgn(double R) { return R > 0.0 ? 1.0 : -1.0; }

double heaviside_pi(double R) { return R > 0.0 ? kPi : 0.0; }

// Index of the half-turn containing phi, counted from pi/2; it changes exactly
// when cos(phi) changes sign.
double quarter_index(double phi) { return std::floor((phi - 0.5 * kPi) / kPi); }

double quantity_of(const ElasticaState& s, Quantity q) { return q == Quantity::phi ? s.phi : s.delta; }

struct Endpoint {
    elliptic::JacobiPoint at0;
    elliptic::JacobiPoint at_s;
    double u;
};

Endpoint evaluate(double s, const ElasticaState& st) {
    const double u = s * st.alpha_tilde / st.modulus;
    return {elliptic::jacobi(st.w0, st.modulus), elliptic::jacobi(st.w0 + u, st.modulus), u};
}

Point2 coordinates_from(const Endpoint& e, const ElasticaState& st) {
    const double k = st.modulus;
    const double pre = sgn(st.R) * 2.0 / (k * st.alpha_tilde);
    return {pre * ((1.0 - 0.5 * k * k) * e.u + e.at0.epsilon - e.at_s.epsilon),
            pre * (e.at_s.dn - e.at0.dn)};
}

// Bracket on theta0 between two states of the same branch, refined until
// quantity(state) == target. Each trial state is a warm solve seeded by
// linear interpolation of R across the bracket.
ElasticaState refine_between(const ElasticaState& a, const ElasticaState& b, Quantity q, double target) {
    const auto& problem = a.problem;
    auto solve_at = [&](double theta0) {
        const double t = (theta0 - a.theta0) / (b.theta0 - a.theta0);
        return solve_R_near(theta0, problem, a.R + t * (b.R - a.R));
    };
    ElasticaState best = std::abs(quantity_of(a, q) - target) <= std::abs(quantity_of(b, q) - target) ? a : b;
    auto g = [&](double theta0) {
        const ElasticaState st = solve_at(theta0);
        if (std::abs(quantity_of(st, q) - target) < std::abs(quantity_of(best, q) - target)) {
            best = st;
        }
        return quantity_of(st, q) - target;
    };
    const roots::Bracket br{a.theta0, b.theta0, quantity_of(a, q) - target, quantity_of(b, q) - target};
    const double theta0 = roots::solve_bracketed(g, br, 4.0 * kEps * b.theta0, 0.0, 200);
    if (theta0 != best.theta0) {
        g(theta0);
    }
    return best;
}

}  // namespace

const char* to_string(Half h) noexcept { return h == Half::left ? "left" : "right"; }

const char* to_string(BranchEvent::Kind k) noexcept {
    return k == BranchEvent::Kind::load_sign_change ? "load_sign_change" : "half_switch";
}

void ElasticaProblem::validate() const {
    if (!(B > 0.0) || !std::isfinite(B)) {
        throw DomainError(fmt::format("elastica: bending stiffness B = {} must be positive", B));
    }
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw DomainError(fmt::format("elastica: length l = {} must be positive", l));
    }
    if (!(k_r >= 0.0) || !std::isfinite(k_r)) {
        throw DomainError(fmt::format("elastica: spring stiffness k_r = {} must be non-negative", k_r));
    }
    if (!(R_c > 0.0) || !std::isfinite(R_c)) {
        throw DomainError(fmt::format("elastica: constraint radius R_c = {} must be positive", R_c));
    }
}

double ElasticaState::normalized_F() const {
    return 4.0 * F * problem.l * problem.l / (kPi * kPi * problem.B);
}

double modulus_from(double theta0, double R, double k_r, double B) {
    if (!std::isfinite(theta0) || !std::isfinite(R)) {
        throw DomainError("modulus_from: non-finite argument");
    }
    if (R == 0.0) {
        throw DegenerateLoad("modulus_from: zero reaction");
    }
    const double a2 = std::abs(R) / B;
    const double c0 = theta0 * k_r / B;
    // 2 a2 (sgn(R) cos(theta0) + 1) written without cancellation.
    const double h = R > 0.0 ? std::cos(0.5 * theta0) : std::sin(0.5 * theta0);
    const double den = c0 * c0 + 4.0 * a2 * h * h;
    if (!(den > 0.0)) {
        throw DegenerateLoad(fmt::format("modulus_from: vanishing denominator at theta0 = {}, R = {}", theta0, R));
    }
    return 2.0 * std::sqrt(a2 / den);
}

ElasticaState make_state(double theta0, double R, const ElasticaProblem& problem) {
    problem.validate();
    if (!(theta0 >= 0.0) || !std::isfinite(theta0)) {
        throw DomainError(fmt::format("elastica: theta0 = {} must be finite and non-negative", theta0));
    }
    ElasticaState st{};
    st.problem = problem;
    st.theta0 = theta0;
    st.R = R;
    st.modulus = modulus_from(theta0, R, problem.k_r, problem.B);
    st.alpha_tilde = std::sqrt(std::abs(R) / problem.B);
    st.beta0 = 0.5 * (theta0 - heaviside_pi(R));
    const double k = st.modulus;
    if (k < 1.0) {
        st.w0 = elliptic::ellint_f(st.beta0, k);
    } else {
        // dn(w0, k) from the first integral; for k > 1 the reciprocal modulus
        // gives sn(k w0, 1/k) = k sin(beta0), cn(k w0, 1/k) = dn(w0, k) >= 0.
        const double dn0 = k * theta0 * problem.k_r / (2.0 * problem.B * st.alpha_tilde);
        if (k == 1.0) {
            if (dn0 == 0.0) {
                throw DegenerateLoad("elastica: state lies on the separatrix (k = 1 with an inflexion at s = 0)");
            }
            st.w0 = std::asinh(std::sin(st.beta0) / dn0);
        } else {
            const double gamma = std::atan2(k * std::sin(st.beta0), dn0);
            st.w0 = elliptic::ellint_f(gamma, 1.0 / k) / k;
        }
    }
    const Endpoint e = evaluate(problem.l, st);
    st.phi = 2.0 * e.at_s.am + heaviside_pi(R);
    const Point2 p = coordinates_from(e, st);
    const double c = problem.centre();
    const double sp = std::sin(st.phi);
    const double cp = std::cos(st.phi);
    st.F = R * cp;
    st.residual = (p.x1 - c) * sp - p.x2 * cp;
    st.delta = (p.x1 - c) * cp + p.x2 * sp - (problem.l - c);
    return st;
}

double theta_at(double s, const ElasticaState& state) {
    if (s == 0.0) {
        return state.theta0;
    }
    const double u = s * state.alpha_tilde / state.modulus;
    return 2.0 * elliptic::jacobi_am(state.w0 + u, state.modulus) + heaviside_pi(state.R);
}

Point2 coordinates_at(double s, const ElasticaState& state) {
    if (s == 0.0) {
        return {0.0, 0.0};
    }
    return coordinates_from(evaluate(s, state), state);
}

double curvature_at(double s, const ElasticaState& state) {
    const double u = s * state.alpha_tilde / state.modulus;
    return 2.0 * state.alpha_tilde / state.modulus * elliptic::jacobi_dn(state.w0 + u, state.modulus);
}

double compatibility_residual(double R, double theta0, const ElasticaProblem& problem) {
    return make_state(theta0, R, problem).residual;
}

double end_displacement(const ElasticaState& state, DeltaPairing pairing) {
    return pairing == DeltaPairing::validated ? state.delta : state.delta - 2.0 * state.problem.centre();
}

double linear_critical_reaction(const ElasticaProblem& problem, rod::LoadSign sign) {
    problem.validate();
    const rod::RodModel model{problem.B, problem.l, problem.k_r, false, problem.chi_hat()};
    const auto modes = rod::find_critical_loads(model, sign, 8.0 * kPi, 1, rod::kScanStep, Exec::serial);
    if (modes.empty()) {
        throw NoBracket(fmt::format("no linear {} critical load for chi_hat = {}", rod::to_string(sign),
                                    problem.chi_hat()),
                        0.0, 8.0 * kPi);
    }
    return modes.front().F_cr;
}

ElasticaState solve_R(double theta0, const ElasticaProblem& problem, rod::LoadSign sign,
                      std::optional<double> seed, SolveInfo* info, Exec exec) {
    problem.validate();
    if (!(theta0 > 0.0) || !std::isfinite(theta0)) {
        throw DomainError(fmt::format("solve_R: theta0 = {} must be positive", theta0));
    }
    const double s = sign == rod::LoadSign::tension ? 1.0 : -1.0;
    const double center = seed ? *seed : linear_critical_reaction(problem, sign);
    if (!(center * s > 0.0) || !std::isfinite(center)) {
        throw DomainError(fmt::format("solve_R: seed {} does not have the sign of a {} reaction", center,
                                      rod::to_string(sign)));
    }
    constexpr int kSamples = 200;
    const double lo = 0.2 * std::abs(center);
    const double hi = 5.0 * std::abs(center);
    std::vector<double> grid(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        grid[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (kSamples - 1));
    }
    grid.back() = hi;
    auto f = [&](double magnitude) { return compatibility_residual(s * magnitude, theta0, problem); };
    const auto values = roots::sample(f, grid, exec);
    const auto brackets = roots::sign_changes(grid, values);
    if (info) {
        *info = {s * lo, s * hi, static_cast<int>(brackets.size())};
    }
    if (brackets.empty()) {
        throw NoBracket(fmt::format("solve_R: no root of the compatibility residual for |R| in [{}, {}] at "
                                    "theta0 = {}",
                                    lo, hi, theta0),
                        s * lo, s * hi);
    }
    const auto& b = brackets.front();
    const double magnitude = roots::solve_bracketed(f, b, 4.0 * kEps * b.hi);
    ElasticaState st = make_state(theta0, s * magnitude, problem);
    if (!(std::abs(st.residual) <= 1e-10 * problem.l)) {
        throw Error(fmt::format("solve_R: residual {} at the sign change |R| = {} did not vanish", st.residual,
                                magnitude));
    }
    return st;
}

ElasticaState solve_R_near(double theta0, const ElasticaProblem& problem, double previous_R) {
    if (previous_R == 0.0 || !std::isfinite(previous_R)) {
        throw DomainError("solve_R_near: previous reaction must be finite and non-zero");
    }
    const double s = sgn(previous_R);
    const double m0 = std::abs(previous_R);
    auto f = [&](double magnitude) {
        try {
            return compatibility_residual(s * magnitude, theta0, problem);
        } catch (const DegenerateLoad&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const double f0 = f(m0);
    if (f0 == 0.0) {
        return make_state(theta0, previous_R, problem);
    }
    if (!std::isfinite(f0)) {
        throw NoBracket(fmt::format("solve_R_near: residual undefined at R = {}", previous_R), previous_R,
                        previous_R);
    }
    double last_lo = m0, f_last_lo = f0;
    double last_hi = m0, f_last_hi = f0;
    bool lo_alive = true, hi_alive = true;
    for (int j = 0; j < 40 && (lo_alive || hi_alive); ++j) {
        const double d = 1e-3 * std::pow(1.3, j);
        std::optional<roots::Bracket> found_lo, found_hi;
        if (lo_alive) {
            const double m = m0 * std::exp(-d);
            const double fm = f(m);
            if (!std::isfinite(fm)) {
                lo_alive = false;
            } else if (fm == 0.0 || std::signbit(fm) != std::signbit(f_last_lo)) {
                found_lo = roots::Bracket{m, last_lo, fm, f_last_lo};
            } else {
                last_lo = m;
                f_last_lo = fm;
            }
        }
        if (hi_alive) {
            const double m = m0 * std::exp(d);
            const double fm = f(m);
            if (!std::isfinite(fm)) {
                hi_alive = false;
            } else if (fm == 0.0 || std::signbit(fm) != std::signbit(f_last_hi)) {
                found_hi = roots::Bracket{last_hi, m, f_last_hi, fm};
            } else {
                last_hi = m;
                f_last_hi = fm;
            }
        }
        if (found_lo || found_hi) {
            double best = 0.0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (const auto& b : {found_lo, found_hi}) {
                if (!b) {
                    continue;
                }
                const double root = roots::solve_bracketed(f, *b, 4.0 * kEps * std::max(b->lo, b->hi));
                if (std::abs(root - m0) < best_dist) {
                    best = root;
                    best_dist = std::abs(root - m0);
                }
            }
            ElasticaState st = make_state(theta0, s * best, problem);
            if (!(std::abs(st.residual) <= 1e-10 * problem.l)) {
                throw Error(fmt::format("solve_R_near: residual {} did not vanish at R = {}", st.residual, st.R));
            }
            return st;
        }
    }
    throw NoBracket(fmt::format("solve_R_near: no root near R = {} at theta0 = {}", previous_R, theta0),
                    s * last_lo, s * last_hi);
}

std::vector<double> default_schedule(double last, double first, int n_geometric, double spacing) {
    if (!(first > 0.0) || !(last > first) || n_geometric < 2 || !(spacing > 0.0)) {
        throw DomainError("default_schedule: need 0 < first < last, n_geometric >= 2, spacing > 0");
    }
    std::vector<double> out;
    const double knee = std::min(0.1, last);
    for (int i = 0; i < n_geometric; ++i) {
        out.push_back(first * std::pow(knee / first, static_cast<double>(i) / (n_geometric - 1)));
    }
    out.back() = knee;
    if (last > knee) {
        const int n = std::max(1, static_cast<int>(std::ceil((last - knee) / spacing)));
        for (int i = 1; i <= n; ++i) {
            out.push_back(knee + (last - knee) * i / n);
        }
    }
    return out;
}

BranchTrace trace_branch(const ElasticaProblem& problem, std::span<const double> schedule, rod::LoadSign sign,
                         TraceOptions options) {
    problem.validate();
    if (schedule.empty()) {
        throw DomainError("trace_branch: empty schedule");
    }
    if (!(schedule.front() > 0.0 && schedule.front() <= 1e-3)) {
        throw DomainError(fmt::format("trace_branch: schedule must start in (0, 1e-3], got {}", schedule.front()));
    }
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        if (!(schedule[i] > schedule[i - 1]) || !std::isfinite(schedule[i])) {
            throw DomainError("trace_branch: schedule must be strictly increasing");
        }
    }
    BranchTrace trace;
    trace.label = sign == rod::LoadSign::tension ? "tensile" : "compressive";
    trace.sign = sign;
    trace.problem = problem;

    try {
        trace.points.push_back(solve_R(schedule.front(), problem, sign, std::nullopt, nullptr, Exec::serial));
    } catch (const Error& e) {
        trace.complete = false;
        trace.diagnostic = fmt::format("cold start failed at theta0 = {}: {}", schedule.front(), e.what());
        return trace;
    }

    // Advances from `from` to theta0, halving the step while the warm solve
    // loses its bracket or jumps by more than the allowed fraction.
    auto advance = [&](auto&& self, const ElasticaState& from, double theta0, int depth) -> ElasticaState {
        try {
            ElasticaState st = solve_R_near(theta0, problem, from.R);
            if (std::abs(st.R - from.R) <= options.max_relative_jump * std::abs(from.R)) {
                return st;
            }
            if (depth >= options.max_bisections) {
                throw NoBracket(fmt::format("reaction jumped from {} to {} between theta0 = {} and {}", from.R, st.R,
                                            from.theta0, theta0),
                                from.R, st.R);
            }
        } catch (const NoBracket&) {
            if (depth >= options.max_bisections) {
                throw;
            }
        }
        const double mid = 0.5 * (from.theta0 + theta0);
        const ElasticaState half = self(self, from, mid, depth + 1);
        return self(self, half, theta0, depth + 1);
    };

    for (std::size_t i = 1; i < schedule.size(); ++i) {
        const ElasticaState prev = trace.points.back();
        ElasticaState next;
        try {
            next = advance(advance, prev, schedule[i], 0);
        } catch (const Error& e) {
            trace.complete = false;
            trace.diagnostic = fmt::format("continuation lost the branch between theta0 = {} and {}: {}",
                                           prev.theta0, schedule[i], e.what());
            return trace;
        }
        if (quarter_index(prev.phi) != quarter_index(next.phi)) {
            const double target = 0.5 * kPi + kPi * std::max(quarter_index(prev.phi), quarter_index(next.phi));
            try {
                ElasticaState zero = refine_between(prev, next, Quantity::phi, target);
                trace.points.push_back(zero);
                trace.events.push_back({BranchEvent::Kind::load_sign_change, trace.points.size() - 1});
                trace.events.push_back({BranchEvent::Kind::half_switch, trace.points.size() - 1});
            } catch (const Error& e) {
                trace.complete = false;
                trace.diagnostic = fmt::format("could not refine the F = 0 state between theta0 = {} and {}: {}",
                                               prev.theta0, next.theta0, e.what());
                return trace;
            }
        }
        trace.points.push_back(next);
    }
    return trace;
}

std::vector<BranchTrace> trace_branches(std::span<const TraceRequest> requests, Exec exec) {
    std::vector<BranchTrace> out(requests.size());
    for_each_index(requests.size(), exec, [&](std::size_t i) {
        out[i] = trace_branch(requests[i].problem, requests[i].schedule, requests[i].sign,
                              requests[i].options);
    });
    return out;
}

ElasticaState solve_on_branch(const BranchTrace& trace, Quantity quantity, double target) {
    const auto& pts = trace.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double qi = quantity_of(pts[i], quantity) - target;
        if (qi == 0.0) {
            return pts[i];
        }
        if (i + 1 < pts.size()) {
            const double qj = quantity_of(pts[i + 1], quantity) - target;
            if (qj != 0.0 && std::signbit(qi) != std::signbit(qj)) {
                return refine_between(pts[i], pts[i + 1], quantity, target);
            }
        }
    }
    const char* name = quantity == Quantity::phi ? "phi" : "delta";
    throw NoBracket(fmt::format("solve_on_branch: {} = {} is not reached on the {} trace", name, target, trace.label),
                    pts.empty() ? 0.0 : quantity_of(pts.front(), quantity),
                    pts.empty() ? 0.0 : quantity_of(pts.back(), quantity));
}

std::vector<ShapeSample> shape_export(const ElasticaState& state, std::size_t n) {
    if (n < 2) {
        throw DomainError("shape_export: need at least two samples");
    }
    std::vector<ShapeSample> out(n);
    const double l = state.problem.l;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = i + 1 == n ? l : l * static_cast<double>(i) / static_cast<double>(n - 1);
        const Point2 p = coordinates_at(s, state);
        out[i] = {s, p.x1, p.x2, theta_at(s, state)};
    }
    return out;
}

ShiftReport branch_shift(const BranchTrace& tensile, const BranchTrace& compressive) {
    auto zero_state = [](const BranchTrace& t) -> const ElasticaState& {
        for (const auto& e : t.events) {
            if (e.kind == BranchEvent::Kind::load_sign_change) {
                return t.points[e.index];
            }
        }
        throw DomainError(fmt::format("branch_shift: the {} trace has no F = 0 state", t.label));
    };
    ShiftReport r{};
    r.measured_shift = zero_state(tensile).delta - zero_state(compressive).delta;
    r.expected_shift = 2.0 * tensile.problem.R_c;

    double d_min = std::numeric_limits<double>::infinity();
    double d_max = -d_min;
    double f_scale = 0.0;
    for (const auto& p : tensile.points) {
        d_min = std::min(d_min, p.delta);
        d_max = std::max(d_max, p.delta);
        f_scale = std::max(f_scale, std::abs(p.F));
    }
    for (const auto& p : compressive.points) {
        f_scale = std::max(f_scale, std::abs(p.F));
    }
    for (const auto& p : compressive.points) {
        const double d = p.delta + r.measured_shift;
        if (!(d > d_min && d < d_max)) {
            continue;
        }
        const ElasticaState t = solve_on_branch(tensile, Quantity::delta, d);
        r.max_force_deviation = std::max(r.max_force_deviation, std::abs(p.F - t.F) / f_scale);
        ++r.points_compared;
    }
    return r;
}

void write_branch_csv(std::ostream& out, const BranchTrace& trace) {
    out << "theta0,R,F,phi,delta,normalized_F\n";
    for (const auto& p : trace.points) {
        out << csv::num(p.theta0) << ',' << csv::num(p.R) << ',' << csv::num(p.F) << ',' << csv::num(p.phi) << ','
            << csv::num(p.delta) << ',' << csv::num(p.normalized_F()) << '\n';
    }
}

void write_shape_csv(std::ostream& out, std::span<const ShapeSample> shape) {
    out << "s,x1,x2,theta\n";
    for (const auto& p : shape) {
        out << csv::num(p.s) << ',' << csv::num(p.x1) << ',' << csv::num(p.x2) << ',' << csv::num(p.theta) << '\n';
    }
}

}  // namespace ccb::elastica
