#pragma once

// Large-deflection solution of a rod clamped at one end (the clamp translates
// along the axis) whose other end carries a rotational spring k_r and slides
// on a circle of radius R_c. Arclength s runs from the constrained end (s = 0)
// to the clamp (s = l); theta(0) = theta0 is the free parameter and
// theta(l) = phi is the rotation of the constraint radius. The solution is
//
//   theta(s) = 2 am(w0 + u, k) + H(R) pi,  u = s alpha / k,  alpha^2 = |R| / B,
//
// with w0 the elliptic argument at s = 0 (F(beta0, k) for k <= 1, continued
// through the reciprocal modulus for k > 1).
//
// Circle side: in the frame attached to the slider the circle centre sits at
// x1 = c on the slider axis, c = +R_c for `left` and c = -R_c for `right`.
// Compatibility (cos-multiplied, no pole at phi = pi/2):
//   (x1(l) - c) sin(phi) - x2(l) cos(phi) = 0
// End displacement (positive when the system lengthens):
//   delta = (x1(l) - c) cos(phi) + x2(l) sin(phi) - (l - c)
// A linearization of `left` is the rod on a constraint of dimensionless
// curvature -l/R_c (tension-capable), `right` is +l/R_c.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccbuckle/exec.hpp"
#include "ccbuckle/rodlinear.hpp"

namespace ccb::elastica {

enum class Half { left, right };

const char* to_string(Half h) noexcept;

struct ElasticaProblem {
    double B;
    double l;
    double k_r;   // 0 is a roller (inflexion at the constrained end)
    double R_c;
    Half half;

    void validate() const;
    /// Signed centre offset c on the slider axis.
    double centre() const { return half == Half::left ? R_c : -R_c; }
    /// Curvature of the constraint as seen by the linearized rod model.
    double chi_hat() const { return half == Half::left ? -l / R_c : l / R_c; }
};

struct ElasticaState {
    double theta0;
    double R;            // reaction, positive pulls away from the clamp
    double modulus;
    double alpha_tilde;  // sqrt(|R| / B)
    double beta0;        // (theta0 - H(R) pi) / 2
    double w0;           // elliptic argument at s = 0
    double phi;          // theta(l)
    double F;            // R cos(phi)
    double delta;
    double residual;     // compatibility residual, length units
    ElasticaProblem problem;

    double normalized_F() const;  // 4 F l^2 / (pi^2 B)
};

/// Elliptic modulus k of the state through theta0 with reaction R. Throws
/// DegenerateLoad for R = 0 or a non-positive denominator.
double modulus_from(double theta0, double R, double k_r, double B);

/// State for a trial reaction; nothing is solved, `residual` is whatever the
/// compatibility condition gives. Requires theta0 >= 0.
ElasticaState make_state(double theta0, double R, const ElasticaProblem& problem);

double theta_at(double s, const ElasticaState& state);

struct Point2 {
    double x1;
    double x2;
};

Point2 coordinates_at(double s, const ElasticaState& state);

/// dtheta/ds from the first integral, signed.
double curvature_at(double s, const ElasticaState& state);

double compatibility_residual(double R, double theta0, const ElasticaProblem& problem);

/// The two readings of the side sign in the displacement formula: `validated`
/// is the one used everywhere (delta -> 0 on the trivial path), `as_printed`
/// pairs the same sign as the compatibility condition.
enum class DeltaPairing { validated, as_printed };

double end_displacement(const ElasticaState& state, DeltaPairing pairing);

/// Reaction at the first linear critical load of the given sign (F = R at
/// phi = 0). Throws NoBracket when the linear model has no such load.
double linear_critical_reaction(const ElasticaProblem& problem, rod::LoadSign sign);

struct SolveInfo {
    double window_lo;
    double window_hi;
    int roots_in_window;   // > 1 flags higher modes inside the scan window
};

/// Root of the compatibility residual with the sign of `sign`. Without a seed
/// the linear critical reaction is used. Cold solve: 200 geometric samples on
/// [0.2, 5] x seed, smallest |R| root, bisection to full precision. Throws
/// NoBracket when the window holds no sign change.
ElasticaState solve_R(double theta0, const ElasticaProblem& problem, rod::LoadSign sign,
                      std::optional<double> seed = std::nullopt, SolveInfo* info = nullptr,
                      Exec exec = Exec::parallel);

/// Warm solve: the root nearest to `previous_R`, found by stepping outward
/// from it. Throws NoBracket when none lies within a factor ~10.
ElasticaState solve_R_near(double theta0, const ElasticaProblem& problem, double previous_R);

struct BranchEvent {
    enum class Kind { load_sign_change, half_switch };
    Kind kind;
    std::size_t index;   // into BranchTrace::points, the refined phi = pi/2 state
};

const char* to_string(BranchEvent::Kind k) noexcept;

struct BranchTrace {
    std::string label;
    rod::LoadSign sign;
    ElasticaProblem problem;
    std::vector<ElasticaState> points;
    std::vector<BranchEvent> events;
    bool complete = true;
    std::string diagnostic;
};

struct TraceOptions {
    double max_relative_jump = 0.25;  // |dR| / |R| allowed between accepted states
    int max_bisections = 12;          // step subdivisions before giving up
};

/// Geometric from `first` to 0.1 (n_geometric points) then uniform up to
/// `last` with spacing about `spacing`.
std::vector<double> default_schedule(double last, double first = 1e-4, int n_geometric = 20,
                                     double spacing = 0.025);

/// Continuation along an increasing theta0 schedule with warm starts. Every
/// crossing of phi = pi/2 is refined and inserted (F = 0 there) and recorded
/// as a load-sign change and a half-circle switch of the pin. On failure the
/// trace is returned partial with complete = false and a diagnostic.
BranchTrace trace_branch(const ElasticaProblem& problem, std::span<const double> theta0_schedule,
                         rod::LoadSign sign, TraceOptions options = {});

/// Independent branches run concurrently.
struct TraceRequest {
    ElasticaProblem problem;
    std::vector<double> schedule;
    rod::LoadSign sign;
    TraceOptions options{};
};

std::vector<BranchTrace> trace_branches(std::span<const TraceRequest> requests,
                                        Exec exec = Exec::parallel);

enum class Quantity { phi, delta };

/// State on a traced branch where `quantity` equals `target`, by bisection in
/// theta0 between the two trace points that bracket it. Throws NoBracket when
/// the trace never reaches the target.
ElasticaState solve_on_branch(const BranchTrace& trace, Quantity quantity, double target);

struct ShapeSample {
    double s;
    double x1;
    double x2;
    double theta;
};

std::vector<ShapeSample> shape_export(const ElasticaState& state, std::size_t n);

/// Comparison of a tensile and a compressive branch as curves F(delta).
struct ShiftReport {
    double measured_shift;       // delta_t - delta_c at the F = 0 states
    double expected_shift;       // 2 R_c
    double max_force_deviation;  // max |F_c - F_t(delta_c + shift)| / max |F|
    std::size_t points_compared;
};

ShiftReport branch_shift(const BranchTrace& tensile, const BranchTrace& compressive);

/// Branch CSV `theta0,R,F,phi,delta,normalized_F`.
void write_branch_csv(std::ostream& out, const BranchTrace& trace);

/// Shape CSV `s,x1,x2,theta`.
void write_shape_csv(std::ostream& out, std::span<const ShapeSample> shape);

}  // namespace ccb::elastica
