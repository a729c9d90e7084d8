#pragma once

// Linearized buckling of an inextensible rod of bending stiffness B and
// length l, clamped at z = 0. The end z = l carries a rotational spring k and
// slides on a circle of signed dimensionless curvature chi_hat = +-l/R_c.
// Internally everything is written in x = alpha l (alpha^2 = |F|/B) and
// kappa = k l / B.

#include <iosfwd>
#include <span>
#include <vector>

#include "ccbuckle/exec.hpp"

namespace ccb::rod {

struct RodModel {
    double B;
    double l;
    double k;              // ignored when clamped
    bool clamped;          // k -> infinity
    double chi_hat;        // 0 is the straight constraint

    void validate() const;
    double kappa() const { return k * l / B; }
};

enum class LoadSign { tension = 1, compression = -1 };

const char* to_string(LoadSign s) noexcept;

struct BucklingMode {
    LoadSign sign;
    int mode_index;          // 1-based within its sign class
    double alpha_l;
    double F_cr;             // signed, positive in tension
    double F_cr_normalized;  // F_cr l^2 / (pi^2 B)
    double xi;
};

/// Critical-load condition multiplied by |chi_hat| so that it stays finite
/// and continuous through chi_hat = 0. The compressive form is the real
/// trigonometric expression. Throws DomainError for alpha_l <= 0.
double characteristic(double alpha_l, LoadSign sign, const RodModel& model);

/// Largest magnitude among the individual terms of `characteristic`, the
/// natural scale for its residual.
double characteristic_scale(double alpha_l, LoadSign sign, const RodModel& model);

/// Default bracketing step in alpha_l.
inline constexpr double kScanStep = 3.14159265358979323846 / 50.0;

/// All roots in (0, alpha_l_max], ascending, at most max_modes of them.
/// Sign changes on a uniform grid of spacing `step` are refined by bisection
/// down to the floating-point resolution.
std::vector<BucklingMode> find_critical_loads(const RodModel& model, LoadSign sign,
                                              double alpha_l_max, int max_modes = 1000,
                                              double step = kScanStep, Exec exec = Exec::parallel);

/// xi = pi sqrt(B / |F_cr|) / l. Throws DegenerateLoad for F_cr = 0.
double effective_length_factor(double F_cr, const RodModel& model);

/// Determinant of the 4x4 boundary-condition system at alpha_l (l = 1 units).
double bc_determinant(double alpha_l, LoadSign sign, const RodModel& model);

struct ModeShape {
    std::vector<double> z;
    std::vector<double> v;       // normalized so that max |v| = 1 and the extreme value is positive
    std::vector<double> dv;      // dv/dz
    std::vector<double> d2v;
    std::vector<double> d3v;
    double phi;                  // end rotation chi_hat v(l) / l
};

/// Null-space solution of the boundary-condition system sampled at n >= 2
/// uniform points. Throws NotCritical when the system is numerically regular.
ModeShape mode_shape(const BucklingMode& mode, const RodModel& model, std::size_t n);

struct TableRow {
    double chi_hat;
    BucklingMode mode;
};

/// Roots of both signs for every curvature in the grid; models differ only in
/// chi_hat. Curvatures are processed concurrently, rows come out in grid
/// order, tension before compression.
std::vector<TableRow> critical_table(const RodModel& base, std::span<const double> chi_grid,
                                     double alpha_l_max, int max_modes, Exec exec = Exec::parallel);

/// CSV with header `chi_hat,sign,mode_index,alpha_l,Fcr_normalized,xi`.
void write_table_csv(std::ostream& out, std::span<const TableRow> rows);

}  // namespace ccb::rod
