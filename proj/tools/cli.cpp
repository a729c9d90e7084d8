#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "ccbuckle/csv.hpp"
#include "ccbuckle/elastica.hpp"
#include "ccbuckle/errors.hpp"
#include "ccbuckle/onedof.hpp"
#include "ccbuckle/profiledesign.hpp"
#include "ccbuckle/rodlinear.hpp"

namespace ccb::cli {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

// Invalid option combination found before any computation.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A run that stopped part way; the files collected so far are still written.
struct Stop {
    int code;
    std::string message;
};

// Files are accumulated in memory and committed together at the end of a run.
class Outputs {
public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

    std::ostream& open(const std::string& name) {
        files_.emplace_back(name, std::ostringstream{});
        return files_.back().second;
    }

    void commit() const {
        fs::create_directories(dir_);
        for (const auto& [name, body] : files_) {
            const fs::path target = dir_ / name;
            const fs::path tmp = dir_ / (name + ".tmp");
            {
                std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
                if (!f) {
                    throw Error(fmt::format("cannot write {}", tmp.string()));
                }
                f << body.str();
                if (!f.flush()) {
                    throw Error(fmt::format("cannot write {}", tmp.string()));
                }
            }
            fs::rename(tmp, target);
        }
    }

private:
    fs::path dir_;
    std::vector<std::pair<std::string, std::ostringstream>> files_;
};

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ConfigError(what);
    }
}

void require_finite(std::span<const double> xs, const char* name) {
    for (double x : xs) {
        require(std::isfinite(x), fmt::format("{}: every value must be finite", name));
    }
}

// Resolved configuration in the format accepted by --config.
class Echo {
public:
    explicit Echo(const std::string& section) { s_ << '[' << section << "]\n"; }
    Echo& kv(const char* key, double v) {
        s_ << key << '=' << csv::num(v) << '\n';
        return *this;
    }
    Echo& kv(const char* key, int v) {
        s_ << key << '=' << v << '\n';
        return *this;
    }
    Echo& kv(const char* key, const std::string& v) {
        s_ << key << "=\"" << v << "\"\n";
        return *this;
    }
    Echo& kv(const char* key, const std::vector<double>& v) {
        if (v.empty()) {
            s_ << key << "={}\n";
            return *this;
        }
        s_ << key << "=[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            s_ << (i ? ", " : "") << csv::num(v[i]);
        }
        s_ << "]\n";
        return *this;
    }
    std::string str() const { return s_.str(); }

private:
    std::ostringstream s_;
};

// ---------------------------------------------------------------------------

struct Critical1Dof {
    std::vector<double> chi{-4.0, 0.0, 4.0};
    double k = 1.0;
    double l = 1.0;
    std::string tag = "critical_1dof";
};

void run_critical_1dof(const Critical1Dof& o, Outputs& files, std::ostream& out) {
    require_finite(o.chi, "--chi");
    onedof::OneDofSystem{o.k, o.l, 0.0, onedof::profile_flat()}.validate();
    auto& csv = files.open(o.tag + ".csv");
    csv << "chi_hat,Fcr_normalized\n";
    for (double chi : o.chi) {
        const onedof::OneDofSystem sys{o.k, o.l, 0.0, onedof::profile_circular(chi)};
        double value;
        try {
            value = onedof::critical_load(sys) * o.l / o.k;
        } catch (const DegenerateLoad&) {
            value = std::numeric_limits<double>::infinity();
        }
        csv << csv::num(chi) << ',' << csv::num(value) << '\n';
    }
    out << fmt::format("critical-1dof: {} rows\n", o.chi.size());
}

// ---------------------------------------------------------------------------

struct Trace1Dof {
    std::string profile = "circular";
    double chi = 4.0;
    double m = 4.0;
    double beta = -1.0;
    std::vector<double> phi0{0.0};
    double k = 1.0;
    double l = 1.0;
    double phi_max = 0.0;
    int n = 200;
    std::string tag = "trace_1dof";
};

onedof::ProfileShape make_profile(const Trace1Dof& o) {
    if (o.profile == "flat") {
        return onedof::profile_flat();
    }
    if (o.profile == "circular") {
        return onedof::profile_circular(o.chi);
    }
    if (o.profile == "s-shaped") {
        return onedof::profile_s_shaped(o.m);
    }
    return design::neutral_profile(o.beta);
}

void write_1dof_rows(std::ostream& csv, const onedof::BranchTrace& t, double l, double k, const char* branch) {
    for (const auto& p : t.points) {
        csv << csv::num(p.phi) << ',' << csv::num(p.F * l / k) << ',' << csv::num(p.delta / l) << ','
            << onedof::to_string(p.stability) << ',' << branch << '\n';
    }
}

void run_trace_1dof(const Trace1Dof& o, Outputs& files, std::ostream& out) {
    require(o.n >= 1, "--n: need at least one point per branch");
    require_finite(o.phi0, "--phi0");
    require(!o.phi0.empty(), "--phi0: need at least one imperfection value");
    const auto profile = make_profile(o);
    const double reach_pos = std::asin(std::min(1.0, profile.psi_max()));
    const double reach_neg = std::asin(std::min(1.0, -profile.psi_min()));
    require(o.phi_max >= 0.0 && std::isfinite(o.phi_max), "--phi-max must be finite and non-negative");
    require(o.phi_max <= std::min(reach_pos, reach_neg),
            fmt::format("--phi-max = {} exceeds the reach of the profile ({}, {})", o.phi_max, reach_pos, reach_neg));
    for (double p0 : o.phi0) {
        onedof::OneDofSystem{o.k, o.l, p0, profile}.validate();
    }
    const double top_pos = o.phi_max > 0.0 ? o.phi_max : reach_pos;
    const double top_neg = o.phi_max > 0.0 ? o.phi_max : reach_neg;

    for (double p0 : o.phi0) {
        const onedof::OneDofSystem sys{o.k, o.l, p0, profile};
        const std::string name = o.phi0.size() == 1 ? o.tag : fmt::format("{}_phi0_{}", o.tag, p0);
        auto& csv = files.open(name + ".csv");
        csv << "phi,F_normalized,delta_over_l,stability,branch\n";
        std::optional<onedof::SidedLoads> start;
        if (p0 == 0.0) {
            auto guarded = [&](auto fn) {
                try {
                    return fn();
                } catch (const DegenerateLoad&) {
                    return onedof::SidedLoads{std::numeric_limits<double>::infinity(),
                                              std::numeric_limits<double>::infinity()};
                }
            };
            start = profile.curvature_left_at_0() == profile.curvature_right_at_0()
                        ? guarded([&] {
                              const double f = onedof::critical_load(sys);
                              return onedof::SidedLoads{f, f};
                          })
                        : guarded([&] { return onedof::critical_loads_s_shaped(sys); });
        }
        for (int side : {1, -1}) {
            const char* branch = side > 0 ? "positive" : "negative";
            const double top = side > 0 ? top_pos : top_neg;
            if (start) {
                const double f = side > 0 ? start->right : start->left;
                csv << "0," << csv::num(f * o.l / o.k) << ",0,critical," << branch << '\n';
            }
            std::vector<double> grid(static_cast<std::size_t>(o.n));
            for (int i = 0; i < o.n; ++i) {
                grid[static_cast<std::size_t>(i)] = side * top * (i + 1) / o.n;
            }
            try {
                write_1dof_rows(csv, onedof::trace_branch(sys, grid, branch), o.l, o.k, branch);
            } catch (const SingularConfiguration& e) {
                const auto at = std::find(grid.begin(), grid.end(), e.phi());
                const std::span<const double> prefix(grid.data(), static_cast<std::size_t>(at - grid.begin()));
                write_1dof_rows(csv, onedof::trace_branch(sys, prefix, branch), o.l, o.k, branch);
                throw Stop{kExitSingular, fmt::format("trace-1dof ({}, phi0 = {}): {}", profile.name(), p0,
                                                      e.what())};
            }
        }
        out << fmt::format("trace-1dof: {} phi0 = {} traced\n", profile.name(), p0);
    }
}

// ---------------------------------------------------------------------------

struct DesignProfile {
    std::string law = "constant";
    double beta0 = -1.0;
    double amplitude = 0.3;
    double period = 1.2;
    double radius = 2.0;
    double psi_max = 0.95;
    std::vector<double> table_psi;
    std::vector<double> table_beta;
    int n = 201;
    double tol = 1e-12;
    std::string tag = "design_profile";
};

void run_design_profile(const DesignProfile& o, Outputs& files, std::ostream& out) {
    require(o.n >= 2, "--n: need at least two samples");
    require(o.tol > 0.0, "--tol must be positive");
    design::TargetForceLaw law;
    if (o.law == "constant") {
        law = design::constant_law(o.beta0, o.psi_max);
    } else if (o.law == "sinusoidal") {
        law = design::sinusoidal_law(o.beta0, o.amplitude, o.period, o.psi_max);
    } else if (o.law == "circular") {
        law = design::circular_law(o.beta0, o.radius, o.psi_max);
    } else {
        law = design::tabulated_law(o.table_psi, o.table_beta);
    }
    law.validate();
    const auto profile = design::design_profile(law, o.tol);
    const auto samples = design::sample_profile(profile, static_cast<std::size_t>(o.n));
    design::write_profile_csv(files.open(o.tag + ".csv"), samples);
    const double phi_top = std::min(1.2, std::asin(law.psi_max));
    const auto phi = onedof::linspace(0.05, phi_top, 200);
    const double err = design::closed_loop_validate(profile, law, phi);
    const std::string line =
        fmt::format("design-profile: {} closed-loop max relative error {:.3e} on phi in [0.05, {:.6g}]\n",
                    law.name, err, phi_top);
    files.open(o.tag + "_report.txt") << line;
    out << line;
}

// ---------------------------------------------------------------------------

struct CriticalRod {
    std::vector<double> chi{-5.0, -2.0, -1.25, -1.0, -0.8, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0};
    double B = 1.0;
    double l = 1.0;
    double k = 1.0;
    double alpha_max = 6.0 * kPi;
    int max_modes = 1000;
    std::string tag = "critical_rod";
};

void run_critical_rod(const CriticalRod& o, Outputs& files, std::ostream& out) {
    require_finite(o.chi, "--chi");
    require(o.alpha_max > 0.0 && std::isfinite(o.alpha_max), "--alpha-max must be positive");
    require(o.max_modes >= 1, "--max-modes must be at least 1");
    const std::pair<const char*, rod::RodModel> models[] = {
        {"pinned", {o.B, o.l, 0.0, false, 0.0}},
        {"spring", {o.B, o.l, o.k, false, 0.0}},
        {"clamped", {o.B, o.l, 0.0, true, 0.0}},
    };
    for (const auto& [name, model] : models) {
        model.validate();
    }
    for (const auto& [name, model] : models) {
        const auto rows = rod::critical_table(model, o.chi, o.alpha_max, o.max_modes);
        rod::write_table_csv(files.open(fmt::format("{}_{}.csv", o.tag, name)), rows);
        out << fmt::format("critical-rod: {} end, {} rows\n", name, rows.size());
    }
}

// ---------------------------------------------------------------------------

struct TraceElastica {
    double B = 1.0;
    double l = 1.0;
    double k_r = 0.0;
    double R_c = 0.6;
    std::string layout = "s-shaped";
    std::string half = "left";
    std::string branches = "both";
    double theta_first = 1e-4;
    double theta_max = 3.0;
    double spacing = 0.025;
    std::vector<double> shape_phi_deg{45.0, 90.0};
    int shape_n = 201;
    double max_jump = 0.25;
    int max_bisections = 12;
    std::string tag = "elastica";
};

void run_trace_elastica(const TraceElastica& o, Outputs& files, std::ostream& out) {
    require(o.theta_first > 0.0 && o.theta_first <= 1e-3, "--theta-first must lie in (0, 1e-3]");
    require(o.theta_max > o.theta_first && std::isfinite(o.theta_max), "--theta-max must exceed --theta-first");
    require(o.spacing > 0.0, "--spacing must be positive");
    require(o.shape_n >= 2, "--shape-n: need at least two samples");
    require_finite(o.shape_phi_deg, "--shape-phi");
    const auto schedule = elastica::default_schedule(o.theta_max, o.theta_first, 20, o.spacing);

    // The S-shaped layout puts the tensile branch on the circle that admits
    // tension and the compressive branch on the other one.
    auto problem_for = [&](rod::LoadSign sign) {
        elastica::Half h = o.half == "left" ? elastica::Half::left : elastica::Half::right;
        if (o.layout == "s-shaped") {
            h = sign == rod::LoadSign::tension ? elastica::Half::left : elastica::Half::right;
        }
        elastica::ElasticaProblem p{o.B, o.l, o.k_r, o.R_c, h};
        p.validate();
        return p;
    };
    require(o.max_jump > 0.0, "--max-jump must be positive");
    require(o.max_bisections >= 0, "--max-bisections must be non-negative");
    const elastica::TraceOptions options{o.max_jump, o.max_bisections};
    std::vector<elastica::TraceRequest> requests;
    if (o.branches != "compressive") {
        requests.push_back({problem_for(rod::LoadSign::tension), schedule, rod::LoadSign::tension, options});
    }
    if (o.branches != "tensile") {
        requests.push_back({problem_for(rod::LoadSign::compression), schedule, rod::LoadSign::compression, options});
    }
    const auto traces = elastica::trace_branches(requests);

    std::ostringstream report;
    std::optional<Stop> failure;
    for (const auto& t : traces) {
        elastica::write_branch_csv(files.open(fmt::format("{}_{}.csv", o.tag, t.label)), t);
        report << fmt::format("{} branch ({} circle, chi_hat = {}): {} points, {}\n", t.label,
                              elastica::to_string(t.problem.half), t.problem.chi_hat(), t.points.size(),
                              t.complete ? "complete" : "partial");
        if (!t.points.empty()) {
            const auto& first = t.points.front();
            report << fmt::format("  start theta0 = {} R = {} normalized F = {}\n", first.theta0, first.R,
                                  first.normalized_F());
        }
        for (const auto& e : t.events) {
            const auto& p = t.points[e.index];
            report << fmt::format("  {} at theta0 = {} phi = {} F = {} delta = {}\n", elastica::to_string(e.kind),
                                  p.theta0, p.phi, p.F, p.delta);
        }
        if (!t.complete) {
            report << "  " << t.diagnostic << '\n';
            if (!failure) {
                failure = Stop{kExitContinuation, fmt::format("trace-elastica {}: {}", t.label, t.diagnostic)};
            }
            continue;
        }
        for (double deg : o.shape_phi_deg) {
            try {
                const auto st = elastica::solve_on_branch(t, elastica::Quantity::phi, deg * kPi / 180.0);
                const auto shape = elastica::shape_export(st, static_cast<std::size_t>(o.shape_n));
                elastica::write_shape_csv(files.open(fmt::format("{}_{}_shape_{}deg.csv", o.tag, t.label, deg)),
                                          shape);
                report << fmt::format("  shape at phi = {} deg: theta0 = {} F = {}\n", deg, st.theta0, st.F);
            } catch (const NoBracket&) {
                report << fmt::format("  shape at phi = {} deg: not reached on this branch\n", deg);
            }
        }
    }
    if (traces.size() == 2 && traces[0].complete && traces[1].complete && o.layout == "s-shaped" && o.k_r == 0.0) {
        try {
            const auto r = elastica::branch_shift(traces[0], traces[1]);
            report << fmt::format(
                "branch shift: measured {} (delta/R_c = {}), expected 2 R_c = {}, max force deviation {:.3e} over "
                "{} points\n",
                r.measured_shift, r.measured_shift / o.R_c, r.expected_shift, r.max_force_deviation,
                r.points_compared);
        } catch (const Error& e) {
            report << "branch shift: not available (" << e.what() << ")\n";
        }
    }
    files.open(o.tag + "_report.txt") << report.str();
    out << report.str();
    if (failure) {
        throw *failure;
    }
}

// ---------------------------------------------------------------------------

template <typename T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    return app->add_option(name, target, help)->capture_default_str();
}

// List options accept zero values ("--chi", "--chi {}", "chi={}") as the
// empty list. Defaults go into the help text: a captured default string would
// be substituted for the missing values.
using ListOptions = std::vector<std::pair<CLI::Option*, std::vector<double>*>>;

CLI::Option* list_opt(ListOptions& lists, CLI::App* app, const std::string& name, std::vector<double>& target,
                      const std::string& help) {
    std::string shown;
    for (double v : target) {
        shown += fmt::format("{}{}", shown.empty() ? "" : " ", v);
    }
    auto* o = app->add_option(name, target, fmt::format("{} [default: {}]", help, shown.empty() ? "{}" : shown))
                  ->expected(0, CLI::detail::expected_max_vector_size);
    lists.emplace_back(o, &target);
    return o;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_scenario(const std::string& name, const std::string& dir, std::ostream& out, std::ostream& err) {
    std::ostringstream listing;
    int code = kExitOk;
    for (auto cmd : scenario_commands(name)) {
        std::string line = "ccbuckle";
        for (const auto& a : cmd) {
            line += ' ' + a;
        }
        listing << line << '\n';
        cmd.insert(cmd.begin(), {"--out", dir});
        code = dispatch(cmd, out, err);
        if (code != kExitOk) {
            break;
        }
    }
    Outputs files(dir);
    files.open(fmt::format("scenario_{}.txt", name)) << listing.str();
    files.commit();
    return code;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Buckling and postcritical analysis of structures constrained on curved profiles", "ccbuckle"};
    app.set_config("--config", "", "Read options from an INI/TOML file; sections are subcommand names");
    std::string out_dir = ".";
    std::string scenario;
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--scenario", scenario, "Run a built-in scenario")->check(CLI::IsMember(scenario_names()));
    app.require_subcommand(0, 1);
    app.fallthrough();

    ListOptions lists;
    Critical1Dof c1;
    auto* s_c1 = app.add_subcommand("critical-1dof", "Critical load of the 1-DOF system on a circular profile, "
                                                     "swept over chi_hat");
    list_opt(lists, s_c1, "--chi", c1.chi, "Signed dimensionless curvatures chi_hat = l / R_c ({} for none)");
    opt(s_c1, "--k", c1.k, "Rotational spring stiffness");
    opt(s_c1, "--l", c1.l, "Bar length");
    opt(s_c1, "--tag", c1.tag, "Output file stem");

    Trace1Dof t1;
    auto* s_t1 = app.add_subcommand("trace-1dof", "Equilibrium branches of the 1-DOF system");
    opt(s_t1, "--profile", t1.profile, "Constraint profile")
        ->check(CLI::IsMember({"flat", "circular", "s-shaped", "neutral"}));
    opt(s_t1, "--chi", t1.chi, "Curvature of the circular profile");
    opt(s_t1, "--m", t1.m, "Curvature magnitude of the S-shaped profile");
    opt(s_t1, "--beta", t1.beta, "Target F l / k of the neutral profile");
    list_opt(lists, s_t1, "--phi0", t1.phi0, "Imperfection angles (one output file each)");
    opt(s_t1, "--k", t1.k, "Rotational spring stiffness");
    opt(s_t1, "--l", t1.l, "Bar length");
    opt(s_t1, "--phi-max", t1.phi_max, "Largest |phi| traced; 0 uses the reach of the profile");
    opt(s_t1, "--n", t1.n, "Points per branch");
    opt(s_t1, "--tag", t1.tag, "Output file stem");

    DesignProfile dp;
    auto* s_dp = app.add_subcommand("design-profile", "Constraint profile realizing a target force law");
    opt(s_dp, "--law", dp.law, "Target law")->check(CLI::IsMember({"constant", "sinusoidal", "circular", "tabulated"}));
    opt(s_dp, "--beta0", dp.beta0, "Target F l / k at the origin");
    opt(s_dp, "--amplitude", dp.amplitude, "Relative amplitude of the sinusoidal law");
    opt(s_dp, "--period", dp.period, "Period in psi of the sinusoidal law");
    opt(s_dp, "--radius", dp.radius, "Radius of the circular law");
    opt(s_dp, "--psi-max", dp.psi_max, "Largest psi = sin(phi) of the designed profile");
    list_opt(lists, s_dp, "--table-psi", dp.table_psi, "Abscissae of a tabulated law (first must be 0)");
    list_opt(lists, s_dp, "--table-beta", dp.table_beta, "Target values of a tabulated law");
    opt(s_dp, "--n", dp.n, "Number of profile samples");
    opt(s_dp, "--tol", dp.tol, "Absolute quadrature tolerance");
    opt(s_dp, "--tag", dp.tag, "Output file stem");

    CriticalRod cr;
    auto* s_cr = app.add_subcommand("critical-rod", "Linearized critical loads of the rod: roller, spring and "
                                                    "clamped slider");
    list_opt(lists, s_cr, "--chi", cr.chi, "Signed dimensionless curvatures chi_hat");
    opt(s_cr, "--B", cr.B, "Bending stiffness");
    opt(s_cr, "--l", cr.l, "Rod length");
    opt(s_cr, "--k", cr.k, "Rotational spring stiffness of the spring table");
    opt(s_cr, "--alpha-max", cr.alpha_max, "Largest alpha l scanned");
    opt(s_cr, "--max-modes", cr.max_modes, "Modes kept per sign");
    opt(s_cr, "--tag", cr.tag, "Output file stem");

    TraceElastica te;
    auto* s_te = app.add_subcommand("trace-elastica", "Postcritical elastica branches on a circular constraint");
    opt(s_te, "--B", te.B, "Bending stiffness");
    opt(s_te, "--l", te.l, "Rod length");
    opt(s_te, "--kr", te.k_r, "Rotational spring at the slider (0 = roller)");
    opt(s_te, "--Rc", te.R_c, "Constraint radius");
    opt(s_te, "--layout", te.layout, "s-shaped: tensile branch on the left circle, compressive on the right; "
                                     "single: both on --half")
        ->check(CLI::IsMember({"s-shaped", "single"}));
    opt(s_te, "--half", te.half, "Circle used by the single layout")->check(CLI::IsMember({"left", "right"}));
    opt(s_te, "--branches", te.branches, "Branches to trace")->check(CLI::IsMember({"tensile", "compressive", "both"}));
    opt(s_te, "--theta-first", te.theta_first, "First clamp-side rotation theta0 of the schedule");
    opt(s_te, "--theta-max", te.theta_max, "Last theta0 of the schedule");
    opt(s_te, "--spacing", te.spacing, "theta0 spacing above 0.1");
    list_opt(lists, s_te, "--shape-phi", te.shape_phi_deg, "End rotations (degrees) at which shapes are exported");
    opt(s_te, "--shape-n", te.shape_n, "Samples per exported shape");
    opt(s_te, "--max-jump", te.max_jump, "Largest relative change of R accepted between continuation steps");
    opt(s_te, "--max-bisections", te.max_bisections, "Step halvings before a trace is reported partial");
    opt(s_te, "--tag", te.tag, "Output file stem");

    for (auto* s : {s_c1, s_t1, s_dp, s_cr, s_te}) {
        s->configurable();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    for (auto& [o, target] : lists) {
        if (o->results().size() == 1 && o->results().front().empty()) {
            target->clear();
        }
    }

    if (!scenario.empty()) {
        if (!app.get_subcommands().empty()) {
            err << "error: --scenario cannot be combined with a subcommand\n";
            return kExitConfig;
        }
        return run_scenario(scenario, out_dir, out, err);
    }
    if (app.get_subcommands().empty()) {
        out << app.help();
        return kExitOk;
    }

    const CLI::App* sub = app.get_subcommands().front();
    Outputs files(out_dir);
    int code = kExitOk;
    try {
        if (sub == s_c1) {
            run_critical_1dof(c1, files, out);
        } else if (sub == s_t1) {
            run_trace_1dof(t1, files, out);
        } else if (sub == s_dp) {
            run_design_profile(dp, files, out);
        } else if (sub == s_cr) {
            run_critical_rod(cr, files, out);
        } else {
            run_trace_elastica(te, files, out);
        }
    } catch (const Stop& s) {
        err << "error: " << s.message << '\n';
        code = s.code;
    } catch (const SingularConfiguration& e) {
        err << "error: " << e.what() << '\n';
        return kExitSingular;
    } catch (const Error& e) {
        // DomainError, DegenerateLoad and ConfigError: the inputs are invalid.
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    Echo echo(sub->get_name());
    std::string tag;
    if (sub == s_c1) {
        echo.kv("chi", c1.chi).kv("k", c1.k).kv("l", c1.l).kv("tag", c1.tag);
        tag = c1.tag;
    } else if (sub == s_t1) {
        echo.kv("profile", t1.profile).kv("chi", t1.chi).kv("m", t1.m).kv("beta", t1.beta).kv("phi0", t1.phi0);
        echo.kv("k", t1.k).kv("l", t1.l).kv("phi-max", t1.phi_max).kv("n", t1.n).kv("tag", t1.tag);
        tag = t1.tag;
    } else if (sub == s_dp) {
        echo.kv("law", dp.law).kv("beta0", dp.beta0).kv("amplitude", dp.amplitude).kv("period", dp.period);
        echo.kv("radius", dp.radius).kv("psi-max", dp.psi_max).kv("table-psi", dp.table_psi);
        echo.kv("table-beta", dp.table_beta).kv("n", dp.n).kv("tol", dp.tol).kv("tag", dp.tag);
        tag = dp.tag;
    } else if (sub == s_cr) {
        echo.kv("chi", cr.chi).kv("B", cr.B).kv("l", cr.l).kv("k", cr.k).kv("alpha-max", cr.alpha_max);
        echo.kv("max-modes", cr.max_modes).kv("tag", cr.tag);
        tag = cr.tag;
    } else {
        echo.kv("B", te.B).kv("l", te.l).kv("kr", te.k_r).kv("Rc", te.R_c).kv("layout", te.layout);
        echo.kv("half", te.half).kv("branches", te.branches).kv("theta-first", te.theta_first);
        echo.kv("theta-max", te.theta_max).kv("spacing", te.spacing).kv("shape-phi", te.shape_phi_deg);
        echo.kv("shape-n", te.shape_n).kv("max-jump", te.max_jump).kv("max-bisections", te.max_bisections);
        echo.kv("tag", te.tag);
        tag = te.tag;
    }
    files.open(tag + ".config.ini") << echo.str();
    files.commit();
    return code;
}

}  // namespace

std::vector<std::string> scenario_names() { return {"fig1", "fig2", "neutral", "fig4", "fig7"}; }

std::vector<std::vector<std::string>> scenario_commands(const std::string& name) {
    if (name == "fig1") {
        return {{"critical-1dof", "--chi", "-4", "4", "--tag", "fig1_critical"},
                {"trace-1dof", "--profile", "circular", "--chi", "4", "--tag", "fig1_trace_chi_4"},
                {"trace-1dof", "--profile", "circular", "--chi", "-4", "--tag", "fig1_trace_chi_-4"}};
    }
    if (name == "fig2") {
        return {{"trace-1dof", "--profile", "s-shaped", "--m", "4", "--phi0", "0", "0.01", "-0.01", "--tag", "fig2"}};
    }
    if (name == "neutral") {
        return {{"design-profile", "--law", "constant", "--beta0", "-1", "--tag", "neutral_constant"},
                {"design-profile", "--law", "sinusoidal", "--beta0", "-1", "--amplitude", "0.3", "--period", "1.2",
                 "--tag", "neutral_sinusoidal"},
                {"design-profile", "--law", "circular", "--beta0", "-1", "--radius", "2", "--tag", "neutral_circular"},
                {"trace-1dof", "--profile", "neutral", "--beta", "-1", "--tag", "neutral_trace"}};
    }
    if (name == "fig4") {
        return {{"critical-rod", "--tag", "fig4"}};
    }
    if (name == "fig7") {
        return {{"trace-elastica", "--kr", "0", "--Rc", "0.6", "--layout", "s-shaped", "--theta-max", "3.0",
                 "--shape-phi", "45", "90", "--tag", "fig7"}};
    }
    throw DomainError(fmt::format("unknown scenario '{}'", name));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace ccb::cli
