#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace ccb::cli;

namespace {

constexpr double kPi = std::numbers::pi;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("ccbuckle_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(std::vector<std::string> args, const fs::path& dir = {}) {
        out_.str("");
        err_.str("");
        args.insert(args.begin(), {"--out", (dir.empty() ? dir_ : dir).string()});
        return run_cli(args, out_, err_);
    }

    std::string slurp(const std::string& name, const fs::path& dir = {}) const {
        std::ifstream in((dir.empty() ? dir_ : dir) / name, std::ios::binary);
        EXPECT_TRUE(in.good()) << name;
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    // Rows of a CSV, header dropped, fields split on commas.
    std::vector<std::vector<std::string>> rows(const std::string& name) const {
        std::istringstream in(slurp(name));
        std::vector<std::vector<std::string>> out;
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::vector<std::string> fields;
            std::istringstream ls(line);
            std::string f;
            while (std::getline(ls, f, ',')) {
                fields.push_back(f);
            }
            out.push_back(fields);
        }
        return out;
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({"--help"}), kExitOk);
    EXPECT_EQ(run({}), kExitOk);
    EXPECT_EQ(run({"--bogus"}), kExitConfig);
    EXPECT_EQ(run({"--scenario", "nope"}), kExitConfig);
    EXPECT_EQ(run({"--scenario", "fig1", "critical-1dof"}), kExitConfig);
    EXPECT_EQ(run({"critical-1dof", "--l", "-1"}), kExitConfig);
    EXPECT_EQ(run({"trace-1dof", "--profile", "wavy"}), kExitConfig);
    EXPECT_EQ(run({"critical-rod", "--alpha-max", "0"}), kExitConfig);
    EXPECT_EQ(run({"trace-elastica", "--theta-first", "0.01"}), kExitConfig);
    EXPECT_EQ(run({"design-profile", "--beta0", "0"}), kExitConfig);
    EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(Cli, CriticalOneDof) {
    ASSERT_EQ(run({"critical-1dof", "--chi", "-4", "0", "4", "-1"}), kExitOk);
    const auto r = rows("critical_1dof.csv");
    ASSERT_EQ(r.size(), 4u);
    EXPECT_NEAR(num(r[0][1]), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(num(r[1][1]), -1.0, 1e-15);
    EXPECT_NEAR(num(r[2][1]), -0.2, 1e-15);
    EXPECT_EQ(r[3][1], "inf");
}

TEST_F(Cli, EmptyGridGivesEmptyTable) {
    ASSERT_EQ(run({"critical-1dof", "--chi", "{}"}), kExitOk);
    EXPECT_EQ(slurp("critical_1dof.csv"), "chi_hat,Fcr_normalized\n");
    const fs::path again = dir_ / "again";
    ASSERT_EQ(run({"--config", (dir_ / "critical_1dof.config.ini").string()}, again), kExitOk);
    EXPECT_EQ(slurp("critical_1dof.csv", again), "chi_hat,Fcr_normalized\n");
    ASSERT_EQ(run({"critical-1dof", "--chi"}), kExitOk);
    EXPECT_EQ(slurp("critical_1dof.csv"), "chi_hat,Fcr_normalized\n");
}

TEST_F(Cli, ConfigEchoRoundTrip) {
    ASSERT_EQ(run({"critical-rod", "--chi", "-0.8", "0.5", "--alpha-max", "10", "--tag", "r"}), kExitOk);
    const auto echo = slurp("r.config.ini");
    EXPECT_NE(echo.find("[critical-rod]"), std::string::npos);
    EXPECT_NE(echo.find("chi=[-0.80000000000000004, 0.5]"), std::string::npos);
    EXPECT_NE(echo.find("max-modes=1000"), std::string::npos);  // defaults included

    const fs::path again = dir_ / "again";
    ASSERT_EQ(run({"--config", (dir_ / "r.config.ini").string()}, again), kExitOk);
    for (const char* f : {"r_pinned.csv", "r_spring.csv", "r_clamped.csv", "r.config.ini"}) {
        EXPECT_EQ(slurp(f), slurp(f, again)) << f;
    }
}

TEST_F(Cli, TraceOneDofSShapedStarts) {
    ASSERT_EQ(run({"trace-1dof", "--profile", "s-shaped", "--m", "4", "--n", "20", "--tag", "s"}), kExitOk);
    const auto r = rows("s.csv");
    ASSERT_EQ(r.size(), 42u);
    std::vector<double> starts;
    for (const auto& row : r) {
        ASSERT_EQ(row.size(), 5u);
        if (row[3] == "critical") {
            EXPECT_EQ(num(row[0]), 0.0);
            starts.push_back(num(row[1]));
        }
    }
    ASSERT_EQ(starts.size(), 2u);
    std::sort(starts.begin(), starts.end());
    EXPECT_NEAR(starts[0], -0.2, 1e-14);
    EXPECT_NEAR(starts[1], 1.0 / 3.0, 1e-14);
}

TEST_F(Cli, TraceOneDofImperfections) {
    ASSERT_EQ(run({"trace-1dof", "--profile", "s-shaped", "--phi0", "0.01", "-0.01", "--n", "50", "--tag", "i"}),
              kExitOk);
    const auto plus = rows("i_phi0_0.01.csv");
    const auto minus = rows("i_phi0_-0.01.csv");
    ASSERT_EQ(plus.size(), 100u);
    ASSERT_EQ(minus.size(), 100u);
    EXPECT_NE(slurp("i_phi0_0.01.csv"), slurp("i_phi0_-0.01.csv"));
}

TEST_F(Cli, ZeroLengthGrid) {
    EXPECT_EQ(run({"trace-1dof", "--n", "0"}), kExitConfig);
    EXPECT_EQ(run({"trace-1dof", "--phi0", "{}"}), kExitConfig);
}

TEST_F(Cli, SingularTraceKeepsPrefix) {
    EXPECT_EQ(run({"trace-1dof", "--profile", "circular", "--chi", "-1", "--tag", "sing"}), kExitSingular);
    EXPECT_NE(err_.str().find("vertical tangency"), std::string::npos);
    const auto r = rows("sing.csv");
    ASSERT_GE(r.size(), 1u);
    EXPECT_EQ(r[0][1], "inf");
}

TEST_F(Cli, DesignProfileConstant) {
    ASSERT_EQ(run({"design-profile", "--law", "constant", "--beta0", "-1", "--n", "51", "--tag", "c"}), kExitOk);
    const auto r = rows("c.csv");
    ASSERT_EQ(r.size(), 51u);
    for (const auto& row : r) {
        const double psi = num(row[0]);
        const double closed = std::sqrt(1.0 - psi * psi) + std::asin(psi) * std::asin(psi) / 2.0;
        EXPECT_NEAR(num(row[1]), closed, 1e-10) << psi;
    }
    const auto report = slurp("c_report.txt");
    const auto at = report.find("error ");
    ASSERT_NE(at, std::string::npos);
    EXPECT_LT(std::stod(report.substr(at + 6)), 1e-6);
}

TEST_F(Cli, DesignProfileTabulatedZero) {
    EXPECT_EQ(run({"design-profile", "--law", "tabulated", "--table-psi", "0", "0.5", "0.9", "--table-beta", "-1",
                   "0", "-1"}),
              kExitConfig);
    EXPECT_EQ(run({"design-profile", "--law", "tabulated", "--table-psi", "0", "0.5", "0.9", "--table-beta", "-1",
                   "-0.8", "-1"}),
              kExitOk);
}

TEST_F(Cli, CriticalRodTable) {
    ASSERT_EQ(run({"critical-rod", "--tag", "rod"}), kExitOk);
    for (const char* end : {"pinned", "spring", "clamped"}) {
        const auto r = rows(std::string("rod_") + end + ".csv");
        int tension_half = 0;
        int compression_half = 0;
        for (const auto& row : r) {
            ASSERT_EQ(row.size(), 6u);
            const double alpha = num(row[3]);
            const double sgn = row[1] == "tension" ? 1.0 : -1.0;
            EXPECT_NEAR(num(row[4]), sgn * alpha * alpha / (kPi * kPi), 1e-12 * alpha * alpha) << end;
            EXPECT_NEAR(num(row[5]), kPi / alpha, 1e-12 * kPi / alpha) << end;
            if (row[0] == "0.5") {
                (row[1] == "tension" ? tension_half : compression_half) += 1;
            }
        }
        EXPECT_EQ(tension_half, 0) << end;
        EXPECT_GE(compression_half, 3) << end;
    }
}

TEST_F(Cli, TraceElastica) {
    ASSERT_EQ(run({"trace-elastica", "--theta-max", "3.0", "--shape-phi", "45", "--tag", "e"}), kExitOk);
    const auto report = slurp("e_report.txt");
    EXPECT_NE(report.find("branch shift: measured"), std::string::npos);
    for (const char* label : {"tensile", "compressive"}) {
        const auto r = rows(std::string("e_") + label + ".csv");
        ASSERT_GT(r.size(), 40u);
        bool zero_row = false;
        for (const auto& row : r) {
            const double F = num(row[2]);
            EXPECT_NEAR(num(row[5]), 4.0 * F / (kPi * kPi), 1e-15 * std::max(1.0, std::abs(F)));
            if (std::abs(num(row[3]) - kPi / 2) < 1e-10) {
                zero_row = true;
                EXPECT_LT(std::abs(F), 1e-12 * std::abs(num(row[1])));
            }
        }
        EXPECT_TRUE(zero_row) << label;
        EXPECT_TRUE(fs::exists(dir_ / (std::string("e_") + label + "_shape_45deg.csv")));
    }
}

TEST_F(Cli, ContinuationFailureKeepsPartialData) {
    EXPECT_EQ(run({"trace-elastica", "--max-jump", "1e-9", "--max-bisections", "0", "--tag", "p"}),
              kExitContinuation);
    EXPECT_FALSE(rows("p_tensile.csv").empty());
    EXPECT_NE(slurp("p_report.txt").find("partial"), std::string::npos);
}

TEST_F(Cli, ScenarioFig1Reproducible) {
    const fs::path a = dir_ / "a";
    const fs::path b = dir_ / "b";
    ASSERT_EQ(run({"--scenario", "fig1"}, a), kExitOk);
    ASSERT_EQ(run({"--scenario", "fig1"}, b), kExitOk);
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const auto name = e.path().filename().string();
        EXPECT_EQ(slurp(name, a), slurp(name, b)) << name;
        ++n;
    }
    EXPECT_GE(n, 7u);
}
