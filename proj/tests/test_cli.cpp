#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shishkin/cli.hpp"
#include "shishkin/config.hpp"
#include "shishkin/error.hpp"

namespace shishkin {
namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("shishkin_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    fs::path dir_;
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST_F(CliTest, ValidateExitCodes) {
    EXPECT_EQ(run({"validate", "--problem", "P3"}).code, cli::kExitOk);
    const CliResult bad = run({"validate", "--problem", "a1-violation"});
    EXPECT_EQ(bad.code, cli::kExitCheckFailed);
    EXPECT_NE(bad.out.find("a1-sign"), std::string::npos);
    EXPECT_NE(bad.out.find("rejected"), std::string::npos);
    EXPECT_EQ(run({"validate", "--problem", "nothing"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"validate", "--bogus"}).code, cli::kExitUsage);
    EXPECT_EQ(run({}).code, cli::kExitUsage);
}

TEST_F(CliTest, ValidateLargeEpsilonWarning) {
    EXPECT_EQ(run({"validate", "--problem", "P1", "--epsilon", "0.1"}).code, cli::kExitCheckFailed);
    const CliResult warn = run({"validate", "--problem", "P1", "--epsilon", "0.1", "--allow-large-epsilon"});
    EXPECT_EQ(warn.code, cli::kExitOk);
    EXPECT_NE(warn.out.find("WARN"), std::string::npos);
}

TEST_F(CliTest, MeshSummary) {
    const std::string cfg = write("p.cfg", "problem = custom\nepsilon = 1e-6\nalpha = 1\na.1.1 = 1\nf.1 = 1\n");
    const CliResult r = run({"mesh", "--config", cfg, "-N", "64", "--out", dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("tau_1 = 0.00831777"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("counts: 16 32 16 (sum 64)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("J_b = {"), std::string::npos);
    const std::string csv = slurp(path("mesh.csv"));
    EXPECT_EQ(csv.rfind("j,x_j,spacing_left\n", 0), 0u);
    EXPECT_EQ(count_lines(csv), 66u);
}

TEST_F(CliTest, MeshUniformClass) {
    const CliResult r = run({"mesh", "--problem", "P1", "--epsilon", "0.0277", "--allow-large-epsilon", "-N", "8", "--out",
                       dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("mesh class: uniform"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("b = (0)"), std::string::npos);
}

TEST_F(CliTest, MeshRejectsInadmissibleN) {
    EXPECT_EQ(run({"mesh", "--problem", "P2", "-N", "8", "--out", dir_.string()}).code, cli::kExitUsage);
}

TEST_F(CliTest, SolveWritesSolution) {
    const CliResult r = run({"solve", "--problem", "P1", "-N", "256", "--out", dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const std::string csv = slurp(path("solution.csv"));
    EXPECT_EQ(csv.rfind("j,x,U_1\n", 0), 0u);
    EXPECT_EQ(count_lines(csv), 258u);
    EXPECT_NE(r.out.find("max nodal error"), std::string::npos);
}

TEST_F(CliTest, SolveSystemDump) {
    const CliResult r = run({"solve", "--problem", "P3", "-N", "32", "--debug-dump", "--out", dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(slurp(path("solution.csv")).rfind("j,x,U_1,U_2\n", 0), 0u);
    EXPECT_EQ(slurp(path("system.csv")).rfind("j,block,row,col,value\n", 0), 0u);
}

TEST_F(CliTest, SolveRejectsFixture) {
    const CliResult r = run({"solve", "--problem", "a1-violation", "-N", "64", "--out", dir_.string()});
    EXPECT_EQ(r.code, cli::kExitCheckFailed);
    EXPECT_NE(r.err.find("a1-sign"), std::string::npos);
}

TEST_F(CliTest, ConvergeSynthetic) {
    const CliResult r = run({"converge", "--synthetic", "--Ns", "64,128,256", "--format", "csv", "--out", dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const std::string series = slurp(path("series.csv"));
    EXPECT_EQ(series.rfind("eps_id,N,error,order,effective_order,bound_constant\n", 0), 0u);
    EXPECT_NE(series.find(",2,"), std::string::npos) << series;
}

TEST_F(CliTest, ConvergeTwoMeshTable) {
    const CliResult r = run({"converge", "--problem", "P2", "--Ns", "64,128,256", "--out", dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("mode = two_mesh"), std::string::npos);
    EXPECT_TRUE(fs::exists(path("uniform.csv")));
    EXPECT_TRUE(fs::exists(path("epsilons.csv")));
}

TEST_F(CliTest, ConvergeRejectsNonDoubling) {
    EXPECT_EQ(run({"converge", "--problem", "P1", "--Ns", "64,100", "--out", dir_.string()}).code, cli::kExitUsage);
}

TEST_F(CliTest, SweepGnuplotAndNotices) {
    const std::string cfg =
        write("s.cfg", "problem = P2\nepsilon_grid = 1e-6,1e-4; 1e-4,1e-6; 1e-8,1e-3\nNs = 64,128\nformat = gnuplot\n");
    const CliResult r = run({"sweep", "--config", cfg, "--out", dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("notice: skipped"), std::string::npos);
    EXPECT_NE(r.out.find("[uniform]"), std::string::npos);
    EXPECT_EQ(slurp(path("series.dat")).rfind("# ", 0), 0u);
}

TEST_F(CliTest, CheckSuites) {
    const CliResult ok = run({"check", "--trials", "100"});
    EXPECT_EQ(ok.code, cli::kExitOk) << ok.out;
    EXPECT_NE(ok.out.find("all suites passed"), std::string::npos);
    const CliResult bad = run({"check", "--trials", "10", "--fixture", "a1-violation"});
    EXPECT_EQ(bad.code, cli::kExitCheckFailed);
    EXPECT_NE(bad.out.find("FAIL discrete-max-principle[a1-violation]"), std::string::npos);
}

TEST_F(CliTest, CheckSeedReproducible) {
    const CliResult a = run({"check", "--trials", "50", "--seed", "7"});
    const CliResult b = run({"check", "--trials", "50", "--seed", "7"});
    EXPECT_EQ(a.code, cli::kExitOk);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, CsvDeterministic) {
    ASSERT_EQ(run({"converge", "--problem", "P3", "--Ns", "64,128", "--format", "csv", "--out", path("a")}).code, 0);
    ASSERT_EQ(run({"converge", "--problem", "P3", "--Ns", "64,128", "--format", "csv", "--out", path("b")}).code, 0);
    EXPECT_EQ(slurp(path("a/series.csv")), slurp(path("b/series.csv")));
    EXPECT_EQ(slurp(path("a/uniform.csv")), slurp(path("b/uniform.csv")));
}

TEST(Config, ParsesKeys) {
    const RunConfig c = parse_config(
        "# comment\nproblem = \"P2\"\nepsilon = 1e-8, 1e-3\nalpha = auto\nNs = 32,64,128\nmode = two_mesh\n"
        "seed = 3\ntrials = 20\nformat = csv\n");
    EXPECT_EQ(c.problem, "P2");
    ASSERT_TRUE(c.epsilon.has_value());
    EXPECT_EQ(*c.epsilon, (std::vector<double>{1e-8, 1e-3}));
    EXPECT_TRUE(c.alpha_auto);
    EXPECT_EQ(c.Ns, (std::vector<std::size_t>{32, 64, 128}));
    EXPECT_EQ(c.seed, 3u);
    EXPECT_EQ(c.trials, 20u);
    EXPECT_EQ(c.format, OutputFormat::Csv);
    const NamedProblem np = resolve_problem(c);
    EXPECT_DOUBLE_EQ(np.problem.alpha, 0.95);
}

TEST(Config, ErrorsCarryLine) {
    try {
        parse_config("problem = P1\nN = 64\nN = 128\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        parse_config("problem = P1\n\nwhatever = 1\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_config("N = abc\n"), ConfigError);
    EXPECT_THROW(parse_config("just text\n"), ConfigError);
}

TEST(Config, CustomProblem) {
    const RunConfig c = parse_config(
        "problem = custom\nepsilon = 1e-6, 1e-2\na.1.1 = 2 + x\na.1.2 = -1\na.2.1 = -1\na.2.2 = 2\nf.1 = exp(x)\nf.2 = 1\n");
    const NamedProblem np = resolve_problem(c);
    EXPECT_EQ(np.problem.n(), 2u);
    EXPECT_DOUBLE_EQ(np.problem.a_at(1.0)(0, 0), 3.0);
    EXPECT_DOUBLE_EQ(np.problem.alpha, 0.95);
    EXPECT_FALSE(np.exact.has_value());
    EXPECT_THROW(resolve_problem(parse_config("problem = P1\na.1.1 = 1\n")), ConfigError);
}

}  // namespace
}  // namespace shishkin
