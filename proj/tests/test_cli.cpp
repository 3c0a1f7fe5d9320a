#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CLI_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "charlier_cli_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

std::vector<double> parse_row(const std::string& line) {
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
    return vals;
}

TEST_CASE("roots subcommand writes the expected CSV") {
    const fs::path out = temp_dir() / "roots1.csv";
    REQUIRE(run("roots --n 1 --a 1 --seed 1 --out " + out.string()) == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "re,im,residual");
    const auto row = parse_row(lines[1]);
    REQUIRE(row.size() == 3);
    CHECK(std::abs(row[0] - 1.0) < 1e-12);
    CHECK(row[1] == 0.0);
    CHECK(row[2] <= 1e-10);

    const fs::path out2 = temp_dir() / "roots2.csv";
    REQUIRE(run("roots --n 2 --a 1 --seed 1 --out " + out2.string()) == 0);
    const auto lines2 = lines_of(slurp(out2));
    REQUIRE(lines2.size() == 3);
    // conjugate rows: identical real parts, opposite imaginary parts
    const auto r1 = parse_row(lines2[1]);
    const auto r2 = parse_row(lines2[2]);
    CHECK(r1[0] == r2[0]);
    CHECK(r1[1] == -r2[1]);
    CHECK(std::abs(r1[0] - 0.75) < 1e-12);
    CHECK(std::abs(std::abs(r1[1]) - std::sqrt(7.0) / 4.0) < 1e-12);
}

TEST_CASE("CSV output is byte-identical across runs") {
    const fs::path out_a = temp_dir() / "det_a.csv";
    const fs::path out_b = temp_dir() / "det_b.csv";
    REQUIRE(run("roots --n 30 --a 0.5 --seed 7 --out " + out_a.string()) == 0);
    REQUIRE(run("roots --n 30 --a 0.5 --seed 7 --out " + out_b.string()) == 0);
    CHECK(slurp(out_a) == slurp(out_b));

    const fs::path curve_a = temp_dir() / "curve_a.csv";
    const fs::path curve_b = temp_dir() / "curve_b.csv";
    REQUIRE(run("curve --a 1 --samples 129 --out " + curve_a.string()) == 0);
    REQUIRE(run("curve --a 1 --samples 129 --out " + curve_b.string()) == 0);
    CHECK(slurp(curve_a) == slurp(curve_b));
}

TEST_CASE("curve subcommand endpoints") {
    const fs::path out = temp_dir() / "curve.csv";
    REQUIRE(run("curve --a 1 --samples 65 --out " + out.string()) == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 66);
    CHECK(lines[0] == "t,x,y,rho,density");
    CHECK(lines[1] == "0,1,2,0,0");  // corner: t=0, x=1, y=2 sqrt(a)
    const auto last = parse_row(lines[65]);
    REQUIRE(last.size() == 5);
    CHECK(last[0] == 1.0);  // t
    CHECK(last[2] == 0.0);  // y
    CHECK(last[1] > 0.3);   // x = gamma1(1)
    CHECK(last[1] < 0.35);
}

TEST_CASE("verify subcommand produces a parseable report") {
    const fs::path out = temp_dir() / "report.txt";
    const int code = run("verify --n 2 --a 1 --seed 1 --out " + out.string());
    CHECK(code == 0);
    const std::string text = slurp(out);
    for (const char* key :
         {"a=", "n=", "localization_ok=", "symmetry_ok=", "trace_error=",
          "mass_total=", "cdf_sup_distance=", "cauchy_error_0=", "threshold=",
          "gamma1=", "warnings_count=", "all_ok="}) {
        CHECK(text.find(key) != std::string::npos);
    }
    CHECK(text.find("localization_ok=true") != std::string::npos);
    CHECK(text.find("all_ok=true") != std::string::npos);
}

TEST_CASE("verify covers both measure regimes at n = 100") {
    const fs::path out = temp_dir() / "report100.txt";
    REQUIRE(run("verify --n 100 --a 1 --seed 1 --out " + out.string()) == 0);
    std::string text = slurp(out);
    CHECK(text.find("all_ok=true") != std::string::npos);
    const auto mass_pos = text.find("mass_total=");
    REQUIRE(mass_pos != std::string::npos);
    CHECK(std::abs(std::stod(text.substr(mass_pos + 11)) - 1.0) <= 1e-6);

    // the mu2 branch needs the extended root finder
    const fs::path out12 = temp_dir() / "report112.txt";
    const std::string env = "CHARLIER_PRECISION=extended ";
    const std::string cmd = env + std::string(CLI_BIN) +
                            " verify --n 100 --a 0.08333333333333333 --seed 1 --out " +
                            out12.string() + " > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(slurp(out12).find("all_ok=true") != std::string::npos);
}

TEST_CASE("precision mode comes from the environment") {
    const fs::path out = temp_dir() / "env.csv";
    const std::string base = std::string(CLI_BIN) + " roots --n 20 --a 1 --seed 2 --out " +
                             out.string() + " > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(("CHARLIER_PRECISION=extended " + base).c_str())) == 0);
    CHECK(WEXITSTATUS(std::system(("CHARLIER_PRECISION=bogus " + base).c_str())) == 2);
}

TEST_CASE("figure subcommand emits data and svg") {
    const fs::path dir = temp_dir() / "figs";
    REQUIRE(run("figure --which 1 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "fig1_a0.01.csv"));
    CHECK(fs::exists(dir / "fig1_a0.1.csv"));
    CHECK(fs::exists(dir / "fig1_a1.csv"));
    CHECK(fs::exists(dir / "fig1_a10.csv"));
    CHECK(fs::exists(dir / "fig1.svg"));
    CHECK(slurp(dir / "fig1.svg").find("<svg") == 0);

    REQUIRE(run("figure --which 4 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "fig4_g_values.csv"));
    const auto raster = lines_of(slurp(dir / "fig4_g_values.csv"));
    CHECK(raster[0] == "x,y,g");
    CHECK(raster.size() == 1 + 101 * 101);

    REQUIRE(run("figure --which 5 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "fig5_density_a0.25.csv"));
    CHECK(fs::exists(dir / "fig5.svg"));

    // nontrivial mu2: root cloud plus the real-interval overlay
    REQUIRE(run("figure --which 3 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "fig3_roots.csv"));
    CHECK(fs::exists(dir / "fig3_support.csv"));
    CHECK(fs::exists(dir / "fig3_interval.csv"));
    const auto roots = lines_of(slurp(dir / "fig3_roots.csv"));
    CHECK(roots.size() == 101);
}

TEST_CASE("invalid flags exit with code 2") {
    CHECK(run("roots --n 0 --a 1 --out /tmp/x.csv") == 2);
    CHECK(run("roots") == 2);
    CHECK(run("nonsense") == 2);
    CHECK(run("figure --which 9 --out /tmp/figs") == 2);
}
