#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <qcorr/errors.hpp>
#include <qcorr/parallel.hpp>
#include <qcorr_cli/cli.hpp>
#include <qcorr_cli/config.hpp>
#include <qcorr_cli/output.hpp>

using namespace qcorr;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("list and range parsing") {
    CHECK(cli::parse_int_list("1,2,3", "--n") == std::vector<int>{1, 2, 3});
    CHECK(cli::parse_double_list("0, 0.5,1", "--c1sq-grid") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(cli::parse_range("3..6", "--n3") == std::pair<int, int>{3, 6});
    CHECK(cli::parse_range("2:5", "--n3") == std::pair<int, int>{2, 5});
    CHECK_THROWS_AS(cli::parse_int_list("1,x", "--n"), ConfigurationError);
    CHECK_THROWS_AS(cli::parse_range("6..3", "--n3"), ConfigurationError);
    CHECK(cli::parse_symmetry("d") == SymmetryClass::Distinguishable);
}

TEST_CASE("panels option sets both panel counts") {
    cli::RawOptions raw;
    raw.panels = 4;
    const cli::RunConfig config = cli::resolve(raw);
    CHECK(config.scheme(Space::Position).panels == 4);
    CHECK(config.scheme(Space::Position).panels_3d == 4);
    raw.panels_3d = 8;
    CHECK(cli::resolve(raw).scheme(Space::Momentum).panels_3d == 8);
}

TEST_CASE("usage errors exit with 2") {
    const Outcome repeat = run_cli({"report", "--model", "box", "--n", "1,1,2", "--sym", "a"});
    CHECK(repeat.code == cli::kUsage);
    CHECK(repeat.err.find("antisymmetric state requires distinct quantum numbers") != std::string::npos);
    CHECK(run_cli({"report", "--bogus"}).code == cli::kUsage);
    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"report", "--n", "1,2,3", "--sym", "q"}).code == cli::kUsage);
    CHECK(run_cli({"report", "--n", "1,2,3", "--sym", "a", "--L", "-1"}).code == cli::kUsage);
    CHECK(run_cli({"report", "--n", "1,2,3,4", "--sym", "a"}).code == cli::kUsage);
    CHECK(run_cli({"report", "--n", "1,2", "--sym", "a", "--panels", "1", "--nodes", "16"}).code == cli::kUsage);
}

TEST_CASE("numerical failure exits with 3") {
    const Outcome r = run_cli({"report", "--n", "1,2", "--sym", "a", "--panels", "2", "--nodes", "8", "--tol", "1e-15"});
    CHECK(r.code == cli::kNumericalFailure);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("json report round trip") {
    const Outcome r = run_cli({"report", "--n", "1,2,3", "--sym", "a", "--format", "json", "--direct"});
    REQUIRE(r.code == cli::kOk);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("reports").size() == 1);
    const nlohmann::json& first = j["reports"][0];
    const InformationReport back = cli::report_from_json(first);
    CHECK(cli::to_json(back) == first);
    CHECK(back.entropies.s3.has_value());
    CHECK(back.I_pair_direct.has_value());
    CHECK(first["measures"]["I_pair"].get<double>() > 0.0);
}

TEST_CASE("output does not depend on the thread count") {
    const Outcome one = run_cli({"report", "--n", "1,2,4", "--sym", "s", "--format", "json", "--threads", "1"});
    const Outcome two = run_cli({"report", "--n", "1,2,4", "--sym", "s", "--format", "json", "--threads", "3"});
    set_thread_count(0);
    REQUIRE(one.code == cli::kOk);
    CHECK(one.out == two.out);
}

TEST_CASE("config file with command-line override") {
    const auto path = std::filesystem::temp_directory_path() / "qcorr_cli_test.toml";
    {
        std::ofstream cfg(path);
        cfg << "model = \"ho\"\nn = 0,1\nsym = \"a\"\nformat = \"csv\"\n";
    }
    const Outcome from_file = run_cli({"report", "--config", path.string()});
    const Outcome overridden = run_cli({"report", "--config", path.string(), "--sym", "s"});
    std::filesystem::remove(path);
    REQUIRE(from_file.code == cli::kOk);
    REQUIRE(overridden.code == cli::kOk);
    CHECK(from_file.out.find("\nho,position,a,") != std::string::npos);
    CHECK(overridden.out.find("\nho,position,s,") != std::string::npos);
}

TEST_CASE("both spaces add the entropy sum") {
    const Outcome r = run_cli({"report", "--model", "ho", "--n", "0,1", "--sym", "s", "--space", "both"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("s_x + s_p") != std::string::npos);
}

TEST_CASE("coarse tables are reported as mismatches") {
    const Outcome r = run_cli({"tables", "--panels", "4", "--table", "1"});
    CHECK(r.code == cli::kMismatch);
    CHECK(r.err.find("mismatch: table 1") != std::string::npos);
}

TEST_CASE("density grid and scans write CSV") {
    const Outcome grid = run_cli({"density-grid", "--n", "1,2,3", "--sym", "a", "--points", "5"});
    REQUIRE(grid.code == cli::kOk);
    CHECK(grid.out.rfind("x1,x2,value\n", 0) == 0);
    CHECK(std::count(grid.out.begin(), grid.out.end(), '\n') == 26);

    const Outcome scan = run_cli({"scan-superposition", "--sym", "d", "--c1sq-grid", "0,0.5,1", "--panels", "8"});
    REQUIRE(scan.code == cli::kOk);
    CHECK(scan.out.rfind("c1sq,s1,s2,s3,I_pair,I3,I_rho_gamma,I_gamma_gamma,I_higher\n", 0) == 0);

    const Outcome n3 = run_cli({"scan-n3", "--n3", "3..4", "--sym", "a", "--panels", "8"});
    REQUIRE(n3.code == cli::kOk);
    CHECK(std::count(n3.out.begin(), n3.out.end(), '\n') == 3);
}

}
