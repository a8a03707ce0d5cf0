#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = TIOT_CLI_PATH;
const std::string kData = TIOT_DATA_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string cmd = "TIOT_CACHE_DIR=cli_cache " + kCli + " " + args +
                            " > cli_stdout.txt 2> cli_stderr.txt";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp("cli_stdout.txt");
    r.err = slurp("cli_stderr.txt");
    return r;
}

void write_lines(const std::string& path, const std::vector<double>& vals) {
    std::ofstream out(path);
    out.precision(17);
    for (double v : vals) out << v << "\n";
}

// the symmetric two-point pair whose distance is exactly 1 at w = 1/2
const std::string kR2 = "1.4142135623730951";

void write_tent_pair() {
    write_lines("cli_a.txt", {1.4142135623730951, 0.0});
    write_lines("cli_b.txt", {0.0, 1.4142135623730951});
}

std::string tent_args() {
    return "cli_a.txt cli_b.txt --raw --times-a 0," + kR2 + " --times-b 0," + kR2;
}

} // namespace

TEST_CASE("dist prints the documented fields for the worked pair") {
    write_tent_pair();
    const auto exact = run_cli("dist " + tent_args() + " --exact --seed 9");
    REQUIRE(exact.exit_code == 0);
    const json j = json::parse(exact.out);
    CHECK(j.at("command") == "dist");
    CHECK(j.at("solver") == "exact");
    CHECK(j.at("distance").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j.at("w").get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(j.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j.at("iterations").get<long>() > 0);
    CHECK(j.at("converged") == true);
    CHECK(j.at("p").get<double>() == 2.0);
    CHECK(j.at("m") == 2);
    CHECK(j.at("n") == 2);
    CHECK(j.at("seed") == 9);

    const auto ent = run_cli("dist " + tent_args() + " --eps 0.05 --seed 9");
    REQUIRE(ent.exit_code == 0);
    const json je = json::parse(ent.out);
    CHECK(je.at("solver") == "etiot");
    CHECK(je.at("distance").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(je.at("w").get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(je.at("epsilon").get<double>() == 0.05);
    CHECK(je.contains("residual"));
    CHECK(je.contains("log_domain"));
}

TEST_CASE("dist honors the output file flag") {
    write_tent_pair();
    const auto r = run_cli("dist " + tent_args() + " --exact --out cli_dist.json");
    REQUIRE(r.exit_code == 0);
    const json from_file = json::parse(slurp("cli_dist.json"));
    const json from_stdout = json::parse(r.out);
    CHECK(from_file == from_stdout);
    fs::remove("cli_dist.json");
}

TEST_CASE("exit codes distinguish usage, data and solver failures") {
    CHECK(run_cli("").exit_code == 1);                       // no subcommand
    CHECK(run_cli("dist --no-such-flag a b").exit_code == 1); // unknown flag
    CHECK(run_cli("frobnicate").exit_code == 1);             // unknown subcommand

    CHECK(run_cli("dist cli_missing_a.txt cli_missing_b.txt").exit_code == 2);
    write_lines("cli_bad.txt", {});
    std::ofstream("cli_bad.txt") << "not a number\n";
    CHECK(run_cli("dist cli_bad.txt cli_bad.txt").exit_code == 2);

    // a pivot budget of one starves the exact solver
    write_lines("cli_c.txt", {1, 2, 3, 4, 5});
    write_lines("cli_d.txt", {5, 4, 3, 2, 1});
    const auto starved = run_cli("dist cli_c.txt cli_d.txt --exact --max-pivots 1");
    CHECK(starved.exit_code == 3);
    CHECK(starved.err.find("pivot budget") != std::string::npos);
}

TEST_CASE("generator and solver form a pipeline") {
    const auto gen = run_cli("gen --seed 3 --n 40 --out-a cli_ga.txt --out-b cli_gb.txt");
    REQUIRE(gen.exit_code == 0);
    const auto d1 = run_cli("dist cli_ga.txt cli_gb.txt --exact");
    REQUIRE(d1.exit_code == 0);
    const json j = json::parse(d1.out);
    CHECK(j.at("distance").get<double>() > 0.0);
    CHECK(j.at("m") == 40);

    // same seed regenerates the same series, hence the same distance
    run_cli("gen --seed 3 --n 40 --out-a cli_ga2.txt --out-b cli_gb2.txt");
    CHECK(slurp("cli_ga.txt") == slurp("cli_ga2.txt"));
    const auto d2 = run_cli("dist cli_ga2.txt cli_gb2.txt --exact");
    CHECK(json::parse(d2.out).at("distance") == j.at("distance"));
}

TEST_CASE("classification run writes a stable report and reuses the cache") {
    fs::remove_all("cli_cache");
    const std::string args =
        "knn --train " + kData + "/ucr/SonyAIBORobotSurface1_TRAIN.tsv" + //
        " --test " + kData + "/ucr/SonyAIBORobotSurface1_TEST.tsv" +     //
        " --metric etiot --eps 0.1 --limit-test 12 --jobs 0 --seed 1" +  //
        " --out cli_knn --no-timestamp --format csv";
    const auto first = run_cli(args);
    REQUIRE(first.exit_code == 0);
    const json j = json::parse(first.out);
    const double err = j.at("error_rate").get<double>();
    CHECK(err >= 0.0);
    CHECK(err <= 0.5); // far better than chance on 12 held-out series
    const std::string report = slurp("cli_knn.csv");
    CHECK(report.find("# kind,knn") == 0);
    CHECK(report.find("etiot") != std::string::npos);

    // second run hits the distance cache and reproduces the bytes
    const auto second = run_cli(args);
    REQUIRE(second.exit_code == 0);
    CHECK(slurp("cli_knn.csv") == report);
    CHECK(json::parse(second.out).at("error_rate").get<double>() == err);
    fs::remove("cli_knn.csv");
    fs::remove_all("cli_cache");
}

TEST_CASE("lag study runs on the climate fixture") {
    const auto r = run_cli("lag --csv " + kData +
                           "/climate_fixture.csv --window 10 --max-ell 5"
                           " --out cli_lag --no-timestamp --format csv");
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp("cli_lag.csv");
    CHECK(csv.find("# kind,lag") == 0);
    CHECK(csv.find("ell,tiot,w_star") != std::string::npos);
    // five data rows follow the two comment lines, parameters and header
    int data_rows = 0;
    std::istringstream ss(csv);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'e') ++data_rows;
    CHECK(data_rows == 5);
    fs::remove("cli_lag.csv");
}

TEST_CASE("convergence and bench drivers produce their tables") {
    const auto c = run_cli("converge --n 12 --eps-list 0.5,0.1 --seeds 2 --seed 1"
                           " --out cli_conv --no-timestamp --format json");
    REQUIRE(c.exit_code == 0);
    const json conv = json::parse(slurp("cli_conv.json"));
    CHECK(conv.at("kind") == "convergence");
    CHECK(conv.at("rows").size() == 2);
    fs::remove("cli_conv.json");

    const auto b = run_cli("bench --sizes 4,6 --reps 1 --lp-cutoff 6 --eps 0.5"
                           " --out cli_bench --no-timestamp --format json");
    REQUIRE(b.exit_code == 0);
    const json bench = json::parse(slurp("cli_bench.json"));
    CHECK(bench.at("kind") == "runtime");
    CHECK(bench.at("rows").size() == 8);
    fs::remove("cli_bench.json");
}

TEST_CASE("alignment command exports the matched support") {
    write_tent_pair();
    const auto r = run_cli("align " + tent_args() +
                           " --exact --out cli_align --no-timestamp --format json");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(slurp("cli_align.json"));
    CHECK(rep.at("kind") == "alignment");
    CHECK(rep.at("rows").size() == 2); // a two-point permutation
    fs::remove("cli_align.json");
}

TEST_CASE("repeated timestamp-free runs are byte-identical") {
    write_tent_pair();
    const std::string args = "align " + tent_args() +
                             " --exact --out cli_rep --no-timestamp --format both";
    REQUIRE(run_cli(args).exit_code == 0);
    const std::string j1 = slurp("cli_rep.json"), c1 = slurp("cli_rep.csv");
    REQUIRE(run_cli(args).exit_code == 0);
    CHECK(slurp("cli_rep.json") == j1);
    CHECK(slurp("cli_rep.csv") == c1);
    CHECK(!j1.empty());
    CHECK(!c1.empty());
    fs::remove("cli_rep.json");
    fs::remove("cli_rep.csv");
}
