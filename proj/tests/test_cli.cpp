#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"
#include "cml/instance.hpp"

#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using namespace cml;

namespace {

const std::string kFixtures = CML_FIXTURE_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cml_run(std::vector<std::string> args) {
    args.insert(args.begin(), "cml");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() / ("cml_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

}  // namespace

TEST_CASE("gen is deterministic and records its digest") {
    TempDir a, b;
    const std::vector<std::string> common = {"--seed", "42", "gen", "--kind", "uniform-integer", "--n", "5", "--m", "3"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"--out", a / "x.json"});
    auto args_b = common;
    args_b.insert(args_b.end(), {"--out", b / "x.json"});
    const auto ra = cml_run(args_a);
    const auto rb = cml_run(args_b);
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(read_file(a / "x.json") == read_file(b / "x.json"));

    const Instance inst = parse_instance(read_file(a / "x.json"));
    CHECK(inst.jobs() == 5);
    CHECK(inst.machines() == 3);
    const auto doc = nlohmann::json::parse(read_file(a / "x.json"));
    CHECK(doc["meta"]["seed"] == 42);
    CHECK(doc["meta"]["digest"] == instance_digest(inst));
    CHECK(ra.out.find("digest " + instance_digest(inst)) != std::string::npos);

    auto args_c = common;
    args_c[1] = "43";
    args_c.insert(args_c.end(), {"--out", a / "y.json"});
    REQUIRE(cml_run(args_c).code == 0);
    CHECK(read_file(a / "x.json") != read_file(a / "y.json"));
}

TEST_CASE("gen default path uses the out dir") {
    TempDir dir;
    const auto r = cml_run({"--out-dir", dir.str(), "gen", "--kind", "two-values", "--n", "4", "--m", "2"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "gen-two-values-n4-m2-s1.json"));
}

TEST_CASE("gen rejects bad input") {
    CHECK(cml_run({"gen", "--kind", "bogus", "--n", "3", "--m", "2"}).code == cli::kUsage);
    CHECK(cml_run({"gen", "--n", "3", "--m", "2"}).code == cli::kUsage);
    CHECK(cml_run({"gen", "--kind", "uniform-integer", "--n", "3"}).code == cli::kUsage);
    CHECK(cml_run({"nosuchcommand"}).code == cli::kUsage);
    CHECK(cml_run({"--precision", "0", "verify"}).code == cli::kUsage);
}

TEST_CASE("run from an equilibrium makes no moves") {
    TempDir dir;
    const std::string start = dir / "start.json";
    write_file(start, "{\"format\": \"cml-1\", \"machine_of\": [0, 1]}\n");
    const auto r = cml_run({"--out-dir", dir.str(), "run", "--instance", kFixtures + "/diagonal.json", "--mech",
                            "dcoord", "--d", "2", "--start", start});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("0 moves, converged") != std::string::npos);
    const auto fin = nlohmann::json::parse(read_file(dir / "final_assignment.json"));
    CHECK(fin["machine_of"] == nlohmann::json::array({0, 1}));
    CHECK(fin["phi"] == "2");
    CHECK(fin["makespan"] == "1");
    CHECK(fin["converged"] == true);

    std::istringstream trace(read_file(dir / "trace.jsonl"));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(trace, line)) ++lines;
    CHECK(lines == 1);
}

TEST_CASE("run from a bad start moves to the diagonal") {
    TempDir dir;
    const std::string start = dir / "start.json";
    write_file(start, "{\"format\": \"cml-1\", \"machine_of\": [0, 0]}\n");
    const auto r = cml_run({"--out-dir", dir.str(), "run", "--instance", kFixtures + "/diagonal.json", "--d", "2",
                            "--start", start});
    REQUIRE(r.code == 0);
    const auto fin = nlohmann::json::parse(read_file(dir / "final_assignment.json"));
    CHECK(fin["machine_of"] == nlohmann::json::array({0, 1}));

    std::istringstream trace(read_file(dir / "trace.jsonl"));
    std::string line;
    std::getline(trace, line);
    CHECK(nlohmann::json::parse(line).contains("header"));
    std::getline(trace, line);
    const auto mv = nlohmann::json::parse(line);
    CHECK(mv["player"] == 1);
    CHECK(mv["to"] == 1);
    CHECK(mv["phi_before"] == "105");
    CHECK(mv["phi_after"] == "2");
}

TEST_CASE("run resolves d = auto from m") {
    TempDir dir;
    const auto r = cml_run({"--out-dir", dir.str(), "run", "--kind", "uniform-integer", "--n", "4", "--m", "8"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mechanism dcoord d=3") != std::string::npos);
    const auto fin = nlohmann::json::parse(read_file(dir / "final_assignment.json"));
    CHECK(fin["mechanism"]["d"] == 3);
}

TEST_CASE("run is byte-reproducible") {
    TempDir a, b;
    for (const auto* dir : {&a, &b}) {
        const auto r = cml_run({"--seed", "9", "--out-dir", dir->str(), "run", "--kind", "uniform-integer", "--n",
                                "6", "--m", "3", "--mech", "ccoord", "--order", "random"});
        REQUIRE(r.code == 0);
    }
    CHECK(read_file(a / "trace.jsonl") == read_file(b / "trace.jsonl"));
    CHECK(read_file(a / "final_assignment.json") == read_file(b / "final_assignment.json"));
}

TEST_CASE("run reports non-convergence with the resource exit code") {
    TempDir dir;
    write_file(dir / "three.json", serialize_instance(make_instance({{1, 4, 4}, {4, 1, 4}, {4, 4, 1}})));
    write_file(dir / "start.json", "{\"format\": \"cml-1\", \"machine_of\": [0, 0, 0]}\n");
    const auto r = cml_run({"--out-dir", dir.str(), "run", "--instance", dir / "three.json", "--d", "2", "--start",
                            dir / "start.json", "--max-iter", "1"});
    CHECK(r.code == cli::kResourceCap);
    CHECK(r.out.find("NOT converged") != std::string::npos);
    CHECK(fs::exists(dir / "trace.jsonl"));
    const auto wrong = cml_run({"--out-dir", dir.str(), "run", "--kind", "uniform-integer", "--n", "6", "--m", "3",
                                "--start", dir / "start.json"});
    CHECK(wrong.code == cli::kUsage);
}

TEST_CASE("run rejects bad mechanisms and orders") {
    const std::string inst = kFixtures + "/diagonal.json";
    CHECK(cml_run({"run", "--instance", inst, "--mech", "makespan"}).code == cli::kUsage);
    CHECK(cml_run({"run", "--instance", inst, "--d", "1"}).code == cli::kUsage);
    CHECK(cml_run({"run", "--instance", inst, "--order", "sideways"}).code == cli::kUsage);
    CHECK(cml_run({"run"}).code == cli::kUsage);
    CHECK(cml_run({"run", "--instance", kFixtures + "/missing.json"}).code == cli::kUsage);
}

TEST_CASE("run with a custom gamma table") {
    TempDir dir;
    const auto r = cml_run({"--out-dir", dir.str(), "run", "--instance", kFixtures + "/diagonal.json", "--mech-file",
                            kFixtures + "/custom_gamma.json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mechanism custom d=2") != std::string::npos);
}

TEST_CASE("analyze the diagonal instance") {
    TempDir dir;
    const auto r = cml_run({"--out-dir", dir.str(), "analyze", "--instance", kFixtures + "/diagonal.json", "--d", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("PoA 1, PoS 1") != std::string::npos);
    const auto rep = nlohmann::json::parse(read_file(dir / "diagonal.report.json"));
    CHECK(rep["opt_makespan"] == "1");
    for (const auto& c : rep["bound_checks"]) CHECK(c["pass"] == true);
    const std::string csv = read_file(dir / "report.csv");
    CHECK(csv.find("instance_id,mech,d,n,m,phi,max_ct,makespan,opt,ratio\n") != std::string::npos);
    CHECK(csv.find("diagonal,dcoord,2,2,2,2,1,1,1,1\n") != std::string::npos);
    CHECK(csv.rfind("# tool: ", 0) == 0);
}

TEST_CASE("analyze --compare writes side-by-side columns") {
    TempDir dir;
    const auto r = cml_run({"--out-dir", dir.str(), "analyze", "--instance", kFixtures + "/diagonal.json", "--d", "2",
                            "--compare", "makespan"});
    REQUIRE(r.code == 0);
    const std::string csv = read_file(dir / "compare.csv");
    CHECK(csv.find("instance_id,n,m,opt,poa_dcoord,pos_dcoord,poa_makespan,pos_makespan\n") != std::string::npos);
    CHECK(csv.find("diagonal,2,2,1,1,1,") != std::string::npos);
    CHECK(fs::exists(dir / "diagonal.dcoord.report.json"));
    CHECK(fs::exists(dir / "diagonal.makespan.report.json"));
}

TEST_CASE("analyze --batch covers every instance") {
    TempDir in, out;
    for (int s = 1; s <= 3; ++s) {
        REQUIRE(cml_run({"--seed", std::to_string(s), "gen", "--kind", "uniform-integer", "--n", "4", "--m", "2",
                         "--out", in / ("i" + std::to_string(s) + ".json")})
                    .code == 0);
    }
    const auto r = cml_run({"--out-dir", out.str(), "analyze", "--batch", in.str()});
    REQUIRE(r.code == 0);
    for (int s = 1; s <= 3; ++s) CHECK(fs::exists(out / ("i" + std::to_string(s) + ".report.json")));
    const std::string csv = read_file(out / "report.csv");
    CHECK(csv.find("# instances: 3 from ") != std::string::npos);
}

TEST_CASE("analyze --sweep-m") {
    TempDir dir;
    const auto r = cml_run({"--out-dir", dir.str(), "analyze", "--kind", "uniform-integer", "--n", "3", "--sweep-m",
                            "2,3", "--sweep-count", "3"});
    REQUIRE(r.code == 0);
    const std::string csv = read_file(dir / "sweep.csv");
    CHECK(csv.find("m,d,instances,worst_poa,worst_pos,poa_factor,pos_factor\n") != std::string::npos);
    CHECK(csv.find("\n2,2,3,") != std::string::npos);
    CHECK(csv.find("\n3,2,3,") != std::string::npos);
}

TEST_CASE("analyze beyond the cap exits with the resource code") {
    const auto r = cml_run({"--cap", "10", "analyze", "--kind", "uniform-integer", "--n", "5", "--m", "3"});
    CHECK(r.code == cli::kResourceCap);
    CHECK(r.err.find("--cap") != std::string::npos);
}

TEST_CASE("verify passes by default and honours --d") {
    const auto all = cml_run({"verify", "--cases", "10"});
    CHECK(all.code == 0);
    CHECK(all.out.find("FAIL") == std::string::npos);
    const auto one = cml_run({"verify", "--suite", "sandwich", "--d", "4", "--cases", "15"});
    CHECK(one.code == 0);
    CHECK(one.out.find("PASS sandwich (15 cases, 0 failures)") != std::string::npos);
    CHECK(cml_run({"verify", "--suite", "nope"}).code == cli::kUsage);
}

TEST_CASE("verify flags the zero-sensitive gamma fixture") {
    const auto r = cml_run({"verify", "--suite", "potential", "--cases", "60", "--gamma-fixture",
                            kFixtures + "/zero_sensitive_gamma.json"});
    CHECK(r.code == cli::kVerificationFailure);
    CHECK(r.out.find("FAIL potential") != std::string::npos);
}

TEST_CASE("version and help") {
    CHECK(cml_run({"--version"}).code == 0);
    const auto h = cml_run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("analyze") != std::string::npos);
}
