// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cli.hpp"
#include "cml/analysis.hpp"
#include "cml/dynamics.hpp"
#include "cml/suites.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace cml;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Outcome from_suite(const std::string& name, std::size_t cases = 0, double time_limit = 0) {
    SuiteOptions opt;
    opt.seed = 20240601;
    opt.cases = cases;
    const SuiteResult r = run_suite(name, opt);
    std::ostringstream os;
    os << r.cases << " cases, " << r.failures << " failures, " << r.seconds << " s";
    if (!r.first_failure.empty()) os << ", first: " << r.first_failure;
    bool pass = r.passed();
    if (time_limit > 0 && r.seconds >= time_limit) {
        pass = false;
        os << " (limit " << time_limit << " s)";
    }
    return {pass, os.str()};
}

// Shared by the equilibrium and bound criteria so both see the same games.
struct Game {
    unsigned d;
    Instance inst;
};

std::vector<Game> games() {
    std::vector<Game> out;
    for (std::size_t k = 0; k < 100; ++k) {
        Rng rng = case_rng(7, "acceptance-games", k);
        std::uniform_int_distribution<std::size_t> nd(2, 5), md(2, 3);
        std::bernoulli_distribution holes(0.3);
        const std::size_t n = nd(rng), m = md(rng);
        out.push_back({static_cast<unsigned>(2 + k % 2), random_instance(rng, n, m, 10, holes(rng))});
    }
    return out;
}

Outcome equilibria_and_dynamics(const std::vector<Game>& gs) {
    const auto start = Clock::now();
    std::size_t runs = 0;
    for (std::size_t k = 0; k < gs.size(); ++k) {
        const auto& [d, inst] = gs[k];
        const auto cf = CoefficientFunction::dcoord(d);
        const Mechanism mech(cf);
        const auto eqs = enumerate_equilibria(mech, inst);
        if (eqs.empty()) return {false, "instance " + std::to_string(k) + " has no equilibrium"};

        Rng rng = case_rng(7, "acceptance-starts", k);
        std::vector<Assignment> starts = {min_weight_assignment(inst)};
        const std::size_t wanted = std::min<std::size_t>(3, static_cast<std::size_t>(candidate_count(inst)));
        while (starts.size() < wanted) {
            auto s = random_assignment(rng, inst);
            if (std::find(starts.begin(), starts.end(), s) == starts.end()) starts.push_back(std::move(s));
        }
        const MoveOrder orders[] = {MoveOrder::RoundRobin, MoveOrder::Random, MoveOrder::MaxImprovement};
        for (std::size_t s = 0; s < starts.size(); ++s) {
            DynamicsOptions opt;
            opt.order = orders[s];
            opt.seed = k;
            opt.max_iter = static_cast<std::size_t>(candidate_count(inst)) * inst.jobs();
            const auto trace = run_dynamics(cf, inst, starts[s], opt);
            ++runs;
            if (!trace.converged) return {false, "dynamics did not converge on instance " + std::to_string(k)};
            if (!std::binary_search(eqs.begin(), eqs.end(), trace.final_assignment))
                return {false, "converged assignment not enumerated on instance " + std::to_string(k)};
        }
    }
    const double t = seconds_since(start);
    std::ostringstream os;
    os << gs.size() << " instances, " << runs << " dynamics runs, " << t << " s";
    return {t < 120, os.str()};
}

Outcome certified_bounds(const std::vector<Game>& gs) {
    std::size_t checks = 0, violations = 0;
    std::string first;
    for (std::size_t k = 0; k < gs.size(); ++k) {
        const auto& [d, inst] = gs[k];
        const auto report = poa_pos_report(Mechanism(CoefficientFunction::dcoord(d)), inst);
        if (report.bound_checks.empty()) return {false, "no bound checks on instance " + std::to_string(k)};
        for (const auto& c : report.bound_checks) {
            ++checks;
            if (!c.pass) {
                ++violations;
                if (first.empty())
                    first = "instance " + std::to_string(k) + " " + c.name + " at " + c.scope + ": " + c.observed +
                            " vs " + c.theoretical;
            }
        }
    }
    std::ostringstream os;
    os << checks << " checks, " << violations << " violations";
    if (!first.empty()) os << ", first: " << first;
    return {violations == 0, os.str()};
}

std::string slurp_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += f.filename().string() + "\n" + read_file(f.string());
    return all;
}

Outcome reproducibility() {
    const fs::path root = fs::temp_directory_path() / ("cml_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::string first_dir;
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
        const std::string dir = (root / std::to_string(rep)).string();
        const std::vector<std::vector<std::string>> commands = {
            {"cml", "--seed", "31", "--out-dir", dir, "gen", "--kind", "restricted-related", "--n", "5", "--m", "3",
             "--out", dir + "/inst.json"},
            {"cml", "--seed", "31", "--out-dir", dir, "run", "--instance", dir + "/inst.json", "--order", "random"},
            {"cml", "--seed", "31", "--out-dir", dir, "analyze", "--instance", dir + "/inst.json", "--compare",
             "ccoord"},
        };
        std::string log;
        for (const auto& args : commands) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            if (code != 0) {
                fs::remove_all(root);
                return {false, args[5] + " exited with " + std::to_string(code) + ": " + err.str()};
            }
            log += out.str();
        }
        outputs[rep] = log + slurp_dir(dir);
    }
    fs::remove_all(root);
    // the directory name differs between the two runs and is echoed by "gen"
    auto normalize = [](std::string s, const std::string& from, const std::string& to) {
        for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size()))
            s.replace(p, from.size(), to);
        return s;
    };
    const std::string a = normalize(outputs[0], (root / "0").string(), "DIR");
    const std::string b = normalize(outputs[1], (root / "1").string(), "DIR");
    return {a == b, std::to_string(a.size()) + " bytes compared"};
}

}  // namespace

int main() {
    const auto gs = games();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 closed forms match composition enumeration", [] { return from_suite("oracle", 0, 30); }},
        {"2 Lambda decomposition identity", [] { return from_suite("decomposition"); }},
        {"3 potential change equals deviation gain", [] { return from_suite("potential"); }},
        {"4 DCOORD feasibility", [] { return from_suite("feasibility"); }},
        {"5 DCOORD sandwich bounds", [] { return from_suite("sandwich"); }},
        {"6 equilibria exist and dynamics reach them", [&] { return equilibria_and_dynamics(gs); }},
        {"7 certified load, PoA and PoS bounds", [&] { return certified_bounds(gs); }},
        {"8 scale invariance", [] { return from_suite("scale"); }},
        {"9 CLI reproducibility", [] { return reproducibility(); }},
    };
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail << ")" << std::endl;
    }
    return all ? 0 : 1;
}
