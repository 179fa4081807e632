#include "cli.hpp"

#include "cml/analysis.hpp"
#include "cml/dynamics.hpp"
#include "cml/instance.hpp"
#include "cml/report_io.hpp"
#include "cml/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

namespace cml::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int precision = 12;
    std::uint64_t cap = kDefaultCap;
};

/// Instance source: a file or generator settings, never both.
struct InstanceSource {
    std::string path;
    std::string kind;
    std::size_t n = 0;
    std::size_t m = 0;
    GeneratorParams params;

    void add_generator_options(CLI::App* cmd, bool with_path) {
        if (with_path) cmd->add_option("--instance", path, "Instance file (cml-1 JSON)");
        cmd->add_option("--kind", kind, "Generator: uniform-integer | restricted-related | two-values");
        cmd->add_option("--n", n, "Number of jobs");
        cmd->add_option("--m", m, "Number of machines");
        cmd->add_option("--lo", params.lo, "Smallest generated weight");
        cmd->add_option("--hi", params.hi, "Largest generated weight (or base size for restricted-related)");
        cmd->add_option("--avail", params.avail, "restricted-related: machine availability probability");
        cmd->add_option("--factor-max", params.factor_max, "restricted-related: largest machine factor");
        cmd->add_flag("--strict", params.strict, "Fail on an empty availability row instead of redrawing");
    }

    bool from_file() const { return !path.empty(); }

    void check() const {
        if (from_file() && !kind.empty()) throw UsageError("give either --instance or a generator (--kind), not both");
        if (!from_file() && kind.empty()) throw UsageError("an instance is required: --instance FILE or --kind KIND");
        if (!from_file() && (n == 0 || m == 0)) throw UsageError("generator needs --n and --m");
    }

    Instance load(std::uint64_t seed) const {
        check();
        if (from_file()) return parse_instance(read_file(path));
        return generate_instance(kind, n, m, seed, params);
    }

    std::string id(std::uint64_t seed) const {
        if (from_file()) return fs::path(path).stem().string();
        return "gen-" + kind + "-n" + std::to_string(n) + "-m" + std::to_string(m) + "-s" + std::to_string(seed);
    }
};

struct MechanismOptions {
    std::string name = "dcoord";
    std::string degree = "auto";
    std::string file;

    void add(CLI::App* cmd) {
        cmd->add_option("--mech", name, "Mechanism: dcoord | ccoord");
        cmd->add_option("--d", degree, "Degree d >= 2, or 'auto' for max(2, ceil(log2 m))");
        cmd->add_option("--mech-file", file, "Mechanism descriptor JSON (custom gamma tables)");
    }
};

unsigned resolve_degree(const std::string& text, const Instance& inst) {
    if (text == "auto") return default_degree(inst.machines());
    try {
        std::size_t used = 0;
        long d = std::stol(text, &used);
        if (used != text.size() || d < 2) throw std::invalid_argument(text);
        return static_cast<unsigned>(d);
    } catch (const std::exception&) {
        throw UsageError("--d must be an integer >= 2 or 'auto', got '" + text + "'");
    }
}

Mechanism resolve_mechanism(const std::string& name, const std::string& degree, const std::string& file,
                            const Instance& inst, bool allow_baseline) {
    if (!file.empty()) return Mechanism(parse_mechanism(read_file(file)));
    if (name == "dcoord") return Mechanism(CoefficientFunction::dcoord(resolve_degree(degree, inst)));
    if (name == "ccoord") return Mechanism(CoefficientFunction::ccoord(resolve_degree(degree, inst)));
    if (name == "makespan" && allow_baseline) return Mechanism::makespan_baseline();
    throw UsageError("unknown mechanism '" + name + "'" + (allow_baseline ? "" : " (makespan is only for --compare)"));
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

// ---- gen -----------------------------------------------------------------

struct GenCommand {
    InstanceSource source;
    std::string out;

    int execute(const GlobalOptions& g, std::ostream& out_stream) {
        if (source.kind.empty()) throw UsageError("gen needs --kind");
        if (source.n == 0 || source.m == 0) throw UsageError("gen needs --n and --m");
        const Instance inst = generate_instance(source.kind, source.n, source.m, g.seed, source.params);
        const std::string digest = instance_digest(inst);

        nlohmann::ordered_json meta;
        meta["tool"] = kToolVersion;
        meta["seed"] = g.seed;
        meta["generator"] = source.kind;
        meta["lo"] = source.params.lo;
        meta["hi"] = source.params.hi;
        if (source.kind == "restricted-related") {
            meta["avail"] = source.params.avail;
            meta["factor_max"] = source.params.factor_max;
        }
        meta["digest"] = digest;
        meta["note"] = "synthetic instance family chosen by this tool";

        std::string text = serialize_instance(inst);
        // splice the metadata before the closing brace; parse_instance ignores it
        text.erase(text.rfind('}'));
        text.erase(text.find_last_not_of(" \n") + 1);
        text += ",\n  \"meta\": " + meta.dump() + "\n}\n";

        std::string path = out.empty() ? join(g.out_dir, source.id(g.seed) + ".json") : out;
        if (auto parent = fs::path(path).parent_path(); !parent.empty()) ensure_dir(parent.string());
        write_file(path, text);
        out_stream << "wrote " << path << "\n" << "digest " << digest << "\n";
        return kSuccess;
    }
};

// ---- run -----------------------------------------------------------------

struct RunCommand {
    InstanceSource source;
    MechanismOptions mech;
    std::string order = "round-robin";
    std::size_t max_iter = 0;
    std::string start_file;

    int execute(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
        const Instance inst = source.load(g.seed);
        const Mechanism mechanism = resolve_mechanism(mech.name, mech.degree, mech.file, inst, false);
        const CoefficientFunction& cf = mechanism.coefficients();

        Assignment start = start_file.empty() ? min_weight_assignment(inst) : parse_assignment(read_file(start_file));
        validate(inst, start);

        DynamicsOptions options;
        options.order = parse_move_order(order);
        options.seed = g.seed;
        options.max_iter = max_iter;
        const DynamicsTrace trace = run_dynamics(cf, inst, start, options);

        const std::string digest = instance_digest(inst);
        ensure_dir(g.out_dir);

        nlohmann::ordered_json header;
        header["tool"] = kToolVersion;
        header["seed"] = g.seed;
        header["instance_id"] = source.id(g.seed);
        header["instance_digest"] = digest;
        header["mechanism"] = nlohmann::ordered_json::parse(mechanism_descriptor(cf));
        header["order"] = to_string(options.order);
        header["max_iter"] = options.max_iter ? options.max_iter : default_max_iter(inst);
        std::ostringstream lines;
        lines << nlohmann::ordered_json{{"header", header}}.dump() << "\n";
        for (const auto& mv : trace.moves) lines << move_record(mv) << "\n";
        write_file(join(g.out_dir, "trace.jsonl"), lines.str());

        const Assignment& fin = trace.final_assignment;
        const LoadVector lv = load_vector(inst, fin);
        Rational worst = 0;
        for (JobIndex u = 0; u < inst.jobs(); ++u) {
            auto ct = completion_time(mechanism, inst, fin, u, g.precision);
            if (ct.lambda_over_wu > worst) worst = ct.lambda_over_wu;
        }
        const Rational phi = potential(cf, inst, fin).value;

        nlohmann::ordered_json final_doc;
        final_doc["format"] = kFormatTag;
        final_doc["machine_of"] = fin.machine_of;
        final_doc["tool"] = kToolVersion;
        final_doc["seed"] = g.seed;
        final_doc["instance_digest"] = digest;
        final_doc["mechanism"] = header["mechanism"];
        final_doc["converged"] = trace.converged;
        final_doc["moves"] = trace.moves.size();
        final_doc["phi"] = to_string(phi);
        final_doc["makespan"] = to_string(makespan(lv));
        final_doc["max_completion_time"] = root_decimal(worst, cf.degree(), g.precision);
        write_file(join(g.out_dir, "final_assignment.json"), final_doc.dump(2) + "\n");

        out << "instance " << source.id(g.seed) << " (n=" << inst.jobs() << ", m=" << inst.machines() << ")\n"
            << "mechanism " << cf.name() << " d=" << cf.degree() << "\n"
            << trace.moves.size() << " moves, " << (trace.converged ? "converged" : "NOT converged") << "\n"
            << "phi " << to_string(phi) << "\n"
            << "makespan " << to_string(makespan(lv)) << "\n"
            << "max completion time " << root_decimal(worst, cf.degree(), g.precision) << "\n";
        if (!trace.converged) {
            err << "warning: max_iter exhausted before reaching an equilibrium\n";
            return kResourceCap;
        }
        return kSuccess;
    }
};

// ---- analyze -------------------------------------------------------------

struct AnalyzeCommand {
    InstanceSource source;
    MechanismOptions mech;
    std::string compare;
    std::string batch_dir;
    std::vector<std::size_t> sweep_m;
    std::size_t sweep_count = 10;

    struct Labeled {
        std::string id;
        Instance inst;
    };

    std::vector<Labeled> instances(const GlobalOptions& g) const {
        std::vector<Labeled> out;
        if (!batch_dir.empty()) {
            if (source.from_file() || !source.kind.empty())
                throw UsageError("--batch excludes --instance and generator options");
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(batch_dir))
                if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            if (files.empty()) throw UsageError("no .json instances in '" + batch_dir + "'");
            for (const auto& f : files) out.push_back({f.stem().string(), parse_instance(read_file(f.string()))});
            return out;
        }
        out.push_back({source.id(g.seed), source.load(g.seed)});
        return out;
    }

    int execute(const GlobalOptions& g, std::ostream& out) {
        if (!sweep_m.empty()) return sweep(g, out);
        ensure_dir(g.out_dir);
        const auto items = instances(g);

        std::ostringstream csv, compare_csv;
        std::string descriptor_line;
        bool bounds_ok = true;
        for (const auto& [id, inst] : items) {
            const RunMeta meta{id, instance_digest(inst), g.seed};
            std::vector<Mechanism> mechs = {resolve_mechanism(mech.name, mech.degree, mech.file, inst, false)};
            if (!compare.empty()) mechs.push_back(resolve_mechanism(compare, mech.degree, "", inst, true));

            std::vector<EquilibriumReport> reports;
            for (const auto& m : mechs) {
                EquilibriumReport r = poa_pos_report(m, inst, g.cap, g.precision);
                const std::string suffix = mechs.size() > 1 ? "." + m.name() : "";
                write_file(join(g.out_dir, id + suffix + ".report.json"), report_json(r, inst, meta));
                csv << report_csv_rows(r, inst, meta, g.precision);
                bounds_ok = bounds_ok && r.all_bounds_pass();
                std::size_t passed = 0;
                for (const auto& c : r.bound_checks) passed += c.pass ? 1 : 0;
                out << id << " [" << m.name() << " d=" << r.degree << "] opt " << to_string(r.opt.value) << ", "
                    << r.equilibria.size() << " equilibria, PoA " << r.poa_ratio << ", PoS " << r.pos_ratio;
                if (!r.bound_checks.empty()) out << ", bound checks " << passed << "/" << r.bound_checks.size();
                out << "\n";
                reports.push_back(std::move(r));
            }
            if (descriptor_line.empty()) {
                for (const auto& r : reports) descriptor_line += (descriptor_line.empty() ? "" : " ") + r.mechanism;
            }
            if (reports.size() > 1) {
                compare_csv << id << ',' << inst.jobs() << ',' << inst.machines() << ','
                            << to_decimal(reports[0].opt.value, g.precision);
                for (const auto& r : reports) compare_csv << ',' << r.poa_ratio << ',' << r.pos_ratio;
                compare_csv << '\n';
            }
        }

        std::vector<std::pair<std::string, std::string>> pre = {{"tool", kToolVersion},
                                                                {"seed", std::to_string(g.seed)},
                                                                {"mechanism", descriptor_line}};
        if (items.size() == 1) pre.emplace_back("instance_digest", instance_digest(items.front().inst));
        else pre.emplace_back("instances", std::to_string(items.size()) + " from " + batch_dir);
        write_file(join(g.out_dir, "report.csv"), csv_preamble(pre) + report_csv_header() + csv.str());
        if (!compare.empty()) {
            const std::string a = mech.file.empty() ? mech.name : "custom";
            write_file(join(g.out_dir, "compare.csv"),
                       csv_preamble(pre) + "instance_id,n,m,opt,poa_" + a + ",pos_" + a + ",poa_" + compare +
                           ",pos_" + compare + "\n" + compare_csv.str());
        }
        if (!bounds_ok) {
            out << "BOUND CHECK FAILURE\n";
            return kVerificationFailure;
        }
        return kSuccess;
    }

    int sweep(const GlobalOptions& g, std::ostream& out) {
        if (source.from_file() || !batch_dir.empty()) throw UsageError("--sweep-m uses the generator options");
        if (source.n == 0) throw UsageError("--sweep-m needs --n");
        const std::string kind = source.kind.empty() ? "uniform-integer" : source.kind;
        ensure_dir(g.out_dir);
        std::ostringstream rows;
        bool bounds_ok = true;
        for (std::size_t m : sweep_m) {
            if (m == 0) throw UsageError("--sweep-m entries must be >= 1");
            Interval worst_poa(Rational(0)), worst_pos(Rational(0));
            std::string worst_poa_text = "0", worst_pos_text = "0";
            Rational worst_poa_power = -1, worst_pos_power = -1;
            unsigned d = 0;
            for (std::size_t i = 0; i < sweep_count; ++i) {
                const Instance inst = generate_instance(kind, source.n, m, g.seed + i, source.params);
                const Mechanism mechanism = resolve_mechanism(mech.name, mech.degree, mech.file, inst, false);
                d = mechanism.root_degree();
                const auto r = poa_pos_report(mechanism, inst, g.cap, g.precision);
                bounds_ok = bounds_ok && r.all_bounds_pass();
                if (r.equilibria.empty()) continue;
                const Rational opt_power = pow(r.opt.value, d);
                const Rational poa_power = r.equilibria[r.poa_index].max_ct_power / opt_power;
                const Rational pos_power = r.equilibria[r.pos_index].max_ct_power / opt_power;
                if (poa_power > worst_poa_power) {
                    worst_poa_power = poa_power;
                    worst_poa_text = r.poa_ratio;
                }
                if (pos_power > worst_pos_power) {
                    worst_pos_power = pos_power;
                    worst_pos_text = r.pos_ratio;
                }
            }
            const bool dcoord = mech.file.empty() && mech.name == "dcoord";
            rows << m << ',' << d << ',' << sweep_count << ',' << worst_poa_text << ',' << worst_pos_text << ','
                 << (dcoord ? poa_factor(m, d).to_decimal(g.precision) : "") << ','
                 << (dcoord ? pos_factor(m, d).to_decimal(g.precision) : "") << '\n';
            out << "m=" << m << " d=" << d << " worst PoA " << worst_poa_text << " worst PoS " << worst_pos_text << "\n";
        }
        const std::vector<std::pair<std::string, std::string>> pre = {
            {"tool", kToolVersion},
            {"seed", std::to_string(g.seed)},
            {"mechanism", mech.file.empty() ? mech.name + " d=" + mech.degree : mech.file},
            {"generator", kind + " n=" + std::to_string(source.n) + " lo=" + std::to_string(source.params.lo) +
                              " hi=" + std::to_string(source.params.hi)}};
        write_file(join(g.out_dir, "sweep.csv"),
                   csv_preamble(pre) + "m,d,instances,worst_poa,worst_pos,poa_factor,pos_factor\n" + rows.str());
        return bounds_ok ? kSuccess : kVerificationFailure;
    }
};

// ---- verify --------------------------------------------------------------

struct VerifyCommand {
    std::vector<std::string> suites;
    unsigned degree = 0;
    std::size_t cases = 0;
    std::string fixture;

    int execute(const GlobalOptions& g, std::ostream& out) {
        SuiteOptions options;
        options.seed = g.seed;
        options.cases = cases;
        if (degree) {
            if (degree < 2) throw UsageError("--d must be >= 2");
            options.degree = degree;
        }
        if (!fixture.empty()) options.custom = parse_zero_sensitive_fixture(read_file(fixture));
        const auto& names = suites.empty() ? suite_names() : suites;
        bool ok = true;
        out << kToolVersion << " verify seed=" << g.seed << "\n";
        for (const auto& name : names) {
            const SuiteResult r = run_suite(name, options);
            ok = ok && r.passed();
            out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.failures
                << " failures)";
            if (!r.first_failure.empty()) out << " first: " << r.first_failure;
            out << "\n";
        }
        return ok ? kSuccess : kVerificationFailure;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coordination mechanisms for unrelated machine scheduling: games, equilibria and bounds", "cml"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Random seed (recorded in every output)");
    app.add_option("--out-dir", g.out_dir, "Directory for output files");
    app.add_option("--precision", g.precision, "Significant digits for decimal output")->check(CLI::Range(1, 60));
    app.add_option("--cap", g.cap, "Maximum candidate assignments to enumerate");

    GenCommand gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
    gen.source.add_generator_options(gen_cmd, false);
    gen_cmd->add_option("--out", gen.out, "Output path (default: <out-dir>/<id>.json)");

    RunCommand run_cmd_state;
    auto* run_cmd = app.add_subcommand("run", "Best-response dynamics from a start assignment");
    run_cmd_state.source.add_generator_options(run_cmd, true);
    run_cmd_state.mech.add(run_cmd);
    run_cmd->add_option("--order", run_cmd_state.order, "round-robin | random | max-improvement");
    run_cmd->add_option("--max-iter", run_cmd_state.max_iter, "Move budget (default 10 n m^2)");
    run_cmd->add_option("--start", run_cmd_state.start_file, "Start assignment file (default: min-weight machines)");

    AnalyzeCommand analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Enumerate equilibria, PoA / PoS and bound checks");
    analyze.source.add_generator_options(analyze_cmd, true);
    analyze.mech.add(analyze_cmd);
    analyze_cmd->add_option("--compare", analyze.compare, "Second mechanism for side-by-side columns (dcoord|ccoord|makespan)");
    analyze_cmd->add_option("--batch", analyze.batch_dir, "Analyze every .json instance in a directory");
    analyze_cmd->add_option("--sweep-m", analyze.sweep_m, "Machine counts for a worst-ratio sweep")->delimiter(',');
    analyze_cmd->add_option("--sweep-count", analyze.sweep_count, "Instances per sweep point");

    VerifyCommand verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property suites");
    verify_cmd->add_option("--suite", verify.suites, "Suite name (repeatable); default all");
    verify_cmd->add_option("--d", verify.degree, "Restrict degree-parameterized suites to one d");
    verify_cmd->add_option("--cases", verify.cases, "Cases per suite (default: suite-specific)");
    verify_cmd->add_option("--gamma-fixture", verify.fixture, "Zero-sensitive gamma fixture (negative control)");

    app.fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (gen_cmd->parsed()) return gen.execute(g, out);
        if (run_cmd->parsed()) return run_cmd_state.execute(g, out, err);
        if (analyze_cmd->parsed()) return analyze.execute(g, out);
        if (verify_cmd->parsed()) return verify.execute(g, out);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << " (rerun with --cap "
            << static_cast<unsigned long long>(e.required()) << ")\n";
        return kResourceCap;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace cml::cli
