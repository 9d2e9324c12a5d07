// Command-line front end: check / meet / join / sweep / demo over JSON
// observable files. Exit codes: 0 relation holds or operation succeeded,
// 1 relation fails or no result exists (or a sweep found failures),
// 2 unusable input, 3 internal consistency violation.

#include "orthoalg/io.hpp"
#include "orthoalg/lattice.hpp"
#include "orthoalg/observable.hpp"
#include "orthoalg/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace orthoalg;
using orthoalg::io::json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

struct GlobalOptions {
    std::string format = "text";
    std::optional<double> tol_cluster_rel, tol_zero_abs, tol_proj, tol_hermitian;
};

Tolerances base_tolerances() {
    const char* profile = std::getenv("ORTHOALG_TOL_PROFILE");
    return Tolerances::profile(profile ? profile : "default");
}

Tolerances resolve_tolerances(const GlobalOptions& opt,
                              const std::vector<io::ObservableFile>& files) {
    Tolerances t = base_tolerances();
    for (const auto& f : files)
        if (f.tolerance_overrides) t = io::apply_overrides(t, *f.tolerance_overrides);
    if (opt.tol_cluster_rel) t.cluster_rel = *opt.tol_cluster_rel;
    if (opt.tol_zero_abs) t.zero_abs = *opt.tol_zero_abs;
    if (opt.tol_proj) t.proj_tol = *opt.tol_proj;
    if (opt.tol_hermitian) t.hermitian_tol = *opt.tol_hermitian;
    t.validate();
    return t;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return io::fnv1a_hex(buf.str());
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void emit(const io::RunReport& report, const GlobalOptions& opt, const std::string& text) {
    if (opt.format == "jsonl") {
        // Byte-identical across identical runs: wall time stays out.
        std::cout << report.to_jsonl(false) << "\n";
    } else {
        std::cout << text;
    }
}

io::RunReport base_report(const std::string& command, const Tolerances& tol,
                          const std::vector<std::string>& paths,
                          const std::vector<io::ObservableFile>& files) {
    io::RunReport rep;
    rep.command = command;
    rep.tolerances = io::tolerances_to_json(tol);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        rep.inputs.push_back(
            {{"name", files[i].name}, {"path", paths[i]}, {"hash", file_hash(paths[i])}});
    }
    return rep;
}

std::vector<io::ObservableFile> load_files(const std::vector<std::string>& paths) {
    std::vector<io::ObservableFile> files;
    files.reserve(paths.size());
    for (const auto& p : paths) files.push_back(io::read_observable_file(p));
    return files;
}

std::vector<Observable> to_observables(const std::vector<io::ObservableFile>& files,
                                       const Tolerances& tol) {
    std::vector<Observable> obs;
    obs.reserve(files.size());
    for (const auto& f : files) obs.emplace_back(f.entries, tol);
    return obs;
}

// ── check ─────────────────────────────────────────────────────────────────

int run_check_orth(const std::vector<std::string>& paths, const GlobalOptions& opt) {
    Timer timer;
    auto files = load_files(paths);
    Tolerances tol = resolve_tolerances(opt, files);
    auto obs = to_observables(files, tol);

    OrthogonalityReport rep = is_orthogonal(obs[0], obs[1]);

    io::RunReport run = base_report("check orth", tol, paths, files);
    run.verdicts["orthogonal"] = rep.verdict;
    run.verdicts["ranges"] = rep.ranges;
    run.verdicts["ran_a_in_null_b"] = rep.a_in_nb;
    run.verdicts["ran_b_in_null_a"] = rep.b_in_na;
    run.verdicts["ab_zero"] = rep.ab_zero;
    run.verdicts["ba_zero"] = rep.ba_zero;
    run.residuals["ranges"] = rep.r_ranges;
    run.residuals["ran_a_in_null_b"] = rep.r_a_in_nb;
    run.residuals["ran_b_in_null_a"] = rep.r_b_in_na;
    run.residuals["ab"] = rep.r_ab;
    run.residuals["ba"] = rep.r_ba;
    run.wall_time_ms = timer.ms();

    std::ostringstream text;
    text << files[0].name << " orthogonal to " << files[1].name << ": "
         << (rep.verdict ? "yes" : "no") << "\n"
         << "  range angles        " << (rep.ranges ? "ok " : "NO ") << " residual "
         << rep.r_ranges << "\n"
         << "  ran(A) in null(B)   " << (rep.a_in_nb ? "ok " : "NO ") << " residual "
         << rep.r_a_in_nb << "\n"
         << "  ran(B) in null(A)   " << (rep.b_in_na ? "ok " : "NO ") << " residual "
         << rep.r_b_in_na << "\n"
         << "  AB = 0              " << (rep.ab_zero ? "ok " : "NO ") << " residual " << rep.r_ab
         << "\n"
         << "  BA = 0              " << (rep.ba_zero ? "ok " : "NO ") << " residual " << rep.r_ba
         << "\n";
    emit(run, opt, text.str());
    return rep.verdict ? kExitHolds : kExitFails;
}

int run_check_leq(const std::vector<std::string>& paths, const GlobalOptions& opt) {
    Timer timer;
    auto files = load_files(paths);
    Tolerances tol = resolve_tolerances(opt, files);
    auto obs = to_observables(files, tol);

    OrderReport rep = leq(obs[0], obs[1]);

    io::RunReport run = base_report("check leq", tol, paths, files);
    run.verdicts["leq"] = rep.verdict;
    run.verdicts["algebraic"] = rep.algebraic;
    run.verdicts["atomwise"] = rep.atomwise;
    run.residuals["algebraic"] = rep.algebraic_residual;
    run.wall_time_ms = timer.ms();

    std::ostringstream text;
    text << files[0].name << " below " << files[1].name << ": " << (rep.verdict ? "yes" : "no")
         << "\n"
         << "  algebraic (A^2 = BA)   " << (rep.algebraic ? "ok " : "NO ") << " residual "
         << rep.algebraic_residual << "\n"
         << "  atomwise containment   " << (rep.atomwise ? "ok" : "NO") << "\n";
    if (rep.witness) {
        text << "  witness: C with A + C = B, C has " << rep.witness->decomposition().atoms().size()
             << " spectral atoms, norm " << rep.witness->norm() << "\n";
    }
    emit(run, opt, text.str());
    return rep.verdict ? kExitHolds : kExitFails;
}

// ── meet / join ───────────────────────────────────────────────────────────

std::string atoms_summary(const Observable& o) {
    std::ostringstream out;
    const auto& atoms = o.decomposition().atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        out << (i ? ", " : "") << atoms[i].value << " (rank " << atoms[i].proj.rank() << ")";
    }
    return out.str();
}

int run_meet(const std::vector<std::string>& paths, const std::string& out_path,
             const GlobalOptions& opt) {
    Timer timer;
    auto files = load_files(paths);
    Tolerances tol = resolve_tolerances(opt, files);
    auto obs = to_observables(files, tol);

    Observable result = meet_family(obs);

    io::RunReport run = base_report("meet", tol, paths, files);
    run.verdicts["computed"] = true;
    run.residuals["norm"] = result.norm();
    json atoms = json::array();
    for (const auto& a : result.decomposition().atoms())
        atoms.push_back({{"value", a.value}, {"rank", a.proj.rank()}});
    run.parameters["atoms"] = atoms;
    if (!out_path.empty()) {
        io::write_observable_file(out_path, result.matrix(), "meet");
        run.parameters["out"] = out_path;
    }
    run.wall_time_ms = timer.ms();

    std::ostringstream text;
    text << "meet of " << paths.size() << " observables: norm " << result.norm() << "\n"
         << "  atoms: " << atoms_summary(result) << "\n";
    if (!out_path.empty()) text << "  written to " << out_path << "\n";
    emit(run, opt, text.str());
    return kExitHolds;
}

int run_join(const std::vector<std::string>& paths, const std::string& out_path,
             const GlobalOptions& opt) {
    Timer timer;
    auto files = load_files(paths);
    Tolerances tol = resolve_tolerances(opt, files);
    auto obs = to_observables(files, tol);

    JoinOutcome outcome = join_family(obs);

    io::RunReport run = base_report("join", tol, paths, files);
    run.verdicts["exists"] = outcome.ok();
    run.residuals["max_cross"] = outcome.precondition.max_cross_residual;

    std::ostringstream text;
    if (outcome.ok()) {
        json atoms = json::array();
        for (const auto& a : outcome.result->decomposition().atoms())
            atoms.push_back({{"value", a.value}, {"rank", a.proj.rank()}});
        run.parameters["atoms"] = atoms;
        if (!out_path.empty()) {
            io::write_observable_file(out_path, outcome.result->matrix(), "join");
            run.parameters["out"] = out_path;
        }
        text << "join exists: norm " << outcome.result->norm() << "\n"
             << "  atoms: " << atoms_summary(*outcome.result) << "\n";
        if (!out_path.empty()) text << "  written to " << out_path << "\n";
    } else {
        auto [va, vb] = *outcome.precondition.violating_values;
        run.parameters["violating_values"] = json::array({va, vb});
        text << "no upper bound exists\n"
             << "  eigenspaces at distinct values " << va << " and " << vb
             << " overlap (residual " << outcome.precondition.max_cross_residual << ")\n";
    }
    run.wall_time_ms = timer.ms();
    emit(run, opt, text.str());
    return outcome.ok() ? kExitHolds : kExitFails;
}

// ── sweep ─────────────────────────────────────────────────────────────────

void write_counterexample(const std::string& dir, const std::string& name, const json& body) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    out << body.dump(2) << "\n";
}

int run_sweep(const std::string& mode, std::uint64_t trials, int dim, std::uint64_t seed,
              const std::string& style_name, const std::string& out_dir,
              const GlobalOptions& opt) {
    Timer timer;
    Tolerances tol = resolve_tolerances(opt, {});
    SpectrumStyle style;
    if (style_name == "well-separated")
        style = SpectrumStyle::well_separated;
    else if (style_name == "clustered")
        style = SpectrumStyle::clustered;
    else
        throw Error("unknown style '" + style_name + "' (well-separated|clustered)");

    io::RunReport run = base_report("sweep " + mode, tol, {}, {});
    run.parameters["trials"] = trials;
    run.parameters["dim"] = dim;
    run.parameters["seed"] = seed;
    run.parameters["style"] = style_name;

    std::ostringstream text;
    bool passed = true;

    if (mode == "axioms") {
        AxiomReport rep = axiom_suite(trials, dim, seed, tol, style);
        passed = rep.all_passed();
        text << "axiom sweep: " << trials << " trials, dim " << dim << ", seed " << seed << "\n";
        int written = 0;
        for (const auto& [axiom, res] : rep.axioms) {
            run.verdicts[axiom] = res.failures.empty();
            text << "  " << axiom << "  " << (res.failures.empty() ? "ok " : "FAIL") << "  "
                 << res.checks << " checks, " << res.failures.size() << " failures\n";
            for (const auto& f : res.failures) {
                json ce = {{"axiom", f.axiom}, {"trial", f.trial},    {"detail", f.detail},
                           {"residual", f.residual}, {"seed", seed}, {"dim", dim}};
                // The offending instances are reproducible from (seed, trial).
                Rng rng(seed, f.trial);
                auto triple = random_orthogonal_tuple(dim, 3, rng, tol, style);
                ce["x"] = io::observable_to_json(triple[0].matrix(), "x");
                ce["y"] = io::observable_to_json(triple[1].matrix(), "y");
                ce["z"] = io::observable_to_json(triple[2].matrix(), "z");
                run.counterexamples.push_back(ce);
                if (written < 10) {
                    write_counterexample(out_dir,
                                         "counterexample_axioms_" + f.axiom + "_trial" +
                                             std::to_string(f.trial) + ".json",
                                         ce);
                    ++written;
                }
            }
        }
        if (written > 0) text << "  wrote " << written << " counterexample file(s) to " << out_dir << "\n";
    } else if (mode == "oracle") {
        oracle::DifferentialReport rep = oracle::differential_sweep(trials, dim, seed, tol);
        passed = rep.all_passed();
        run.verdicts["agreement"] = passed;
        run.parameters["checks"] = rep.checks;
        text << "oracle differential sweep: " << trials << " trials, dim " << dim << ", seed "
             << seed << "\n"
             << "  " << rep.checks << " checks, " << rep.findings.size() << " disagreements\n";
        int written = 0;
        for (const auto& f : rep.findings) {
            json ce = {{"trial", f.trial}, {"check", f.check}, {"detail", f.detail},
                       {"a_diag", f.a.values}, {"b_diag", f.b.values}, {"seed", seed},
                       {"dim", dim}};
            run.counterexamples.push_back(ce);
            if (written < 10) {
                write_counterexample(out_dir,
                                     "counterexample_oracle_" + f.check + "_trial" +
                                         std::to_string(f.trial) + ".json",
                                     ce);
                ++written;
            }
        }
        if (written > 0) text << "  wrote " << written << " counterexample file(s) to " << out_dir << "\n";
    } else {
        throw Error("unknown sweep mode '" + mode + "' (axioms|oracle)");
    }

    run.verdicts["passed"] = passed;
    run.wall_time_ms = timer.ms();
    text << (passed ? "sweep passed\n" : "sweep FAILED\n");
    emit(run, opt, text.str());
    return passed ? kExitHolds : kExitFails;
}

// ── demo ──────────────────────────────────────────────────────────────────

int run_demo(int n, double hbar, const GlobalOptions& opt) {
    Timer timer;
    Tolerances tol = resolve_tolerances(opt, {});
    HeisenbergReport rep = heisenberg_demo(n, hbar, tol);

    bool trivial = rep.meet_norm <= tol.proj_tol;

    io::RunReport run = base_report("demo", tol, {}, {});
    run.parameters["n"] = n;
    run.parameters["hbar"] = hbar;
    run.verdicts["meet_trivial"] = trivial;
    run.residuals["meet_norm"] = rep.meet_norm;
    run.residuals["commutator"] = rep.commutator_residual;
    run.parameters["max_pair_rank"] = rep.max_pair_rank;
    run.parameters["pairs_checked"] = rep.pairs.size();
    run.wall_time_ms = timer.ms();

    std::ostringstream text;
    text << "position/momentum on an " << n << "-level truncation (hbar " << hbar << ")\n"
         << "  meet norm              " << rep.meet_norm << (trivial ? "  (trivial)" : "") << "\n"
         << "  eigenspace pairs       " << rep.pairs.size() << ", max intersection rank "
         << rep.max_pair_rank << "\n"
         << "  commutator residual    " << rep.commutator_residual
         << "  = op-norm(QP - PQ - i*hbar*I)\n"
         << "  " << rep.note << "\n";
    emit(run, opt, text.str());
    return trivial ? kExitHolds : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional quantum observables under orthogonality, partial sum, "
                 "and the induced order: relation checks, meets, joins, randomized axiom "
                 "sweeps, and a position/momentum demo."};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--format", opt.format, "Output format: text or jsonl")
        ->check(CLI::IsMember({"text", "jsonl"}));
    app.add_option("--tol-cluster-rel", opt.tol_cluster_rel, "Eigenvalue clustering threshold");
    app.add_option("--tol-zero-abs", opt.tol_zero_abs, "Zero-eigenvalue snap threshold");
    app.add_option("--tol-proj", opt.tol_proj, "Projection comparison threshold");
    app.add_option("--tol-hermitian", opt.tol_hermitian, "Hermitian symmetry threshold");

    auto* check = app.add_subcommand("check", "Decide a relation between two observables");
    check->require_subcommand(1);
    std::vector<std::string> check_orth_paths, check_leq_paths;
    auto* check_orth = check->add_subcommand("orth", "Are A and B orthogonal?");
    check_orth->add_option("files", check_orth_paths, "Two observable JSON files")
        ->expected(2)
        ->required();
    auto* check_leq = check->add_subcommand("leq", "Is A below B in the induced order?");
    check_leq->add_option("files", check_leq_paths, "Two observable JSON files")
        ->expected(2)
        ->required();

    std::vector<std::string> meet_paths, join_paths;
    std::string meet_out, join_out;
    auto* meet_cmd = app.add_subcommand("meet", "Greatest lower bound of two or more observables");
    meet_cmd->add_option("files", meet_paths, "Observable JSON files")->expected(-2)->required();
    meet_cmd->add_option("--out", meet_out, "Write the result as an observable JSON file");
    auto* join_cmd = app.add_subcommand("join", "Least upper bound, when any upper bound exists");
    join_cmd->add_option("files", join_paths, "Observable JSON files")->expected(-2)->required();
    join_cmd->add_option("--out", join_out, "Write the result as an observable JSON file");

    auto* sweep_cmd = app.add_subcommand("sweep", "Randomized property sweep");
    std::string sweep_mode = "axioms";
    std::uint64_t sweep_trials = 1000, sweep_seed = 42;
    int sweep_dim = 6;
    std::string sweep_style = "well-separated", sweep_out = ".";
    sweep_cmd->add_option("--mode", sweep_mode, "axioms: algebra laws; oracle: differential")
        ->check(CLI::IsMember({"axioms", "oracle"}));
    sweep_cmd->add_option("--trials", sweep_trials, "Number of randomized trials");
    sweep_cmd->add_option("--dim", sweep_dim, "Matrix dimension")->check(CLI::Range(2, 200));
    sweep_cmd->add_option("--seed", sweep_seed, "Base seed (trial t replays from (seed, t))");
    sweep_cmd->add_option("--style", sweep_style, "Spectrum style: well-separated or clustered")
        ->check(CLI::IsMember({"well-separated", "clustered"}));
    sweep_cmd->add_option("--out", sweep_out, "Directory for counterexample files");

    auto* demo_cmd = app.add_subcommand("demo", "Position/momentum meet on a truncated oscillator");
    int demo_n = 32;
    double demo_hbar = 1.0;
    demo_cmd->add_option("--n", demo_n, "Truncation level")->check(CLI::Range(2, 512));
    demo_cmd->add_option("--hbar", demo_hbar, "Planck constant in the commutator");

    try {
        app.parse(argc, argv);

        if (check_orth->parsed()) return run_check_orth(check_orth_paths, opt);
        if (check_leq->parsed()) return run_check_leq(check_leq_paths, opt);
        if (meet_cmd->parsed()) return run_meet(meet_paths, meet_out, opt);
        if (join_cmd->parsed()) return run_join(join_paths, join_out, opt);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_mode, sweep_trials, sweep_dim, sweep_seed, sweep_style,
                             sweep_out, opt);
        if (demo_cmd->parsed()) return run_demo(demo_n, demo_hbar, opt);
        std::cerr << "no subcommand selected\n";
        return kExitBadInput;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    } catch (const EquivalenceViolation& e) {
        std::cerr << "internal consistency violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const InvalidResolution& e) {
        std::cerr << "internal consistency violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
