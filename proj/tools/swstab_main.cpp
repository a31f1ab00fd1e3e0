//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
// Command-line front end: analyze a system file, simulate switched runs,
// execute the built-in corpus, and approximate centre manifolds.

#include "swstab/analysis.hpp"
#include "swstab/corpus.hpp"
#include "swstab/linear.hpp"
#include "swstab/sim.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

using namespace swstab;

struct GlobalFlags {
    double tol = 1e-6;
    int kmax = 5;
    int mesh = 2000;
    double eps = 0.0;
    double radius = 0.0;
    std::vector<double> levels;
    std::uint64_t seed = 0;
    std::string out_dir;
    bool json_stdout = false;
};

AnalysisParams to_params(const GlobalFlags& g) {
    AnalysisParams p;
    p.membership_tol = g.tol;
    p.kmax = g.kmax;
    p.mesh = g.mesh;
    p.eps = g.eps;
    p.radius = g.radius;
    p.levels = g.levels;
    p.seed = g.seed;
    return p;
}

void write_or_print(const GlobalFlags& g, const std::string& filename, const std::string& content,
                    bool also_stdout) {
    if (!g.out_dir.empty()) {
        std::filesystem::create_directories(g.out_dir);
        std::ofstream out(std::filesystem::path(g.out_dir) / filename);
        out << content;
    }
    if (also_stdout || g.out_dir.empty()) std::cout << content << "\n";
}

int cmd_analyze(const std::string& system_file, const GlobalFlags& g) {
    SwitchedSystem sys = SwitchedSystem::load(system_file);
    try {
        AnalysisReport rep = analyze(sys, to_params(g));
        write_or_print(g, "analysis.json", rep.to_json().dump(2), g.json_stdout);
        return 0;
    } catch (const CertificationFailure& e) {
        nlohmann::json j{{"error", "weak-Lyapunov certification failed"},
                         {"certification", e.report.to_json()}};
        std::cerr << j.dump(2) << "\n";
        return 1;
    }
}

int cmd_simulate(const std::string& system_file, const std::string& signal_spec,
                 std::vector<double> x0, double h, double T, double rho, double eta,
                 const GlobalFlags& g) {
    SwitchedSystem sys = SwitchedSystem::load(system_file);
    SwitchingSignal sig = [&] {
        if (std::filesystem::exists(signal_spec))
            return SwitchingSignal::load(signal_spec, sys.mode_count());
        return parse_signal_spec(signal_spec, sys.mode_count(), T);
    }();
    if (x0.empty()) x0.assign(sys.dim(), 0.0);
    if (static_cast<int>(x0.size()) != sys.dim())
        throw std::invalid_argument("--x0 needs " + std::to_string(sys.dim()) + " values");

    Trajectory traj = integrate(sys, sig, x0, h, T);
    MonotoneCheck mono = v_monotone_check(traj, sys);
    std::vector<SetOracle> oracles;
    for (int i = 0; i < sys.mode_count(); ++i) oracles.push_back(k_set(sys, i, g.tol));
    OmegaEstimate om = omega_estimate(traj, sys, oracles, rho, eta);

    std::ostringstream csv;
    traj.write_csv(csv);
    nlohmann::json summary{{"monotone", mono.to_json()},
                           {"omega", om.to_json()},
                           {"diverged", traj.diverged},
                           {"steps", traj.steps_taken},
                           {"error_estimate", traj.error_estimate},
                           {"signal_events", sig.event_count()}};
    if (!g.out_dir.empty()) {
        std::filesystem::create_directories(g.out_dir);
        std::ofstream c(std::filesystem::path(g.out_dir) / "trajectory.csv");
        c << csv.str();
        std::ofstream s(std::filesystem::path(g.out_dir) / "summary.json");
        s << summary.dump(2) << "\n";
        if (g.json_stdout) std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << csv.str();
        std::cerr << summary.dump(2) << "\n";
    }
    return 0;
}

int cmd_corpus(const std::string& filter, const GlobalFlags& g, bool use_default_kmax) {
    auto cases = builtin_corpus();
    std::vector<std::future<CaseOutcome>> futures;
    std::vector<std::string> names;
    for (const auto& c : cases) {
        if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
        names.push_back(c.name);
        std::optional<int> kmax = use_default_kmax ? std::nullopt : std::optional<int>(g.kmax);
        futures.push_back(std::async(std::launch::async,
                                     [&, kmax, cc = c] { return run_corpus_case(cc, kmax, g.seed); }));
    }
    if (futures.empty()) {
        std::cerr << "no corpus case matches '" << filter << "'\n";
        return 2;
    }
    std::vector<CaseOutcome> outcomes;
    outcomes.reserve(futures.size());
    for (auto& f : futures) outcomes.push_back(f.get());
    std::sort(outcomes.begin(), outcomes.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });

    bool all_pass = true;
    nlohmann::json full = nlohmann::json::object();
    for (const auto& o : outcomes) {
        all_pass = all_pass && o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << o.name << "\n";
        for (const auto& f : o.facts) {
            std::cout << "    " << f.status << "  " << f.fact;
            if (!f.detail.empty()) std::cout << "  -- " << f.detail;
            std::cout << "\n";
        }
        full[o.name] = o.report;
    }
    if (!g.out_dir.empty()) {
        std::filesystem::create_directories(g.out_dir);
        std::ofstream out(std::filesystem::path(g.out_dir) / "corpus_report.json");
        out << full.dump(2) << "\n";
    }
    if (g.json_stdout) std::cout << full.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int cmd_approx_cm(const std::string& system_file, int mode, int order, const GlobalFlags& g) {
    SwitchedSystem sys = SwitchedSystem::load(system_file);
    if (mode < 1 || mode > sys.mode_count()) throw std::invalid_argument("mode index out of range");
    CenterManifoldApprox cm = center_manifold_approx(sys.field(mode - 1), order);
    write_or_print(g, "center_manifold.json", cm.to_json().dump(2), g.json_stdout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability analysis of switched systems sharing a weak Lyapunov function"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--tol", g.tol, "membership tolerance on set defects");
    app.add_option("--kmax", g.kmax, "Lie-chain truncation order for the M sets");
    app.add_option("--mesh", g.mesh, "sampling resolution (directions per level)");
    app.add_option("--eps", g.eps, "component graph radius (auto when <= 0)");
    app.add_option("--radius", g.radius, "level-set neighborhood radius");
    app.add_option("--levels", g.levels, "level values of V to check")->delimiter(',');
    app.add_option("--seed", g.seed, "sampling seed");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_flag("--json", g.json_stdout, "also print JSON reports to stdout");

    std::string system_file, signal_spec = "regular:delta=1", filter;
    std::vector<double> x0;
    double h = 1e-3, T = 100.0, rho = 0.2, eta = 1e-3;
    int mode = 1, order = 3;

    auto* analyze_cmd = app.add_subcommand("analyze", "full geometric analysis of a system file");
    analyze_cmd->add_option("system", system_file, "system definition JSON")->required();

    auto* sim_cmd = app.add_subcommand("simulate", "integrate one switched run");
    sim_cmd->add_option("system", system_file, "system definition JSON")->required();
    sim_cmd->add_option("--signal", signal_spec, "signal file or generator spec");
    sim_cmd->add_option("--x0", x0, "initial state")->delimiter(',');
    sim_cmd->add_option("--h", h, "integration step");
    sim_cmd->add_option("--T", T, "horizon");
    sim_cmd->add_option("--rho", rho, "tail fraction for the limit-set estimate");
    sim_cmd->add_option("--eta", eta, "origin radius for the convergence flag");

    auto* corpus_cmd = app.add_subcommand("corpus", "run the built-in benchmark corpus");
    corpus_cmd->add_option("--filter", filter, "substring filter on case names");

    auto* cm_cmd = app.add_subcommand("approx-cm", "polynomial centre-manifold approximation");
    cm_cmd->add_option("system", system_file, "system definition JSON")->required();
    cm_cmd->add_option("--mode", mode, "1-based mode index");
    cm_cmd->add_option("--order", order, "approximation order");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(system_file, g);
        if (sim_cmd->parsed()) return cmd_simulate(system_file, signal_spec, x0, h, T, rho, eta, g);
        if (corpus_cmd->parsed())
            return cmd_corpus(filter, g, !app.count("--kmax"));
        if (cm_cmd->parsed()) return cmd_approx_cm(system_file, mode, order, g);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
