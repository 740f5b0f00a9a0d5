// Command line front end: parameter derivation, end-to-end simulation,
// exhaustive verification, capacity bounds and the randomized parameter sweep.
#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "session.hpp"
#include "sweep.hpp"

using namespace strelay;

namespace {

struct CommonParams {
    int n1 = 0, n2 = 0, t = 0;
    std::uint64_t q = 1u << 16;
    int c = 1;
};

void add_param_options(CLI::App* cmd, CommonParams& p, bool with_code_options = true) {
    cmd->add_option("--n1", p.n1, "max source->relay erasures per window")->required();
    cmd->add_option("--n2", p.n2, "max relay->destination erasures per window")->required();
    cmd->add_option("--t", p.t, "decoding deadline T")->required();
    if (with_code_options) {
        cmd->add_option("--q", p.q, "field order (prime or power of two)");
        cmd->add_option("--c", p.c, "multiplexed codewords per packet");
    }
}

std::vector<SymbolVec> read_messages_file(const std::string& path, std::int64_t k) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open messages file: " + path);
    std::vector<SymbolVec> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SymbolVec m;
        std::istringstream ss(line);
        std::uint64_t v;
        while (ss >> v) m.push_back(static_cast<Symbol>(v));
        if (m.size() != static_cast<std::size_t>(k))
            throw std::runtime_error("messages file line has " + std::to_string(m.size()) +
                                     " symbols, expected " + std::to_string(k));
        out.push_back(std::move(m));
    }
    return out;
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        if (!data.empty() && data.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << data;
}

// STRELAY_VERBOSE is the only environment coupling: nonzero enables progress
// lines on long runs.
bool verbose() {
    const char* v = std::getenv("STRELAY_VERBOSE");
    return v != nullptr && *v != '\0' && *v != '0';
}

int run_verify_exhaustive(const CommonParams& cp, int horizon, const std::string& mode_name,
                          const std::string& counterexample_path, int threads) {
    const BudgetMode mode =
        mode_name == "lemma2" ? BudgetMode::Lemma2Extended : BudgetMode::SlidingWindow;
    const CodeSuite suite(
        derive_params(cp.n1, cp.n2, cp.t, static_cast<std::uint32_t>(cp.q), cp.c));

    std::vector<AdmissiblePair> pairs;
    enumerate_admissible_pairs(cp.n1, cp.n2, cp.t, horizon, mode, 50'000'000ull,
                               [&](const AdmissiblePair& p) { pairs.push_back(p); });
    if (verbose()) std::printf("enumerated %zu pairs\n", pairs.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mu;
    AdmissiblePair bad;
    std::string what;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            std::size_t i;
            while (!failed.load() && (i = next.fetch_add(1)) < pairs.size()) {
                if (verbose() && i % 10000 == 0 && i > 0)
                    std::printf("... %zu / %zu\n", i, pairs.size());
                const SimulationReport rep = run_session(suite, pairs[i], horizon, i);
                if (!rep.success) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!failed.exchange(true)) {
                        bad = pairs[i];
                        what = rep.failure_what;
                    }
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    if (failed.load()) {
        std::printf("FAIL: %s\n", what.c_str());
        if (!counterexample_path.empty()) {
            write_pattern_file(counterexample_path, bad);
            std::printf("counterexample written to %s\n", counterexample_path.c_str());
        } else {
            std::printf("source: %s\nrelay:  %s\n", bad.source_link.str().c_str(),
                        bad.relay_link.str().c_str());
        }
        return 1;
    }
    std::printf("PASS: %zu admissible pairs decoded exactly (horizon %d, mode %s)\n",
                pairs.size(), horizon, mode_name.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive relay streaming erasure codes: simulation and bounds"};
    app.require_subcommand(1);

    CommonParams cp;

    auto* params_cmd = app.add_subcommand("params", "derive code dimensions and rates");
    add_param_options(params_cmd, cp);

    auto* sim = app.add_subcommand("simulate", "run one end-to-end session");
    CommonParams sp;
    add_param_options(sim, sp);
    std::string pattern_file, adversary = "random", messages_file, sim_mode = "auto";
    std::uint64_t sim_seed = 0;
    int sim_horizon = 100;
    sim->add_option("--pattern-file", pattern_file, "erasure pair file (two 0/1 lines)");
    sim->add_option("--adversary", adversary, "burst | spaced | random | heuristic")
        ->check(CLI::IsMember({"burst", "spaced", "random", "heuristic"}));
    sim->add_option("--seed", sim_seed, "seed for patterns and messages");
    sim->add_option("--horizon", sim_horizon, "message slots to simulate");
    sim->add_option("--messages-file", messages_file,
                    "one message packet per line, k symbols each");
    sim->add_option("--mode", sim_mode, "auto | window | lemma2")
        ->check(CLI::IsMember({"auto", "window", "lemma2"}));

    auto* verify = app.add_subcommand("verify-exhaustive",
                                      "decode every admissible pair of a small horizon");
    CommonParams vp;
    add_param_options(verify, vp);
    int verify_horizon = 8;
    std::string verify_mode = "window", counterexample = "counterexample.txt";
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    verify->add_option("--horizon", verify_horizon, "horizon in slots");
    verify->add_option("--mode", verify_mode, "window | lemma2")
        ->check(CLI::IsMember({"window", "lemma2"}));
    verify->add_option("--counterexample-out", counterexample,
                       "pattern file written on failure");
    verify->add_option("--threads", threads, "worker threads");

    auto* bounds_cmd = app.add_subcommand("bounds", "upper bounds on the capacity");
    CommonParams bp;
    add_param_options(bounds_cmd, bp, false);
    int tau = 10000, period_cap = 0;
    std::string witness_out;
    bounds_cmd->add_option("--tau", tau, "horizon of the adversary heuristic");
    bounds_cmd->add_option("--period-cap", period_cap,
                           "max period for the brute-force search (0 = skip)");
    bounds_cmd->add_option("--witness-out", witness_out,
                           "write the heuristic witness as an erasure-pair file");

    auto* sweep_cmd = app.add_subcommand("sweep", "randomized parameter comparison");
    int samples = 200;
    std::uint64_t sweep_seed = 0;
    int sweep_c = 1;
    std::string out_file;
    bool as_json = false;
    sweep_cmd->add_option("--samples", samples, "number of parameter draws");
    sweep_cmd->add_option("--seed", sweep_seed, "rng seed");
    sweep_cmd->add_option("--c", sweep_c, "multiplex count for the with-header rate");
    sweep_cmd->add_option("--out", out_file, "output file ('-' = stdout)");
    sweep_cmd->add_flag("--json", as_json, "emit JSON instead of CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (params_cmd->parsed()) {
            const CodeParams p =
                derive_params(cp.n1, cp.n2, cp.t, static_cast<std::uint32_t>(cp.q), cp.c);
            std::cout << p.to_json() << "\n";
            return 0;
        }
        if (sim->parsed()) {
            const CodeParams p =
                derive_params(sp.n1, sp.n2, sp.t, static_cast<std::uint32_t>(sp.q), sp.c);
            const CodeSuite suite(p);
            AdmissiblePair pair;
            if (!pattern_file.empty()) {
                pair = read_pattern_file(pattern_file);
                sim_horizon = std::max(sim_horizon, pair.source_link.horizon);
            } else if (adversary == "heuristic") {
                pair = adversary_heuristic(sp.n1, sp.n2, sp.t,
                                           std::max(sp.t + 1, sim_horizon - sp.t - 1))
                           .witness;
                sim_horizon = pair.source_link.horizon;
            } else {
                const PatternKind kind = adversary == "burst"    ? PatternKind::Burst
                                         : adversary == "spaced" ? PatternKind::Spaced
                                                                 : PatternKind::RandomGreedy;
                pair = sample_pair(sp.n1, sp.n2, sp.t, sim_horizon, sim_seed, kind);
            }
            if (sim_mode == "window")
                pair.budget_mode = BudgetMode::SlidingWindow;
            else if (sim_mode == "lemma2")
                pair.budget_mode = BudgetMode::Lemma2Extended;
            std::vector<SymbolVec> msgs;
            const std::vector<SymbolVec>* msgs_ptr = nullptr;
            if (!messages_file.empty()) {
                msgs = read_messages_file(messages_file, p.k);
                sim_horizon = std::min<int>(sim_horizon, static_cast<int>(msgs.size()));
                msgs_ptr = &msgs;
            }
            const SimulationReport rep =
                run_session(suite, pair, sim_horizon, sim_seed, msgs_ptr);
            std::cout << rep.to_json() << "\n";
            return rep.success ? 0 : 1;
        }
        if (verify->parsed()) {
            if (threads < 1) threads = 1;
            return run_verify_exhaustive(vp, verify_horizon, verify_mode, counterexample,
                                         threads);
        }
        if (bounds_cmd->parsed()) {
            const BoundReport rep = upper_bound(bp.n1, bp.n2, bp.t, tau, period_cap);
            if (!witness_out.empty()) write_pattern_file(witness_out, rep.heuristic.witness);
            std::cout << rep.to_json() << "\n";
            return 0;
        }
        if (sweep_cmd->parsed()) {
            const auto rows = run_sweep(samples, sweep_seed, sweep_c);
            write_output(out_file, as_json ? sweep_json(rows) : sweep_csv(rows));
            return 0;
        }
    } catch (const ChannelContractViolation& e) {
        std::cerr << "channel contract violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
