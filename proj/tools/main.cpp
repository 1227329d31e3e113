// SPDX-License-Identifier: Apache-2.0
#include "permsim/circuit_io.hpp"
#include "permsim/compiler.hpp"
#include "permsim/cost_model.hpp"
#include "permsim/dense_state.hpp"
#include "permsim/experiment.hpp"
#include "permsim/sharded_state.hpp"
#include "permsim/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace permsim;

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing: " + path);
}

ShardConfig shard_config_from_flags(int n, std::uint64_t k, int m) {
    if (k > 0 && m > 0)
        throw std::runtime_error("pass either -k or -m, not both");
    if (m > 0) return ShardConfig::make(n, std::uint64_t{1} << (n - m));
    return ShardConfig::make(n, k > 0 ? k : 1);
}

CostModel parse_model_flag(const std::string& flag, int num_qubits) {
    if (flag.rfind("table:", 0) == 0) return load_cost_table(flag.substr(6), num_qubits);
    if (flag == "step") return StepCostModel{};
    if (flag.rfind("step:R=", 0) == 0) {
        double r = 0.0;
        try {
            std::size_t used = 0;
            r = std::stod(flag.substr(7), &used);
            if (used != flag.size() - 7) r = 0.0;
        } catch (const std::exception&) {
            r = 0.0;
        }
        if (!(r >= 1.0))
            throw std::runtime_error("step model overhead must be a number >= 1");
        return StepCostModel{1.0, r};
    }
    throw std::runtime_error("unknown cost model '" + flag +
                             "' (use step, step:R=<x>, or table:<csv>)");
}

CountMode parse_count_mode(const std::string& s) {
    if (s == "ready") return CountMode::Ready;
    if (s == "cascade") return CountMode::Cascade;
    throw std::runtime_error("count mode must be ready or cascade");
}

DagRules parse_dag_rules(const std::string& s) {
    if (s == "disjoint") return DagRules::Disjoint;
    if (s == "full") return DagRules::Full;
    throw std::runtime_error("dag rules must be disjoint or full");
}

std::string csv_comment(const std::string& command_line) {
    std::string out = "# ";
    out += kToolName;
    out += ' ';
    out += kVersion;
    out += ": ";
    out += command_line;
    out += '\n';
    return out;
}

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) out += ' ';
        out += argv[i];
    }
    return out;
}

void print_comm_stats(std::ostream& out, const CommStats& s) {
    out << "gates_local=" << s.gates_local << '\n'
        << "gates_comm=" << s.gates_comm << '\n'
        << "permute_local_reorders=" << s.permute_local_reorders << '\n'
        << "permute_global_reorders=" << s.permute_global_reorders << '\n'
        << "permute_pair_exchanges=" << s.permute_pair_exchanges << '\n'
        << "bytes_crossed=" << format_real(s.bytes_crossed) << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Sharded state-vector circuit simulator with layout-aware compilation"};
    app.set_version_flag("--version", std::string(kToolName) + " " + std::string(kVersion));
    app.require_subcommand(1);
    const std::string command_line = join_args(argc, argv);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "Generate a random circuit");
    int gen_n = 0, gen_gates = 0;
    double gen_p = 0.0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("-n,--qubits", gen_n, "Qubit count")->required();
    gen->add_option("-g,--gates", gen_gates, "Gate count")->required();
    gen->add_option("-p,--prob", gen_p, "Probability a gate is a CNOT");
    gen->add_option("-s,--seed", gen_seed, "Generator seed");
    gen->add_option("-o,--out", gen_out, "Output file (default stdout)");
    gen->callback([&] {
        const Circuit c =
            generate_random_circuit(RandomCircuitSpec{gen_n, gen_gates, gen_p, gen_seed});
        write_text_output(gen_out, serialize_circuit(c) + "\n");
        (gen_out.empty() ? std::cerr : std::cout) << "seed " << gen_seed << '\n';
    });

    // ---- compile ----
    auto* cmp = app.add_subcommand("compile", "Insert layout changes to localize gates");
    std::string cmp_in, cmp_out, cmp_mode = "cascade", cmp_rules = "full", cmp_dot;
    std::uint64_t cmp_k = 0;
    int cmp_m = 0;
    bool cmp_report = false;
    cmp->add_option("input", cmp_in, "Circuit file")->required();
    cmp->add_option("-o,--out", cmp_out, "Compiled circuit file (default stdout)");
    cmp->add_option("-k,--shards", cmp_k, "Shard count (power of two)");
    cmp->add_option("-m,--local-qubits", cmp_m, "Local qubit count");
    cmp->add_option("--count-mode", cmp_mode, "Candidate scoring: ready|cascade");
    cmp->add_option("--dag-rules", cmp_rules, "Commutation rules: disjoint|full");
    cmp->add_flag("--report", cmp_report, "Print pass statistics to stderr");
    cmp->add_option("--dot", cmp_dot, "Write the dependency DAG as DOT to this file");
    cmp->callback([&] {
        if (cmp_k == 0 && cmp_m == 0)
            throw std::runtime_error("compile needs a sharding: pass -k or -m");
        const Circuit c = read_circuit_file(cmp_in);
        const ShardConfig cfg = shard_config_from_flags(c.num_qubits, cmp_k, cmp_m);
        const PassConfig pc{cfg, parse_count_mode(cmp_mode), parse_dag_rules(cmp_rules)};
        if (!cmp_dot.empty()) {
            std::ofstream dot(cmp_dot, std::ios::binary);
            if (!dot) throw std::runtime_error("cannot open DOT file: " + cmp_dot);
            dot << CircuitDag(c, pc.dag_rules).to_dot();
        }
        const CompiledCircuit cc = compile(c, pc);
        write_text_output(cmp_out, serialize_circuit(cc.circuit) + "\n");
        if (cmp_report) {
            const auto comm_gates = [&cfg](const Circuit& circuit) {
                QubitPermutation sigma = QubitPermutation::identity(cfg.n);
                std::uint64_t count = 0;
                for (const Instruction& in : circuit.instructions) {
                    if (in.is_permute())
                        sigma = in.permutation();
                    else if (needs_communication(in.gate(), sigma, cfg))
                        ++count;
                }
                return count;
            };
            std::cerr << "gates=" << c.gate_count() << '\n'
                      << "permutes_inserted=" << cc.permutes_inserted << '\n'
                      << "comm_gates_before=" << comm_gates(c) << '\n'
                      << "comm_gates_after=" << comm_gates(cc.circuit) << '\n'
                      << "comm_fraction_before=" << format_real(comm_gate_fraction(c, cfg))
                      << '\n'
                      << "comm_fraction_after=" << format_real(comm_gate_fraction(cc, cfg))
                      << '\n';
        }
    });

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "Run a circuit on the sharded state");
    std::string sim_in, sim_check;
    std::uint64_t sim_k = 1;
    bool sim_dump = false, sim_count_only = false;
    int sim_max_qubits = kDefaultMaxFullSimQubits;
    double sim_tolerance = 1e-12;
    sim->add_option("input", sim_in, "Circuit file")->required();
    sim->add_option("-k,--shards", sim_k, "Shard count (power of two)");
    sim->add_flag("--dump-state", sim_dump, "Write amplitudes as CSV in basis order");
    sim->add_option("--check-against", sim_check,
                    "Reference circuit; compare final states via the dense oracle");
    sim->add_flag("--count-only", sim_count_only, "Track communication counters only");
    sim->add_option("--max-qubits", sim_max_qubits, "Full-simulation qubit limit");
    sim->add_option("--tolerance", sim_tolerance, "Max amplitude deviation for --check-against");
    sim->callback([&] {
        const Circuit c = read_circuit_file(sim_in);
        const ShardConfig cfg = ShardConfig::make(c.num_qubits, sim_k);
        if (sim_count_only && (sim_dump || !sim_check.empty()))
            throw std::runtime_error("--count-only stores no amplitudes to dump or check");
        ShardedState state =
            sim_count_only ? init_counting_state(cfg) : init_state(cfg, sim_max_qubits);
        run_circuit(state, c);
        if (sim_dump) {
            std::ostringstream out;
            out << csv_comment(command_line) << "i,re,im\n";
            const auto amps = state.dump_identity_order();
            for (std::size_t i = 0; i < amps.size(); ++i)
                out << i << ',' << format_real(amps[i].real()) << ','
                    << format_real(amps[i].imag()) << '\n';
            std::cout << out.str();
        }
        if (!sim_check.empty()) {
            const Circuit ref = read_circuit_file(sim_check);
            const DenseState oracle = dense_reference_run(ref);
            if (oracle.num_qubits() != c.num_qubits)
                throw std::runtime_error("reference circuit has a different qubit count");
            double max_dev = 0.0;
            const BasisIndex size = BasisIndex{1} << c.num_qubits;
            for (BasisIndex i = 0; i < size; ++i)
                max_dev = std::max(max_dev,
                                   std::abs(state.read_amplitude(i) - oracle.amplitude(i)));
            std::cout << "max_deviation=" << format_real(max_dev) << '\n';
            if (max_dev > sim_tolerance)
                throw std::runtime_error("deviation " + format_real(max_dev) +
                                         " above tolerance " + format_real(sim_tolerance));
        }
        print_comm_stats(std::cout, state.stats());
    });

    // ---- estimate ----
    auto* est = app.add_subcommand("estimate", "Estimate simulated cost of circuits");
    std::string est_in, est_opt, est_model = "step:R=8";
    std::uint64_t est_k = 0;
    int est_m = 0;
    est->add_option("input", est_in, "Circuit file")->required();
    est->add_option("optimized", est_opt, "Compiled circuit file (enables reduction)");
    est->add_option("-k,--shards", est_k, "Shard count (power of two)");
    est->add_option("-m,--local-qubits", est_m, "Local qubit count");
    est->add_option("--model", est_model, "step | step:R=<x> | table:<csv>");
    est->callback([&] {
        const Circuit original = read_circuit_file(est_in);
        const ShardConfig cfg = shard_config_from_flags(original.num_qubits, est_k, est_m);
        const CostModel model = parse_model_flag(est_model, original.num_qubits);
        std::ostringstream out;
        out << csv_comment(command_line);
        if (est_opt.empty()) {
            out << "cost\n" << format_real(estimate_circuit(original, cfg, model)) << '\n';
        } else {
            const Circuit optimized = read_circuit_file(est_opt);
            const TimeEstimate e = estimate_reduction(original, optimized, cfg, model);
            out << "t_orig,t_opt,reduction\n"
                << format_real(e.t_orig) << ',' << format_real(e.t_opt) << ','
                << format_real(e.reduction) << '\n';
        }
        std::cout << out.str();
    });

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "Sweep experiments over random circuits");
    std::string bench_sweep, bench_out, bench_model = "step:R=8";
    std::string bench_mode = "cascade", bench_rules = "full";
    ExperimentSpec spec;
    int bench_gates = 0;
    bench->add_option("--sweep", bench_sweep, "p | globalfrac | n")->required();
    bench->add_option("-n,--qubits", spec.num_qubits, "Qubit count (p/globalfrac sweeps)");
    bench->add_option("--global-qubits", spec.num_global, "Global qubit count (p sweep)");
    bench->add_option("-p,--prob", spec.two_qubit_probability,
                      "CNOT probability (globalfrac/n sweeps)");
    bench->add_option("--global-fraction", spec.global_fraction,
                      "Global qubit fraction (n sweep)");
    bench->add_option("--n-min", spec.n_min, "Smallest n (n sweep)");
    bench->add_option("--n-max", spec.n_max, "Largest n (n sweep)");
    bench->add_option("--values", spec.sweep_values,
                      "Explicit sweep values (p or global fractions)");
    bench->add_option("-g,--gates", bench_gates, "Gate count override (default 30*n)");
    bench->add_option("--seeds", spec.num_seeds, "Circuits per sweep point");
    bench->add_option("--base-seed", spec.base_seed, "First seed; cell i uses base+i");
    bench->add_option("--count-mode", bench_mode, "Candidate scoring: ready|cascade");
    bench->add_option("--dag-rules", bench_rules, "Commutation rules: disjoint|full");
    bench->add_option("--model", bench_model, "step | step:R=<x> | table:<csv>");
    bench->add_option("-o,--out", bench_out, "Output CSV (default stdout)");
    bench->callback([&] {
        if (bench_sweep == "p")
            spec.sweep = SweepKind::TwoQubitProbability;
        else if (bench_sweep == "globalfrac")
            spec.sweep = SweepKind::GlobalFraction;
        else if (bench_sweep == "n")
            spec.sweep = SweepKind::NumQubits;
        else
            throw std::runtime_error("sweep must be p, globalfrac, or n");
        spec.gates_override = bench_gates;
        spec.count_mode = parse_count_mode(bench_mode);
        spec.dag_rules = parse_dag_rules(bench_rules);
        if (spec.sweep == SweepKind::NumQubits && bench_model.rfind("table:", 0) == 0)
            throw std::runtime_error(
                "table models are sized to one qubit count; n sweeps need the step model");
        const CostModel model = parse_model_flag(bench_model, spec.num_qubits);
        const std::vector<BenchRow> rows = run_bench(spec, model);
        std::ostringstream out;
        write_bench_csv(out, rows, command_line);
        write_text_output(bench_out, out.str());
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
