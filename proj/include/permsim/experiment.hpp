// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/compiler.hpp"
#include "permsim/cost_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace permsim {

/// One (sweep point, seed) measurement: generate, compile, count, estimate.
struct CellSpec {
    int num_qubits = 35;
    int num_global = 7;
    double two_qubit_probability = 0.3;
    int num_gates = 1050;
    std::uint64_t seed = 1;
    CountMode count_mode = CountMode::Cascade;
    DagRules dag_rules = DagRules::Full;
};

struct CellResult {
    double frac_orig = 0.0;
    double frac_opt = 0.0;
    double t_orig = 0.0;
    double t_opt = 0.0;
    double reduction = 0.0;
    std::uint64_t permutes = 0;
    std::int64_t runtime_ms = 0;
};

CellResult run_cell(const CellSpec& cell, const CostModel& model);

enum class SweepKind { TwoQubitProbability, GlobalFraction, NumQubits };

/// Experiment grid. Defaults: 30*n gates unless overridden, 20 seeds
/// (base_seed + index), p-sweep over 0..1 in steps of 0.1,
/// global-fraction sweep over 10%..90%.
struct ExperimentSpec {
    SweepKind sweep = SweepKind::TwoQubitProbability;
    int num_qubits = 35;
    int num_global = 7;                   // p sweep
    double two_qubit_probability = 0.3;   // globalfrac and n sweeps
    double global_fraction = 0.2;         // n sweep
    int n_min = 20, n_max = 50;           // n sweep
    std::vector<double> sweep_values;     // p values or global fractions; empty = defaults
    int gates_override = 0;               // 0 -> 30 * n
    int num_seeds = 20;
    std::uint64_t base_seed = 1;
    CountMode count_mode = CountMode::Cascade;
    DagRules dag_rules = DagRules::Full;
};

struct BenchRow {
    std::string sweep_param;  // formatted sweep value
    std::string seed_label;   // seed number, "mean", or "stddev"
    double frac_orig = 0.0;
    double frac_opt = 0.0;
    double t_orig = 0.0;
    double t_opt = 0.0;
    double reduction = 0.0;
    double permutes = 0.0;
    std::int64_t runtime_ms = 0;
};

/// All data rows in deterministic (sweep value, seed) order, with a mean
/// and a stddev row appended per sweep point.
std::vector<BenchRow> run_bench(const ExperimentSpec& spec, const CostModel& model);

/// Columns: sweep_param,seed,frac_orig,frac_opt,t_orig,t_opt,reduction,
/// permutes,runtime_ms. `command_line` lands in the leading comment
/// together with the tool version.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                     const std::string& command_line);

double mean(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs);

/// Spearman rank correlation; ties share averaged ranks.
double spearman_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace permsim
