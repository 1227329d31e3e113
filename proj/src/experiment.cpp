// SPDX-License-Identifier: Apache-2.0
#include "permsim/experiment.hpp"

#include "permsim/version.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace permsim {

CellResult run_cell(const CellSpec& cell, const CostModel& model) {
    const auto start = std::chrono::steady_clock::now();
    const ShardConfig cfg = ShardConfig::with_global_count(cell.num_qubits, cell.num_global);
    const RandomCircuitSpec gen{cell.num_qubits, cell.num_gates, cell.two_qubit_probability,
                                cell.seed};
    const Circuit original = generate_random_circuit(gen);
    const CompiledCircuit compiled =
        compile(original, PassConfig{cfg, cell.count_mode, cell.dag_rules});

    CellResult r;
    r.frac_orig = comm_gate_fraction(original, cfg);
    r.frac_opt = comm_gate_fraction(compiled, cfg);
    const TimeEstimate est = estimate_reduction(original, compiled.circuit, cfg, model);
    r.t_orig = est.t_orig;
    r.t_opt = est.t_opt;
    r.reduction = est.reduction;
    r.permutes = compiled.permutes_inserted;
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return r;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double mu = mean(xs);
    double acc = 0.0;
    for (const double x : xs) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

namespace {

std::vector<double> ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = shared;
        i = j + 1;
    }
    return rank;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

double spearman_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("spearman needs two equal-length series");
    const std::vector<double> rx = ranks(xs);
    const std::vector<double> ry = ranks(ys);
    const double mx = mean(rx);
    const double my = mean(ry);
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

namespace {

struct SweepPoint {
    std::string label;
    CellSpec cell;  // seed filled per run
};

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec) {
    std::vector<SweepPoint> points;
    const auto gates_for = [&](int n) {
        return spec.gates_override > 0 ? spec.gates_override : 30 * n;
    };
    switch (spec.sweep) {
        case SweepKind::TwoQubitProbability: {
            std::vector<double> ps = spec.sweep_values;
            if (ps.empty())
                for (int i = 0; i <= 10; ++i) ps.push_back(static_cast<double>(i) / 10.0);
            for (const double p : ps) {
                CellSpec cell{spec.num_qubits, spec.num_global, p, gates_for(spec.num_qubits),
                              0, spec.count_mode, spec.dag_rules};
                points.push_back({format_value(p), cell});
            }
            break;
        }
        case SweepKind::GlobalFraction: {
            std::vector<double> fracs = spec.sweep_values;
            if (fracs.empty())
                for (int i = 1; i <= 9; ++i) fracs.push_back(static_cast<double>(i) / 10.0);
            for (const double frac : fracs) {
                const int num_global =
                    static_cast<int>(std::lround(frac * spec.num_qubits));
                if (num_global < 1 || num_global >= spec.num_qubits)
                    throw std::invalid_argument("global fraction leaves no local qubit");
                CellSpec cell{spec.num_qubits, num_global, spec.two_qubit_probability,
                              gates_for(spec.num_qubits), 0, spec.count_mode, spec.dag_rules};
                points.push_back({format_value(frac), cell});
            }
            break;
        }
        case SweepKind::NumQubits: {
            if (spec.n_min < 2 || spec.n_max < spec.n_min)
                throw std::invalid_argument("invalid qubit range");
            for (int n = spec.n_min; n <= spec.n_max; ++n) {
                const int num_global =
                    std::max(1, static_cast<int>(std::lround(spec.global_fraction * n)));
                if (num_global >= n)
                    throw std::invalid_argument("global fraction leaves no local qubit");
                CellSpec cell{n, num_global, spec.two_qubit_probability, gates_for(n),
                              0, spec.count_mode, spec.dag_rules};
                points.push_back({std::to_string(n), cell});
            }
            break;
        }
    }
    return points;
}

}  // namespace

std::vector<BenchRow> run_bench(const ExperimentSpec& spec, const CostModel& model) {
    if (spec.num_seeds < 1) throw std::invalid_argument("need at least one seed");
    std::vector<BenchRow> rows;
    for (const SweepPoint& point : sweep_points(spec)) {
        std::vector<double> frac_orig, frac_opt, t_orig, t_opt, reduction, permutes;
        std::int64_t runtime_total = 0;
        for (int s = 0; s < spec.num_seeds; ++s) {
            CellSpec cell = point.cell;
            cell.seed = spec.base_seed + static_cast<std::uint64_t>(s);
            const CellResult r = run_cell(cell, model);
            rows.push_back(BenchRow{point.label, std::to_string(cell.seed), r.frac_orig,
                                    r.frac_opt, r.t_orig, r.t_opt, r.reduction,
                                    static_cast<double>(r.permutes), r.runtime_ms});
            frac_orig.push_back(r.frac_orig);
            frac_opt.push_back(r.frac_opt);
            t_orig.push_back(r.t_orig);
            t_opt.push_back(r.t_opt);
            reduction.push_back(r.reduction);
            permutes.push_back(static_cast<double>(r.permutes));
            runtime_total += r.runtime_ms;
        }
        rows.push_back(BenchRow{point.label, "mean", mean(frac_orig), mean(frac_opt),
                                mean(t_orig), mean(t_opt), mean(reduction), mean(permutes),
                                runtime_total / spec.num_seeds});
        rows.push_back(BenchRow{point.label, "stddev", sample_stddev(frac_orig),
                                sample_stddev(frac_opt), sample_stddev(t_orig),
                                sample_stddev(t_opt), sample_stddev(reduction),
                                sample_stddev(permutes), 0});
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                     const std::string& command_line) {
    out << "# " << kToolName << ' ' << kVersion << ": " << command_line << '\n';
    out << "sweep_param,seed,frac_orig,frac_opt,t_orig,t_opt,reduction,permutes,runtime_ms\n";
    for (const BenchRow& r : rows) {
        out << r.sweep_param << ',' << r.seed_label << ',' << format_value(r.frac_orig) << ','
            << format_value(r.frac_opt) << ',' << format_value(r.t_orig) << ','
            << format_value(r.t_opt) << ',' << format_value(r.reduction) << ','
            << format_value(r.permutes) << ',' << r.runtime_ms << '\n';
    }
}

}  // namespace permsim
