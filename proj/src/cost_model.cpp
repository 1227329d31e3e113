// SPDX-License-Identifier: Apache-2.0
#include "permsim/cost_model.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace permsim {

namespace {

double gate_cost(const Gate& g, const QubitPermutation& sigma, const ShardConfig& cfg,
                 const StepCostModel& step) {
    return needs_communication(g, sigma, cfg) ? step.comm_overhead * step.t_local
                                              : step.t_local;
}

double checked_lookup(double value, const std::string& what) {
    if (!(value > 0.0))
        throw std::runtime_error("cost table has no entry for " + what);
    return value;
}

double gate_cost(const Gate& g, const QubitPermutation& sigma, const ShardConfig&,
                 const TableCostModel& table) {
    const int tgt = sigma(g.target);
    if (tgt >= table.num_positions() ||
        (g.is_controlled() && sigma(g.control) >= table.num_positions()))
        throw std::runtime_error("cost table too small for circuit positions");
    if (!g.is_controlled())
        return checked_lookup(table.one_qubit_cost[tgt], "1q," + std::to_string(tgt));
    const int ctrl = sigma(g.control);
    return checked_lookup(table.two_qubit_cost(ctrl, tgt),
                          "2q," + std::to_string(ctrl) + "," + std::to_string(tgt));
}

struct PermuteBreakdown {
    bool local_step = false;
    bool global_step = false;
    std::vector<std::pair<int, int>> pairs;
};

PermuteBreakdown permute_breakdown(const QubitPermutation& sigma,
                                   const QubitPermutation& sigma_prime,
                                   const ShardConfig& cfg) {
    PermutationDecomposition dec = decompose_permutation(sigma, sigma_prime, cfg);
    PermuteBreakdown b;
    b.local_step = !(dec.sigma1 == sigma);
    b.global_step = !(dec.sigma2 == dec.sigma1);
    b.pairs = std::move(dec.pairs);
    return b;
}

}  // namespace

double instruction_cost(const Instruction& in, const QubitPermutation& sigma,
                        const ShardConfig& cfg, const CostModel& model) {
    if (in.is_gate()) {
        return std::visit([&](const auto& m) { return gate_cost(in.gate(), sigma, cfg, m); },
                          model);
    }
    const PermuteBreakdown b = permute_breakdown(sigma, in.permutation(), cfg);
    if (const auto* step = std::get_if<StepCostModel>(&model)) {
        return step->t_local * (b.local_step ? 1.0 : 0.0) +
               step->comm_overhead * step->t_local * (b.global_step ? 1.0 : 0.0) +
               step->comm_overhead * step->t_local * static_cast<double>(b.pairs.size());
    }
    const auto& table = std::get<TableCostModel>(model);
    double total = 0.0;
    if (b.local_step) total += checked_lookup(table.local_reorder_cost, "reorder,local");
    if (b.global_step) total += checked_lookup(table.global_reorder_cost, "reorder,global");
    for (const auto& [a, bpos] : b.pairs) {
        if (a >= table.num_positions() || bpos >= table.num_positions())
            throw std::runtime_error("cost table too small for swap positions");
        total += checked_lookup(table.swap_cost(a, bpos),
                                "swap," + std::to_string(a) + "," + std::to_string(bpos));
    }
    return total;
}

double estimate_circuit(const Circuit& c, const ShardConfig& cfg, const CostModel& model) {
    if (c.num_qubits != cfg.n)
        throw std::invalid_argument("circuit qubit count does not match shard config");
    QubitPermutation sigma = QubitPermutation::identity(cfg.n);
    double total = 0.0;
    for (const Instruction& in : c.instructions) {
        total += instruction_cost(in, sigma, cfg, model);
        if (in.is_permute()) sigma = in.permutation();
    }
    return total;
}

TimeEstimate estimate_reduction(const Circuit& original, const Circuit& optimized,
                                const ShardConfig& cfg, const CostModel& model) {
    TimeEstimate e;
    e.t_orig = estimate_circuit(original, cfg, model);
    e.t_opt = estimate_circuit(optimized, cfg, model);
    e.reduction = e.t_orig > 0.0 ? 1.0 - e.t_opt / e.t_orig : 0.0;
    return e;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int field_int(const std::string& s, const std::string& origin, int line) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        throw std::runtime_error(origin + ":" + std::to_string(line) +
                                 ": expected an integer, got '" + s + "'");
    return static_cast<int>(v);
}

double field_real(const std::string& s, const std::string& origin, int line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        throw std::runtime_error(origin + ":" + std::to_string(line) +
                                 ": expected a number, got '" + s + "'");
    return v;
}

}  // namespace

TableCostModel parse_cost_table(std::istream& in, int num_qubits, const std::string& origin) {
    if (num_qubits < 1) throw std::invalid_argument("cost table needs at least one position");
    const int n = num_qubits;
    TableCostModel table;
    table.one_qubit_cost = Eigen::VectorXd::Zero(n);
    table.two_qubit_cost = Eigen::MatrixXd::Zero(n, n);
    table.swap_cost = Eigen::MatrixXd::Zero(n, n);

    const auto check_position = [&](int p, int line) {
        if (p < 0 || p >= n)
            throw std::runtime_error(origin + ":" + std::to_string(line) + ": position " +
                                     std::to_string(p) + " out of range [0, " +
                                     std::to_string(n) + ")");
        return p;
    };
    const auto check_cost = [&](double v, int line) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::runtime_error(origin + ":" + std::to_string(line) +
                                     ": cost must be positive and finite");
        return v;
    };

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ')) raw.pop_back();
        if (raw.empty()) continue;
        const std::vector<std::string> f = split_fields(raw);
        const auto expect = [&](std::size_t count) {
            if (f.size() != count)
                throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": '" +
                                         f[0] + "' row expects " + std::to_string(count) +
                                         " fields");
        };
        if (f[0] == "1q") {
            expect(3);
            const int p = check_position(field_int(f[1], origin, line_no), line_no);
            if (table.one_qubit_cost[p] != 0.0)
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": duplicate 1q entry for position " +
                                         std::to_string(p));
            table.one_qubit_cost[p] = check_cost(field_real(f[2], origin, line_no), line_no);
        } else if (f[0] == "2q") {
            expect(4);
            const int c = check_position(field_int(f[1], origin, line_no), line_no);
            const int t = check_position(field_int(f[2], origin, line_no), line_no);
            if (c == t)
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": 2q control equals target");
            if (table.two_qubit_cost(c, t) != 0.0)
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": duplicate 2q entry " + std::to_string(c) + "," +
                                         std::to_string(t));
            table.two_qubit_cost(c, t) = check_cost(field_real(f[3], origin, line_no), line_no);
        } else if (f[0] == "swap") {
            expect(4);
            const int a = check_position(field_int(f[1], origin, line_no), line_no);
            const int b = check_position(field_int(f[2], origin, line_no), line_no);
            if (a == b)
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": swap positions must differ");
            if (table.swap_cost(a, b) != 0.0)
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": duplicate swap entry " + std::to_string(a) + "," +
                                         std::to_string(b));
            const double v = check_cost(field_real(f[3], origin, line_no), line_no);
            table.swap_cost(a, b) = v;
            table.swap_cost(b, a) = v;
        } else if (f[0] == "reorder") {
            expect(3);
            const double v = check_cost(field_real(f[2], origin, line_no), line_no);
            if (f[1] == "local") {
                if (table.local_reorder_cost != 0.0)
                    throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                             ": duplicate reorder,local entry");
                table.local_reorder_cost = v;
            } else if (f[1] == "global") {
                if (table.global_reorder_cost != 0.0)
                    throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                             ": duplicate reorder,global entry");
                table.global_reorder_cost = v;
            } else {
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": reorder kind must be local or global");
            }
        } else {
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": unknown row kind '" + f[0] + "'");
        }
    }

    // No silent defaults: every placement must have data.
    for (int p = 0; p < n; ++p)
        if (table.one_qubit_cost[p] == 0.0)
            throw std::runtime_error(origin + ": missing entry 1q," + std::to_string(p));
    for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t)
            if (c != t && table.two_qubit_cost(c, t) == 0.0)
                throw std::runtime_error(origin + ": missing entry 2q," + std::to_string(c) +
                                         "," + std::to_string(t));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (table.swap_cost(a, b) == 0.0)
                throw std::runtime_error(origin + ": missing entry swap," + std::to_string(a) +
                                         "," + std::to_string(b));
    if (table.local_reorder_cost == 0.0)
        throw std::runtime_error(origin + ": missing entry reorder,local");
    if (table.global_reorder_cost == 0.0)
        throw std::runtime_error(origin + ": missing entry reorder,global");
    return table;
}

TableCostModel load_cost_table(const std::string& path, int num_qubits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open cost table: " + path);
    return parse_cost_table(in, num_qubits, path);
}

TableCostModel table_from_step_model(const StepCostModel& step, const ShardConfig& cfg) {
    const int n = cfg.n;
    const int m = cfg.num_local;
    const double local = step.t_local;
    const double comm = step.comm_overhead * step.t_local;
    TableCostModel table;
    table.one_qubit_cost = Eigen::VectorXd::Constant(n, local);
    for (int p = m; p < n; ++p) table.one_qubit_cost[p] = comm;
    table.two_qubit_cost = Eigen::MatrixXd::Constant(n, n, local);
    for (int c = 0; c < n; ++c)
        for (int t = m; t < n; ++t) table.two_qubit_cost(c, t) = comm;
    // Step 3 is charged like a communicating gate regardless of placement.
    table.swap_cost = Eigen::MatrixXd::Constant(n, n, comm);
    table.two_qubit_cost.diagonal().setZero();  // diagonals are unused placements
    table.swap_cost.diagonal().setZero();
    table.local_reorder_cost = local;
    table.global_reorder_cost = comm;
    return table;
}

void write_cost_table_csv(std::ostream& out, const TableCostModel& table) {
    char buf[40];
    const auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    const int n = table.num_positions();
    for (int p = 0; p < n; ++p)
        out << "1q," << p << ',' << fmt(table.one_qubit_cost[p]) << '\n';
    for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t)
            if (c != t) out << "2q," << c << ',' << t << ',' << fmt(table.two_qubit_cost(c, t))
                            << '\n';
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            out << "swap," << a << ',' << b << ',' << fmt(table.swap_cost(a, b)) << '\n';
    out << "reorder,local," << fmt(table.local_reorder_cost) << '\n';
    out << "reorder,global," << fmt(table.global_reorder_cost) << '\n';
}

}  // namespace permsim
