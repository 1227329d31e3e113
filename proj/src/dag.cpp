// SPDX-License-Identifier: Apache-2.0
#include "permsim/dag.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace permsim {

bool gates_commute(const Gate& a, const Gate& b, DagRules rules) {
    const auto touches = [](const Gate& g, int q) {
        return g.target == q || (g.is_controlled() && g.control == q);
    };
    int shared = 0;
    if (touches(b, a.target)) ++shared;
    if (a.is_controlled() && touches(b, a.control)) ++shared;
    if (shared == 0) return true;
    if (rules == DagRules::Disjoint) return false;
    if (a.kind != GateKind::Cnot || b.kind != GateKind::Cnot) return false;
    if (a.control == b.control && a.target == b.target) return false;  // identical operands
    if (a.control == b.control) return true;  // shared qubit is the control of both
    if (a.target == b.target) return true;    // shared qubit is the target of both
    return false;
}

CircuitDag::CircuitDag(const Circuit& c, DagRules rules) {
    c.validate();
    if (!c.gates_only())
        throw std::invalid_argument("dependency DAG requires a gate-only circuit");

    const std::size_t num = c.gate_count();
    gates_.reserve(num);
    out_edges_.resize(num);
    in_degree_.assign(num, 0);
    alive_.assign(num, 1);
    visit_epoch_.assign(num, 0);
    num_alive_ = num;

    enum class Role : char { Ctrl, Tgt, Other };
    struct QubitHistory {
        Role run_role = Role::Other;
        std::vector<int> run;       // current maximal block of commuting same-role CNOTs
        std::vector<int> blockers;  // previous run; conflicts with everything in `run`
    };
    std::vector<QubitHistory> history(static_cast<std::size_t>(c.num_qubits));
    std::vector<int> last_on_qubit(static_cast<std::size_t>(c.num_qubits), -1);
    std::unordered_map<std::uint64_t, int> last_identical_cnot;

    std::vector<int> candidates;
    int v = 0;
    for (const Instruction& in : c.instructions) {
        const Gate& g = in.gate();
        gates_.push_back(g);
        candidates.clear();

        if (rules == DagRules::Disjoint) {
            for (int idx = 0; idx < g.num_qubits(); ++idx) {
                const int q = g.qubits()[static_cast<std::size_t>(idx)];
                if (last_on_qubit[static_cast<std::size_t>(q)] >= 0)
                    candidates.push_back(last_on_qubit[static_cast<std::size_t>(q)]);
                last_on_qubit[static_cast<std::size_t>(q)] = v;
            }
        } else {
            for (int idx = 0; idx < g.num_qubits(); ++idx) {
                const int q = g.qubits()[static_cast<std::size_t>(idx)];
                Role role = Role::Other;
                if (g.kind == GateKind::Cnot) role = (q == g.control) ? Role::Ctrl : Role::Tgt;
                QubitHistory& h = history[static_cast<std::size_t>(q)];
                if (role != Role::Other && !h.run.empty() && h.run_role == role) {
                    // v commutes with the whole current run; only the run
                    // before it blocks.
                    candidates.insert(candidates.end(), h.blockers.begin(), h.blockers.end());
                    h.run.push_back(v);
                } else {
                    candidates.insert(candidates.end(), h.run.begin(), h.run.end());
                    h.blockers = std::move(h.run);
                    h.run.assign(1, v);
                    h.run_role = role;
                }
            }
            if (g.kind == GateKind::Cnot) {
                // Same-operand CNOTs escape the per-qubit runs (rule set
                // orders them), so track the latest one explicitly.
                const std::uint64_t key = (static_cast<std::uint64_t>(g.control) << 32) |
                                          static_cast<std::uint32_t>(g.target);
                const auto it = last_identical_cnot.find(key);
                if (it != last_identical_cnot.end()) candidates.push_back(it->second);
                last_identical_cnot[key] = v;
            }
        }

        add_vertex_edges(v, candidates);
        ++v;
    }

    for (int id = 0; id < static_cast<int>(num); ++id)
        if (in_degree_[static_cast<std::size_t>(id)] == 0) ready_.insert(id);
}

void CircuitDag::add_vertex_edges(int v, std::vector<int>& candidates) {
    std::sort(candidates.begin(), candidates.end(), std::greater<>());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<int> kept;
    for (const int u : candidates) {
        if (!reaches_any(u, kept, v)) kept.push_back(u);
    }
    for (const int u : kept) {
        out_edges_[static_cast<std::size_t>(u)].push_back(v);
        ++in_degree_[static_cast<std::size_t>(v)];
        ++num_edges_;
    }
}

bool CircuitDag::reaches_any(int from, const std::vector<int>& kept, int limit) {
    if (kept.empty()) return false;
    const int max_kept = kept.front();  // kept is built in descending id order
    ++current_epoch_;
    bfs_stack_.clear();
    bfs_stack_.push_back(from);
    visit_epoch_[static_cast<std::size_t>(from)] = current_epoch_;
    while (!bfs_stack_.empty()) {
        const int u = bfs_stack_.back();
        bfs_stack_.pop_back();
        for (const int w : out_edges_[static_cast<std::size_t>(u)]) {
            if (w >= limit || w > max_kept) continue;  // edges only increase ids
            if (visit_epoch_[static_cast<std::size_t>(w)] == current_epoch_) continue;
            visit_epoch_[static_cast<std::size_t>(w)] = current_epoch_;
            if (std::find(kept.begin(), kept.end(), w) != kept.end()) return true;
            bfs_stack_.push_back(w);
        }
    }
    return false;
}

std::vector<int> CircuitDag::ready_vertices() const {
    return std::vector<int>(ready_.begin(), ready_.end());
}

void CircuitDag::remove_vertex(int id) {
    if (id < 0 || id >= static_cast<int>(gates_.size()) ||
        !alive_[static_cast<std::size_t>(id)])
        throw std::invalid_argument("vertex " + std::to_string(id) + " absent from DAG");
    if (in_degree_[static_cast<std::size_t>(id)] != 0)
        throw std::invalid_argument("vertex " + std::to_string(id) + " is not ready");

    alive_[static_cast<std::size_t>(id)] = 0;
    --num_alive_;
    ready_.erase(id);
    auto& out = out_edges_[static_cast<std::size_t>(id)];
    for (const int w : out) {
        if (--in_degree_[static_cast<std::size_t>(w)] == 0) ready_.insert(w);
    }
    num_edges_ -= out.size();
    out.clear();
}

std::vector<std::pair<int, int>> CircuitDag::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(num_edges_);
    for (int u = 0; u < static_cast<int>(gates_.size()); ++u) {
        if (!alive_[static_cast<std::size_t>(u)]) continue;
        for (const int w : out_edges_[static_cast<std::size_t>(u)]) out.emplace_back(u, w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string CircuitDag::to_dot() const {
    std::ostringstream out;
    out << "digraph circuit {\n";
    for (int v = 0; v < static_cast<int>(gates_.size()); ++v) {
        if (!alive_[static_cast<std::size_t>(v)]) continue;
        out << "  v" << v << " [label=\"" << v << ": "
            << gate_mnemonic(gates_[static_cast<std::size_t>(v)]) << "\"];\n";
    }
    for (const auto& [u, w] : edges()) out << "  v" << u << " -> v" << w << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace permsim
