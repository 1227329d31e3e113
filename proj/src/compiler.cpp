// SPDX-License-Identifier: Apache-2.0
#include "permsim/compiler.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace permsim {

namespace {

/// Scores the m*(n-m) single-exchange candidates against the current DAG.
/// A candidate is identified by the (local, global) position pair it
/// swaps; locality of a vertex under the candidate needs only the vertex's
/// positions under the current sigma, so no candidate permutation is ever
/// materialized until one wins.
class CandidateScorer {
public:
    CandidateScorer(const CircuitDag& dag, const ShardConfig& cfg)
        : dag_(dag),
          cfg_(cfg),
          scratch_in_degree_(dag.total_gates(), 0),
          epoch_mark_(dag.total_gates(), 0) {}

    struct Best {
        int local_pos = -1;
        int global_pos = -1;
        int score = 0;
    };

    Best search(const QubitPermutation& sigma, CountMode mode) {
        const int m = cfg_.num_local;
        const int n = cfg_.n;

        // After the sweep, every ready vertex has a global target position;
        // bucket them by it. A single exchange frees exactly the vertices
        // whose target occupies the swapped-in global position.
        ready_by_global_.assign(static_cast<std::size_t>(n - m), {});
        for (const int v : dag_.ready_vertices()) {
            const int p = sigma(dag_.gate(v).target);
            if (p >= m) ready_by_global_[static_cast<std::size_t>(p - m)].push_back(v);
        }

        Best best;
        std::vector<int> seeds;
        for (int l = 0; l < m; ++l) {
            for (int gp = m; gp < n; ++gp) {
                seeds.clear();
                for (const int v : ready_by_global_[static_cast<std::size_t>(gp - m)])
                    if (comm_free_under_candidate(v, sigma, l, gp)) seeds.push_back(v);
                if (seeds.empty()) continue;
                const int score = (mode == CountMode::Ready)
                                      ? static_cast<int>(seeds.size())
                                      : cascade_size(seeds, sigma, l, gp);
                if (score > best.score) best = Best{l, gp, score};
            }
        }
        return best;
    }

private:
    /// Communication is target-driven: control locality never matters, so
    /// only the target position decides whether the candidate frees v.
    bool comm_free_under_candidate(int v, const QubitPermutation& sigma, int l,
                                   int gp) const {
        const int p = sigma(dag_.gate(v).target);
        return (p < cfg_.num_local && p != l) || p == gp;
    }

    int in_degree_scratch(int v) {
        if (epoch_mark_[static_cast<std::size_t>(v)] != epoch_) {
            epoch_mark_[static_cast<std::size_t>(v)] = epoch_;
            scratch_in_degree_[static_cast<std::size_t>(v)] = dag_.in_degree(v);
        }
        return scratch_in_degree_[static_cast<std::size_t>(v)];
    }

    /// Virtual removal closure: repeatedly remove ready vertices local
    /// under the candidate and count them.
    int cascade_size(const std::vector<int>& seeds, const QubitPermutation& sigma, int l,
                     int gp) {
        ++epoch_;
        stack_ = seeds;
        int count = 0;
        while (!stack_.empty()) {
            const int v = stack_.back();
            stack_.pop_back();
            ++count;
            for (const int w : dag_.successors(v)) {
                in_degree_scratch(w);
                if (--scratch_in_degree_[static_cast<std::size_t>(w)] == 0 &&
                    comm_free_under_candidate(w, sigma, l, gp))
                    stack_.push_back(w);
            }
        }
        return count;
    }

    const CircuitDag& dag_;
    ShardConfig cfg_;
    std::vector<int> scratch_in_degree_;
    std::vector<int> epoch_mark_;
    int epoch_ = 0;
    std::vector<int> stack_;
    std::vector<std::vector<int>> ready_by_global_;
};

}  // namespace

CompiledCircuit compile(const Circuit& c, const PassConfig& pc) {
    c.validate();
    if (!c.gates_only())
        throw std::invalid_argument("compile input must not contain layout instructions");
    if (c.num_qubits != pc.cfg.n)
        throw std::invalid_argument("circuit qubit count does not match shard config");

    CircuitDag dag(c, pc.dag_rules);
    CandidateScorer scorer(dag, pc.cfg);
    QubitPermutation sigma = QubitPermutation::identity(pc.cfg.n);
    Circuit out(pc.cfg.n);
    out.instructions.reserve(c.instructions.size());
    std::uint64_t permutes = 0;

    while (!dag.empty()) {
        // Schedule every ready communication-free gate until nothing
        // changes. Controlled gates with a global control but local target
        // qualify: they touch no amplitudes outside their shards.
        for (;;) {
            bool progress = false;
            for (const int v : dag.ready_vertices()) {
                if (needs_communication(dag.gate(v), sigma, pc.cfg)) continue;
                out.add(dag.gate(v));
                dag.remove_vertex(v);
                progress = true;
            }
            if (!progress) break;
        }
        if (dag.empty()) break;

        const CandidateScorer::Best best = scorer.search(sigma, pc.count_mode);
        if (best.score > 0) {
            sigma = sigma.with_swapped_positions(best.local_pos, best.global_pos);
            out.add(sigma);
            ++permutes;
        } else {
            // No exchange helps: pay for the earliest ready gate.
            const int v = dag.ready_vertices().front();
            out.add(dag.gate(v));
            dag.remove_vertex(v);
        }
    }

    return CompiledCircuit{std::move(out), std::move(sigma), permutes};
}

int score_candidate(const CircuitDag& dag, const QubitPermutation& sigma_prime,
                    const PassConfig& pc) {
    if (sigma_prime.size() != pc.cfg.n)
        throw std::invalid_argument("candidate permutation size mismatch");

    const auto vertex_local = [&](int v) {
        return !needs_communication(dag.gate(v), sigma_prime, pc.cfg);
    };

    if (pc.count_mode == CountMode::Ready) {
        int count = 0;
        for (const int v : dag.ready_vertices())
            if (vertex_local(v)) ++count;
        return count;
    }

    std::vector<int> in_degree(dag.total_gates());
    std::vector<int> stack;
    for (const int v : dag.ready_vertices())
        if (vertex_local(v)) stack.push_back(v);
    for (int v = 0; v < static_cast<int>(dag.total_gates()); ++v)
        in_degree[static_cast<std::size_t>(v)] = dag.is_alive(v) ? dag.in_degree(v) : -1;

    int count = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++count;
        for (const int w : dag.successors(v))
            if (--in_degree[static_cast<std::size_t>(w)] == 0 && vertex_local(w))
                stack.push_back(w);
    }
    return count;
}

double comm_gate_fraction(const Circuit& c, const ShardConfig& cfg) {
    if (c.num_qubits != cfg.n)
        throw std::invalid_argument("circuit qubit count does not match shard config");
    QubitPermutation sigma = QubitPermutation::identity(cfg.n);
    std::uint64_t comm_ops = 0;
    std::uint64_t gates = 0;
    for (const Instruction& in : c.instructions) {
        if (in.is_gate()) {
            ++gates;
            if (needs_communication(in.gate(), sigma, cfg)) ++comm_ops;
        } else {
            ++comm_ops;
            sigma = in.permutation();
        }
    }
    return gates == 0 ? 0.0 : static_cast<double>(comm_ops) / static_cast<double>(gates);
}

}  // namespace permsim
