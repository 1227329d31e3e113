// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/circuit.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace permsim {

/// Edge pruning policy. Disjoint: any two gates sharing a qubit are
/// ordered. Full: additionally, two CNOTs sharing only their controls or
/// only their targets commute and stay unordered.
enum class DagRules { Disjoint, Full };

/// True iff the rule set leaves the (earlier, later) pair unordered.
bool gates_commute(const Gate& a, const Gate& b, DagRules rules);

/// Gate-dependency DAG. Vertex ids are the original circuit positions
/// (0-based over gate instructions). Edges are the transitive reduction of
/// the non-commuting-pairs order, so u -> v means u must run before v and
/// no intermediate vertex already implies it.
class CircuitDag {
public:
    explicit CircuitDag(const Circuit& c, DagRules rules = DagRules::Full);

    std::size_t total_gates() const { return gates_.size(); }
    std::size_t num_vertices() const { return num_alive_; }
    std::size_t num_edges() const { return num_edges_; }
    bool empty() const { return num_alive_ == 0; }

    bool is_alive(int id) const { return alive_[static_cast<std::size_t>(id)]; }
    bool is_ready(int id) const {
        return is_alive(id) && in_degree_[static_cast<std::size_t>(id)] == 0;
    }

    const Gate& gate(int id) const { return gates_[static_cast<std::size_t>(id)]; }

    /// Alive vertices with no unresolved incoming edges, in original
    /// circuit order.
    std::vector<int> ready_vertices() const;

    /// Removes a ready vertex and its outgoing edges; throws if `id` is
    /// absent or not ready.
    void remove_vertex(int id);

    int in_degree(int id) const { return in_degree_[static_cast<std::size_t>(id)]; }
    const std::vector<int>& successors(int id) const {
        return out_edges_[static_cast<std::size_t>(id)];
    }

    /// All alive edges as (from, to) pairs, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    std::string to_dot() const;

private:
    void add_vertex_edges(int v, std::vector<int>& candidates);
    bool reaches_any(int from, const std::vector<int>& kept, int max_id);

    std::vector<Gate> gates_;
    std::vector<std::vector<int>> out_edges_;
    std::vector<int> in_degree_;
    std::vector<char> alive_;
    std::set<int> ready_;
    std::size_t num_alive_ = 0;
    std::size_t num_edges_ = 0;

    // scratch for reachability during construction
    std::vector<int> visit_epoch_;
    int current_epoch_ = 0;
    std::vector<int> bfs_stack_;
};

}  // namespace permsim
