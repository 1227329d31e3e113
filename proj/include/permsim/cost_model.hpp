// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/circuit.hpp"
#include "permsim/permutation.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <variant>

namespace permsim {

/// Dichotomy model: a local gate costs t_local, anything crossing shards
/// costs comm_overhead times that. A layout change costs one local gate
/// for the in-shard reorder, one communicating gate for the shard
/// relabel, and one communicating gate per exchanged pair.
struct StepCostModel {
    double t_local = 1.0;
    double comm_overhead = 8.0;  // R
};

/// Placement-resolved model fed from per-position benchmark data. Costs
/// are looked up by stored-vector positions, never by qubit ids.
struct TableCostModel {
    Eigen::VectorXd one_qubit_cost;  // by target position
    Eigen::MatrixXd two_qubit_cost;  // (control position, target position); diagonal unused
    Eigen::MatrixXd swap_cost;       // symmetric, by exchanged position pair; diagonal unused
    double local_reorder_cost = 0.0;
    double global_reorder_cost = 0.0;

    int num_positions() const { return static_cast<int>(one_qubit_cost.size()); }
};

using CostModel = std::variant<StepCostModel, TableCostModel>;

double instruction_cost(const Instruction& in, const QubitPermutation& sigma,
                        const ShardConfig& cfg, const CostModel& model);

/// Sum of instruction costs with the permutation threaded through layout
/// changes, starting from identity.
double estimate_circuit(const Circuit& c, const ShardConfig& cfg, const CostModel& model);

struct TimeEstimate {
    double t_orig = 0.0;
    double t_opt = 0.0;
    double reduction = 0.0;  // 1 - t_opt / t_orig
};

TimeEstimate estimate_reduction(const Circuit& original, const Circuit& optimized,
                                const ShardConfig& cfg, const CostModel& model);

/// Cost table CSV rows:
///   1q,<position>,<cost>
///   2q,<ctrl_position>,<tgt_position>,<cost>
///   swap,<pos_a>,<pos_b>,<cost>
///   reorder,local,<cost>
///   reorder,global,<cost>
/// Every placement for `num_qubits` positions must be present; missing or
/// non-positive entries are errors, never defaulted.
TableCostModel load_cost_table(const std::string& path, int num_qubits);
TableCostModel parse_cost_table(std::istream& in, int num_qubits, const std::string& origin);

/// Table whose estimates coincide with the step model at this sharding.
TableCostModel table_from_step_model(const StepCostModel& step, const ShardConfig& cfg);

void write_cost_table_csv(std::ostream& out, const TableCostModel& table);

}  // namespace permsim
