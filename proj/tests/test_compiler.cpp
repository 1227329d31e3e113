// SPDX-License-Identifier: Apache-2.0
#include "permsim/compiler.hpp"

#include "permsim/circuit_io.hpp"
#include "permsim/dense_state.hpp"
#include "permsim/sharded_state.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

using namespace permsim;

namespace {

std::vector<std::string> sorted_gate_lines(const Circuit& c) {
    std::vector<std::string> lines;
    for (const Instruction& in : c.instructions)
        if (in.is_gate()) lines.push_back(serialize_instruction(in));
    std::sort(lines.begin(), lines.end());
    return lines;
}

PassConfig pass_config(int n, int num_global, CountMode mode = CountMode::Cascade,
                       DagRules rules = DagRules::Full) {
    return PassConfig{ShardConfig::with_global_count(n, num_global), mode, rules};
}

}  // namespace

TEST_SUITE("compiler") {

TEST_CASE("all-local circuits pass through untouched") {
    Circuit c(4);
    c.add(Gate::hadamard(0));
    c.add(Gate::cnot(0, 1));
    c.add(Gate::pauli_y(1));
    const CompiledCircuit cc = compile(c, pass_config(4, 2));  // m = 2
    CHECK(cc.circuit == c);
    CHECK(cc.permutes_inserted == 0);
    CHECK(cc.final_sigma.is_identity());
}

TEST_CASE("a single global gate triggers one exchange") {
    Circuit c(4);
    c.add(Gate::hadamard(3));
    const CompiledCircuit cc = compile(c, pass_config(4, 1));  // m = 3, position 3 global
    REQUIRE(cc.circuit.instructions.size() == 2);
    REQUIRE(cc.circuit.instructions[0].is_permute());
    CHECK(cc.circuit.instructions[1].gate() == Gate::hadamard(3));
    // smallest local position wins the tie-break
    const QubitPermutation& sigma = cc.circuit.instructions[0].permutation();
    CHECK(sigma(3) == 0);
    CHECK(sigma(0) == 3);
    CHECK(cc.permutes_inserted == 1);
    CHECK(cc.final_sigma == sigma);
    // the gate is local under the new layout
    CHECK_FALSE(needs_communication(Gate::hadamard(3), sigma, pass_config(4, 1).cfg));
}

TEST_CASE("score_candidate") {
    const PassConfig pc = pass_config(2, 1);  // m = 1: position 1 global
    SUBCASE("empty DAG scores zero") {
        const CircuitDag dag{Circuit(2)};
        CHECK(score_candidate(dag, QubitPermutation::from_image({1, 0}), pc) == 0);
    }
    SUBCASE("one enabled gate without dependents counts once in both modes") {
        Circuit c(2);
        c.add(Gate::hadamard(1));
        const CircuitDag dag(c);
        const auto swapped = QubitPermutation::from_image({1, 0});
        PassConfig ready = pc;
        ready.count_mode = CountMode::Ready;
        CHECK(score_candidate(dag, swapped, ready) == 1);
        CHECK(score_candidate(dag, swapped, pc) == 1);
        // identity leaves it global
        PassConfig id_pc = pc;
        CHECK(score_candidate(dag, QubitPermutation::identity(2), id_pc) == 0);
    }
    SUBCASE("a chain counts 1 ready but 2 cascade") {
        Circuit c(2);
        c.add(Gate::hadamard(1));
        c.add(Gate::hadamard(1));
        const CircuitDag dag(c);
        const auto swapped = QubitPermutation::from_image({1, 0});
        PassConfig ready = pc;
        ready.count_mode = CountMode::Ready;
        CHECK(score_candidate(dag, swapped, ready) == 1);
        CHECK(score_candidate(dag, swapped, pc) == 2);
    }
}

TEST_CASE("first inserted permute is the score_candidate argmax") {
    // All gates sit on global qubits, so the first emitted instruction is a
    // permute chosen by the candidate search.
    const PassConfig pc = pass_config(6, 3);  // m = 3
    Circuit c(6);
    c.add(Gate::hadamard(4));
    c.add(Gate::cnot(4, 5));
    c.add(Gate::pauli_y(3));
    c.add(Gate::hadamard(4));
    const CompiledCircuit cc = compile(c, pc);
    REQUIRE(cc.circuit.instructions[0].is_permute());
    const QubitPermutation& chosen = cc.circuit.instructions[0].permutation();

    const CircuitDag dag(c, pc.dag_rules);
    int best_score = 0;
    QubitPermutation best = QubitPermutation::identity(6);
    const auto id = QubitPermutation::identity(6);
    for (int l = 0; l < pc.cfg.num_local; ++l)
        for (int g = pc.cfg.num_local; g < pc.cfg.n; ++g) {
            const auto candidate = id.with_swapped_positions(l, g);
            const int score = score_candidate(dag, candidate, pc);
            if (score > best_score) {
                best_score = score;
                best = candidate;
            }
        }
    REQUIRE(best_score > 0);
    CHECK(chosen == best);
}

TEST_CASE("compilation preserves semantics on random circuits") {
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 5 + trial % 4;                  // 5..8
        const int num_global = 1 + trial % 3;         // 1..3
        const Circuit c = generate_random_circuit(
            {n, 60, 0.3, static_cast<std::uint64_t>(trial) + 2000});
        const PassConfig pc = pass_config(n, num_global);
        const CompiledCircuit cc = compile(c, pc);

        ShardedState s = init_state(pc.cfg);
        run_circuit(s, cc.circuit);
        const DenseState oracle = dense_reference_run(c);
        REQUIRE(test::max_deviation(s, oracle) <= 1e-12);
    }
}

TEST_CASE("both count modes and both rule sets preserve semantics") {
    const Circuit c = generate_random_circuit({7, 80, 0.4, 4242});
    for (const CountMode mode : {CountMode::Ready, CountMode::Cascade}) {
        for (const DagRules rules : {DagRules::Disjoint, DagRules::Full}) {
            const PassConfig pc = pass_config(7, 2, mode, rules);
            const CompiledCircuit cc = compile(c, pc);
            ShardedState s = init_state(pc.cfg);
            run_circuit(s, cc.circuit);
            REQUIRE(test::max_deviation(s, dense_reference_run(c)) <= 1e-12);
        }
    }
}

TEST_CASE("gate multiset is conserved") {
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = generate_random_circuit(
            {9, 150, 0.5, static_cast<std::uint64_t>(trial) + 3000});
        const CompiledCircuit cc = compile(c, pass_config(9, 3));
        CHECK(sorted_gate_lines(cc.circuit) == sorted_gate_lines(c));
        CHECK(cc.circuit.gate_count() == c.gate_count());
    }
}

TEST_CASE("compilation is deterministic") {
    const Circuit c = generate_random_circuit({10, 200, 0.3, 999});
    const PassConfig pc = pass_config(10, 3);
    const std::string a = serialize_circuit(compile(c, pc).circuit);
    const std::string b = serialize_circuit(compile(c, pc).circuit);
    CHECK(a == b);
}

TEST_CASE("every inserted permute differs from its predecessor by one local-global swap") {
    const Circuit c = generate_random_circuit({10, 300, 0.3, 31337});
    const PassConfig pc = pass_config(10, 3);
    const CompiledCircuit cc = compile(c, pc);
    QubitPermutation sigma = QubitPermutation::identity(10);
    int permutes = 0;
    for (const Instruction& in : cc.circuit.instructions) {
        if (!in.is_permute()) continue;
        ++permutes;
        const auto d = permutation_distance(sigma, in.permutation(), pc.cfg);
        CHECK_FALSE(d.local_changed);
        CHECK_FALSE(d.global_changed);
        CHECK(d.num_pairs == 1);
        sigma = in.permutation();
    }
    CHECK(permutes > 0);
    CHECK(static_cast<std::uint64_t>(permutes) == cc.permutes_inserted);
    CHECK(cc.final_sigma == sigma);
}

TEST_CASE("compile terminates on large inputs") {
    const Circuit c = generate_random_circuit({40, 100000, 0.3, 5});
    const auto start = std::chrono::steady_clock::now();
    const CompiledCircuit cc = compile(c, pass_config(40, 8));
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    CHECK(cc.circuit.gate_count() == c.gate_count());
    MESSAGE("compiled 100000 gates in ", seconds, " s");
    CHECK(seconds < 120.0);
}

TEST_CASE("comm_gate_fraction") {
    const auto cfg = ShardConfig::make(4, 4);  // positions 2, 3 global
    SUBCASE("all-local circuit scores zero") {
        Circuit c(4);
        c.add(Gate::hadamard(0));
        c.add(Gate::cnot(1, 0));
        CHECK(comm_gate_fraction(c, cfg) == 0.0);
        CHECK(comm_gate_fraction(Circuit(4), cfg) == 0.0);
    }
    SUBCASE("counts communicating gates under the identity layout") {
        Circuit c(4);
        c.add(Gate::hadamard(0));  // local
        c.add(Gate::hadamard(3));  // comm
        c.add(Gate::hadamard(2));  // comm
        c.add(Gate::hadamard(1));  // local
        CHECK(comm_gate_fraction(c, cfg) == doctest::Approx(0.5));
    }
    SUBCASE("permutes count once each over the original gate count") {
        Circuit c(4);
        c.add(QubitPermutation::identity(4).with_swapped_positions(0, 3));
        c.add(Gate::hadamard(3));  // local under the new layout
        c.add(Gate::hadamard(0));  // now global
        CHECK(comm_gate_fraction(c, cfg) == doctest::Approx(1.0));  // (1 permute + 1 comm) / 2
    }
}

TEST_CASE("compiled circuits communicate less") {
    for (std::uint64_t seed = 800; seed < 810; ++seed) {
        const Circuit c = generate_random_circuit({20, 600, 0.3, seed});
        const PassConfig pc = pass_config(20, 4);
        const CompiledCircuit cc = compile(c, pc);
        const double before = comm_gate_fraction(c, pc.cfg);
        const double after = comm_gate_fraction(cc, pc.cfg);
        CHECK(after < before);
        // definitional bound: fraction can only fall by removed comm gates
        CHECK(after <= before + static_cast<double>(cc.permutes_inserted) /
                                    static_cast<double>(c.gate_count()));
    }
}

TEST_CASE("compile rejects bad inputs") {
    Circuit with_permute(4);
    with_permute.add(QubitPermutation::identity(4));
    CHECK_THROWS_AS(compile(with_permute, pass_config(4, 1)), std::invalid_argument);

    Circuit wrong_n(5);
    wrong_n.add(Gate::hadamard(0));
    CHECK_THROWS_AS(compile(wrong_n, pass_config(4, 1)), std::invalid_argument);
}

}  // TEST_SUITE
