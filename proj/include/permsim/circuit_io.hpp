// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "permsim/circuit.hpp"

#include <stdexcept>
#include <string>

namespace permsim {

/// Parse failure carrying the 1-based source line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Circuit text format, one instruction per line, '#' starts a comment:
///   qubits <n>
///   H <q> | Y <q> | CNOT <control> <target>
///   U1 <q> <8 reals> | CU <control> <target> <8 reals>
///   PERMUTE <sigma(0)>,<sigma(1)>,...,<sigma(n-1)>
/// The 8 reals are the 2x2 block row-major as re/im pairs.
Circuit parse_circuit(const std::string& text);

/// Canonical form: "qubits n" first, one instruction per line, single
/// spaces, doubles printed with 17 significant digits so parsing is exact.
std::string serialize_circuit(const Circuit& c);

std::string serialize_instruction(const Instruction& in);

Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const std::string& path, const Circuit& c);

}  // namespace permsim
