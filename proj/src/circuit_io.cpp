// SPDX-License-Identifier: Apache-2.0
#include "permsim/circuit_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace permsim {

namespace {

std::vector<std::string> split_whitespace(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) out.push_back(token);
    return out;
}

int parse_int(const std::string& token, int line) {
    errno = 0;
    char* end = nullptr;
    const long value = std::strtol(token.c_str(), &end, 10);
    if (errno != 0 || end == token.c_str() || *end != '\0')
        throw ParseError(line, "expected an integer, got '" + token + "'");
    if (value < INT32_MIN || value > INT32_MAX) throw ParseError(line, "integer out of range");
    return static_cast<int>(value);
}

double parse_real(const std::string& token, int line) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (errno != 0 || end == token.c_str() || *end != '\0')
        throw ParseError(line, "expected a real number, got '" + token + "'");
    return value;
}

int parse_qubit(const std::string& token, int n, int line) {
    const int q = parse_int(token, line);
    if (q < 0 || q >= n)
        throw ParseError(line, "qubit " + token + " out of range [0, " + std::to_string(n) + ")");
    return q;
}

GateMatrix parse_matrix(const std::vector<std::string>& tokens, std::size_t first, int line) {
    double reals[8];
    for (std::size_t i = 0; i < 8; ++i) reals[i] = parse_real(tokens[first + i], line);
    GateMatrix u;
    u(0, 0) = Complex(reals[0], reals[1]);
    u(0, 1) = Complex(reals[2], reals[3]);
    u(1, 0) = Complex(reals[4], reals[5]);
    u(1, 1) = Complex(reals[6], reals[7]);
    if (!is_unitary(u)) throw ParseError(line, "matrix is not unitary");
    return u;
}

QubitPermutation parse_permutation(const std::string& token, int n, int line) {
    std::vector<int> image;
    std::size_t start = 0;
    while (start <= token.size()) {
        const std::size_t comma = token.find(',', start);
        const std::string field =
            token.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (field.empty()) throw ParseError(line, "empty entry in permutation list");
        image.push_back(parse_int(field, line));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(image.size()) != n)
        throw ParseError(line, "permutation lists " + std::to_string(image.size()) +
                                   " entries, expected " + std::to_string(n));
    try {
        return QubitPermutation::from_image(std::move(image));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
    }
}

void require_args(const std::vector<std::string>& tokens, std::size_t count, int line) {
    if (tokens.size() != count + 1)
        throw ParseError(line, tokens[0] + " expects " + std::to_string(count) +
                                   " argument(s), got " + std::to_string(tokens.size() - 1));
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    bool header_seen = false;
    int line_no = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::vector<std::string> tokens = split_whitespace(raw);
        if (tokens.empty()) continue;
        const std::string& word = tokens[0];

        if (!header_seen) {
            if (word != "qubits")
                throw ParseError(line_no, "first line must be 'qubits <n>'");
            require_args(tokens, 1, line_no);
            const int n = parse_int(tokens[1], line_no);
            if (n < 1 || n > 62) throw ParseError(line_no, "qubit count must be in [1, 62]");
            c.num_qubits = n;
            header_seen = true;
            continue;
        }

        try {
            if (word == "qubits") {
                throw ParseError(line_no, "duplicate 'qubits' line");
            } else if (word == "H") {
                require_args(tokens, 1, line_no);
                c.add(Gate::hadamard(parse_qubit(tokens[1], c.num_qubits, line_no)));
            } else if (word == "Y") {
                require_args(tokens, 1, line_no);
                c.add(Gate::pauli_y(parse_qubit(tokens[1], c.num_qubits, line_no)));
            } else if (word == "CNOT") {
                require_args(tokens, 2, line_no);
                const int control = parse_qubit(tokens[1], c.num_qubits, line_no);
                const int target = parse_qubit(tokens[2], c.num_qubits, line_no);
                c.add(Gate::cnot(control, target));
            } else if (word == "U1") {
                require_args(tokens, 9, line_no);
                const int target = parse_qubit(tokens[1], c.num_qubits, line_no);
                c.add(Gate::one_qubit(target, parse_matrix(tokens, 2, line_no)));
            } else if (word == "CU") {
                require_args(tokens, 10, line_no);
                const int control = parse_qubit(tokens[1], c.num_qubits, line_no);
                const int target = parse_qubit(tokens[2], c.num_qubits, line_no);
                c.add(Gate::controlled_one_qubit(control, target,
                                                 parse_matrix(tokens, 3, line_no)));
            } else if (word == "PERMUTE") {
                require_args(tokens, 1, line_no);
                c.add(parse_permutation(tokens[1], c.num_qubits, line_no));
            } else {
                throw ParseError(line_no, "unknown instruction '" + word + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!header_seen) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'qubits <n>' line");
    return c;
}

std::string serialize_instruction(const Instruction& in) {
    if (in.is_permute()) {
        std::string out = "PERMUTE ";
        const auto& image = in.permutation().image();
        for (std::size_t i = 0; i < image.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(image[i]);
        }
        return out;
    }
    const Gate& g = in.gate();
    switch (g.kind) {
        case GateKind::H: return "H " + std::to_string(g.target);
        case GateKind::Y: return "Y " + std::to_string(g.target);
        case GateKind::Cnot:
            return "CNOT " + std::to_string(g.control) + " " + std::to_string(g.target);
        case GateKind::Generic1q:
        case GateKind::GenericControlled1q: {
            std::string out;
            if (g.kind == GateKind::Generic1q) {
                out = "U1 " + std::to_string(g.target);
            } else {
                out = "CU " + std::to_string(g.control) + " " + std::to_string(g.target);
            }
            for (int row = 0; row < 2; ++row)
                for (int col = 0; col < 2; ++col) {
                    const Complex v = g.matrix(row, col);
                    out += ' ' + format_real(v.real()) + ' ' + format_real(v.imag());
                }
            return out;
        }
    }
    return {};
}

std::string serialize_circuit(const Circuit& c) {
    std::string out = "qubits " + std::to_string(c.num_qubits);
    for (const Instruction& in : c.instructions) {
        out += '\n';
        out += serialize_instruction(in);
    }
    return out;
}

Circuit read_circuit_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_circuit(buffer.str());
}

void write_circuit_file(const std::string& path, const Circuit& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << serialize_circuit(c) << '\n';
    if (!out) throw std::runtime_error("failed writing circuit file: " + path);
}

}  // namespace permsim
