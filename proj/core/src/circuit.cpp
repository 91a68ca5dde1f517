#include "qsearch/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

bool is_unitary_2x2(const std::array<Complex, 4>& m, double tol) {
    // m^dagger m == I for a 2x2.
    const Complex a = m[0];
    const Complex b = m[1];
    const Complex c = m[2];
    const Complex d = m[3];
    const Complex e00 = std::conj(a) * a + std::conj(c) * c - 1.0;
    const Complex e01 = std::conj(a) * b + std::conj(c) * d;
    const Complex e11 = std::conj(b) * b + std::conj(d) * d - 1.0;
    return std::abs(e00) < tol && std::abs(e01) < tol && std::abs(e11) < tol;
}

Complex parse_pair(const std::string& token) {
    const std::size_t comma = token.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("circuit: entry is not a re,im pair");
    }
    try {
        return Complex(std::stod(token.substr(0, comma)), std::stod(token.substr(comma + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("circuit: malformed number in entry");
    }
}

}  // namespace

GateOp GateOp::single(int target, const std::array<Complex, 4>& m) {
    if (target < 0) throw std::invalid_argument("gate: negative qubit index");
    if (!is_unitary_2x2(m, 1e-10)) throw std::invalid_argument("gate: 2x2 block is not unitary");
    GateOp op;
    op.kind = Kind::Single;
    op.target = target;
    op.matrix = m;
    return op;
}

GateOp GateOp::cx(int control, int target) {
    if (control < 0 || target < 0) throw std::invalid_argument("gate: negative qubit index");
    if (control == target) throw std::invalid_argument("gate: CX control equals target");
    GateOp op;
    op.kind = Kind::Cx;
    op.control = control;
    op.target = target;
    return op;
}

Circuit::Circuit(int qubits) : n_qubits(qubits) {
    if (qubits < 1) throw std::invalid_argument("circuit: need at least one qubit");
}

void Circuit::push(GateOp op) {
    if (op.target >= n_qubits || (op.kind == GateOp::Kind::Cx && op.control >= n_qubits)) {
        throw std::invalid_argument("circuit: qubit index out of range");
    }
    ops.push_back(std::move(op));
}

GateCensus gate_census(const Circuit& c) {
    GateCensus census;
    for (const GateOp& op : c.ops) {
        if (op.kind == GateOp::Kind::Single) {
            ++census.single;
        } else {
            ++census.cx;
        }
    }
    census.total = census.single + census.cx;
    return census;
}

Circuit adjoint_circuit(const Circuit& c) {
    Circuit out(c.n_qubits);
    out.ops.reserve(c.ops.size());
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
        GateOp op = *it;
        if (op.kind == GateOp::Kind::Single) {
            const std::array<Complex, 4> m = op.matrix;
            op.matrix = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
        }
        out.ops.push_back(std::move(op));
    }
    return out;
}

void write_circuit(std::ostream& os, const Circuit& c) {
    os << "circuit " << c.n_qubits << "\n";
    char buf[160];
    for (const GateOp& op : c.ops) {
        if (op.kind == GateOp::Kind::Single) {
            os << "U1 " << op.target;
            for (const Complex& z : op.matrix) {
                std::snprintf(buf, sizeof(buf), " %.17g,%.17g", z.real(), z.imag());
                os << buf;
            }
        } else {
            os << "CX " << op.control << " " << op.target;
        }
        if (op.noisy) os << " !";
        os << "\n";
    }
}

Circuit read_circuit(std::istream& is) {
    std::string header;
    int n_qubits = 0;
    if (!(is >> header >> n_qubits) || header != "circuit") {
        throw std::invalid_argument("circuit: expected 'circuit NQUBITS' header");
    }
    Circuit c(n_qubits);
    std::string line;
    std::getline(is, line);  // consume rest of header line
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind.empty()) continue;
        GateOp op;
        if (kind == "U1") {
            int target = 0;
            if (!(ls >> target)) throw std::invalid_argument("circuit: malformed U1 line");
            std::array<Complex, 4> m;
            for (Complex& z : m) {
                std::string token;
                if (!(ls >> token)) throw std::invalid_argument("circuit: truncated U1 matrix");
                z = parse_pair(token);
            }
            op = GateOp::single(target, m);
        } else if (kind == "CX") {
            int control = 0;
            int target = 0;
            if (!(ls >> control >> target)) throw std::invalid_argument("circuit: malformed CX line");
            op = GateOp::cx(control, target);
        } else {
            throw std::invalid_argument("circuit: unknown op '" + kind + "'");
        }
        std::string tail;
        if (ls >> tail) {
            if (tail != "!") throw std::invalid_argument("circuit: unexpected trailing token");
            op.noisy = true;
        }
        c.push(std::move(op));
    }
    return c;
}

std::array<Complex, 4> h_gate() {
    const double a = 1.0 / std::sqrt(2.0);
    return {Complex(a, 0), Complex(a, 0), Complex(a, 0), Complex(-a, 0)};
}

std::array<Complex, 4> x_gate() {
    return {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)};
}

std::array<Complex, 4> y_gate() {
    return {Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)};
}

std::array<Complex, 4> z_gate() {
    return {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)};
}

std::array<Complex, 4> phase_gate(double theta) {
    return {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(std::cos(theta), std::sin(theta))};
}

}  // namespace qsearch
