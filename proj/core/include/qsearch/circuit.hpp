#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qsearch/complex_linalg.hpp"

namespace qsearch {

/// One elementary operation: an arbitrary single-qubit unitary or a CX.
/// Qubit 0 is the leftmost (most significant) bit of the basis-state label,
/// matching the basis-index-to-bitstring convention used everywhere else.
struct GateOp {
    enum class Kind { Single, Cx };

    Kind kind = Kind::Single;
    int target = 0;
    int control = -1;                  // CX only
    std::array<Complex, 4> matrix{};   // row-major 2x2, Single only
    bool noisy = false;

    static GateOp single(int target, const std::array<Complex, 4>& m);
    static GateOp cx(int control, int target);
};

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> ops;

    Circuit() = default;
    explicit Circuit(int qubits);

    void push(GateOp op);
    std::size_t size() const { return ops.size(); }
};

struct GateCensus {
    std::size_t single = 0;
    std::size_t cx = 0;
    std::size_t total = 0;
};

GateCensus gate_census(const Circuit& c);

/// Reverse op order and invert every gate (CX is self-inverse).
Circuit adjoint_circuit(const Circuit& c);

/// Text format: header "circuit NQUBITS", then one op per line:
///   U1 q re,im re,im re,im re,im      (2x2 row-major)
///   CX c t
/// with a trailing "!" marking noisy ops. Round-trips bit exactly.
void write_circuit(std::ostream& os, const Circuit& c);
Circuit read_circuit(std::istream& is);

// Common 2x2 blocks.
std::array<Complex, 4> h_gate();
std::array<Complex, 4> x_gate();
std::array<Complex, 4> y_gate();
std::array<Complex, 4> z_gate();
std::array<Complex, 4> phase_gate(double theta);  // diag(1, e^{i theta})

}  // namespace qsearch
