#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/complex_linalg.hpp"

namespace qsearch {

/// Unitary differing from the identity in at most one 2x2 block, on basis
/// indices i < j; `block` is row-major in the ordered (i, j) basis.
struct TwoLevelUnitary {
    std::size_t i = 0;
    std::size_t j = 0;
    std::array<Complex, 4> block{};
};

/// Givens-style factorization: the matrix product of the returned factors in
/// list order reconstructs M. At most N(N-1)/2 factors; the identity yields
/// an empty list.
std::vector<TwoLevelUnitary> two_level_decompose(const CMatrix& m);

CMatrix embed_two_level(std::size_t dim, const TwoLevelUnitary& factor);

enum class SynthesisHint { Generic, QftFamily, Permutation };

struct SynthesisResult {
    Circuit circuit;
    bool fallback = false;  // hint did not match; generic path was used
    std::string path;       // which construction produced the circuit
};

/// Lower a unitary on 2^n dimensions to {single-qubit, CX} gates.
///  - generic: two-level factors walked through Gray-code controlled ops.
///  - qft_family: recognizes diagonal-phase x DFT x diagonal-phase structure
///    (and a generalized-permutation residue on top of the collapse-gate
///    form), emitting the O(n^2) QFT network plus phase layers.
///  - permutation: 0/1 permutation matrices; affine index maps (+-c + z mod N)
///    become Fourier-shift networks, anything else becomes basis-state
///    transpositions via multi-controlled X chains.
/// A hint that does not match falls back to generic with `fallback` set.
SynthesisResult synthesize(const CMatrix& m, SynthesisHint hint);

/// Dense unitary induced by a circuit (simulates every basis column).
CMatrix circuit_unitary(const Circuit& c);

/// Max entrywise distance after aligning b to a by a global phase.
double phase_aligned_distance(const CMatrix& a, const CMatrix& b);

// Building blocks, exposed for the algorithm-level circuit builders and tests.

Circuit qft_circuit(int n_qubits);
Circuit shift_circuit(int n_qubits, std::size_t z);  // index -> index + z mod 2^n
Circuit permutation_circuit(int n_qubits, const std::vector<std::size_t>& perm);

void append(Circuit& dst, const Circuit& src);

/// CX/P network applying phase e^{i theta} exactly on basis states where all
/// listed qubits are 1 (Gray-ordered parity staircase, no ancillas).
void append_symmetric_phase(Circuit& c, const std::vector<int>& qubits, double theta);

/// Multi-controlled X via H-conjugated symmetric phase; empty controls = X.
void append_mcx(Circuit& c, const std::vector<int>& controls, int target);

/// Swaps basis states a and b, fixing every other state.
void append_basis_transposition(Circuit& c, int n_qubits, std::size_t a, std::size_t b);

}  // namespace qsearch
