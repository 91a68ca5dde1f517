#pragma once

#include <cstddef>
#include <vector>

#include "qsearch/complex_linalg.hpp"

namespace qsearch {

/// Search input: a 0/1 sequence with exactly one 1, at 1-based position s.
struct MarkedSequence {
    std::vector<int> x;
    int s;  // 1-based index of the marked entry

    MarkedSequence(std::vector<int> seq, int marked);
    static MarkedSequence single_marked(std::size_t n, int marked);

    std::size_t size() const { return x.size(); }
};

/// Two circulant layouts of the oracle; they agree exactly when 2s = N.
/// RowStart: row j is the cyclic sequence starting at x_j, so the recovery
/// rule is s = ((j-2) mod N) + 1. PaperRecovery: rows are right-shifts of x,
/// chosen so the measured index j recovers s = N + 1 - j.
enum class PermutationConvention {
    RowStart,
    PaperRecovery,
};

/// Collapse gate: entry (k,l), 1-based, is w^{k(l-1)} / sqrt(N). Maps the
/// uniform superposition to the last basis state.
CMatrix build_U(std::size_t n);

/// Cyclic-permutation oracle from the marked sequence. Always an exact 0/1
/// permutation matrix.
CMatrix build_F(const MarkedSequence& seq, PermutationConvention conv);

/// One-gate search oracle: rows k < N become U rows raised (in phase) to
/// f(x_k), with f = 0 at the marked row and 1 elsewhere; the last row is
/// rebuilt from the scalar S = (1/sqrt(N)) (-sum_{k<N} Utilde_{kN})^{-1}.
/// The result is build_U with rows s and N exchanged, and S = w^s.
CMatrix build_U_tilde(const MarkedSequence& seq);

/// Diagonal phase flip: -1 at position s (1-based), +1 elsewhere.
CMatrix grover_phase_oracle(std::size_t n, int s);

/// 2|psi><psi| - I over the uniform state psi.
CMatrix grover_diffusion(std::size_t n);

}  // namespace qsearch
