#pragma once

#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/complex_linalg.hpp"
#include "qsearch/search_oracles.hpp"

namespace qsearch {

enum class RunMode { Matrix, Circuit };

struct SearchOutcome {
    int measured_index_j = 0;  // 1-based basis index with the largest probability
    int recovered_s = 0;
    std::vector<double> distribution;
    RunMode mode = RunMode::Matrix;
};

/// uniform -> U -> F -> measure. Noiseless output is a point mass whose index
/// recovers the marked position under the chosen convention.
SearchOutcome run_qcpa(const MarkedSequence& seq, PermutationConvention conv, RunMode mode);

/// Marked position from the measured 1-based index j.
int recover_qcpa(int j, int n, PermutationConvention conv);

/// uniform -> U-tilde -> measure; the measured index is the marked position.
SearchOutcome run_qusa(const MarkedSequence& seq, RunMode mode);

/// floor((pi/4) sqrt(N)).
int grover_iterations(std::size_t n);

SearchOutcome run_grover(std::size_t n, int s, int iterations, RunMode mode);

/// sin^2((2k+1) asin(1/sqrt(N))): exact success probability of k iterations.
double grover_success_probability(std::size_t n, int iterations);

// Gate-level pipelines (power-of-two N), used by circuit mode and the
// experiment harness.
Circuit qcpa_circuit(const MarkedSequence& seq, PermutationConvention conv);
Circuit qusa_circuit(const MarkedSequence& seq);
Circuit grover_circuit(int n_qubits, int s, int iterations);

}  // namespace qsearch
