#include "qsearch/search_algorithms.hpp"

#include <cmath>
#include <stdexcept>

#include "qsearch/simulate.hpp"
#include "qsearch/synthesis.hpp"

namespace qsearch {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int qubit_count_for(std::size_t n) {
    int bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    return bits;
}

int argmax_index(const std::vector<double>& v) {
    int best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = static_cast<int>(i);
    }
    return best;
}

SearchOutcome outcome_from_distribution(std::vector<double> dist, RunMode mode) {
    SearchOutcome out;
    out.measured_index_j = argmax_index(dist) + 1;
    out.distribution = std::move(dist);
    out.mode = mode;
    return out;
}

std::vector<double> matrix_pipeline_distribution(const CVector& v) {
    std::vector<double> dist(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) dist[i] = std::norm(v[i]);
    return dist;
}

void require_circuit_size(std::size_t n) {
    if (!is_power_of_two(n) || n < 2) {
        throw std::invalid_argument("circuit mode requires N to be a power of two (>= 2)");
    }
}

void append_h_layer(Circuit& c) {
    for (int q = 0; q < c.n_qubits; ++q) c.push(GateOp::single(q, h_gate()));
}

}  // namespace

SearchOutcome run_qcpa(const MarkedSequence& seq, PermutationConvention conv, RunMode mode) {
    const std::size_t n = seq.size();
    SearchOutcome out;
    if (mode == RunMode::Matrix) {
        CVector v = uniform_state(n);
        v = mat_apply(build_U(n), v);
        v = mat_apply(build_F(seq, conv), v);
        out = outcome_from_distribution(matrix_pipeline_distribution(v), mode);
    } else {
        require_circuit_size(n);
        const Statevector sv = run_pure(qcpa_circuit(seq, conv));
        out = outcome_from_distribution(measurement_distribution(sv), mode);
    }
    out.recovered_s = recover_qcpa(out.measured_index_j, static_cast<int>(n), conv);
    return out;
}

int recover_qcpa(int j, int n, PermutationConvention conv) {
    if (j < 1 || j > n) throw std::invalid_argument("recover_qcpa: j out of range 1..N");
    if (conv == PermutationConvention::PaperRecovery) return n + 1 - j;
    return ((j - 2) % n + n) % n + 1;
}

SearchOutcome run_qusa(const MarkedSequence& seq, RunMode mode) {
    const std::size_t n = seq.size();
    SearchOutcome out;
    if (mode == RunMode::Matrix) {
        const CVector v = mat_apply(build_U_tilde(seq), uniform_state(n));
        out = outcome_from_distribution(matrix_pipeline_distribution(v), mode);
    } else {
        require_circuit_size(n);
        const Statevector sv = run_pure(qusa_circuit(seq));
        out = outcome_from_distribution(measurement_distribution(sv), mode);
    }
    out.recovered_s = out.measured_index_j;
    return out;
}

int grover_iterations(std::size_t n) {
    if (n < 2) throw std::invalid_argument("grover_iterations: N must be >= 2");
    return static_cast<int>(std::floor(kPi / 4.0 * std::sqrt(static_cast<double>(n))));
}

SearchOutcome run_grover(std::size_t n, int s, int iterations, RunMode mode) {
    if (n < 2) throw std::invalid_argument("run_grover: N must be >= 2");
    if (s < 1 || static_cast<std::size_t>(s) > n) {
        throw std::invalid_argument("run_grover: s out of range");
    }
    if (iterations < 0) throw std::invalid_argument("run_grover: negative iteration count");

    SearchOutcome out;
    if (mode == RunMode::Matrix) {
        const CMatrix oracle = grover_phase_oracle(n, s);
        const CMatrix diffusion = grover_diffusion(n);
        CVector v = uniform_state(n);
        for (int k = 0; k < iterations; ++k) {
            v = mat_apply(oracle, v);
            v = mat_apply(diffusion, v);
        }
        out = outcome_from_distribution(matrix_pipeline_distribution(v), mode);
    } else {
        require_circuit_size(n);
        const Statevector sv = run_pure(grover_circuit(qubit_count_for(n), s, iterations));
        out = outcome_from_distribution(measurement_distribution(sv), mode);
    }
    out.recovered_s = out.measured_index_j;
    return out;
}

double grover_success_probability(std::size_t n, int iterations) {
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
    const double amp = std::sin((2.0 * iterations + 1.0) * theta);
    return amp * amp;
}

Circuit qcpa_circuit(const MarkedSequence& seq, PermutationConvention conv) {
    require_circuit_size(seq.size());
    Circuit c(qubit_count_for(seq.size()));
    append_h_layer(c);
    append(c, synthesize(build_U(seq.size()), SynthesisHint::QftFamily).circuit);
    append(c, synthesize(build_F(seq, conv), SynthesisHint::Permutation).circuit);
    return c;
}

Circuit qusa_circuit(const MarkedSequence& seq) {
    require_circuit_size(seq.size());
    Circuit c(qubit_count_for(seq.size()));
    append_h_layer(c);
    append(c, synthesize(build_U_tilde(seq), SynthesisHint::QftFamily).circuit);
    return c;
}

Circuit grover_circuit(int n_qubits, int s, int iterations) {
    if (n_qubits < 1) throw std::invalid_argument("grover_circuit: need at least one qubit");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (s < 1 || static_cast<std::size_t>(s) > dim) {
        throw std::invalid_argument("grover_circuit: s out of range");
    }

    std::vector<int> all_qubits(n_qubits);
    for (int q = 0; q < n_qubits; ++q) all_qubits[q] = q;
    const std::size_t marked = static_cast<std::size_t>(s - 1);

    Circuit c(n_qubits);
    append_h_layer(c);
    for (int k = 0; k < iterations; ++k) {
        // Phase oracle: flip the marked state's sign.
        std::vector<int> wraps;
        for (int q = 0; q < n_qubits; ++q) {
            if (!(marked & (std::size_t{1} << (n_qubits - 1 - q)))) wraps.push_back(q);
        }
        for (int q : wraps) c.push(GateOp::single(q, x_gate()));
        append_symmetric_phase(c, all_qubits, kPi);
        for (int q : wraps) c.push(GateOp::single(q, x_gate()));

        // Diffusion (inversion about the mean, up to a global sign).
        append_h_layer(c);
        for (int q = 0; q < n_qubits; ++q) c.push(GateOp::single(q, x_gate()));
        append_symmetric_phase(c, all_qubits, kPi);
        for (int q = 0; q < n_qubits; ++q) c.push(GateOp::single(q, x_gate()));
        append_h_layer(c);
    }
    return c;
}

}  // namespace qsearch
