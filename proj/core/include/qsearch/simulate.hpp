#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/complex_linalg.hpp"

namespace qsearch {

/// Pure state on n qubits, amplitudes indexed by basis state (qubit 0 = MSB).
struct Statevector {
    int n_qubits = 0;
    CVector amplitudes;

    static Statevector zero_state(int n_qubits);
};

/// Mixed state on n qubits.
struct DensityMatrix {
    int n_qubits = 0;
    CMatrix rho;

    static DensityMatrix zero_state(int n_qubits);

    double trace_real() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;
};

struct NoiseModel {
    enum class Scope { FirstN, AllGates };

    double p1 = 0.0;       // 1-qubit depolarizing probability
    double p2 = 0.0;       // CX depolarizing probability
    Scope scope = Scope::AllGates;
    int first_n = 0;       // used when scope == FirstN

    static NoiseModel noiseless();
    static NoiseModel first_n_gates(double p1, double p2, int n);
    static NoiseModel all_gates(double p1, double p2);

    void validate() const;
};

struct ShotResult {
    std::map<std::string, std::int64_t> counts;  // bitstring -> count
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
};

/// n-bit label of a basis index, leftmost bit most significant.
std::string bitstring_of(std::size_t index, int n_qubits);

Statevector apply_gate(const Statevector& state, const GateOp& g);
Statevector run_pure(const Circuit& c);

/// |amplitude|^2 per basis state.
std::vector<double> measurement_distribution(const Statevector& state);

DensityMatrix apply_gate(const DensityMatrix& state, const GateOp& g);

/// Depolarizing channel on 1 or 2 qubits: (1-p) rho + p/3 (X,Y,Z conjugations)
/// or (1-p) rho + p/15 (the 15 non-identity two-qubit Pauli conjugations).
DensityMatrix depolarize(const DensityMatrix& rho, const std::vector<int>& qubits, double p);

/// Copy of the circuit with noisy flags assigned by the scope rule.
Circuit flag_noisy(const Circuit& c, const NoiseModel& nm);

/// Diagonal of the density matrix after evolving |0..0><0..0| through the
/// circuit, depolarizing after every noisy-flagged op.
std::vector<double> noisy_distribution(const Circuit& c, const NoiseModel& nm);

/// Seeded multinomial sample of a distribution; identical inputs give
/// identical counts on any thread.
ShotResult sample_counts(const std::vector<double>& probabilities, int n_qubits,
                         std::int64_t shots, std::uint64_t seed);

/// Full noisy run: density evolution, then seeded sampling of the diagonal.
ShotResult run_noisy(const Circuit& c, const NoiseModel& nm, std::int64_t shots,
                     std::uint64_t seed);

/// splitmix64 step; used to derive independent per-cell RNG streams.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords);

}  // namespace qsearch
