#include "qsearch/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qsearch {

namespace {

void check_gate_indices(const GateOp& g, int n_qubits) {
    if (g.target < 0 || g.target >= n_qubits) {
        throw std::invalid_argument("gate target out of range");
    }
    if (g.kind == GateOp::Kind::Cx && (g.control < 0 || g.control >= n_qubits)) {
        throw std::invalid_argument("gate control out of range");
    }
}

// In-place single-qubit kernel over a span of amplitudes.
void apply_single_inplace(std::vector<Complex>& amps, int n_qubits, int target,
                          const std::array<Complex, 4>& m) {
    const std::size_t dim = amps.size();
    const std::size_t stride = std::size_t{1} << (n_qubits - 1 - target);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + stride];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_cx_inplace(std::vector<Complex>& amps, int n_qubits, int control, int target) {
    const std::size_t dim = amps.size();
    const std::size_t cbit = std::size_t{1} << (n_qubits - 1 - control);
    const std::size_t tbit = std::size_t{1} << (n_qubits - 1 - target);
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

void apply_gate_inplace(std::vector<Complex>& amps, int n_qubits, const GateOp& g) {
    if (g.kind == GateOp::Kind::Single) {
        apply_single_inplace(amps, n_qubits, g.target, g.matrix);
    } else {
        apply_cx_inplace(amps, n_qubits, g.control, g.target);
    }
}

// rho -> G rho G^dagger: apply the kernel to every column, then the
// conjugated kernel to every row.
void conjugate_gate_inplace(CMatrix& rho, int n_qubits, const GateOp& g) {
    const std::size_t dim = rho.rows();
    std::vector<Complex> scratch(dim);

    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) scratch[r] = rho(r, c);
        apply_gate_inplace(scratch, n_qubits, g);
        for (std::size_t r = 0; r < dim; ++r) rho(r, c) = scratch[r];
    }

    GateOp conj_gate = g;
    if (g.kind == GateOp::Kind::Single) {
        for (int i = 0; i < 4; ++i) conj_gate.matrix[i] = std::conj(g.matrix[i]);
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) scratch[c] = rho(r, c);
        apply_gate_inplace(scratch, n_qubits, conj_gate);
        for (std::size_t c = 0; c < dim; ++c) rho(r, c) = scratch[c];
    }
}

const std::array<Complex, 4>& pauli(int which) {
    static const std::array<Complex, 4> x = x_gate();
    static const std::array<Complex, 4> y = y_gate();
    static const std::array<Complex, 4> z = z_gate();
    switch (which) {
        case 1: return x;
        case 2: return y;
        default: return z;
    }
}

}  // namespace

Statevector Statevector::zero_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("statevector: need at least one qubit");
    Statevector sv;
    sv.n_qubits = n_qubits;
    std::vector<Complex> amps(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
    amps[0] = Complex(1.0, 0.0);
    sv.amplitudes = CVector(std::move(amps));
    return sv;
}

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("density matrix: need at least one qubit");
    DensityMatrix dm;
    dm.n_qubits = n_qubits;
    dm.rho = CMatrix(std::size_t{1} << n_qubits, std::size_t{1} << n_qubits);
    dm.rho(0, 0) = Complex(1.0, 0.0);
    return dm;
}

double DensityMatrix::trace_real() const { return trace(rho).real(); }

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < rho.rows(); ++r) {
        for (std::size_t c = r; c < rho.cols(); ++c) {
            worst = std::max(worst, std::abs(rho(r, c) - std::conj(rho(c, r))));
        }
    }
    return worst;
}

double DensityMatrix::min_eigenvalue() const {
    const std::vector<double> eig = hermitian_eigenvalues(rho);
    return eig.front();
}

NoiseModel NoiseModel::noiseless() { return NoiseModel{0.0, 0.0, Scope::AllGates, 0}; }

NoiseModel NoiseModel::first_n_gates(double p1, double p2, int n) {
    NoiseModel nm{p1, p2, Scope::FirstN, n};
    nm.validate();
    return nm;
}

NoiseModel NoiseModel::all_gates(double p1, double p2) {
    NoiseModel nm{p1, p2, Scope::AllGates, 0};
    nm.validate();
    return nm;
}

void NoiseModel::validate() const {
    if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0) {
        throw std::invalid_argument("noise model: probabilities must lie in [0,1]");
    }
    if (first_n < 0) throw std::invalid_argument("noise model: first_n must be >= 0");
}

std::string bitstring_of(std::size_t index, int n_qubits) {
    std::string out(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if (index & (std::size_t{1} << (n_qubits - 1 - q))) out[q] = '1';
    }
    return out;
}

Statevector apply_gate(const Statevector& state, const GateOp& g) {
    check_gate_indices(g, state.n_qubits);
    Statevector out = state;
    apply_gate_inplace(out.amplitudes.entries(), out.n_qubits, g);
    return out;
}

Statevector run_pure(const Circuit& c) {
    Statevector sv = Statevector::zero_state(c.n_qubits);
    for (const GateOp& g : c.ops) {
        check_gate_indices(g, c.n_qubits);
        apply_gate_inplace(sv.amplitudes.entries(), sv.n_qubits, g);
    }
    return sv;
}

std::vector<double> measurement_distribution(const Statevector& state) {
    std::vector<double> probs(state.amplitudes.dim());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(state.amplitudes[i]);
    return probs;
}

DensityMatrix apply_gate(const DensityMatrix& state, const GateOp& g) {
    check_gate_indices(g, state.n_qubits);
    DensityMatrix out = state;
    conjugate_gate_inplace(out.rho, out.n_qubits, g);
    return out;
}

DensityMatrix depolarize(const DensityMatrix& rho, const std::vector<int>& qubits, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarize: p must lie in [0,1]");
    if (qubits.empty() || qubits.size() > 2) {
        throw std::invalid_argument("depolarize: expected 1 or 2 qubit indices");
    }
    for (int q : qubits) {
        if (q < 0 || q >= rho.n_qubits) throw std::invalid_argument("depolarize: qubit out of range");
    }
    if (p == 0.0) return rho;

    DensityMatrix out = rho;
    const std::size_t dim = rho.rho.rows();
    auto accumulate_scaled = [&](const CMatrix& term, double w) {
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) out.rho(r, c) += w * term(r, c);
    };

    if (qubits.size() == 1) {
        const double w = p / 3.0;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) out.rho(r, c) *= (1.0 - p);
        for (int pp = 1; pp <= 3; ++pp) {
            CMatrix term = rho.rho;
            conjugate_gate_inplace(term, rho.n_qubits, GateOp::single(qubits[0], pauli(pp)));
            accumulate_scaled(term, w);
        }
    } else {
        const double w = p / 15.0;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) out.rho(r, c) *= (1.0 - p);
        for (int pa = 0; pa <= 3; ++pa) {
            for (int pb = 0; pb <= 3; ++pb) {
                if (pa == 0 && pb == 0) continue;
                CMatrix term = rho.rho;
                if (pa != 0) conjugate_gate_inplace(term, rho.n_qubits, GateOp::single(qubits[0], pauli(pa)));
                if (pb != 0) conjugate_gate_inplace(term, rho.n_qubits, GateOp::single(qubits[1], pauli(pb)));
                accumulate_scaled(term, w);
            }
        }
    }
    return out;
}

Circuit flag_noisy(const Circuit& c, const NoiseModel& nm) {
    Circuit out = c;
    for (std::size_t i = 0; i < out.ops.size(); ++i) {
        out.ops[i].noisy = nm.scope == NoiseModel::Scope::AllGates ||
                           i < static_cast<std::size_t>(nm.first_n);
    }
    return out;
}

std::vector<double> noisy_distribution(const Circuit& c, const NoiseModel& nm) {
    nm.validate();
    const Circuit flagged = flag_noisy(c, nm);
    DensityMatrix dm = DensityMatrix::zero_state(c.n_qubits);
    for (const GateOp& g : flagged.ops) {
        check_gate_indices(g, c.n_qubits);
        conjugate_gate_inplace(dm.rho, dm.n_qubits, g);
        if (g.noisy) {
            if (g.kind == GateOp::Kind::Single) {
                dm = depolarize(dm, {g.target}, nm.p1);
            } else {
                dm = depolarize(dm, {g.control, g.target}, nm.p2);
            }
        }
    }
    std::vector<double> probs(dm.rho.rows());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::max(0.0, dm.rho(i, i).real());
    return probs;
}

ShotResult sample_counts(const std::vector<double>& probabilities, int n_qubits,
                         std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
    double total = 0.0;
    for (double p : probabilities) {
        if (p < -1e-9) throw std::invalid_argument("sample_counts: negative probability");
        total += std::max(0.0, p);
    }
    if (total <= 0.0) throw std::invalid_argument("sample_counts: distribution sums to zero");

    std::vector<double> cumulative(probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        acc += std::max(0.0, probabilities[i]) / total;
        cumulative[i] = acc;
    }
    cumulative.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> tally(probabilities.size(), 0);
    for (std::int64_t shot = 0; shot < shots; ++shot) {
        // 53-bit uniform in [0,1); identical across platforms for a given seed.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        ++tally[static_cast<std::size_t>(it - cumulative.begin())];
    }

    ShotResult result;
    result.shots = shots;
    result.seed = seed;
    for (std::size_t i = 0; i < tally.size(); ++i) {
        result.counts[bitstring_of(i, n_qubits)] = tally[i];
    }
    return result;
}

ShotResult run_noisy(const Circuit& c, const NoiseModel& nm, std::int64_t shots,
                     std::uint64_t seed) {
    return sample_counts(noisy_distribution(c, nm), c.n_qubits, shots, seed);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords) {
    std::uint64_t h = splitmix64(base);
    for (std::uint64_t c : coords) h = splitmix64(h ^ c);
    return h;
}

}  // namespace qsearch
