#include "qsearch/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsearch/simulate.hpp"

namespace qsearch {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    int bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    return bits;
}

std::array<Complex, 4> rz(double theta) {
    return {Complex(std::cos(theta / 2), -std::sin(theta / 2)), Complex(0, 0), Complex(0, 0),
            Complex(std::cos(theta / 2), std::sin(theta / 2))};
}

std::array<Complex, 4> ry(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0)};
}

std::array<Complex, 4> mul2(const std::array<Complex, 4>& l, const std::array<Complex, 4>& r) {
    return {l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3],
            l[2] * r[0] + l[3] * r[2], l[2] * r[1] + l[3] * r[3]};
}

bool near_identity_2x2(const std::array<Complex, 4>& m, double tol) {
    return std::abs(m[0] - 1.0) < tol && std::abs(m[1]) < tol && std::abs(m[2]) < tol &&
           std::abs(m[3] - 1.0) < tol;
}

// Symmetric controlled phase lowered to {P, CX}.
void append_cphase(Circuit& c, int control, int target, double theta) {
    c.push(GateOp::single(control, phase_gate(theta / 2)));
    c.push(GateOp::single(target, phase_gate(theta / 2)));
    c.push(GateOp::cx(control, target));
    c.push(GateOp::single(target, phase_gate(-theta / 2)));
    c.push(GateOp::cx(control, target));
}

void append_swap(Circuit& c, int a, int b) {
    c.push(GateOp::cx(a, b));
    c.push(GateOp::cx(b, a));
    c.push(GateOp::cx(a, b));
}

Circuit qft_rotations_circuit(int n) {
    Circuit c(n);
    for (int t = 0; t < n; ++t) {
        c.push(GateOp::single(t, h_gate()));
        for (int ctrl = t + 1; ctrl < n; ++ctrl) {
            append_cphase(c, ctrl, t, 2.0 * kPi / std::pow(2.0, ctrl - t + 1));
        }
    }
    return c;
}

std::size_t bit_reverse(std::size_t v, int n_bits) {
    std::size_t out = 0;
    for (int b = 0; b < n_bits; ++b) {
        if (v & (std::size_t{1} << b)) out |= std::size_t{1} << (n_bits - 1 - b);
    }
    return out;
}

/// Realize a unit-modulus diagonal as one phase gate per qubit when the
/// phases are linear in the bits (the global phase folds into qubit 0).
bool try_append_linear_phase_layer(Circuit& c, const std::vector<Complex>& diag, double tol) {
    const std::size_t dim = diag.size();
    const int n = log2_exact(dim);
    for (const Complex& z : diag) {
        if (std::abs(std::abs(z) - 1.0) > tol) return false;
    }
    const Complex base = diag[0];
    std::vector<Complex> per_qubit(n);
    for (int q = 0; q < n; ++q) {
        per_qubit[q] = diag[std::size_t{1} << (n - 1 - q)] / base;
    }
    for (std::size_t m = 0; m < dim; ++m) {
        Complex predicted = base;
        for (int q = 0; q < n; ++q) {
            if (m & (std::size_t{1} << (n - 1 - q))) predicted *= per_qubit[q];
        }
        if (std::abs(predicted - diag[m]) > tol) return false;
    }
    for (int q = 0; q < n; ++q) {
        Complex hi = per_qubit[q];
        Complex lo(1.0, 0.0);
        if (q == 0) {  // fold the global phase here
            hi *= base;
            lo = base;
        }
        if (std::abs(hi - 1.0) < 1e-15 && std::abs(lo - 1.0) < 1e-15) continue;
        c.push(GateOp::single(q, {lo, Complex(0, 0), Complex(0, 0), hi}));
    }
    return true;
}

/// Exact general diagonal: one pattern-controlled phase per index.
void append_general_diagonal(Circuit& c, const std::vector<Complex>& diag) {
    const std::size_t dim = diag.size();
    const int n = log2_exact(dim);
    std::vector<int> all_qubits(n);
    for (int q = 0; q < n; ++q) all_qubits[q] = q;
    for (std::size_t m = 0; m < dim; ++m) {
        const double theta = std::arg(diag[m]);
        if (std::abs(theta) < 1e-15) continue;
        std::vector<int> wrapped;
        for (int q = 0; q < n; ++q) {
            if (!(m & (std::size_t{1} << (n - 1 - q)))) wrapped.push_back(q);
        }
        for (int q : wrapped) c.push(GateOp::single(q, x_gate()));
        append_symmetric_phase(c, all_qubits, theta);
        for (int q : wrapped) c.push(GateOp::single(q, x_gate()));
    }
}

struct ZyzAngles {
    double alpha;  // global phase of the 2x2
    double beta, gamma, delta;
};

ZyzAngles zyz_decompose(const std::array<Complex, 4>& u) {
    const Complex det = u[0] * u[3] - u[1] * u[2];
    const double alpha = 0.5 * std::arg(det);
    const Complex scale(std::cos(-alpha), std::sin(-alpha));
    const std::array<Complex, 4> w = {scale * u[0], scale * u[1], scale * u[2], scale * u[3]};

    const double gamma = 2.0 * std::atan2(std::abs(w[2]), std::abs(w[0]));
    double beta = 0.0;
    double delta = 0.0;
    if (std::abs(w[0]) > 1e-12 && std::abs(w[2]) > 1e-12) {
        const double sum = 2.0 * std::arg(w[3]);
        const double diff = 2.0 * std::arg(w[2]);
        beta = (sum + diff) / 2.0;
        delta = (sum - diff) / 2.0;
    } else if (std::abs(w[2]) <= 1e-12) {
        beta = 2.0 * std::arg(w[3]);  // gamma ~ 0; only beta+delta matters
    } else {
        beta = 2.0 * std::arg(w[2]);  // gamma ~ pi; only beta-delta matters
    }
    return {alpha, beta, gamma, delta};
}

/// Multi-controlled single-qubit unitary; controls may require value 0
/// (X-wrapped). Pattern bit q is the required value of control q.
void append_mcu(Circuit& c, const std::vector<int>& controls,
                const std::vector<bool>& control_values, int target,
                const std::array<Complex, 4>& u) {
    if (near_identity_2x2(u, 1e-15)) return;
    if (controls.empty()) {
        c.push(GateOp::single(target, u));
        return;
    }
    std::vector<int> wrapped;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (!control_values[i]) wrapped.push_back(controls[i]);
    }
    for (int q : wrapped) c.push(GateOp::single(q, x_gate()));

    const bool is_x = std::abs(u[0]) < 1e-15 && std::abs(u[3]) < 1e-15 &&
                      std::abs(u[1] - 1.0) < 1e-15 && std::abs(u[2] - 1.0) < 1e-15;
    const bool is_diag = std::abs(u[1]) < 1e-15 && std::abs(u[2]) < 1e-15;
    if (is_x) {
        append_mcx(c, controls, target);
        for (int q : wrapped) c.push(GateOp::single(q, x_gate()));
        return;
    }
    if (is_diag) {
        // diag(d0, d1) = phase(arg d0 on the controls) * controlled-P(arg d1/d0).
        const double base = std::arg(u[0]);
        const double rel = std::arg(u[3] / u[0]);
        if (std::abs(base) > 1e-15) append_symmetric_phase(c, controls, base);
        if (std::abs(rel) > 1e-15) {
            std::vector<int> all = controls;
            all.push_back(target);
            append_symmetric_phase(c, all, rel);
        }
        for (int q : wrapped) c.push(GateOp::single(q, x_gate()));
        return;
    }

    const ZyzAngles ang = zyz_decompose(u);
    const std::array<Complex, 4> a = mul2(rz(ang.beta), ry(ang.gamma / 2));
    const std::array<Complex, 4> b = mul2(ry(-ang.gamma / 2), rz(-(ang.delta + ang.beta) / 2));
    const std::array<Complex, 4> cc = rz((ang.delta - ang.beta) / 2);

    if (!near_identity_2x2(cc, 1e-15)) c.push(GateOp::single(target, cc));
    append_mcx(c, controls, target);
    if (!near_identity_2x2(b, 1e-15)) c.push(GateOp::single(target, b));
    append_mcx(c, controls, target);
    if (!near_identity_2x2(a, 1e-15)) c.push(GateOp::single(target, a));
    if (std::abs(ang.alpha) > 1e-15) append_symmetric_phase(c, controls, ang.alpha);

    for (int q : wrapped) c.push(GateOp::single(q, x_gate()));
}

void append_two_level_block(Circuit& c, int n, std::size_t i, std::size_t j,
                            const std::array<Complex, 4>& block) {
    // Gray walk from i to j, one bit at a time.
    std::vector<std::size_t> seq{i};
    std::size_t cur = i;
    const std::size_t diff = i ^ j;
    for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        if (diff & bit) {
            cur ^= bit;
            seq.push_back(cur);
        }
    }

    auto mcx_step = [&](std::size_t from, std::size_t to) {
        const std::size_t bit = from ^ to;
        const int target = n - 1 - log2_exact(bit);
        std::vector<int> controls;
        std::vector<bool> values;
        for (int q = 0; q < n; ++q) {
            if (q == target) continue;
            controls.push_back(q);
            values.push_back((to & (std::size_t{1} << (n - 1 - q))) != 0);
        }
        append_mcu(c, controls, values, target, x_gate());
    };

    const std::size_t steps = seq.size() - 1;
    for (std::size_t t = 1; t < steps; ++t) mcx_step(seq[t - 1], seq[t]);

    const std::size_t lo_state = seq[steps - 1];
    const std::size_t hi_state = seq[steps];
    const std::size_t bit = lo_state ^ hi_state;
    const int target = n - 1 - log2_exact(bit);
    std::vector<int> controls;
    std::vector<bool> values;
    for (int q = 0; q < n; ++q) {
        if (q == target) continue;
        controls.push_back(q);
        values.push_back((hi_state & (std::size_t{1} << (n - 1 - q))) != 0);
    }
    std::array<Complex, 4> oriented = block;
    if (lo_state & bit) {
        // The chained state sits on the bit=1 side; swap the block basis.
        oriented = {block[3], block[2], block[1], block[0]};
    }
    append_mcu(c, controls, values, target, oriented);

    for (std::size_t t = steps - 1; t >= 1; --t) mcx_step(seq[t - 1], seq[t]);
}

Circuit generic_circuit(const CMatrix& m) {
    const int n = log2_exact(m.rows());
    Circuit c(n);
    const std::vector<TwoLevelUnitary> factors = two_level_decompose(m);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        append_two_level_block(c, n, it->i, it->j, it->block);
    }
    return c;
}

std::optional<std::vector<std::size_t>> extract_permutation(const CMatrix& m, double tol) {
    const std::size_t dim = m.rows();
    std::vector<std::size_t> perm(dim, dim);
    std::vector<bool> row_used(dim, false);
    for (std::size_t col = 0; col < dim; ++col) {
        for (std::size_t row = 0; row < dim; ++row) {
            const double mag = std::abs(m(row, col));
            if (mag > tol) {
                if (std::abs(m(row, col) - Complex(1.0, 0.0)) > tol) return std::nullopt;
                if (perm[col] != dim || row_used[row]) return std::nullopt;
                perm[col] = row;
                row_used[row] = true;
            }
        }
        if (perm[col] == dim) return std::nullopt;
    }
    return perm;
}

struct GeneralizedPermutation {
    std::vector<std::size_t> perm;   // column -> row
    std::vector<Complex> phases;     // phase at the destination row
};

std::optional<GeneralizedPermutation> extract_generalized_permutation(const CMatrix& m,
                                                                      double tol) {
    const std::size_t dim = m.rows();
    GeneralizedPermutation gp;
    gp.perm.assign(dim, dim);
    gp.phases.assign(dim, Complex(0, 0));
    std::vector<bool> row_used(dim, false);
    for (std::size_t col = 0; col < dim; ++col) {
        for (std::size_t row = 0; row < dim; ++row) {
            const double mag = std::abs(m(row, col));
            if (mag > tol) {
                if (std::abs(mag - 1.0) > tol) return std::nullopt;
                if (gp.perm[col] != dim || row_used[row]) return std::nullopt;
                gp.perm[col] = row;
                gp.phases[row] = m(row, col);
                row_used[row] = true;
            }
        }
        if (gp.perm[col] == dim) return std::nullopt;
    }
    return gp;
}

std::optional<Circuit> try_qft_family(const CMatrix& m) {
    const std::size_t dim = m.rows();
    const int n = log2_exact(dim);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(dim));
    const CVector roots = roots_of_unity(dim);
    const double tol = 1e-9;

    // Route A: D_row * QFT * D_col with arbitrary unit-modulus diagonals.
    bool flat = true;
    for (std::size_t a = 0; a < dim && flat; ++a) {
        for (std::size_t b = 0; b < dim && flat; ++b) {
            if (std::abs(std::abs(m(a, b)) - inv_sqrt_n) > tol) flat = false;
        }
    }
    if (flat) {
        std::vector<Complex> d_row(dim);
        std::vector<Complex> d_col(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            d_row[a] = m(a, 0) / inv_sqrt_n;  // with theta_col(0) fixed to 0
        }
        for (std::size_t b = 0; b < dim; ++b) {
            d_col[b] = m(0, b) / (inv_sqrt_n * d_row[0]);
        }
        bool match = true;
        for (std::size_t a = 0; a < dim && match; ++a) {
            for (std::size_t b = 0; b < dim && match; ++b) {
                const Complex predicted = inv_sqrt_n * d_row[a] * d_col[b] * roots[(a * b) % dim];
                if (std::abs(predicted - m(a, b)) > tol) match = false;
            }
        }
        if (match) {
            Circuit c(n);
            if (!try_append_linear_phase_layer(c, d_col, 1e-11)) {
                append_general_diagonal(c, d_col);
            }
            append(c, qft_circuit(n));
            if (!try_append_linear_phase_layer(c, d_row, 1e-11)) {
                append_general_diagonal(c, d_row);
            }
            return c;
        }
    }

    // Route B: generalized permutation on top of the collapse-gate form
    // QFT * diag(w^b); covers the one-gate oracle (a row swap of it).
    CMatrix un(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            un(a, b) = inv_sqrt_n * roots[(a * b + b) % dim];
        }
    }
    const CMatrix residue = matmul(m, adjoint(un));
    if (auto gp = extract_generalized_permutation(residue, tol)) {
        Circuit c(n);
        std::vector<Complex> d_col(dim);
        for (std::size_t b = 0; b < dim; ++b) d_col[b] = roots[b % dim];
        if (!try_append_linear_phase_layer(c, d_col, 1e-11)) {
            append_general_diagonal(c, d_col);
        }
        append(c, qft_circuit(n));
        append(c, permutation_circuit(n, gp->perm));
        bool unit_phases = true;
        for (const Complex& p : gp->phases) {
            if (std::abs(p - Complex(1.0, 0.0)) > 1e-12) unit_phases = false;
        }
        if (!unit_phases) {
            if (!try_append_linear_phase_layer(c, gp->phases, 1e-11)) {
                append_general_diagonal(c, gp->phases);
            }
        }
        return c;
    }

    return std::nullopt;
}

}  // namespace

std::vector<TwoLevelUnitary> two_level_decompose(const CMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("two_level_decompose: matrix must be square");
    if (!is_unitary(m, 1e-10)) {
        throw std::invalid_argument("two_level_decompose: matrix is not unitary");
    }
    const std::size_t dim = m.rows();
    if (dim == 1) {
        if (std::abs(m(0, 0) - Complex(1.0, 0.0)) > 1e-10) {
            throw std::invalid_argument("two_level_decompose: cannot factor a 1x1 phase");
        }
        return {};
    }

    constexpr double kEps = 1e-13;
    CMatrix a = m;
    // Recorded rotations satisfy R_k ... R_1 M = I; emitted factors are their
    // adjoints in reverse application order.
    std::vector<TwoLevelUnitary> recorded;

    auto record_phase = [&](std::size_t idx, Complex phase) {
        // Apply diag(conj(phase)) at idx to A, then fold or record the factor.
        for (std::size_t col = 0; col < dim; ++col) a(idx, col) *= std::conj(phase);
        if (!recorded.empty()) {
            TwoLevelUnitary& last = recorded.back();
            if (last.i == idx || last.j == idx) {
                const bool first_slot = last.i == idx;
                const Complex cp = std::conj(phase);
                if (first_slot) {
                    last.block[0] *= cp;
                    last.block[1] *= cp;
                } else {
                    last.block[2] *= cp;
                    last.block[3] *= cp;
                }
                return;
            }
        }
        TwoLevelUnitary f;
        if (idx + 1 < dim) {
            f.i = idx;
            f.j = idx + 1;
            f.block = {std::conj(phase), Complex(0, 0), Complex(0, 0), Complex(1, 0)};
        } else {
            f.i = idx - 1;
            f.j = idx;
            f.block = {Complex(1, 0), Complex(0, 0), Complex(0, 0), std::conj(phase)};
        }
        recorded.push_back(f);
    };

    for (std::size_t c = 0; c + 1 < dim; ++c) {
        bool eliminated = false;
        for (std::size_t r = c + 1; r < dim; ++r) {
            if (std::abs(a(r, c)) <= kEps) continue;
            eliminated = true;
            const Complex top = a(c, c);
            const Complex bot = a(r, c);
            const double nrm = std::sqrt(std::norm(top) + std::norm(bot));
            const Complex g00 = std::conj(top) / nrm;
            const Complex g01 = std::conj(bot) / nrm;
            const Complex g10 = bot / nrm;
            const Complex g11 = -top / nrm;
            for (std::size_t col = 0; col < dim; ++col) {
                const Complex vc = a(c, col);
                const Complex vr = a(r, col);
                a(c, col) = g00 * vc + g01 * vr;
                a(r, col) = g10 * vc + g11 * vr;
            }
            recorded.push_back(TwoLevelUnitary{c, r, {g00, g01, g10, g11}});
        }
        const Complex diag = a(c, c);
        if (std::abs(diag - Complex(1.0, 0.0)) > kEps) {
            if (eliminated) {
                // Numerically the diagonal lands on 1 after a full column sweep;
                // a residual phase here still needs normalizing.
                record_phase(c, diag / std::abs(diag));
            } else {
                record_phase(c, diag);
            }
        }
    }
    const Complex last = a(dim - 1, dim - 1);
    if (std::abs(last - Complex(1.0, 0.0)) > kEps) record_phase(dim - 1, last);

    std::vector<TwoLevelUnitary> factors;
    factors.reserve(recorded.size());
    for (const TwoLevelUnitary& r : recorded) {
        TwoLevelUnitary f;
        f.i = r.i;
        f.j = r.j;
        f.block = {std::conj(r.block[0]), std::conj(r.block[2]), std::conj(r.block[1]),
                   std::conj(r.block[3])};
        factors.push_back(f);
    }
    return factors;
}

CMatrix embed_two_level(std::size_t dim, const TwoLevelUnitary& factor) {
    if (factor.i >= factor.j || factor.j >= dim) {
        throw std::invalid_argument("embed_two_level: bad index pair");
    }
    CMatrix m = CMatrix::identity(dim);
    m(factor.i, factor.i) = factor.block[0];
    m(factor.i, factor.j) = factor.block[1];
    m(factor.j, factor.i) = factor.block[2];
    m(factor.j, factor.j) = factor.block[3];
    return m;
}

void append(Circuit& dst, const Circuit& src) {
    if (dst.n_qubits != src.n_qubits) throw std::invalid_argument("append: qubit count mismatch");
    dst.ops.insert(dst.ops.end(), src.ops.begin(), src.ops.end());
}

void append_symmetric_phase(Circuit& c, const std::vector<int>& qubits, double theta) {
    const int m = static_cast<int>(qubits.size());
    if (m == 0) throw std::invalid_argument("append_symmetric_phase: empty qubit set");
    const double unit = theta / std::pow(2.0, m - 1);

    for (int level = 0; level < m; ++level) {
        const int acc = qubits[level];
        // Subsets of {0..level-1} in Gray order, accumulated onto `acc`.
        c.push(GateOp::single(acc, phase_gate(unit)));
        if (level == 0) continue;
        std::size_t gray_prev = 0;
        int popcount_prev = 0;
        const std::size_t subsets = std::size_t{1} << level;
        for (std::size_t t = 1; t < subsets; ++t) {
            const std::size_t gray = t ^ (t >> 1);
            const std::size_t changed = gray ^ gray_prev;
            int flip_bit = 0;
            while (!(changed & (std::size_t{1} << flip_bit))) ++flip_bit;
            c.push(GateOp::cx(qubits[flip_bit], acc));
            popcount_prev += (gray & (std::size_t{1} << flip_bit)) ? 1 : -1;
            const double sign = (popcount_prev % 2 == 0) ? 1.0 : -1.0;
            c.push(GateOp::single(acc, phase_gate(sign * unit)));
            gray_prev = gray;
        }
        // Final Gray element is the single top bit; one CX restores acc.
        c.push(GateOp::cx(qubits[level - 1], acc));
    }
}

void append_mcx(Circuit& c, const std::vector<int>& controls, int target) {
    if (controls.empty()) {
        c.push(GateOp::single(target, x_gate()));
        return;
    }
    std::vector<int> all = controls;
    all.push_back(target);
    c.push(GateOp::single(target, h_gate()));
    append_symmetric_phase(c, all, kPi);
    c.push(GateOp::single(target, h_gate()));
}

void append_basis_transposition(Circuit& c, int n, std::size_t a, std::size_t b) {
    if (a == b) return;
    const std::size_t dim = std::size_t{1} << n;
    if (a >= dim || b >= dim) throw std::invalid_argument("transposition: state out of range");
    const std::size_t diff = a ^ b;
    int pivot_bit = 0;
    while (!(diff & (std::size_t{1} << pivot_bit))) ++pivot_bit;
    const std::size_t pivot_mask = std::size_t{1} << pivot_bit;
    const int pivot_qubit = n - 1 - pivot_bit;
    const std::size_t lo = (a & pivot_mask) ? b : a;

    std::vector<int> conj_targets;
    for (int bit = 0; bit < n; ++bit) {
        if (bit == pivot_bit) continue;
        if (diff & (std::size_t{1} << bit)) conj_targets.push_back(n - 1 - bit);
    }
    for (int t : conj_targets) c.push(GateOp::cx(pivot_qubit, t));

    std::vector<int> controls;
    std::vector<bool> values;
    for (int q = 0; q < n; ++q) {
        if (q == pivot_qubit) continue;
        controls.push_back(q);
        values.push_back((lo & (std::size_t{1} << (n - 1 - q))) != 0);
    }
    append_mcu(c, controls, values, pivot_qubit, x_gate());

    for (auto it = conj_targets.rbegin(); it != conj_targets.rend(); ++it) {
        c.push(GateOp::cx(pivot_qubit, *it));
    }
}

Circuit qft_circuit(int n) {
    Circuit c = qft_rotations_circuit(n);
    for (int q = 0; q < n / 2; ++q) append_swap(c, q, n - 1 - q);
    return c;
}

Circuit shift_circuit(int n, std::size_t z) {
    const std::size_t dim = std::size_t{1} << n;
    Circuit c(n);
    z %= dim;
    if (z == 0) return c;

    // shift_z = QFT^dagger diag(w^{az}) QFT; the QFT bit-reversal swaps cancel
    // against the diagonal relabeling, leaving only the rotation cascades.
    const CVector roots = roots_of_unity(dim);
    std::vector<Complex> diag(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        diag[a] = roots[(bit_reverse(a, n) * z) % dim];
    }
    const Circuit rot = qft_rotations_circuit(n);
    append(c, rot);
    if (!try_append_linear_phase_layer(c, diag, 1e-11)) {
        append_general_diagonal(c, diag);  // not reachable for shift diagonals
    }
    append(c, adjoint_circuit(rot));
    return c;
}

Circuit permutation_circuit(int n, const std::vector<std::size_t>& perm) {
    const std::size_t dim = std::size_t{1} << n;
    if (perm.size() != dim) throw std::invalid_argument("permutation_circuit: size mismatch");

    Circuit c(n);
    bool identity = true;
    for (std::size_t i = 0; i < dim; ++i) {
        if (perm[i] != i) identity = false;
    }
    if (identity) return c;

    // Affine index maps get the O(n^2) Fourier-shift network.
    bool plus_shift = true;
    bool minus_shift = true;
    const std::size_t z = perm[0];
    for (std::size_t i = 0; i < dim; ++i) {
        if (perm[i] != (i + z) % dim) plus_shift = false;
        if (perm[i] != (z + dim - i % dim) % dim) minus_shift = false;
    }
    if (plus_shift) return shift_circuit(n, z);
    if (minus_shift) {
        for (int q = 0; q < n; ++q) c.push(GateOp::single(q, x_gate()));
        append(c, shift_circuit(n, (z + 1) % dim));
        return c;
    }

    // General case: cycle decomposition into basis-state transpositions.
    std::vector<bool> visited(dim, false);
    for (std::size_t start = 0; start < dim; ++start) {
        if (visited[start] || perm[start] == start) {
            visited[start] = true;
            continue;
        }
        std::vector<std::size_t> cycle;
        std::size_t cur = start;
        while (!visited[cur]) {
            visited[cur] = true;
            cycle.push_back(cur);
            cur = perm[cur];
        }
        for (std::size_t t = 1; t < cycle.size(); ++t) {
            append_basis_transposition(c, n, cycle[0], cycle[t]);
        }
    }
    return c;
}

SynthesisResult synthesize(const CMatrix& m, SynthesisHint hint) {
    if (!m.is_square()) throw std::invalid_argument("synthesize: matrix must be square");
    if (!is_power_of_two(m.rows()) || m.rows() < 2) {
        throw std::invalid_argument("synthesize: dimension must be a power of two (>= 2)");
    }
    if (!is_unitary(m, 1e-10)) throw std::invalid_argument("synthesize: matrix is not unitary");

    const int n = log2_exact(m.rows());
    SynthesisResult result;

    switch (hint) {
        case SynthesisHint::QftFamily: {
            if (auto c = try_qft_family(m)) {
                result.circuit = std::move(*c);
                result.path = "qft-family";
                return result;
            }
            result.circuit = generic_circuit(m);
            result.fallback = true;
            result.path = "generic (qft-family hint did not match)";
            return result;
        }
        case SynthesisHint::Permutation: {
            if (auto perm = extract_permutation(m, 1e-10)) {
                result.circuit = permutation_circuit(n, *perm);
                result.path = "permutation";
                return result;
            }
            result.circuit = generic_circuit(m);
            result.fallback = true;
            result.path = "generic (permutation hint did not match)";
            return result;
        }
        case SynthesisHint::Generic:
        default:
            result.circuit = generic_circuit(m);
            result.path = "generic";
            return result;
    }
}

CMatrix circuit_unitary(const Circuit& c) {
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    CMatrix u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        Statevector sv;
        sv.n_qubits = c.n_qubits;
        std::vector<Complex> amps(dim, Complex(0, 0));
        amps[col] = Complex(1, 0);
        sv.amplitudes = CVector(std::move(amps));
        for (const GateOp& g : c.ops) sv = apply_gate(sv, g);
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = sv.amplitudes[row];
    }
    return u;
}

double phase_aligned_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("phase_aligned_distance: dimension mismatch");
    }
    std::size_t best_r = 0;
    std::size_t best_c = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (std::abs(a(r, c)) > best) {
                best = std::abs(a(r, c));
                best_r = r;
                best_c = c;
            }
        }
    }
    const Complex bv = b(best_r, best_c);
    if (std::abs(bv) < 1e-14) return max_abs_diff(a, b);
    const Complex phase = (a(best_r, best_c) / std::abs(a(best_r, best_c))) * (std::abs(bv) / bv);
    return max_abs_diff(a, scale(phase, b));
}

}  // namespace qsearch
