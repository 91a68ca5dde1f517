#include "qsearch/search_oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace qsearch {

namespace {

int mod_n(int value, int n) {
    int r = value % n;
    return r < 0 ? r + n : r;
}

Complex root_power(const CVector& roots, long long e) {
    const long long n = static_cast<long long>(roots.dim());
    long long r = e % n;
    if (r < 0) r += n;
    return roots[static_cast<std::size_t>(r)];
}

}  // namespace

MarkedSequence::MarkedSequence(std::vector<int> seq, int marked) : x(std::move(seq)), s(marked) {
    if (x.empty()) throw std::invalid_argument("marked sequence must be non-empty");
    int ones = 0;
    for (int v : x) {
        if (v != 0 && v != 1) throw std::invalid_argument("marked sequence entries must be 0 or 1");
        ones += v;
    }
    if (ones != 1) throw std::invalid_argument("marked sequence must contain exactly one 1");
    if (s < 1 || static_cast<std::size_t>(s) > x.size() || x[s - 1] != 1) {
        throw std::invalid_argument("marked index does not point at the 1 entry");
    }
}

MarkedSequence MarkedSequence::single_marked(std::size_t n, int marked) {
    if (n == 0) throw std::invalid_argument("marked sequence must be non-empty");
    if (marked < 1 || static_cast<std::size_t>(marked) > n) {
        throw std::invalid_argument("marked index out of range");
    }
    std::vector<int> x(n, 0);
    x[marked - 1] = 1;
    return MarkedSequence(std::move(x), marked);
}

CMatrix build_U(std::size_t n) {
    if (n == 0) throw std::invalid_argument("build_U: N must be >= 1");
    const CVector roots = roots_of_unity(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix u(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t l = 1; l <= n; ++l) {
            u(k - 1, l - 1) =
                inv_sqrt_n * root_power(roots, static_cast<long long>(k) * (l - 1));
        }
    }
    return u;
}

CMatrix build_F(const MarkedSequence& seq, PermutationConvention conv) {
    const int n = static_cast<int>(seq.size());
    CMatrix f(seq.size(), seq.size());
    for (int j = 1; j <= n; ++j) {
        for (int l = 1; l <= n; ++l) {
            const int idx = conv == PermutationConvention::RowStart ? mod_n(j + l - 2, n)
                                                                    : mod_n(l - j, n);
            f(j - 1, l - 1) = Complex(static_cast<double>(seq.x[idx]), 0.0);
        }
    }
    return f;
}

CMatrix build_U_tilde(const MarkedSequence& seq) {
    const std::size_t n = seq.size();
    CMatrix u = build_U(n);
    if (n == 1) return u;  // s = N = 1; nothing to exchange

    const CVector roots = roots_of_unity(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    CMatrix ut(n, n);
    // Rows 1..N-1: exponentiate the phase of U_{kl} by f(x_k), keeping 1/sqrt(N).
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        const bool marked = static_cast<int>(k) == seq.s;
        for (std::size_t l = 1; l <= n; ++l) {
            ut(k - 1, l - 1) =
                marked ? Complex(inv_sqrt_n, 0.0)
                       : inv_sqrt_n * root_power(roots, static_cast<long long>(k) * (l - 1));
        }
    }

    Complex column_sum(0.0, 0.0);
    for (std::size_t k = 1; k + 1 <= n; ++k) column_sum += ut(k - 1, n - 1);
    if (std::abs(column_sum) < 1e-14) {
        throw std::runtime_error("build_U_tilde: degenerate construction, last-column sum is ~0");
    }
    const Complex s_scalar = inv_sqrt_n / (-column_sum);
    Complex power(1.0, 0.0);
    for (std::size_t l = 1; l <= n; ++l) {
        ut(n - 1, l - 1) = inv_sqrt_n * power;
        power *= s_scalar;
    }
    return ut;
}

CMatrix grover_phase_oracle(std::size_t n, int s) {
    if (n == 0) throw std::invalid_argument("grover_phase_oracle: N must be >= 1");
    if (s < 1 || static_cast<std::size_t>(s) > n) {
        throw std::invalid_argument("grover_phase_oracle: s out of range");
    }
    CMatrix m = CMatrix::identity(n);
    m(s - 1, s - 1) = Complex(-1.0, 0.0);
    return m;
}

CMatrix grover_diffusion(std::size_t n) {
    if (n < 2) throw std::invalid_argument("grover_diffusion: N must be >= 2");
    CMatrix m(n, n);
    const double off = 2.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            m(r, c) = Complex(off - (r == c ? 1.0 : 0.0), 0.0);
        }
    }
    return m;
}

}  // namespace qsearch
