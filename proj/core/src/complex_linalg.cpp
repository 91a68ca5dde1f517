#include "qsearch/complex_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

void require_finite(const std::vector<Complex>& entries) {
    for (const Complex& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("non-finite complex entry");
        }
    }
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

CVector::CVector(std::size_t dim) : entries_(dim, Complex(0.0, 0.0)) {}

CVector::CVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    require_finite(entries_);
}

double CVector::norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("entry count does not match rows*cols");
    }
    require_finite(entries_);
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
}

CVector roots_of_unity(std::size_t n) {
    if (n == 0) throw std::invalid_argument("roots_of_unity: N must be >= 1");
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        out[k] = Complex(std::cos(theta), std::sin(theta));
    }
    return CVector(std::move(out));
}

CVector uniform_state(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_state: N must be >= 1");
    double a = 1.0 / std::sqrt(static_cast<double>(n));
    return CVector(std::vector<Complex>(n, Complex(a, 0.0)));
}

CVector mat_apply(const CMatrix& m, const CVector& v) {
    if (m.cols() != v.dim()) throw std::invalid_argument("mat_apply: dimension mismatch");
    CVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex acc(0.0, 0.0);
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex arow = a(r, k);
            if (arow == Complex(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += arow * b(k, c);
            }
        }
    }
    return out;
}

CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(c, r) = std::conj(m(r, c));
        }
    }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex f = a(ar, ac);
            if (f == Complex(0.0, 0.0)) continue;
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
                }
            }
        }
    }
    return out;
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("add: dimension mismatch");
    }
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

CMatrix subtract(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("subtract: dimension mismatch");
    }
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

CMatrix scale(const Complex& c, const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = c * m(i, j);
    return out;
}

Complex trace(const CMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("trace: matrix must be square");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
    return acc;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

double max_abs_diff(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

bool is_unitary(const CMatrix& m, double tol) {
    if (!m.is_square()) throw std::invalid_argument("is_unitary: matrix must be square");
    const CMatrix id = CMatrix::identity(m.rows());
    const CMatrix mh = adjoint(m);
    return max_abs_diff(matmul(mh, m), id) < tol && max_abs_diff(matmul(m, mh), id) < tol;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m, double tol) {
    if (!m.is_square()) throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
    const std::size_t n = m.rows();
    CMatrix a = m;
    // Symmetrize to defend against tiny Hermiticity drift in the input.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (a(i, j) + std::conj(m(j, i)));

    // Cyclic complex Jacobi sweeps.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < tol) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                if (std::abs(apq) < tol * 1e-3) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Phase that makes the off-diagonal entry real, then a classical
                // 2x2 symmetric rotation.
                const Complex phase = apq / std::abs(apq);
                const double g = std::abs(apq);
                const double theta = 0.5 * std::atan2(2.0 * g, app - aqq);
                const double c = std::cos(theta);
                const Complex s = std::sin(theta) * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp + std::conj(s) * akq;
                    a(k, q) = -s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + s * aqk;
                    a(q, k) = -std::conj(s) * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

void write_cmatrix(std::ostream& os, const CMatrix& m) {
    os << "cmatrix " << m.rows() << " " << m.cols() << "\n";
    char buf[64];
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Complex& z = m(r, c);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", z.real(), z.imag());
            os << buf << (c + 1 == m.cols() ? "" : " ");
        }
        os << "\n";
    }
}

CMatrix read_cmatrix(std::istream& is) {
    std::string tag;
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (!(is >> tag >> rows >> cols) || tag != "cmatrix") {
        throw std::invalid_argument("read_cmatrix: expected 'cmatrix ROWS COLS' header");
    }
    if (rows == 0 || cols == 0 || rows > 65536 || cols > 65536) {
        throw std::invalid_argument("read_cmatrix: bad dimensions");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        std::string pair;
        if (!(is >> pair)) throw std::invalid_argument("read_cmatrix: truncated entry list");
        const std::size_t comma = pair.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("read_cmatrix: entry is not a re,im pair");
        }
        try {
            entries.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("read_cmatrix: malformed number in entry");
        }
    }
    return CMatrix(rows, cols, std::move(entries));
}

}  // namespace qsearch
