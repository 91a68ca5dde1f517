#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace qsearch {

using Complex = std::complex<double>;

/// Dense complex vector. Entries are validated to be finite on construction.
class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t dim);
    explicit CVector(std::vector<Complex> entries);

    std::size_t dim() const { return entries_.size(); }
    Complex& operator[](std::size_t i) { return entries_[i]; }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }

    const std::vector<Complex>& entries() const { return entries_; }
    std::vector<Complex>& entries() { return entries_; }

    double norm() const;

private:
    std::vector<Complex> entries_;
};

/// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<Complex>& entries() const { return entries_; }

    bool is_square() const { return rows_ == cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// All N complex N-th roots of unity; entry k is e^{2*pi*i*k/N}.
CVector roots_of_unity(std::size_t n);

/// Normalized uniform superposition over n basis states (all entries 1/sqrt(n)).
CVector uniform_state(std::size_t n);

CVector mat_apply(const CMatrix& m, const CVector& v);
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& m);
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix subtract(const CMatrix& a, const CMatrix& b);
CMatrix scale(const Complex& c, const CMatrix& m);

Complex trace(const CMatrix& m);

/// Largest entrywise |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

/// True iff both M^dagger M and M M^dagger are within tol of the identity in max norm.
bool is_unitary(const CMatrix& m, double tol);

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi rotations.
std::vector<double> hermitian_eigenvalues(const CMatrix& m, double tol = 1e-13);

/// Text interchange: header "cmatrix ROWS COLS", then row-major "re,im" pairs.
void write_cmatrix(std::ostream& os, const CMatrix& m);
CMatrix read_cmatrix(std::istream& is);

}  // namespace qsearch
