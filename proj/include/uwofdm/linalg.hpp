#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace uwofdm {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense complex matrix, row major. Sized for this problem (N <= a few
// hundred); everything is O(N^2)/O(N^3) direct evaluation.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static CMatrix identity(std::size_t n);
};

CMatrix matmul(const CMatrix& lhs, const CMatrix& rhs);
CVec matvec(const CMatrix& m, const CVec& v);
CMatrix hermitian(const CMatrix& m);
CMatrix block(const CMatrix& m, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols);

double max_abs(const CMatrix& m);
double frobenius(const CMatrix& m);

// Sum of |entry|^2 == tr(M M^H). Real and nonnegative.
double trace_of_gram(const CMatrix& m);

// Gauss-Jordan with partial pivoting. Throws NumericalError when a pivot
// falls below 1e-13 * max_abs(m).
CMatrix invert(const CMatrix& m);

// Forward transform is unnormalized, [m,k] = exp(-j*2*pi*m*k/n); the inverse
// carries the 1/n factor. Under this convention ||idft(v)||^2 == (1/n)||v||^2.
// Every module in this library assumes exactly this scaling.
CMatrix dft_matrix(std::size_t n);
CMatrix idft_matrix(std::size_t n);
CVec dft_apply(const CVec& v);
CVec idft_apply(const CVec& spectrum);

double norm2sq(const CVec& v);
double max_abs_diff(const CVec& a, const CVec& b);

} // namespace uwofdm
