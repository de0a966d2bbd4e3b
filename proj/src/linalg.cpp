#include "uwofdm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "uwofdm/errors.hpp"

namespace uwofdm {

namespace {

// exp(sign * j * 2*pi * k / n) for k = 0..n-1. dft_matrix and dft_apply share
// this table so matrix and direct evaluation agree bit for bit. Cached per
// thread: transforms run per symbol inside the Monte Carlo loops.
const std::vector<cplx>& unit_roots(std::size_t n, bool negative) {
    thread_local std::size_t cached_n[2] = {0, 0};
    thread_local std::vector<cplx> cached[2];
    const std::size_t slot = negative ? 0 : 1;
    if (cached_n[slot] != n) {
        const double sign = negative ? -1.0 : 1.0;
        std::vector<cplx> w(n);
        for (std::size_t k = 0; k < n; ++k) {
            w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
        }
        cached[slot] = std::move(w);
        cached_n[slot] = n;
    }
    return cached[slot];
}

} // namespace

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix matmul(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.cols != rhs.rows) throw ValidationError("matmul: inner dimensions differ");
    CMatrix out(lhs.rows, rhs.cols);
    for (std::size_t i = 0; i < lhs.rows; ++i) {
        for (std::size_t k = 0; k < lhs.cols; ++k) {
            const cplx v = lhs(i, k);
            if (v == cplx{}) continue;
            for (std::size_t j = 0; j < rhs.cols; ++j) {
                out(i, j) += v * rhs(k, j);
            }
        }
    }
    return out;
}

CVec matvec(const CMatrix& m, const CVec& v) {
    if (m.cols != v.size()) throw ValidationError("matvec: dimension mismatch");
    CVec out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        cplx acc = 0.0;
        const cplx* row = m.a.data() + i * m.cols;
        for (std::size_t j = 0; j < m.cols; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

CMatrix hermitian(const CMatrix& m) {
    CMatrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

CMatrix block(const CMatrix& m, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) {
    if (row0 + rows > m.rows || col0 + cols > m.cols) throw ValidationError("block: range out of bounds");
    CMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(row0 + i, col0 + j);
    return out;
}

double max_abs(const CMatrix& m) {
    double v = 0.0;
    for (const cplx& e : m.a) v = std::max(v, std::abs(e));
    return v;
}

double frobenius(const CMatrix& m) { return std::sqrt(trace_of_gram(m)); }

double trace_of_gram(const CMatrix& m) {
    double s = 0.0;
    for (const cplx& e : m.a) s += std::norm(e);
    return s;
}

CMatrix invert(const CMatrix& m) {
    if (m.rows != m.cols) throw ValidationError("invert: matrix not square");
    const std::size_t n = m.rows;
    const double tol = 1e-13 * max_abs(m);

    CMatrix work = m;
    CMatrix inv = CMatrix::identity(n);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(work(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(work(r, col));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best <= tol) throw NumericalError("invert: matrix singular to working precision");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const cplx scale = 1.0 / work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = work(r, col);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

CMatrix dft_matrix(std::size_t n) {
    if (n == 0) throw ValidationError("dft_matrix: size must be positive");
    const std::vector<cplx>& w = unit_roots(n, true);
    CMatrix f(n, n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) f(m, k) = w[(m * k) % n];
    return f;
}

CMatrix idft_matrix(std::size_t n) {
    if (n == 0) throw ValidationError("idft_matrix: size must be positive");
    const std::vector<cplx>& w = unit_roots(n, false);
    const double s = 1.0 / static_cast<double>(n);
    CMatrix f(n, n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) f(m, k) = s * w[(m * k) % n];
    return f;
}

CVec dft_apply(const CVec& v) {
    const std::size_t n = v.size();
    if (n == 0) throw ValidationError("dft_apply: empty input");
    const std::vector<cplx>& w = unit_roots(n, true);
    CVec out(n);
    for (std::size_t m = 0; m < n; ++m) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += w[(m * k) % n] * v[k];
        out[m] = acc;
    }
    return out;
}

CVec idft_apply(const CVec& spectrum) {
    const std::size_t n = spectrum.size();
    if (n == 0) throw ValidationError("idft_apply: empty input");
    const std::vector<cplx>& w = unit_roots(n, false);
    const double s = 1.0 / static_cast<double>(n);
    CVec out(n);
    for (std::size_t m = 0; m < n; ++m) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += w[(m * k) % n] * spectrum[k];
        out[m] = s * acc;
    }
    return out;
}

double norm2sq(const CVec& v) {
    double s = 0.0;
    for (const cplx& e : v) s += std::norm(e);
    return s;
}

double max_abs_diff(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw ValidationError("max_abs_diff: length mismatch");
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) v = std::max(v, std::abs(a[i] - b[i]));
    return v;
}

} // namespace uwofdm
