#include "rho/linalg.hpp"

#include "rho/errors.hpp"

#include <atomic>
#include <cassert>
#include <utility>

#include <omp.h>

namespace rho::linalg {

namespace {

std::atomic<Kernel> g_kernel{Kernel::Auto};

/// Row index of the first nonzero entry in `col` at or below `start`.
std::optional<std::size_t> find_pivot(const Matrix& m, std::size_t start, std::size_t col)
{
    for (std::size_t r = start; r < m.rows(); ++r)
        if (!m(r, col).is_zero())
            return r;
    return std::nullopt;
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m(a, c), m(b, c));
}

void normalize_row(Matrix& m, std::size_t row, std::size_t col)
{
    Scalar inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero())
            m(row, c) *= inv;
}

void eliminate_row(Matrix& m, std::size_t target, std::size_t pivot_row, std::size_t col)
{
    if (m(target, col).is_zero())
        return;
    Scalar f = m(target, col);
    for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(pivot_row, c).is_zero())
            m(target, c) -= f * m(pivot_row, c);
}

bool use_parallel(std::size_t entries)
{
    switch (g_kernel.load()) {
    case Kernel::Serial:
        return false;
    case Kernel::Parallel:
        return true;
    case Kernel::Auto:
        break;
    }
    return entries >= parallel_threshold;
}

} // namespace

namespace serial {

Echelon rref(Matrix m)
{
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        auto p = find_pivot(m, row, col);
        if (!p)
            continue;
        swap_rows(m, row, *p);
        normalize_row(m, row, col);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != row)
                eliminate_row(m, r, row, col);
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    assert(a.cols() == b.rows());
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero())
                    c(i, j) += aik * b(k, j);
        }
    return c;
}

} // namespace serial

namespace parallel {

Echelon rref(Matrix m)
{
    Echelon e;
    std::size_t row = 0;
    const auto nrows = static_cast<long>(m.rows());
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        auto p = find_pivot(m, row, col);
        if (!p)
            continue;
        swap_rows(m, row, *p);
        normalize_row(m, row, col);
        const auto prow = static_cast<long>(row);
#pragma omp parallel for schedule(dynamic, 4)
        for (long r = 0; r < nrows; ++r)
            if (r != prow)
                eliminate_row(m, static_cast<std::size_t>(r), row, col);
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    assert(a.cols() == b.rows());
    Matrix c(a.rows(), b.cols());
    const auto nrows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic, 4)
    for (long li = 0; li < nrows; ++li) {
        auto i = static_cast<std::size_t>(li);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero())
                    c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

} // namespace parallel

void set_kernel(Kernel k)
{
    g_kernel.store(k);
}

Kernel kernel()
{
    return g_kernel.load();
}

Echelon rref(Matrix m)
{
    if (use_parallel(m.rows() * m.cols()))
        return parallel::rref(std::move(m));
    return serial::rref(std::move(m));
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (use_parallel(a.rows() * b.cols()))
        return parallel::multiply(a, b);
    return serial::multiply(a, b);
}

std::size_t rank(const Matrix& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    return rref(m).rank();
}

std::vector<Vector> kernel_basis(const Matrix& m)
{
    std::vector<Vector> basis;
    if (m.cols() == 0)
        return basis;
    if (m.rows() == 0) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Vector v(m.cols());
            v[c] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vector> image_basis(const Matrix& m)
{
    std::vector<Vector> cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.column(c));
    return span_basis(cols, m.rows());
}

SolveResult solve_linear(const Matrix& m)
{
    SolveResult r;
    r.kernel = kernel_basis(m);
    r.image = image_basis(m);
    r.rank = r.image.size();
    if (r.rank + r.kernel.size() != m.cols())
        throw ConsistencyError("rank-nullity violated");
    return r;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b)
{
    assert(b.size() == m.rows());
    if (m.cols() == 0)
        return is_zero(b) ? std::optional<Vector>(Vector{}) : std::nullopt;
    Echelon e = rref(hstack(m, Matrix::from_columns({b}, m.rows())));
    Vector x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m.cols())
            return std::nullopt;
        x[e.pivots[r]] = e.reduced(r, m.cols());
    }
    return x;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b)
{
    Matrix x(m.cols(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        auto col = solve(m, b.column(c));
        if (!col)
            return std::nullopt;
        x.set_column(c, *col);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    const std::size_t n = m.rows();
    if (n == 0)
        return Matrix();
    Echelon e = rref(hstack(m, Matrix::identity(n)));
    if (e.rank() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    return e.reduced.block(0, n, n, n);
}

Scalar determinant(Matrix m)
{
    assert(m.rows() == m.cols());
    const std::size_t n = m.rows();
    Scalar det(1);
    for (std::size_t col = 0; col < n; ++col) {
        auto p = find_pivot(m, col, col);
        if (!p)
            return Scalar(0);
        if (*p != col) {
            swap_rows(m, col, *p);
            det = -det;
        }
        det *= m(col, col);
        Scalar inv = m(col, col).inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero())
                continue;
            Scalar f = m(r, col) * inv;
            for (std::size_t c = col; c < n; ++c)
                m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

bool is_positive_definite(const Matrix& gram)
{
    if (gram.rows() != gram.cols())
        return false;
    if (!(gram.adjoint() == gram))
        return false;
    for (std::size_t k = 1; k <= gram.rows(); ++k) {
        Scalar minor = determinant(gram.block(0, 0, k, k));
        if (!minor.is_real() || sgn(minor.re()) <= 0)
            return false;
    }
    return true;
}

std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t dim)
{
    std::vector<Vector> out;
    if (vectors.empty() || dim == 0)
        return out;
    Echelon e = rref(Matrix::from_rows(vectors, dim));
    for (std::size_t r = 0; r < e.rank(); ++r)
        out.push_back(e.reduced.row(r));
    return out;
}

std::size_t span_rank(const std::vector<Vector>& vectors, std::size_t dim)
{
    if (vectors.empty() || dim == 0)
        return 0;
    return rref(Matrix::from_rows(vectors, dim)).rank();
}

bool in_span(const std::vector<Vector>& vectors, const Vector& v)
{
    if (is_zero(v))
        return true;
    if (vectors.empty())
        return false;
    std::vector<Vector> with(vectors);
    with.push_back(v);
    return span_rank(with, v.size()) == span_rank(vectors, v.size());
}

std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v)
{
    if (basis.empty())
        return is_zero(v) ? std::optional<Vector>(Vector{}) : std::nullopt;
    return solve(Matrix::from_columns(basis, v.size()), v);
}

} // namespace rho::linalg
