#pragma once

#include "rho/matrix.hpp"

#include <optional>
#include <vector>

namespace rho::linalg {

/// Reduced row echelon form together with the pivot column of every nonzero row.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return pivots.size(); }
};

// Two implementations of the elimination and product kernels.  The serial
// ones are the reference; the OpenMP ones must agree with them exactly.
namespace serial {
Echelon rref(Matrix m);
Matrix multiply(const Matrix& a, const Matrix& b);
} // namespace serial

namespace parallel {
Echelon rref(Matrix m);
Matrix multiply(const Matrix& a, const Matrix& b);
} // namespace parallel

enum class Kernel { Auto, Serial, Parallel };

/// Selects the kernel used by the dispatching entry points below.  Auto picks
/// the OpenMP kernel for matrices with at least `parallel_threshold` entries.
void set_kernel(Kernel k);
Kernel kernel();
inline constexpr std::size_t parallel_threshold = 4096;

Echelon rref(Matrix m);
Matrix multiply(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);

/// Canonical kernel basis: one vector per free column, with a 1 in that column.
std::vector<Vector> kernel_basis(const Matrix& m);
/// Reduced-echelon basis of the column space.
std::vector<Vector> image_basis(const Matrix& m);

struct SolveResult {
    std::vector<Vector> kernel;
    std::vector<Vector> image;
    std::size_t rank = 0;
};

/// Kernel basis, image basis and rank of one matrix.
SolveResult solve_linear(const Matrix& m);

/// Particular solution of m x = b with all free variables set to zero, or
/// nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Solves m X = B column by column; nullopt if any column is inconsistent.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

Scalar determinant(Matrix m);

/// Hermitian and all leading principal minors positive.
bool is_positive_definite(const Matrix& gram);

/// Reduced-echelon basis (as rows) of the span of the given vectors.
std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t dim);

std::size_t span_rank(const std::vector<Vector>& vectors, std::size_t dim);

bool in_span(const std::vector<Vector>& vectors, const Vector& v);

/// Coordinates of v in terms of the given (linearly independent) vectors.
std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v);

} // namespace rho::linalg
