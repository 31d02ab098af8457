#pragma once

#include "rho/dga.hpp"
#include "rho/linalg.hpp"

#include <vector>

namespace rho {

/// Cohomology of a finite DGA through a degree bound, with canonical
/// representatives: each class is represented by a cocycle in reduced echelon
/// form relative to the coboundaries.
class Cohomology {
public:
    /// Throws PreconditionError if `up_to` exceeds the degrees the algebra determines.
    Cohomology(DgaPtr algebra, int up_to);

    const FiniteDGA& algebra() const { return *algebra_; }
    const DgaPtr& algebra_ptr() const { return algebra_; }
    int up_to() const { return up_to_; }
    std::size_t dim(int p) const;
    std::vector<std::size_t> dims() const;
    const std::vector<Vector>& representatives(int p) const { return reps_.at(p); }
    Element representative(int p, std::size_t i) const { return {p, reps_.at(p).at(i)}; }

    bool is_cocycle(const Element& x) const;
    bool is_coboundary(const Element& x) const;
    /// Coordinates of [x] on the representative basis.  Throws if x is not a cocycle.
    Vector class_of(const Element& x) const;
    /// Coordinates of [rep_i][rep_j]; requires p + q <= up_to.
    Vector product(int p, std::size_t i, int q, std::size_t j) const;
    /// Coordinates of the unit class in degree 0.
    Vector unit_class() const;

    /// H as a DGA with zero differential.  Complete when the algebra is and
    /// the bound reaches its top; otherwise truncated at `up_to`.
    FiniteDGA as_dga() const;

private:
    DgaPtr algebra_;
    int up_to_;
    std::vector<std::vector<std::size_t>> boundary_pivots_;
    std::vector<std::vector<Vector>> boundary_rows_;
    std::vector<std::vector<Vector>> reps_;
    std::vector<std::vector<std::size_t>> rep_pivots_;
};

} // namespace rho
