#pragma once

#include "rho/free_gca.hpp"
#include "rho/graded.hpp"
#include "rho/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rho {

using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// Homogeneous element: coefficients on the basis of one degree.
struct Element {
    int degree = 0;
    Vector coeffs;

    bool is_zero() const { return rho::is_zero(coeffs); }
};

/// Structure constants of a graded algebra on a basis.
class ProductRule {
public:
    virtual ~ProductRule() = default;
    /// (p, i) * (q, j) expanded on the basis of degree p + q.
    virtual SparseVector multiply(int p, std::size_t i, int q, std::size_t j) const = 0;
};

/// Product table stored densely by global index pair.
class TabularProduct : public ProductRule {
public:
    explicit TabularProduct(SpacePtr space);
    void set(int p, std::size_t i, int q, std::size_t j, SparseVector value);
    SparseVector multiply(int p, std::size_t i, int q, std::size_t j) const override;

private:
    SpacePtr space_;
    std::size_t n_ = 0;
    std::vector<SparseVector> table_;
};

/// A free DGA: generators with differential values, before materialization.
struct FreeDGA {
    Field field = Field::Q;
    FreeGCA algebra;
    std::vector<Poly> differential; // indexed like algebra.generators()

    Poly d(const Poly& p) const;
    Poly d(const Monomial& m) const;
};

/// Finite-dimensional commutative DGA on an explicit basis, complete through
/// `top()`.  A truncated algebra (a free one materialized up to a cap) has
/// `cap()` set: its products into degrees above the cap are dropped and only
/// cohomology below the cap is trustworthy.
class FiniteDGA {
public:
    FiniteDGA(Field field, SpacePtr space, std::shared_ptr<const ProductRule> product,
              std::vector<Matrix> d, Element unit, std::optional<int> cap);

    Field field() const { return field_; }
    const GradedSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    int top() const { return space_->top(); }
    std::size_t dim(int p) const { return space_->dim(p); }
    std::optional<int> cap() const { return cap_; }
    bool complete() const { return !cap_.has_value(); }
    /// Largest degree through which cohomology is determined: cap - 1 for a
    /// truncated algebra unless its differential is known to vanish.
    int valid_degree() const { return valid_; }
    /// Declares the differential out of the top degree to be zero, so that
    /// cohomology is determined through top().
    void mark_zero_beyond_top() { valid_ = top(); }

    /// d on degree p: dim(p+1) x dim(p).  Zero-sized beyond top.
    Matrix d(int p) const;
    Element d(const Element& x) const;
    LinearMap differential() const;
    const Element& unit() const { return unit_; }

    SparseVector multiply(int p, std::size_t i, int q, std::size_t j) const;
    Element multiply(const Element& a, const Element& b) const;
    Element basis(int p, std::size_t i) const;
    Element zero(int p) const;

    const std::shared_ptr<const ProductRule>& product_rule() const { return product_; }

    /// Present when the algebra was materialized from a free DGA.
    const FreeDGA* presentation() const { return presentation_.get(); }
    const std::vector<Monomial>& monomials(int p) const { return monomials_.at(p); }

    /// Same algebra, different differential.
    FiniteDGA with_differential(std::vector<Matrix> d) const;

    friend FiniteDGA materialize(const FreeDGA& free, int cap);

private:
    Field field_;
    SpacePtr space_;
    std::shared_ptr<const ProductRule> product_;
    std::vector<Matrix> d_;
    Element unit_;
    std::optional<int> cap_;
    int valid_ = 0;
    std::shared_ptr<const FreeDGA> presentation_;
    std::vector<std::vector<Monomial>> monomials_;
};

using DgaPtr = std::shared_ptr<const FiniteDGA>;

/// Monomial basis of a free DGA through degree `cap`.  Finite exterior
/// algebras whose top degree fits under the cap come out complete.
FiniteDGA materialize(const FreeDGA& free, int cap);

/// First failure of an algebra check, with a human-readable witness.
struct CheckResult {
    bool pass = true;
    std::string witness;

    explicit operator bool() const { return pass; }
    static CheckResult fail(std::string w) { return {false, std::move(w)}; }
};

CheckResult check_d_squared(const FiniteDGA& a);
/// d(xy) = d(x)y + (-1)^{|x|} x d(y) on basis pairs.
CheckResult check_leibniz(const FiniteDGA& a);
/// Graded commutativity, associativity and the unit law on basis elements.
CheckResult check_algebra(const FiniteDGA& a);
/// All of the above.
CheckResult check_dga(const FiniteDGA& a);
/// Free DGA: d of every generator has degree one higher and d^2 = 0 on generators.
CheckResult check_free(const FreeDGA& free);

/// Koszul-signed tensor product with d(a x b) = da x b + (-1)^{|a|} a x db.
FiniteDGA tensor(const FiniteDGA& a, const FiniteDGA& b);

/// Re-expresses the algebra in a new basis: column k of change[p] gives the
/// new k-th basis vector of degree p in old coordinates.
FiniteDGA change_basis(const FiniteDGA& a, const std::vector<Matrix>& change);

/// Text form of an element using basis labels.
std::string to_string(const FiniteDGA& a, const Element& x);

} // namespace rho
