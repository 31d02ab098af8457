#pragma once

#include "rho/matrix.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rho {

struct Bidegree {
    int p = 0;
    int q = 0;

    int total() const { return p + q; }
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.p - b.p, a.q - b.q}; }
};

std::string to_string(Bidegree b);

/// A finite graded vector space with a labelled, bigraded basis in each
/// non-negative total degree.  Basis elements of degree p are numbered
/// 0..dim(p)-1; the global index of (p, i) is offset(p) + i.
class GradedSpace {
public:
    /// Appends a basis element to degree b.total().
    void add(std::string label, Bidegree b);
    /// Makes degrees up to p exist (possibly with dimension zero).
    void extend_to(int p);

    int top() const { return static_cast<int>(labels_.size()) - 1; }
    std::size_t dim(int p) const;
    std::size_t total_dim() const;
    std::size_t offset(int p) const;

    const std::string& label(int p, std::size_t i) const { return labels_.at(p).at(i); }
    Bidegree bidegree(int p, std::size_t i) const { return bidegrees_.at(p).at(i); }

    std::optional<std::pair<int, std::size_t>> find(const std::string& label) const;
    /// Local indices (within degree b.total()) of the basis elements of bidegree b.
    std::vector<std::size_t> component(Bidegree b) const;
    /// All bidegrees that occur, sorted.
    std::vector<Bidegree> bidegrees() const;

    std::vector<std::size_t> dims() const;

    friend bool operator==(const GradedSpace&, const GradedSpace&) = default;

private:
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<Bidegree>> bidegrees_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

/// Homogeneous linear map between graded spaces, shifting total degree by
/// `shift`.  Stored as one block per source degree.
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(SpacePtr source, SpacePtr target, int shift);

    static LinearMap identity(SpacePtr space);

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    int shift() const { return shift_; }
    bool odd() const { return shift_ % 2 != 0; }

    /// dim target(p + shift) x dim source(p).
    const Matrix& block(int p) const { return blocks_.at(p); }
    Matrix& block(int p) { return blocks_.at(p); }
    int source_top() const { return static_cast<int>(blocks_.size()) - 1; }

    Vector apply(int p, const Vector& v) const;

    /// this after inner.
    LinearMap compose(const LinearMap& inner) const;

    LinearMap& operator+=(const LinearMap& o);
    LinearMap& operator-=(const LinearMap& o);
    LinearMap& operator*=(const Scalar& s);
    friend LinearMap operator+(LinearMap a, const LinearMap& b) { return a += b; }
    friend LinearMap operator-(LinearMap a, const LinearMap& b) { return a -= b; }
    friend LinearMap operator*(LinearMap a, const Scalar& s) { return a *= s; }
    friend bool operator==(const LinearMap& a, const LinearMap& b);

    bool is_zero() const;
    /// First (source degree, basis index) whose image is nonzero.
    std::optional<std::pair<int, std::size_t>> first_nonzero_column() const;

    /// Assembles the blocks into one matrix on the global bases.
    Matrix whole() const;
    static LinearMap from_whole(SpacePtr source, SpacePtr target, int shift, const Matrix& m);

    /// Checks that every nonzero entry moves bidegree by exactly `expected`.
    /// Returns the first offending (source degree, source index, target index).
    std::optional<std::tuple<int, std::size_t, std::size_t>> bidegree_violation(Bidegree expected) const;

private:
    SpacePtr source_;
    SpacePtr target_;
    int shift_ = 0;
    std::vector<Matrix> blocks_;
};

/// [a, b] = ab - (-1)^{|a||b|} ba.
LinearMap graded_commutator(const LinearMap& a, const LinearMap& b);

} // namespace rho
