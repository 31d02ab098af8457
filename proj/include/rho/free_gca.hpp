#pragma once

#include "rho/graded.hpp"
#include "rho/scalar.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rho {

struct Generator {
    std::string name;
    Bidegree bidegree;

    int degree() const { return bidegree.total(); }
    bool odd() const { return degree() % 2 != 0; }
};

/// Exponent vector over the generators of one FreeGCA, in canonical generator
/// order.  Exponents of odd generators are 0 or 1.
struct Monomial {
    std::vector<int> exponents;

    bool is_unit() const;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Product of two monomials: +1/-1 times a monomial, or zero.
struct SignedMonomial {
    int sign = 0; // 0 encodes the zero product
    Monomial monomial;
};

using Poly = std::map<Monomial, Scalar>;

/// One term of the polynomial text grammar: coefficient times a product of
/// named factors with exponents, in the order written.
struct TextTerm {
    Scalar coefficient;
    std::vector<std::pair<std::string, int>> factors;
};

/// Parses `coef*name^exp*name...` terms joined by + and -.  Coefficients are
/// rationals `p/q`, optionally times the unit `i`.  "0" parses to no terms.
std::vector<TextTerm> parse_terms(std::string_view text);

/// Free graded-commutative algebra: polynomial on even generators tensor
/// exterior on odd ones, materialized lazily up to a degree cap.
class FreeGCA {
public:
    FreeGCA() = default;
    /// Generators are reordered canonically by (total degree, declaration order).
    FreeGCA(std::vector<Generator> generators, int cap);

    const std::vector<Generator>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    int cap() const { return cap_; }
    /// True when every generator is odd, so the algebra is finite dimensional.
    bool finite() const;
    int top_degree() const;

    std::optional<std::size_t> index(std::string_view name) const;

    Monomial unit() const { return Monomial{std::vector<int>(generators_.size(), 0)}; }
    Monomial generator(std::size_t g) const;

    int degree(const Monomial& m) const;
    Bidegree bidegree(const Monomial& m) const;
    /// Number of generator factors counted with multiplicity.
    int word_length(const Monomial& m) const;

    /// Koszul-signed product.  Throws PreconditionError when the exponent
    /// vectors belong to a different algebra or the result exceeds the cap.
    SignedMonomial multiply(const Monomial& a, const Monomial& b) const;

    /// Complete monomial basis in total degree n, in canonical order.
    std::vector<Monomial> basis_in_degree(int n) const;

    Poly multiply(const Poly& a, const Poly& b) const;

    std::string to_string(const Monomial& m) const;
    std::string to_string(const Poly& p) const;

    /// Interprets polynomial text over this algebra's generators.
    Poly parse(std::string_view text) const;

    friend bool operator==(const FreeGCA& a, const FreeGCA& b);

private:
    void check(const Monomial& m) const;

    std::vector<Generator> generators_;
    int cap_ = 0;
};

void add_term(Poly& p, const Monomial& m, const Scalar& c);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& p, const Scalar& s);

} // namespace rho
