#pragma once

#include "rho/cohomology.hpp"
#include "rho/morphism.hpp"

#include <map>
#include <vector>

namespace rho {

/// Sullivan minimal model of a simply connected DGA through `valid_up_to`:
/// the free DGA, its materialization, and the quasi-isomorphism rho into the
/// target.  Generator counts are complete through valid_up_to.
struct MinimalModel {
    FreeDGA free;
    DgaPtr model;
    DgaMorphism rho;
    int valid_up_to = 0;
    /// Per generator: true when it was adjoined as a cocycle hitting a new
    /// cohomology class, false when it kills a kernel class.
    std::vector<bool> cocycle_generator;

    std::vector<std::size_t> generator_counts() const;
};

/// Degree-by-degree construction.  Needs the target's cohomology through
/// up_to + 1; throws PreconditionError if the target is not simply connected
/// or does not determine that much cohomology, ConsistencyError if the result
/// fails re-verification.
MinimalModel build_minimal_model(DgaPtr target, int up_to);

/// Mechanical check of minimality: free, no degree-1 generators, and no
/// linear terms in any differential.
CheckResult check_minimal(const FreeDGA& free);

struct Indecomposables {
    std::vector<std::size_t> dims; // per degree 0..valid_up_to
    /// Quadratic part of d on generators: rows index word-length-2 monomials
    /// (listed in `quadratic_basis`), columns index generators.
    Matrix dbar;
    std::vector<Monomial> quadratic_basis;
    /// filtration[p][k] = dim of (M+)^k / (M+)^{k+1} in degree p.
    std::vector<std::vector<std::size_t>> filtration;
    /// d maps (M+)^k into (M+)^{k+1} on every monomial through valid_up_to.
    bool filtration_respected = true;
};

Indecomposables indecomposables(const MinimalModel& m);

/// Bracket on the dual of the indecomposables, in shifted degree |g| - 1:
/// [e_a, e_b] = (-1)^{|a|} sum_g S_g(a, b) e_g, where S_g is the symmetric
/// form of the quadratic part of d(g) (a*b and (-1)^{|a||b|} b*a both count,
/// a^2 counts twice).
struct LieBracketTable {
    std::vector<std::string> names;
    std::vector<int> shifted_degrees;
    /// bracket[a][b] is a vector over generators.
    std::vector<std::vector<Vector>> bracket;
    bool abelian = true;
};

/// Builds the table and verifies graded antisymmetry and graded Jacobi;
/// throws ConsistencyError on violation.
LieBracketTable shifted_lie_cobracket(const MinimalModel& m);

/// rank of the rational homotopy in degree p, for 1 <= p <= valid_up_to.
std::map<int, std::size_t> homotopy_ranks(const MinimalModel& m);

/// Converts an element of a materialized free DGA into a polynomial.
Poly to_poly(const FiniteDGA& a, const Element& x);

} // namespace rho
