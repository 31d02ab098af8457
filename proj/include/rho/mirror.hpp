#pragma once

#include "rho/frobenius.hpp"
#include "rho/lefschetz.hpp"
#include "rho/minimal_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rho {

/// Calabi-Yau package.  Elements of both sides are whole-space coordinate
/// vectors (all degrees stacked).  The B side has basis elements of H^{-p,q}
/// placed in bidegree (p, q); flat maps B bidegree (p, q) onto A bidegree
/// (n - p, q) and is contraction into Omega = lambda * omega0.
struct CYPackage {
    BigradedFrobenius a_side;
    DgaPtr b_side;
    int n = 0;
    Scalar lambda;
    Vector omega0; // whole-space vector on the A side, bidegree (n, 0)
    Matrix flat0;  // contraction into omega0
    Matrix flat;   // lambda * flat0
    Matrix sharp;  // inverse of flat

    Vector omega() const;
    Vector flat_of(const Vector& b) const { return flat.apply(b); }
    Vector sharp_of(const Vector& a) const { return sharp.apply(a); }
    /// Integral over the manifold of a whole A-side vector.
    Scalar integral_a(const Vector& a) const;
    /// B-side integral: integral of (gamma flat) wedge Omega.
    Scalar integral_b(const Vector& b) const;
};

/// Validates the inputs and assembles flat and sharp.  Throws
/// PreconditionError when h^{n,0} != 1, lambda = 0, or flat is not a
/// bidegree-respecting bijection.
CYPackage build_cy(BigradedFrobenius a_side, DgaPtr b_side, int n, Scalar lambda, Vector omega0, Matrix flat0);

/// Same package with Omega rescaled to lambda.
CYPackage rescale(const CYPackage& p, Scalar lambda);

struct CYInput {
    CYPackage package;
    std::optional<Element> kahler_class;
    RationalStructure rational;
};

CYInput load_cy(const AlgebraFile& file);

/// Product of whole-space vectors.
Vector multiply_whole(const FiniteDGA& a, const Vector& x, const Vector& y);
Vector to_whole(const FiniteDGA& a, const Element& x);
/// The bidegree of a nonzero vector supported on a single bidegree.
std::optional<Bidegree> bidegree_of(const GradedSpace& s, const Vector& whole);

struct BAlgebra {
    BigradedFrobenius frobenius; // B side with its integral as trace
    /// sharp(a tilde-wedge b) = sharp(a) sharp(b) and the tilde integral
    /// equals the B integral of sharp, on all basis pairs.
    bool transport_audit = false;
};

BAlgebra b_algebra(const CYPackage& p);

struct YukawaReport {
    std::vector<std::string> names;
    std::size_t size = 0;
    std::vector<Scalar> phi; // phi[(a * size + b) * size + c]
    bool rational = true;
    std::string rational_witness;
    bool symmetric = true;
    std::string symmetry_witness;

    const Scalar& at(std::size_t a, std::size_t b, std::size_t c) const { return phi[(a * size + b) * size + c]; }
};

/// Phi_abc = integral of (sharp g_a sharp g_b sharp g_c) flat wedge Omega.
/// The basis must be rational for the A side and start with the unit.
YukawaReport yukawa(const CYPackage& p, const RationalStructure& basis);

/// The single s with Phi(t Omega) = t^s Phi(Omega) for every triple, found by
/// comparing the package at lambda and t * lambda; nullopt if no single s fits
/// or all couplings vanish.
std::optional<int> yukawa_scaling_exponent(const CYPackage& p, const RationalStructure& basis, long t = 2);

enum class MirrorOutcome { Isomorphism, Obstruction, Inconclusive };
std::string to_string(MirrorOutcome o);

struct MirrorVerdict {
    MirrorOutcome outcome = MirrorOutcome::Inconclusive;
    /// Whole-space matrix from the B side to the A side, and its blocks.
    std::optional<Matrix> map;
    std::map<Bidegree, Matrix> blocks;
    std::string detail;
    std::size_t nodes = 0;
};

/// Algebra invariants used to screen a pair before searching.
struct AlgebraInvariants {
    std::map<Bidegree, std::size_t> dims;
    std::map<std::pair<Bidegree, Bidegree>, std::size_t> product_ranks;
    int nilpotency = 0; // least k with (A+)^k = 0
    std::size_t generated_by_11 = 0;

    friend bool operator==(const AlgebraInvariants&, const AlgebraInvariants&) = default;
};

AlgebraInvariants invariants(const FiniteDGA& a);

/// Checks that `map` (whole space, source to target) preserves bidegrees and
/// the unit, is bijective and multiplicative; returns the first defect.
std::optional<std::string> isomorphism_defect(const FiniteDGA& source, const FiniteDGA& target, const Matrix& map);

/// Dimension and invariant screening, then bounded backtracking over images
/// of indecomposable generators with coefficients in {0, 1, -1}.
MirrorVerdict mirror_check(const FiniteDGA& a_side, const FiniteDGA& b_side, std::size_t budget);

/// O tilde = sharp O flat for a whole-space operator on the A side.
Matrix tilde_transport(const CYPackage& p, const Matrix& op);
/// Metric on the B side making flat an isometry.
Matrix transported_metric(const CYPackage& p, const Matrix& gram_a);
/// Adjoint of a whole-space operator for a whole-space Gram matrix.
Matrix whole_adjoint(const Matrix& op, const Matrix& gram);
/// The single bidegree shift of a whole-space operator, if it has one.
std::optional<Bidegree> operator_bidegree(const GradedSpace& source, const GradedSpace& target, const Matrix& op);

struct TildeSl2 {
    Sl2Rep rep;
    Sl2Check relations;
    Sl2Check lefschetz_type;
    std::optional<Bidegree> l_bidegree;
    std::optional<Bidegree> lambda_bidegree;
};

/// Transports the A-side Lefschetz sl(2) for omega to the B side.
TildeSl2 tilde_sl2(const CYPackage& p, const Element& omega);

struct Verdict {
    bool pass = true;
    std::string witness;
};

Verdict b_simply_connected_check(const BAlgebra& b);

struct RationalHomotopy {
    MinimalModel model;
    std::map<int, std::size_t> ranks;
    Scalar lambda;
};

/// Minimal model of the B side regraded by total degree.  Requires a rational
/// Yukawa report and a simply connected B side.
RationalHomotopy rational_homotopy_from_b(const CYPackage& p, const BAlgebra& b, const YukawaReport& y, int up_to);

/// Self-mirror test: builds the B-to-A map from sigma on degree-one classes,
/// extends it multiplicatively and verifies it as an isomorphism.
MirrorVerdict hyperkahler_self_mirror(const CYPackage& p, const Element& sigma);

struct KahlerSearch {
    std::optional<Vector> candidate; // B-side class of bidegree (1,1)
    std::size_t tried = 0;
};

/// Iterates B-side classes of bidegree (1,1) with coefficients from
/// `lattice` and returns the first passing hard Lefschetz on the B side.
KahlerSearch search_mirror_kahler_class(const BAlgebra& b, const std::vector<long>& lattice, std::size_t limit);

} // namespace rho
