#pragma once

#include "rho/cohomology.hpp"
#include "rho/morphism.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace rho {

/// Finite metric DGA with a second differential.  The carrier's own
/// differential is d; `dc` is the second one on the same space.  `gram[p]` is
/// the Hermitian Gram matrix of the basis in degree p.
struct MetricBicomplex {
    DgaPtr carrier;
    LinearMap dc;
    std::vector<Matrix> gram;

    const SpacePtr& space() const { return carrier->space_ptr(); }
    /// The carrier with dc as its differential.
    FiniteDGA dc_algebra() const;
};

/// Checks shapes; the metric and axioms are verified separately.
MetricBicomplex make_bicomplex(DgaPtr carrier, LinearMap dc, std::vector<Matrix> gram);

/// Orthonormal Gram matrices for a space.
std::vector<Matrix> orthonormal_gram(const GradedSpace& space);

/// Tensor product: carriers via tensor(), both differentials Koszul-extended,
/// Gram matrices as Kronecker products within each degree split.
MetricBicomplex tensor(const MetricBicomplex& a, const MetricBicomplex& b);

/// The unique map with <op a, b> = <a, op* b>, for an operator on one graded
/// space.  Throws PreconditionError on a degenerate Gram matrix.
LinearMap adjoint(const LinearMap& op, const std::vector<Matrix>& gram);

struct HypothesisEntry {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct HypothesisReport {
    std::vector<HypothesisEntry> entries;

    bool all_pass() const;
    const HypothesisEntry* first_failure() const;
    const HypothesisEntry& entry(const std::string& name) const;
};

struct Fivefold {
    static constexpr const char* names[5] = {"H", "Im d dc", "Im d dc*", "Im d* dc", "Im d* dc*"};
    /// summands[p][k]: basis of summand k in degree p.
    std::vector<std::array<std::vector<Vector>, 5>> summands;
    std::vector<std::array<std::size_t, 5>> dims;
    bool sums_to_total = true;
    bool pairwise_independent = true;
    std::string witness;
};

struct CircRecord {
    int p = 0;
    std::size_t i = 0;
    int q = 0;
    std::size_t j = 0;
    Element product;  // alpha o beta
    bool lemma_d = true;  // [alpha o beta] = [alpha][beta] in H(A, d)
    bool lemma_dc = true; // same in H(A, dc)
};

struct FormalityCertificate {
    std::vector<std::vector<Vector>> harmonic;
    Fivefold fivefold;
    /// Ker dc as a sub-DGA with differential d, its inclusion i into (A, d)
    /// and the projection pi onto (H(A, dc), 0).
    DgaPtr kernel_dc;
    DgaPtr cohomology_dc;
    DgaMorphism inclusion;
    DgaMorphism projection;
    bool kernel_closed = true;
    bool kernel_decomposes = true; // Ker dc = H + Im d dc + Im d* dc
    bool d_induces_zero = true;
    QuasiIsoReport inclusion_qi;
    QuasiIsoReport projection_qi;
    std::vector<std::size_t> dims_h_d;
    std::vector<std::size_t> dims_h_dc;
    std::vector<std::size_t> dims_harmonic;
    std::vector<CircRecord> circ;

    bool valid() const;
};

/// Precomputed adjoints, Laplacians and harmonic spaces of a bicomplex.
class HodgeData {
public:
    explicit HodgeData(MetricBicomplex b);

    const MetricBicomplex& bicomplex() const { return b_; }
    const LinearMap& d() const { return d_; }
    const LinearMap& dc() const { return b_.dc; }
    const LinearMap& d_star() const { return d_star_; }
    const LinearMap& dc_star() const { return dc_star_; }
    const LinearMap& box_d() const { return box_d_; }
    const LinearMap& box_dc() const { return box_dc_; }
    const std::vector<Vector>& harmonic_basis(int p) const { return harmonic_.at(p); }

    HypothesisReport verify_hypotheses() const;

    bool is_harmonic(const Element& x) const;
    /// Orthogonal projection onto the harmonic space.
    Element harmonic_projection(const Element& x) const;
    /// (alpha ^ beta)^H, with the class identity in H(A, d) verified.
    Element circ_product(const Element& alpha, const Element& beta) const;
    Fivefold fivefold() const;
    /// Throws PreconditionError carrying the first failed hypothesis.
    FormalityCertificate formality_certificate() const;

private:
    void require_decomposition() const;
    Vector project(int p, const Vector& v) const;

    MetricBicomplex b_;
    LinearMap d_;
    LinearMap d_star_;
    LinearMap dc_star_;
    LinearMap box_d_;
    LinearMap box_dc_;
    std::vector<std::vector<Vector>> harmonic_;
    std::shared_ptr<const Cohomology> h_d_;
    std::shared_ptr<const Cohomology> h_dc_;
    HypothesisReport report_;
};

/// The ten relations [del, del] = 0, ..., [del, del*] = 1/2 box with
/// del = d, delbar = dc and box the Laplacian of del + delbar.  Throws
/// PreconditionError when d is not of bidegree (1,0) or dc not of (0,1).
HypothesisReport check_kahler_identities(const MetricBicomplex& b);

} // namespace rho
