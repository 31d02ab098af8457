#pragma once

#include "rho/frobenius.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rho {

/// sl(2) action given by whole-space matrices on a bigraded space.
struct Sl2Rep {
    SpacePtr space;
    Matrix x;
    Matrix y;
    Matrix h;
};

struct Sl2Check {
    bool relations = true;
    bool bidegrees = true;
    std::string witness;

    bool pass() const { return relations && bidegrees; }
};

/// [X, Y] = H, [H, X] = 2X, [H, Y] = -2Y and bidegrees (-1,-1), (1,1), (0,0).
Sl2Check check_lefschetz_type(const Sl2Rep& rep);
/// The relations alone, plus the bidegree each operator actually has.
Sl2Check check_sl2_relations(const Sl2Rep& rep);

struct LefschetzFailure {
    int k = 0;
    /// Kernel vector of L^k in total degree n - k, or, when L^k is injective
    /// but not onto, empty.
    Vector kernel;
};

struct LefschetzVerdict {
    bool pass = false;
    std::vector<LefschetzFailure> failures; // ascending k
    std::optional<Sl2Rep> rep;
    Sl2Check sl2;
    /// Eigenvalue of H -> dimension of its eigenspace.
    std::map<int, std::size_t> eigen_multiplicities;

    int failing_k() const { return failures.empty() ? 0 : failures.back().k; }
};

/// Multiplication by omega as a whole-space matrix.
Matrix lefschetz_operator(const BigradedFrobenius& f, const Element& omega);

/// Tests that L^k maps degree n - k onto degree n + k for all k.  On success
/// builds Y = L, H = (n - p - q) on bidegree (p, q) and X from the primitive
/// decomposition, and verifies the result.
LefschetzVerdict hard_lefschetz_check(const BigradedFrobenius& f, const Element& omega);

} // namespace rho
