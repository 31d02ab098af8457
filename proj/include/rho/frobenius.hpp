#pragma once

#include "rho/algebra_file.hpp"
#include "rho/dga.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rho {

/// Bigraded algebra with a trace on bidegree (n, n) whose pairing
/// eta(a, b) = trace(ab) is nondegenerate and invariant.
struct BigradedFrobenius {
    DgaPtr algebra;
    int n = 0;
    Vector trace; // on the basis of total degree 2n

    const FiniteDGA& a() const { return *algebra; }
    Scalar integral(const Element& x) const;
    Scalar eta(const Element& x, const Element& y) const;
    /// eta on basis(p) x basis(2n - p).
    Matrix pairing(int p) const;
    std::map<Bidegree, std::size_t> hodge_numbers() const;
};

/// Checks unit, commutativity, associativity, bidegree additivity, trace
/// support, graded symmetry, invariance and nondegeneracy (the null vector is
/// reported) and throws PreconditionError on the first failure.
BigradedFrobenius build_frobenius(DgaPtr algebra, int n, Vector trace);

struct FrobeniusInput {
    BigradedFrobenius frobenius;
    std::optional<Element> kahler_class;
    /// Designated rational basis from the file, if any.
    std::vector<std::string> rational_names;
    std::vector<Element> rational_basis;
};

/// Frobenius data from a file.  Tabular kinds are used as they are; a free
/// DGA is replaced by its cohomology ring, with the trace read on cocycle
/// representatives.  `cap` bounds the materialization of free files.
FrobeniusInput load_frobenius(const AlgebraFile& file, int cap = 0);

struct RationalStructure {
    std::vector<std::string> names;
    std::vector<Element> basis;
};

struct RationalVerdict {
    bool pass = true;
    std::string witness;
};

/// Pass iff all structure constants and trace values in the basis are in Q.
/// Throws PreconditionError when the basis does not span.
RationalVerdict rational_structure_check(const BigradedFrobenius& f, const RationalStructure& basis);

} // namespace rho
