#pragma once

#include "rho/cohomology.hpp"

#include <vector>

namespace rho {

/// Triple Massey product <a, b, c> with r = a v + (-1)^{|a|+1} u c, where
/// du = ab and dv = bc.
struct MasseyVerdict {
    Element u;
    Element v;
    Element representative;
    Vector class_coords;
    /// Basis (class coordinates) of a H + H c.
    std::vector<Vector> indeterminacy;
    bool nonzero = false;
};

/// a, b, c are cocycles.  `h` must reach degree |a| + |b| + |c| - 1.  Throws
/// PreconditionError when [a][b] or [b][c] is nonzero.
MasseyVerdict massey_triple(const Cohomology& h, const Element& a, const Element& b, const Element& c);

/// Same with caller-chosen primitives u, v.
MasseyVerdict massey_triple(const Cohomology& h, const Element& a, const Element& b, const Element& c,
                            const Element& u, const Element& v);

} // namespace rho
