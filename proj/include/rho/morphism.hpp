#pragma once

#include "rho/cohomology.hpp"
#include "rho/dga.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rho {

/// Degree-preserving linear map between finite DGAs, given on bases.
struct DgaMorphism {
    DgaPtr source;
    DgaPtr target;
    /// maps[p]: target.dim(p) x source.dim(p), for p = 0..source.top()
    /// (zero rows where the target has no degree p).
    std::vector<Matrix> maps;
    /// Set when construction found an inconsistency, e.g. a generator image
    /// of the wrong degree.
    std::optional<std::string> defect;

    Element apply(const Element& x) const;

    /// Extends images of the generators of a materialized free DGA
    /// multiplicatively.  images[g] is indexed like the free generators.
    static DgaMorphism from_generator_images(DgaPtr source, DgaPtr target, const std::vector<Element>& images);
};

/// Chain map, multiplicative and unital on every degree both sides determine.
CheckResult check_morphism(const DgaMorphism& f);

struct QuasiIsoReport {
    bool quasi_isomorphism = true;
    std::vector<Matrix> induced; // per degree, on representative bases
    std::optional<int> failing_degree;
    std::string detail;
};

/// Compares cohomology through `up_to` on both sides via the induced maps.
QuasiIsoReport quasi_isomorphism(const DgaMorphism& f, int up_to);
QuasiIsoReport quasi_isomorphism(const DgaMorphism& f, const Cohomology& hs, const Cohomology& ht);

} // namespace rho
