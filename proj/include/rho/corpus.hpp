#pragma once

#include "rho/algebra_file.hpp"

#include <string>
#include <vector>

namespace rho {

struct CorpusEntry {
    std::string name;
    std::string summary;
};

/// Catalog in listing order.
const std::vector<CorpusEntry>& corpus_catalog();
/// Throws PreconditionError for an unknown name.
AlgebraFile corpus_file(const std::string& name);

/// Calabi-Yau package of the complex torus of dimension m: both sides are
/// exterior algebras, Omega = dz1...dzm and the flat table is contraction
/// into Omega.
AlgebraFile torus_cy_package(int m);

} // namespace rho
