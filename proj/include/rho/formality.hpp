#pragma once

#include "rho/massey.hpp"
#include "rho/minimal_model.hpp"

#include <array>
#include <optional>
#include <string>

namespace rho {

enum class FormalityStatus { Formal, NonFormal, Undetermined };

std::string to_string(FormalityStatus s);

struct FormalityVerdict {
    FormalityStatus status = FormalityStatus::Undetermined;
    int up_to = 0;
    std::optional<int> obstruction_degree;
    /// Nonzero Massey product found by the screen, with its three arguments.
    std::optional<std::array<Element, 3>> massey_arguments;
    std::optional<MasseyVerdict> massey;
    std::size_t nodes = 0;
    std::string detail;
};

/// Searches for a quasi-isomorphism from the minimal model of (H(A), 0) into
/// A, degree by degree.  Killer generators get images particular + sum c_j h_j
/// over cohomology representatives h_j with c_j in {0, 1, -1}; at most `budget`
/// search nodes are explored.  A failed search is reported non-formal only
/// when a nonzero Massey product among basis classes proves it.
FormalityVerdict formality_test_direct(DgaPtr a, int up_to, std::size_t budget = 1000);

} // namespace rho
