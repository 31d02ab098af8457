#pragma once

#include "rho/algebra_file.hpp"

#include "json.hpp"

#include <cstddef>
#include <string>

namespace rho {

/// Machine section (deterministic JSON) plus a plain-text summary.
struct Report {
    nlohmann::ordered_json machine;
    std::string text;

    std::string machine_text() const { return machine.dump(2) + "\n"; }
};

inline constexpr int default_max_degree = 8;
inline constexpr std::size_t default_budget = 1000;

Report cohomology_report(const AlgebraFile& file, int max_degree);
Report minimal_model_report(const AlgebraFile& file, int max_degree);
/// engine is "hodge" or "direct".
Report formality_report(const AlgebraFile& file, const std::string& engine, int max_degree,
                        std::size_t budget = default_budget);
/// The A side of a_file against the B side of b_file (its own algebra unless
/// it is a cy-package).
Report mirror_report(const AlgebraFile& a_file, const AlgebraFile& b_file, std::size_t budget);

} // namespace rho
