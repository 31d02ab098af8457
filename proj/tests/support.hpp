#pragma once

#include "rho/dga.hpp"
#include "rho/linalg.hpp"

#include <random>

namespace rho::testing {

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int range = 3, bool gaussian = false)
{
    std::uniform_int_distribution<int> dist(-range, range);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = gaussian ? Scalar(Rational(dist(rng)), Rational(dist(rng))) : Scalar(dist(rng));
    return m;
}

inline Matrix random_invertible(std::mt19937& rng, std::size_t n)
{
    for (;;) {
        Matrix m = random_matrix(rng, n, n, 2);
        if (linalg::rank(m) == n)
            return m;
    }
}

inline FreeDGA free_dga(std::vector<Generator> gens, std::vector<std::pair<std::string, std::string>> d, int cap,
                        Field field = Field::Q)
{
    FreeDGA f{field, FreeGCA(std::move(gens), cap), {}};
    f.differential.resize(f.algebra.size());
    for (const auto& [name, value] : d)
        f.differential.at(*f.algebra.index(name)) = f.algebra.parse(value);
    return f;
}

inline DgaPtr shared(FiniteDGA a) { return std::make_shared<const FiniteDGA>(std::move(a)); }

} // namespace rho::testing

namespace rho::testing {

/// k[a]/(a^{n+1}) with |a| = deg and zero differential.
inline FiniteDGA truncated_polynomial(int n, int deg = 2)
{
    auto space = std::make_shared<GradedSpace>();
    for (int k = 0; k <= n; ++k) {
        space->extend_to(k * deg);
        space->add(k == 0 ? "1" : (k == 1 ? "a" : "a^" + std::to_string(k)), {k * deg / 2, k * deg - k * deg / 2});
    }
    auto rule = std::make_shared<TabularProduct>(space);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            rule->set(i * deg, 0, j * deg, 0, {{0, Scalar(1)}});
    std::vector<Matrix> d;
    for (int p = 0; p <= n * deg; ++p)
        d.emplace_back(p + 1 <= n * deg ? space->dim(p + 1) : 0, space->dim(p));
    return FiniteDGA(Field::Q, space, rule, std::move(d), Element{0, Vector{Scalar(1)}}, std::nullopt);
}

} // namespace rho::testing
