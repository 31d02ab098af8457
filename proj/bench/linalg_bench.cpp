#include "rho/linalg.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <iostream>
#include <random>

namespace {

rho::Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937& rng, int density_percent)
{
    std::uniform_int_distribution<int> value(-9, 9), den(1, 4), keep(0, 99);
    rho::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (keep(rng) < density_percent)
                m(r, c) = rho::Scalar(rho::Rational(value(rng), den(rng)));
    return m;
}

template <class F>
double seconds(F&& f)
{
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Serial against OpenMP exact linear algebra kernels"};
    std::vector<std::size_t> sizes{32, 64, 96};
    unsigned seed = 1;
    int density = 60;
    app.add_option("--sizes", sizes, "Square matrix sizes");
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--density", density, "Percentage of nonzero entries")->check(CLI::Range(1, 100));
    CLI11_PARSE(app, argc, argv);

    std::cout << "threads " << omp_get_max_threads() << "\n";
    std::cout << "kernel    size  serial_s  parallel_s  speedup  agree\n";
    std::mt19937 rng(seed);
    bool all_agree = true;
    for (std::size_t n : sizes) {
        rho::Matrix a = random_matrix(n, n, rng, density), b = random_matrix(n, n, rng, density);

        rho::Matrix ps, pp;
        double ts = seconds([&] { ps = rho::linalg::serial::multiply(a, b); });
        double tp = seconds([&] { pp = rho::linalg::parallel::multiply(a, b); });
        bool agree = ps == pp;
        all_agree = all_agree && agree;
        std::printf("multiply  %4zu  %8.3f  %10.3f  %7.2f  %s\n", n, ts, tp, ts / tp, agree ? "yes" : "NO");

        rho::linalg::Echelon es, ep;
        ts = seconds([&] { es = rho::linalg::serial::rref(a); });
        tp = seconds([&] { ep = rho::linalg::parallel::rref(a); });
        agree = es.reduced == ep.reduced && es.pivots == ep.pivots;
        all_agree = all_agree && agree;
        std::printf("rref      %4zu  %8.3f  %10.3f  %7.2f  %s\n", n, ts, tp, ts / tp, agree ? "yes" : "NO");
    }
    return all_agree ? 0 : 1;
}
