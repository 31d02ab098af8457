#include "rho/corpus.hpp"

#include "rho/errors.hpp"

#include <bit>
#include <functional>
#include <map>

namespace rho {

namespace {

FileValue value(std::string on, std::string v)
{
    return {std::move(on), std::move(v)};
}

AlgebraFile free_file(std::string name, std::vector<FileGenerator> gens, std::vector<FileValue> d)
{
    AlgebraFile f;
    f.kind = "free-dga";
    f.name = std::move(name);
    f.generators = std::move(gens);
    f.differential = std::move(d);
    return f;
}

AlgebraFile point()
{
    AlgebraFile f;
    f.kind = "tabular-dga";
    f.name = "point";
    return f;
}

AlgebraFile cpn(int n)
{
    AlgebraFile f = free_file("cpn-" + std::to_string(n), {{"a", 1, 1}, {"b", n + 1, n}},
                              {value("b", "a^" + std::to_string(n + 1))});
    f.kahler_class = "a";
    f.trace = {value("a^" + std::to_string(n), "1")};
    return f;
}

AlgebraFile torus(int m)
{
    std::vector<FileGenerator> gens;
    std::string omega, top;
    for (int k = 1; k <= m; ++k) {
        std::string x = "x" + std::to_string(k), y = "y" + std::to_string(k);
        gens.push_back({x, 1, 0});
        gens.push_back({y, 0, 1});
        omega += (omega.empty() ? "" : " + ") + x + "*" + y;
        top += (top.empty() ? "" : "*") + x + "*" + y;
    }
    AlgebraFile f = free_file("torus-T" + std::to_string(2 * m), std::move(gens), {});
    f.kahler_class = omega;
    f.trace = {value(top, "1")};
    return f;
}

AlgebraFile torus_dolbeault(int m)
{
    AlgebraFile f;
    f.kind = "bicomplex";
    f.name = "torus-T" + std::to_string(2 * m) + "-dolbeault";
    f.scalars = Field::QI;
    f.presentation = "free";
    for (int k = 1; k <= m; ++k) {
        f.generators.push_back({"dz" + std::to_string(k), 1, 0});
        f.generators.push_back({"dzb" + std::to_string(k), 0, 1});
    }
    f.metric = FileMetric{true, {}};
    return f;
}

AlgebraFile iwasawa()
{
    AlgebraFile f;
    f.kind = "bicomplex";
    f.name = "iwasawa-type";
    f.scalars = Field::QI;
    f.presentation = "free";
    f.generators = {{"x1", 1, 0}, {"x2", 1, 0}, {"x3", 1, 0}, {"y1", 0, 1}, {"y2", 0, 1}, {"y3", 0, 1}};
    f.differential = {value("x3", "-x1*x2")};
    f.differential_c = {value("y3", "-y1*y2")};
    f.metric = FileMetric{true, {}};
    return f;
}

AlgebraFile kahler_square()
{
    AlgebraFile f;
    f.kind = "bicomplex";
    f.name = "kahler-square";
    f.presentation = "tabular";
    f.generators = {{"s00", 1, 1}, {"s10", 2, 1}, {"s01", 1, 2}, {"s11", 2, 2}};
    f.differential = {value("s00", "s10"), value("s01", "s11")};
    f.differential_c = {value("s00", "s01"), value("s10", "-s11")};
    f.metric = FileMetric{true, {}};
    return f;
}

AlgebraFile kahler_square_tensor()
{
    MetricBicomplex square = load_bicomplex(kahler_square());
    MetricBicomplex t2 = load_bicomplex(torus_dolbeault(1));
    AlgebraFile f = export_bicomplex(tensor(square, t2));
    f.name = "kahler-square-tensor";
    return f;
}

// Exterior algebra on named odd generators; basis elements are bit masks and
// labels join generator names with "_".
struct Exterior {
    std::vector<FileGenerator> gens;

    std::string label(unsigned mask) const
    {
        if (mask == 0)
            return "1";
        std::string s;
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (mask >> k & 1u)
                s += (s.empty() ? "" : "_") + gens[k].name;
        return s;
    }

    Bidegree bidegree(unsigned mask) const
    {
        Bidegree b;
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (mask >> k & 1u)
                b = b + Bidegree{gens[k].p, gens[k].q};
        return b;
    }

    // Sign of e_a e_b = sign * e_{a|b}; zero when they overlap.
    static int sign(unsigned a, unsigned b)
    {
        if (a & b)
            return 0;
        int swaps = 0;
        for (unsigned k = 0; k < 32; ++k)
            if (b >> k & 1u)
                swaps += std::popcount(a >> (k + 1));
        return swaps % 2 ? -1 : 1;
    }

    unsigned size() const { return 1u << gens.size(); }

    std::vector<FileGenerator> basis() const
    {
        std::vector<FileGenerator> out;
        for (unsigned m = 1; m < size(); ++m) {
            Bidegree b = bidegree(m);
            out.push_back({label(m), b.p, b.q});
        }
        return out;
    }

    std::vector<FileProduct> products() const
    {
        std::vector<FileProduct> out;
        for (unsigned a = 1; a < size(); ++a)
            for (unsigned b = a + 1; b < size(); ++b)
                if (int s = sign(a, b))
                    out.push_back({label(a), label(b), (s < 0 ? "-" : "") + label(a | b)});
        return out;
    }
};

} // namespace

AlgebraFile torus_cy_package(int m)
{
    if (m < 1 || m > 4)
        throw PreconditionError("torus packages are provided for complex dimension 1 to 4");
    auto idx = [m](const char* stem, int k) { return m == 1 ? std::string(stem) : stem + std::to_string(k); };
    Exterior a, b;
    for (int k = 1; k <= m; ++k) {
        a.gens.push_back({idx("dz", k), 1, 0});
        b.gens.push_back({idx("v", k), 1, 0});
    }
    for (int k = 1; k <= m; ++k) {
        a.gens.push_back({idx("dzb", k), 0, 1});
        b.gens.push_back({idx("dzb", k), 0, 1});
    }
    AlgebraFile f;
    f.kind = "cy-package";
    f.name = "torus-cy-" + std::to_string(m);
    f.scalars = Field::QI;
    f.n = m;
    f.generators = a.basis();
    f.products = a.products();
    unsigned hol = (1u << m) - 1;
    unsigned all = a.size() - 1;
    f.trace = {value(a.label(all), "1")};
    std::string omega;
    for (int k = 0; k < m; ++k)
        omega += (omega.empty() ? "" : " + ") + a.label((1u << k) | (1u << (m + k)));
    f.kahler_class = omega;
    f.rational_basis.push_back("1");
    for (const auto& g : f.generators)
        f.rational_basis.push_back(g.name);
    f.omega = a.label(hol);
    f.volume_scale = "1";
    f.b_side = FileBSide{b.basis(), b.products()};
    // Flat of V (x) beta is (V contracted into Omega, leftmost vector first) wedge beta.
    for (unsigned mask = 0; mask < b.size(); ++mask) {
        unsigned form = hol;
        int sgn = 1;
        for (int k = 0; k < m; ++k)
            if (mask >> k & 1u) {
                if (std::popcount(form & ((1u << k) - 1)) % 2)
                    sgn = -sgn;
                form &= ~(1u << k);
            }
        unsigned result = form | (mask & ~hol);
        f.flat.push_back(value(b.label(mask), (sgn < 0 ? "-" : "") + a.label(result)));
    }
    return f;
}

namespace {

AlgebraFile cy3_template()
{
    AlgebraFile f;
    f.kind = "cy-package";
    f.name = "cy3-diamond-template";
    f.scalars = Field::QI;
    f.n = 3;
    f.generators = {{"om", 1, 1}, {"om2", 2, 2}, {"hol", 3, 0}, {"ahol", 0, 3}, {"vol", 3, 3}};
    f.products = {{"om", "om", "om2"}, {"om", "om2", "vol"}, {"hol", "ahol", "vol"}};
    f.trace = {value("vol", "1")};
    f.kahler_class = "om";
    f.rational_basis = {"1", "om", "om2", "hol", "ahol", "vol"};
    f.omega = "hol";
    f.volume_scale = "1";
    f.b_side = FileBSide{{{"b21", 2, 1}, {"b12", 1, 2}, {"b30", 3, 0}, {"b03", 0, 3}, {"b33", 3, 3}},
                         {{"b21", "b12", "b33"}, {"b30", "b03", "b33"}}};
    f.flat = {value("1", "hol"), value("b21", "om"), value("b12", "om2"), value("b30", "1"), value("b03", "vol"),
              value("b33", "ahol")};
    return f;
}

struct Builder {
    CorpusEntry entry;
    std::function<AlgebraFile()> build;
};

const std::vector<Builder>& builders()
{
    static const std::vector<Builder> all = [] {
        std::vector<Builder> v;
        v.push_back({{"point", "the one-point space"}, point});
        v.push_back({{"sphere-S2", "free model of the 2-sphere"},
                     [] { return free_file("sphere-S2", {{"e2", 1, 1}, {"e3", 2, 1}}, {value("e3", "e2^2")}); }});
        v.push_back({{"sphere-S3", "free model of the 3-sphere"},
                     [] { return free_file("sphere-S3", {{"e3", 2, 1}}, {}); }});
        for (int n = 2; n <= 6; ++n)
            v.push_back({{"cpn-" + std::to_string(n), "free model of complex projective " + std::to_string(n) + "-space"},
                         [n] { return cpn(n); }});
        for (int m = 1; m <= 3; ++m)
            v.push_back({{"torus-T" + std::to_string(2 * m), "de Rham model of the real " + std::to_string(2 * m) + "-torus"},
                         [m] { return torus(m); }});
        for (int m = 1; m <= 3; ++m)
            v.push_back({{"torus-T" + std::to_string(2 * m) + "-dolbeault",
                          "invariant Dolbeault bicomplex of the complex " + std::to_string(m) + "-torus"},
                         [m] { return torus_dolbeault(m); }});
        v.push_back({{"heisenberg", "Heisenberg nilmanifold model"},
                     [] {
                         return free_file("heisenberg", {{"x", 1, 0}, {"y", 1, 0}, {"z", 1, 0}}, {value("z", "x*y")});
                     }});
        v.push_back({{"iwasawa-type", "Iwasawa-type nilmanifold with del and delbar"}, iwasawa});
        v.push_back({{"kahler-square", "single square spanned by d and dc"}, kahler_square});
        v.push_back({{"kahler-square-tensor", "Kahler square tensor the Dolbeault 2-torus"}, kahler_square_tensor});
        v.push_back({{"t2-cy-package", "Calabi-Yau package of the complex 1-torus"}, [] {
                         AlgebraFile f = torus_cy_package(1);
                         f.name = "t2-cy-package";
                         return f;
                     }});
        v.push_back({{"t4-hyperkahler-package", "Calabi-Yau package of the complex 2-torus"}, [] {
                         AlgebraFile f = torus_cy_package(2);
                         f.name = "t4-hyperkahler-package";
                         return f;
                     }});
        v.push_back({{"cy3-diamond-template", "schema example for user-supplied threefold data"}, cy3_template});
        return v;
    }();
    return all;
}

} // namespace

const std::vector<CorpusEntry>& corpus_catalog()
{
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (const auto& b : builders())
            out.push_back(b.entry);
        return out;
    }();
    return entries;
}

AlgebraFile corpus_file(const std::string& name)
{
    for (const auto& b : builders())
        if (b.entry.name == name)
            return b.build();
    throw PreconditionError("unknown corpus entry '" + name + "'");
}

} // namespace rho
