#include "doctest.h"

#include "rho/corpus.hpp"
#include "rho/errors.hpp"
#include "rho/lefschetz.hpp"

using namespace rho;

namespace {

AlgebraFile frobenius_file(int n, std::vector<FileGenerator> gens, std::vector<FileProduct> products,
                           std::vector<FileValue> trace)
{
    AlgebraFile f;
    f.kind = "frobenius";
    f.n = n;
    f.generators = std::move(gens);
    f.products = std::move(products);
    f.trace = std::move(trace);
    return f;
}

// k[a]/(a^4) with a of bidegree (1,1), trace on a^3.
AlgebraFile cp3_style(std::string square = "a2", Field field = Field::Q)
{
    AlgebraFile f = frobenius_file(3, {{"a", 1, 1}, {"a2", 2, 2}, {"a3", 3, 3}},
                                   {{"a", "a", square}, {"a", "a2", "a3"}}, {{"a3", "1"}});
    f.scalars = field;
    f.kahler_class = "a";
    return f;
}

std::size_t binomial(int n, int k)
{
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("frobenius: small examples")
{
    auto s2 = load_frobenius(frobenius_file(1, {{"h", 1, 1}}, {}, {{"h", "1"}}));
    CHECK(s2.frobenius.pairing(0)(0, 0) == Scalar(1));

    auto cp3 = load_frobenius(cp3_style());
    const auto& f = cp3.frobenius;
    const FiniteDGA& a = f.a();
    CHECK(f.eta(parse_element(a, "a"), parse_element(a, "a2")) == Scalar(1));
    CHECK(f.eta(a.unit(), parse_element(a, "a3")) == Scalar(1));

    AlgebraFile zero = cp3_style();
    zero.trace = {{"a3", "0"}};
    CHECK_THROWS_WITH_AS(load_frobenius(zero), doctest::Contains("null vector"), PreconditionError);

    AlgebraFile off = cp3_style();
    off.generators.push_back({"c", 2, 1});
    CHECK_THROWS_AS(load_frobenius(off), PreconditionError);
}

TEST_CASE("frobenius: hard Lefschetz on k[a]/(a^4)")
{
    auto in = load_frobenius(cp3_style());
    LefschetzVerdict v = hard_lefschetz_check(in.frobenius, *in.kahler_class);
    REQUIRE(v.pass);
    CHECK(v.sl2.pass());
    CHECK(v.eigen_multiplicities == std::map<int, std::size_t>{{-3, 1}, {-1, 1}, {1, 1}, {3, 1}});
    // Whole-space order 1, a, a2, a3; X a^j = j(4 - j) a^(j-1).
    const Matrix& x = v.rep->x;
    CHECK(x(0, 1) == Scalar(3));
    CHECK(x(1, 2) == Scalar(4));
    CHECK(x(2, 3) == Scalar(3));
    CHECK(check_lefschetz_type(*v.rep).pass());

    auto point = load_frobenius(frobenius_file(0, {}, {}, {{"1", "1"}}));
    CHECK(hard_lefschetz_check(point.frobenius, Element{2, {}}).pass);
}

TEST_CASE("frobenius: a-deficient product algebra fails at k = 3")
{
    auto in = load_frobenius(frobenius_file(3, {{"a", 1, 1}, {"b", 2, 2}, {"ab", 3, 3}}, {{"a", "b", "ab"}},
                                            {{"ab", "1"}}));
    LefschetzVerdict v = hard_lefschetz_check(in.frobenius, parse_element(in.frobenius.a(), "a"));
    CHECK(!v.pass);
    CHECK(v.failing_k() == 3);
    REQUIRE(v.failures.size() == 2);
    CHECK(v.failures[0].k == 1);
    CHECK(v.failures[1].kernel == Vector{Scalar(1)});
    CHECK(!v.rep);
}

TEST_CASE("frobenius: corpus Kahler-like entries")
{
    for (const auto& e : corpus_catalog()) {
        AlgebraFile file = corpus_file(e.name);
        if (file.kahler_class.empty() || file.kind != "free-dga")
            continue;
        auto in = load_frobenius(file, 8);
        const auto& f = in.frobenius;
        for (auto [b, h] : f.hodge_numbers())
            CHECK(f.hodge_numbers()[{f.n - b.p, f.n - b.q}] == h);
        LefschetzVerdict v = hard_lefschetz_check(f, *in.kahler_class);
        CHECK_MESSAGE(v.pass, e.name);
        for (auto [m, dim] : v.eigen_multiplicities)
            CHECK(dim == f.a().dim(f.n - m));
        RationalStructure std_basis;
        for (int p = 0; p <= f.a().top(); ++p)
            for (std::size_t i = 0; i < f.a().dim(p); ++i) {
                std_basis.names.push_back(f.a().space().label(p, i));
                std_basis.basis.push_back(f.a().basis(p, i));
            }
        CHECK(rational_structure_check(f, std_basis).pass);
        if (e.name.rfind("torus-T", 0) == 0)
            for (int p = 0; p <= 2 * f.n; ++p)
                CHECK(f.a().dim(p) == binomial(2 * f.n, p));
    }
}

TEST_CASE("frobenius: rational structure")
{
    auto in = load_frobenius(cp3_style());
    RationalStructure r{{"1", "a", "a2", "a3"}, {}};
    for (const auto& name : r.names)
        r.basis.push_back(parse_element(in.frobenius.a(), name));
    CHECK(rational_structure_check(in.frobenius, r).pass);

    auto bad = load_frobenius(cp3_style("i*a2", Field::QI));
    RationalStructure rb{r.names, {}};
    for (const auto& name : rb.names)
        rb.basis.push_back(parse_element(bad.frobenius.a(), name));
    RationalVerdict v = rational_structure_check(bad.frobenius, rb);
    CHECK(!v.pass);
    CHECK(v.witness.rfind("(a, a, a2)", 0) == 0);

    // Rational change of basis on the torus keeps the verdict.
    auto t2 = load_frobenius(corpus_file("torus-T2"), 8);
    const FiniteDGA& a = t2.frobenius.a();
    RationalStructure before{{"1", "x1", "y1", "x1*y1"}, {}};
    for (const auto& name : before.names)
        before.basis.push_back(parse_element(a, name));
    RationalStructure after{{"1", "u", "w", "t"},
                            {a.unit(), parse_element(a, "x1 + y1"), parse_element(a, "2*x1 - 3*y1"),
                             parse_element(a, "5*x1*y1")}};
    CHECK(rational_structure_check(t2.frobenius, before).pass);
    CHECK(rational_structure_check(t2.frobenius, after).pass);
    RationalStructure short_basis{{"1"}, {a.unit()}};
    CHECK_THROWS_AS(rational_structure_check(t2.frobenius, short_basis), PreconditionError);
}

TEST_CASE("lefschetz type: relations and bidegrees are checked separately")
{
    auto one = std::make_shared<GradedSpace>();
    one->add("1", {0, 0});
    CHECK(check_lefschetz_type({one, Matrix(1, 1), Matrix(1, 1), Matrix(1, 1)}).pass());

    // Y u = w with u in (1,0) and w in (0,1) satisfies sl(2) but not the bidegrees.
    auto s = std::make_shared<GradedSpace>();
    s->add("u", {1, 0});
    s->add("w", {0, 1});
    Matrix x(2, 2), y(2, 2), h(2, 2);
    y(1, 0) = Scalar(1);
    x(0, 1) = Scalar(1);
    h(0, 0) = Scalar(1);
    h(1, 1) = Scalar(-1);
    Sl2Check c = check_lefschetz_type({s, x, y, h});
    CHECK(c.relations);
    CHECK(!c.bidegrees);
    CHECK(c.witness.find("(1,-1)") != std::string::npos);
}
