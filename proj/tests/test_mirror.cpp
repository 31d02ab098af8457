#include "doctest.h"

#include "rho/corpus.hpp"
#include "rho/errors.hpp"
#include "rho/mirror.hpp"

#include <random>

using namespace rho;

namespace {

Vector whole(const FiniteDGA& a, const std::string& text)
{
    return to_whole(a, parse_element(a, text));
}

std::size_t index_of(const YukawaReport& y, const std::string& name)
{
    for (std::size_t k = 0; k < y.names.size(); ++k)
        if (y.names[k] == name)
            return k;
    FAIL("no basis element " << name);
    return 0;
}

std::size_t binomial(int n, int k)
{
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

AlgebraFile point_package()
{
    AlgebraFile f;
    f.kind = "cy-package";
    f.n = 0;
    f.trace = {{"1", "1"}};
    f.omega = "1";
    f.volume_scale = "1";
    f.b_side = FileBSide{};
    f.flat = {{"1", "1"}};
    return f;
}

// n = 4 diamond with a (2,0) class s whose square vanishes.
AlgebraFile square_zero_diamond()
{
    AlgebraFile f;
    f.kind = "cy-package";
    f.n = 4;
    f.generators = {{"s", 2, 0}, {"sb", 2, 4}, {"hol", 4, 0}, {"ahol", 0, 4}, {"vol", 4, 4}};
    f.products = {{"s", "sb", "vol"}, {"hol", "ahol", "vol"}};
    f.trace = {{"vol", "1"}};
    f.omega = "hol";
    f.volume_scale = "1";
    f.b_side = FileBSide{{{"c20", 2, 0}, {"c24", 2, 4}, {"c40", 4, 0}, {"c04", 0, 4}, {"c44", 4, 4}},
                         {{"c20", "c24", "c44"}, {"c40", "c04", "c44"}}};
    f.flat = {{"1", "hol"}, {"c20", "s"}, {"c24", "sb"}, {"c40", "1"}, {"c04", "vol"}, {"c44", "ahol"}};
    return f;
}

Matrix random_matrix(std::size_t n, std::mt19937& rng)
{
    std::uniform_int_distribution<int> dist(-3, 3);
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = Scalar(dist(rng));
    return m;
}

} // namespace

TEST_CASE("mirror: flat and sharp on the 2-torus")
{
    CYInput in = load_cy(corpus_file("t2-cy-package"));
    const CYPackage& p = in.package;
    const FiniteDGA& a = p.a_side.a();
    const FiniteDGA& b = *p.b_side;
    // Contraction against Omega = dz: v -> 1, v dzb -> dzb, 1 -> dz, dzb -> dz dzb.
    CHECK(p.flat_of(whole(b, "v")) == whole(a, "1"));
    CHECK(p.flat_of(whole(b, "v_dzb")) == whole(a, "dzb"));
    CHECK(p.flat_of(whole(b, "1")) == whole(a, "dz"));
    CHECK(p.sharp_of(p.omega()) == whole(b, "1"));
    CHECK(p.sharp * p.flat == Matrix::identity(4));

    BAlgebra ba = b_algebra(p);
    CHECK(ba.transport_audit);
    CHECK(ba.frobenius.hodge_numbers() == std::map<Bidegree, std::size_t>{{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
    // integral of v dzb is the integral of dzb wedge dz = -1.
    CHECK(p.integral_b(whole(b, "v_dzb")) == Scalar(-1));

    AlgebraFile singular = corpus_file("t2-cy-package");
    singular.flat[1].value = "0";
    CHECK_THROWS_AS(load_cy(singular), PreconditionError);
    AlgebraFile zero = corpus_file("t2-cy-package");
    zero.volume_scale = "0";
    CHECK_THROWS_AS(load_cy(zero), PreconditionError);
}

TEST_CASE("mirror: bidegree flip on every package")
{
    std::vector<AlgebraFile> files;
    for (const auto& e : corpus_catalog())
        if (corpus_file(e.name).kind == "cy-package")
            files.push_back(corpus_file(e.name));
    files.push_back(torus_cy_package(3));
    for (const auto& f : files) {
        CYInput in = load_cy(f);
        BAlgebra ba = b_algebra(in.package);
        auto ha = in.package.a_side.hodge_numbers();
        auto hb = ba.frobenius.hodge_numbers();
        int n = in.package.n;
        for (auto [bd, h] : hb)
            CHECK(ha[{n - bd.p, bd.q}] == h);
        for (auto [bd, h] : ha)
            CHECK(hb[{n - bd.p, bd.q}] == h);
    }
    CYInput t6 = load_cy(torus_cy_package(3));
    for (auto [bd, h] : b_algebra(t6.package).frobenius.hodge_numbers())
        CHECK(h == binomial(3, bd.p) * binomial(3, bd.q));
}

TEST_CASE("mirror: Yukawa couplings on the 2-torus")
{
    CYInput in = load_cy(corpus_file("t2-cy-package"));
    YukawaReport y = yukawa(in.package, in.rational);
    CHECK(y.rational);
    CHECK(y.symmetric);
    std::size_t one = index_of(y, "1"), dz = index_of(y, "dz"), dzb = index_of(y, "dzb"), top = index_of(y, "dz_dzb");
    // sharp: dz -> 1, 1 -> v, dzb -> v dzb, dz dzb -> dzb.
    CHECK(y.at(dz, dz, dzb) == Scalar(-1));
    CHECK(y.at(dz, one, top) == Scalar(-1));
    CHECK(y.at(dz, top, one) == Scalar(1));
    CHECK(y.at(one, one, dzb).is_zero());
    CHECK(y.at(dz, dz, dz).is_zero());

    // Three sharps give t^-3, flat and the wedge with Omega give t each.
    CHECK(yukawa_scaling_exponent(in.package, in.rational) == -1);
    CYInput t6 = load_cy(torus_cy_package(3));
    CHECK(yukawa_scaling_exponent(t6.package, t6.rational, 3) == -1);
    CHECK(yukawa(t6.package, t6.rational).symmetric);

    AlgebraFile scaled = corpus_file("t2-cy-package");
    scaled.volume_scale = "i";
    CYInput si = load_cy(scaled);
    YukawaReport yi = yukawa(si.package, si.rational);
    CHECK(!yi.rational);
    CHECK(yi.rational_witness.rfind("(", 0) == 0);
    CHECK(yi.at(dz, dz, dzb) == Scalar::parse("i"));

    RationalStructure no_unit{{"dz", "1", "dzb", "dz_dzb"}, {}};
    for (const auto& name : no_unit.names)
        no_unit.basis.push_back(parse_element(in.package.a_side.a(), name));
    CHECK_THROWS_AS(yukawa(in.package, no_unit), PreconditionError);
}

TEST_CASE("mirror: rationality survives a rational change of basis")
{
    CYInput t4 = load_cy(corpus_file("t4-hyperkahler-package"));
    const FiniteDGA& a = t4.package.a_side.a();
    REQUIRE(yukawa(t4.package, t4.rational).rational);
    RationalStructure changed = t4.rational;
    auto replace = [&](RationalStructure& r, const std::string& name, const std::string& text) {
        for (std::size_t k = 0; k < r.names.size(); ++k)
            if (r.names[k] == name) {
                r.names[k] = text;
                r.basis[k] = parse_element(a, text);
                return;
            }
        FAIL("no basis element " << name);
    };
    replace(changed, "dz1", "dz1+2*dz2");
    replace(changed, "dzb1", "1/3*dzb1-dzb2");
    replace(changed, "dz1_dz2", "-2*dz1_dz2");
    YukawaReport y = yukawa(t4.package, changed);
    CHECK(y.rational);
    CHECK(y.symmetric);

    RationalStructure twisted = changed;
    replace(twisted, "dz2", "i*dz2");
    CHECK_THROWS_AS(yukawa(t4.package, twisted), PreconditionError);
}

TEST_CASE("mirror: isomorphism search")
{
    CYInput in = load_cy(corpus_file("t2-cy-package"));
    const FiniteDGA& a = in.package.a_side.a();
    const FiniteDGA& b = *in.package.b_side;
    MirrorVerdict v = mirror_check(a, b, 1000);
    REQUIRE(v.outcome == MirrorOutcome::Isomorphism);
    REQUIRE(v.map);
    CHECK(!isomorphism_defect(b, a, *v.map));
    const Matrix& m = *v.map;
    CHECK(m.apply(multiply_whole(b, whole(b, "v"), whole(b, "dzb"))) ==
          multiply_whole(a, m.apply(whole(b, "v")), m.apply(whole(b, "dzb"))));
    CHECK(v.blocks.size() == 4);

    CHECK(mirror_check(a, b, 0).outcome == MirrorOutcome::Inconclusive);

    AlgebraFile s2;
    s2.kind = "frobenius";
    s2.n = 1;
    s2.generators = {{"h", 1, 1}};
    s2.trace = {{"h", "1"}};
    s2.scalars = Field::QI;
    auto cp1 = load_frobenius(s2);
    MirrorVerdict dims = mirror_check(cp1.frobenius.a(), b, 1000);
    CHECK(dims.outcome == MirrorOutcome::Obstruction);
    CHECK(dims.detail.find("dimension mismatch") != std::string::npos);

    AlgebraFile scrambled;
    scrambled.kind = "tabular-dga";
    scrambled.scalars = Field::QI;
    scrambled.generators = {{"v", 1, 0}, {"dzb", 0, 1}, {"v_dzb", 1, 1}};
    scrambled.products = {{"v", "v", "0"}};
    FiniteDGA bad = load_tabular_dga(scrambled);
    CHECK(mirror_check(a, bad, 1000).outcome != MirrorOutcome::Isomorphism);

    CYInput t4 = load_cy(corpus_file("t4-hyperkahler-package"));
    MirrorVerdict v4 = mirror_check(t4.package.a_side.a(), *t4.package.b_side, 100000);
    REQUIRE(v4.outcome == MirrorOutcome::Isomorphism);
    CHECK(!isomorphism_defect(*t4.package.b_side, t4.package.a_side.a(), *v4.map));
}

TEST_CASE("mirror: tilde transport")
{
    CYInput in = load_cy(corpus_file("t4-hyperkahler-package"));
    const CYPackage& p = in.package;
    const GradedSpace& sb = p.b_side->space();
    std::size_t na = p.a_side.a().space().total_dim();
    CHECK(tilde_transport(p, Matrix::identity(na)) == Matrix::identity(sb.total_dim()));

    Matrix l = lefschetz_operator(p.a_side, *in.kahler_class);
    CHECK(operator_bidegree(sb, sb, tilde_transport(p, l)) == Bidegree{-1, 1});

    std::mt19937 rng(7);
    Matrix g = Matrix::identity(na);
    Matrix gb = transported_metric(p, g);
    for (int trial = 0; trial < 3; ++trial) {
        Matrix o1 = random_matrix(na, rng), o2 = random_matrix(na, rng);
        CHECK(tilde_transport(p, o1 * o2) == tilde_transport(p, o1) * tilde_transport(p, o2));
        CHECK(whole_adjoint(tilde_transport(p, o1), gb) == tilde_transport(p, whole_adjoint(o1, g)));
    }
}

TEST_CASE("mirror: tilde sl(2) is not of Lefschetz type")
{
    CYInput in = load_cy(corpus_file("t2-cy-package"));
    TildeSl2 t = tilde_sl2(in.package, *in.kahler_class);
    CHECK(t.relations.pass());
    CHECK(!t.lefschetz_type.bidegrees);
    CHECK(t.l_bidegree == Bidegree{-1, 1});
    CHECK(t.lambda_bidegree == Bidegree{1, -1});

    CYInput t4 = load_cy(corpus_file("t4-hyperkahler-package"));
    TildeSl2 t4s = tilde_sl2(t4.package, *t4.kahler_class);
    CHECK(t4s.relations.pass());
    CHECK(!t4s.lefschetz_type.pass());
    CHECK(t4s.l_bidegree == Bidegree{-1, 1});

    Element zero{2, Vector(in.package.a_side.a().dim(2))};
    CHECK_THROWS_AS(tilde_sl2(in.package, zero), PreconditionError);
}

TEST_CASE("mirror: simple connectivity and rational homotopy")
{
    CYInput t2 = load_cy(corpus_file("t2-cy-package"));
    BAlgebra b2 = b_algebra(t2.package);
    Verdict v = b_simply_connected_check(b2);
    CHECK(!v.pass);
    CHECK(v.witness == "h_B^(0,1) = 1");
    YukawaReport y2 = yukawa(t2.package, t2.rational);
    CHECK_THROWS_AS(rational_homotopy_from_b(t2.package, b2, y2, 4), PreconditionError);

    CYInput pt = load_cy(point_package());
    CHECK(b_simply_connected_check(b_algebra(pt.package)).pass);

    CYInput cy3 = load_cy(corpus_file("cy3-diamond-template"));
    BAlgebra b3 = b_algebra(cy3.package);
    CHECK(b_simply_connected_check(b3).pass);
    YukawaReport y3 = yukawa(cy3.package, cy3.rational);
    CHECK(y3.rational);
    RationalHomotopy rh = rational_homotopy_from_b(cy3.package, b3, y3, 5);
    // Simply connected with H^1 = H^2 = 0: pi_3 has rank dim H^3.
    CHECK(rh.ranks[2] == 0);
    CHECK(rh.ranks[3] == b3.frobenius.a().dim(3));
    CHECK(rh.lambda == Scalar(1));
}

TEST_CASE("mirror: hyperkahler self-mirror")
{
    CYInput t4 = load_cy(corpus_file("t4-hyperkahler-package"));
    const FiniteDGA& a = t4.package.a_side.a();
    MirrorVerdict v = hyperkahler_self_mirror(t4.package, parse_element(a, "dz1_dz2"));
    REQUIRE(v.outcome == MirrorOutcome::Isomorphism);
    CHECK(!isomorphism_defect(*t4.package.b_side, a, *v.map));
    CHECK(v.map->rows() == 16);

    CYInput t2 = load_cy(corpus_file("t2-cy-package"));
    CHECK_THROWS_AS(hyperkahler_self_mirror(t2.package, parse_element(t2.package.a_side.a(), "dz")),
                    PreconditionError);

    CYInput d4 = load_cy(square_zero_diamond());
    CHECK_THROWS_WITH_AS(hyperkahler_self_mirror(d4.package, parse_element(d4.package.a_side.a(), "s")),
                         doctest::Contains("sigma^2 = 0"), PreconditionError);
}

TEST_CASE("mirror: Kahler class search on the B side")
{
    CYInput t4 = load_cy(corpus_file("t4-hyperkahler-package"));
    BAlgebra b = b_algebra(t4.package);
    KahlerSearch s = search_mirror_kahler_class(b, {0, 1}, 100);
    REQUIRE(s.candidate);
    const FiniteDGA& alg = b.frobenius.a();
    Element omega{2, Vector(alg.dim(2))};
    for (std::size_t i = 0; i < omega.coeffs.size(); ++i)
        omega.coeffs[i] = (*s.candidate)[alg.space().offset(2) + i];
    CHECK(hard_lefschetz_check(b.frobenius, omega).pass);
    CHECK(s.tried >= 1);
}
