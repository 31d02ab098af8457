#include "rho/morphism.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

namespace rho {

Element DgaMorphism::apply(const Element& x) const
{
    int p = x.degree;
    std::size_t rows = p <= target->top() ? target->dim(p) : 0;
    if (p > source->top())
        return {p, Vector(rows)};
    return {p, maps.at(p).apply(x.coeffs)};
}

DgaMorphism DgaMorphism::from_generator_images(DgaPtr source, DgaPtr target, const std::vector<Element>& images)
{
    const FreeDGA* free = source->presentation();
    if (!free)
        throw PreconditionError("source is not presented as a free DGA");
    const FreeGCA& alg = free->algebra;
    if (images.size() != alg.size())
        throw PreconditionError("need one image per generator");
    DgaMorphism f{source, target, {}, std::nullopt};
    for (std::size_t g = 0; g < alg.size(); ++g) {
        int want = alg.generators()[g].degree();
        std::size_t want_dim = want <= target->top() ? target->dim(want) : 0;
        if (images[g].degree != want || images[g].coeffs.size() != want_dim) {
            f.defect = "image of " + alg.generators()[g].name + " has degree " + std::to_string(images[g].degree) +
                       ", expected " + std::to_string(want);
            break;
        }
    }
    for (int p = 0; p <= source->top(); ++p) {
        std::size_t rows = p <= target->top() ? target->dim(p) : 0;
        Matrix m(rows, source->dim(p));
        if (!f.defect) {
            for (std::size_t k = 0; k < source->dim(p); ++k) {
                const Monomial& mono = source->monomials(p)[k];
                Element img = target->unit();
                for (std::size_t g = 0; g < alg.size(); ++g)
                    for (int e = 0; e < mono.exponents[g]; ++e)
                        img = target->multiply(img, images[g]);
                if (img.coeffs.size() == rows)
                    m.set_column(k, img.coeffs);
            }
        }
        f.maps.push_back(std::move(m));
    }
    return f;
}

CheckResult check_morphism(const DgaMorphism& f)
{
    if (f.defect)
        return CheckResult::fail(*f.defect);
    const FiniteDGA& s = *f.source;
    const FiniteDGA& t = *f.target;
    if (s.field() != t.field())
        return CheckResult::fail("source and target over different fields");
    int top = std::min(s.top(), t.top());
    if (f.apply(s.unit()).coeffs != t.unit().coeffs)
        return CheckResult::fail("unit not preserved");
    for (int p = 0; p + 1 <= top; ++p) {
        Matrix lhs = f.maps[p + 1] * s.d(p);
        Matrix rhs = t.d(p) * f.maps[p];
        if (lhs != rhs) {
            for (std::size_t c = 0; c < lhs.cols(); ++c)
                if (lhs.column(c) != rhs.column(c))
                    return CheckResult::fail("f d != d f on " + s.space().label(p, c));
        }
    }
    for (int p = 1; p <= top; ++p)
        for (int q = p; p + q <= top; ++q)
            for (std::size_t i = 0; i < s.dim(p); ++i)
                for (std::size_t j = 0; j < s.dim(q); ++j) {
                    Element x = s.basis(p, i), y = s.basis(q, j);
                    if (f.apply(s.multiply(x, y)).coeffs != t.multiply(f.apply(x), f.apply(y)).coeffs)
                        return CheckResult::fail("not multiplicative on (" + s.space().label(p, i) + ", " +
                                                 s.space().label(q, j) + ")");
                }
    return {};
}

QuasiIsoReport quasi_isomorphism(const DgaMorphism& f, const Cohomology& hs, const Cohomology& ht)
{
    QuasiIsoReport r;
    int up_to = std::min(hs.up_to(), ht.up_to());
    for (int p = 0; p <= up_to; ++p) {
        Matrix m(ht.dim(p), hs.dim(p));
        for (std::size_t i = 0; i < hs.dim(p); ++i)
            m.set_column(i, ht.class_of(f.apply(hs.representative(p, i))));
        bool iso = m.rows() == m.cols() && linalg::rank(m) == m.rows();
        if (!iso && r.quasi_isomorphism) {
            r.quasi_isomorphism = false;
            r.failing_degree = p;
            r.detail = "H^" + std::to_string(p) + ": induced map " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + " of rank " + std::to_string(linalg::rank(m));
        }
        r.induced.push_back(std::move(m));
    }
    return r;
}

QuasiIsoReport quasi_isomorphism(const DgaMorphism& f, int up_to)
{
    Cohomology hs(f.source, up_to);
    Cohomology ht(f.target, up_to);
    return quasi_isomorphism(f, hs, ht);
}

} // namespace rho
