#include "rho/massey.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

namespace rho {

namespace {

Element primitive(const Cohomology& h, const Element& x, const char* what)
{
    const FiniteDGA& a = h.algebra();
    if (!h.is_coboundary(x))
        throw PreconditionError(std::string("Massey product undefined: ") + what + " is nonzero in cohomology");
    int p = x.degree - 1;
    if (x.is_zero() || p < 0)
        return a.zero(p);
    auto sol = linalg::solve(a.d(p), x.coeffs);
    if (!sol)
        throw ConsistencyError("exact class without a primitive");
    return {p, *sol};
}

} // namespace

MasseyVerdict massey_triple(const Cohomology& h, const Element& a, const Element& b, const Element& c)
{
    const FiniteDGA& alg = h.algebra();
    Element u = primitive(h, alg.multiply(a, b), "[a][b]");
    Element v = primitive(h, alg.multiply(b, c), "[b][c]");
    return massey_triple(h, a, b, c, u, v);
}

MasseyVerdict massey_triple(const Cohomology& h, const Element& a, const Element& b, const Element& c,
                            const Element& u, const Element& v)
{
    const FiniteDGA& alg = h.algebra();
    for (const Element* x : {&a, &b, &c})
        if (!h.is_cocycle(*x))
            throw PreconditionError("Massey product arguments must be cocycles");
    int deg = a.degree + b.degree + c.degree - 1;
    if (deg > h.up_to())
        throw PreconditionError("cohomology not computed through degree " + std::to_string(deg));
    if (alg.d(u).coeffs != alg.multiply(a, b).coeffs || alg.d(v).coeffs != alg.multiply(b, c).coeffs)
        throw PreconditionError("u and v must satisfy du = ab and dv = bc");

    MasseyVerdict out;
    out.u = u;
    out.v = v;
    Element av = alg.multiply(a, v);
    Element uc = alg.multiply(u, c);
    out.representative = {deg, add(av.coeffs, scale(uc.coeffs, -sign(a.degree)))};
    if (!h.is_cocycle(out.representative))
        throw ConsistencyError("Massey representative is not a cocycle");
    out.class_coords = h.class_of(out.representative);

    std::vector<Vector> ind;
    int q = b.degree + c.degree - 1;
    for (std::size_t i = 0; i < h.dim(q); ++i)
        ind.push_back(h.class_of(alg.multiply(a, h.representative(q, i))));
    int r = a.degree + b.degree - 1;
    for (std::size_t i = 0; i < h.dim(r); ++i)
        ind.push_back(h.class_of(alg.multiply(h.representative(r, i), c)));
    out.indeterminacy = linalg::span_basis(ind, h.dim(deg));
    out.nonzero = !linalg::in_span(out.indeterminacy, out.class_coords) && !is_zero(out.class_coords);
    return out;
}

} // namespace rho
