#include "rho/minimal_model.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

namespace rho {

namespace {

Poly pad(const Poly& p, std::size_t n)
{
    Poly out;
    for (const auto& [m, c] : p) {
        Monomial wide = m;
        wide.exponents.resize(n, 0);
        out.emplace(std::move(wide), c);
    }
    return out;
}

struct Builder {
    Field field;
    std::vector<Generator> gens;
    std::vector<Poly> diffs;
    std::vector<Element> images;
    std::vector<bool> cocycle;
    std::vector<int> per_degree;

    DgaPtr materialize_at(int cap) const
    {
        FreeDGA free{field, FreeGCA(gens, cap), {}};
        for (const auto& d : diffs)
            free.differential.push_back(pad(d, gens.size()));
        return std::make_shared<const FiniteDGA>(materialize(free, cap));
    }

    void add(int p, Poly d, Element image, bool is_cocycle)
    {
        if (static_cast<int>(per_degree.size()) <= p)
            per_degree.resize(p + 1, 0);
        gens.push_back({"v" + std::to_string(p) + "_" + std::to_string(per_degree[p]++), {p, 0}});
        diffs.push_back(std::move(d));
        images.push_back(std::move(image));
        cocycle.push_back(is_cocycle);
        for (auto& x : diffs)
            x = pad(x, gens.size());
    }
};

} // namespace

std::vector<std::size_t> MinimalModel::generator_counts() const
{
    std::vector<std::size_t> counts(valid_up_to + 1, 0);
    for (const auto& g : free.algebra.generators())
        if (g.degree() <= valid_up_to)
            ++counts[g.degree()];
    return counts;
}

Poly to_poly(const FiniteDGA& a, const Element& x)
{
    if (!a.presentation())
        throw PreconditionError("algebra has no free presentation");
    Poly out;
    for (std::size_t k = 0; k < x.coeffs.size(); ++k)
        add_term(out, a.monomials(x.degree)[k], x.coeffs[k]);
    return out;
}

MinimalModel build_minimal_model(DgaPtr target, int up_to)
{
    const FiniteDGA& a = *target;
    if (up_to < 0)
        throw PreconditionError("negative degree bound");
    if (!a.complete() && up_to + 1 > a.valid_degree())
        throw PreconditionError("degree cap exhausted: the minimal model through degree " + std::to_string(up_to) +
                                " needs the target's cohomology through degree " + std::to_string(up_to + 1));
    Cohomology ha(target, up_to + 1);
    if (ha.dim(0) != 1 || ha.dim(1) != 0)
        throw PreconditionError("target is not simply connected (H^0 = " + std::to_string(ha.dim(0)) +
                                ", H^1 = " + std::to_string(ha.dim(1)) + ")");

    auto image_dim = [&](int p) { return p <= a.top() ? a.dim(p) : std::size_t{0}; };
    Builder b{a.field(), {}, {}, {}, {}, {}};
    for (int p = 2; p <= up_to; ++p) {
        // Surject onto H^p(target).
        DgaPtr m = b.materialize_at(p + 1);
        Cohomology hm(m, p);
        DgaMorphism f = DgaMorphism::from_generator_images(m, target, b.images);
        std::vector<Vector> hit;
        for (std::size_t i = 0; i < hm.dim(p); ++i)
            hit.push_back(ha.class_of(f.apply(hm.representative(p, i))));
        for (std::size_t k = 0; k < ha.dim(p); ++k) {
            Vector e(ha.dim(p));
            e[k] = Scalar(1);
            if (linalg::in_span(hit, e))
                continue;
            hit.push_back(e);
            b.add(p, {}, ha.representative(p, k), true);
        }

        // Kill the kernel of H^{p+1}(rho).
        m = b.materialize_at(p + 2);
        Cohomology hm1(m, p + 1);
        f = DgaMorphism::from_generator_images(m, target, b.images);
        Matrix induced(ha.dim(p + 1), hm1.dim(p + 1));
        for (std::size_t i = 0; i < hm1.dim(p + 1); ++i)
            induced.set_column(i, ha.class_of(f.apply(hm1.representative(p + 1, i))));
        for (const auto& kappa : linalg::kernel_basis(induced)) {
            Element z = m->zero(p + 1);
            for (std::size_t i = 0; i < kappa.size(); ++i)
                if (!kappa[i].is_zero())
                    z.coeffs = add(z.coeffs, scale(hm1.representative(p + 1, i).coeffs, kappa[i]));
            Element rz = f.apply(z);
            Vector pre(image_dim(p));
            if (!rz.is_zero()) {
                auto sol = linalg::solve(a.d(p), rz.coeffs);
                if (!sol)
                    throw ConsistencyError("kernel class of H^" + std::to_string(p + 1) + "(rho) is not exact in the target");
                pre = *sol;
            }
            b.add(p, to_poly(*m, z), Element{p, pre}, false);
        }
    }

    MinimalModel out;
    out.valid_up_to = up_to;
    out.free = FreeDGA{a.field(), FreeGCA(b.gens, up_to + 2), {}};
    for (const auto& d : b.diffs)
        out.free.differential.push_back(pad(d, b.gens.size()));
    out.model = std::make_shared<const FiniteDGA>(materialize(out.free, up_to + 2));
    out.rho = DgaMorphism::from_generator_images(out.model, target, b.images);
    out.cocycle_generator = b.cocycle;

    if (auto r = check_minimal(out.free); !r)
        throw ConsistencyError("constructed model is not minimal: " + r.witness);
    if (auto r = check_morphism(out.rho); !r)
        throw ConsistencyError("rho is not a DGA morphism: " + r.witness);
    QuasiIsoReport q = quasi_isomorphism(out.rho, Cohomology(out.model, up_to), Cohomology(target, up_to));
    if (!q.quasi_isomorphism)
        throw ConsistencyError("rho is not a quasi-isomorphism: " + q.detail);
    return out;
}

CheckResult check_minimal(const FreeDGA& free)
{
    if (auto r = check_free(free); !r)
        return r;
    const auto& gens = free.algebra.generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].degree() < 2)
            return CheckResult::fail("generator " + gens[g].name + " has degree " + std::to_string(gens[g].degree()));
        for (const auto& [m, c] : free.differential[g])
            if (free.algebra.word_length(m) < 2)
                return CheckResult::fail("d(" + gens[g].name + ") has a linear term " + free.algebra.to_string(m));
    }
    return {};
}

Indecomposables indecomposables(const MinimalModel& m)
{
    Indecomposables out;
    const FreeGCA& alg = m.free.algebra;
    const auto& gens = alg.generators();
    out.dims = m.generator_counts();

    int max_degree = 0;
    for (const auto& g : gens)
        max_degree = std::max(max_degree, g.degree());
    for (int p = 0; p <= std::min(max_degree + 1, alg.cap()); ++p)
        for (const auto& mono : alg.basis_in_degree(p))
            if (alg.word_length(mono) == 2)
                out.quadratic_basis.push_back(mono);
    out.dbar = Matrix(out.quadratic_basis.size(), gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (const auto& [mono, c] : m.free.differential[g]) {
            if (alg.word_length(mono) != 2)
                continue;
            for (std::size_t r = 0; r < out.quadratic_basis.size(); ++r)
                if (out.quadratic_basis[r] == mono)
                    out.dbar(r, g) = c;
        }

    const FiniteDGA& model = *m.model;
    for (int p = 0; p <= m.valid_up_to; ++p) {
        std::vector<std::size_t> row;
        for (std::size_t k = 0; k < model.dim(p); ++k) {
            std::size_t len = alg.word_length(model.monomials(p)[k]);
            if (row.size() <= len)
                row.resize(len + 1, 0);
            ++row[len];
            if (p + 1 <= model.top()) {
                Vector dm = model.d(model.basis(p, k)).coeffs;
                for (std::size_t t = 0; t < dm.size(); ++t)
                    if (!dm[t].is_zero() && alg.word_length(model.monomials(p + 1)[t]) < static_cast<int>(len) + 1)
                        out.filtration_respected = false;
            }
        }
        out.filtration.push_back(std::move(row));
    }
    return out;
}

LieBracketTable shifted_lie_cobracket(const MinimalModel& m)
{
    const FreeGCA& alg = m.free.algebra;
    const auto& gens = alg.generators();
    const std::size_t n = gens.size();
    LieBracketTable t;
    for (const auto& g : gens) {
        t.names.push_back(g.name);
        t.shifted_degrees.push_back(g.degree() - 1);
    }
    t.bracket.assign(n, std::vector<Vector>(n, Vector(n)));
    for (std::size_t g = 0; g < n; ++g)
        for (const auto& [mono, c] : m.free.differential[g]) {
            if (alg.word_length(mono) != 2)
                continue;
            std::vector<std::size_t> f;
            for (std::size_t k = 0; k < n; ++k)
                for (int e = 0; e < mono.exponents[k]; ++e)
                    f.push_back(k);
            std::size_t x = f[0], y = f[1];
            int dx = gens[x].degree(), dy = gens[y].degree();
            if (x == y) {
                t.bracket[x][x][g] += sign(dx) * Scalar(2) * c;
            } else {
                t.bracket[x][y][g] += sign(dx) * c;
                t.bracket[y][x][g] += sign(dy) * sign(dx * dy) * c;
            }
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!is_zero(t.bracket[a][b]))
                t.abelian = false;

    auto br = [&](std::size_t a, const Vector& v) {
        Vector out(n);
        for (std::size_t g = 0; g < n; ++g)
            if (!v[g].is_zero())
                out = add(out, scale(t.bracket[a][g], v[g]));
        return out;
    };
    auto br_left = [&](const Vector& v, std::size_t c) {
        Vector out(n);
        for (std::size_t g = 0; g < n; ++g)
            if (!v[g].is_zero())
                out = add(out, scale(t.bracket[g][c], v[g]));
        return out;
    };
    const auto& s = t.shifted_degrees;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (t.bracket[b][a] != scale(t.bracket[a][b], -sign(s[a] * s[b])))
                throw ConsistencyError("bracket is not graded antisymmetric on (" + t.names[a] + ", " + t.names[b] + ")");
            for (std::size_t c = 0; c < n; ++c) {
                if (s[a] + s[b] + s[c] + 1 > m.valid_up_to)
                    continue;
                Vector lhs = br(a, t.bracket[b][c]);
                Vector rhs = add(br_left(t.bracket[a][b], c), scale(br(b, t.bracket[a][c]), sign(s[a] * s[b])));
                if (lhs != rhs)
                    throw ConsistencyError("graded Jacobi fails on (" + t.names[a] + ", " + t.names[b] + ", " +
                                           t.names[c] + ")");
            }
        }
    return t;
}

std::map<int, std::size_t> homotopy_ranks(const MinimalModel& m)
{
    std::map<int, std::size_t> out;
    auto counts = m.generator_counts();
    for (int p = 1; p <= m.valid_up_to; ++p)
        out[p] = counts[p];
    return out;
}

} // namespace rho
