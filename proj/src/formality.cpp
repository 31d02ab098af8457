#include "rho/formality.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

namespace rho {

std::string to_string(FormalityStatus s)
{
    switch (s) {
    case FormalityStatus::Formal: return "formal";
    case FormalityStatus::NonFormal: return "non-formal";
    case FormalityStatus::Undetermined: return "undetermined";
    }
    return "undetermined";
}

namespace {

Element evaluate(const FiniteDGA& target, const FreeGCA& alg, const Poly& poly, const std::vector<Element>& images, int degree)
{
    Element out = target.zero(degree);
    for (const auto& [mono, c] : poly) {
        Element term = target.unit();
        for (std::size_t g = 0; g < alg.size(); ++g)
            for (int e = 0; e < mono.exponents[g]; ++e)
                term = target.multiply(term, images[g]);
        if (term.coeffs.size() == out.coeffs.size())
            out.coeffs = add(out.coeffs, scale(term.coeffs, c));
    }
    return out;
}

struct Search {
    DgaPtr target;
    const MinimalModel& model;
    const Cohomology& ha;
    int up_to;
    std::size_t budget;
    std::size_t nodes = 0;
    bool exhausted_budget = false;
    std::optional<int> obstruction;
    std::vector<Element> images;

    bool run(std::size_t g)
    {
        const FiniteDGA& a = *target;
        const FreeGCA& alg = model.free.algebra;
        if (g == alg.size())
            return accept();
        if (++nodes > budget) {
            exhausted_budget = true;
            return false;
        }
        int p = alg.generators()[g].degree();
        std::size_t dim = p <= a.top() ? a.dim(p) : 0;
        if (model.cocycle_generator[g]) {
            // rho(g) is a class of H(A) written on the representative basis
            Element cls = model.rho.apply(model.model->basis(p, basis_index(g)));
            Element img{p, Vector(dim)};
            for (std::size_t i = 0; i < cls.coeffs.size(); ++i)
                if (!cls.coeffs[i].is_zero())
                    img.coeffs = add(img.coeffs, scale(ha.representative(p, i).coeffs, cls.coeffs[i]));
            images[g] = img;
            return run(g + 1);
        }
        Element z = evaluate(a, alg, model.free.differential[g], images, p + 1);
        Vector particular(dim);
        if (!z.is_zero()) {
            auto sol = p <= a.top() ? linalg::solve(a.d(p), z.coeffs) : std::nullopt;
            if (!sol) {
                if (!obstruction || p + 1 < *obstruction)
                    obstruction = p + 1;
                return false;
            }
            particular = *sol;
        }
        std::size_t h = ha.dim(p);
        std::size_t combos = 1;
        for (std::size_t k = 0; k < h && combos <= budget; ++k)
            combos *= 3;
        for (std::size_t code = 0; code < combos; ++code) {
            Vector img = particular;
            std::size_t rest = code;
            for (std::size_t k = 0; k < h; ++k) {
                int digit = static_cast<int>(rest % 3);
                rest /= 3;
                if (digit != 0)
                    img = add(img, scale(ha.representative(p, k).coeffs, digit == 1 ? Scalar(1) : Scalar(-1)));
            }
            images[g] = {p, img};
            if (run(g + 1))
                return true;
            if (exhausted_budget)
                return false;
        }
        return false;
    }

    std::size_t basis_index(std::size_t g) const
    {
        Monomial m = model.free.algebra.generator(g);
        const auto& basis = model.model->monomials(model.free.algebra.generators()[g].degree());
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == m)
                return i;
        throw ConsistencyError("generator missing from the model basis");
    }

    bool accept()
    {
        DgaMorphism phi = DgaMorphism::from_generator_images(model.model, target, images);
        if (!check_morphism(phi))
            return false;
        return quasi_isomorphism(phi, up_to).quasi_isomorphism;
    }
};

bool zero_differential(const FiniteDGA& a)
{
    if (a.valid_degree() < a.top() && !a.complete())
        return false;
    for (int p = 0; p <= a.top(); ++p)
        if (!a.d(p).is_zero())
            return false;
    return true;
}

} // namespace

FormalityVerdict formality_test_direct(DgaPtr a, int up_to, std::size_t budget)
{
    if (!a->complete() && up_to + 1 > a->valid_degree())
        throw PreconditionError("degree cap exhausted: formality through degree " + std::to_string(up_to) +
                                " needs cohomology through degree " + std::to_string(up_to + 1));
    FormalityVerdict out;
    out.up_to = up_to;
    if (zero_differential(*a)) {
        out.status = FormalityStatus::Formal;
        out.detail = "zero differential: the algebra is its own cohomology";
        return out;
    }
    Cohomology ha(a, up_to + 1);
    if (ha.dim(0) != 1 || ha.dim(1) != 0)
        throw PreconditionError("algebra is not simply connected (H^0 = " + std::to_string(ha.dim(0)) +
                                ", H^1 = " + std::to_string(ha.dim(1)) + ")");
    auto h = std::make_shared<const FiniteDGA>(ha.as_dga());
    MinimalModel mm = build_minimal_model(h, up_to);
    Search s{a, mm, ha, up_to, budget, 0, false, std::nullopt, {}};
    s.images.resize(mm.free.algebra.size());
    bool found = s.run(0);
    out.nodes = s.nodes;
    out.obstruction_degree = s.obstruction;
    if (found) {
        out.status = FormalityStatus::Formal;
        out.obstruction_degree.reset();
        out.detail = "quasi-isomorphism from the minimal model of H into A verified through degree " + std::to_string(up_to);
        return out;
    }
    // Massey screen over basis classes.
    for (int p = 2; p <= up_to + 1; ++p)
        for (int q = 2; p + q <= up_to + 2; ++q)
            for (int r = 2; p + q + r - 1 <= up_to + 1; ++r)
                for (std::size_t i = 0; i < ha.dim(p); ++i)
                    for (std::size_t j = 0; j < ha.dim(q); ++j)
                        for (std::size_t k = 0; k < ha.dim(r); ++k) {
                            Element x = ha.representative(p, i), y = ha.representative(q, j), z = ha.representative(r, k);
                            if (!ha.is_coboundary(a->multiply(x, y)) || !ha.is_coboundary(a->multiply(y, z)))
                                continue;
                            MasseyVerdict mv = massey_triple(ha, x, y, z);
                            if (mv.nonzero) {
                                out.status = FormalityStatus::NonFormal;
                                out.massey_arguments = std::array<Element, 3>{x, y, z};
                                out.massey = mv;
                                out.detail = "nonzero triple Massey product in degree " + std::to_string(p + q + r - 1);
                                return out;
                            }
                        }
    out.status = FormalityStatus::Undetermined;
    out.detail = s.exhausted_budget ? "search budget of " + std::to_string(budget) + " nodes exhausted"
                                    : "no quasi-isomorphism among the searched candidates and no Massey witness";
    return out;
}

} // namespace rho
