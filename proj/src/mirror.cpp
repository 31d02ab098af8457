#include "rho/mirror.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

#include <functional>
#include <set>

namespace rho {

namespace {

Vector slice(const GradedSpace& s, const Vector& whole, int p)
{
    Vector out(s.dim(p));
    std::size_t off = s.offset(p);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = whole[off + i];
    return out;
}

std::vector<Bidegree> flat_bidegrees(const GradedSpace& s)
{
    std::vector<Bidegree> out;
    for (int p = 0; p <= s.top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i)
            out.push_back(s.bidegree(p, i));
    return out;
}

std::vector<std::string> flat_labels(const GradedSpace& s)
{
    std::vector<std::string> out;
    for (int p = 0; p <= s.top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i)
            out.push_back(s.label(p, i));
    return out;
}

Vector unit_vector(std::size_t dim, std::size_t k)
{
    Vector v(dim);
    v[k] = Scalar(1);
    return v;
}

// Global indices of the basis elements of one bidegree.
std::vector<std::size_t> global_component(const GradedSpace& s, Bidegree b)
{
    std::vector<std::size_t> out;
    if (b.total() < 0 || b.total() > s.top())
        return out;
    for (std::size_t i : s.component(b))
        out.push_back(s.offset(b.total()) + i);
    return out;
}

std::map<Bidegree, std::size_t> bidegree_dims(const GradedSpace& s)
{
    std::map<Bidegree, std::size_t> out;
    for (Bidegree b : s.bidegrees())
        out[b] = s.component(b).size();
    return out;
}

std::string whole_text(const GradedSpace& s, const Vector& v)
{
    std::string out;
    for (int p = 0; p <= s.top(); ++p) {
        Vector part = slice(s, v, p);
        if (is_zero(part))
            continue;
        out += (out.empty() ? "" : " + ") + linear_text(s, p, part);
    }
    return out.empty() ? "0" : out;
}

std::vector<Vector> positive_basis(const FiniteDGA& a)
{
    std::vector<Vector> out;
    std::size_t total = a.space().total_dim();
    for (std::size_t k = a.space().offset(1); k < total; ++k)
        out.push_back(unit_vector(total, k));
    return out;
}

// Span of x * y over x in xs and y in ys, as an echelon basis.
std::vector<Vector> product_span(const FiniteDGA& a, const std::vector<Vector>& xs, const std::vector<Vector>& ys)
{
    std::vector<Vector> out;
    for (const auto& x : xs)
        for (const auto& y : ys)
            if (Vector z = multiply_whole(a, x, y); !is_zero(z))
                out.push_back(std::move(z));
    return linalg::span_basis(out, a.space().total_dim());
}

// Basis vectors completing the decomposables (A+)^2 to a basis of A+, in
// order of global index; each is a single basis element.
std::vector<std::size_t> indecomposable_indices(const FiniteDGA& a)
{
    auto pos = positive_basis(a);
    auto dec = product_span(a, pos, pos);
    std::vector<std::size_t> out;
    std::size_t total = a.space().total_dim();
    for (std::size_t k = a.space().offset(1); k < total; ++k) {
        auto trial = dec;
        trial.push_back(unit_vector(total, k));
        if (linalg::span_rank(trial, total) > dec.size()) {
            dec = linalg::span_basis(trial, total);
            out.push_back(k);
        }
    }
    return out;
}

// Linear map known on a spanning set, grown by products and checked for
// consistency and injectivity on the way.
class PartialMap {
public:
    PartialMap(const FiniteDGA& source, const FiniteDGA& target) : s_(source), t_(target) {}

    // False on a contradiction with the pairs already known.
    bool add(const Vector& x, const Vector& y)
    {
        if (auto c = linalg::coordinates(src_, x)) {
            Vector expected(t_.space().total_dim());
            for (std::size_t k = 0; k < c->size(); ++k)
                if (!(*c)[k].is_zero())
                    for (std::size_t r = 0; r < expected.size(); ++r)
                        expected[r] += (*c)[k] * img_[k][r];
            return expected == y;
        }
        auto trial = img_;
        trial.push_back(y);
        if (linalg::span_rank(trial, t_.space().total_dim()) != trial.size())
            return false;
        src_.push_back(x);
        img_.push_back(y);
        return true;
    }

    // Multiplies every known pair by every generator pair until stable.
    bool close(const std::vector<std::pair<Vector, Vector>>& gens)
    {
        for (std::size_t k = 0; k < src_.size(); ++k)
            for (const auto& [g, h] : gens)
                if (!add(multiply_whole(s_, src_[k], g), multiply_whole(t_, img_[k], h)))
                    return false;
        return true;
    }

    std::size_t size() const { return src_.size(); }

    // Whole matrix target x source, once the known sources span.
    std::optional<Matrix> matrix() const
    {
        std::size_t n = s_.space().total_dim();
        if (src_.size() != n)
            return std::nullopt;
        auto inv = linalg::inverse(Matrix::from_columns(src_, n));
        if (!inv)
            return std::nullopt;
        return Matrix::from_columns(img_, t_.space().total_dim()) * *inv;
    }

private:
    const FiniteDGA& s_;
    const FiniteDGA& t_;
    std::vector<Vector> src_;
    std::vector<Vector> img_;
};

std::map<Bidegree, Matrix> blocks_of(const FiniteDGA& source, const FiniteDGA& target, const Matrix& m)
{
    std::map<Bidegree, Matrix> out;
    for (Bidegree b : source.space().bidegrees()) {
        auto cols = global_component(source.space(), b);
        auto rows = global_component(target.space(), b);
        Matrix block(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c)
                block(r, c) = m(rows[r], cols[c]);
        out[b] = block;
    }
    return out;
}

std::optional<std::string> screen(const FiniteDGA& a, const FiniteDGA& b)
{
    auto da = bidegree_dims(a.space()), db = bidegree_dims(b.space());
    std::set<Bidegree> all;
    for (auto [k, v] : da)
        all.insert(k);
    for (auto [k, v] : db)
        all.insert(k);
    for (Bidegree k : all) {
        std::size_t x = da.count(k) ? da[k] : 0, y = db.count(k) ? db[k] : 0;
        if (x != y)
            return "dimension mismatch at " + to_string(k) + ": " + std::to_string(x) + " on the A side, " +
                   std::to_string(y) + " on the B side";
    }
    AlgebraInvariants ia = invariants(a), ib = invariants(b);
    for (const auto& [key, r] : ia.product_ranks) {
        auto it = ib.product_ranks.find(key);
        std::size_t other = it == ib.product_ranks.end() ? 0 : it->second;
        if (other != r)
            return "product rank mismatch on " + to_string(key.first) + " x " + to_string(key.second) + ": " +
                   std::to_string(r) + " vs " + std::to_string(other);
    }
    if (ia.product_ranks != ib.product_ranks)
        return "product rank mismatch";
    if (ia.nilpotency != ib.nilpotency)
        return "nilpotency order mismatch: " + std::to_string(ia.nilpotency) + " vs " + std::to_string(ib.nilpotency);
    if (ia.generated_by_11 != ib.generated_by_11)
        return "subalgebra generated by (1,1) has dimension " + std::to_string(ia.generated_by_11) + " vs " +
               std::to_string(ib.generated_by_11);
    return std::nullopt;
}

// All nonzero vectors on the given indices with coefficients 0, 1, -1, in a
// fixed order.
std::vector<Vector> sign_candidates(std::size_t dim, const std::vector<std::size_t>& indices)
{
    std::vector<Vector> out;
    std::size_t k = indices.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i)
        count *= 3;
    for (std::size_t code = 1; code < count; ++code) {
        Vector v(dim);
        std::size_t c = code;
        for (std::size_t i = 0; i < k; ++i, c /= 3)
            if (c % 3 == 1)
                v[indices[i]] = Scalar(1);
            else if (c % 3 == 2)
                v[indices[i]] = Scalar(-1);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

Vector to_whole(const FiniteDGA& a, const Element& x)
{
    Vector v(a.space().total_dim());
    if (x.degree < 0 || x.degree > a.top())
        return v;
    std::size_t off = a.space().offset(x.degree);
    for (std::size_t i = 0; i < x.coeffs.size(); ++i)
        v[off + i] = x.coeffs[i];
    return v;
}

Vector multiply_whole(const FiniteDGA& a, const Vector& x, const Vector& y)
{
    const GradedSpace& s = a.space();
    Vector out(s.total_dim());
    for (int p = 0; p <= a.top(); ++p) {
        Vector xp = slice(s, x, p);
        if (is_zero(xp))
            continue;
        for (int q = 0; p + q <= a.top(); ++q) {
            Vector yq = slice(s, y, q);
            if (is_zero(yq))
                continue;
            Element z = a.multiply(Element{p, xp}, Element{q, yq});
            std::size_t off = s.offset(p + q);
            for (std::size_t i = 0; i < z.coeffs.size(); ++i)
                out[off + i] += z.coeffs[i];
        }
    }
    return out;
}

std::optional<Bidegree> bidegree_of(const GradedSpace& s, const Vector& whole)
{
    auto bd = flat_bidegrees(s);
    std::optional<Bidegree> out;
    for (std::size_t k = 0; k < whole.size(); ++k)
        if (!whole[k].is_zero()) {
            if (out && *out != bd[k])
                return std::nullopt;
            out = bd[k];
        }
    return out;
}

Vector CYPackage::omega() const
{
    Vector v = omega0;
    for (auto& c : v)
        c *= lambda;
    return v;
}

Scalar CYPackage::integral_a(const Vector& a) const
{
    return a_side.integral(Element{2 * n, slice(a_side.a().space(), a, 2 * n)});
}

Scalar CYPackage::integral_b(const Vector& b) const
{
    return integral_a(multiply_whole(a_side.a(), flat_of(b), omega()));
}

CYPackage build_cy(BigradedFrobenius a_side, DgaPtr b_side, int n, Scalar lambda, Vector omega0, Matrix flat0)
{
    const FiniteDGA& a = a_side.a();
    const GradedSpace& sa = a.space();
    if (a_side.n != n)
        throw PreconditionError("the A side has dimension " + std::to_string(a_side.n) + ", not " + std::to_string(n));
    if (std::size_t h = sa.component({n, 0}).size(); h != 1)
        throw PreconditionError("h^{n,0} = " + std::to_string(h) + ", a Calabi-Yau package needs 1");
    if (lambda.is_zero())
        throw PreconditionError("the volume scale must be nonzero");
    if (omega0.size() != sa.total_dim() || is_zero(omega0) || bidegree_of(sa, omega0) != Bidegree{n, 0})
        throw PreconditionError("Omega must be a nonzero class of bidegree (n, 0)");
    const FiniteDGA& b = *b_side;
    const GradedSpace& sb = b.space();
    if (!b.complete() || !b.differential().is_zero())
        throw PreconditionError("the B side must be a finite algebra with zero differential");
    if (b.field() != a.field())
        throw PreconditionError("the two sides are over different fields");
    if (auto r = check_algebra(b); !r)
        throw PreconditionError("B side is not a graded-commutative algebra: " + r.witness);
    if (flat0.rows() != sa.total_dim() || flat0.cols() != sb.total_dim())
        throw PreconditionError("contraction table has the wrong shape");
    auto ba = flat_bidegrees(sa), bb = flat_bidegrees(sb);
    auto la = flat_labels(sa), lb = flat_labels(sb);
    for (std::size_t c = 0; c < flat0.cols(); ++c)
        for (std::size_t r = 0; r < flat0.rows(); ++r)
            if (!flat0(r, c).is_zero() && ba[r] != Bidegree{n - bb[c].p, bb[c].q})
                throw PreconditionError("contraction of " + lb[c] + " has a component on " + la[r] + " of bidegree " +
                                        to_string(ba[r]) + " instead of " + to_string(Bidegree{n - bb[c].p, bb[c].q}));
    if (flat0.apply(to_whole(b, b.unit())) != omega0)
        throw PreconditionError("the contraction of the unit must be Omega");

    CYPackage p{std::move(a_side), std::move(b_side), n, lambda, std::move(omega0), flat0, flat0 * lambda, {}};
    auto inv = linalg::inverse(p.flat);
    if (!inv)
        throw PreconditionError("contraction table is singular");
    p.sharp = *inv;
    if (p.sharp * p.flat != Matrix::identity(sb.total_dim()) || p.flat * p.sharp != Matrix::identity(sa.total_dim()))
        throw ConsistencyError("flat and sharp are not mutually inverse");
    return p;
}

CYPackage rescale(const CYPackage& p, Scalar lambda)
{
    return build_cy(p.a_side, p.b_side, p.n, lambda, p.omega0, p.flat0);
}

CYInput load_cy(const AlgebraFile& file)
{
    if (file.kind != "cy-package")
        throw PreconditionError("expected a cy-package file, got " + file.kind);
    FrobeniusInput in = load_frobenius(file);
    const FiniteDGA& a = in.frobenius.a();
    AlgebraFile bf;
    bf.kind = "tabular-dga";
    bf.scalars = file.scalars;
    bf.generators = file.b_side->generators;
    bf.products = file.b_side->products;
    auto b = std::make_shared<const FiniteDGA>(load_tabular_dga(bf));
    const GradedSpace& sb = b->space();

    Matrix flat0(a.space().total_dim(), sb.total_dim());
    std::vector<bool> seen(sb.total_dim());
    for (const auto& e : file.flat) {
        auto at = sb.find(e.on);
        if (!at)
            throw PreconditionError("flat entry for unknown B-side element '" + e.on + "'");
        std::size_t col = sb.offset(at->first) + at->second;
        if (seen[col])
            throw PreconditionError("flat of '" + e.on + "' listed twice");
        seen[col] = true;
        flat0.set_column(col, to_whole(a, parse_element(a, e.value)));
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (!seen[c])
            throw PreconditionError("flat of '" + flat_labels(sb)[c] + "' is missing");

    Vector omega0 = to_whole(a, parse_element(a, file.omega));
    Scalar lambda = Scalar::parse(file.volume_scale);
    CYInput out{build_cy(in.frobenius, b, *file.n, lambda, std::move(omega0), std::move(flat0)), in.kahler_class,
                {in.rational_names, in.rational_basis}};
    return out;
}

BAlgebra b_algebra(const CYPackage& p)
{
    const FiniteDGA& b = *p.b_side;
    const GradedSpace& sb = b.space();
    int n = p.n;
    Vector trace(sb.dim(2 * n));
    if (2 * n <= b.top())
        for (std::size_t i = 0; i < trace.size(); ++i)
            trace[i] = p.integral_b(to_whole(b, b.basis(2 * n, i)));
    BAlgebra out{build_frobenius(p.b_side, n, std::move(trace)), true};

    // (H, tilde wedge, tilde integral) against (B, wedge, integral) through flat.
    const FiniteDGA& a = p.a_side.a();
    std::size_t na = a.space().total_dim();
    for (std::size_t i = 0; i < na && out.transport_audit; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            Vector si = p.sharp_of(unit_vector(na, i)), sj = p.sharp_of(unit_vector(na, j));
            Vector prod = multiply_whole(b, si, sj);
            Vector tilde = p.flat_of(prod);
            if (p.sharp_of(tilde) != prod || p.integral_b(p.sharp_of(tilde)) != p.integral_b(prod)) {
                out.transport_audit = false;
                break;
            }
            Scalar direct = out.frobenius.integral(Element{2 * n, slice(sb, prod, 2 * n)});
            if (direct != p.integral_b(prod)) {
                out.transport_audit = false;
                break;
            }
        }
    return out;
}

YukawaReport yukawa(const CYPackage& p, const RationalStructure& basis)
{
    const FiniteDGA& a = p.a_side.a();
    const FiniteDGA& b = *p.b_side;
    if (basis.basis.empty() || basis.basis.front().degree != 0 || basis.basis.front().coeffs != a.unit().coeffs)
        throw PreconditionError("the first basis element must be the unit");
    if (auto r = rational_structure_check(p.a_side, basis); !r.pass)
        throw PreconditionError("basis is not rational: " + r.witness);

    YukawaReport y;
    y.names = basis.names;
    y.size = basis.basis.size();
    std::size_t m = y.size;
    y.phi.assign(m * m * m, Scalar());
    std::vector<Vector> sharp;
    std::vector<Bidegree> bdeg;
    std::vector<int> deg;
    for (const auto& g : basis.basis) {
        sharp.push_back(p.sharp_of(to_whole(a, g)));
        auto bd = bidegree_of(b.space(), sharp.back());
        if (!bd)
            throw PreconditionError("basis elements must be bihomogeneous");
        bdeg.push_back(*bd);
        deg.push_back(bd->total());
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if ((bdeg[i] + bdeg[j]).total() > b.top())
                continue;
            Vector ij = multiply_whole(b, sharp[i], sharp[j]);
            for (std::size_t k = 0; k < m; ++k) {
                if (bdeg[i] + bdeg[j] + bdeg[k] != Bidegree{p.n, p.n})
                    continue;
                y.phi[(i * m + j) * m + k] = p.integral_b(multiply_whole(b, ij, sharp[k]));
            }
        }
    for (std::size_t i = 0; i < m && y.rational; ++i)
        for (std::size_t j = 0; j < m && y.rational; ++j)
            for (std::size_t k = 0; k < m; ++k)
                if (!y.at(i, j, k).is_real()) {
                    y.rational = false;
                    y.rational_witness =
                        "(" + y.names[i] + ", " + y.names[j] + ", " + y.names[k] + "): " + y.at(i, j, k).to_string();
                    break;
                }
    // Transpositions of adjacent slots generate all permutations.
    for (std::size_t i = 0; i < m && y.symmetric; ++i)
        for (std::size_t j = 0; j < m && y.symmetric; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                const Scalar& v = y.at(i, j, k);
                bool first = y.at(j, i, k) == v * sign(deg[i] * deg[j]);
                bool second = y.at(i, k, j) == v * sign(deg[j] * deg[k]);
                if (!first || !second) {
                    y.symmetric = false;
                    y.symmetry_witness = "(" + y.names[i] + ", " + y.names[j] + ", " + y.names[k] + ")";
                    break;
                }
            }
    return y;
}

std::optional<int> yukawa_scaling_exponent(const CYPackage& p, const RationalStructure& basis, long t)
{
    if (t == 0 || t == 1 || t == -1)
        throw PreconditionError("the scaling factor must not be 0 or a unit");
    YukawaReport base = yukawa(p, basis);
    YukawaReport scaled = yukawa(rescale(p, p.lambda * Scalar(t)), basis);
    std::optional<int> s;
    for (std::size_t k = 0; k < base.phi.size(); ++k) {
        const Scalar& x = base.phi[k];
        const Scalar& y = scaled.phi[k];
        if (x.is_zero() != y.is_zero())
            return std::nullopt;
        if (x.is_zero())
            continue;
        Scalar ratio = y / x;
        std::optional<int> e;
        for (int cand = -8; cand <= 8 && !e; ++cand) {
            Scalar pw(1);
            for (int i = 0; i < std::abs(cand); ++i)
                pw *= Scalar(t);
            if (cand < 0)
                pw = Scalar(1) / pw;
            if (pw == ratio)
                e = cand;
        }
        if (!e || (s && *s != *e))
            return std::nullopt;
        s = e;
    }
    return s;
}

std::string to_string(MirrorOutcome o)
{
    switch (o) {
    case MirrorOutcome::Isomorphism:
        return "isomorphism";
    case MirrorOutcome::Obstruction:
        return "obstruction";
    case MirrorOutcome::Inconclusive:
        return "inconclusive";
    }
    return "";
}

AlgebraInvariants invariants(const FiniteDGA& a)
{
    const GradedSpace& s = a.space();
    std::size_t total = s.total_dim();
    AlgebraInvariants inv;
    inv.dims = bidegree_dims(s);
    auto bds = s.bidegrees();
    for (Bidegree x : bds)
        for (Bidegree y : bds) {
            if (x.total() == 0 || y.total() == 0 || (x + y).total() > a.top())
                continue;
            std::vector<Vector> xs, ys;
            for (std::size_t k : global_component(s, x))
                xs.push_back(unit_vector(total, k));
            for (std::size_t k : global_component(s, y))
                ys.push_back(unit_vector(total, k));
            if (std::size_t r = product_span(a, xs, ys).size(); r > 0)
                inv.product_ranks[{x, y}] = r;
        }
    auto pos = positive_basis(a);
    auto power = linalg::span_basis(pos, total);
    inv.nilpotency = 1;
    while (!power.empty()) {
        power = product_span(a, power, pos);
        ++inv.nilpotency;
    }
    std::vector<Vector> gens;
    for (std::size_t k : global_component(s, {1, 1}))
        gens.push_back(unit_vector(total, k));
    std::vector<Vector> sub{to_whole(a, a.unit())};
    auto layer = sub;
    while (!layer.empty()) {
        std::size_t before = linalg::span_rank(sub, total);
        auto next = product_span(a, layer, gens);
        for (auto& v : next)
            sub.push_back(v);
        sub = linalg::span_basis(sub, total);
        if (sub.size() == before)
            break;
        layer = std::move(next);
    }
    inv.generated_by_11 = sub.size();
    return inv;
}

std::optional<std::string> isomorphism_defect(const FiniteDGA& source, const FiniteDGA& target, const Matrix& map)
{
    const GradedSpace& ss = source.space();
    const GradedSpace& ts = target.space();
    if (map.rows() != ts.total_dim() || map.cols() != ss.total_dim())
        return std::string("map has the wrong shape");
    auto bs = flat_bidegrees(ss), bt = flat_bidegrees(ts);
    auto ls = flat_labels(ss), lt = flat_labels(ts);
    for (std::size_t c = 0; c < map.cols(); ++c)
        for (std::size_t r = 0; r < map.rows(); ++r)
            if (!map(r, c).is_zero() && bs[c] != bt[r])
                return "not bidegree preserving: " + ls[c] + " has a component on " + lt[r];
    if (map.rows() != map.cols() || linalg::rank(map) != map.cols())
        return std::string("not bijective");
    if (map.apply(to_whole(source, source.unit())) != to_whole(target, target.unit()))
        return std::string("not unital");
    std::size_t n = ss.total_dim();
    std::vector<Vector> images;
    for (std::size_t k = 0; k < n; ++k)
        images.push_back(map.column(k));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vector lhs = map.apply(multiply_whole(source, unit_vector(n, i), unit_vector(n, j)));
            Vector rhs = multiply_whole(target, images[i], images[j]);
            if (lhs != rhs)
                return "not multiplicative on " + ls[i] + " * " + ls[j] + ": " + whole_text(ts, lhs) + " vs " +
                       whole_text(ts, rhs);
        }
    return std::nullopt;
}

MirrorVerdict mirror_check(const FiniteDGA& a_side, const FiniteDGA& b_side, std::size_t budget)
{
    MirrorVerdict v;
    if (a_side.field() != b_side.field()) {
        v.detail = "the two algebras are over different fields";
        return v;
    }
    if (auto obstruction = screen(a_side, b_side)) {
        v.outcome = MirrorOutcome::Obstruction;
        v.detail = *obstruction;
        return v;
    }
    if (budget == 0) {
        v.detail = "search budget exhausted before the first node";
        return v;
    }

    const GradedSpace& sb = b_side.space();
    const GradedSpace& sa = a_side.space();
    std::size_t nb = sb.total_dim(), na = sa.total_dim();
    auto bd = flat_bidegrees(sb);
    auto gens = indecomposable_indices(b_side);
    std::vector<std::vector<Vector>> candidates;
    for (std::size_t g : gens)
        candidates.push_back(sign_candidates(na, global_component(sa, bd[g])));

    std::vector<std::pair<Vector, Vector>> chosen;
    bool exhausted = false;
    std::optional<Matrix> found;
    std::function<void(std::size_t)> search = [&](std::size_t depth) {
        if (found || exhausted)
            return;
        if (depth == gens.size()) {
            PartialMap map(b_side, a_side);
            bool ok = map.add(to_whole(b_side, b_side.unit()), to_whole(a_side, a_side.unit()));
            for (const auto& [x, y] : chosen)
                ok = ok && map.add(x, y);
            ok = ok && map.close(chosen);
            if (auto m = ok ? map.matrix() : std::nullopt; m && !isomorphism_defect(b_side, a_side, *m))
                found = m;
            return;
        }
        for (const auto& image : candidates[depth]) {
            if (++v.nodes > budget) {
                exhausted = true;
                return;
            }
            chosen.emplace_back(unit_vector(nb, gens[depth]), image);
            PartialMap map(b_side, a_side);
            bool ok = map.add(to_whole(b_side, b_side.unit()), to_whole(a_side, a_side.unit()));
            for (const auto& [x, y] : chosen)
                ok = ok && map.add(x, y);
            if (ok && map.close(chosen))
                search(depth + 1);
            chosen.pop_back();
            if (found || exhausted)
                return;
        }
    };
    search(0);

    if (found) {
        v.outcome = MirrorOutcome::Isomorphism;
        v.blocks = blocks_of(b_side, a_side, *found);
        v.map = std::move(found);
        v.detail = "verified on all basis pairs";
    } else if (exhausted) {
        v.detail = "search budget of " + std::to_string(budget) + " nodes exhausted";
    } else {
        v.detail = "no isomorphism sends generators to combinations with coefficients 0, 1, -1";
    }
    return v;
}

Matrix tilde_transport(const CYPackage& p, const Matrix& op)
{
    return p.sharp * op * p.flat;
}

Matrix transported_metric(const CYPackage& p, const Matrix& gram_a)
{
    return p.flat.adjoint() * gram_a * p.flat;
}

Matrix whole_adjoint(const Matrix& op, const Matrix& gram)
{
    auto inv = linalg::inverse(gram);
    if (!inv)
        throw PreconditionError("degenerate Gram matrix");
    return *inv * op.adjoint() * gram;
}

std::optional<Bidegree> operator_bidegree(const GradedSpace& source, const GradedSpace& target, const Matrix& op)
{
    auto bs = flat_bidegrees(source), bt = flat_bidegrees(target);
    std::optional<Bidegree> out;
    for (std::size_t c = 0; c < op.cols(); ++c)
        for (std::size_t r = 0; r < op.rows(); ++r)
            if (!op(r, c).is_zero()) {
                Bidegree shift = bt[r] - bs[c];
                if (out && *out != shift)
                    return std::nullopt;
                out = shift;
            }
    return out;
}

TildeSl2 tilde_sl2(const CYPackage& p, const Element& omega)
{
    LefschetzVerdict hl = hard_lefschetz_check(p.a_side, omega);
    if (!hl.pass)
        throw PreconditionError("hard Lefschetz fails on the A side at k = " + std::to_string(hl.failing_k()));
    TildeSl2 t;
    t.rep = {p.b_side->space_ptr(), tilde_transport(p, hl.rep->x), tilde_transport(p, hl.rep->y),
             tilde_transport(p, hl.rep->h)};
    t.relations = check_sl2_relations(t.rep);
    t.lefschetz_type = check_lefschetz_type(t.rep);
    const GradedSpace& sb = p.b_side->space();
    t.l_bidegree = operator_bidegree(sb, sb, t.rep.y);
    t.lambda_bidegree = operator_bidegree(sb, sb, t.rep.x);
    return t;
}

Verdict b_simply_connected_check(const BAlgebra& b)
{
    const GradedSpace& s = b.frobenius.a().space();
    for (Bidegree bd : {Bidegree{0, 1}, Bidegree{1, 0}})
        if (std::size_t h = bd.total() <= s.top() ? s.component(bd).size() : 0; h != 0)
            return {false, "h_B^" + to_string(bd) + " = " + std::to_string(h)};
    return {};
}

RationalHomotopy rational_homotopy_from_b(const CYPackage& p, const BAlgebra& b, const YukawaReport& y, int up_to)
{
    if (!y.rational)
        throw PreconditionError("the rationality condition fails: " + y.rational_witness);
    if (Verdict v = b_simply_connected_check(b); !v.pass)
        throw PreconditionError("the B side is not simply connected: " + v.witness);
    RationalHomotopy out{build_minimal_model(b.frobenius.algebra, up_to), {}, p.lambda};
    out.ranks = homotopy_ranks(out.model);
    return out;
}

MirrorVerdict hyperkahler_self_mirror(const CYPackage& p, const Element& sigma)
{
    const FiniteDGA& a = p.a_side.a();
    const FiniteDGA& b = *p.b_side;
    const GradedSpace& sa = a.space();
    int n = p.n;
    if (n % 2)
        throw PreconditionError("a holomorphic symplectic class needs even n, got " + std::to_string(n));
    Vector sw = to_whole(a, sigma);
    if (sigma.degree != 2 || bidegree_of(sa, sw) != Bidegree{2, 0})
        throw PreconditionError("sigma must be a class of bidegree (2,0)");
    int half = n / 2;
    Vector power = to_whole(a, a.unit());
    for (int k = 0; k < half - 1; ++k)
        power = multiply_whole(a, power, sw);
    if (is_zero(multiply_whole(a, power, sw)))
        throw PreconditionError("sigma^" + std::to_string(half) + " = 0");

    MirrorVerdict v;
    if (auto obstruction = screen(a, b)) {
        v.outcome = MirrorOutcome::Obstruction;
        v.detail = *obstruction;
        return v;
    }
    std::size_t na = sa.total_dim(), nb = b.space().total_dim();
    auto bd = flat_bidegrees(b.space());
    auto labels = flat_labels(b.space());
    std::vector<std::pair<Vector, Vector>> chosen;
    for (std::size_t g : indecomposable_indices(b)) {
        Vector target = p.flat_of(unit_vector(nb, g));
        std::vector<std::size_t> domain;
        std::function<Vector(const Vector&)> op;
        if (bd[g] == Bidegree{1, 0}) {
            // a with (n/2) a sigma^(n/2 - 1) = flat(v).
            domain = global_component(sa, {1, 0});
            op = [&](const Vector& x) { return scale(multiply_whole(a, x, power), Scalar(half)); };
        } else if (bd[g] == Bidegree{0, 1}) {
            // a with Omega a = flat(beta).
            domain = global_component(sa, {0, 1});
            Vector om = p.omega();
            op = [&, om](const Vector& x) { return multiply_whole(a, om, x); };
        } else {
            v.detail = "B-side generator " + labels[g] + " lies outside bidegrees (1,0) and (0,1)";
            return v;
        }
        std::vector<Vector> cols;
        for (std::size_t k : domain)
            cols.push_back(op(unit_vector(na, k)));
        auto sol = linalg::solve(Matrix::from_columns(cols, na), target);
        if (!sol) {
            v.detail = "no preimage for " + labels[g];
            return v;
        }
        Vector image(na);
        for (std::size_t k = 0; k < domain.size(); ++k)
            image[domain[k]] = (*sol)[k];
        chosen.emplace_back(unit_vector(nb, g), std::move(image));
    }
    PartialMap map(b, a);
    bool ok = map.add(to_whole(b, b.unit()), to_whole(a, a.unit()));
    for (const auto& [x, y] : chosen)
        ok = ok && map.add(x, y);
    ok = ok && map.close(chosen);
    auto m = ok ? map.matrix() : std::nullopt;
    if (!m) {
        v.detail = "the map built from sigma is not a bijective algebra map";
        return v;
    }
    if (auto defect = isomorphism_defect(b, a, *m)) {
        v.detail = *defect;
        return v;
    }
    v.outcome = MirrorOutcome::Isomorphism;
    v.blocks = blocks_of(b, a, *m);
    v.map = std::move(m);
    v.detail = "verified on all basis pairs";
    return v;
}

KahlerSearch search_mirror_kahler_class(const BAlgebra& b, const std::vector<long>& lattice, std::size_t limit)
{
    KahlerSearch out;
    const FiniteDGA& alg = b.frobenius.a();
    if (alg.top() < 2 || lattice.empty())
        return out;
    auto comp = alg.space().component({1, 1});
    std::size_t k = comp.size();
    std::vector<std::size_t> digits(k);
    for (bool more = true; more && out.tried < limit;) {
        Element omega{2, Vector(alg.dim(2))};
        for (std::size_t j = 0; j < k; ++j)
            omega.coeffs[comp[j]] = Scalar(lattice[digits[j]]);
        std::size_t i = 0;
        while (i < k && ++digits[i] == lattice.size())
            digits[i++] = 0;
        more = i < k;
        if (omega.is_zero())
            continue;
        ++out.tried;
        if (hard_lefschetz_check(b.frobenius, omega).pass) {
            out.candidate = to_whole(alg, omega);
            return out;
        }
    }
    return out;
}

} // namespace rho
