#include "rho/hodge.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

namespace rho {

namespace {

std::string map_witness(const LinearMap& diff)
{
    auto col = diff.first_nonzero_column();
    if (!col)
        return "";
    auto [p, i] = *col;
    const GradedSpace& src = *diff.source();
    Vector v = diff.block(p).column(i);
    std::string text;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero())
            text += (text.empty() ? "" : " + ") + std::string("(") + v[k].to_string() + ")*" +
                    diff.target()->label(p + diff.shift(), k);
    return "on " + src.label(p, i) + ": " + text;
}

HypothesisEntry map_equal(std::string name, const LinearMap& a, const LinearMap& b)
{
    LinearMap diff = a - b;
    if (diff.is_zero())
        return {std::move(name), true, ""};
    return {std::move(name), false, map_witness(diff)};
}

HypothesisEntry map_zero(std::string name, const LinearMap& a)
{
    if (a.is_zero())
        return {std::move(name), true, ""};
    return {std::move(name), false, map_witness(a)};
}

std::vector<Vector> columns(const Matrix& m)
{
    std::vector<Vector> out;
    for (std::size_t c = 0; c < m.cols(); ++c)
        out.push_back(m.column(c));
    return out;
}

// Reduced-echelon basis of the image of `map` inside degree p.
std::vector<Vector> image_in(const LinearMap& map, int p, std::size_t dim)
{
    int src = p - map.shift();
    if (src < 0 || src > map.source_top() || dim == 0)
        return {};
    return linalg::span_basis(columns(map.block(src)), dim);
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim)
{
    std::size_t ra = linalg::span_rank(a, dim);
    std::size_t rb = linalg::span_rank(b, dim);
    std::vector<Vector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return ra == rb && linalg::span_rank(both, dim) == ra;
}

HypothesisEntry decomposition(std::string name, const MetricBicomplex& b, const LinearMap& op, const LinearMap& op_star,
                              const std::vector<std::vector<Vector>>& harmonic)
{
    const GradedSpace& s = *b.space();
    for (int p = 0; p <= s.top(); ++p) {
        std::size_t n = s.dim(p);
        auto im = image_in(op, p, n);
        auto im_star = image_in(op_star, p, n);
        std::vector<Vector> all = harmonic[p];
        all.insert(all.end(), im.begin(), im.end());
        all.insert(all.end(), im_star.begin(), im_star.end());
        std::size_t sum = harmonic[p].size() + im.size() + im_star.size();
        if (sum != n || linalg::span_rank(all, n) != n)
            return {std::move(name), false,
                    "degree " + std::to_string(p) + ": dims " + std::to_string(harmonic[p].size()) + " + " +
                        std::to_string(im.size()) + " + " + std::to_string(im_star.size()) + " against " +
                        std::to_string(n)};
    }
    return {std::move(name), true, ""};
}

std::vector<std::vector<Vector>> kernels(const LinearMap& op)
{
    std::vector<std::vector<Vector>> out;
    for (int p = 0; p <= op.source_top(); ++p) {
        const Matrix& m = op.block(p);
        if (m.cols() == 0) {
            out.emplace_back();
            continue;
        }
        out.push_back(linalg::kernel_basis(m.rows() == 0 ? Matrix(0, m.cols()) : m));
    }
    return out;
}

} // namespace

FiniteDGA MetricBicomplex::dc_algebra() const
{
    std::vector<Matrix> d;
    for (int p = 0; p <= carrier->top(); ++p)
        d.push_back(dc.block(p));
    return carrier->with_differential(std::move(d));
}

MetricBicomplex make_bicomplex(DgaPtr carrier, LinearMap dc, std::vector<Matrix> gram)
{
    if (!carrier->complete())
        throw PreconditionError("a metric bicomplex needs a finite carrier");
    if (dc.shift() != 1 || !(*dc.source() == carrier->space()) || !(*dc.target() == carrier->space()))
        throw PreconditionError("second differential must be a degree +1 operator on the carrier");
    if (static_cast<int>(gram.size()) != carrier->top() + 1)
        throw PreconditionError("need one Gram matrix per degree");
    for (int p = 0; p <= carrier->top(); ++p)
        if (gram[p].rows() != carrier->dim(p) || gram[p].cols() != carrier->dim(p))
            throw PreconditionError("Gram matrix in degree " + std::to_string(p) + " has wrong shape");
    return MetricBicomplex{std::move(carrier), std::move(dc), std::move(gram)};
}

std::vector<Matrix> orthonormal_gram(const GradedSpace& space)
{
    std::vector<Matrix> out;
    for (int p = 0; p <= space.top(); ++p)
        out.push_back(Matrix::identity(space.dim(p)));
    return out;
}

MetricBicomplex tensor(const MetricBicomplex& a, const MetricBicomplex& b)
{
    auto carrier = std::make_shared<const FiniteDGA>(tensor(*a.carrier, *b.carrier));
    FiniteDGA second = tensor(a.dc_algebra(), b.dc_algebra());
    LinearMap dc(carrier->space_ptr(), carrier->space_ptr(), 1);
    for (int p = 0; p <= carrier->top(); ++p)
        dc.block(p) = second.d(p);
    std::vector<Matrix> gram;
    for (int n = 0; n <= carrier->top(); ++n) {
        Matrix g(carrier->dim(n), carrier->dim(n));
        std::size_t offset = 0;
        for (int p = 0; p <= n; ++p) {
            if (p > a.carrier->top() || n - p > b.carrier->top())
                continue;
            Matrix block = kron(a.gram[p], b.gram[n - p]);
            g.set_block(offset, offset, block);
            offset += block.rows();
        }
        gram.push_back(std::move(g));
    }
    return make_bicomplex(carrier, std::move(dc), std::move(gram));
}

LinearMap adjoint(const LinearMap& op, const std::vector<Matrix>& gram)
{
    const SpacePtr& s = op.source();
    LinearMap out(s, s, -op.shift());
    std::vector<std::optional<Matrix>> inverses(gram.size());
    for (int q = 0; q <= s->top(); ++q) {
        int src = q - op.shift();
        if (src < 0 || src > op.source_top() || s->dim(src) == 0 || s->dim(q) == 0)
            continue;
        if (!inverses[src]) {
            inverses[src] = linalg::inverse(gram.at(src));
            if (!inverses[src])
                throw PreconditionError("degenerate Gram matrix in degree " + std::to_string(src));
        }
        out.block(q) = *inverses[src] * op.block(src).adjoint() * gram.at(q);
    }
    return out;
}

bool HypothesisReport::all_pass() const
{
    return first_failure() == nullptr;
}

const HypothesisEntry* HypothesisReport::first_failure() const
{
    for (const auto& e : entries)
        if (!e.pass)
            return &e;
    return nullptr;
}

const HypothesisEntry& HypothesisReport::entry(const std::string& name) const
{
    for (const auto& e : entries)
        if (e.name == name)
            return e;
    throw PreconditionError("no hypothesis named '" + name + "'");
}

HodgeData::HodgeData(MetricBicomplex b) : b_(std::move(b))
{
    const GradedSpace& s = *b_.space();
    d_ = b_.carrier->differential();
    d_star_ = adjoint(d_, b_.gram);
    dc_star_ = adjoint(b_.dc, b_.gram);
    box_d_ = graded_commutator(d_, d_star_);
    box_dc_ = graded_commutator(b_.dc, dc_star_);
    harmonic_ = kernels(box_d_);
    auto harmonic_c = kernels(box_dc_);

    auto& e = report_.entries;
    {
        HypothesisEntry pd{"metric positive definite", true, ""};
        for (int p = 0; p <= s.top(); ++p)
            if (!linalg::is_positive_definite(b_.gram[p])) {
                pd = {pd.name, false, "Gram matrix in degree " + std::to_string(p)};
                break;
            }
        e.push_back(pd);
    }
    auto dga_check = [&](std::string name, CheckResult r) { e.push_back({std::move(name), r.pass, r.witness}); };
    FiniteDGA dc_alg = b_.dc_algebra();
    dga_check("d squares to zero", check_d_squared(*b_.carrier));
    dga_check("dc squares to zero", check_d_squared(dc_alg));
    dga_check("d is a derivation", check_leibniz(*b_.carrier));
    dga_check("dc is a derivation", check_leibniz(dc_alg));
    for (auto [name, op, star] : {std::tuple{"adjointness of d", &d_, &d_star_},
                                  std::tuple{"adjointness of dc", &b_.dc, &dc_star_}}) {
        HypothesisEntry ok{name, true, ""};
        for (int p = 0; p + 1 <= s.top(); ++p) {
            Matrix lhs = op->block(p).adjoint() * b_.gram[p + 1];
            Matrix rhs = b_.gram[p] * star->block(p + 1);
            if (lhs != rhs) {
                ok = {name, false, "degree " + std::to_string(p)};
                break;
            }
        }
        e.push_back(ok);
    }
    e.push_back(map_zero("[d, dc] = 0", graded_commutator(d_, b_.dc)));
    e.push_back(map_zero("[d, dc*] = 0", graded_commutator(d_, dc_star_)));
    e.push_back(map_equal("box_d = box_dc", box_d_, box_dc_));
    e.push_back(decomposition("Hodge decomposition for d", b_, d_, d_star_, harmonic_));
    e.push_back(decomposition("Hodge decomposition for dc", b_, b_.dc, dc_star_, harmonic_c));
    e.push_back(map_zero("[d*, dc*] = 0", graded_commutator(d_star_, dc_star_)));
    e.push_back(map_zero("[d*, dc] = 0", graded_commutator(d_star_, b_.dc)));
    {
        HypothesisEntry two{"H = Ker d meet Ker d*", true, ""};
        HypothesisEntry closed{"Ker d = H + Im d", true, ""};
        for (int p = 0; p <= s.top(); ++p) {
            std::size_t n = s.dim(p);
            if (n == 0)
                continue;
            Matrix stacked = vstack(d_.block(p), d_star_.block(p));
            auto both = linalg::kernel_basis(stacked.rows() == 0 ? Matrix(0, n) : stacked);
            if (two.pass && !same_span(both, harmonic_[p], n))
                two = {two.name, false, "degree " + std::to_string(p)};
            auto z = linalg::kernel_basis(d_.block(p).rows() == 0 ? Matrix(0, n) : d_.block(p));
            auto im = image_in(d_, p, n);
            std::vector<Vector> sum = harmonic_[p];
            sum.insert(sum.end(), im.begin(), im.end());
            if (closed.pass && (harmonic_[p].size() + im.size() != z.size() || !same_span(sum, z, n)))
                closed = {closed.name, false, "degree " + std::to_string(p)};
        }
        e.push_back(two);
        e.push_back(closed);
    }
    h_d_ = std::make_shared<const Cohomology>(b_.carrier, s.top());
    h_dc_ = std::make_shared<const Cohomology>(std::make_shared<const FiniteDGA>(std::move(dc_alg)), s.top());
}

HypothesisReport HodgeData::verify_hypotheses() const
{
    return report_;
}

void HodgeData::require_decomposition() const
{
    for (const char* name : {"metric positive definite", "Hodge decomposition for d", "H = Ker d meet Ker d*"}) {
        const auto& e = report_.entry(name);
        if (!e.pass)
            throw PreconditionError("hypothesis failed: " + e.name + (e.witness.empty() ? "" : " (" + e.witness + ")"));
    }
}

bool HodgeData::is_harmonic(const Element& x) const
{
    if (x.degree < 0 || x.degree > box_d_.source_top())
        return x.is_zero();
    return is_zero(box_d_.block(x.degree).apply(x.coeffs));
}

Vector HodgeData::project(int p, const Vector& v) const
{
    const auto& h = harmonic_.at(p);
    if (h.empty())
        return Vector(v.size());
    Matrix basis = Matrix::from_columns(h, v.size());
    Matrix g = b_.gram[p];
    Matrix m = basis.adjoint() * g * basis;
    auto inv = linalg::inverse(m);
    if (!inv)
        throw ConsistencyError("harmonic Gram matrix is singular");
    return basis.apply(inv->apply((basis.adjoint() * g).apply(v)));
}

Element HodgeData::harmonic_projection(const Element& x) const
{
    require_decomposition();
    if (x.degree < 0 || x.degree > b_.carrier->top())
        return x;
    return {x.degree, project(x.degree, x.coeffs)};
}

Element HodgeData::circ_product(const Element& alpha, const Element& beta) const
{
    require_decomposition();
    if (!is_harmonic(alpha) || !is_harmonic(beta))
        throw PreconditionError("circ product needs harmonic arguments");
    Element prod = b_.carrier->multiply(alpha, beta);
    Element r = harmonic_projection(prod);
    if (prod.degree <= b_.carrier->top() && h_d_->class_of(r) != h_d_->class_of(prod))
        throw ConsistencyError("harmonic product does not represent the cohomology product");
    return r;
}

Fivefold HodgeData::fivefold() const
{
    require_decomposition();
    if (!report_.entry("Hodge decomposition for dc").pass)
        throw PreconditionError("hypothesis failed: Hodge decomposition for dc");
    const GradedSpace& s = *b_.space();
    const LinearMap maps[4] = {d_.compose(b_.dc), d_.compose(dc_star_), d_star_.compose(b_.dc),
                               d_star_.compose(dc_star_)};
    Fivefold f;
    for (int p = 0; p <= s.top(); ++p) {
        std::size_t n = s.dim(p);
        std::array<std::vector<Vector>, 5> parts;
        parts[0] = harmonic_[p];
        for (int k = 0; k < 4; ++k)
            parts[k + 1] = image_in(maps[k], p, n);
        std::array<std::size_t, 5> dims{};
        std::size_t total = 0;
        std::vector<Vector> all;
        for (int k = 0; k < 5; ++k) {
            dims[k] = parts[k].size();
            total += dims[k];
            all.insert(all.end(), parts[k].begin(), parts[k].end());
        }
        if (total != n && f.sums_to_total) {
            f.sums_to_total = false;
            f.witness = "degree " + std::to_string(p) + ": summand dims add to " + std::to_string(total) +
                        ", dimension " + std::to_string(n);
        }
        for (int k = 0; k < 5; ++k)
            for (int l = k + 1; l < 5; ++l) {
                std::vector<Vector> pair = parts[k];
                pair.insert(pair.end(), parts[l].begin(), parts[l].end());
                if (linalg::span_rank(pair, n) != dims[k] + dims[l] && f.pairwise_independent) {
                    f.pairwise_independent = false;
                    f.witness = "degree " + std::to_string(p) + ": " + Fivefold::names[k] + " meets " + Fivefold::names[l];
                }
            }
        if (n > 0 && linalg::span_rank(all, n) != total && f.pairwise_independent) {
            f.pairwise_independent = false;
            f.witness = "degree " + std::to_string(p) + ": summands are not independent";
        }
        f.summands.push_back(std::move(parts));
        f.dims.push_back(dims);
    }
    return f;
}

bool FormalityCertificate::valid() const
{
    return fivefold.sums_to_total && fivefold.pairwise_independent && kernel_closed && kernel_decomposes &&
           d_induces_zero && inclusion_qi.quasi_isomorphism && projection_qi.quasi_isomorphism &&
           dims_h_d == dims_h_dc && dims_h_d == dims_harmonic &&
           std::all_of(circ.begin(), circ.end(), [](const CircRecord& c) { return c.lemma_d && c.lemma_dc; });
}

FormalityCertificate HodgeData::formality_certificate() const
{
    if (const auto* f = report_.first_failure())
        throw PreconditionError("hypothesis failed: " + f->name + (f->witness.empty() ? "" : " (" + f->witness + ")"));
    const FiniteDGA& a = *b_.carrier;
    const GradedSpace& s = a.space();
    const int top = a.top();
    FormalityCertificate c;
    c.harmonic = harmonic_;
    c.fivefold = fivefold();

    // Ker dc as a sub-DGA of (A, d).
    auto kbasis = kernels(b_.dc);
    auto coords = [&](int p, const Vector& v) -> std::optional<Vector> {
        if (p > top)
            return Vector{};
        return linalg::coordinates(kbasis[p], v);
    };
    auto kspace = std::make_shared<GradedSpace>();
    for (int p = 0; p <= top; ++p) {
        kspace->extend_to(p);
        for (std::size_t i = 0; i < kbasis[p].size(); ++i) {
            std::size_t lead = *first_nonzero(kbasis[p][i]);
            std::string label = (p == 0 && kbasis[0].size() == 1) ? "1" : "k" + std::to_string(p) + "_" + std::to_string(i);
            kspace->add(label, s.bidegree(p, lead));
        }
    }
    auto rule = std::make_shared<TabularProduct>(kspace);
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q <= top; ++q)
            for (std::size_t i = 0; i < kbasis[p].size(); ++i)
                for (std::size_t j = 0; j < kbasis[q].size(); ++j) {
                    Element prod = a.multiply({p, kbasis[p][i]}, {q, kbasis[q][j]});
                    auto x = coords(p + q, prod.coeffs);
                    if (!x) {
                        c.kernel_closed = false;
                        continue;
                    }
                    SparseVector value;
                    for (std::size_t k = 0; k < x->size(); ++k)
                        if (!(*x)[k].is_zero())
                            value.emplace_back(k, (*x)[k]);
                    rule->set(p, i, q, j, std::move(value));
                }
    std::vector<Matrix> kd;
    for (int p = 0; p <= top; ++p) {
        Matrix block(p + 1 <= top ? kbasis[p + 1].size() : 0, kbasis[p].size());
        if (p + 1 <= top)
            for (std::size_t i = 0; i < kbasis[p].size(); ++i) {
                auto x = coords(p + 1, a.d(p).apply(kbasis[p][i]));
                if (!x)
                    c.kernel_closed = false;
                else
                    block.set_column(i, *x);
            }
        kd.push_back(std::move(block));
    }
    if (!c.kernel_closed)
        throw ConsistencyError("Ker dc is not closed under the product and d");
    auto unit = coords(0, a.unit().coeffs);
    if (!unit)
        throw ConsistencyError("the unit is not dc-closed");
    c.kernel_dc = std::make_shared<const FiniteDGA>(a.field(), kspace, rule, std::move(kd), Element{0, *unit}, std::nullopt);
    c.cohomology_dc = std::make_shared<const FiniteDGA>(h_dc_->as_dga());

    c.inclusion = DgaMorphism{c.kernel_dc, b_.carrier, {}, std::nullopt};
    c.projection = DgaMorphism{c.kernel_dc, c.cohomology_dc, {}, std::nullopt};
    for (int p = 0; p <= top; ++p) {
        c.inclusion.maps.push_back(Matrix::from_columns(kbasis[p], s.dim(p)));
        Matrix pi(h_dc_->dim(p), kbasis[p].size());
        for (std::size_t i = 0; i < kbasis[p].size(); ++i)
            pi.set_column(i, h_dc_->class_of({p, kbasis[p][i]}));
        c.projection.maps.push_back(std::move(pi));
    }
    if (auto r = check_morphism(c.inclusion); !r)
        throw ConsistencyError("inclusion of Ker dc is not a DGA map: " + r.witness);

    for (int p = 0; p + 1 <= top; ++p)
        for (std::size_t i = 0; i < h_dc_->dim(p); ++i)
            if (!is_zero(h_dc_->class_of({p + 1, d_.apply(p, h_dc_->representative(p, i).coeffs)})))
                c.d_induces_zero = false;
    if (c.d_induces_zero)
        if (auto r = check_morphism(c.projection); !r)
            throw ConsistencyError("projection onto H(A, dc) is not a DGA map: " + r.witness);

    Cohomology hk(c.kernel_dc, top);
    Cohomology hq(c.cohomology_dc, top);
    c.inclusion_qi = quasi_isomorphism(c.inclusion, hk, *h_d_);
    c.projection_qi = quasi_isomorphism(c.projection, hk, hq);
    c.dims_h_d = h_d_->dims();
    c.dims_h_dc = h_dc_->dims();
    for (int p = 0; p <= top; ++p)
        c.dims_harmonic.push_back(harmonic_[p].size());

    for (int p = 0; p <= top; ++p) {
        const auto& parts = c.fivefold.summands[p];
        std::vector<Vector> sum = parts[0];
        sum.insert(sum.end(), parts[1].begin(), parts[1].end());
        sum.insert(sum.end(), parts[3].begin(), parts[3].end());
        if (!same_span(sum, kbasis[p], s.dim(p)) || sum.size() != kbasis[p].size())
            c.kernel_decomposes = false;
    }

    for (int p = 0; p <= top; ++p)
        for (int q = p; p + q <= top; ++q)
            for (std::size_t i = 0; i < harmonic_[p].size(); ++i)
                for (std::size_t j = (p == q ? i : 0); j < harmonic_[q].size(); ++j) {
                    Element alpha{p, harmonic_[p][i]}, beta{q, harmonic_[q][j]};
                    Element prod = a.multiply(alpha, beta);
                    CircRecord rec{p, i, q, j, harmonic_projection(prod), true, true};
                    rec.lemma_d = h_d_->class_of(rec.product) == h_d_->class_of(prod);
                    rec.lemma_dc = h_dc_->class_of(rec.product) == h_dc_->class_of(prod);
                    c.circ.push_back(std::move(rec));
                }
    return c;
}

HypothesisReport check_kahler_identities(const MetricBicomplex& b)
{
    LinearMap del = b.carrier->differential();
    const LinearMap& delbar = b.dc;
    if (auto v = del.bidegree_violation({1, 0}))
        throw PreconditionError("d is not of bidegree (1,0): entry from " + b.space()->label(std::get<0>(*v), std::get<1>(*v)));
    if (auto v = delbar.bidegree_violation({0, 1}))
        throw PreconditionError("dc is not of bidegree (0,1): entry from " + b.space()->label(std::get<0>(*v), std::get<1>(*v)));
    LinearMap del_s = adjoint(del, b.gram);
    LinearMap delbar_s = adjoint(delbar, b.gram);
    LinearMap total = del + delbar;
    LinearMap box = graded_commutator(total, adjoint(total, b.gram));
    LinearMap half_box = box * Scalar(Rational(1, 2));
    HypothesisReport r;
    auto& e = r.entries;
    e.push_back(map_zero("[del, del] = 0", graded_commutator(del, del)));
    e.push_back(map_zero("[delbar, delbar] = 0", graded_commutator(delbar, delbar)));
    e.push_back(map_zero("[del, delbar] = 0", graded_commutator(del, delbar)));
    e.push_back(map_zero("[del*, del*] = 0", graded_commutator(del_s, del_s)));
    e.push_back(map_zero("[delbar*, delbar*] = 0", graded_commutator(delbar_s, delbar_s)));
    e.push_back(map_zero("[del*, delbar*] = 0", graded_commutator(del_s, delbar_s)));
    e.push_back(map_zero("[del, delbar*] = 0", graded_commutator(del, delbar_s)));
    e.push_back(map_zero("[del*, delbar] = 0", graded_commutator(del_s, delbar)));
    e.push_back(map_equal("[del, del*] = box/2", graded_commutator(del, del_s), half_box));
    e.push_back(map_equal("[delbar, delbar*] = box/2", graded_commutator(delbar, delbar_s), half_box));
    return r;
}

} // namespace rho
