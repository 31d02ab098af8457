#include "rho/frobenius.hpp"

#include "rho/cohomology.hpp"
#include "rho/errors.hpp"
#include "rho/linalg.hpp"

namespace rho {

namespace {

Scalar bilinear(const Vector& a, const Vector& b)
{
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    return s;
}

std::string vector_text(const GradedSpace& s, int p, const Vector& v)
{
    return linear_text(s, p, v);
}

// Degrees 0..top of a zero-differential algebra, as a complete algebra.
FiniteDGA restrict_to(const FiniteDGA& h, int top)
{
    auto space = std::make_shared<GradedSpace>();
    for (int p = 0; p <= top; ++p) {
        space->extend_to(p);
        for (std::size_t i = 0; i < h.dim(p); ++i)
            space->add(h.space().label(p, i), h.space().bidegree(p, i));
    }
    auto rule = std::make_shared<TabularProduct>(space);
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q <= top; ++q)
            for (std::size_t i = 0; i < h.dim(p); ++i)
                for (std::size_t j = 0; j < h.dim(q); ++j)
                    rule->set(p, i, q, j, h.multiply(p, i, q, j));
    std::vector<Matrix> d;
    for (int p = 0; p <= top; ++p)
        d.emplace_back(space->dim(p + 1), space->dim(p));
    return FiniteDGA(h.field(), space, rule, std::move(d), h.unit(), std::nullopt);
}

Vector trace_vector(const FiniteDGA& a, const std::vector<FileValue>& entries, int degree)
{
    Vector t(a.dim(degree));
    for (const auto& e : entries) {
        Element x = parse_element(a, e.on);
        std::size_t nonzero = 0, at = 0;
        for (std::size_t k = 0; k < x.coeffs.size(); ++k)
            if (!x.coeffs[k].is_zero()) {
                ++nonzero;
                at = k;
            }
        if (x.degree != degree || nonzero != 1)
            throw PreconditionError("trace entry '" + e.on + "' is not a basis element of degree " +
                                    std::to_string(degree));
        t[at] = Scalar::parse(e.value) / x.coeffs[at];
    }
    return t;
}

} // namespace

Scalar BigradedFrobenius::integral(const Element& x) const
{
    if (x.degree != 2 * n)
        return Scalar();
    return bilinear(trace, x.coeffs);
}

Scalar BigradedFrobenius::eta(const Element& x, const Element& y) const
{
    return integral(algebra->multiply(x, y));
}

Matrix BigradedFrobenius::pairing(int p) const
{
    const FiniteDGA& a = *algebra;
    Matrix m(a.dim(p), a.dim(2 * n - p));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = eta(a.basis(p, i), a.basis(2 * n - p, j));
    return m;
}

std::map<Bidegree, std::size_t> BigradedFrobenius::hodge_numbers() const
{
    std::map<Bidegree, std::size_t> h;
    for (Bidegree b : algebra->space().bidegrees())
        h[b] = algebra->space().component(b).size();
    return h;
}

BigradedFrobenius build_frobenius(DgaPtr algebra, int n, Vector trace)
{
    const FiniteDGA& a = *algebra;
    const GradedSpace& s = a.space();
    if (!a.complete())
        throw PreconditionError("a Frobenius algebra must be finite");
    if (!a.differential().is_zero())
        throw PreconditionError("a Frobenius algebra has zero differential");
    if (n < 0 || a.top() > 2 * n)
        throw PreconditionError("degrees exceed 2n for n = " + std::to_string(n));
    if (auto r = check_algebra(a); !r)
        throw PreconditionError("not a graded-commutative algebra: " + r.witness);
    if (trace.size() != a.dim(2 * n))
        throw PreconditionError("trace must be a functional on degree 2n");
    for (int p = 0; p <= a.top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i) {
            Bidegree b = s.bidegree(p, i);
            if (b.p > n || b.q > n)
                throw PreconditionError("bidegree " + to_string(b) + " exceeds (n, n)");
        }
    for (std::size_t k = 0; k < trace.size(); ++k)
        if (!trace[k].is_zero() && s.bidegree(2 * n, k) != Bidegree{n, n})
            throw PreconditionError("trace is nonzero on " + s.label(2 * n, k) + " outside bidegree (n, n)");
    for (int p = 0; p <= a.top(); ++p)
        for (int q = 0; p + q <= a.top(); ++q)
            for (std::size_t i = 0; i < s.dim(p); ++i)
                for (std::size_t j = 0; j < s.dim(q); ++j)
                    for (const auto& [k, c] : a.multiply(p, i, q, j))
                        if (s.bidegree(p + q, k) != s.bidegree(p, i) + s.bidegree(q, j))
                            throw PreconditionError("product " + s.label(p, i) + "*" + s.label(q, j) +
                                                    " is not bidegree additive");

    BigradedFrobenius f{algebra, n, std::move(trace)};
    for (int p = 0; p <= 2 * n; ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i)
            if (f.eta(a.unit(), a.basis(p, i)) != f.integral(a.basis(p, i)))
                throw PreconditionError("unit axiom fails on " + s.label(p, i));
    for (int p = 0; p <= 2 * n; ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i)
            for (std::size_t j = 0; j < s.dim(2 * n - p); ++j) {
                Element x = a.basis(p, i), y = a.basis(2 * n - p, j);
                if (f.eta(x, y) != sign(p * (2 * n - p)) * f.eta(y, x))
                    throw PreconditionError("pairing is not graded symmetric on " + s.label(p, i) + ", " +
                                            s.label(2 * n - p, j));
            }
    for (int p = 0; p <= 2 * n; ++p)
        for (int q = 0; p + q <= 2 * n; ++q) {
            int r = 2 * n - p - q;
            for (std::size_t i = 0; i < s.dim(p); ++i)
                for (std::size_t j = 0; j < s.dim(q); ++j)
                    for (std::size_t k = 0; k < s.dim(r); ++k) {
                        Element x = a.basis(p, i), y = a.basis(q, j), z = a.basis(r, k);
                        if (f.eta(a.multiply(x, y), z) != f.eta(x, a.multiply(y, z)))
                            throw PreconditionError("pairing is not invariant on " + s.label(p, i) + ", " +
                                                    s.label(q, j) + ", " + s.label(r, k));
                    }
        }
    for (Bidegree b : s.bidegrees()) {
        Bidegree c{n - b.p, n - b.q};
        auto rows = s.component(b);
        auto cols = s.component(c);
        Matrix m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                m(i, j) = f.eta(a.basis(b.total(), rows[i]), a.basis(c.total(), cols[j]));
        auto left = linalg::kernel_basis(m.transpose());
        if (rows.size() != cols.size() || !left.empty()) {
            Vector v(s.dim(b.total()));
            if (!left.empty())
                for (std::size_t i = 0; i < rows.size(); ++i)
                    v[rows[i]] = left[0][i];
            throw PreconditionError("degenerate pairing between bidegrees " + to_string(b) + " and " + to_string(c) +
                                    (left.empty() ? std::string(": dimensions differ")
                                                  : ": null vector " + vector_text(s, b.total(), v)));
        }
    }
    for (auto [b, h] : f.hodge_numbers())
        if (s.component({n - b.p, n - b.q}).size() != h)
            throw ConsistencyError("Hodge numbers are not symmetric at " + to_string(b));
    return f;
}

FrobeniusInput load_frobenius(const AlgebraFile& file, int cap)
{
    if (file.kind == "bicomplex")
        throw PreconditionError("a bicomplex file does not describe a Frobenius algebra");
    if (file.trace.empty())
        throw PreconditionError("a trace is needed");
    FrobeniusInput in;
    bool free = file.kind == "free-dga";
    std::shared_ptr<const FiniteDGA> a;
    int degree = 0;
    if (free) {
        // Only used to read the degree of the trace monomial.
        FreeDGA probe = load_free_dga(file, file.differential, 4096);
        Poly top = probe.algebra.parse(file.trace.front().on);
        if (top.empty())
            throw PreconditionError("trace entry is zero");
        degree = probe.algebra.degree(top.begin()->first);
        int c = std::max(file.cap.value_or(cap), degree + 2);
        a = std::make_shared<const FiniteDGA>(materialize(load_free_dga(file, file.differential, c), c));
    } else {
        a = std::make_shared<const FiniteDGA>(load_tabular_dga(file));
        degree = parse_element(*a, file.trace.front().on).degree;
    }
    if (degree % 2)
        throw PreconditionError("trace must live in even total degree");
    int n = file.n.value_or(degree / 2);
    if (degree != 2 * n)
        throw PreconditionError("trace degree does not match n");

    auto element = [&](const std::string& text) { return parse_element(*a, text); };
    if (a->differential().is_zero() && a->complete() && a->top() <= 2 * n) {
        Vector t = trace_vector(*a, file.trace, 2 * n);
        in.frobenius = build_frobenius(a, n, std::move(t));
        if (!file.kahler_class.empty())
            in.kahler_class = element(file.kahler_class);
        for (const auto& name : file.rational_basis) {
            in.rational_names.push_back(name);
            in.rational_basis.push_back(element(name));
        }
        return in;
    }

    int up_to = a->complete() ? a->top() : std::min(a->valid_degree(), 2 * n + 1);
    Cohomology h(a, up_to);
    for (int p = 2 * n + 1; p <= up_to; ++p)
        if (h.dim(p) != 0)
            throw PreconditionError("cohomology is nonzero in degree " + std::to_string(p) + " above 2n");
    Vector t = trace_vector(*a, file.trace, 2 * n);
    Matrix dtop = a->d(2 * n - 1);
    for (std::size_t c = 0; c < dtop.cols(); ++c)
        if (!bilinear(t, dtop.column(c)).is_zero())
            throw PreconditionError("trace does not vanish on exact elements");
    Vector ht(h.dim(2 * n));
    for (std::size_t i = 0; i < ht.size(); ++i)
        ht[i] = bilinear(t, h.representatives(2 * n)[i]);
    auto ring = std::make_shared<const FiniteDGA>(restrict_to(h.as_dga(), 2 * n));
    in.frobenius = build_frobenius(ring, n, std::move(ht));
    auto as_class = [&](const std::string& text) {
        Element x = element(text);
        return Element{x.degree, h.class_of(x)};
    };
    if (!file.kahler_class.empty())
        in.kahler_class = as_class(file.kahler_class);
    for (const auto& name : file.rational_basis) {
        in.rational_names.push_back(name);
        in.rational_basis.push_back(as_class(name));
    }
    return in;
}

RationalVerdict rational_structure_check(const BigradedFrobenius& f, const RationalStructure& r)
{
    const FiniteDGA& a = f.a();
    if (r.names.size() != r.basis.size())
        throw PreconditionError("one name per basis element is required");
    std::vector<std::vector<std::size_t>> by_degree(a.top() + 1);
    for (std::size_t k = 0; k < r.basis.size(); ++k) {
        int p = r.basis[k].degree;
        if (p < 0 || p > a.top())
            throw PreconditionError("basis element " + r.names[k] + " lies outside the algebra");
        by_degree[p].push_back(k);
    }
    std::vector<Matrix> inverse(a.top() + 1);
    for (int p = 0; p <= a.top(); ++p) {
        std::vector<Vector> cols;
        for (std::size_t k : by_degree[p])
            cols.push_back(r.basis[k].coeffs);
        if (cols.size() != a.dim(p))
            throw PreconditionError("basis does not span degree " + std::to_string(p));
        if (cols.empty())
            continue;
        auto inv = linalg::inverse(Matrix::from_columns(cols, a.dim(p)));
        if (!inv)
            throw PreconditionError("basis does not span degree " + std::to_string(p));
        inverse[p] = *inv;
    }
    auto rational = [](const Scalar& s) { return s.is_real(); };
    for (std::size_t x = 0; x < r.basis.size(); ++x)
        for (std::size_t y = 0; y < r.basis.size(); ++y) {
            int p = r.basis[x].degree + r.basis[y].degree;
            if (p > a.top())
                continue;
            Vector c = inverse[p].apply(a.multiply(r.basis[x], r.basis[y]).coeffs);
            for (std::size_t z = 0; z < c.size(); ++z)
                if (!rational(c[z]))
                    return {false, "(" + r.names[x] + ", " + r.names[y] + ", " + r.names[by_degree[p][z]] +
                                       "): " + c[z].to_string()};
        }
    for (std::size_t x = 0; x < r.basis.size(); ++x)
        if (Scalar v = f.integral(r.basis[x]); !rational(v))
            return {false, "trace(" + r.names[x] + ") = " + v.to_string()};
    return {};
}

} // namespace rho
