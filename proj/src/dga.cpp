#include "rho/dga.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rho {

namespace {

class FreeProduct : public ProductRule {
public:
    FreeProduct(FreeGCA algebra, const std::vector<std::vector<Monomial>>& monomials, int top)
        : algebra_(std::move(algebra)), monomials_(monomials), top_(top)
    {
        for (const auto& degree : monomials_) {
            std::map<Monomial, std::size_t> idx;
            for (std::size_t k = 0; k < degree.size(); ++k)
                idx.emplace(degree[k], k);
            index_.push_back(std::move(idx));
        }
    }

    SparseVector multiply(int p, std::size_t i, int q, std::size_t j) const override
    {
        if (p + q > top_)
            return {};
        SignedMonomial s = algebra_.multiply(monomials_.at(p).at(i), monomials_.at(q).at(j));
        if (s.sign == 0)
            return {};
        return {{index_.at(p + q).at(s.monomial), Scalar(s.sign)}};
    }

private:
    FreeGCA algebra_;
    std::vector<std::vector<Monomial>> monomials_;
    std::vector<std::map<Monomial, std::size_t>> index_;
    int top_;
};

Vector dense(const SparseVector& s, std::size_t n)
{
    Vector v(n);
    for (const auto& [k, c] : s)
        v.at(k) += c;
    return v;
}

std::string pair_text(const FiniteDGA& a, int p, std::size_t i, int q, std::size_t j)
{
    return "(" + a.space().label(p, i) + ", " + a.space().label(q, j) + ")";
}

} // namespace

TabularProduct::TabularProduct(SpacePtr space) : space_(std::move(space))
{
    n_ = space_->total_dim();
    table_.resize(n_ * n_);
}

void TabularProduct::set(int p, std::size_t i, int q, std::size_t j, SparseVector value)
{
    SparseVector cleaned;
    for (auto& [k, c] : value)
        if (!c.is_zero())
            cleaned.emplace_back(k, std::move(c));
    table_.at((space_->offset(p) + i) * n_ + space_->offset(q) + j) = std::move(cleaned);
}

SparseVector TabularProduct::multiply(int p, std::size_t i, int q, std::size_t j) const
{
    if (p + q > space_->top())
        return {};
    return table_.at((space_->offset(p) + i) * n_ + space_->offset(q) + j);
}

Poly FreeDGA::d(const Monomial& m) const
{
    std::size_t g = 0;
    while (g < m.exponents.size() && m.exponents[g] == 0)
        ++g;
    if (g == m.exponents.size())
        return {};
    Monomial rest = m;
    rest.exponents[g] -= 1;
    Poly rest_poly{{rest, Scalar(1)}};
    Poly gen_poly{{algebra.generator(g), Scalar(1)}};
    Poly out = algebra.multiply(differential.at(g), rest_poly);
    Poly second = algebra.multiply(gen_poly, d(rest));
    if (algebra.generators()[g].odd())
        second = scale(second, Scalar(-1));
    return add(out, second);
}

Poly FreeDGA::d(const Poly& p) const
{
    Poly out;
    for (const auto& [m, c] : p)
        out = add(out, scale(d(m), c));
    return out;
}

FiniteDGA::FiniteDGA(Field field, SpacePtr space, std::shared_ptr<const ProductRule> product,
                     std::vector<Matrix> d, Element unit, std::optional<int> cap)
    : field_(field), space_(std::move(space)), product_(std::move(product)), d_(std::move(d)),
      unit_(std::move(unit)), cap_(cap)
{
    if (static_cast<int>(d_.size()) != top() + 1)
        throw PreconditionError("differential must have one block per degree");
    for (int p = 0; p <= top(); ++p) {
        std::size_t rows = p + 1 <= top() ? dim(p + 1) : 0;
        if (d_[p].rows() != rows || d_[p].cols() != dim(p))
            throw PreconditionError("differential block " + std::to_string(p) + " has wrong shape");
    }
    if (unit_.degree != 0 || unit_.coeffs.size() != dim(0))
        throw PreconditionError("unit must be an element of degree 0");
    if (cap_ && *cap_ != top())
        throw PreconditionError("truncated algebra must be materialized exactly to its cap");
    valid_ = cap_ ? *cap_ - 1 : top();
}

Matrix FiniteDGA::d(int p) const
{
    if (p < 0 || p > top())
        return Matrix(p + 1 >= 0 && p + 1 <= top() ? dim(p + 1) : 0, 0);
    return d_[p];
}

Element FiniteDGA::d(const Element& x) const
{
    if (x.degree > top())
        return {x.degree + 1, {}};
    return {x.degree + 1, d_[x.degree].apply(x.coeffs)};
}

LinearMap FiniteDGA::differential() const
{
    LinearMap m(space_, space_, 1);
    for (int p = 0; p <= top(); ++p)
        m.block(p) = d_[p];
    return m;
}

SparseVector FiniteDGA::multiply(int p, std::size_t i, int q, std::size_t j) const
{
    if (p + q > top())
        return {};
    return product_->multiply(p, i, q, j);
}

Element FiniteDGA::multiply(const Element& a, const Element& b) const
{
    int r = a.degree + b.degree;
    Element out = zero(r);
    if (r > top())
        return out;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j].is_zero())
                continue;
            Scalar c = a.coeffs[i] * b.coeffs[j];
            for (const auto& [k, v] : product_->multiply(a.degree, i, b.degree, j))
                out.coeffs[k] += c * v;
        }
    }
    return out;
}

Element FiniteDGA::basis(int p, std::size_t i) const
{
    Element e = zero(p);
    e.coeffs.at(i) = Scalar(1);
    return e;
}

Element FiniteDGA::zero(int p) const
{
    return {p, Vector(p >= 0 && p <= top() ? dim(p) : 0)};
}

FiniteDGA FiniteDGA::with_differential(std::vector<Matrix> d) const
{
    FiniteDGA out(field_, space_, product_, std::move(d), unit_, cap_);
    out.monomials_ = monomials_;
    return out;
}

FiniteDGA materialize(const FreeDGA& free, int cap)
{
    std::vector<Generator> gens = free.algebra.generators();
    FreeGCA wide(gens, cap + 1);
    int top = cap;
    std::optional<int> trunc = cap;
    if (wide.finite()) {
        int sum = 0;
        for (const auto& g : gens)
            sum += g.degree();
        if (sum <= cap) {
            top = sum;
            trunc.reset();
        }
    }
    auto space = std::make_shared<GradedSpace>();
    std::vector<std::vector<Monomial>> monomials;
    for (int p = 0; p <= top; ++p) {
        monomials.push_back(wide.basis_in_degree(p));
        space->extend_to(p);
        for (const auto& m : monomials.back())
            space->add(wide.to_string(m), wide.bidegree(m));
    }
    auto presentation = std::make_shared<FreeDGA>(FreeDGA{free.field, FreeGCA(gens, cap + 1), free.differential});
    std::vector<Matrix> d;
    for (int p = 0; p <= top; ++p) {
        if (p + 1 > top) {
            d.emplace_back(0, monomials[p].size());
            continue;
        }
        std::map<Monomial, std::size_t> next;
        for (std::size_t k = 0; k < monomials[p + 1].size(); ++k)
            next.emplace(monomials[p + 1][k], k);
        Matrix block(monomials[p + 1].size(), monomials[p].size());
        for (std::size_t k = 0; k < monomials[p].size(); ++k)
            for (const auto& [m, c] : presentation->d(monomials[p][k])) {
                auto it = next.find(m);
                if (it == next.end())
                    throw ConsistencyError("differential leaves the monomial basis");
                block(it->second, k) += c;
            }
        d.push_back(std::move(block));
    }
    auto rule = std::make_shared<FreeProduct>(wide, monomials, top);
    Element unit{0, Vector{Scalar(1)}};
    FiniteDGA out(free.field, space, rule, std::move(d), unit, trunc);
    out.presentation_ = presentation;
    out.monomials_ = std::move(monomials);
    bool closed = std::all_of(free.differential.begin(), free.differential.end(), [](const Poly& p) { return p.empty(); });
    if (closed)
        out.mark_zero_beyond_top();
    return out;
}

CheckResult check_d_squared(const FiniteDGA& a)
{
    for (int p = 0; p + 2 <= a.top(); ++p) {
        Matrix dd = a.d(p + 1) * a.d(p);
        for (std::size_t c = 0; c < dd.cols(); ++c)
            if (!is_zero(dd.column(c)))
                return CheckResult::fail("d^2(" + a.space().label(p, c) + ") = " + to_string(a, {p + 2, dd.column(c)}));
    }
    return {};
}

CheckResult check_leibniz(const FiniteDGA& a)
{
    for (int p = 0; p <= a.top(); ++p)
        for (int q = 0; p + q + 1 <= a.top(); ++q)
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < a.dim(q); ++j) {
                    Element x = a.basis(p, i);
                    Element y = a.basis(q, j);
                    Element lhs = a.d(a.multiply(x, y));
                    Element r1 = a.multiply(a.d(x), y);
                    Element r2 = a.multiply(x, a.d(y));
                    Vector rhs = p % 2 == 0 ? add(r1.coeffs, r2.coeffs) : sub(r1.coeffs, r2.coeffs);
                    Vector diff = sub(lhs.coeffs, rhs);
                    if (!is_zero(diff))
                        return CheckResult::fail("Leibniz fails on " + pair_text(a, p, i, q, j) +
                                                 ", discrepancy " + to_string(a, {p + q + 1, diff}));
                }
    return {};
}

CheckResult check_algebra(const FiniteDGA& a)
{
    for (int p = 0; p <= a.top(); ++p)
        for (std::size_t i = 0; i < a.dim(p); ++i) {
            Element x = a.basis(p, i);
            if (a.multiply(a.unit(), x).coeffs != x.coeffs)
                return CheckResult::fail("unit law fails on " + a.space().label(p, i));
        }
    for (int p = 0; p <= a.top(); ++p)
        for (int q = p; p + q <= a.top(); ++q)
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < a.dim(q); ++j) {
                    Vector xy = dense(a.multiply(p, i, q, j), a.dim(p + q));
                    Vector yx = dense(a.multiply(q, j, p, i), a.dim(p + q));
                    if ((p * q) % 2 != 0)
                        yx = scale(yx, Scalar(-1));
                    if (xy != yx)
                        return CheckResult::fail("graded commutativity fails on " + pair_text(a, p, i, q, j));
                }
    for (int p = 1; p <= a.top(); ++p)
        for (int q = 1; p + q <= a.top(); ++q)
            for (int r = 1; p + q + r <= a.top(); ++r)
                for (std::size_t i = 0; i < a.dim(p); ++i)
                    for (std::size_t j = 0; j < a.dim(q); ++j)
                        for (std::size_t k = 0; k < a.dim(r); ++k) {
                            Element x = a.basis(p, i), y = a.basis(q, j), z = a.basis(r, k);
                            if (a.multiply(a.multiply(x, y), z).coeffs != a.multiply(x, a.multiply(y, z)).coeffs)
                                return CheckResult::fail("associativity fails on (" + a.space().label(p, i) + ", " +
                                                         a.space().label(q, j) + ", " + a.space().label(r, k) + ")");
                        }
    return {};
}

CheckResult check_dga(const FiniteDGA& a)
{
    if (auto r = check_algebra(a); !r)
        return r;
    if (auto r = check_d_squared(a); !r)
        return r;
    return check_leibniz(a);
}

CheckResult check_free(const FreeDGA& free)
{
    const auto& gens = free.algebra.generators();
    if (free.differential.size() != gens.size())
        return CheckResult::fail("differential must be given on every generator");
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (const auto& [m, c] : free.differential[g])
            if (free.algebra.degree(m) != gens[g].degree() + 1)
                return CheckResult::fail("d(" + gens[g].name + ") has term " + free.algebra.to_string(m) +
                                         " of wrong degree");
    FreeGCA wide(gens, free.algebra.cap() + 2);
    FreeDGA probe{free.field, wide, free.differential};
    for (std::size_t g = 0; g < gens.size(); ++g) {
        Poly dd = probe.d(free.differential[g]);
        if (!dd.empty())
            return CheckResult::fail("d^2(" + gens[g].name + ") = " + wide.to_string(dd));
    }
    return {};
}

FiniteDGA tensor(const FiniteDGA& a, const FiniteDGA& b)
{
    Field field = (a.field() == Field::QI || b.field() == Field::QI) ? Field::QI : Field::Q;
    int top;
    std::optional<int> cap;
    if (a.complete() && b.complete()) {
        top = a.top() + b.top();
    } else {
        top = std::min(a.cap().value_or(a.top() + b.top()), b.cap().value_or(a.top() + b.top()));
        cap = top;
    }
    auto space = std::make_shared<GradedSpace>();
    // index[n] lists (p, i, j) for basis elements of degree n
    std::vector<std::vector<std::tuple<int, std::size_t, std::size_t>>> index(top + 1);
    std::map<std::tuple<int, std::size_t, int, std::size_t>, std::size_t> position;
    for (int n = 0; n <= top; ++n) {
        space->extend_to(n);
        for (int p = 0; p <= n; ++p) {
            if (p > a.top() || n - p > b.top())
                continue;
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < b.dim(n - p); ++j) {
                    const std::string& la = a.space().label(p, i);
                    const std::string& lb = b.space().label(n - p, j);
                    std::string label = la == "1" ? lb : (lb == "1" ? la : la + "_" + lb);
                    position[{p, i, n - p, j}] = index[n].size();
                    index[n].emplace_back(p, i, j);
                    space->add(label, a.space().bidegree(p, i) + b.space().bidegree(n - p, j));
                }
        }
    }
    auto lookup = [&](int p, std::size_t i, int q, std::size_t j) { return position.at({p, i, q, j}); };

    std::vector<Matrix> d;
    for (int n = 0; n <= top; ++n) {
        std::size_t rows = n + 1 <= top ? space->dim(n + 1) : 0;
        Matrix block(rows, space->dim(n));
        if (rows > 0) {
            for (std::size_t col = 0; col < index[n].size(); ++col) {
                auto [p, i, j] = index[n][col];
                int q = n - p;
                if (p + 1 <= a.top()) {
                    Vector da = a.d(a.basis(p, i)).coeffs;
                    for (std::size_t k = 0; k < da.size(); ++k)
                        if (!da[k].is_zero())
                            block(lookup(p + 1, k, q, j), col) += da[k];
                }
                if (q + 1 <= b.top()) {
                    Vector db = b.d(b.basis(q, j)).coeffs;
                    for (std::size_t k = 0; k < db.size(); ++k)
                        if (!db[k].is_zero())
                            block(lookup(p, i, q + 1, k), col) += p % 2 == 0 ? db[k] : -db[k];
                }
            }
        }
        d.push_back(std::move(block));
    }

    auto rule = std::make_shared<TabularProduct>(space);
    for (int n = 0; n <= top; ++n)
        for (int m = 0; n + m <= top; ++m)
            for (std::size_t x = 0; x < index[n].size(); ++x)
                for (std::size_t y = 0; y < index[m].size(); ++y) {
                    auto [p, i, j] = index[n][x];
                    auto [r, k, l] = index[m][y];
                    int q = n - p;
                    if (p + r > a.top() || q + (m - r) > b.top())
                        continue;
                    Scalar s = sign(q * r);
                    SparseVector value;
                    for (const auto& [u, cu] : a.multiply(p, i, r, k))
                        for (const auto& [v, cv] : b.multiply(q, j, m - r, l))
                            value.emplace_back(lookup(p + r, u, q + m - r, v), s * cu * cv);
                    rule->set(n, x, m, y, std::move(value));
                }
    Element unit{0, Vector(space->dim(0))};
    for (std::size_t i = 0; i < a.dim(0); ++i)
        for (std::size_t j = 0; j < b.dim(0); ++j)
            unit.coeffs[lookup(0, i, 0, j)] = a.unit().coeffs[i] * b.unit().coeffs[j];
    FiniteDGA out(field, space, rule, std::move(d), unit, cap);
    if (cap && a.valid_degree() >= std::min(a.top(), top) && b.valid_degree() >= std::min(b.top(), top))
        out.mark_zero_beyond_top();
    return out;
}

FiniteDGA change_basis(const FiniteDGA& a, const std::vector<Matrix>& change)
{
    if (static_cast<int>(change.size()) != a.top() + 1)
        throw PreconditionError("change of basis needs one matrix per degree");
    std::vector<Matrix> inv;
    for (int p = 0; p <= a.top(); ++p) {
        auto m = linalg::inverse(change[p]);
        if (!m || change[p].rows() != a.dim(p))
            throw PreconditionError("change of basis in degree " + std::to_string(p) + " is not invertible");
        inv.push_back(*m);
    }
    auto space = std::make_shared<GradedSpace>();
    for (int p = 0; p <= a.top(); ++p) {
        space->extend_to(p);
        for (std::size_t k = 0; k < a.dim(p); ++k) {
            auto lead = first_nonzero(change[p].column(k));
            space->add("b" + std::to_string(p) + "_" + std::to_string(k), a.space().bidegree(p, *lead));
        }
    }
    std::vector<Matrix> d;
    for (int p = 0; p <= a.top(); ++p) {
        if (p + 1 > a.top())
            d.emplace_back(0, a.dim(p));
        else
            d.push_back(inv[p + 1] * a.d(p) * change[p]);
    }
    auto rule = std::make_shared<TabularProduct>(space);
    for (int p = 0; p <= a.top(); ++p)
        for (int q = 0; p + q <= a.top(); ++q)
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < a.dim(q); ++j) {
                    Element x{p, change[p].column(i)};
                    Element y{q, change[q].column(j)};
                    Vector prod = inv[p + q].apply(a.multiply(x, y).coeffs);
                    SparseVector value;
                    for (std::size_t k = 0; k < prod.size(); ++k)
                        if (!prod[k].is_zero())
                            value.emplace_back(k, prod[k]);
                    rule->set(p, i, q, j, std::move(value));
                }
    Element unit{0, inv[0].apply(a.unit().coeffs)};
    FiniteDGA out(a.field(), space, rule, std::move(d), unit, a.cap());
    if (a.valid_degree() == a.top())
        out.mark_zero_beyond_top();
    return out;
}

std::string to_string(const FiniteDGA& a, const Element& x)
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < x.coeffs.size(); ++k) {
        if (x.coeffs[k].is_zero())
            continue;
        std::string c = x.coeffs[k].to_string();
        bool needs_paren = c.find_first_of("+-", 1) != std::string::npos;
        if (!first)
            out << (c[0] == '-' && !needs_paren ? " - " : " + ");
        else if (c[0] == '-' && !needs_paren)
            out << "-";
        if (c[0] == '-' && !needs_paren)
            c = c.substr(1);
        if (needs_paren)
            out << "(" << c << ")*";
        else if (c != "1")
            out << c << "*";
        out << a.space().label(x.degree, k);
        first = false;
    }
    return first ? "0" : out.str();
}

} // namespace rho
