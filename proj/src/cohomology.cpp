#include "rho/cohomology.hpp"

#include "rho/errors.hpp"

namespace rho {

namespace {

std::vector<std::size_t> leading(const std::vector<Vector>& rows)
{
    std::vector<std::size_t> out;
    for (const auto& r : rows)
        out.push_back(*first_nonzero(r));
    return out;
}

// Subtracts multiples of echelon rows so v vanishes on their pivots.
void reduce(Vector& v, const std::vector<Vector>& rows, const std::vector<std::size_t>& pivots)
{
    for (std::size_t k = 0; k < rows.size(); ++k) {
        Scalar c = v[pivots[k]];
        if (c.is_zero())
            continue;
        for (std::size_t t = 0; t < v.size(); ++t)
            if (!rows[k][t].is_zero())
                v[t] -= c * rows[k][t];
    }
}

} // namespace

Cohomology::Cohomology(DgaPtr algebra, int up_to) : algebra_(std::move(algebra)), up_to_(up_to)
{
    const FiniteDGA& a = *algebra_;
    if (up_to < 0)
        throw PreconditionError("negative degree bound");
    if (!a.complete() && up_to > a.valid_degree())
        throw PreconditionError("cohomology through degree " + std::to_string(up_to) +
                                " needs the algebra materialized beyond degree " + std::to_string(up_to));
    for (int p = 0; p <= up_to; ++p) {
        std::size_t n = p <= a.top() ? a.dim(p) : 0;
        std::vector<Vector> cocycles;
        if (n > 0)
            cocycles = p + 1 <= a.top() ? linalg::kernel_basis(a.d(p)) : linalg::kernel_basis(Matrix(0, n));
        std::vector<Vector> bounds;
        if (p >= 1 && n > 0 && p - 1 <= a.top()) {
            Matrix prev = a.d(p - 1);
            std::vector<Vector> cols;
            for (std::size_t c = 0; c < prev.cols(); ++c)
                cols.push_back(prev.column(c));
            bounds = linalg::span_basis(cols, n);
        }
        std::vector<std::size_t> bpiv = leading(bounds);
        for (auto& z : cocycles)
            reduce(z, bounds, bpiv);
        std::vector<Vector> reps = n > 0 ? linalg::span_basis(cocycles, n) : std::vector<Vector>{};
        if (reps.size() + bounds.size() != cocycles.size())
            throw ConsistencyError("cohomology dimension count disagrees in degree " + std::to_string(p));
        boundary_rows_.push_back(std::move(bounds));
        boundary_pivots_.push_back(std::move(bpiv));
        rep_pivots_.push_back(leading(reps));
        reps_.push_back(std::move(reps));
    }
}

std::size_t Cohomology::dim(int p) const
{
    if (p < 0 || p > up_to_)
        return 0;
    return reps_[p].size();
}

std::vector<std::size_t> Cohomology::dims() const
{
    std::vector<std::size_t> out;
    for (int p = 0; p <= up_to_; ++p)
        out.push_back(dim(p));
    return out;
}

bool Cohomology::is_cocycle(const Element& x) const
{
    if (x.degree + 1 > algebra_->top())
        return true;
    return algebra_->d(x).is_zero();
}

bool Cohomology::is_coboundary(const Element& x) const
{
    return is_cocycle(x) && is_zero(class_of(x));
}

Vector Cohomology::class_of(const Element& x) const
{
    int p = x.degree;
    if (p < 0 || p > up_to_)
        throw PreconditionError("degree " + std::to_string(p) + " outside the computed range");
    if (!is_cocycle(x))
        throw PreconditionError("element is not a cocycle");
    Vector v = x.coeffs;
    reduce(v, boundary_rows_[p], boundary_pivots_[p]);
    Vector coords(reps_[p].size());
    for (std::size_t k = 0; k < reps_[p].size(); ++k)
        coords[k] = v[rep_pivots_[p][k]];
    reduce(v, reps_[p], rep_pivots_[p]);
    if (!is_zero(v))
        throw ConsistencyError("cocycle not in the span of representatives and coboundaries");
    return coords;
}

Vector Cohomology::product(int p, std::size_t i, int q, std::size_t j) const
{
    if (p + q > up_to_)
        throw PreconditionError("product lands beyond the computed range");
    return class_of(algebra_->multiply(representative(p, i), representative(q, j)));
}

Vector Cohomology::unit_class() const
{
    return class_of(algebra_->unit());
}

FiniteDGA Cohomology::as_dga() const
{
    const FiniteDGA& a = *algebra_;
    bool complete = a.complete() && up_to_ >= a.top();
    int top = complete ? std::min(up_to_, a.top()) : up_to_;
    auto space = std::make_shared<GradedSpace>();
    for (int p = 0; p <= top; ++p) {
        space->extend_to(p);
        for (std::size_t i = 0; i < dim(p); ++i) {
            const Vector& r = reps_[p][i];
            Bidegree b = a.space().bidegree(p, *first_nonzero(r));
            std::string label = (p == 0 && dim(0) == 1) ? "1" : "h" + std::to_string(p) + "_" + std::to_string(i);
            space->add(label, b);
        }
    }
    auto rule = std::make_shared<TabularProduct>(space);
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q <= top; ++q)
            for (std::size_t i = 0; i < dim(p); ++i)
                for (std::size_t j = 0; j < dim(q); ++j) {
                    Vector c = product(p, i, q, j);
                    SparseVector value;
                    for (std::size_t k = 0; k < c.size(); ++k)
                        if (!c[k].is_zero())
                            value.emplace_back(k, c[k]);
                    rule->set(p, i, q, j, std::move(value));
                }
    std::vector<Matrix> d;
    for (int p = 0; p <= top; ++p)
        d.emplace_back(p + 1 <= top ? dim(p + 1) : 0, dim(p));
    Element unit{0, dim(0) > 0 ? unit_class() : Vector{}};
    FiniteDGA out(a.field(), space, rule, std::move(d), unit, complete ? std::nullopt : std::optional<int>(top));
    out.mark_zero_beyond_top();
    return out;
}

} // namespace rho
