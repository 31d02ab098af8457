#include "rho/graded.hpp"

#include "rho/errors.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace rho {

std::string to_string(Bidegree b)
{
    return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

void GradedSpace::add(std::string label, Bidegree b)
{
    int p = b.total();
    if (p < 0)
        throw PreconditionError("negative total degree for '" + label + "'");
    extend_to(p);
    labels_[p].push_back(std::move(label));
    bidegrees_[p].push_back(b);
}

void GradedSpace::extend_to(int p)
{
    if (p > top()) {
        labels_.resize(p + 1);
        bidegrees_.resize(p + 1);
    }
}

std::size_t GradedSpace::dim(int p) const
{
    if (p < 0 || p > top())
        return 0;
    return labels_[p].size();
}

std::size_t GradedSpace::total_dim() const
{
    std::size_t n = 0;
    for (const auto& l : labels_)
        n += l.size();
    return n;
}

std::size_t GradedSpace::offset(int p) const
{
    std::size_t n = 0;
    for (int k = 0; k < p && k <= top(); ++k)
        n += labels_[k].size();
    return n;
}

std::optional<std::pair<int, std::size_t>> GradedSpace::find(const std::string& label) const
{
    for (int p = 0; p <= top(); ++p)
        for (std::size_t i = 0; i < labels_[p].size(); ++i)
            if (labels_[p][i] == label)
                return std::pair{p, i};
    return std::nullopt;
}

std::vector<std::size_t> GradedSpace::component(Bidegree b) const
{
    std::vector<std::size_t> out;
    int p = b.total();
    if (p < 0 || p > top())
        return out;
    for (std::size_t i = 0; i < bidegrees_[p].size(); ++i)
        if (bidegrees_[p][i] == b)
            out.push_back(i);
    return out;
}

std::vector<Bidegree> GradedSpace::bidegrees() const
{
    std::set<Bidegree> s;
    for (const auto& deg : bidegrees_)
        s.insert(deg.begin(), deg.end());
    return {s.begin(), s.end()};
}

std::vector<std::size_t> GradedSpace::dims() const
{
    std::vector<std::size_t> d;
    for (const auto& l : labels_)
        d.push_back(l.size());
    return d;
}

LinearMap::LinearMap(SpacePtr source, SpacePtr target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift)
{
    for (int p = 0; p <= source_->top(); ++p)
        blocks_.emplace_back(target_->dim(p + shift_), source_->dim(p));
}

LinearMap LinearMap::identity(SpacePtr space)
{
    LinearMap id(space, space, 0);
    for (int p = 0; p <= space->top(); ++p)
        id.blocks_[p] = Matrix::identity(space->dim(p));
    return id;
}

Vector LinearMap::apply(int p, const Vector& v) const
{
    if (p < 0 || p > source_top())
        return Vector(target_->dim(p + shift_));
    return blocks_[p].apply(v);
}

LinearMap LinearMap::compose(const LinearMap& inner) const
{
    if (!(*inner.target_ == *source_))
        throw PreconditionError("composition of maps with mismatched spaces");
    LinearMap out(inner.source_, target_, shift_ + inner.shift_);
    for (int p = 0; p <= inner.source_top(); ++p) {
        int mid = p + inner.shift_;
        if (mid < 0 || mid > source_top())
            continue;
        out.blocks_[p] = blocks_[mid] * inner.blocks_[p];
    }
    return out;
}

LinearMap& LinearMap::operator+=(const LinearMap& o)
{
    assert(shift_ == o.shift_ && blocks_.size() == o.blocks_.size());
    for (std::size_t p = 0; p < blocks_.size(); ++p)
        blocks_[p] += o.blocks_[p];
    return *this;
}

LinearMap& LinearMap::operator-=(const LinearMap& o)
{
    assert(shift_ == o.shift_ && blocks_.size() == o.blocks_.size());
    for (std::size_t p = 0; p < blocks_.size(); ++p)
        blocks_[p] -= o.blocks_[p];
    return *this;
}

LinearMap& LinearMap::operator*=(const Scalar& s)
{
    for (auto& b : blocks_)
        b *= s;
    return *this;
}

bool operator==(const LinearMap& a, const LinearMap& b)
{
    return a.shift_ == b.shift_ && a.blocks_ == b.blocks_;
}

bool LinearMap::is_zero() const
{
    return !first_nonzero_column().has_value();
}

std::optional<std::pair<int, std::size_t>> LinearMap::first_nonzero_column() const
{
    for (int p = 0; p <= source_top(); ++p) {
        const Matrix& b = blocks_[p];
        for (std::size_t c = 0; c < b.cols(); ++c)
            for (std::size_t r = 0; r < b.rows(); ++r)
                if (!b(r, c).is_zero())
                    return std::pair{p, c};
    }
    return std::nullopt;
}

Matrix LinearMap::whole() const
{
    Matrix m(target_->total_dim(), source_->total_dim());
    for (int p = 0; p <= source_top(); ++p) {
        int t = p + shift_;
        if (t < 0 || t > target_->top())
            continue;
        m.set_block(target_->offset(t), source_->offset(p), blocks_[p]);
    }
    return m;
}

LinearMap LinearMap::from_whole(SpacePtr source, SpacePtr target, int shift, const Matrix& m)
{
    LinearMap out(source, target, shift);
    for (int p = 0; p <= source->top(); ++p) {
        int t = p + shift;
        std::size_t rows = target->dim(t);
        if (rows == 0)
            continue;
        out.blocks_[p] = m.block(target->offset(t), source->offset(p), rows, source->dim(p));
    }
    return out;
}

std::optional<std::tuple<int, std::size_t, std::size_t>> LinearMap::bidegree_violation(
    Bidegree expected) const
{
    for (int p = 0; p <= source_top(); ++p) {
        const Matrix& b = blocks_[p];
        for (std::size_t c = 0; c < b.cols(); ++c)
            for (std::size_t r = 0; r < b.rows(); ++r)
                if (!b(r, c).is_zero()
                    && target_->bidegree(p + shift_, r) - source_->bidegree(p, c) != expected)
                    return std::tuple{p, c, r};
    }
    return std::nullopt;
}

LinearMap graded_commutator(const LinearMap& a, const LinearMap& b)
{
    LinearMap ab = a.compose(b);
    LinearMap ba = b.compose(a);
    if (a.odd() && b.odd())
        return ab + ba;
    return ab - ba;
}

} // namespace rho
