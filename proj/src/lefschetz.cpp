#include "rho/lefschetz.hpp"

#include "rho/errors.hpp"
#include "rho/linalg.hpp"

#include <set>

namespace rho {

namespace {

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

std::optional<std::string> bidegree_defect(const GradedSpace& s, const Matrix& m, Bidegree expected,
                                           const std::string& name)
{
    auto bd = flat_bidegrees(s);
    auto labels = flat_labels(s);
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (!m(r, c).is_zero() && bd[r] - bd[c] != expected)
                return name + " maps " + labels[c] + " to " + labels[r] + ", bidegree " + to_string(bd[r] - bd[c]) +
                       " instead of " + to_string(expected);
    return std::nullopt;
}

Matrix commutator(const Matrix& a, const Matrix& b)
{
    return a * b - b * a;
}

// L^k from degree p to p + 2k.
Matrix power_block(const BigradedFrobenius& f, const Element& omega, int p, int k)
{
    const FiniteDGA& a = f.a();
    Matrix m = Matrix::identity(a.dim(p));
    for (int step = 0; step < k; ++step) {
        int from = p + 2 * step;
        Matrix block(a.dim(from + 2), a.dim(from));
        for (std::size_t i = 0; i < a.dim(from); ++i)
            block.set_column(i, a.multiply(omega, a.basis(from, i)).coeffs);
        m = block * m;
    }
    return m;
}

} // namespace

Sl2Check check_sl2_relations(const Sl2Rep& rep)
{
    Sl2Check out;
    if (commutator(rep.x, rep.y) != rep.h)
        out = {false, true, "[X, Y] != H"};
    else if (commutator(rep.h, rep.x) != rep.x * Scalar(2))
        out = {false, true, "[H, X] != 2X"};
    else if (commutator(rep.h, rep.y) != rep.y * Scalar(-2))
        out = {false, true, "[H, Y] != -2Y"};
    return out;
}

Sl2Check check_lefschetz_type(const Sl2Rep& rep)
{
    Sl2Check out = check_sl2_relations(rep);
    const GradedSpace& s = *rep.space;
    for (auto [m, b, name] : {std::tuple{&rep.x, Bidegree{-1, -1}, "X"}, std::tuple{&rep.y, Bidegree{1, 1}, "Y"},
                              std::tuple{&rep.h, Bidegree{0, 0}, "H"}})
        if (auto defect = bidegree_defect(s, *m, b, name)) {
            out.bidegrees = false;
            out.witness += (out.witness.empty() ? "" : "; ") + *defect;
            break;
        }
    return out;
}

Matrix lefschetz_operator(const BigradedFrobenius& f, const Element& omega)
{
    const FiniteDGA& a = f.a();
    const GradedSpace& s = a.space();
    Matrix l(s.total_dim(), s.total_dim());
    for (int p = 0; p + 2 <= a.top(); ++p)
        l.set_block(s.offset(p + 2), s.offset(p), power_block(f, omega, p, 1));
    return l;
}

LefschetzVerdict hard_lefschetz_check(const BigradedFrobenius& f, const Element& omega)
{
    const FiniteDGA& a = f.a();
    const GradedSpace& s = a.space();
    const int n = f.n;
    if (omega.degree != 2 || omega.coeffs.size() != a.dim(2))
        throw PreconditionError("the Lefschetz class must be an element of degree 2");
    for (std::size_t k = 0; k < omega.coeffs.size(); ++k)
        if (!omega.coeffs[k].is_zero() && s.bidegree(2, k) != Bidegree{1, 1})
            throw PreconditionError("the Lefschetz class must have bidegree (1,1)");

    LefschetzVerdict v;
    for (int k = 1; k <= n; ++k) {
        Matrix m = power_block(f, omega, n - k, k);
        std::size_t rank = linalg::rank(m);
        if (m.rows() == m.cols() && rank == m.cols())
            continue;
        LefschetzFailure fail{k, {}};
        if (rank < m.cols())
            fail.kernel = linalg::kernel_basis(m.rows() == 0 ? Matrix(0, m.cols()) : m).front();
        v.failures.push_back(std::move(fail));
    }
    v.pass = v.failures.empty();
    if (!v.pass)
        return v;

    // Basis adapted to the primitive decomposition: L^j p for p primitive in
    // degree n - k and 0 <= j <= k.
    struct Slot {
        int k, j;
        std::size_t prim;
    };
    std::size_t total = s.total_dim();
    std::vector<Vector> columns;
    std::vector<Slot> slots;
    std::size_t prim_id = 0;
    for (int k = n; k >= 0; --k) {
        int p = n - k;
        if (a.dim(p) == 0)
            continue;
        Matrix kill = power_block(f, omega, p, k + 1);
        auto prims = linalg::kernel_basis(kill.rows() == 0 ? Matrix(0, a.dim(p)) : kill);
        for (const auto& prim : prims) {
            for (int j = 0; j <= k; ++j) {
                Vector img = power_block(f, omega, p, j).apply(prim);
                Vector whole(total);
                std::size_t off = s.offset(p + 2 * j);
                for (std::size_t i = 0; i < img.size(); ++i)
                    whole[off + i] = img[i];
                columns.push_back(std::move(whole));
                slots.push_back({k, j, prim_id});
            }
            ++prim_id;
        }
    }
    Matrix basis = Matrix::from_columns(columns, total);
    auto inv = columns.size() == total ? linalg::inverse(basis) : std::nullopt;
    if (!inv)
        throw ConsistencyError("primitive decomposition does not give a basis");
    Matrix xc(total, total);
    for (std::size_t c = 0; c < slots.size(); ++c) {
        const Slot& sl = slots[c];
        if (sl.j == 0)
            continue;
        std::size_t r = c - 1;
        if (slots[r].prim != sl.prim || slots[r].j != sl.j - 1)
            throw ConsistencyError("primitive strings are not contiguous");
        xc(r, c) = Scalar(static_cast<long>(sl.j) * (sl.k - sl.j + 1));
    }
    Sl2Rep rep{a.space_ptr(), basis * xc * *inv, lefschetz_operator(f, omega), Matrix(total, total)};
    for (int p = 0; p <= a.top(); ++p)
        for (std::size_t i = 0; i < a.dim(p); ++i)
            rep.h(s.offset(p) + i, s.offset(p) + i) = Scalar(n - p);
    v.sl2 = check_lefschetz_type(rep);
    if (!v.sl2.pass())
        throw ConsistencyError("constructed sl(2) representation fails: " + v.sl2.witness);
    std::set<int> eigen;
    for (int p = 0; p <= a.top(); ++p)
        if (a.dim(p) > 0)
            eigen.insert(n - p);
    for (int m : eigen) {
        Matrix shifted = rep.h - Matrix::identity(total) * Scalar(m);
        v.eigen_multiplicities[m] = linalg::kernel_basis(shifted).size();
    }
    v.rep = std::move(rep);
    return v;
}

} // namespace rho
