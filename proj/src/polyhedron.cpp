#include "circdiam/polyhedron.hpp"

#include <algorithm>
#include <set>

#include "circdiam/combinations.hpp"
#include "circdiam/errors.hpp"
#include "circdiam/linalg.hpp"

namespace circdiam {

namespace {

// Bound on small coefficients and small direction entries: products stay below
// 2^40, so row sums of up to 2^20 terms fit in a long long.
const Integer kSmallLimit = Integer(1) << 20;

}  // namespace

Point make_point(std::initializer_list<long> coords)
{
    Vector v;
    for (long c : coords)
        v.emplace_back(c);
    return Point(std::move(v));
}

Polyhedron::Polyhedron(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)), n_(0)
{
    if (A_.size() != b_.size())
        throw DimensionMismatch("A has " + std::to_string(A_.size()) + " rows but b has "
                                + std::to_string(b_.size()) + " entries");
    if (A_.empty())
        throw RankDeficient("polyhedron has no inequalities");
    n_ = A_.front().size();
    if (n_ == 0)
        throw DimensionMismatch("polyhedron has zero columns");
    for (std::size_t i = 0; i < A_.size(); ++i)
        if (A_[i].size() != n_)
            throw DimensionMismatch("row " + std::to_string(i) + " has " + std::to_string(A_[i].size())
                                    + " entries, expected " + std::to_string(n_));
    auto r = rank(A_, n_);
    if (r < n_)
        throw RankDeficient("constraint matrix has column rank " + std::to_string(r) + " < "
                            + std::to_string(n_));

    sparse_.resize(A_.size());
    base_d_ = 1;
    for (std::size_t i = 0; i < A_.size(); ++i)
    {
        SparseRow& row = sparse_[i];
        Integer L = 1;
        for (std::size_t j = 0; j < n_; ++j)
        {
            const Rational& a = A_[i][j];
            if (is_zero(a))
                continue;
            row.cols.push_back(j);
            row.coefs.push_back(a);
            L = boost::multiprecision::lcm(L, Integer(denominator(a)));
        }
        for (const Rational& a : row.coefs)
        {
            Integer c = numerator(a) * (L / denominator(a));
            if (abs(c) < kSmallLimit)
                row.small.push_back(c.convert_to<long>());
            else
                row.is_small = false;
            row.scaled.push_back(std::move(c));
        }
        row.rhs = b_[i] * Rational(L);
        base_d_ = boost::multiprecision::lcm(base_d_, Integer(denominator(row.rhs)));
    }
    for (auto& row : sparse_)
        row.base_rhs = numerator(row.rhs) * (base_d_ / denominator(row.rhs));
}

Rational Polyhedron::slack(std::size_t i, const Point& y) const
{
    const SparseRow& row = sparse_[i];
    Rational s = b_[i];
    for (std::size_t k = 0; k < row.cols.size(); ++k)
    {
        const Rational& yj = y.coords[row.cols[k]];
        if (row.is_small && row.small[k] == 1)
            s -= yj;
        else if (row.is_small && row.small[k] == -1)
            s += yj;
        else
            s -= row.coefs[k] * yj;
    }
    return s;
}

Polyhedron::ScaledPoint Polyhedron::scale(const Point& y) const
{
    if (y.dim() != n_)
        throw DimensionMismatch("point has dimension " + std::to_string(y.dim()) + ", polyhedron "
                                + std::to_string(n_));
    ScaledPoint out;
    out.d = base_d_;
    for (const Rational& c : y.coords)
        if (out.d % denominator(c) != 0)
            out.d = boost::multiprecision::lcm(out.d, Integer(denominator(c)));
    out.Y.reserve(n_);
    for (const Rational& c : y.coords)
        out.Y.push_back(numerator(c) * (out.d / denominator(c)));
    return out;
}

Integer Polyhedron::scaled_slack(std::size_t i, const ScaledPoint& y) const
{
    const SparseRow& row = sparse_[i];
    Integer s = y.d == base_d_ ? row.base_rhs : numerator(row.rhs) * (y.d / denominator(row.rhs));
    for (std::size_t k = 0; k < row.cols.size(); ++k)
    {
        const Integer& yj = y.Y[row.cols[k]];
        if (row.is_small && row.small[k] == 1)
            s -= yj;
        else if (row.is_small && row.small[k] == -1)
            s += yj;
        else
            s -= row.scaled[k] * yj;
    }
    return s;
}

Integer Polyhedron::scaled_rate(std::size_t i, const IntVector& g) const
{
    const SparseRow& row = sparse_[i];
    Integer r = 0;
    for (std::size_t k = 0; k < row.cols.size(); ++k)
    {
        const Integer& gj = g[row.cols[k]];
        if (gj != 0)
            r += row.scaled[k] * gj;
    }
    return r;
}

std::optional<long long> Polyhedron::small_rate(std::size_t i, const std::vector<long>& g) const
{
    const SparseRow& row = sparse_[i];
    if (!row.is_small)
        return std::nullopt;
    long long r = 0;
    for (std::size_t k = 0; k < row.cols.size(); ++k)
        r += static_cast<long long>(row.small[k]) * g[row.cols[k]];
    return r;
}

bool Polyhedron::contains(const Point& y) const
{
    if (y.dim() != n_)
        throw DimensionMismatch("point has dimension " + std::to_string(y.dim()) + ", polyhedron "
                                + std::to_string(n_));
    ScaledPoint scaled = scale(y);
    for (std::size_t i = 0; i < A_.size(); ++i)
        if (scaled_slack(i, scaled) < 0)
            return false;
    return true;
}

Polyhedron Polyhedron::without_rows(std::span<const std::size_t> rows) const
{
    Matrix A;
    Vector b;
    for (std::size_t i = 0; i < A_.size(); ++i)
    {
        if (std::find(rows.begin(), rows.end(), i) != rows.end())
            continue;
        A.push_back(A_[i]);
        b.push_back(b_[i]);
    }
    return Polyhedron(std::move(A), std::move(b));
}

std::vector<std::size_t> tight_rows(const Polyhedron& P, const Point& y)
{
    if (y.dim() != P.dim())
        throw DimensionMismatch("point has dimension " + std::to_string(y.dim()) + ", polyhedron "
                                + std::to_string(P.dim()));
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < P.num_rows(); ++i)
    {
        Rational s = P.slack(i, y);
        if (s < 0)
            throw InfeasiblePoint("point violates row " + std::to_string(i) + " by " + to_string(Rational(-s)));
        if (is_zero(s))
            tight.push_back(i);
    }
    return tight;
}

bool is_vertex(const Polyhedron& P, const Point& y)
{
    if (y.dim() != P.dim() || !P.contains(y))
        return false;
    auto tight = tight_rows(P, y);
    return rank(P.A(), tight, P.dim()) == P.dim();
}

std::vector<Point> enumerate_vertices(const Polyhedron& P)
{
    std::set<Point> found;
    detail::for_each_combination(P.num_rows(), P.dim(), [&](const std::vector<std::size_t>& rows) {
        auto z = solve_square(P.A(), P.b(), rows);
        if (!z)
            return;
        Point p(std::move(*z));
        if (P.contains(p))
            found.insert(std::move(p));
    });
    return {found.begin(), found.end()};
}

}  // namespace circdiam
