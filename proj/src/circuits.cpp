#include "circdiam/circuits.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "circdiam/combinations.hpp"
#include "circdiam/errors.hpp"
#include "circdiam/linalg.hpp"

namespace circdiam {

CircuitDirection::CircuitDirection(IntVector entries) : entries_(std::move(entries))
{
    Integer g = 0;
    for (const auto& x : entries_)
        g = boost::multiprecision::gcd(g, Integer(abs(x)));
    if (g != 1)
        throw std::invalid_argument("circuit entries must be coprime and not all zero");
    auto first = std::find_if(entries_.begin(), entries_.end(), [](const Integer& x) { return x != 0; });
    if (*first < 0)
        throw std::invalid_argument("circuit must have a positive first nonzero entry");
}

std::optional<std::pair<CircuitDirection, int>> CircuitDirection::from_vector(const Vector& v)
{
    IntVector g = primitive_direction(v);
    if (g.empty())
        return std::nullopt;
    int sign = 1;
    auto first = std::find_if(g.begin(), g.end(), [](const Integer& x) { return x != 0; });
    if (*first < 0)
    {
        sign = -1;
        for (auto& x : g)
            x = -x;
    }
    return std::make_pair(CircuitDirection(std::move(g)), sign);
}

IntVector SignedCircuit::vector() const
{
    IntVector v = circuit.entries();
    if (sign < 0)
        for (auto& x : v)
            x = -x;
    return v;
}

std::string to_string(const CircuitDirection& g)
{
    std::string out = "(";
    for (std::size_t i = 0; i < g.dim(); ++i)
    {
        if (i)
            out += ",";
        out += to_string(g.entries()[i]);
    }
    return out + ")";
}

std::string to_string(const SignedCircuit& g)
{
    return (g.sign < 0 ? "-" : "+") + to_string(g.circuit);
}

CircuitSet::CircuitSet(std::vector<CircuitDirection> circuits) : items_(std::move(circuits))
{
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

std::optional<std::size_t> CircuitSet::index_of(const CircuitDirection& g) const
{
    auto it = std::lower_bound(items_.begin(), items_.end(), g);
    if (it == items_.end() || !(*it == g))
        return std::nullopt;
    return static_cast<std::size_t>(it - items_.begin());
}

std::optional<SignedCircuit> CircuitSet::match_direction(const Vector& v) const
{
    auto canon = CircuitDirection::from_vector(v);
    if (!canon || !contains(canon->first))
        return std::nullopt;
    return SignedCircuit{std::move(canon->first), canon->second};
}

std::vector<std::size_t> support(const Matrix& A, const IntVector& g)
{
    std::vector<std::size_t> supp;
    for (std::size_t i = 0; i < A.size(); ++i)
        if (!is_zero(dot(A[i], g)))
            supp.push_back(i);
    return supp;
}

CircuitSet enumerate_circuits(const Matrix& A, std::size_t n)
{
    auto r = rank(A, n);
    if (r < n)
        throw RankDeficient("constraint matrix has column rank " + std::to_string(r) + " < "
                            + std::to_string(n));

    std::set<CircuitDirection> candidates;
    detail::for_each_combination(A.size(), n - 1, [&](const std::vector<std::size_t>& rows) {
        if (auto g = kernel_generator(A, rows, n))
            candidates.insert(CircuitDirection(std::move(*g)));
    });

    std::vector<CircuitDirection> pool(candidates.begin(), candidates.end());
    std::vector<std::vector<std::size_t>> supports;
    supports.reserve(pool.size());
    for (const auto& g : pool)
        supports.push_back(support(A, g.entries()));

    std::vector<CircuitDirection> minimal;
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        bool dominated = false;
        for (std::size_t j = 0; j < pool.size() && !dominated; ++j)
        {
            if (i == j || supports[j].size() >= supports[i].size())
                continue;
            dominated = std::includes(supports[i].begin(), supports[i].end(),
                                      supports[j].begin(), supports[j].end());
        }
        if (!dominated)
            minimal.push_back(pool[i]);
    }
    return CircuitSet(std::move(minimal));
}

MaximalStepResult maximal_step(const Polyhedron& P, const Point& y, const IntVector& direction)
{
    if (y.dim() != P.dim() || direction.size() != P.dim())
        throw DimensionMismatch("maximal_step: dimension mismatch");

    static const Integer limit = Integer(1) << 20;
    std::vector<long> small(direction.size());
    bool small_ok = true;
    for (std::size_t j = 0; j < direction.size() && small_ok; ++j)
    {
        if (abs(direction[j]) >= limit)
            small_ok = false;
        else
            small[j] = direction[j].convert_to<long>();
    }

    // Work with scaled integer slacks s_i and rates r_i; the step along row i
    // is s_i / (d r_i), so rows compare by s_i / r_i.
    const Polyhedron::ScaledPoint scaled = P.scale(y);
    MaximalStepResult result;
    bool have = false;
    Integer best_s, best_r;
    for (std::size_t i = 0; i < P.num_rows(); ++i)
    {
        Integer s = P.scaled_slack(i, scaled);
        if (s < 0)
            throw InfeasiblePoint("point violates row " + std::to_string(i));
        std::optional<long long> fast;
        if (small_ok)
            fast = P.small_rate(i, small);
        long long fast_rate = fast.value_or(0);
        if (fast && fast_rate <= 0)
            continue;
        Integer r = fast ? Integer(fast_rate) : P.scaled_rate(i, direction);
        if (r <= 0)
            continue;
        if (s == 0)
        {
            if (!have || best_s != 0)
                result.blocking_rows.clear();
            have = true;
            best_s = 0;
            best_r = 1;
            result.blocking_rows.push_back(i);
            continue;
        }
        if (have && best_s == 0)
            continue;
        int cmp = -1;
        if (have)
        {
            if (r == best_r)
                cmp = s < best_s ? -1 : (s == best_s ? 0 : 1);
            else
            {
                Integer lhs = s * best_r, rhs = best_s * r;
                cmp = lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
            }
        }
        if (cmp < 0)
        {
            have = true;
            best_s = std::move(s);
            best_r = std::move(r);
            result.blocking_rows.assign(1, i);
        }
        else if (cmp == 0)
        {
            result.blocking_rows.push_back(i);
        }
    }
    if (!have)
    {
        result.kind = MaximalStepResult::Kind::Unbounded;
        result.alpha = 0;
    }
    else if (best_s == 0)
    {
        result.kind = MaximalStepResult::Kind::Blocked;
        result.alpha = 0;
    }
    else
    {
        result.kind = MaximalStepResult::Kind::Bounded;
        result.alpha = Rational(best_s, scaled.d * best_r);
    }
    return result;
}

MaximalStepResult maximal_step(const Polyhedron& P, const Point& y, const SignedCircuit& g)
{
    return maximal_step(P, y, g.vector());
}

Point advance(const Point& y, const Rational& alpha, const IntVector& g)
{
    Vector z = y.coords;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (g[i] != 0)
            z[i] += alpha * g[i];
    return Point(std::move(z));
}

}  // namespace circdiam
