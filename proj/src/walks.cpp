#include "circdiam/walks.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "circdiam/errors.hpp"
#include "circdiam/linalg.hpp"

namespace circdiam {

namespace {

struct PointHash
{
    std::size_t operator()(const Point& p) const noexcept
    {
        std::size_t h = p.coords.size();
        for (const auto& x : p.coords)
        {
            const auto* q = x.backend().data();
            auto limb = [](mpz_srcptr z) -> std::size_t {
                return mpz_size(z) ? static_cast<std::size_t>(mpz_getlimbn(z, 0)) : 0;
            };
            std::size_t v = limb(mpq_numref(q)) * 1000003u ^ limb(mpq_denref(q)) ^ (mpq_sgn(q) < 0 ? 0x9e37u : 0u);
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Signed circuits in search order: circuit 0 (+), circuit 0 (-), circuit 1 (+), ...
struct SearchDirections
{
    std::vector<SignedCircuit> dirs;
    std::vector<IntVector> vectors;
    std::vector<Vector> rates;   ///< rates[k][i] = A_i . g_k

    SearchDirections(const Polyhedron& P, const CircuitSet& circuits)
    {
        for (const auto& g : circuits.items())
            for (int sign : {1, -1})
            {
                SignedCircuit sc{g, sign};
                vectors.push_back(sc.vector());
                Vector r(P.num_rows());
                for (std::size_t i = 0; i < P.num_rows(); ++i)
                    r[i] = dot(P.row(i), vectors.back());
                rates.push_back(std::move(r));
                dirs.push_back(std::move(sc));
            }
    }
};

/// Ratio test with precomputed slacks and rates; nullopt unless Bounded.
std::optional<Rational> bounded_step(const Vector& slacks, const Vector& rates)
{
    std::optional<Rational> best;
    for (std::size_t i = 0; i < slacks.size(); ++i)
    {
        if (rates[i] <= 0)
            continue;
        if (is_zero(slacks[i]))
            return std::nullopt;   // blocked
        Rational ratio = slacks[i] / rates[i];
        if (!best || ratio < *best)
            best = std::move(ratio);
    }
    return best;
}

struct SearchNode
{
    Point point;
    std::size_t parent;
    std::size_t dir;   // index into SearchDirections
    Rational alpha;
};

CircuitWalk rebuild_walk(const std::vector<SearchNode>& nodes, const SearchDirections& dirs,
                         std::size_t last, std::optional<std::pair<std::size_t, Rational>> final_step,
                         const Point& final_point)
{
    std::vector<std::size_t> chain;
    for (std::size_t k = last; k != 0; k = nodes[k].parent)
        chain.push_back(k);
    chain.push_back(0);
    std::reverse(chain.begin(), chain.end());

    CircuitWalk walk;
    for (std::size_t pos = 0; pos < chain.size(); ++pos)
    {
        const auto& node = nodes[chain[pos]];
        if (pos > 0)
            walk.steps.push_back({dirs.dirs[node.dir], node.alpha});
        walk.points.push_back(node.point);
    }
    if (final_step)
    {
        walk.steps.push_back({dirs.dirs[final_step->first], final_step->second});
        walk.points.push_back(final_point);
    }
    return walk;
}

Vector slacks_at(const Polyhedron& P, const Point& y)
{
    Vector s(P.num_rows());
    for (std::size_t i = 0; i < P.num_rows(); ++i)
        s[i] = P.slack(i, y);
    return s;
}

}  // namespace

std::string to_string(WalkViolation v)
{
    switch (v)
    {
        case WalkViolation::None: return "ok";
        case WalkViolation::Malformed: return "malformed walk";
        case WalkViolation::Infeasible: return "point infeasible";
        case WalkViolation::NotACircuit: return "direction not a circuit";
        case WalkViolation::NonPositiveStep: return "step length not positive";
        case WalkViolation::StepMismatch: return "points do not differ by alpha * direction";
        case WalkViolation::NotMaximal: return "step not maximal";
    }
    return "unknown";
}

WalkVerdict verify_walk(const Polyhedron& P, const CircuitSet& circuits, const CircuitWalk& walk)
{
    auto fail = [](WalkViolation v, std::size_t i, std::string msg) {
        return WalkVerdict{v, i, to_string(v) + " at index " + std::to_string(i) + (msg.empty() ? "" : ": " + msg)};
    };
    if (walk.points.size() != walk.steps.size() + 1)
        return fail(WalkViolation::Malformed, 0, "expected one more point than steps");
    for (std::size_t i = 0; i < walk.points.size(); ++i)
        if (walk.points[i].dim() != P.dim())
            return fail(WalkViolation::Malformed, i, "point dimension");

    for (std::size_t i = 0; i < walk.points.size(); ++i)
    {
        const Point& y = walk.points[i];
        if (i == walk.steps.size())
        {
            if (!P.contains(y))
                return fail(WalkViolation::Infeasible, i, "");
            break;
        }
        const WalkStep& step = walk.steps[i];
        if (step.direction.circuit.dim() != P.dim() || !circuits.contains(step.direction.circuit))
        {
            if (!P.contains(y))
                return fail(WalkViolation::Infeasible, i, "");
            return fail(WalkViolation::NotACircuit, i, to_string(step.direction));
        }
        IntVector g = step.direction.vector();
        // The ratio test also checks feasibility of y.
        MaximalStepResult ratio;
        try
        {
            ratio = maximal_step(P, y, g);
        }
        catch (const InfeasiblePoint&)
        {
            return fail(WalkViolation::Infeasible, i, "");
        }
        if (step.alpha <= 0)
            return fail(WalkViolation::NonPositiveStep, i, to_string(step.alpha));
        if (!(advance(y, step.alpha, g) == walk.points[i + 1]))
            return fail(WalkViolation::StepMismatch, i, "");
        if (!ratio.bounded() || ratio.alpha != step.alpha)
            return fail(WalkViolation::NotMaximal, i,
                        ratio.bounded() ? "maximal alpha is " + to_string(ratio.alpha) : "");
    }
    return {};
}

std::vector<DistanceResult> circuit_distances_from(const Polyhedron& P, const CircuitSet& circuits,
                                                   const Point& source, const std::vector<Point>& targets,
                                                   std::size_t cap)
{
    if (!P.contains(source))
        throw InfeasiblePoint("search source is infeasible");
    SearchDirections dirs(P, circuits);

    std::vector<DistanceResult> results(targets.size());
    for (auto& r : results)
        r.cap = cap;
    std::size_t remaining = targets.size();

    auto settle = [&](std::size_t t, CircuitWalk walk) {
        results[t].kind = DistanceResult::Kind::Distance;
        results[t].distance = walk.length();
        results[t].witness = std::move(walk);
        --remaining;
    };

    std::vector<SearchNode> nodes;
    std::unordered_map<Point, std::size_t, PointHash> seen;
    nodes.push_back({source, 0, 0, Rational(0)});
    seen.emplace(source, 0);

    for (std::size_t t = 0; t < targets.size(); ++t)
        if (targets[t] == source)
            settle(t, CircuitWalk{{source}, {}});

    std::size_t level_begin = 0, level_end = 1;
    for (std::size_t depth = 0; depth < cap && remaining > 0; ++depth)
    {
        // One-step goal test against each open target. The first node in level
        // order that reaches a target yields its lexicographically smallest walk.
        for (std::size_t k = level_begin; k < level_end && remaining > 0; ++k)
        {
            const Point& y = nodes[k].point;
            std::optional<Vector> slacks;
            for (std::size_t t = 0; t < targets.size(); ++t)
            {
                if (results[t].resolved())
                    continue;
                Vector diff(P.dim());
                for (std::size_t j = 0; j < diff.size(); ++j)
                    diff[j] = targets[t].coords[j] - y.coords[j];
                auto dir = circuits.match_direction(diff);
                if (!dir)
                    continue;
                IntVector g = dir->vector();
                std::size_t dir_index = 2 * *circuits.index_of(dir->circuit) + (dir->sign < 0 ? 1 : 0);
                if (!slacks)
                    slacks = slacks_at(P, y);
                auto alpha = bounded_step(*slacks, dirs.rates[dir_index]);
                if (!alpha)
                    continue;
                std::size_t j = 0;
                while (g[j] == 0)
                    ++j;
                if (*alpha != diff[j] / g[j])
                    continue;
                settle(t, rebuild_walk(nodes, dirs, k, std::make_pair(dir_index, *alpha), targets[t]));
            }
        }
        if (remaining == 0 || depth + 1 == cap)
            break;

        for (std::size_t k = level_begin; k < level_end; ++k)
        {
            Vector slacks = slacks_at(P, nodes[k].point);
            for (std::size_t d = 0; d < dirs.dirs.size(); ++d)
            {
                auto alpha = bounded_step(slacks, dirs.rates[d]);
                if (!alpha)
                    continue;
                Point z = advance(nodes[k].point, *alpha, dirs.vectors[d]);
                if (seen.count(z))
                    continue;
                seen.emplace(z, nodes.size());
                nodes.push_back({std::move(z), k, d, std::move(*alpha)});
            }
        }
        level_begin = level_end;
        level_end = nodes.size();
        if (level_begin == level_end)
            break;
    }
    return results;
}

DistanceResult circuit_distance(const Polyhedron& P, const CircuitSet& circuits, const Point& source,
                                const Point& target, std::size_t cap)
{
    if (!is_vertex(P, source))
        throw NotAVertex("source is not a vertex");
    if (!is_vertex(P, target))
        throw NotAVertex("target is not a vertex");
    return circuit_distances_from(P, circuits, source, {target}, cap).front();
}

DistanceResult circuit_distance(const Polyhedron& P, const Point& source, const Point& target, std::size_t cap)
{
    return circuit_distance(P, enumerate_circuits(P), source, target, cap);
}

DiameterResult circuit_diameter(const Polyhedron& P, const CircuitSet& circuits,
                                const std::vector<Point>& vertices, std::size_t cap)
{
    DiameterResult out;
    out.cap = cap;
    out.distances.assign(vertices.size(), std::vector<std::optional<std::size_t>>(vertices.size()));
    bool have_max = false;
    for (std::size_t s = 0; s < vertices.size(); ++s)
    {
        auto row = circuit_distances_from(P, circuits, vertices[s], vertices, cap);
        for (std::size_t t = 0; t < vertices.size(); ++t)
        {
            if (!row[t].resolved())
            {
                if (!out.exceeded)
                {
                    out.exceeded = true;
                    out.from = s;
                    out.to = t;
                }
                continue;
            }
            out.distances[s][t] = row[t].distance;
            if (!out.exceeded && (!have_max || row[t].distance > out.diameter))
            {
                have_max = true;
                out.diameter = row[t].distance;
                out.from = s;
                out.to = t;
            }
            else if (out.exceeded)
            {
                out.diameter = std::max(out.diameter, row[t].distance);
            }
        }
    }
    return out;
}

DiameterResult circuit_diameter(const Polyhedron& P, std::size_t cap)
{
    return circuit_diameter(P, enumerate_circuits(P), enumerate_vertices(P), cap);
}

std::vector<std::vector<std::size_t>> skeleton(const Polyhedron& P, const std::vector<Point>& vertices)
{
    std::vector<std::vector<std::size_t>> tight;
    tight.reserve(vertices.size());
    for (const auto& v : vertices)
        tight.push_back(tight_rows(P, v));

    const std::size_t n = P.dim();
    std::vector<std::vector<std::size_t>> adj(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
        {
            std::vector<std::size_t> common;
            std::set_intersection(tight[i].begin(), tight[i].end(), tight[j].begin(), tight[j].end(),
                                  std::back_inserter(common));
            if (common.size() + 1 < n)
                continue;
            if (rank(P.A(), common, n) + 1 == n)
            {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    return adj;
}

std::vector<std::vector<std::optional<std::size_t>>>
skeleton_distances(const std::vector<std::vector<std::size_t>>& adjacency)
{
    const std::size_t m = adjacency.size();
    std::vector<std::vector<std::optional<std::size_t>>> dist(m, std::vector<std::optional<std::size_t>>(m));
    for (std::size_t s = 0; s < m; ++s)
    {
        std::deque<std::size_t> queue{s};
        dist[s][s] = 0;
        while (!queue.empty())
        {
            auto u = queue.front();
            queue.pop_front();
            for (auto w : adjacency[u])
                if (!dist[s][w])
                {
                    dist[s][w] = *dist[s][u] + 1;
                    queue.push_back(w);
                }
        }
    }
    return dist;
}

std::size_t combinatorial_distance(const Polyhedron& P, const Point& source, const Point& target)
{
    if (!is_vertex(P, source))
        throw NotAVertex("source is not a vertex");
    if (!is_vertex(P, target))
        throw NotAVertex("target is not a vertex");
    auto vertices = enumerate_vertices(P);
    auto index = [&](const Point& p) {
        return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), p) - vertices.begin());
    };
    auto dist = skeleton_distances(skeleton(P, vertices));
    // The skeleton of a pointed polyhedron is connected.
    return dist[index(source)][index(target)].value();
}

std::size_t combinatorial_diameter(const Polyhedron& P, const std::vector<Point>& vertices)
{
    std::size_t diam = 0;
    for (const auto& row : skeleton_distances(skeleton(P, vertices)))
        for (const auto& d : row)
            diam = std::max(diam, d.value());
    return diam;
}

std::size_t combinatorial_diameter(const Polyhedron& P)
{
    return combinatorial_diameter(P, enumerate_vertices(P));
}

ConjectureReport probe_conjecture(const Polyhedron& P)
{
    ConjectureReport report;
    report.facets = P.num_rows();
    report.dim = P.dim();
    const std::size_t bound = report.facets - report.dim;
    auto result = circuit_diameter(P, bound + 1);
    if (result.exceeded)
    {
        report.exceeded_cap = true;
        report.satisfied = false;
        return report;
    }
    report.diameter = result.diameter;
    report.satisfied = result.diameter <= bound;
    return report;
}

}  // namespace circdiam
