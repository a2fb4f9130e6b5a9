#include "circdiam/dual_transportation.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "circdiam/errors.hpp"
#include "circdiam/redundancy.hpp"

namespace circdiam::dtp {

namespace {

std::string edge_name(const Edge& e)
{
    return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

/// Nodes reachable from `start` through edges accepted by `use_edge`, staying inside `allowed`.
template <typename EdgePredicate>
std::vector<bool> reach(const BipartiteGraph& G, Node start, const std::vector<bool>& allowed, EdgePredicate use_edge)
{
    std::vector<bool> seen(G.num_nodes(), false);
    std::deque<Node> queue{start};
    seen[start] = true;
    while (!queue.empty())
    {
        Node v = queue.front();
        queue.pop_front();
        for (auto [w, e] : G.incident(v))
            if (!seen[w] && allowed[w] && use_edge(e))
            {
                seen[w] = true;
                queue.push_back(w);
            }
    }
    return seen;
}

/// c_ab - (u_b - u_a) for full potentials
Rational edge_slack(const DualTransportationInstance& inst, const Vector& u, std::size_t e)
{
    const Edge& edge = inst.graph.edge(e);
    return inst.costs[e] - (u[edge.b] - u[edge.a]);
}

Vector shifted(Vector u, Node root)
{
    Rational base = u[root];
    for (auto& x : u)
        x -= base;
    return u;
}

DtpWalk walk_anchored_at(const DualTransportationInstance& inst, const Point& u1, const Point& u2,
                         const SpanningTree& T2, Node root)
{
    const BipartiteGraph& G = inst.graph;
    const std::size_t V = G.num_nodes();
    std::vector<bool> in_T2(G.num_edges(), false);
    for (auto e : T2.edges)
        in_T2[e] = true;

    // Integer potentials Y = D y over a common denominator D.
    const Vector y1 = shifted(potentials(u1), root);
    const Vector y2 = shifted(potentials(u2), root);
    Integer D = 1;
    for (const auto* vec : {&inst.costs, &y1, &y2})
        for (const Rational& x : *vec)
            if (D % denominator(x) != 0)
                D = boost::multiprecision::lcm(D, Integer(denominator(x)));
    auto scaled = [&D](const Rational& x) { return Integer(numerator(x) * (D / denominator(x))); };
    std::vector<Integer> Y, target, cost;
    for (const Rational& x : y1)
        Y.push_back(scaled(x));
    for (const Rational& x : y2)
        target.push_back(scaled(x));
    for (const Rational& x : inst.costs)
        cost.push_back(scaled(x));
    auto point_of = [&]() {
        Vector coords;
        coords.reserve(V - 1);
        for (Node v = 1; v < V; ++v)
            coords.emplace_back(Y[v] - Y[0], D);
        return Point(std::move(coords));
    };
    const std::vector<bool> everywhere(V, true);

    DtpWalk out;
    out.root = root;
    out.walk.points.push_back(u1);

    std::vector<std::size_t> previous_component_edges;
    while (true)
    {
        std::vector<Integer> slacks(G.num_edges());
        std::vector<bool> tight(G.num_edges(), false);
        for (std::size_t e = 0; e < G.num_edges(); ++e)
        {
            const Edge& edge = G.edge(e);
            slacks[e] = cost[e] - Y[edge.b] + Y[edge.a];
            tight[e] = slacks[e] == 0;
        }
        auto in_C = reach(G, root, everywhere, [&](std::size_t e) { return tight[e] && in_T2[e]; });

        std::vector<std::size_t> component_edges;
        for (auto e : T2.edges)
            if (tight[e] && in_C[G.edge(e).a] && in_C[G.edge(e).b])
                component_edges.push_back(e);
        if (!std::includes(component_edges.begin(), component_edges.end(), previous_component_edges.begin(),
                           previous_component_edges.end()))
            throw InternalInvariantViolation("component of the anchor lost a tree edge");
        if (!out.info.empty())
        {
            auto& last = out.info.back();
            if (!std::binary_search(component_edges.begin(), component_edges.end(), last.target_edge))
                throw InternalInvariantViolation("edge " + edge_name(G.edge(last.target_edge))
                                                 + " did not join the anchor component");
            std::size_t common = 0;
            for (auto e : T2.edges)
                common += tight[e] ? 1 : 0;
            last.common_edges = common;
        }
        previous_component_edges = component_edges;

        if (std::all_of(in_C.begin(), in_C.end(), [](bool b) { return b; }))
        {
            if (Y != target)
                throw InternalInvariantViolation("all of T2 is tight but the walk is not at u2");
            break;
        }

        // Smallest T2 edge rs leaving C.
        std::optional<std::tuple<Node, Node, std::size_t>> pick;
        for (auto e : T2.edges)
        {
            const Edge& edge = G.edge(e);
            if (in_C[edge.a] == in_C[edge.b])
                continue;
            Node r = in_C[edge.a] ? edge.a : edge.b;
            Node s = in_C[edge.a] ? edge.b : edge.a;
            if (!pick || std::make_pair(r, s) < std::make_pair(std::get<0>(*pick), std::get<1>(*pick)))
                pick = std::make_tuple(r, s, e);
        }
        auto [r, s, rs] = *pick;
        const bool s_left = G.is_left(s);

        // (a) C goes to R; (b) neighbours of C on s's side other than s go to R.
        std::vector<bool> in_R = in_C;
        for (Node v = 0; v < V; ++v)
        {
            if (!in_C[v])
                continue;
            for (auto [w, e] : G.incident(v))
                if (w != s && G.is_left(w) == s_left)
                    in_R[w] = true;
        }
        // (c) what s reaches while avoiding R goes to S; (d) the rest joins R.
        std::vector<bool> outside_R(V);
        for (Node v = 0; v < V; ++v)
            outside_R[v] = !in_R[v];
        std::vector<bool> in_S = reach(G, s, outside_R, [](std::size_t) { return true; });

        const int sign = s_left ? -1 : 1;
        std::optional<Integer> epsilon;
        std::vector<std::size_t> blocking;
        for (std::size_t e = 0; e < G.num_edges(); ++e)
        {
            const Edge& edge = G.edge(e);
            int rate = sign * ((in_S[edge.b] ? 1 : 0) - (in_S[edge.a] ? 1 : 0));
            if (rate <= 0)
                continue;
            const Integer& slack = slacks[e];
            if (!epsilon || slack < *epsilon)
            {
                epsilon = slack;
                blocking.assign(1, e);
            }
            else if (slack == *epsilon)
            {
                blocking.push_back(e);
            }
        }
        if (!epsilon)
            throw InternalInvariantViolation("direction for edge " + edge_name(G.edge(rs)) + " is unbounded");
        if (*epsilon == 0)
            throw InternalInvariantViolation("zero step towards edge " + edge_name(G.edge(rs)));
        if (blocking.size() != 1 || blocking.front() != rs)
            throw InternalInvariantViolation("step towards edge " + edge_name(G.edge(rs))
                                             + " tightened a different edge first");

        for (Node v = 0; v < V; ++v)
            if (in_S[v])
            {
                if (sign > 0)
                    Y[v] += *epsilon;
                else
                    Y[v] -= *epsilon;
            }
        const Rational eps(*epsilon, D);

        WalkStepInfo step;
        for (Node v = 0; v < V; ++v)
            (in_S[v] ? step.partition.S : step.partition.R).push_back(v);
        int reduced_sign = sign;
        if (in_S[0])
        {
            std::swap(step.partition.R, step.partition.S);
            reduced_sign = -sign;
        }
        step.target_edge = rs;
        step.r = r;
        step.s = s;
        step.sign = sign;
        step.epsilon = eps;
        step.newly_tight = blocking;

        CircuitDirection g = partition_direction(step.partition, V);
        out.walk.steps.push_back({SignedCircuit{g, reduced_sign}, eps});
        out.walk.points.push_back(point_of());
        out.info.push_back(std::move(step));

        if (out.info.size() >= V)
            throw InternalInvariantViolation("walk exceeded |V| - 1 steps");
    }
    return out;
}

}  // namespace

BipartiteGraph::BipartiteGraph(std::size_t M, std::size_t N, std::vector<Edge> edges)
    : M_(M), N_(N), edges_(std::move(edges)), adjacency_(M + N)
{
    if (M == 0 || N == 0)
        throw InvalidGraph("both node classes must be nonempty");
    std::set<Edge> unique;
    for (std::size_t i = 0; i < edges_.size(); ++i)
    {
        const Edge& e = edges_[i];
        if (e.a >= M || e.b < M || e.b >= M + N)
            throw InvalidGraph("edge " + edge_name(e) + " does not join V1 = [0," + std::to_string(M)
                               + ") to V2 = [" + std::to_string(M) + "," + std::to_string(M + N) + ")");
        if (!unique.insert(e).second)
            throw InvalidGraph("parallel edge " + edge_name(e));
        adjacency_[e.a].emplace_back(e.b, i);
        adjacency_[e.b].emplace_back(e.a, i);
    }
    if (!induces_connected(std::vector<bool>(M + N, true)))
        throw InvalidGraph("graph is not connected");
}

std::optional<std::size_t> BipartiteGraph::edge_index(Node a, Node b) const
{
    if (a >= num_nodes())
        return std::nullopt;
    for (auto [w, e] : adjacency_[a])
        if (w == b)
            return e;
    return std::nullopt;
}

bool BipartiteGraph::induces_connected(const std::vector<bool>& mask) const
{
    auto first = std::find(mask.begin(), mask.end(), true);
    if (first == mask.end())
        return false;
    auto seen = reach(*this, static_cast<Node>(first - mask.begin()), mask, [](std::size_t) { return true; });
    for (Node v = 0; v < num_nodes(); ++v)
        if (mask[v] && !seen[v])
            return false;
    return true;
}

DualTransportationInstance::DualTransportationInstance(BipartiteGraph g, Vector c)
    : graph(std::move(g)), costs(std::move(c))
{
    if (costs.size() != graph.num_edges())
        throw DimensionMismatch(std::to_string(graph.num_edges()) + " edges but " + std::to_string(costs.size())
                                + " costs");
}

bool is_spanning_tree(const BipartiteGraph& G, const std::vector<std::size_t>& edges)
{
    if (edges.size() + 1 != G.num_nodes())
        return false;
    std::vector<bool> used(G.num_edges(), false);
    for (auto e : edges)
    {
        if (e >= G.num_edges() || used[e])
            return false;
        used[e] = true;
    }
    auto seen = reach(G, 0, std::vector<bool>(G.num_nodes(), true), [&](std::size_t e) { return used[e]; });
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Polyhedron build_polyhedron(const DualTransportationInstance& inst)
{
    const std::size_t n = inst.num_nodes() - 1;
    Matrix A;
    A.reserve(inst.graph.num_edges());
    for (const Edge& e : inst.graph.edges())
    {
        Vector row(n, Rational(0));
        if (e.a != 0)
            row[e.a - 1] = -1;
        row[e.b - 1] = 1;
        A.push_back(std::move(row));
    }
    return Polyhedron(std::move(A), inst.costs);
}

Vector potentials(const Point& reduced)
{
    Vector u;
    u.reserve(reduced.dim() + 1);
    u.emplace_back(0);
    u.insert(u.end(), reduced.coords.begin(), reduced.coords.end());
    return u;
}

Point reduce(const Vector& u)
{
    Vector z(u.begin() + 1, u.end());
    for (auto& x : z)
        x -= u[0];
    return Point(std::move(z));
}

std::vector<std::size_t> tight_edges(const DualTransportationInstance& inst, const Point& u)
{
    if (u.dim() + 1 != inst.num_nodes())
        throw DimensionMismatch("point has dimension " + std::to_string(u.dim()) + ", expected "
                                + std::to_string(inst.num_nodes() - 1));
    Vector full = potentials(u);
    std::vector<std::size_t> tight;
    for (std::size_t e = 0; e < inst.graph.num_edges(); ++e)
    {
        Rational s = edge_slack(inst, full, e);
        if (s < 0)
            throw InfeasiblePoint("edge " + edge_name(inst.graph.edge(e)) + " violated");
        if (is_zero(s))
            tight.push_back(e);
    }
    return tight;
}

std::optional<Point> vertex_from_tree(const DualTransportationInstance& inst, const SpanningTree& tree)
{
    const BipartiteGraph& G = inst.graph;
    if (!is_spanning_tree(G, tree.edges))
        throw InvalidGraph("edge set is not a spanning tree");
    std::vector<bool> in_tree(G.num_edges(), false);
    for (auto e : tree.edges)
        in_tree[e] = true;

    Vector u(G.num_nodes(), Rational(0));
    std::vector<bool> set(G.num_nodes(), false);
    set[0] = true;
    std::deque<Node> queue{0};
    while (!queue.empty())
    {
        Node v = queue.front();
        queue.pop_front();
        for (auto [w, e] : G.incident(v))
        {
            if (!in_tree[e] || set[w])
                continue;
            const Edge& edge = G.edge(e);
            // u_b - u_a = c_ab
            u[w] = (w == edge.b) ? u[edge.a] + inst.costs[e] : u[edge.b] - inst.costs[e];
            set[w] = true;
            queue.push_back(w);
        }
    }
    for (std::size_t e = 0; e < G.num_edges(); ++e)
        if (edge_slack(inst, u, e) < 0)
            return std::nullopt;
    return reduce(u);
}

SpanningTree tree_from_vertex(const DualTransportationInstance& inst, const Point& u)
{
    auto tight = tight_edges(inst, u);
    const BipartiteGraph& G = inst.graph;
    std::vector<bool> used(G.num_edges(), false);
    for (auto e : tight)
        used[e] = true;
    auto seen = reach(G, 0, std::vector<bool>(G.num_nodes(), true), [&](std::size_t e) { return used[e]; });
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw NotAVertex("tight graph does not span all nodes");
    if (tight.size() + 1 != G.num_nodes())
    {
        std::string where = "(";
        for (std::size_t j = 0; j < u.dim(); ++j)
            where += (j ? "," : "") + to_string(u.coords[j]);
        throw DegenerateVertex("vertex " + where + ") has " + std::to_string(tight.size())
                               + " tight edges, a spanning tree has " + std::to_string(G.num_nodes() - 1));
    }
    return SpanningTree{std::move(tight)};
}

CircuitDirection partition_direction(const NodePartition& p, std::size_t num_nodes)
{
    IntVector g(num_nodes - 1, Integer(0));
    for (Node v : p.S)
    {
        if (v == 0)
            throw std::invalid_argument("node 0 must lie in R");
        g[v - 1] = 1;
    }
    return CircuitDirection(std::move(g));
}

std::vector<GraphCircuit> enumerate_graph_circuits(const BipartiteGraph& G)
{
    const std::size_t V = G.num_nodes();
    std::vector<GraphCircuit> out;
    // S ranges over nonempty subsets of {1..V-1}; R = complement holds node 0.
    const std::uint64_t subsets = std::uint64_t{1} << (V - 1);
    for (std::uint64_t mask = 1; mask < subsets; ++mask)
    {
        std::vector<bool> in_S(V, false);
        for (Node v = 1; v < V; ++v)
            in_S[v] = (mask >> (v - 1)) & 1u;
        std::vector<bool> in_R(V);
        for (Node v = 0; v < V; ++v)
            in_R[v] = !in_S[v];
        if (!G.induces_connected(in_S) || !G.induces_connected(in_R))
            continue;
        NodePartition p;
        for (Node v = 0; v < V; ++v)
            (in_S[v] ? p.S : p.R).push_back(v);
        CircuitDirection g = partition_direction(p, V);
        out.push_back({std::move(p), std::move(g)});
    }
    std::sort(out.begin(), out.end(), [](const GraphCircuit& x, const GraphCircuit& y) {
        return x.direction < y.direction;
    });
    return out;
}

CircuitSet graph_circuit_set(const BipartiteGraph& G)
{
    std::vector<CircuitDirection> dirs;
    for (auto& c : enumerate_graph_circuits(G))
        dirs.push_back(std::move(c.direction));
    return CircuitSet(std::move(dirs));
}

namespace {

/// Some vertex: start from a feasible point and merge tight components by ratio tests.
Point initial_vertex(const DualTransportationInstance& inst)
{
    const BipartiteGraph& G = inst.graph;
    const std::size_t V = G.num_nodes();
    Vector u(V, Rational(0));
    for (Node b = G.M(); b < V; ++b)
    {
        std::optional<Rational> lowest;
        for (auto [a, e] : G.incident(b))
            if (!lowest || inst.costs[e] < *lowest)
                lowest = inst.costs[e];
        u[b] = *lowest;
    }
    const std::vector<bool> everywhere(V, true);
    while (true)
    {
        std::vector<bool> tight(G.num_edges());
        for (std::size_t e = 0; e < G.num_edges(); ++e)
            tight[e] = is_zero(edge_slack(inst, u, e));
        auto in_K = reach(G, 0, everywhere, [&](std::size_t e) { return tight[e]; });
        auto outside = std::find(in_K.begin(), in_K.end(), false);
        if (outside == in_K.end())
            return reduce(u);
        // Shift the tight component of the first node not attached to 0.
        in_K = reach(G, static_cast<Node>(outside - in_K.begin()), everywhere, [&](std::size_t e) { return tight[e]; });
        for (int sign : {1, -1})
        {
            std::optional<Rational> step;
            for (std::size_t e = 0; e < G.num_edges(); ++e)
            {
                const Edge& edge = G.edge(e);
                int rate = sign * ((in_K[edge.b] ? 1 : 0) - (in_K[edge.a] ? 1 : 0));
                if (rate > 0)
                {
                    Rational s = edge_slack(inst, u, e);
                    if (!step || s < *step)
                        step = s;
                }
            }
            if (!step)
                continue;
            for (Node v = 0; v < V; ++v)
                if (in_K[v])
                    u[v] += sign * *step;
            break;
        }
    }
}

/// Pivot search over the skeleton; nullopt if a degenerate vertex is reached.
std::optional<std::vector<Point>> pivot_vertices(const DualTransportationInstance& inst)
{
    const BipartiteGraph& G = inst.graph;
    const std::size_t V = G.num_nodes();
    Polyhedron P = build_polyhedron(inst);
    std::set<Point> seen;
    std::deque<Point> queue;
    Point start = initial_vertex(inst);
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty())
    {
        Point u = std::move(queue.front());
        queue.pop_front();
        auto tight = tight_edges(inst, u);
        if (tight.size() + 1 != V)
            return std::nullopt;
        for (auto drop : tight)
        {
            // Loosen `drop`: move the side of the tree not holding node 0.
            std::vector<bool> used(G.num_edges(), false);
            for (auto e : tight)
                used[e] = e != drop;
            auto with_zero = reach(G, 0, std::vector<bool>(V, true), [&](std::size_t e) { return used[e]; });
            IntVector g(V - 1, Integer(0));
            for (Node v = 1; v < V; ++v)
                g[v - 1] = with_zero[v] ? 0 : 1;
            // If b stays put, raising a loosens the edge; otherwise lower b.
            if (!with_zero[G.edge(drop).b])
                for (auto& x : g)
                    x = -x;
            auto step = maximal_step(P, u, g);
            if (!step.bounded())
                continue;
            Point w = advance(u, step.alpha, g);
            if (seen.insert(w).second)
                queue.push_back(std::move(w));
        }
    }
    return std::vector<Point>(seen.begin(), seen.end());
}

}  // namespace

std::vector<Point> enumerate_vertices(const DualTransportationInstance& inst)
{
    if (auto vertices = pivot_vertices(inst))
        return *vertices;
    return circdiam::enumerate_vertices(build_polyhedron(inst));
}

bool check_genericity(const DualTransportationInstance& inst)
{
    return pivot_vertices(inst).has_value();
}

DualTransportationInstance remove_redundant_edges(const DualTransportationInstance& inst)
{
    auto drop = redundant_rows(build_polyhedron(inst));
    std::vector<Edge> edges;
    Vector costs;
    for (std::size_t e = 0; e < inst.graph.num_edges(); ++e)
    {
        if (std::find(drop.begin(), drop.end(), e) != drop.end())
            continue;
        edges.push_back(inst.graph.edge(e));
        costs.push_back(inst.costs[e]);
    }
    try
    {
        return DualTransportationInstance(BipartiteGraph(inst.graph.M(), inst.graph.N(), std::move(edges)),
                                          std::move(costs));
    }
    catch (const InvalidGraph& err)
    {
        throw DisconnectedAfterRemoval(std::string("removing redundant edges: ") + err.what());
    }
}

DtpWalk constructive_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2)
{
    tree_from_vertex(inst, u1);
    return walk_anchored_at(inst, u1, u2, tree_from_vertex(inst, u2), 0);
}

DtpWalk constructive_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2,
                          const SpanningTree& T2)
{
    return walk_anchored_at(inst, u1, u2, T2, 0);
}

std::size_t common_tree_edge(const BipartiteGraph& G, const SpanningTree& T1, const SpanningTree& T2)
{
    std::optional<std::size_t> best;
    for (auto e : T1.edges)
        if (std::find(T2.edges.begin(), T2.edges.end(), e) != T2.edges.end())
            if (!best || G.edge(e) < G.edge(*best))
                best = e;
    if (!best)
        throw EmptyIntersection("vertex trees share no edge");
    return *best;
}

CertifiedWalk certified_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2)
{
    return certified_walk(inst, u1, u2, tree_from_vertex(inst, u1), tree_from_vertex(inst, u2));
}

CertifiedWalk certified_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2,
                             const SpanningTree& T1, const SpanningTree& T2)
{
    CertifiedWalk out;
    out.common_edge = common_tree_edge(inst.graph, T1, T2);
    out.walk = walk_anchored_at(inst, u1, u2, T2, inst.graph.edge(out.common_edge).a);
    out.bound = inst.num_nodes() - 2;
    out.within_bound = out.walk.walk.length() <= out.bound;
    return out;
}

DualTransportationInstance random_instance(std::size_t M, std::size_t N, const Rational& density,
                                           std::uint64_t seed)
{
    if (M == 0 || N == 0)
        throw std::invalid_argument("random_instance needs M, N >= 1");
    if (density <= 0 || density > 1)
        throw std::invalid_argument("density must lie in (0, 1]");
    const Integer dens_num = numerator(density);
    const Integer dens_den = denominator(density);
    const std::size_t V = M + N;

    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; primes.size() < M * N; ++p)
        if (std::all_of(primes.begin(), primes.end(), [p](std::uint64_t q) { return p % q != 0; }))
            primes.push_back(p);

    std::mt19937_64 rng(seed);
    auto below = [&rng](std::uint64_t bound) { return rng() % bound; };

    constexpr int max_attempts = 32;
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        std::vector<bool> in_tree(V, false);
        in_tree[0] = true;
        std::set<Edge> chosen;
        for (std::size_t added = 1; added < V; ++added)
        {
            std::vector<Edge> frontier;
            for (Node a = 0; a < M; ++a)
                for (Node b = M; b < V; ++b)
                    if (in_tree[a] != in_tree[b])
                        frontier.push_back({a, b});
            Edge e = frontier[below(frontier.size())];
            chosen.insert(e);
            in_tree[e.a] = in_tree[e.b] = true;
        }
        for (Node a = 0; a < M; ++a)
            for (Node b = M; b < V; ++b)
            {
                Edge e{a, b};
                if (chosen.count(e))
                    continue;
                Integer draw = below(static_cast<std::uint64_t>(dens_den));
                if (draw < dens_num)
                    chosen.insert(e);
            }

        std::vector<Edge> edges(chosen.begin(), chosen.end());
        // Alternating cost sums around any cycle carry a 1/p term per edge with
        // distinct primes p, so they never vanish and every vertex is simple.
        Vector costs;
        for (std::size_t e = 0; e < edges.size(); ++e)
        {
            long whole = static_cast<long>(below(2 * edges.size() + 1));
            costs.push_back(Rational(whole) + Rational(1, static_cast<long>(primes[e])));
        }
        DualTransportationInstance inst(BipartiteGraph(M, N, std::move(edges)), std::move(costs));
        if (check_genericity(inst))
            return inst;
    }
    throw RetryLimit("no generic instance after " + std::to_string(max_attempts) + " draws");
}

}  // namespace circdiam::dtp
