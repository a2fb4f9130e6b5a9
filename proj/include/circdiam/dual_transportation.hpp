#ifndef CIRCDIAM_DUAL_TRANSPORTATION_HPP
#define CIRCDIAM_DUAL_TRANSPORTATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "circdiam/circuits.hpp"
#include "circdiam/polyhedron.hpp"
#include "circdiam/walks.hpp"

namespace circdiam::dtp {

using Node = std::size_t;

/** Edge between a left node a (in 0..M-1) and a right node b (in M..M+N-1). */
struct Edge
{
    Node a = 0;
    Node b = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Connected bipartite graph with left nodes 0..M-1 and right nodes
 * M..M+N-1. Edge order is preserved; edge i is row i of the polyhedron.
 */
class BipartiteGraph
{
    public:
        /// Throws InvalidGraph on bad endpoints, parallel edges or disconnection.
        BipartiteGraph(std::size_t M, std::size_t N, std::vector<Edge> edges);

        std::size_t M() const { return M_; }
        std::size_t N() const { return N_; }
        std::size_t num_nodes() const { return M_ + N_; }
        std::size_t num_edges() const { return edges_.size(); }
        const std::vector<Edge>& edges() const { return edges_; }
        const Edge& edge(std::size_t i) const { return edges_[i]; }

        bool is_left(Node v) const { return v < M_; }
        std::optional<std::size_t> edge_index(Node a, Node b) const;

        /// (neighbor, edge index) pairs
        const std::vector<std::pair<Node, std::size_t>>& incident(Node v) const { return adjacency_[v]; }

        /// Whether the nodes flagged in `mask` induce a nonempty connected subgraph.
        bool induces_connected(const std::vector<bool>& mask) const;

    private:
        std::size_t M_;
        std::size_t N_;
        std::vector<Edge> edges_;
        std::vector<std::vector<std::pair<Node, std::size_t>>> adjacency_;
};

/** A graph together with one rational cost per edge (same order as edges). */
struct DualTransportationInstance
{
    BipartiteGraph graph;
    Vector costs;

    DualTransportationInstance(BipartiteGraph g, Vector c);

    std::size_t num_nodes() const { return graph.num_nodes(); }
};

/** Edge indices of a spanning tree, sorted ascending. */
struct SpanningTree
{
    std::vector<std::size_t> edges;

    friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

bool is_spanning_tree(const BipartiteGraph& G, const std::vector<std::size_t>& edges);

/** R holds node 0; both parts are nonempty and induce connected subgraphs. */
struct NodePartition
{
    std::vector<Node> R;
    std::vector<Node> S;

    friend bool operator==(const NodePartition&, const NodePartition&) = default;
};

/**
 * Rows -u_a + u_b <= c_ab, one per edge in edge order, over the variables
 * u_1..u_{M+N-1} (u_0 = 0 eliminated). Column j holds node j + 1.
 */
Polyhedron build_polyhedron(const DualTransportationInstance& inst);

/** Full potential vector (u_0, ..., u_{M+N-1}) of a reduced point; u_0 = 0. */
Vector potentials(const Point& reduced);
/** Reduced point of a potential vector, shifted so that u_0 = 0 first. */
Point reduce(const Vector& potentials);

/** Edges whose inequality is tight at u. Throws InfeasiblePoint. */
std::vector<std::size_t> tight_edges(const DualTransportationInstance& inst, const Point& u);

/**
 * The point with u_0 = 0 and every tree edge tight, or nullopt if it violates
 * a non-tree edge. Throws InvalidGraph if `tree` is not a spanning tree.
 */
std::optional<Point> vertex_from_tree(const DualTransportationInstance& inst, const SpanningTree& tree);

/**
 * Tight graph of the vertex u. Throws DegenerateVertex if it has more than
 * |V| - 1 edges and NotAVertex if it does not span.
 */
SpanningTree tree_from_vertex(const DualTransportationInstance& inst, const Point& u);

struct GraphCircuit
{
    NodePartition partition;
    CircuitDirection direction;   ///< indicator of S on nodes 1..M+N-1
};

/** Every connected (R, S) split with 0 in R, ordered by direction. */
std::vector<GraphCircuit> enumerate_graph_circuits(const BipartiteGraph& G);
CircuitSet graph_circuit_set(const BipartiteGraph& G);

/** Circuit of a partition; the partition must contain node 0 in R. */
CircuitDirection partition_direction(const NodePartition& p, std::size_t num_nodes);

/**
 * Vertices in canonical (lexicographic) order. Generic instances are
 * enumerated by tree pivots from a starting vertex; if a degenerate vertex is
 * met, this falls back to exhaustive enumeration of the polyhedron.
 */
std::vector<Point> enumerate_vertices(const DualTransportationInstance& inst);

/** Every vertex has a spanning tree as its tight graph. */
bool check_genericity(const DualTransportationInstance& inst);

/** Deletes the edges whose rows are redundant. Throws DisconnectedAfterRemoval. */
DualTransportationInstance remove_redundant_edges(const DualTransportationInstance& inst);

/** Per-step record of the constructive walk. */
struct WalkStepInfo
{
    NodePartition partition;          ///< in original labels, 0 in R
    std::size_t target_edge = 0;      ///< the T2 edge rs made tight by this step
    Node r = 0;
    Node s = 0;
    int sign = 1;                     ///< +1 adds epsilon on S, -1 subtracts
    Rational epsilon;
    std::vector<std::size_t> newly_tight;   ///< cross edges that became tight
    std::size_t common_edges = 0;     ///< |E(G(y(i+1))) ∩ E(T2)|
};

struct DtpWalk
{
    CircuitWalk walk;
    std::vector<WalkStepInfo> info;
    Node root = 0;   ///< node whose potential is held fixed while walking
};

/**
 * Walk from u1 to u2 that makes one edge of T2 = G(u2) tight per step,
 * growing the component of node 0 in G(y) ∩ T2. Length <= |V| - 1.
 * Throws DegenerateVertex for non-tree tight graphs and
 * InternalInvariantViolation if a step has epsilon = 0 or tightens an edge
 * other than the chosen one.
 */
DtpWalk constructive_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2);
/// Same, with T2 = tree_from_vertex(inst, u2) already known.
DtpWalk constructive_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2,
                          const SpanningTree& T2);

/** Smallest edge (in (a, b) order) of both trees. Throws EmptyIntersection. */
std::size_t common_tree_edge(const BipartiteGraph& G, const SpanningTree& T1, const SpanningTree& T2);

struct CertifiedWalk
{
    DtpWalk walk;
    std::size_t common_edge = 0;
    std::size_t bound = 0;   ///< |V| - 2
    bool within_bound = false;
};

/**
 * Constructive walk anchored at the left endpoint of a common tree edge
 * instead of node 0, so the starting component already holds one T2 edge.
 * Length <= |V| - 2.
 */
CertifiedWalk certified_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2);
/// Same, with the vertex trees of u1 and u2 already known.
CertifiedWalk certified_walk(const DualTransportationInstance& inst, const Point& u1, const Point& u2,
                             const SpanningTree& T1, const SpanningTree& T2);

/**
 * Seeded random connected instance: a random spanning tree plus each other
 * left-right pair with probability `density`, costs k + 1/p with distinct
 * primes p. Identical arguments give identical instances.
 */
DualTransportationInstance random_instance(std::size_t M, std::size_t N, const Rational& density,
                                           std::uint64_t seed);

}  // namespace circdiam::dtp

#endif
