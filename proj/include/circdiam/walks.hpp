#ifndef CIRCDIAM_WALKS_HPP
#define CIRCDIAM_WALKS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "circdiam/circuits.hpp"
#include "circdiam/polyhedron.hpp"

namespace circdiam {

struct WalkStep
{
    SignedCircuit direction;
    Rational alpha;
};

/**
 * Points y(0..k) and the k steps between them; y(i+1) = y(i) + alpha_i g(i)
 * with each step maximal. Only verify_walk checks these conditions.
 */
struct CircuitWalk
{
    std::vector<Point> points;
    std::vector<WalkStep> steps;

    std::size_t length() const { return steps.size(); }
};

enum class WalkViolation
{
    None,
    Malformed,       ///< points.size() != steps.size() + 1, or dimension mismatch
    Infeasible,      ///< y(i) outside P
    NotACircuit,     ///< g(i) not in the circuit set
    NonPositiveStep, ///< alpha_i <= 0
    StepMismatch,    ///< y(i+1) - y(i) != alpha_i g(i)
    NotMaximal,      ///< the ratio test from y(i) along g(i) does not give alpha_i
};

std::string to_string(WalkViolation v);

struct WalkVerdict
{
    WalkViolation violation = WalkViolation::None;
    std::size_t index = 0;   ///< step (or point) where the first violation occurs
    std::string message;

    bool ok() const { return violation == WalkViolation::None; }
};

/** Checks every circuit-walk condition in order and reports the first failure. */
WalkVerdict verify_walk(const Polyhedron& P, const CircuitSet& circuits, const CircuitWalk& walk);

struct DistanceResult
{
    enum class Kind { Distance, ExceededCap };

    Kind kind = Kind::ExceededCap;
    std::size_t distance = 0;   ///< valid for Distance
    std::size_t cap = 0;
    CircuitWalk witness;        ///< valid for Distance

    bool resolved() const { return kind == Kind::Distance; }
};

/**
 * Circuit distances from one source to several targets by breadth-first
 * search over exact points, expanding every circuit in both signs (canonical
 * order, + before -). Each returned witness is the lexicographically smallest
 * shortest direction sequence. Targets not reached within `cap` steps come
 * back as ExceededCap.
 */
std::vector<DistanceResult> circuit_distances_from(const Polyhedron& P, const CircuitSet& circuits,
                                                   const Point& source, const std::vector<Point>& targets,
                                                   std::size_t cap);

/** Throws NotAVertex if either endpoint is not a vertex. */
DistanceResult circuit_distance(const Polyhedron& P, const CircuitSet& circuits, const Point& source,
                                const Point& target, std::size_t cap);
DistanceResult circuit_distance(const Polyhedron& P, const Point& source, const Point& target,
                                std::size_t cap);

struct DiameterResult
{
    bool exceeded = false;      ///< some ordered pair was not resolved within cap
    std::size_t diameter = 0;   ///< max distance over resolved pairs
    std::size_t cap = 0;
    std::size_t from = 0;       ///< vertex indices of the maximizing (or unresolved) pair
    std::size_t to = 0;
    std::vector<std::vector<std::optional<std::size_t>>> distances;   ///< [from][to]
};

/** Maximum circuit distance over ordered pairs of `vertices`. */
DiameterResult circuit_diameter(const Polyhedron& P, const CircuitSet& circuits,
                                const std::vector<Point>& vertices, std::size_t cap);
DiameterResult circuit_diameter(const Polyhedron& P, std::size_t cap);

/** Adjacency lists of the 1-skeleton: common tight rows of rank n-1. */
std::vector<std::vector<std::size_t>> skeleton(const Polyhedron& P, const std::vector<Point>& vertices);

/** All-pairs edge distances on the skeleton; nullopt if disconnected. */
std::vector<std::vector<std::optional<std::size_t>>>
skeleton_distances(const std::vector<std::vector<std::size_t>>& adjacency);

std::size_t combinatorial_distance(const Polyhedron& P, const Point& source, const Point& target);
std::size_t combinatorial_diameter(const Polyhedron& P);
std::size_t combinatorial_diameter(const Polyhedron& P, const std::vector<Point>& vertices);

struct ConjectureReport
{
    std::size_t facets = 0;       ///< f, the number of rows
    std::size_t dim = 0;          ///< n
    std::optional<std::size_t> diameter;   ///< nullopt when the search exceeded its cap
    bool exceeded_cap = false;
    bool satisfied = false;       ///< diameter <= f - n
};

/**
 * Circuit diameter of an irredundant P against f - n, searched with cap
 * f - n + 1. Any unsatisfied report is a counterexample candidate.
 */
ConjectureReport probe_conjecture(const Polyhedron& P);

}  // namespace circdiam

#endif
