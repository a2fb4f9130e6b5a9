#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "circdiam/walks.hpp"
#include "support.hpp"

using namespace circdiam;
using namespace testing;

namespace {

CircuitWalk walk_of(std::vector<Point> points, std::vector<std::pair<IntVector, Rational>> steps)
{
    CircuitWalk w;
    w.points = std::move(points);
    for (auto& [v, alpha] : steps)
    {
        auto m = CircuitDirection::from_vector(to_rational(v));
        w.steps.push_back({SignedCircuit{m->first, m->second}, alpha});
    }
    return w;
}

// Ratio test written out by hand, independent of maximal_step.
std::optional<Point> oracle_step(const Polyhedron& P, const Point& y, const IntVector& g)
{
    std::optional<Rational> best;
    for (std::size_t i = 0; i < P.num_rows(); ++i)
    {
        Rational rate = 0, lhs = 0;
        for (std::size_t j = 0; j < P.dim(); ++j)
        {
            rate += P.A()[i][j] * Rational(g[j]);
            lhs += P.A()[i][j] * y.coords[j];
        }
        if (rate <= 0)
            continue;
        Rational ratio = (P.b()[i] - lhs) / rate;
        if (!best || ratio < *best)
            best = ratio;
    }
    if (!best || *best <= 0)
        return std::nullopt;
    Vector z = y.coords;
    for (std::size_t j = 0; j < z.size(); ++j)
        z[j] += *best * Rational(g[j]);
    return Point(z);
}

// Shortest length (<= depth) over every maximal circuit walk from source, by
// exhaustive depth-first enumeration without memoization.
std::map<Point, std::size_t> oracle_distances(const Polyhedron& P, const CircuitSet& C, const Point& source,
                                              std::size_t depth)
{
    std::map<Point, std::size_t> best;
    std::vector<IntVector> dirs;
    for (const auto& g : C.items())
        for (int sign : {1, -1})
            dirs.push_back(SignedCircuit{g, sign}.vector());
    auto visit = [&](auto&& self, const Point& y, std::size_t k) -> void {
        auto it = best.find(y);
        if (it == best.end() || k < it->second)
            best[y] = k;
        if (k == depth)
            return;
        for (const auto& d : dirs)
            if (auto z = oracle_step(P, y, d))
                self(self, *z, k + 1);
    };
    visit(visit, source, 0);
    return best;
}

std::vector<Polyhedron> small_polygons()
{
    std::vector<Polyhedron> out{example1(), example2(), unit_square()};
    for (std::uint64_t seed = 1; out.size() < 12 && seed < 200; ++seed)
    {
        auto P = random_polyhedron(2, 6, seed);
        if (!P)
            continue;
        auto V = enumerate_vertices(*P);
        if (V.size() >= 2 && V.size() <= 8)
            out.push_back(*P);
    }
    return out;
}

}  // namespace

TEST_CASE("verify_walk accepts the two-step walk of Example 1")
{
    Polyhedron P = example1();
    CircuitSet C = enumerate_circuits(P);
    auto w = walk_of({pt({0, 1}), pt({3, 1}), pt({5, -1})}, {{ivec({1, 0}), 3}, {ivec({1, -1}), 2}});
    auto v = verify_walk(P, C, w);
    CHECK(v.ok());
    CHECK(w.length() == 2);
}

TEST_CASE("verify_walk reports the first violation")
{
    Polyhedron P = example1();
    CircuitSet C = enumerate_circuits(P);

    auto truncated = walk_of({pt({0, 1}), pt({3, 1}), pt({4, 0})}, {{ivec({1, 0}), 3}, {ivec({1, -1}), 1}});
    auto v = verify_walk(P, C, truncated);
    CHECK(v.violation == WalkViolation::NotMaximal);
    CHECK(v.index == 1);

    auto not_circuit = walk_of({pt({0, 1}), pt({2, 2})}, {{ivec({2, 1}), 1}});
    v = verify_walk(P, C, not_circuit);
    CHECK(v.violation == WalkViolation::NotACircuit);
    CHECK(v.index == 0);

    auto infeasible = walk_of({pt({-1, 1}), pt({3, 1})}, {{ivec({1, 0}), 4}});
    CHECK(verify_walk(P, C, infeasible).violation == WalkViolation::Infeasible);

    auto mismatch = walk_of({pt({0, 1}), pt({3, 0})}, {{ivec({1, 0}), 3}});
    CHECK(verify_walk(P, C, mismatch).violation == WalkViolation::StepMismatch);

    auto zero = walk_of({pt({0, 1}), pt({0, 1})}, {{ivec({1, 0}), 0}});
    CHECK(verify_walk(P, C, zero).violation == WalkViolation::NonPositiveStep);

    CircuitWalk malformed;
    malformed.points = {pt({0, 1})};
    malformed.steps = walk_of({pt({0, 1}), pt({3, 1})}, {{ivec({1, 0}), 3}}).steps;
    CHECK(verify_walk(P, C, malformed).violation == WalkViolation::Malformed);

    CHECK(verify_walk(P, C, CircuitWalk{{pt({2, 2})}, {}}).ok());
}

TEST_CASE("circuit distances of Example 1")
{
    Polyhedron P = example1();
    CircuitSet C = enumerate_circuits(P);
    auto forward = circuit_distance(P, v1(), v4(), 4);
    REQUIRE(forward.resolved());
    CHECK(forward.distance == 2);
    CHECK(verify_walk(P, C, forward.witness).ok());
    CHECK(forward.witness.points.front() == v1());
    CHECK(forward.witness.points.back() == v4());

    auto backward = circuit_distance(P, v4(), v1(), 4);
    REQUIRE(backward.resolved());
    CHECK(backward.distance == 3);
    CHECK(verify_walk(P, C, backward.witness).ok());

    auto capped = circuit_distance(P, v4(), v1(), 2);
    CHECK_FALSE(capped.resolved());
    CHECK(capped.cap == 2);

    for (const Point& v : enumerate_vertices(P))
    {
        auto self = circuit_distance(P, v, v, 0);
        REQUIRE(self.resolved());
        CHECK(self.distance == 0);
    }

    CHECK_THROWS_AS(circuit_distance(P, pt({1, 0}), v4(), 4), NotAVertex);
}

TEST_CASE("the witness is the smallest direction sequence among shortest walks")
{
    Polyhedron P = example1();
    CircuitSet C = enumerate_circuits(P);
    auto r = circuit_distance(P, C, v1(), v4(), 4);
    REQUIRE(r.resolved());
    // All two-step walks from v1 to v4, by brute force over direction pairs.
    std::vector<std::vector<SignedCircuit>> found;
    for (const auto& g1 : C.items())
        for (int s1 : {1, -1})
            for (const auto& g2 : C.items())
                for (int s2 : {1, -1})
                {
                    SignedCircuit d1{g1, s1}, d2{g2, s2};
                    auto y1 = oracle_step(P, v1(), d1.vector());
                    if (!y1)
                        continue;
                    auto y2 = oracle_step(P, *y1, d2.vector());
                    if (y2 && *y2 == v4())
                        found.push_back({d1, d2});
                }
    REQUIRE_FALSE(found.empty());
    auto rank_of = [&](const SignedCircuit& d) { return 2 * *C.index_of(d.circuit) + (d.sign > 0 ? 0 : 1); };
    auto smallest = *std::min_element(found.begin(), found.end(), [&](const auto& a, const auto& b) {
        return std::make_pair(rank_of(a[0]), rank_of(a[1])) < std::make_pair(rank_of(b[0]), rank_of(b[1]));
    });
    CHECK(r.witness.steps[0].direction == smallest[0]);
    CHECK(r.witness.steps[1].direction == smallest[1]);
}

TEST_CASE("circuit diameters")
{
    auto d1 = circuit_diameter(example1(), 4);
    CHECK_FALSE(d1.exceeded);
    CHECK(d1.diameter == 3);
    auto d2 = circuit_diameter(example2(), 4);
    CHECK_FALSE(d2.exceeded);
    CHECK(d2.diameter == 2);

    // Pointed cone: a single vertex.
    Polyhedron cone({vec({-1, 0}), vec({0, -1})}, vec({0, 0}));
    auto d0 = circuit_diameter(cone, 2);
    CHECK_FALSE(d0.exceeded);
    CHECK(d0.diameter == 0);

    auto small_cap = circuit_diameter(example1(), 2);
    CHECK(small_cap.exceeded);
}

TEST_CASE("combinatorial distance and diameter")
{
    Polyhedron P = example1();
    CHECK(combinatorial_distance(P, v1(), v4()) == 3);
    CHECK(combinatorial_diameter(P) == 3);
    CHECK(combinatorial_diameter(unit_square()) == 2);
    auto adj = skeleton(P, enumerate_vertices(P));
    for (const auto& nbrs : adj)
        CHECK(nbrs.size() == 2);
    CHECK_THROWS_AS(combinatorial_distance(P, pt({1, 0}), v4()), NotAVertex);
}

TEST_CASE("circuit distance never exceeds combinatorial distance")
{
    std::vector<Polyhedron> polys = small_polygons();
    for (std::uint64_t seed = 500; seed < 520; ++seed)
        if (auto P = random_polyhedron(3, 7, seed))
            if (enumerate_vertices(*P).size() <= 10)
                polys.push_back(*P);
    for (const Polyhedron& P : polys)
    {
        auto V = enumerate_vertices(P);
        CircuitSet C = enumerate_circuits(P);
        auto comb = skeleton_distances(skeleton(P, V));
        for (std::size_t s = 0; s < V.size(); ++s)
        {
            auto res = circuit_distances_from(P, C, V[s], V, V.size());
            for (std::size_t t = 0; t < V.size(); ++t)
            {
                REQUIRE(comb[s][t].has_value());
                // Edge walks are circuit walks, so the cap V.size() always suffices.
                REQUIRE(res[t].resolved());
                CHECK(res[t].distance <= *comb[s][t]);
                CHECK(verify_walk(P, C, res[t].witness).ok());
            }
        }
    }
}

TEST_CASE("raising the cap never lengthens a resolved distance")
{
    for (const Polyhedron& P : small_polygons())
    {
        auto V = enumerate_vertices(P);
        CircuitSet C = enumerate_circuits(P);
        for (std::size_t s = 0; s < V.size(); ++s)
        {
            std::vector<std::optional<std::size_t>> previous(V.size());
            for (std::size_t cap = 0; cap <= 5; ++cap)
            {
                auto res = circuit_distances_from(P, C, V[s], V, cap);
                for (std::size_t t = 0; t < V.size(); ++t)
                {
                    if (previous[t])
                    {
                        REQUIRE(res[t].resolved());
                        CHECK(res[t].distance == *previous[t]);
                    }
                    if (res[t].resolved())
                    {
                        CHECK(res[t].distance <= cap);
                        previous[t] = res[t].distance;
                    }
                }
            }
        }
    }
}

TEST_CASE("BFS distances agree with exhaustive walk enumeration in the plane")
{
    auto pool = small_polygons();
    CHECK(pool.size() == 12);
    for (const Polyhedron& P : pool)
    {
        auto V = enumerate_vertices(P);
        REQUIRE(V.size() <= 8);
        CircuitSet C = enumerate_circuits(P);
        for (const Point& s : V)
        {
            auto oracle = oracle_distances(P, C, s, 4);
            auto res = circuit_distances_from(P, C, s, V, 4);
            for (std::size_t t = 0; t < V.size(); ++t)
            {
                auto it = oracle.find(V[t]);
                if (it == oracle.end())
                {
                    CHECK_FALSE(res[t].resolved());
                }
                else
                {
                    REQUIRE(res[t].resolved());
                    CHECK(res[t].distance == it->second);
                }
            }
        }
    }
}

TEST_CASE("conjecture probe on small polyhedra")
{
    auto r1 = probe_conjecture(example1());
    CHECK(r1.facets == 6);
    CHECK(r1.dim == 2);
    REQUIRE(r1.diameter);
    CHECK(*r1.diameter == 3);
    CHECK(r1.satisfied);

    auto r2 = probe_conjecture(example2());
    REQUIRE(r2.diameter);
    CHECK(*r2.diameter == 2);
    CHECK(r2.satisfied);

    auto sq = probe_conjecture(unit_square());
    REQUIRE(sq.diameter);
    CHECK(*sq.diameter <= 2);
    CHECK(sq.satisfied);
}
