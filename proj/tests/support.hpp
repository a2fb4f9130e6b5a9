#ifndef CIRCDIAM_TESTS_SUPPORT_HPP
#define CIRCDIAM_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "circdiam/circuits.hpp"
#include "circdiam/dual_transportation.hpp"
#include "circdiam/errors.hpp"
#include "circdiam/io.hpp"
#include "circdiam/polyhedron.hpp"
#include "circdiam/rational.hpp"
#include "circdiam/redundancy.hpp"

namespace testing {

using namespace circdiam;

inline std::string data_path(const std::string& name) { return std::string(CIRCDIAM_DATA_DIR) + "/" + name; }

inline Polyhedron load_polyhedron(const std::string& name)
{
    return io::polyhedron_from_json(io::json::parse(io::read_file(data_path(name))));
}

inline dtp::DualTransportationInstance load_instance(const std::string& name)
{
    return io::instance_from_json(io::json::parse(io::read_file(data_path(name))));
}

inline Vector vec(std::initializer_list<long> xs)
{
    Vector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline IntVector ivec(std::initializer_list<long> xs)
{
    IntVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline Point pt(std::initializer_list<long> xs) { return make_point(xs); }

inline Polyhedron example1() { return load_polyhedron("example1.json"); }
inline Polyhedron example2() { return load_polyhedron("example2.json"); }
inline Polyhedron unit_square() { return load_polyhedron("unit_square.json"); }

// Labels of the hexagon in Example 1, v1..v6 walking around the boundary.
inline Point v1() { return pt({0, 1}); }
inline Point v4() { return pt({5, -1}); }

/// Complete bipartite graph K_{M,N} with left-major edge order.
inline dtp::BipartiteGraph complete_graph(std::size_t M, std::size_t N)
{
    std::vector<dtp::Edge> edges;
    for (std::size_t a = 0; a < M; ++a)
        for (std::size_t b = M; b < M + N; ++b)
            edges.push_back({a, b});
    return dtp::BipartiteGraph(M, N, edges);
}

inline dtp::DualTransportationInstance make_instance(std::size_t M, std::size_t N,
                                                      std::vector<std::pair<std::size_t, std::size_t>> edges,
                                                      Vector costs)
{
    std::vector<dtp::Edge> es;
    for (auto [a, b] : edges)
        es.push_back({a, b});
    return dtp::DualTransportationInstance(dtp::BipartiteGraph(M, N, es), std::move(costs));
}

/**
 * Random polyhedron with small integer rows around the origin: b > 0 keeps
 * the origin interior. Redundant rows are removed. Returns nothing if the
 * draw is rank deficient.
 */
inline std::optional<Polyhedron> random_polyhedron(std::size_t n, std::size_t max_rows, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    std::size_t rows = static_cast<std::size_t>(draw(static_cast<long>(n) + 1, static_cast<long>(max_rows)));
    Matrix A;
    Vector b;
    while (A.size() < rows)
    {
        Vector row;
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j)
        {
            row.emplace_back(draw(-3, 3));
            nonzero = nonzero || !is_zero(row.back());
        }
        if (!nonzero)
            continue;
        A.push_back(row);
        b.emplace_back(draw(1, 6));
    }
    try
    {
        return remove_redundant_rows(Polyhedron(A, b));
    }
    catch (const RankDeficient&)
    {
        return std::nullopt;
    }
}

}  // namespace testing

#endif
