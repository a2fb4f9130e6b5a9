#ifndef CIRCDIAM_POLYHEDRON_HPP
#define CIRCDIAM_POLYHEDRON_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "circdiam/rational.hpp"

namespace circdiam {

/** A point of R^n with exact coordinates. Ordered lexicographically. */
struct Point
{
    Vector coords;

    Point() = default;
    explicit Point(Vector c) : coords(std::move(c)) {}

    std::size_t dim() const { return coords.size(); }

    friend bool operator==(const Point& lhs, const Point& rhs) { return lhs.coords == rhs.coords; }
    friend bool operator<(const Point& lhs, const Point& rhs)
    {
        return std::lexicographical_compare(lhs.coords.begin(), lhs.coords.end(),
                                            rhs.coords.begin(), rhs.coords.end());
    }
};

/// Convenience for tests and fixtures: a point from integer coordinates.
Point make_point(std::initializer_list<long> coords);

/**
 * The inequality system { z : A z <= b } with d rows and n columns. The
 * constructor rejects mismatched dimensions and matrices of column rank < n,
 * so every Polyhedron is pointed (it has vertices whenever it is nonempty).
 * Redundant rows are allowed.
 */
class Polyhedron
{
    public:
        Polyhedron(Matrix A, Vector b);

        const Matrix& A() const { return A_; }
        const Vector& b() const { return b_; }
        const Vector& row(std::size_t i) const { return A_[i]; }

        std::size_t num_rows() const { return A_.size(); }
        std::size_t dim() const { return n_; }

        /// b_i - A_i y
        Rational slack(std::size_t i, const Point& y) const;
        bool contains(const Point& y) const;

        /// y = Y / d with integer Y and d a multiple of every denominator of
        /// the scaled right-hand side.
        struct ScaledPoint
        {
            std::vector<Integer> Y;
            Integer d;
        };
        ScaledPoint scale(const Point& y) const;

        // Each row is held as L_i A_i <= L_i b_i with L_i clearing the
        // denominators of A_i. The scaled quantities below keep the signs of
        // slack and rate, and slack / rate = scaled_slack / (d * scaled_rate).

        /// d L_i (b_i - A_i y)
        Integer scaled_slack(std::size_t i, const ScaledPoint& y) const;
        /// L_i A_i g
        Integer scaled_rate(std::size_t i, const IntVector& g) const;
        /// L_i A_i g when the scaled row has entries below 2^20 in absolute
        /// value; g must obey the same bound. nullopt otherwise.
        std::optional<long long> small_rate(std::size_t i, const std::vector<long>& g) const;

        /// Same system with the listed rows deleted. May throw RankDeficient.
        Polyhedron without_rows(std::span<const std::size_t> rows) const;

    private:
        struct SparseRow
        {
            std::vector<std::size_t> cols;
            Vector coefs;
            std::vector<Integer> scaled;   ///< L_i times coefs
            std::vector<long> small;       ///< scaled, if all entries fit
            bool is_small = true;
            Rational rhs;                  ///< L_i b_i
            Integer base_rhs;              ///< L_i b_i times base_d_
        };

        Matrix A_;
        Vector b_;
        std::size_t n_;
        std::vector<SparseRow> sparse_;
        Integer base_d_;   ///< lcm of the denominators of all L_i b_i
};

/** Rows with A_i y = b_i. Throws InfeasiblePoint if some row is violated. */
std::vector<std::size_t> tight_rows(const Polyhedron& P, const Point& y);

/** Feasible and tight on n linearly independent rows. */
bool is_vertex(const Polyhedron& P, const Point& y);

/**
 * All vertices, sorted lexicographically (the canonical vertex order). Every
 * n-subset of rows is solved exactly, so this is meant for small systems.
 */
std::vector<Point> enumerate_vertices(const Polyhedron& P);

}  // namespace circdiam

#endif
