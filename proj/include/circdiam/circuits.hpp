#ifndef CIRCDIAM_CIRCUITS_HPP
#define CIRCDIAM_CIRCUITS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "circdiam/polyhedron.hpp"
#include "circdiam/rational.hpp"

namespace circdiam {

/**
 * One representative of a +/- pair of circuits: a nonzero integer vector
 * with coprime entries whose first nonzero entry is positive. Ordered
 * lexicographically by entries; that order is the canonical circuit order.
 */
class CircuitDirection
{
    public:
        /// Throws std::invalid_argument unless `entries` is already canonical.
        explicit CircuitDirection(IntVector entries);

        /**
         * Canonical representative of the ray spanned by a nonzero rational
         * vector, plus the sign (+1/-1) that maps the representative back onto
         * the vector's direction. Returns nullopt for the zero vector.
         */
        static std::optional<std::pair<CircuitDirection, int>> from_vector(const Vector& v);

        const IntVector& entries() const { return entries_; }
        std::size_t dim() const { return entries_.size(); }

        friend bool operator==(const CircuitDirection&, const CircuitDirection&) = default;
        friend bool operator<(const CircuitDirection& lhs, const CircuitDirection& rhs)
        {
            return std::lexicographical_compare(lhs.entries_.begin(), lhs.entries_.end(),
                                                rhs.entries_.begin(), rhs.entries_.end());
        }

    private:
        IntVector entries_;
};

/** A circuit together with the orientation it is traversed in. */
struct SignedCircuit
{
    CircuitDirection circuit;
    int sign = 1;

    /// sign * entries
    IntVector vector() const;
    friend bool operator==(const SignedCircuit&, const SignedCircuit&) = default;
};

std::string to_string(const CircuitDirection& g);
std::string to_string(const SignedCircuit& g);

/** Sorted, duplicate-free collection of canonical circuits with lookup. */
class CircuitSet
{
    public:
        CircuitSet() = default;
        explicit CircuitSet(std::vector<CircuitDirection> circuits);

        const std::vector<CircuitDirection>& items() const { return items_; }
        std::size_t size() const { return items_.size(); }
        bool empty() const { return items_.empty(); }
        const CircuitDirection& operator[](std::size_t i) const { return items_[i]; }

        std::optional<std::size_t> index_of(const CircuitDirection& g) const;
        bool contains(const CircuitDirection& g) const { return index_of(g).has_value(); }

        /**
         * If v is a positive multiple of some +/-g in the set, the matching signed
         * circuit; nullopt otherwise (including v = 0).
         */
        std::optional<SignedCircuit> match_direction(const Vector& v) const;

        friend bool operator==(const CircuitSet&, const CircuitSet&) = default;

    private:
        std::vector<CircuitDirection> items_;
};

/**
 * All circuits of the inequality matrix A (n columns): the kernel generators
 * of every rank-(n-1) set of n-1 rows, filtered to inclusion-minimal supports
 * of A g, deduplicated up to sign. Throws RankDeficient if rank(A) < n.
 */
CircuitSet enumerate_circuits(const Matrix& A, std::size_t n);
inline CircuitSet enumerate_circuits(const Polyhedron& P) { return enumerate_circuits(P.A(), P.dim()); }

/** Row indices i with (A g)_i != 0. */
std::vector<std::size_t> support(const Matrix& A, const IntVector& g);

/** Result of moving from y along a direction as far as feasibility allows. */
struct MaximalStepResult
{
    enum class Kind { Bounded, Unbounded, Blocked };

    Kind kind = Kind::Unbounded;
    Rational alpha;                          ///< step length; meaningful for Bounded
    std::vector<std::size_t> blocking_rows;  ///< rows newly tight at y + alpha g

    bool bounded() const { return kind == Kind::Bounded; }
};

/**
 * Ratio test: alpha = min over rows with A_i g > 0 of (b_i - A_i y) / (A_i g).
 * Throws InfeasiblePoint if y violates a row.
 */
MaximalStepResult maximal_step(const Polyhedron& P, const Point& y, const IntVector& direction);
MaximalStepResult maximal_step(const Polyhedron& P, const Point& y, const SignedCircuit& g);

/// y + alpha * g
Point advance(const Point& y, const Rational& alpha, const IntVector& g);

}  // namespace circdiam

#endif
