#ifndef CIRCDIAM_LINALG_HPP
#define CIRCDIAM_LINALG_HPP

#include <optional>
#include <span>

#include "circdiam/rational.hpp"

namespace circdiam {

/**
 * Rank of a rational matrix. Rows are first scaled to integers, then reduced
 * by fraction-free (Bareiss) elimination, so no intermediate fractions occur.
 */
std::size_t rank(const Matrix& rows, std::size_t cols);

/** Rank of the submatrix formed by the given row indices. */
std::size_t rank(const Matrix& A, std::span<const std::size_t> row_indices, std::size_t cols);

/**
 * Generator of the null space of a rank (cols - 1) row set, normalized to
 * coprime integers with its first nonzero entry positive. Returns nullopt
 * if the null space is not one-dimensional.
 */
std::optional<IntVector> kernel_generator(const Matrix& A, std::span<const std::size_t> row_indices,
                                          std::size_t cols);

/** Unique solution of the square system A_I z = b_I, or nullopt if singular. */
std::optional<Vector> solve_square(const Matrix& A, const Vector& b,
                                   std::span<const std::size_t> row_indices);

}  // namespace circdiam

#endif
