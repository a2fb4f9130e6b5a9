#include "circdiam/linalg.hpp"

#include <numeric>
#include <utility>

namespace circdiam {

namespace {

using IntMatrix = std::vector<IntVector>;

IntVector integer_row(const Vector& row)
{
    Integer lcm_den = 1;
    for (const auto& x : row)
        if (!is_zero(x))
            lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
    IntVector out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = Integer(numerator(row[j])) * (lcm_den / Integer(denominator(row[j])));
    return out;
}

/// In-place Bareiss elimination; returns the rank.
std::size_t bareiss_rank(IntMatrix& m, std::size_t cols)
{
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c)
    {
        std::size_t pivot = r;
        while (pivot < m.size() && m[pivot][c] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < m.size(); ++i)
        {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

/// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c)
    {
        std::size_t pivot = r;
        while (pivot < m.size() && is_zero(m[pivot][c]))
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[r], m[pivot]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < m[r].size(); ++j)
            m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i)
        {
            if (i == r || is_zero(m[i][c]))
                continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Matrix& rows, std::size_t cols)
{
    IntMatrix m;
    m.reserve(rows.size());
    for (const auto& row : rows)
        m.push_back(integer_row(row));
    return bareiss_rank(m, cols);
}

std::size_t rank(const Matrix& A, std::span<const std::size_t> row_indices, std::size_t cols)
{
    IntMatrix m;
    m.reserve(row_indices.size());
    for (auto i : row_indices)
        m.push_back(integer_row(A[i]));
    return bareiss_rank(m, cols);
}

std::optional<IntVector> kernel_generator(const Matrix& A, std::span<const std::size_t> row_indices,
                                          std::size_t cols)
{
    Matrix m;
    m.reserve(row_indices.size());
    for (auto i : row_indices)
        m.push_back(A[i]);
    auto pivots = rref(m, cols);
    if (pivots.size() + 1 != cols)
        return std::nullopt;

    // The single free column gets value 1; pivot variables follow from the RREF rows.
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col])
        ++free_col;
    Vector z(cols, Rational(0));
    z[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
        z[pivots[r]] = -m[r][free_col];

    IntVector g = primitive_direction(z);
    for (const auto& x : g)
    {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : g)
                y = -y;
        break;
    }
    return g;
}

std::optional<Vector> solve_square(const Matrix& A, const Vector& b,
                                   std::span<const std::size_t> row_indices)
{
    const std::size_t n = row_indices.size();
    Matrix m;
    m.reserve(n);
    for (auto i : row_indices)
    {
        Vector row = A[i];
        row.push_back(b[i]);
        m.push_back(std::move(row));
    }
    auto pivots = rref(m, n);
    if (pivots.size() != n)
        return std::nullopt;
    Vector z(n);
    for (std::size_t r = 0; r < n; ++r)
        z[r] = m[r][n];
    return z;
}

}  // namespace circdiam
