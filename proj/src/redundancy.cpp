#include "circdiam/redundancy.hpp"

#include "circdiam/circuits.hpp"
#include "circdiam/errors.hpp"
#include "circdiam/linalg.hpp"

namespace circdiam {

namespace {

Matrix rows_except(const Matrix& A, std::size_t skip)
{
    Matrix out;
    for (std::size_t k = 0; k < A.size(); ++k)
        if (k != skip)
            out.push_back(A[k]);
    return out;
}

}  // namespace

bool is_redundant_row(const Polyhedron& P, std::size_t i)
{
    const std::size_t n = P.dim();
    Matrix others = rows_except(P.A(), i);
    if (others.empty() || rank(others, n) < n)
        return false;   // relaxation has a lineality direction d with A_i d != 0

    Vector b_others;
    for (std::size_t k = 0; k < P.num_rows(); ++k)
        if (k != i)
            b_others.push_back(P.b()[k]);
    Polyhedron relaxed(others, b_others);

    // Extreme rays of { d : A' d <= 0 } are circuits of A' in one of their signs.
    const CircuitSet circuits = enumerate_circuits(others, n);
    for (const auto& g : circuits.items())
    {
        for (int sign : {1, -1})
        {
            SignedCircuit d{g, sign};
            IntVector v = d.vector();
            bool in_cone = true;
            for (const auto& row : others)
                if (dot(row, v) > 0)
                {
                    in_cone = false;
                    break;
                }
            if (in_cone && dot(P.row(i), v) > 0)
                return false;
        }
    }
    for (const auto& v : enumerate_vertices(relaxed))
        if (dot(P.row(i), v.coords) > P.b()[i])
            return false;
    return true;
}

std::vector<std::size_t> redundant_rows(const Polyhedron& P)
{
    std::vector<std::size_t> removed;
    std::vector<std::size_t> kept_index;   // original index of each row in `current`
    for (std::size_t k = 0; k < P.num_rows(); ++k)
        kept_index.push_back(k);
    Polyhedron current = P;
    std::size_t pos = 0;
    while (pos < current.num_rows())
    {
        if (current.num_rows() > 1 && is_redundant_row(current, pos))
        {
            removed.push_back(kept_index[pos]);
            kept_index.erase(kept_index.begin() + static_cast<long>(pos));
            std::size_t drop[] = {pos};
            current = current.without_rows(drop);
        }
        else
        {
            ++pos;
        }
    }
    return removed;
}

Polyhedron remove_redundant_rows(const Polyhedron& P)
{
    auto rows = redundant_rows(P);
    return P.without_rows(rows);
}

}  // namespace circdiam
