#ifndef CIRCDIAM_REDUNDANCY_HPP
#define CIRCDIAM_REDUNDANCY_HPP

#include <cstddef>
#include <vector>

#include "circdiam/polyhedron.hpp"

namespace circdiam {

/**
 * Whether deleting row i leaves the feasible set of a nonempty P unchanged,
 * i.e. whether max { A_i z : z satisfies the other rows } <= b_i. The maximum
 * is taken over the vertices of the relaxation; it is +infinity if the
 * relaxation is not pointed or has an extreme ray d with A_i d > 0.
 */
bool is_redundant_row(const Polyhedron& P, std::size_t i);

/**
 * Rows removed by a single forward sweep that drops a row whenever it is
 * redundant with respect to the rows still present. Of several identical
 * rows, all but the last survivor are removed.
 */
std::vector<std::size_t> redundant_rows(const Polyhedron& P);

Polyhedron remove_redundant_rows(const Polyhedron& P);

}  // namespace circdiam

#endif
