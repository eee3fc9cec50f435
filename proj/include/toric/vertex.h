/** \file    vertex.h
    \brief   Vertex record shared by the polytope and lattice modules
*/
#pragma once
#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace toric {

/** A vertex of the moment polytope.
    Indices in `active` are zero-based facet numbers, sorted increasingly.
    A simple vertex has exactly n active facets; a degenerate one has more.
*/
struct VertexRecord {
    Eigen::VectorXd xi;                 ///< location in R^n
    std::vector<std::size_t> active;    ///< facets j with L_j(xi) = 0

    bool simple() const { return active.size() == static_cast<std::size_t>(xi.size()); }
};

}  // namespace toric
