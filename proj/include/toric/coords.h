/** \file    coords.h
    \brief   Vertex charts, torus coordinates, action-angle coordinates and the superpotential
*/
#pragma once
#include "toric/kahler.h"
#include <complex>

namespace toric {
namespace coords {

/** Affine chart at a smooth vertex.
    With P the inverse of the normals at the vertex, the chart coordinates are the monomials
    y_k = prod_j z_j^{E_kj} for the exponent matrix E = P B; E restricted to the vertex columns is I.
*/
struct Chart {
    std::vector<std::size_t> vertex;   ///< zero-based facet indices, in basis order
    IntegerMatrix P;
    IntegerMatrix exponents;
};

/// chart at the vertex with the given ordered facet set; throws NonSmoothError if |det| != 1
Chart make_chart(const IntegerMatrix& B, const std::vector<std::size_t>& vertex);

/// one chart per smooth vertex of the model, in vertex order
std::vector<Chart> atlas(const ToricModel& model);

/// chart coordinates of z; throws DomainError if z vanishes off the vertex facets
Eigen::VectorXcd to_chart(const Eigen::VectorXcd& z, const Chart& chart);

/// exponent matrix D of the change of charts: y_to_k = prod_j y_from_j^{D_kj}
IntegerMatrix transition_exponents(const IntegerMatrix& B, const Chart& from, const Chart& to);

/// change of chart coordinates; throws DomainError outside the overlap
Eigen::VectorXcd transition(const Eigen::VectorXcd& y, const IntegerMatrix& B, const Chart& from, const Chart& to);

struct FiberTransition {
    Eigen::VectorXcd base;        ///< base coordinates in the target chart
    std::complex<double> fiber;   ///< fiber coordinate in the target chart
    Chart target;                 ///< target chart after orientation normalization
    bool reordered = false;       ///< the first two target normals were interchanged
};

/** Change of charts on the canonical bundle over the base charts `from` and `to` of B.
    The fiber coordinate transforms as y_q' = y_q prod_j y_j^{1 - sum_k D_kj}.
    When det D = -1 and n >= 2 the first two normals of the target are interchanged first.
*/
FiberTransition km_fiber_transition(const Eigen::VectorXcd& y, std::complex<double> yq,
    const IntegerMatrix& B, const Chart& from, const Chart& to);

/// t_m = prod_j z_j^{B_mj}; throws DomainError if some z_j = 0
Eigen::VectorXcd torus_coords(const Eigen::VectorXcd& z, const IntegerMatrix& B);

/// z_k = prod_m t_m^{A_km}
Eigen::VectorXcd torus_to_homogeneous(const Eigen::VectorXcd& t, const IntegerMatrix& A);

struct ActionAnglePoint {
    Eigen::VectorXd xi;
    Eigen::VectorXd theta;   ///< in [0, 2 pi)
};

/// angle reduced to [0, 2 pi)
double wrap_angle(double theta);
/// distance between two angles on the circle, in [0, pi]
double angle_distance(double a, double b);

/// action-angle coordinates of a point of the dense orbit
ActionAnglePoint action_angle(const Eigen::VectorXcd& z, const ToricModel& model);

/// homogeneous representative of the point with the given action-angle coordinates
Eigen::VectorXcd from_action_angle(const ActionAnglePoint& aa, const ToricModel& model,
    const kahler::PotentialContext& ctx);

/// z_1 ... z_d p on the homogeneous coordinates of a canonical bundle
std::complex<double> superpotential_homog(const Eigen::VectorXcd& z, const ToricModel& model);

/// exp(x_{n+1} + i theta_{n+1}); requires a canonical bundle whose last row of B is all ones
std::complex<double> superpotential_aa(const ActionAnglePoint& aa, const ToricModel& model,
    const kahler::PotentialContext& ctx);

}  // namespace coords
}  // namespace toric
