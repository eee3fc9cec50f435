/** \file    polytope.h
    \brief   Moment polytope described by facet inequalities
*/
#pragma once
#include "toric/integer_matrix.h"
#include "toric/vertex.h"
#include <vector>

namespace toric {
namespace polytope {

/// default feasibility tolerance for vertices and classification
constexpr double DEFAULT_TOL = 1e-9;

/** The polyhedron Delta = { xi : <v^j, xi> - kappa_j >= 0 for all j }.
    Normals are the columns of B. Construction checks that the normals are primitive
    and that Delta has a nonempty interior.
*/
class HalfSpaceSet {
public:
    HalfSpaceSet(const IntegerMatrix& B, const Eigen::VectorXd& kappa);

    std::size_t n() const { return B.rows(); }
    std::size_t d() const { return B.cols(); }
    const IntegerMatrix& normals() const { return B; }
    const Eigen::MatrixXd& normalsDouble() const { return Bd; }
    const Eigen::VectorXd& offsets() const { return kappa; }

    /// L(xi)_j = <v^j, xi> - kappa_j
    Eigen::VectorXd affine_forms(const Eigen::VectorXd& xi) const;

    /// a point maximizing the distance to the facets (distance capped at 1)
    const Eigen::VectorXd& interiorPoint() const { return center; }
    double inradius() const { return radius; }

    /// true if Delta is compact
    bool bounded() const { return isBounded; }

private:
    IntegerMatrix B;
    Eigen::MatrixXd Bd;
    Eigen::VectorXd kappa;
    Eigen::VectorXd center;
    double radius;
    bool isBounded;
};

/// kappa with Q^T kappa = -a and kappa_j = 0 on the (zero-based) anchor set; throws AnchorError
Eigen::VectorXd kappa_from_level(const IntegerMatrix& Q, const Eigen::VectorXd& a,
    const std::vector<std::size_t>& anchor);

/** All vertices of Delta, sorted lexicographically by active set.
    Each vertex is computed exactly from the n x n active system (rational arithmetic),
    kept when every L_j >= -tol, and labelled by all facets with |L_j| <= tol.
    A vertex with more than n active facets is returned once with its full active set.
*/
std::vector<VertexRecord> enumerate_vertices(const HalfSpaceSet& hs, double tol = DEFAULT_TOL);

enum class Region { Interior, Boundary, Outside };

struct Classification {
    Region region;
    std::vector<std::size_t> face;   ///< facets with |L_j| <= tol (boundary points only)
};

Classification classify(const HalfSpaceSet& hs, const Eigen::VectorXd& xi, double tol = DEFAULT_TOL);

const char* region_name(Region r);

/// result of a dense linear program
struct LPResult {
    enum Status { Optimal, Infeasible, Unbounded } status;
    Eigen::VectorXd x;
    double value = 0;
};

/** minimize c^T x subject to Aeq x = beq, Aub x <= bub, x >= 0.
    Two-phase tableau simplex with Bland's rule; intended for small problems.
*/
LPResult linear_program(const Eigen::VectorXd& c,
    const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq,
    const Eigen::MatrixXd& Aub, const Eigen::VectorXd& bub);

}  // namespace polytope
}  // namespace toric
