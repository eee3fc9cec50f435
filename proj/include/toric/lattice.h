/** \file    lattice.h
    \brief   Exact integer data of a toric quotient presentation

    A presentation of a toric manifold of complex dimension n is given by an n x d integer
    matrix B whose columns v^1..v^d are the inward facet normals, a d x (d-n) matrix Q whose
    columns span ker B over Z, and a right inverse A (B A = I_n). Together with the facet
    offsets kappa and the level a = -Q^T kappa, this is everything needed to realize the
    quotient and its moment polytope.
*/
#pragma once
#include "toric/integer_matrix.h"
#include "toric/vertex.h"
#include <optional>
#include <string>
#include <vector>

namespace toric {

/// basis convention used when extending a presentation to its canonical bundle
enum class CanonicalConvention {
    AllOnes,   ///< last row of B+ is (1,...,1,1)
    Straight   ///< last row of B+ vanishes on the anchor columns
};

/// Full quotient datum; construct through lattice::make_presentation to get a validated object
struct ToricPresentation {
    std::string name;
    IntegerMatrix B;         ///< n x d facet normals
    IntegerMatrix Q;         ///< d x (d-n) kernel basis
    IntegerMatrix A;         ///< d x n right inverse of B
    Eigen::VectorXd kappa;   ///< facet offsets, length d
    Eigen::VectorXd a;       ///< level -Q^T kappa, length d-n
    bool canonicalBundle = false;   ///< presentation of a canonical bundle; the last coordinate is the fiber
    CanonicalConvention convention = CanonicalConvention::AllOnes;  ///< meaningful only for canonical bundles

    std::size_t d() const { return B.cols(); }
    std::size_t n() const { return B.rows(); }
};

namespace lattice {

/// U M V = [D | 0] with U, V unimodular and D diagonal with nonnegative divisibility-ordered entries
struct SmithDecomposition {
    IntegerMatrix U, V;
    std::vector<Integer> diagonal;   ///< nonzero invariant factors, in order
    std::size_t rank() const { return diagonal.size(); }
};

/// Smith decomposition of an arbitrary integer matrix with a deterministic pivot order
SmithDecomposition smith_decomposition(const IntegerMatrix& M);

/// outcome of check_exact_pair; every flag must hold for a valid presentation
struct ExactPairReport {
    bool BQ_zero = false;
    std::size_t rank_Q = 0;
    bool Q_full_rank = false;
    bool Q_saturated = false;          ///< Q spans a saturated sublattice
    bool B_surjective = false;         ///< Smith diagonal of B is all ones
    std::vector<Integer> smith_B;
    std::vector<std::size_t> nonprimitive_columns;   ///< zero-based
    bool pass() const {
        return BQ_zero && Q_full_rank && Q_saturated && B_surjective && nonprimitive_columns.empty();
    }
};

/// checks B Q = 0, rank Q = d-n, surjectivity of B and primitivity of its columns
ExactPairReport check_exact_pair(const IntegerMatrix& B, const IntegerMatrix& Q);

/// Z-basis of ker B as the columns of a d x (d-n) matrix; throws RankError unless B has full row rank
IntegerMatrix kernel_basis(const IntegerMatrix& B);

/// integral A with B A = I_n; throws NonSmoothError when B is not surjective over Z
IntegerMatrix right_inverse(const IntegerMatrix& B);

/// vertex-adapted right inverse: P = (B restricted to J_v)^{-1} and A with P in rows J_v
struct VertexInverse {
    IntegerMatrix A;
    IntegerMatrix P;
};
VertexInverse vertex_right_inverse(const IntegerMatrix& B, const std::vector<std::size_t>& Jv);

/** Assemble and validate a presentation. Q and A are derived when not supplied; supplied
    matrices are checked. Throws ShapeError, RankError or NonSmoothError on invalid data.
*/
ToricPresentation make_presentation(const std::string& name, const IntegerMatrix& B,
    const std::optional<IntegerMatrix>& Q, const std::optional<IntegerMatrix>& A,
    const Eigen::VectorXd& kappa);

/** Presentation of the canonical bundle: d+1 coordinates, dimension n+1, kappa+ = (kappa, 0).
    The straight convention uses the vertex-adapted basis at `anchor` (zero-based);
    by default the lexicographically smallest set of n columns forming a Z-basis.
*/
ToricPresentation extend_to_canonical(const ToricPresentation& pres,
    CanonicalConvention convention = CanonicalConvention::AllOnes,
    const std::optional<std::vector<std::size_t>>& anchor = std::nullopt);

/// lexicographically smallest n-subset of columns with |det| = 1; throws NonSmoothError if none
std::vector<std::size_t> default_anchor(const IntegerMatrix& B);

/// per-vertex smoothness information
struct VertexDet {
    std::vector<std::size_t> active;
    Eigen::VectorXd xi;
    Integer det = 0;        ///< determinant of the normals at a simple vertex, 0 for degenerate ones
    bool smooth = false;
};

struct DelzantReport {
    std::vector<VertexDet> vertices;
    bool simple = true;
    bool rational = true;
    bool smooth = true;
    bool pass() const { return simple && rational && smooth && !vertices.empty(); }
};

/// simplicity, rationality and smoothness of the polytope with the given vertices
DelzantReport delzant_check(const IntegerMatrix& B, const std::vector<VertexRecord>& vertices);

}  // namespace lattice
}  // namespace toric
