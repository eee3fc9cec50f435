/** \file    kahler.h
    \brief   Guillemin potential on the polytope and its Legendre dual

    G(xi) = 1/2 sum_j L_j(xi) log L_j(xi) is a strictly convex function on the interior of the
    polytope. Its gradient x = grad G(xi) - c (with the calibration c described below) is a
    diffeomorphism onto R^n whose inverse is the gradient of the Kahler potential F(x).

    The calibration c_m = 1/2 (1 - log 2) sigma_m, with sigma_m the m-th row sum of B, makes
    x coincide with log|beta(z)| at xi = mu(z) when the moment map is built from |z|^2/2.
*/
#pragma once
#include "toric/model.h"

namespace toric {
namespace kahler {

/// coordinates on the dense torus part
enum class Frame {
    ActionAngle,   ///< (xi, theta)
    Complex        ///< (x, theta) with t = exp(x + i theta)
};

class PotentialContext {
public:
    explicit PotentialContext(const polytope::HalfSpaceSet& hs);
    explicit PotentialContext(const ToricModel& model);

    const polytope::HalfSpaceSet& halfspaces() const { return hs; }
    const Eigen::VectorXd& calibration() const { return c; }
    /// starting point of the Legendre inversion
    const Eigen::VectorXd& startPoint() const { return start; }

private:
    PotentialContext(const polytope::HalfSpaceSet& hs, const std::vector<VertexRecord>& vertices);
    polytope::HalfSpaceSet hs;
    Eigen::VectorXd c;
    Eigen::VectorXd start;
};

/// G on the closed polytope (0 log 0 = 0); throws DomainError outside
double G_value(const PotentialContext& ctx, const Eigen::VectorXd& xi);

/// grad G = 1/2 sum_j v^j (log L_j + 1); interior points only
Eigen::VectorXd grad_G(const PotentialContext& ctx, const Eigen::VectorXd& xi);

/// grad G - c
Eigen::VectorXd grad_G_calibrated(const PotentialContext& ctx, const Eigen::VectorXd& xi);

/// Hess G = 1/2 sum_j v^j v^j^T / L_j
Eigen::MatrixXd hess_G(const PotentialContext& ctx, const Eigen::VectorXd& xi);

/// inverse of Hess G at xi, i.e. Hess F at x(xi); throws ConditioningError above condition 1e14
Eigen::MatrixXd hess_F_at(const PotentialContext& ctx, const Eigen::VectorXd& xi);

struct LegendreOptions {
    double tol = 1e-12;
    int maxIterations = 200;
};

/// the interior point with grad_G_calibrated(xi) = x, accurate in xi to about tol;
/// throws ConditioningError when that point is closer to the boundary than double rounding can resolve
Eigen::VectorXd legendre_to_xi(const PotentialContext& ctx, const Eigen::VectorXd& x,
    const LegendreOptions& opts = LegendreOptions());

/// F(x) = <x + c, xi(x)> - G(xi(x)), so that grad F = xi(x)
double F_value(const PotentialContext& ctx, const Eigen::VectorXd& x,
    const LegendreOptions& opts = LegendreOptions());

/// Riemannian metric at the interior point xi, written in the given frame
Eigen::MatrixXd metric_matrix(const PotentialContext& ctx, const Eigen::VectorXd& xi, Frame frame);

/// symplectic form at the interior point xi, written in the given frame
Eigen::MatrixXd symplectic_matrix(const PotentialContext& ctx, const Eigen::VectorXd& xi, Frame frame);

/// 1/2 log sum_{m=0}^k e^{2 m x}
double fulton_potential_P1(int k, double x);
/// derivative of fulton_potential_P1, a weighted mean of 0..k
double fulton_moment_P1(int k, double x);
/// second derivative of fulton_potential_P1
double fulton_potential_P1_d2(int k, double x);

/// (a/2) log(1 + e^{2x}), the potential of P^1 at level a obtained by reduction
double reduction_potential_P1(double a, double x);
/// second derivative of reduction_potential_P1
double reduction_potential_P1_d2(double a, double x);

}  // namespace kahler
}  // namespace toric
