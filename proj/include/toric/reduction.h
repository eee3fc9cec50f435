/** \file    reduction.h
    \brief   Moment maps on C^d and the retraction onto the level set of the subtorus

    The subtorus N acts on C^d through the columns of Q: (rho(lambda) z)_k = prod_l lambda_l^{Q_kl} z_k.
    Its moment map is mu_N(z)_l = 1/2 sum_k Q_kl |z_k|^2. Every point of U_a has a unique positive
    rescaling lambda with mu_N(rho(lambda) z) = a; the moment map of the quotient is
    xi = A^T (1/2 |R_a z|^2 + kappa).
*/
#pragma once
#include "toric/model.h"
#include <complex>

namespace toric {
namespace reduction {

/// entries with smaller modulus are treated as exact zeros for U_a membership
constexpr double ZERO_THRESHOLD = 1e-300;

/// (1/2 |z_1|^2, ..., 1/2 |z_d|^2)
Eigen::VectorXd moment_Td(const Eigen::VectorXcd& z);

/// 1/2 Q^T |z|^2
Eigen::VectorXd moment_N(const Eigen::VectorXcd& z, const IntegerMatrix& Q);

/// action of lambda in (C^*)^{d-n} on z through the weights Q
Eigen::VectorXcd act_N(const Eigen::VectorXcd& z, const IntegerMatrix& Q, const Eigen::VectorXcd& lambda);

/// z belongs to U_a: the facets indexed by its zero coordinates meet in a face of the polytope
bool in_Ua(const Eigen::VectorXcd& z, const std::vector<VertexRecord>& vertices);
bool in_Ua(const Eigen::VectorXcd& z, const ToricModel& model);

struct RetractionOptions {
    double tol = 1e-12;          ///< target residual, relative to max(1, |a|_inf, largest term of mu_N)
    int maxIterations = 200;
    double conditionLimit = 1e12;
    double maxStep = 20;         ///< cap on the Newton step in log-scaling coordinates
};

struct RetractionResult {
    Eigen::VectorXd lambda;         ///< positive scaling, length d-n
    Eigen::VectorXcd scaled_point;  ///< rho(lambda) z, on the level set
    double residual = 0;            ///< |mu_N(scaled_point) - a|_inf
    int iterations = 0;
    int fallbackSteps = 0;          ///< Newton steps whose system was regularized
};

/// retraction R_a; throws DomainError outside U_a and SolverError on non-convergence
RetractionResult retract(const Eigen::VectorXcd& z, const ToricModel& model,
    const RetractionOptions& opts = RetractionOptions());

/// moment map of the quotient at the class of z
Eigen::VectorXd moment_map(const Eigen::VectorXcd& z, const ToricModel& model,
    const RetractionOptions& opts = RetractionOptions());

/// closed form on P^n: xi = a (|z_1|^2, ..., |z_n|^2) / |z|^2; z has n+1 entries
Eigen::VectorXd moment_map_closed_Pn(const Eigen::VectorXcd& z, double a);

/** Positive root delta = x - 2a of x^{n+2} - 2a x^{n+1} = (n+1) |z|^{2(n+1)} |p|^2,
    given log|z|^2 and log|p|^2 (so that extreme magnitudes do not overflow).
*/
double kpn_excess(std::size_t n, double a, double logZ2, double logP2);

/// closed-form moment map of K_{P^n} in the straight basis; z has n+1 entries
Eigen::VectorXd moment_map_closed_KPn(const Eigen::VectorXcd& z, std::complex<double> p, double a);

/// lambda^2 for K_{P^1} from the radical solution of the cubic; z has 2 entries
double cardano_lambda_KP1(const Eigen::VectorXcd& z, std::complex<double> p, double a);

/// g - 2a for K_{P^1} from the same radical solution, evaluated without cancellation
double cardano_excess_KP1(const Eigen::VectorXcd& z, std::complex<double> p, double a);

}  // namespace reduction
}  // namespace toric
