#include "toric/kahler.h"
#include "toric/errors.h"
#include <cmath>

namespace toric {
namespace kahler {

namespace {

Eigen::VectorXd interiorForms(const PotentialContext& ctx, const Eigen::VectorXd& xi, const char* who)
{
    Eigen::VectorXd L = ctx.halfspaces().affine_forms(xi);
    if(!(L.minCoeff() > 0))
        throw DomainError(std::string(who) + ": point is not in the interior of the polytope");
    return L;
}

/// log(1 + e^t) without overflow
double log1pexp(double t)
{
    return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

}  // internal namespace

PotentialContext::PotentialContext(const polytope::HalfSpaceSet& hs) :
    PotentialContext(hs, polytope::enumerate_vertices(hs)) {}

PotentialContext::PotentialContext(const ToricModel& model) :
    PotentialContext(model.halfspaces(), model.vertices()) {}

PotentialContext::PotentialContext(const polytope::HalfSpaceSet& h, const std::vector<VertexRecord>& vertices) :
    hs(h)
{
    Eigen::VectorXd sigma = hs.normalsDouble().rowwise().sum();
    c = 0.5 * (1 - std::log(2.0)) * sigma;
    if(hs.bounded() && !vertices.empty()) {
        start = Eigen::VectorXd::Zero(hs.n());
        for(const VertexRecord& v : vertices) start += v.xi;
        start /= static_cast<double>(vertices.size());
    } else {
        start = hs.interiorPoint();
    }
}

double G_value(const PotentialContext& ctx, const Eigen::VectorXd& xi)
{
    Eigen::VectorXd L = ctx.halfspaces().affine_forms(xi);
    double sum = 0;
    for(Eigen::Index j = 0; j < L.size(); j++) {
        if(L(j) < -polytope::DEFAULT_TOL)
            throw DomainError("G_value: point lies outside the polytope (L_" + std::to_string(j + 1) +
                " = " + std::to_string(L(j)) + ")");
        if(L(j) > 0) sum += L(j) * std::log(L(j));
    }
    return 0.5 * sum;
}

Eigen::VectorXd grad_G(const PotentialContext& ctx, const Eigen::VectorXd& xi)
{
    Eigen::VectorXd L = interiorForms(ctx, xi, "grad_G");
    Eigen::VectorXd w = (L.array().log() + 1).matrix();
    return 0.5 * ctx.halfspaces().normalsDouble() * w;
}

Eigen::VectorXd grad_G_calibrated(const PotentialContext& ctx, const Eigen::VectorXd& xi)
{
    return grad_G(ctx, xi) - ctx.calibration();
}

Eigen::MatrixXd hess_G(const PotentialContext& ctx, const Eigen::VectorXd& xi)
{
    Eigen::VectorXd L = interiorForms(ctx, xi, "hess_G");
    const Eigen::MatrixXd& V = ctx.halfspaces().normalsDouble();
    return 0.5 * V * L.cwiseInverse().asDiagonal() * V.transpose();
}

Eigen::MatrixXd hess_F_at(const PotentialContext& ctx, const Eigen::VectorXd& xi)
{
    Eigen::MatrixXd H = hess_G(ctx, xi);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
    double lmin = eig.eigenvalues().minCoeff(), lmax = eig.eigenvalues().maxCoeff();
    if(!(lmin > 0) || lmax > 1e14 * lmin)
        throw ConditioningError("hess_F_at: Hess G has condition number above 1e14");
    return eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::VectorXd legendre_to_xi(const PotentialContext& ctx, const Eigen::VectorXd& x, const LegendreOptions& opts)
{
    const polytope::HalfSpaceSet& hs = ctx.halfspaces();
    if(static_cast<std::size_t>(x.size()) != hs.n())
        throw ShapeError("legendre_to_xi: x has dimension " + std::to_string(x.size()) +
            ", expected " + std::to_string(hs.n()));
    if(!x.allFinite())
        throw DomainError("legendre_to_xi: x has non-finite entries");
    const Eigen::MatrixXd& V = hs.normalsDouble();
    const Eigen::VectorXd target = x + ctx.calibration();
    // minimize phi(xi) = G(xi) - <x + c, xi>, whose gradient is grad_G_calibrated(xi) - x
    auto phi = [&](const Eigen::VectorXd& L, const Eigen::VectorXd& xi) {
        return 0.5 * (L.array() * L.array().log()).sum() - target.dot(xi);
    };
    // Newton data at L: gradient, step -H^{-1} g from a Jacobi-scaled Cholesky solve, decrement -g.step
    struct Newton {
        Eigen::VectorXd g, step;
        double decrement;
    };
    auto newton = [&](const Eigen::VectorXd& L) {
        Newton nd;
        nd.g = 0.5 * V * (L.array().log() + 1).matrix() - target;
        Eigen::MatrixXd H = 0.5 * V * L.cwiseInverse().asDiagonal() * V.transpose();
        Eigen::VectorXd scale = H.diagonal().cwiseSqrt().cwiseInverse();
        Eigen::MatrixXd Hs = scale.asDiagonal() * H * scale.asDiagonal();
        nd.step = -scale.cwiseProduct(Hs.llt().solve(scale.cwiseProduct(nd.g)));
        nd.decrement = -nd.g.dot(nd.step);
        return nd;
    };
    Eigen::VectorXd xi = ctx.startPoint();
    Eigen::VectorXd L = hs.affine_forms(xi);
    Newton nd = newton(L);
    double lastStep = INFINITY;
    for(int it = 0; it < opts.maxIterations; it++) {
        double stepSize = nd.step.lpNorm<Eigen::Infinity>();
        double xiScale = std::max(1.0, xi.lpNorm<Eigen::Infinity>());
        if(nd.g.lpNorm<Eigen::Infinity>() <= opts.tol)
            return xi;
        // the Newton step estimates the remaining error in xi
        if(stepSize <= opts.tol * xiScale) {
            Eigen::VectorXd xiNew = xi + nd.step;
            return hs.affine_forms(xiNew).minCoeff() > 0 ? xiNew : xi;
        }
        Eigen::VectorXd dL = V.transpose() * nd.step;
        // fraction to the boundary: keep every L_j at least 1% of its current value
        double alpha = 1;
        for(Eigen::Index j = 0; j < L.size(); j++)
            if(dL(j) < 0) alpha = std::min(alpha, 0.99 * L(j) / -dL(j));
        double phi0 = phi(L, xi);
        bool accepted = false;
        Eigen::VectorXd xiNew, LNew;
        Newton ndNew;
        for(int h = 0; h < 60 && !accepted; h++, alpha *= 0.5) {
            xiNew = xi + alpha * nd.step;
            LNew = hs.affine_forms(xiNew);
            if(!(LNew.minCoeff() > 0)) continue;
            ndNew = newton(LNew);
            accepted = phi(LNew, xiNew) <= phi0 - 1e-4 * alpha * nd.decrement ||
                ndNew.decrement <= (1 - 1e-4 * alpha) * nd.decrement;
        }
        if(!accepted) {
            if(std::min(stepSize, lastStep) <= 100 * opts.tol * xiScale) return xi;
            break;
        }
        lastStep = stepSize;
        xi = xiNew;
        L = LNew;
        nd = ndNew;
    }
    double res = nd.g.lpNorm<Eigen::Infinity>();
    double rounding = 1e-13 * (hs.offsets().cwiseAbs().maxCoeff() + V.cwiseAbs().colwise().sum().maxCoeff() *
        std::max(1.0, xi.lpNorm<Eigen::Infinity>()));
    if(L.minCoeff() <= rounding)
        throw ConditioningError("legendre_to_xi: the image of x lies within rounding distance of the boundary "
            "(min L = " + std::to_string(L.minCoeff()) + ")");
    throw SolverError("legendre_to_xi: no convergence, residual " + std::to_string(res), res);
}

double F_value(const PotentialContext& ctx, const Eigen::VectorXd& x, const LegendreOptions& opts)
{
    Eigen::VectorXd xi = legendre_to_xi(ctx, x, opts);
    return (x + ctx.calibration()).dot(xi) - G_value(ctx, xi);
}

Eigen::MatrixXd metric_matrix(const PotentialContext& ctx, const Eigen::VectorXd& xi, Frame frame)
{
    const Eigen::Index n = xi.size();
    Eigen::MatrixXd HF = hess_F_at(ctx, xi);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    M.topLeftCorner(n, n) = frame == Frame::ActionAngle ? hess_G(ctx, xi) : HF;
    M.bottomRightCorner(n, n) = HF;
    return M;
}

Eigen::MatrixXd symplectic_matrix(const PotentialContext& ctx, const Eigen::VectorXd& xi, Frame frame)
{
    const Eigen::Index n = xi.size();
    Eigen::MatrixXd block = frame == Frame::ActionAngle ?
        Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)) : hess_F_at(ctx, xi);
    if(frame == Frame::ActionAngle)
        interiorForms(ctx, xi, "symplectic_matrix");
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    W.topRightCorner(n, n) = block;
    W.bottomLeftCorner(n, n) = -block;
    return W;
}

namespace {

/// normalized weights e^{2mx} / sum, computed with the largest exponent factored out
Eigen::VectorXd fultonWeights(int k, double x)
{
    if(k < 1)
        throw DomainError("fulton: k must be a positive integer");
    Eigen::VectorXd e(k + 1);
    for(int m = 0; m <= k; m++) e(m) = 2.0 * m * x;
    e = (e.array() - e.maxCoeff()).exp();
    return e / e.sum();
}

}  // internal namespace

double fulton_potential_P1(int k, double x)
{
    if(k < 1)
        throw DomainError("fulton_potential_P1: k must be a positive integer");
    double top = x > 0 ? 2.0 * k * x : 0;
    double s = 0;
    for(int m = 0; m <= k; m++) s += std::exp(2.0 * m * x - top);
    return 0.5 * (top + std::log(s));
}

double fulton_moment_P1(int k, double x)
{
    Eigen::VectorXd w = fultonWeights(k, x);
    double mean = 0;
    for(int m = 0; m <= k; m++) mean += m * w(m);
    return mean;
}

double fulton_potential_P1_d2(int k, double x)
{
    Eigen::VectorXd w = fultonWeights(k, x);
    double mean = 0, second = 0;
    for(int m = 0; m <= k; m++) {
        mean += m * w(m);
        second += static_cast<double>(m) * m * w(m);
    }
    return 2 * (second - mean * mean);
}

double reduction_potential_P1(double a, double x)
{
    return 0.5 * a * log1pexp(2 * x);
}

double reduction_potential_P1_d2(double a, double x)
{
    // 2a e^{2x} / (1 + e^{2x})^2 = a / (2 cosh^2 x)
    double ch = std::cosh(x);
    return a / (2 * ch * ch);
}

}  // namespace kahler
}  // namespace toric
