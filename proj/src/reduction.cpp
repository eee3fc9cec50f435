#include "toric/reduction.h"
#include "toric/errors.h"
#include "toric/log.h"
#include <algorithm>
#include <cmath>
#include <limits>

namespace toric {
namespace reduction {

Eigen::VectorXd moment_Td(const Eigen::VectorXcd& z)
{
    return 0.5 * z.cwiseAbs2();
}

Eigen::VectorXd moment_N(const Eigen::VectorXcd& z, const IntegerMatrix& Q)
{
    if(static_cast<std::size_t>(z.size()) != Q.rows())
        throw ShapeError("moment_N: point has " + std::to_string(z.size()) + " coordinates, Q has " +
            std::to_string(Q.rows()) + " rows");
    return Q.toDouble().transpose() * moment_Td(z);
}

Eigen::VectorXcd act_N(const Eigen::VectorXcd& z, const IntegerMatrix& Q, const Eigen::VectorXcd& lambda)
{
    if(static_cast<std::size_t>(z.size()) != Q.rows() || static_cast<std::size_t>(lambda.size()) != Q.cols())
        throw ShapeError("act_N: dimensions do not match Q");
    Eigen::VectorXcd w = z;
    for(std::size_t k = 0; k < Q.rows(); k++)
        for(std::size_t l = 0; l < Q.cols(); l++)
            if(Q(k, l) != 0)
                w(k) *= std::pow(lambda(l), Q(k, l).convert_to<int>());
    return w;
}

bool in_Ua(const Eigen::VectorXcd& z, const std::vector<VertexRecord>& vertices)
{
    std::vector<std::size_t> J;
    for(Eigen::Index j = 0; j < z.size(); j++)
        if(std::abs(z(j)) < ZERO_THRESHOLD) J.push_back(j);
    if(J.empty()) return true;
    for(const VertexRecord& v : vertices)
        if(std::includes(v.active.begin(), v.active.end(), J.begin(), J.end()))
            return true;
    return false;
}

bool in_Ua(const Eigen::VectorXcd& z, const ToricModel& model)
{
    return in_Ua(z, model.vertices());
}

RetractionResult retract(const Eigen::VectorXcd& z, const ToricModel& model, const RetractionOptions& opts)
{
    const ToricPresentation& pres = model.presentation();
    const std::size_t d = pres.d(), k = pres.Q.cols();
    if(static_cast<std::size_t>(z.size()) != d)
        throw ShapeError("retract: point has " + std::to_string(z.size()) + " coordinates, expected " +
            std::to_string(d));
    if(!z.allFinite())
        throw DomainError("retract: point has non-finite entries");
    if(!in_Ua(z, model))
        throw DomainError("retract: point is not in U_a (its zero coordinates do not index a face)");

    const Eigen::MatrixXd Q = pres.Q.toDouble();
    const Eigen::VectorXd& a = pres.a;
    Eigen::VectorXd logw(d);
    for(std::size_t j = 0; j < d; j++)
        logw(j) = std::abs(z(j)) >= ZERO_THRESHOLD ? 2 * std::log(std::abs(z(j))) :
            -std::numeric_limits<double>::infinity();

    // e_k = exp(2 (Q s)_k) |z_k|^2 ;  r = 1/2 Q^T e - a
    auto evaluate = [&](const Eigen::VectorXd& s, Eigen::VectorXd& e, Eigen::VectorXd& r) {
        Eigen::VectorXd t = 2 * (Q * s);
        e.resize(d);
        for(std::size_t j = 0; j < d; j++)
            e(j) = std::isinf(logw(j)) ? 0 : std::exp(t(j) + logw(j));
        r = 0.5 * Q.transpose() * e - a;
    };

    // convergence target, relative to the largest term |Q_kl| e_k entering the residual
    const Eigen::MatrixXd Qabs = Q.cwiseAbs();
    const double scale = std::max(1.0, a.lpNorm<Eigen::Infinity>());
    auto target = [&](const Eigen::VectorXd& e) {
        return opts.tol * std::max(scale, 0.5 * (Qabs.transpose() * e).maxCoeff());
    };
    Eigen::VectorXd s = Eigen::VectorXd::Zero(k), e, r;
    evaluate(s, e, r);
    // r is the gradient and Q^T E Q the Hessian of the convex potential phi(s) = 1/4 sum e_k - <a, s>
    auto potential = [&](const Eigen::VectorXd& sv, const Eigen::VectorXd& ev) { return 0.25 * ev.sum() - a.dot(sv); };
    RetractionResult res;
    double phi = potential(s, e);
    while(k > 0 && r.lpNorm<Eigen::Infinity>() > target(e)) {
        if(res.iterations >= opts.maxIterations)
            throw SolverError("retract: no convergence after " + std::to_string(opts.maxIterations) +
                " iterations, residual " + std::to_string(r.lpNorm<Eigen::Infinity>()),
                r.lpNorm<Eigen::Infinity>());
        Eigen::MatrixXd J = Q.transpose() * e.asDiagonal() * Q;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
        Eigen::VectorXd lam = eig.eigenvalues();
        const double floor = lam.maxCoeff() / opts.conditionLimit;
        bool regularized = false;
        for(Eigen::Index i = 0; i < lam.size(); i++)
            if(!(lam(i) >= floor)) {
                lam(i) = floor;
                regularized = true;
            }
        Eigen::VectorXd dir = -(eig.eigenvectors() * (lam.cwiseInverse().asDiagonal() * (eig.eigenvectors().transpose() * r)));
        double dn = dir.lpNorm<Eigen::Infinity>();
        if(!(dn > 0) || !std::isfinite(dn))
            throw SolverError("retract: degenerate Newton system, residual " + std::to_string(r.lpNorm<Eigen::Infinity>()),
                r.lpNorm<Eigen::Infinity>());
        if(dn > opts.maxStep) dir *= opts.maxStep / dn;
        dn = dir.lpNorm<Eigen::Infinity>();
        const double slope = r.dot(dir);
        const double rnorm = r.stableNorm();

        // sufficient decrease of either phi (Armijo) or |r|
        auto acceptable = [&](double phiTry, const Eigen::VectorXd& rTry, double t) {
            if(!std::isfinite(phiTry)) return false;
            return phiTry <= phi + 1e-4 * t * slope || rTry.stableNorm() <= (1 - 1e-4 * t) * rnorm;
        };
        Eigen::VectorXd sTry, eTry, rTry;
        double t = 1, phiTry = 0;
        bool moved = false;
        for(int h = 0; h < 80; h++, t *= 0.5) {
            sTry = s + t * dir;
            evaluate(sTry, eTry, rTry);
            phiTry = potential(sTry, eTry);
            if(acceptable(phiTry, rTry, t)) {
                moved = true;
                break;
            }
        }
        // a full step that does not reduce |r| tenfold is extended by doubling while phi and |r| keep falling
        double nTry = rTry.stableNorm();
        while(moved && t >= 1 && nTry > 0.1 * rnorm && 2 * t * dn <= opts.maxStep) {
            Eigen::VectorXd sExt = s + 2 * t * dir, eExt, rExt;
            evaluate(sExt, eExt, rExt);
            double phiExt = potential(sExt, eExt), nExt = rExt.stableNorm();
            if(!(std::isfinite(phiExt) && phiExt < phiTry && nExt < nTry)) break;
            t *= 2;
            sTry = sExt; eTry = eExt; rTry = rExt; phiTry = phiExt; nTry = nExt;
        }
        res.iterations++;
        if(!moved) {
            double rinf = r.lpNorm<Eigen::Infinity>();
            if(rinf <= 100 * target(e)) break;
            throw SolverError("retract: line search stalled, residual " + std::to_string(rinf), rinf);
        }
        if(regularized) {
            res.fallbackSteps++;
            log::write(log::Level::Debug, "retract", "regularized Newton step at iteration " +
                std::to_string(res.iterations));
        }
        s = sTry; e = eTry; r = rTry; phi = phiTry;
    }
    res.lambda = s.array().exp();
    Eigen::VectorXd qs = Q * s;
    res.scaled_point = z;
    for(std::size_t j = 0; j < d; j++)
        res.scaled_point(j) *= std::exp(qs(j));
    res.residual = (moment_N(res.scaled_point, pres.Q) - a).lpNorm<Eigen::Infinity>();
    return res;
}

Eigen::VectorXd moment_map(const Eigen::VectorXcd& z, const ToricModel& model, const RetractionOptions& opts)
{
    const ToricPresentation& pres = model.presentation();
    RetractionResult R = retract(z, model, opts);
    Eigen::VectorXd rhs = moment_Td(R.scaled_point) + pres.kappa;
    Eigen::VectorXd xi = pres.A.toDouble().transpose() * rhs;
    double mismatch = (pres.B.toDouble().transpose() * xi - rhs).lpNorm<Eigen::Infinity>();
    if(mismatch > 1e-10 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>()))
        throw ValidationError("moment_map: B^T xi differs from |z|^2/2 + kappa by " + std::to_string(mismatch) +
            "; kappa is inconsistent with the level");
    return xi;
}

Eigen::VectorXd moment_map_closed_Pn(const Eigen::VectorXcd& z, double a)
{
    if(z.size() < 2)
        throw ShapeError("moment_map_closed_Pn: need at least two homogeneous coordinates");
    double m = z.cwiseAbs().maxCoeff();
    if(!(m > 0))
        throw DomainError("moment_map_closed_Pn: z = 0 is not in U_a");
    Eigen::VectorXd w = (z / m).cwiseAbs2();
    return a * w.head(z.size() - 1) / w.sum();
}

double kpn_excess(std::size_t n, double a, double logZ2, double logP2)
{
    if(!(a > 0))
        throw DomainError("kpn_excess: level must be positive");
    if(std::isinf(logP2) && logP2 < 0) return 0;
    // solve h(u) = (n+1) log(2a + e^u) + u - log((n+1) s) = 0 for u = log(delta); h is convex increasing
    const double m = static_cast<double>(n + 1);
    const double c = std::log(m) + m * logZ2 + logP2;
    auto h = [&](double u) { return m * std::log(2 * a + std::exp(u)) + u - c; };
    // brackets: delta <= min(((n+1)s)^{1/(n+2)}, (n+1)s/(2a)^{n+1}) and delta >= (n+1)s/(2a+upper)^{n+1}
    double hiU = std::min(c / (m + 1), c - m * std::log(2 * a));
    double loU = c - m * std::log(2 * a + std::exp(hiU));
    double u = hiU;
    for(int it = 0; it < 200; it++) {
        double f = h(u);
        if(f > 0) hiU = std::min(hiU, u); else loU = std::max(loU, u);
        double eu = std::exp(u);
        double df = m * eu / (2 * a + eu) + 1;
        double next = u - f / df;
        if(!(next > loU && next < hiU)) next = 0.5 * (loU + hiU);
        if(std::abs(next - u) <= 1e-16 * std::max(1.0, std::abs(u))) { u = next; break; }
        u = next;
    }
    return std::exp(u);
}

Eigen::VectorXd moment_map_closed_KPn(const Eigen::VectorXcd& z, std::complex<double> p, double a)
{
    const std::size_t n = z.size() - 1;
    if(z.size() < 2)
        throw ShapeError("moment_map_closed_KPn: need at least two base coordinates");
    if(!(a > 0))
        throw DomainError("moment_map_closed_KPn: level must be positive");
    double m = z.cwiseAbs().maxCoeff();
    if(!(m > 0))
        throw DomainError("moment_map_closed_KPn: z = 0 is not in U_a");
    Eigen::VectorXd w = (z / m).cwiseAbs2();
    double logZ2 = 2 * std::log(m) + std::log(w.sum());
    double logP2 = std::abs(p) > 0 ? 2 * std::log(std::abs(p)) : -std::numeric_limits<double>::infinity();
    double delta = kpn_excess(n, a, logZ2, logP2);
    double x = 2 * a + delta;
    Eigen::VectorXd xi(n + 1);
    xi.head(n) = 0.5 * x * w.head(n) / w.sum();
    xi(n) = delta / (2.0 * (n + 1));
    return xi;
}

namespace {

/// rho_a(z, p) = 3 sqrt(3) |z|^2 |p| / (4 a sqrt(a))
double cardanoRho(const Eigen::VectorXcd& z, std::complex<double> p, double a)
{
    if(z.size() != 2)
        throw ShapeError("cardano: K_{P^1} has two base coordinates");
    if(!(a > 0))
        throw DomainError("cardano: level must be positive");
    if(!(z.squaredNorm() > 0))
        throw DomainError("cardano: z = 0 is not in U_a");
    return 3 * std::sqrt(3.0) * z.squaredNorm() * std::abs(p) / (4 * a * std::sqrt(a));
}

}  // internal namespace

double cardano_lambda_KP1(const Eigen::VectorXcd& z, std::complex<double> p, double a)
{
    double rho = cardanoRho(z, p, a);
    double plus = std::sqrt(1 + rho * rho) + rho;
    double minus = 1 / plus;   // sqrt(1+rho^2) - rho without cancellation
    double g = 2 * a / 3 * (std::cbrt(plus * plus) + std::cbrt(minus * minus) + 1);
    return g / z.squaredNorm();
}

double cardano_excess_KP1(const Eigen::VectorXcd& z, std::complex<double> p, double a)
{
    double rho = cardanoRho(z, p, a);
    // with u = sqrt(1+rho^2)+rho = exp(asinh rho):  g - 2a = (2a/3) (u^{1/3} - u^{-1/3})^2
    double sh = 2 * std::sinh(std::asinh(rho) / 3);
    return 2 * a / 3 * sh * sh;
}

}  // namespace reduction
}  // namespace toric
