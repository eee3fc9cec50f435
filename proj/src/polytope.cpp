#include "toric/polytope.h"
#include "toric/errors.h"
#include "toric/lattice.h"
#include <algorithm>
#include <cmath>
#include <map>

namespace toric {
namespace polytope {

namespace {

const double LP_EPS = 1e-11;

/// exact solution of the square system M x = b over the rationals; throws if M is singular
std::vector<Rational> solveRational(const IntegerMatrix& M, const std::vector<Rational>& b)
{
    const std::size_t n = M.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for(std::size_t i = 0; i < n; i++) {
        for(std::size_t j = 0; j < n; j++) a[i][j] = Rational(M(i, j));
        a[i][n] = b[i];
    }
    for(std::size_t k = 0; k < n; k++) {
        std::size_t p = k;
        while(p < n && a[p][k] == 0) p++;
        if(p == n) throw RankError("singular system");
        std::swap(a[k], a[p]);
        for(std::size_t i = 0; i < n; i++) {
            if(i == k || a[i][k] == 0) continue;
            Rational f = a[i][k] / a[k][k];
            for(std::size_t j = k; j <= n; j++) a[i][j] -= f * a[k][j];
        }
    }
    std::vector<Rational> x(n);
    for(std::size_t i = 0; i < n; i++) x[i] = a[i][n] / a[i][i];
    return x;
}

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : T(Eigen::MatrixXd::Zero(rows + 1, cols + 1)),
        basis(rows), m(rows), ncols(cols) {}

    Eigen::MatrixXd T;
    std::vector<std::size_t> basis;
    std::size_t m, ncols;

    double& rhs(std::size_t i) { return T(i, ncols); }

    void pivot(std::size_t r, std::size_t c)
    {
        T.row(r) /= T(r, c);
        for(std::size_t i = 0; i <= m; i++)
            if(i != r && T(i, c) != 0)
                T.row(i) -= T(i, c) * T.row(r);
        basis[r] = c;
    }

    /// runs Bland's rule over columns [0, allowed); returns false if unbounded
    bool optimize(std::size_t allowed)
    {
        for(int iter = 0; iter < 100000; iter++) {
            std::size_t enter = allowed;
            for(std::size_t j = 0; j < allowed; j++)
                if(T(m, j) < -LP_EPS) { enter = j; break; }
            if(enter == allowed) return true;
            std::size_t leave = m;
            double best = 0;
            for(std::size_t i = 0; i < m; i++) {
                if(T(i, enter) <= LP_EPS) continue;
                double ratio = rhs(i) / T(i, enter);
                if(leave == m || ratio < best - LP_EPS ||
                    (ratio <= best + LP_EPS && basis[i] < basis[leave]))
                {
                    leave = i;
                    best = ratio;
                }
            }
            if(leave == m) return false;
            pivot(leave, enter);
        }
        throw SolverError("linear_program: iteration limit reached", NAN);
    }
};

}  // internal namespace

LPResult linear_program(const Eigen::VectorXd& c,
    const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq,
    const Eigen::MatrixXd& Aub, const Eigen::VectorXd& bub)
{
    const std::size_t nx = c.size(), mE = beq.size(), mU = bub.size(), m = mE + mU;
    if((mE && static_cast<std::size_t>(Aeq.cols()) != nx) || (mU && static_cast<std::size_t>(Aub.cols()) != nx) ||
        static_cast<std::size_t>(Aeq.rows()) != mE || static_cast<std::size_t>(Aub.rows()) != mU)
        throw ShapeError("linear_program: inconsistent dimensions");
    const std::size_t N = nx + mU;          // structural + slack columns
    Tableau tab(m, N + m);                  // + artificial columns
    for(std::size_t i = 0; i < m; i++) {
        if(i < mE) {
            for(std::size_t j = 0; j < nx; j++) tab.T(i, j) = Aeq(i, j);
            tab.rhs(i) = beq(i);
        } else {
            for(std::size_t j = 0; j < nx; j++) tab.T(i, j) = Aub(i - mE, j);
            tab.T(i, nx + i - mE) = 1;
            tab.rhs(i) = bub(i - mE);
        }
        if(tab.rhs(i) < 0) tab.T.row(i) *= -1;
        tab.T(i, N + i) = 1;
        tab.basis[i] = N + i;
    }
    // phase 1: minimize the sum of artificials
    for(std::size_t i = 0; i < m; i++)
        tab.T.row(m) -= tab.T.row(i);
    for(std::size_t i = 0; i < m; i++) tab.T(m, N + i) = 0;
    tab.optimize(N + m);
    LPResult res;
    double scale = 1;
    for(std::size_t i = 0; i < m; i++) scale = std::max(scale, std::abs(tab.rhs(i)));
    if(-tab.rhs(m) > 1e-9 * scale) {
        res.status = LPResult::Infeasible;
        return res;
    }
    for(std::size_t i = 0; i < m; i++) {
        if(tab.basis[i] < N) continue;
        for(std::size_t j = 0; j < N; j++)
            if(std::abs(tab.T(i, j)) > 1e-9) { tab.pivot(i, j); break; }
    }
    // phase 2
    tab.T.row(m).setZero();
    for(std::size_t j = 0; j < nx; j++) tab.T(m, j) = c(j);
    for(std::size_t i = 0; i < m; i++) {
        std::size_t b = tab.basis[i];
        double cb = b < nx ? c(b) : 0;
        if(cb != 0) tab.T.row(m) -= cb * tab.T.row(i);
    }
    for(std::size_t i = 0; i < m; i++) tab.T(m, N + i) = 0;
    if(!tab.optimize(N)) {
        res.status = LPResult::Unbounded;
        return res;
    }
    res.status = LPResult::Optimal;
    res.x = Eigen::VectorXd::Zero(nx);
    for(std::size_t i = 0; i < m; i++)
        if(tab.basis[i] < nx) res.x(tab.basis[i]) = tab.rhs(i);
    res.value = c.dot(res.x);
    return res;
}

HalfSpaceSet::HalfSpaceSet(const IntegerMatrix& normals, const Eigen::VectorXd& offsets) :
    B(normals), Bd(normals.toDouble()), kappa(offsets), radius(0), isBounded(false)
{
    const std::size_t n = B.rows(), d = B.cols();
    if(static_cast<std::size_t>(kappa.size()) != d)
        throw ShapeError("HalfSpaceSet: " + std::to_string(d) + " normals but " +
            std::to_string(kappa.size()) + " offsets");
    if(n == 0)
        throw ShapeError("HalfSpaceSet: dimension must be positive");
    for(std::size_t j = 0; j < d; j++)
        if(gcd(B.column(j)) != 1)
            throw NonSmoothError("HalfSpaceSet: normal " + std::to_string(j + 1) + " is not primitive");

    // largest inscribed ball (radius capped at 1): variables xi+ , xi-, t
    Eigen::MatrixXd Aub = Eigen::MatrixXd::Zero(d + 1, 2 * n + 1);
    Eigen::VectorXd bub(d + 1), cost = Eigen::VectorXd::Zero(2 * n + 1);
    for(std::size_t j = 0; j < d; j++) {
        Aub.block(j, 0, 1, n) = -Bd.col(j).transpose();
        Aub.block(j, n, 1, n) = Bd.col(j).transpose();
        Aub(j, 2 * n) = Bd.col(j).norm();
        bub(j) = -kappa(j);
    }
    Aub(d, 2 * n) = 1;
    bub(d) = 1;
    cost(2 * n) = -1;
    LPResult lp = linear_program(cost, Eigen::MatrixXd(0, 2 * n + 1), Eigen::VectorXd(0), Aub, bub);
    if(lp.status != LPResult::Optimal || lp.x(2 * n) <= 1e-9)
        throw DomainError("HalfSpaceSet: the polyhedron has empty interior");
    center = lp.x.head(n) - lp.x.segment(n, n);
    radius = lp.x(2 * n);

    // compact iff the normals admit a strictly positive relation B y = 0
    Eigen::MatrixXd Aeq = Bd;
    Eigen::MatrixXd negI = -Eigen::MatrixXd::Identity(d, d);
    LPResult pos = linear_program(Eigen::VectorXd::Zero(d), Aeq, Eigen::VectorXd::Zero(n),
        negI, -Eigen::VectorXd::Ones(d));
    isBounded = pos.status == LPResult::Optimal;
}

Eigen::VectorXd HalfSpaceSet::affine_forms(const Eigen::VectorXd& xi) const
{
    if(static_cast<std::size_t>(xi.size()) != n())
        throw ShapeError("affine_forms: point has dimension " + std::to_string(xi.size()) +
            ", expected " + std::to_string(n()));
    return Bd.transpose() * xi - kappa;
}

Eigen::VectorXd kappa_from_level(const IntegerMatrix& Q, const Eigen::VectorXd& a,
    const std::vector<std::size_t>& anchor)
{
    const std::size_t d = Q.rows(), k = Q.cols();
    if(static_cast<std::size_t>(a.size()) != k)
        throw ShapeError("kappa_from_level: level has length " + std::to_string(a.size()) +
            ", expected " + std::to_string(k));
    if(anchor.size() + k != d)
        throw AnchorError("kappa_from_level: anchor must have " + std::to_string(d - k) + " entries");
    std::vector<bool> pinned(d, false);
    for(std::size_t j : anchor) {
        if(j >= d || pinned[j])
            throw AnchorError("kappa_from_level: anchor index out of range or repeated");
        pinned[j] = true;
    }
    std::vector<std::size_t> freeIdx;
    for(std::size_t j = 0; j < d; j++)
        if(!pinned[j]) freeIdx.push_back(j);
    IntegerMatrix M = Q.selectRows(freeIdx).transpose();
    std::vector<Rational> rhs(k);
    for(std::size_t i = 0; i < k; i++) rhs[i] = Rational(-a(i));
    std::vector<Rational> sol;
    try {
        sol = solveRational(M, rhs);
    } catch(const RankError&) {
        throw AnchorError("kappa_from_level: Q^T restricted to the complement of the anchor is singular");
    }
    Eigen::VectorXd kappa = Eigen::VectorXd::Zero(d);
    for(std::size_t i = 0; i < k; i++)
        kappa(freeIdx[i]) = sol[i].convert_to<double>();
    return kappa;
}

std::vector<VertexRecord> enumerate_vertices(const HalfSpaceSet& hs, double tol)
{
    const std::size_t n = hs.n(), d = hs.d();
    std::map<std::vector<std::size_t>, VertexRecord> found;
    if(d < n) return {};
    std::vector<std::size_t> J(n);
    for(std::size_t i = 0; i < n; i++) J[i] = i;
    while(true) {
        IntegerMatrix Mt = hs.normals().selectColumns(J).transpose();
        if(Mt.determinant() != 0) {
            std::vector<Rational> rhs(n);
            for(std::size_t i = 0; i < n; i++) rhs[i] = Rational(hs.offsets()(J[i]));
            std::vector<Rational> sol = solveRational(Mt, rhs);
            Eigen::VectorXd xi(n);
            for(std::size_t i = 0; i < n; i++) xi(i) = sol[i].convert_to<double>();
            Eigen::VectorXd L = hs.affine_forms(xi);
            for(std::size_t i = 0; i < n; i++) L(J[i]) = 0;
            if(L.minCoeff() >= -tol) {
                VertexRecord v;
                v.xi = xi;
                for(std::size_t j = 0; j < d; j++)
                    if(std::abs(L(j)) <= tol) v.active.push_back(j);
                found.emplace(v.active, v);
            }
        }
        std::size_t i = n;
        while(i > 0 && J[i - 1] == d - n + i - 1) i--;
        if(i == 0) break;
        J[i - 1]++;
        for(std::size_t j = i; j < n; j++) J[j] = J[j - 1] + 1;
    }
    std::vector<VertexRecord> out;
    for(auto& kv : found) out.push_back(kv.second);
    return out;
}

Classification classify(const HalfSpaceSet& hs, const Eigen::VectorXd& xi, double tol)
{
    Eigen::VectorXd L = hs.affine_forms(xi);
    Classification c;
    if(L.minCoeff() < -tol) {
        c.region = Region::Outside;
        return c;
    }
    for(std::size_t j = 0; j < hs.d(); j++)
        if(std::abs(L(j)) <= tol) c.face.push_back(j);
    c.region = c.face.empty() ? Region::Interior : Region::Boundary;
    return c;
}

const char* region_name(Region r)
{
    switch(r) {
        case Region::Interior: return "interior";
        case Region::Boundary: return "boundary";
        default:               return "outside";
    }
}

}  // namespace polytope
}  // namespace toric
