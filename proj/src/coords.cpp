#include "toric/coords.h"
#include "toric/errors.h"
#include "toric/reduction.h"
#include <cmath>

namespace toric {
namespace coords {

namespace {

const double TWO_PI = 2 * M_PI;

std::complex<double> ipow(std::complex<double> base, const Integer& exponent)
{
    long e = exponent.convert_to<long>();
    bool invert = e < 0;
    unsigned long u = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    std::complex<double> result = 1;
    while(u) {
        if(u & 1) result *= base;
        base *= base;
        u >>= 1;
    }
    return invert ? 1.0 / result : result;
}

/// y_k = prod_j w_j^{E_kj}; `what` names the failing operation
Eigen::VectorXcd monomials(const Eigen::VectorXcd& w, const IntegerMatrix& E, const char* what)
{
    if(static_cast<std::size_t>(w.size()) != E.cols())
        throw ShapeError(std::string(what) + ": point has " + std::to_string(w.size()) +
            " coordinates, expected " + std::to_string(E.cols()));
    Eigen::VectorXcd y(E.rows());
    for(std::size_t k = 0; k < E.rows(); k++) {
        std::complex<double> v = 1;
        for(std::size_t j = 0; j < E.cols(); j++) {
            if(E(k, j) == 0) continue;
            if(E(k, j) < 0 && w(j) == 0.0)
                throw DomainError(std::string(what) + ": coordinate " + std::to_string(j + 1) +
                    " vanishes but enters with a negative exponent");
            v *= ipow(w(j), E(k, j));
        }
        y(k) = v;
    }
    return y;
}

bool denseOrbit(const Eigen::VectorXcd& z)
{
    for(Eigen::Index j = 0; j < z.size(); j++)
        if(std::abs(z(j)) < reduction::ZERO_THRESHOLD) return false;
    return true;
}

void requireCanonical(const ToricModel& model, const char* what)
{
    if(!model.presentation().canonicalBundle)
        throw DomainError(std::string(what) + ": presentation '" + model.presentation().name +
            "' is not a canonical bundle");
}

}  // internal namespace

Chart make_chart(const IntegerMatrix& B, const std::vector<std::size_t>& vertex)
{
    Chart c;
    c.vertex = vertex;
    c.P = lattice::vertex_right_inverse(B, vertex).P;
    c.exponents = c.P * B;
    return c;
}

std::vector<Chart> atlas(const ToricModel& model)
{
    std::vector<Chart> charts;
    const IntegerMatrix& B = model.presentation().B;
    for(const VertexRecord& v : model.vertices())
        if(v.simple() && abs(B.selectColumns(v.active).determinant()) == 1)
            charts.push_back(make_chart(B, v.active));
    return charts;
}

Eigen::VectorXcd to_chart(const Eigen::VectorXcd& z, const Chart& chart)
{
    return monomials(z, chart.exponents, "to_chart");
}

IntegerMatrix transition_exponents(const IntegerMatrix& B, const Chart& from, const Chart& to)
{
    return to.P * B.selectColumns(from.vertex);
}

Eigen::VectorXcd transition(const Eigen::VectorXcd& y, const IntegerMatrix& B, const Chart& from, const Chart& to)
{
    return monomials(y, transition_exponents(B, from, to), "transition");
}

FiberTransition km_fiber_transition(const Eigen::VectorXcd& y, std::complex<double> yq,
    const IntegerMatrix& B, const Chart& from, const Chart& to)
{
    const std::size_t n = B.rows();
    FiberTransition out;
    out.target = to;
    IntegerMatrix D = transition_exponents(B, from, to);
    if(D.determinant() < 0 && n >= 2) {
        std::vector<std::size_t> order = to.vertex;
        std::swap(order[0], order[1]);
        out.target = make_chart(B, order);
        out.reordered = true;
        D = transition_exponents(B, from, out.target);
    }
    out.base = monomials(y, D, "km_fiber_transition");
    IntegerMatrix fiberExp(1, n);
    for(std::size_t j = 0; j < n; j++) {
        Integer colsum = 0;
        for(std::size_t k = 0; k < n; k++) colsum += D(k, j);
        fiberExp(0, j) = 1 - colsum;
    }
    out.fiber = yq * monomials(y, fiberExp, "km_fiber_transition")(0);
    return out;
}

Eigen::VectorXcd torus_coords(const Eigen::VectorXcd& z, const IntegerMatrix& B)
{
    if(!denseOrbit(z))
        throw DomainError("torus_coords: point is not in the dense orbit (some z_j = 0)");
    return monomials(z, B, "torus_coords");
}

Eigen::VectorXcd torus_to_homogeneous(const Eigen::VectorXcd& t, const IntegerMatrix& A)
{
    return monomials(t, A, "torus_to_homogeneous");
}

double wrap_angle(double theta)
{
    double w = std::fmod(theta, TWO_PI);
    if(w < 0) w += TWO_PI;
    if(w >= TWO_PI) w -= TWO_PI;
    return w + 0.0;
}

double angle_distance(double a, double b)
{
    double diff = wrap_angle(a - b);
    return std::min(diff, TWO_PI - diff);
}

ActionAnglePoint action_angle(const Eigen::VectorXcd& z, const ToricModel& model)
{
    if(!denseOrbit(z))
        throw DomainError("action_angle: point is not in the dense orbit (some z_j = 0)");
    ActionAnglePoint aa;
    aa.xi = reduction::moment_map(z, model);
    Eigen::VectorXcd t = torus_coords(z, model.presentation().B);
    aa.theta.resize(t.size());
    for(Eigen::Index m = 0; m < t.size(); m++)
        aa.theta(m) = wrap_angle(std::arg(t(m)));
    return aa;
}

Eigen::VectorXcd from_action_angle(const ActionAnglePoint& aa, const ToricModel& model,
    const kahler::PotentialContext& ctx)
{
    if(aa.theta.size() != aa.xi.size())
        throw ShapeError("from_action_angle: xi and theta have different lengths");
    Eigen::VectorXd x = kahler::grad_G_calibrated(ctx, aa.xi);
    Eigen::VectorXcd t(x.size());
    for(Eigen::Index m = 0; m < x.size(); m++)
        t(m) = std::polar(std::exp(x(m)), aa.theta(m));
    return torus_to_homogeneous(t, model.presentation().A);
}

std::complex<double> superpotential_homog(const Eigen::VectorXcd& z, const ToricModel& model)
{
    requireCanonical(model, "superpotential_homog");
    if(static_cast<std::size_t>(z.size()) != model.d())
        throw ShapeError("superpotential_homog: point has " + std::to_string(z.size()) +
            " coordinates, expected " + std::to_string(model.d()));
    return z.prod();
}

std::complex<double> superpotential_aa(const ActionAnglePoint& aa, const ToricModel& model,
    const kahler::PotentialContext& ctx)
{
    requireCanonical(model, "superpotential_aa");
    const IntegerMatrix& B = model.presentation().B;
    const std::size_t last = B.rows() - 1;
    for(std::size_t j = 0; j < B.cols(); j++)
        if(B(last, j) != 1)
            throw DomainError("superpotential_aa: the last row of B must be all ones");
    Eigen::VectorXd x = kahler::grad_G_calibrated(ctx, aa.xi);
    return std::polar(std::exp(x(last)), aa.theta(last));
}

}  // namespace coords
}  // namespace toric
