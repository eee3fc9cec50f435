#include <doctest.h>
#include "oracles.h"
#include "toric/errors.h"
#include "toric/kahler.h"
#include "toric/reduction.h"

using namespace toric;
using kahler::PotentialContext;

namespace {

/// interior points of the polytope sampled as images of random points of the dense orbit
std::vector<Eigen::VectorXd> interiorSample(const ToricModel& m, std::size_t count, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> out;
    while(out.size() < count) out.push_back(reduction::moment_map(oracle::random_complex(rng, m.d()), m));
    return out;
}

const std::vector<std::string> SMOOTH{"p1", "p2", "p3", "p2blow3", "kp1", "kp1_straight", "kp2", "kp2blow3"};

}  // namespace

TEST_CASE("calibration offsets")
{
    for(std::string name : {"p1", "p2", "p3"}) {
        ToricModel m(oracle::bundled_presentation(name));
        CHECK(PotentialContext(m).calibration().lpNorm<Eigen::Infinity>() == 0);
    }
    ToricModel kp1(oracle::bundled_presentation("kp1_straight"));
    Eigen::VectorXd c = PotentialContext(kp1).calibration();
    CHECK(c(0) == 0);
    CHECK(c(1) == doctest::Approx(oracle::KP1_CALIBRATION).epsilon(1e-15));
}

TEST_CASE("G on the interval")
{
    polytope::HalfSpaceSet hs(IntegerMatrix{{1, -1}}, Eigen::Vector2d(0, -1));
    PotentialContext ctx(hs);
    Eigen::VectorXd xi = Eigen::VectorXd::Constant(1, 0.5);
    CHECK(kahler::G_value(ctx, xi) == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(std::abs(kahler::grad_G(ctx, xi)(0)) < 1e-15);
    CHECK(kahler::hess_G(ctx, xi)(0, 0) == doctest::Approx(2));
    // facets contribute 0 log 0 = 0
    CHECK(kahler::G_value(ctx, Eigen::VectorXd::Zero(1)) == 0);
    CHECK_THROWS_AS(kahler::G_value(ctx, Eigen::VectorXd::Constant(1, 1.5)), DomainError);
    CHECK_THROWS_AS(kahler::grad_G(ctx, Eigen::VectorXd::Zero(1)), DomainError);
}

TEST_CASE("Hess F refuses near-singular Hess G")
{
    ToricModel m(oracle::bundled_presentation("p2"));
    PotentialContext ctx(m);
    CHECK_NOTHROW(kahler::hess_F_at(ctx, Eigen::Vector2d(1e-6, 0.5)));
    CHECK_THROWS_AS(kahler::hess_F_at(ctx, Eigen::Vector2d(1e-16, 0.5)), ConditioningError);
}

TEST_CASE("gradient of G against finite differences")
{
    for(const std::string& name : SMOOTH) {
        CAPTURE(name);
        ToricModel m(oracle::bundled_presentation(name));
        PotentialContext ctx(m);
        for(const Eigen::VectorXd& xi : interiorSample(m, 30, 9)) {
            const polytope::HalfSpaceSet& hs = m.halfspaces();
            Eigen::VectorXd g = kahler::grad_G(ctx, xi);
            Eigen::VectorXd fd = oracle::guillemin_fd_gradient(hs.normals(), hs.offsets(), xi);
            double Gref = static_cast<double>(oracle::guillemin_ld(hs.normals(), hs.offsets(),
                std::vector<long double>(xi.data(), xi.data() + xi.size())));
            CHECK(kahler::G_value(ctx, xi) == doctest::Approx(Gref).epsilon(1e-13));
            CHECK((g - fd).lpNorm<Eigen::Infinity>() <= 1e-7 * std::max(1.0, g.lpNorm<Eigen::Infinity>()));
        }
    }
}

TEST_CASE("Legendre duality")
{
    for(const std::string& name : SMOOTH) {
        CAPTURE(name);
        ToricModel m(oracle::bundled_presentation(name));
        PotentialContext ctx(m);
        for(const Eigen::VectorXd& xi : interiorSample(m, 40, 13)) {
            Eigen::VectorXd x = kahler::grad_G_calibrated(ctx, xi);
            Eigen::VectorXd back = kahler::legendre_to_xi(ctx, x);
            CHECK(oracle::rel_error(back, xi) <= 1e-10);
            Eigen::MatrixXd HF = kahler::hess_F_at(ctx, xi), HG = kahler::hess_G(ctx, xi);
            CHECK((HF * HG - Eigen::MatrixXd::Identity(xi.size(), xi.size())).lpNorm<Eigen::Infinity>() <= 1e-8);
            // F(x) + G(xi) = <x + c, xi>
            CHECK(kahler::F_value(ctx, x) + kahler::G_value(ctx, xi) ==
                doctest::Approx((x + ctx.calibration()).dot(xi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("gradient of F is the inverse Legendre map")
{
    ToricModel m(oracle::bundled_presentation("p2blow3"));
    PotentialContext ctx(m);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0, 1);
    for(int t = 0; t < 20; t++) {
        Eigen::Vector2d x(g(rng), g(rng));
        double h = 1e-5;
        Eigen::Vector2d fd;
        for(int i = 0; i < 2; i++) {
            Eigen::Vector2d e = Eigen::Vector2d::Unit(i) * h;
            fd(i) = (kahler::F_value(ctx, x + e) - kahler::F_value(ctx, x - e)) / (2 * h);
        }
        CHECK((fd - kahler::legendre_to_xi(ctx, x)).lpNorm<Eigen::Infinity>() <= 1e-7);
    }
}

TEST_CASE("projective spaces in closed form")
{
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0, 2);
    for(std::size_t n = 1; n <= 3; n++) {
        ToricModel m(oracle::bundled_presentation("p" + std::to_string(n)));
        PotentialContext ctx(m);
        for(int t = 0; t < 100; t++) {
            Eigen::VectorXd x(n);
            for(std::size_t i = 0; i < n; i++) x(i) = g(rng);
            CHECK(oracle::rel_error(kahler::legendre_to_xi(ctx, x), oracle::pn_xi_of_x(x, 1)) <= 1e-10);
        }
    }
    ToricModel p1(oracle::bundled_presentation("p1"));
    PotentialContext ctx(p1);
    for(double x : {-3.0, -0.5, 0.0, 1.0, 4.0})
        CHECK(kahler::F_value(ctx, Eigen::VectorXd::Constant(1, x)) ==
            doctest::Approx(kahler::reduction_potential_P1(1, x)).epsilon(1e-12));
}

TEST_CASE("far from the origin")
{
    ToricModel m(oracle::bundled_presentation("p2"));
    PotentialContext ctx(m);
    for(double s : {5.0, 10.0, 15.0}) {
        Eigen::Vector2d x(s, -s);
        Eigen::VectorXd xi = kahler::legendre_to_xi(ctx, x);
        CHECK(m.halfspaces().affine_forms(xi).minCoeff() > 0);
        CHECK(oracle::rel_error(xi, oracle::pn_xi_of_x(x, 1)) <= 1e-10);
    }
    CHECK_THROWS_AS(kahler::legendre_to_xi(ctx, Eigen::Vector2d(1, std::nan(""))), DomainError);
}

TEST_CASE("Legendre map stays accurate in xi for large x")
{
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g(0, 8);
    for(std::size_t n = 1; n <= 3; n++) {
        ToricModel m(oracle::bundled_presentation("p" + std::to_string(n)));
        PotentialContext ctx(m);
        int solved = 0;
        for(int t = 0; t < 400; t++) {
            Eigen::VectorXd x(n);
            for(std::size_t i = 0; i < n; i++) x(i) = g(rng);
            try {
                Eigen::VectorXd xi = kahler::legendre_to_xi(ctx, x);
                CHECK((xi - oracle::pn_xi_of_x(x, 1)).lpNorm<Eigen::Infinity>() <= 1e-11);
                solved++;
            } catch(const ConditioningError&) {
                // only points whose smallest form is below double resolution may be refused
                Eigen::VectorXd L = m.halfspaces().affine_forms(oracle::pn_xi_of_x(x, 1));
                CHECK(L.minCoeff() <= 1e-12);
            }
        }
        CHECK(solved >= 350);
    }
}

TEST_CASE("metric and symplectic form")
{
    ToricModel m(oracle::bundled_presentation("kp1_straight"));
    PotentialContext ctx(m);
    for(const Eigen::VectorXd& xi : interiorSample(m, 20, 4)) {
        Eigen::MatrixXd Gaa = kahler::metric_matrix(ctx, xi, kahler::Frame::ActionAngle);
        Eigen::MatrixXd Waa = kahler::symplectic_matrix(ctx, xi, kahler::Frame::ActionAngle);
        Eigen::MatrixXd Gc = kahler::metric_matrix(ctx, xi, kahler::Frame::Complex);
        Eigen::MatrixXd Wc = kahler::symplectic_matrix(ctx, xi, kahler::Frame::Complex);
        CHECK((Gaa - Gaa.transpose()).norm() <= 1e-14 * Gaa.norm());
        CHECK(Gaa.llt().info() == Eigen::Success);
        CHECK(Gc.llt().info() == Eigen::Success);
        // the complex structure J = -W^{-1} g squares to -1 in both frames
        for(auto [W, G] : {std::pair{Waa, Gaa}, std::pair{Wc, Gc}}) {
            Eigen::MatrixXd J = -W.inverse() * G;
            CHECK((J * J + Eigen::MatrixXd::Identity(4, 4)).lpNorm<Eigen::Infinity>() <= 1e-8);
        }
        // (x, theta) -> (xi, theta) has Jacobian diag(Hess F, I): pulling back the action-angle data gives the complex one
        Eigen::MatrixXd T = Eigen::MatrixXd::Identity(4, 4);
        T.topLeftCorner(2, 2) = kahler::hess_F_at(ctx, xi);
        CHECK((T.transpose() * Gaa * T - Gc).lpNorm<Eigen::Infinity>() <= 1e-8 * Gc.lpNorm<Eigen::Infinity>());
        CHECK((T.transpose() * Waa * T - Wc).lpNorm<Eigen::Infinity>() <= 1e-8 * Wc.lpNorm<Eigen::Infinity>());
    }
}

TEST_CASE("potentials of the projective line")
{
    for(int i = 0; i <= 100; i++) {
        double x = -5 + 0.1 * i;
        CHECK(std::abs(kahler::fulton_potential_P1(1, x) - kahler::reduction_potential_P1(1, x)) <= 1e-12);
    }
    CHECK(kahler::fulton_potential_P1_d2(2, 0) - kahler::reduction_potential_P1_d2(2, 0) ==
        doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(kahler::fulton_moment_P1(2, 0) == doctest::Approx(1));
    // second derivatives agree with central differences
    for(int k : {1, 2, 5})
        for(double x : {-1.5, 0.0, 0.7}) {
            double h = 1e-4;
            double fd = (kahler::fulton_potential_P1(k, x + h) - 2 * kahler::fulton_potential_P1(k, x) +
                kahler::fulton_potential_P1(k, x - h)) / (h * h);
            CHECK(fd == doctest::Approx(kahler::fulton_potential_P1_d2(k, x)).epsilon(1e-6));
            double dm = (kahler::fulton_potential_P1(k, x + h) - kahler::fulton_potential_P1(k, x - h)) / (2 * h);
            CHECK(dm == doctest::Approx(kahler::fulton_moment_P1(k, x)).epsilon(1e-7));
        }
    CHECK(std::isfinite(kahler::fulton_potential_P1(3, 400)));
    CHECK_THROWS_AS(kahler::fulton_potential_P1(0, 0), DomainError);
}
