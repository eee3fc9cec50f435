/** \file    acceptance.cpp
    \brief   End-to-end acceptance checks, one PASS/FAIL line per criterion
*/
#include "oracles.h"
#include "toric/coords.h"
#include "toric/errors.h"
#include "toric/reduction.h"
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace toric;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

const std::vector<std::string> SMOOTH{"p1", "p2", "p3", "p2blow3", "kp1", "kp1_straight", "kp2", "kp2blow3"};

ToricModel model(const std::string& name) { return ToricModel(oracle::bundled_presentation(name)); }

Eigen::VectorXcd join(const Eigen::VectorXcd& z, std::complex<double> p)
{
    Eigen::VectorXcd w(z.size() + 1);
    w << z, p;
    return w;
}

double seconds(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::vector<Eigen::VectorXd> interiorSample(const ToricModel& m, std::size_t count, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> out;
    while(out.size() < count) out.push_back(reduction::moment_map(oracle::random_complex(rng, m.d()), m));
    return out;
}

// ------ criteria ------

Verdict exactIdentities()
{
    auto start = std::chrono::steady_clock::now();
    std::size_t checked = 0;
    auto checkCanonical = [&](const ToricPresentation& p) {
        for(std::size_t l = 0; l < p.Q.cols(); l++) {
            Integer s = 0;
            for(const Integer& v : p.Q.column(l)) s += v;
            if(s != 0) return false;
        }
        return (p.B * p.A).isIdentity();
    };
    for(const std::string& name : oracle::bundled_names()) {
        ToricPresentation p = oracle::bundled_presentation(name);
        if(!(p.B * p.Q).isZero() || !(p.B * p.A).isIdentity())
            return {false, name + ": BQ = 0 or BA = I fails"};
        if(p.canonicalBundle && !checkCanonical(p))
            return {false, name + ": canonical bundle identities fail"};
        if(!p.canonicalBundle && name != "p123")
            for(auto conv : {CanonicalConvention::AllOnes, CanonicalConvention::Straight}) {
                ToricPresentation k = lattice::extend_to_canonical(p, conv);
                if(!(k.B * k.Q).isZero() || !checkCanonical(k))
                    return {false, name + ": extension to the canonical bundle fails"};
                checked++;
            }
        checked++;
    }
    double t = seconds(start);
    return {t < 1.0, std::to_string(checked) + " presentations, exact, " + fmt(t) + " s"};
}

Verdict oracleEquivalence()
{
    auto start = std::chrono::steady_clock::now();
    const int N = 1000;
    double worst = 0;
    for(std::size_t n = 1; n <= 3; n++) {
        ToricModel m = model("p" + std::to_string(n));
        std::mt19937_64 rng(1000 + n);
        for(int t = 0; t < N; t++) {
            Eigen::VectorXcd z = oracle::random_complex(rng, n + 1);
            Eigen::VectorXd ref = oracle::pn_moment(z, 1);
            worst = std::max(worst, oracle::rel_error(reduction::moment_map(z, m), ref));
            worst = std::max(worst, oracle::rel_error(reduction::moment_map_closed_Pn(z, 1), ref));
        }
    }
    ToricModel straight = model("kp1_straight"), allones = model("kp1");
    std::mt19937_64 rng(2000);
    for(int t = 0; t < N; t++) {
        Eigen::VectorXcd z = oracle::random_complex(rng, 2);
        std::complex<double> p = oracle::random_complex(rng, 1)(0);
        Eigen::VectorXcd w = join(z, p);
        worst = std::max(worst, oracle::rel_error(reduction::moment_map(w, straight), oracle::kpn_moment_straight(z, p, 1)));
        worst = std::max(worst, oracle::rel_error(reduction::moment_map(w, allones), oracle::kp1_moment_allones(z, p, 1)));
        double lambda2 = std::pow(reduction::retract(w, straight).lambda(0), 2);
        worst = std::max(worst, std::abs(lambda2 - reduction::cardano_lambda_KP1(z, p, 1)) / lambda2);
    }
    double t = seconds(start);
    return {worst <= 1e-10 && t < 10, "max relative error " + fmt(worst) + " over " + std::to_string(5 * N) +
        " points, " + fmt(t) + " s"};
}

Verdict vertexSets()
{
    auto coordinates = [](const ToricModel& m) {
        std::set<std::vector<double>> s;
        for(const VertexRecord& v : m.vertices()) s.insert(std::vector<double>(v.xi.data(), v.xi.data() + v.xi.size()));
        return s;
    };
    if(coordinates(model("p2")) != std::set<std::vector<double>>{{0, 0}, {1, 0}, {0, 1}})
        return {false, "P^2 vertices differ"};
    if(coordinates(model("kp1_straight")) != std::set<std::vector<double>>{{0, 0}, {1, 0}})
        return {false, "K_{P^1} vertices differ"};
    if(model("p2blow3").vertices().size() != 6)
        return {false, "hexagon does not have 6 vertices"};
    for(const std::string& name : oracle::bundled_names()) {
        ToricModel m = model(name);
        lattice::DelzantReport r = lattice::delzant_check(m.presentation().B, m.vertices());
        if(name == "p123") {
            bool det3 = false;
            for(const lattice::VertexDet& v : r.vertices) det3 |= abs(v.det) == 3;
            if(r.pass() || !det3) return {false, "P(1,2,3) is not rejected with det 3"};
        } else if(!r.pass()) {
            return {false, name + " fails the Delzant check"};
        }
    }
    return {true, "vertex sets exact; Delzant verdicts as expected for " +
        std::to_string(oracle::bundled_names().size()) + " presentations"};
}

Verdict hessianDuality()
{
    double worstDual = 0, worstGrad = 0;
    std::size_t points = 0;
    for(const std::string& name : SMOOTH) {
        ToricModel m = model(name);
        kahler::PotentialContext ctx(m);
        for(const Eigen::VectorXd& xi : interiorSample(m, 100, 31)) {
            Eigen::Index n = xi.size();
            Eigen::MatrixXd P = kahler::hess_F_at(ctx, xi) * kahler::hess_G(ctx, xi);
            worstDual = std::max(worstDual, (P - Eigen::MatrixXd::Identity(n, n)).lpNorm<Eigen::Infinity>());
            const polytope::HalfSpaceSet& hs = m.halfspaces();
            Eigen::VectorXd g = kahler::grad_G(ctx, xi);
            Eigen::VectorXd fd = oracle::guillemin_fd_gradient(hs.normals(), hs.offsets(), xi);
            worstGrad = std::max(worstGrad, (g - fd).lpNorm<Eigen::Infinity>() / std::max(1.0, g.lpNorm<Eigen::Infinity>()));
            points++;
        }
    }
    return {worstDual <= 1e-8 && worstGrad <= 1e-7, "|HF HG - I| = " + fmt(worstDual) + ", gradient mismatch " +
        fmt(worstGrad) + " at " + std::to_string(points) + " points"};
}

Verdict legendreRoundtrips()
{
    double worstTrip = 0, worstClosed = 0;
    for(const std::string& name : SMOOTH) {
        ToricModel m = model(name);
        kahler::PotentialContext ctx(m);
        for(const Eigen::VectorXd& xi : interiorSample(m, 100, 37)) {
            Eigen::VectorXd x = kahler::grad_G_calibrated(ctx, xi);
            worstTrip = std::max(worstTrip, oracle::rel_error(kahler::legendre_to_xi(ctx, x), xi));
        }
    }
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g(0, 2);
    for(std::size_t n = 1; n <= 3; n++) {
        ToricModel m = model("p" + std::to_string(n));
        kahler::PotentialContext ctx(m);
        for(int t = 0; t < 200; t++) {
            Eigen::VectorXd x(n);
            for(std::size_t i = 0; i < n; i++) x(i) = g(rng);
            Eigen::VectorXd xi = kahler::legendre_to_xi(ctx, x);
            worstClosed = std::max(worstClosed, oracle::rel_error(xi, oracle::pn_xi_of_x(x, 1)));
            worstTrip = std::max(worstTrip, (kahler::grad_G_calibrated(ctx, xi) - x).lpNorm<Eigen::Infinity>() /
                std::max(1.0, x.lpNorm<Eigen::Infinity>()));
        }
    }
    return {worstTrip <= 1e-10 && worstClosed <= 1e-10, "round trip " + fmt(worstTrip) + ", closed form " + fmt(worstClosed)};
}

Verdict bridgeIdentity()
{
    double worst = 0, offset = 0;
    for(const std::string& name : oracle::bundled_names()) {
        ToricModel m = model(name);
        kahler::PotentialContext ctx(m);
        if(name == "p1" || name == "p2" || name == "p3") offset = std::max(offset, ctx.calibration().lpNorm<Eigen::Infinity>());
        std::mt19937_64 rng(43);
        for(int t = 0; t < 200; t++) {
            Eigen::VectorXcd z = oracle::random_complex(rng, m.d());
            Eigen::VectorXd x = kahler::grad_G_calibrated(ctx, reduction::moment_map(z, m));
            Eigen::VectorXcd tz = coords::torus_coords(z, m.presentation().B);
            for(Eigen::Index i = 0; i < x.size(); i++) worst = std::max(worst, std::abs(x(i) - std::log(std::abs(tz(i)))));
        }
    }
    return {worst <= 1e-8 && offset == 0, "max deviation " + fmt(worst) + " over " +
        std::to_string(200 * oracle::bundled_names().size()) + " points; projective offset " + fmt(offset)};
}

Verdict superpotential()
{
    double worstRel = 0, worstInv = 0;
    for(std::string name : {"kp1", "kp2"}) {
        ToricModel m = model(name);
        kahler::PotentialContext ctx(m);
        const IntegerMatrix& Q = m.presentation().Q;
        std::mt19937_64 rng(47);
        for(int t = 0; t < 500; t++) {
            Eigen::VectorXcd z = oracle::random_complex(rng, m.d());
            std::complex<double> W = z.prod();
            std::complex<double> Waa = coords::superpotential_aa(coords::action_angle(z, m), m, ctx);
            worstRel = std::max(worstRel, std::abs(Waa - W) / std::abs(W));
            for(int s = 0; s < 20; s++) {
                Eigen::VectorXcd g = oracle::random_complex(rng, Q.cols());
                std::complex<double> Wg = coords::superpotential_homog(reduction::act_N(z, Q, g), m);
                worstInv = std::max(worstInv, std::abs(Wg - W) / std::abs(W));
            }
        }
    }
    return {worstRel <= 1e-8 && worstInv <= 1e-12, "relative error " + fmt(worstRel) + ", invariance " + fmt(worstInv)};
}

Verdict fulton()
{
    double worst = 0;
    for(int i = 0; i <= 100; i++) {
        double x = -5 + 0.1 * i;
        worst = std::max(worst, std::abs(kahler::fulton_potential_P1(1, x) - kahler::reduction_potential_P1(1, x)));
    }
    double gap = kahler::fulton_potential_P1_d2(2, 0) - kahler::reduction_potential_P1_d2(2, 0);
    return {worst <= 1e-12 && std::abs(gap - 1.0 / 3) <= 1e-9, "k = 1 deviation " + fmt(worst) +
        ", k = 2 curvature gap 1/3 + " + fmt(gap - 1.0 / 3)};
}

Verdict chartAtlas()
{
    const IntegerMatrix B{{1, 0, -1}, {0, 1, -1}};
    coords::Chart c12 = coords::make_chart(B, {0, 1}), c13 = coords::make_chart(B, {0, 2});
    if(coords::transition_exponents(B, c13, c12) != IntegerMatrix{{1, -1}, {0, -1}})
        return {false, "P^2 transition exponents differ from y1/y2, 1/y2"};
    double worstTrip = 0, worstFiber = 0;
    std::mt19937_64 rng(53);
    for(std::string name : {"p1", "p2", "p3", "p2blow3"}) {
        ToricModel m = model(name);
        const IntegerMatrix& Bm = m.presentation().B;
        std::vector<coords::Chart> charts = coords::atlas(m);
        for(int t = 0; t < 50; t++) {
            Eigen::VectorXcd y = oracle::random_complex(rng, m.n());
            std::complex<double> yq = oracle::random_complex(rng, 1)(0);
            for(const coords::Chart& a : charts)
                for(const coords::Chart& b : charts) {
                    Eigen::VectorXcd back = coords::transition(coords::transition(y, Bm, a, b), Bm, b, a);
                    worstTrip = std::max(worstTrip, (back - y).norm() / y.norm());
                    coords::FiberTransition ft = coords::km_fiber_transition(y, yq, Bm, a, b);
                    std::complex<double> W = y.prod() * yq;
                    worstFiber = std::max(worstFiber, std::abs(ft.base.prod() * ft.fiber - W) / std::abs(W));
                }
        }
    }
    return {worstTrip <= 1e-12 && worstFiber <= 1e-12, "exponents exact; round trip " + fmt(worstTrip) +
        ", fiber invariance " + fmt(worstFiber)};
}

Verdict zeroSection()
{
    double worst = 0;
    for(std::string name : {"kp1", "kp1_straight", "kp2"}) {
        ToricModel m = model(name);
        std::size_t n = m.n() - 1;
        std::mt19937_64 rng(59);
        for(int t = 0; t < 200; t++) {
            Eigen::VectorXcd z = oracle::random_complex(rng, n + 1);
            Eigen::VectorXd ref = Eigen::VectorXd::Zero(n + 1);
            ref.head(n) = oracle::pn_moment(z, 1);
            worst = std::max(worst, (reduction::moment_map(join(z, 0), m) - ref).lpNorm<Eigen::Infinity>());
        }
    }
    return {worst <= 1e-10, "max deviation " + fmt(worst)};
}

std::string inProcess(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    cli::run(args, out, err);
    return out.str();
}

std::string external(const std::vector<std::string>& args)
{
    std::string cmd = std::string("\"") + TORIC_BINARY + "\"";
    for(const std::string& a : args) cmd += " '" + a + "'";
    std::string out;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if(!pipe) return "<popen failed>";
    char buf[4096];
    std::size_t got;
    while((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}

Verdict determinism()
{
    std::vector<std::vector<std::string>> commands{
        {"grid", oracle::data_path("kp2"), "--what", "moment", "--steps", "100", "--seed", "11"},
        {"grid", oracle::data_path("p2blow3"), "--what", "hessdet", "--steps", "12"},
        {"superpotential-check", oracle::data_path("kp1"), "--steps", "100", "--seed", "3"},
        {"validate", oracle::data_path("kp2blow3")},
        {"moment", oracle::data_path("p2blow3"), "--point", "[1, [0, 2], 3, 1, [1, 1], 0.5]"}};
    for(const auto& c : commands) {
        std::string a = inProcess(c), b = inProcess(c);
        std::string e1 = external(c), e2 = external(c);
        if(a.empty() || a != b) return {false, c[0] + ": in-process runs differ"};
        if(e1 != e2) return {false, c[0] + ": separate processes differ"};
        if(e1 != a) return {false, c[0] + ": executable output differs from in-process output"};
    }
    return {true, std::to_string(commands.size()) + " commands byte-identical across 4 runs each"};
}

}  // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"exact lattice identities", exactIdentities},
        {"moment map against closed forms", oracleEquivalence},
        {"vertex sets and Delzant verdicts", vertexSets},
        {"Hessian duality and gradient of G", hessianDuality},
        {"Legendre round trips", legendreRoundtrips},
        {"calibrated gradient equals log|t|", bridgeIdentity},
        {"superpotential consistency", superpotential},
        {"Fulton potential comparison", fulton},
        {"chart atlas", chartAtlas},
        {"zero section of the canonical bundle", zeroSection},
        {"CLI determinism", determinism}};
    int failures = 0;
    for(std::size_t i = 0; i < criteria.size(); i++) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch(const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << v.detail << ")" << std::endl;
    }
    return failures ? 1 : 0;
}
