#include "toric/cli.h"
#include "toric/coords.h"
#include "toric/errors.h"
#include "toric/log.h"
#include "toric/reduction.h"
#include <CLI11.hpp>
#include <json.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

namespace toric {
namespace cli {

using ojson = nlohmann::ordered_json;

namespace {

// ------ conversions between library values and JSON ------

ojson toJson(const IntegerMatrix& M)
{
    ojson rows = ojson::array();
    for(std::size_t i = 0; i < M.rows(); i++) {
        ojson row = ojson::array();
        for(std::size_t j = 0; j < M.cols(); j++) {
            const Integer& v = M(i, j);
            if(v >= Integer(INT64_MIN) && v <= Integer(INT64_MAX))
                row.push_back(v.convert_to<long long>());
            else
                row.push_back(v.str());
        }
        rows.push_back(row);
    }
    return rows;
}

ojson toJson(const Eigen::VectorXd& v)
{
    ojson a = ojson::array();
    for(Eigen::Index i = 0; i < v.size(); i++) a.push_back(v(i) + 0.0);
    return a;
}

ojson toJson(const Eigen::MatrixXd& M)
{
    ojson rows = ojson::array();
    for(Eigen::Index i = 0; i < M.rows(); i++) {
        ojson row = ojson::array();
        for(Eigen::Index j = 0; j < M.cols(); j++) row.push_back(M(i, j) + 0.0);
        rows.push_back(row);
    }
    return rows;
}

ojson toJson(const Eigen::VectorXcd& z)
{
    ojson a = ojson::array();
    for(Eigen::Index i = 0; i < z.size(); i++)
        a.push_back(ojson::array({z(i).real() + 0.0, z(i).imag() + 0.0}));
    return a;
}

ojson indexJson(const std::vector<std::size_t>& idx)
{
    ojson a = ojson::array();
    for(std::size_t j : idx) a.push_back(j + 1);
    return a;
}

ojson integerList(const std::vector<Integer>& v)
{
    ojson a = ojson::array();
    for(const Integer& x : v) a.push_back(x.convert_to<long long>());
    return a;
}

nlohmann::json parseJsonArg(const std::string& text, const std::string& flag)
{
    try {
        return nlohmann::json::parse(text);
    } catch(const nlohmann::json::parse_error& e) {
        throw ParseError(flag + ": invalid JSON (" + std::string(e.what()) + ")");
    }
}

/// numbers given either as a JSON array or as a comma-separated list
std::vector<double> parseRealList(const std::string& text, const std::string& flag)
{
    std::string t = text;
    if(t.empty() || t[0] != '[') t = "[" + t + "]";
    nlohmann::json j = parseJsonArg(t, flag);
    std::vector<double> out;
    for(const auto& v : j) {
        if(!v.is_number()) throw ParseError(flag + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::size_t> parseIndexList(const std::string& text, const std::string& flag)
{
    std::vector<std::size_t> out;
    for(double v : parseRealList(text, flag)) {
        if(v < 1 || v != std::floor(v)) throw ParseError(flag + ": indices must be positive integers");
        out.push_back(static_cast<std::size_t>(v) - 1);
    }
    return out;
}

Eigen::VectorXcd parseComplexPoint(const std::string& text, std::size_t expected)
{
    nlohmann::json j = parseJsonArg(text, "--point");
    if(!j.is_array())
        throw ParseError("--point: expected an array of complex numbers [re, im]");
    if(j.size() != expected)
        throw ParseError("--point: expected " + std::to_string(expected) + " coordinates, got " +
            std::to_string(j.size()));
    Eigen::VectorXcd z(j.size());
    for(std::size_t i = 0; i < j.size(); i++) {
        if(j[i].is_number())
            z(i) = j[i].get<double>();
        else if(j[i].is_array() && j[i].size() == 2 && j[i][0].is_number() && j[i][1].is_number())
            z(i) = std::complex<double>(j[i][0].get<double>(), j[i][1].get<double>());
        else
            throw ParseError("--point: entry " + std::to_string(i) + " is not a number or [re, im] pair");
    }
    return z;
}

Eigen::VectorXd parseRealPoint(const nlohmann::json& j, std::size_t expected, const std::string& what)
{
    if(!j.is_array() || j.size() != expected)
        throw ParseError(what + ": expected an array of " + std::to_string(expected) + " numbers");
    Eigen::VectorXd v(expected);
    for(std::size_t i = 0; i < expected; i++) {
        if(!j[i].is_number()) throw ParseError(what + ": entry " + std::to_string(i) + " is not a number");
        v(i) = j[i].get<double>();
    }
    return v;
}

std::string csvNumber(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);
    return buf;
}

Eigen::VectorXcd randomPoint(std::mt19937_64& rng, std::size_t d)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd z(d);
    for(std::size_t j = 0; j < d; j++) {
        double re = gauss(rng);
        double im = gauss(rng);
        z(j) = std::complex<double>(re, im);
    }
    return z;
}

/// shared option values of all subcommands
struct Options {
    std::string config, a, kappa, anchor, point, what, convention;
    unsigned long long seed = 1;
    int steps = -1;
    double tol = polytope::DEFAULT_TOL;
};

PresentationConfig loadWithOverrides(const Options& o)
{
    PresentationConfig cfg = load_config(o.config);
    Overrides ov;
    if(!o.a.empty()) ov.a = parseRealList(o.a, "--a");
    if(!o.kappa.empty()) ov.kappa = parseRealList(o.kappa, "--kappa");
    if(!o.anchor.empty()) ov.anchor = parseIndexList(o.anchor, "--anchor");
    if(!o.convention.empty())
        ov.convention = o.convention == "straight" ? CanonicalConvention::Straight : CanonicalConvention::AllOnes;
    apply_overrides(cfg, ov);
    return cfg;
}

const char* conventionName(CanonicalConvention c)
{
    return c == CanonicalConvention::AllOnes ? "all-ones" : "straight";
}

/// lattices spanned by the columns of two matrices coincide
bool sameLattice(const IntegerMatrix& X, const IntegerMatrix& Y)
{
    if(X.rows() != Y.rows() || X.cols() != Y.cols()) return false;
    lattice::SmithDecomposition sx = lattice::smith_decomposition(X), sy = lattice::smith_decomposition(Y),
        sxy = lattice::smith_decomposition(hstack(X, Y));
    auto product = [](const lattice::SmithDecomposition& s) {
        Integer p = 1;
        for(const Integer& v : s.diagonal) p *= v;
        return p;
    };
    // equal ranks and equal lattice indices of X, Y and X + Y
    return sx.rank() == sxy.rank() && sy.rank() == sxy.rank() &&
        product(sx) == product(sxy) && product(sy) == product(sxy);
}

ojson delzantJson(const lattice::DelzantReport& rep)
{
    ojson out;
    out["pass"] = rep.pass();
    out["simple"] = rep.simple;
    out["rational"] = rep.rational;
    out["smooth"] = rep.smooth;
    ojson verts = ojson::array(), failures = ojson::array();
    for(const lattice::VertexDet& v : rep.vertices) {
        ojson vj;
        vj["J"] = indexJson(v.active);
        vj["xi"] = toJson(v.xi);
        vj["det"] = v.det.convert_to<long long>();
        vj["smooth"] = v.smooth;
        if(!v.smooth) failures.push_back(ojson{{"J", indexJson(v.active)}, {"det", v.det.convert_to<long long>()}});
        verts.push_back(vj);
    }
    out["vertices"] = verts;
    out["failures"] = failures;
    return out;
}

// ------ subcommands ------

int cmdValidate(const Options& o, std::ostream& out)
{
    PresentationConfig cfg = loadWithOverrides(o);
    const std::size_t n = cfg.B.rows(), d = cfg.B.cols();
    ojson rep;
    rep["name"] = cfg.name;
    rep["n"] = n;
    rep["d"] = d;
    bool pass = true;
    ojson lat;
    std::optional<ToricPresentation> base;
    try {
        IntegerMatrix Q = cfg.Q ? *cfg.Q : lattice::kernel_basis(cfg.B);
        lattice::ExactPairReport ep = lattice::check_exact_pair(cfg.B, Q);
        lat["BQ_zero"] = ep.BQ_zero;
        lat["rank_Q"] = ep.rank_Q;
        lat["Q_full_rank"] = ep.Q_full_rank;
        lat["Q_saturated"] = ep.Q_saturated;
        lat["B_surjective"] = ep.B_surjective;
        lat["smith_diagonal_B"] = integerList(ep.smith_B);
        lat["nonprimitive_columns"] = indexJson(ep.nonprimitive_columns);
        pass = pass && ep.pass();
        if(ep.pass()) {
            IntegerMatrix A = cfg.A ? *cfg.A : lattice::right_inverse(cfg.B);
            bool baId = (cfg.B * A).isIdentity();
            lat["BA_identity"] = baId;
            pass = pass && baId;
            Eigen::VectorXd kappa = resolve_kappa(cfg, Q);
            Eigen::VectorXd a = -(Q.toDouble().transpose() * kappa);
            bool consistent = true;
            if(cfg.level.a)
                for(std::size_t l = 0; l < cfg.level.a->size(); l++)
                    consistent = consistent && std::abs(a(l) - (*cfg.level.a)[l]) <= 1e-12 * std::max(1.0, std::abs(a(l)));
            lat["kappa"] = toJson(kappa);
            lat["a"] = toJson(a);
            lat["kappa_level_consistent"] = consistent;
            pass = pass && consistent;
            if(baId) base = lattice::make_presentation(cfg.name, cfg.B, Q, A, kappa);
        }
    } catch(const Error& e) {
        lat["error"] = e.what();
        pass = false;
    }
    rep["lattice"] = lat;
    if(base) {
        try {
            ToricModel model(*base, o.tol);
            rep["bounded"] = model.halfspaces().bounded();
            lattice::DelzantReport dz = lattice::delzant_check(base->B, model.vertices());
            rep["delzant"] = delzantJson(dz);
            pass = pass && dz.pass();
        } catch(const Error& e) {
            rep["polytope_error"] = e.what();
            pass = false;
        }
    }
    if(cfg.canonical && base) {
        ojson can;
        can["convention"] = conventionName(cfg.canonical->convention);
        try {
            ToricPresentation k = lattice::extend_to_canonical(*base, cfg.canonical->convention, cfg.canonical->anchor);
            bool bq = (k.B * k.Q).isZero(), ba = (k.B * k.A).isIdentity(), cs = true, ones = true;
            for(std::size_t l = 0; l < k.Q.cols(); l++) {
                Integer s = 0;
                for(std::size_t i = 0; i < k.Q.rows(); i++) s += k.Q(i, l);
                cs = cs && s == 0;
            }
            for(std::size_t j = 0; j < k.B.cols(); j++) ones = ones && k.B(k.n() - 1, j) == 1;
            can["BQ_zero"] = bq;
            can["BA_identity"] = ba;
            can["Q_column_sums_zero"] = cs;
            can["last_row_all_ones"] = ones;
            bool ok = bq && ba && cs && (cfg.canonical->convention != CanonicalConvention::AllOnes || ones);
            ojson ex;
            if(cfg.expectedB) { ex["B"] = *cfg.expectedB == k.B; ok = ok && ex["B"].get<bool>(); }
            if(cfg.expectedQ) { ex["Q"] = sameLattice(*cfg.expectedQ, k.Q); ok = ok && ex["Q"].get<bool>(); }
            if(cfg.expectedA) {
                bool aok = cfg.expectedA->rows() == k.d() && cfg.expectedA->cols() == k.n() &&
                    (k.B * *cfg.expectedA).isIdentity();
                ex["A"] = aok;
                ok = ok && aok;
            }
            if(!ex.empty()) can["expected"] = ex;
            ToricModel km(k, o.tol);
            lattice::DelzantReport dz = lattice::delzant_check(k.B, km.vertices());
            can["delzant"] = delzantJson(dz);
            ok = ok && dz.pass();
            pass = pass && ok;
        } catch(const Error& e) {
            can["error"] = e.what();
            pass = false;
        }
        rep["canonical_bundle"] = can;
    } else if(!cfg.canonical && base) {
        ojson ex;
        bool ok = true;
        if(cfg.expectedB) { ex["B"] = *cfg.expectedB == base->B; ok = ok && ex["B"].get<bool>(); }
        if(cfg.expectedQ) { ex["Q"] = sameLattice(*cfg.expectedQ, base->Q); ok = ok && ex["Q"].get<bool>(); }
        if(cfg.expectedA) {
            bool aok = cfg.expectedA->rows() == d && cfg.expectedA->cols() == n && (base->B * *cfg.expectedA).isIdentity();
            ex["A"] = aok;
            ok = ok && aok;
        }
        if(!ex.empty()) rep["expected"] = ex;
        pass = pass && ok;
    }
    rep["pass"] = pass;
    out << rep.dump(2) << '\n';
    return pass ? 0 : 1;
}

int cmdPolytope(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    const polytope::HalfSpaceSet& hs = model.halfspaces();
    ojson rep;
    rep["name"] = model.presentation().name;
    rep["n"] = model.n();
    rep["d"] = model.d();
    rep["normals"] = toJson(hs.normals());
    rep["offsets"] = toJson(hs.offsets());
    rep["bounded"] = hs.bounded();
    rep["interior_point"] = toJson(hs.interiorPoint());
    ojson verts = ojson::array();
    for(const VertexRecord& v : model.vertices())
        verts.push_back(ojson{{"J", indexJson(v.active)}, {"xi", toJson(v.xi)}, {"simple", v.simple()}});
    rep["vertices"] = verts;
    out << rep.dump(2) << '\n';
    return 0;
}

int cmdVertices(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    ojson verts = ojson::array();
    for(const VertexRecord& v : model.vertices())
        verts.push_back(toJson(v.xi));
    out << verts.dump() << '\n';
    return 0;
}

int cmdKmExtend(const Options& o, std::ostream& out)
{
    PresentationConfig cfg = loadWithOverrides(o);
    ToricPresentation k = cfg.canonical ? build_presentation(cfg) :
        lattice::extend_to_canonical(base_presentation(cfg));
    ojson rep;
    rep["name"] = k.name;
    rep["convention"] = conventionName(k.convention);
    rep["B"] = toJson(k.B);
    rep["Q"] = toJson(k.Q);
    rep["A"] = toJson(k.A);
    rep["kappa"] = toJson(k.kappa);
    rep["a"] = toJson(k.a);
    out << rep.dump(2) << '\n';
    return 0;
}

Eigen::VectorXcd requirePoint(const Options& o, const ToricModel& model)
{
    if(o.point.empty()) throw ParseError("--point is required");
    return parseComplexPoint(o.point, model.d());
}

int cmdMoment(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    Eigen::VectorXcd z = requirePoint(o, model);
    reduction::RetractionResult R = reduction::retract(z, model);
    Eigen::VectorXd xi = reduction::moment_map(z, model);
    polytope::Classification cls = polytope::classify(model.halfspaces(), xi, o.tol);
    ojson rep;
    rep["xi"] = toJson(xi);
    rep["lambda"] = toJson(R.lambda);
    rep["residual"] = R.residual;
    rep["iterations"] = R.iterations;
    rep["region"] = polytope::region_name(cls.region);
    rep["face"] = indexJson(cls.face);
    out << rep.dump(2) << '\n';
    return 0;
}

int cmdRetract(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    Eigen::VectorXcd z = requirePoint(o, model);
    reduction::RetractionResult R = reduction::retract(z, model);
    ojson rep;
    rep["lambda"] = toJson(R.lambda);
    rep["point"] = toJson(R.scaled_point);
    rep["residual"] = R.residual;
    rep["iterations"] = R.iterations;
    rep["fallback_steps"] = R.fallbackSteps;
    out << rep.dump(2) << '\n';
    return 0;
}

int cmdPotential(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    kahler::PotentialContext ctx(model);
    if(o.point.empty()) throw ParseError("--point is required");
    Eigen::VectorXd p = parseRealPoint(parseJsonArg(o.point, "--point"), model.n(), "--point");
    std::string what = o.what.empty() ? "xi" : o.what;
    Eigen::VectorXd xi;
    if(what == "xi") xi = p;
    else if(what == "x") xi = kahler::legendre_to_xi(ctx, p);
    else throw ParseError("--what: potential accepts xi or x");
    Eigen::VectorXd x = kahler::grad_G_calibrated(ctx, xi);
    double G = kahler::G_value(ctx, xi);
    ojson rep;
    rep["xi"] = toJson(xi);
    rep["x"] = toJson(x);
    rep["x_raw"] = toJson(kahler::grad_G(ctx, xi));
    rep["calibration"] = toJson(ctx.calibration());
    rep["G"] = G;
    rep["F"] = (x + ctx.calibration()).dot(xi) - G;
    rep["hess_G"] = toJson(kahler::hess_G(ctx, xi));
    rep["hess_F"] = toJson(kahler::hess_F_at(ctx, xi));
    out << rep.dump(2) << '\n';
    return 0;
}

int cmdConvert(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    const ToricPresentation& pres = model.presentation();
    std::string what = o.what.empty() ? "to-aa" : o.what;
    if(o.point.empty()) throw ParseError("--point is required");
    ojson rep;
    if(what == "from-aa") {
        nlohmann::json j = parseJsonArg(o.point, "--point");
        if(!j.is_object() || !j.contains("xi") || !j.contains("theta"))
            throw ParseError("--point: from-aa expects {\"xi\": [...], \"theta\": [...]}");
        coords::ActionAnglePoint aa;
        aa.xi = parseRealPoint(j["xi"], model.n(), "--point xi");
        aa.theta = parseRealPoint(j["theta"], model.n(), "--point theta");
        kahler::PotentialContext ctx(model);
        Eigen::VectorXcd z = coords::from_action_angle(aa, model, ctx);
        rep["z"] = toJson(z);
        coords::ActionAnglePoint back = coords::action_angle(z, model);
        rep["roundtrip"] = ojson{{"xi", toJson(back.xi)}, {"theta", toJson(back.theta)}};
    } else {
        Eigen::VectorXcd z = requirePoint(o, model);
        if(what == "to-aa") {
            coords::ActionAnglePoint aa = coords::action_angle(z, model);
            rep["xi"] = toJson(aa.xi);
            rep["theta"] = toJson(aa.theta);
            rep["t"] = toJson(coords::torus_coords(z, pres.B));
        } else if(what == "torus") {
            rep["t"] = toJson(coords::torus_coords(z, pres.B));
        } else if(what == "charts") {
            ojson charts = ojson::array();
            for(const coords::Chart& c : coords::atlas(model)) {
                ojson cj;
                cj["J"] = indexJson(c.vertex);
                cj["exponents"] = toJson(c.exponents);
                try {
                    cj["y"] = toJson(coords::to_chart(z, c));
                } catch(const DomainError&) {
                    cj["y"] = nullptr;
                }
                charts.push_back(cj);
            }
            rep["charts"] = charts;
        } else {
            throw ParseError("--what: convert accepts to-aa, from-aa, torus or charts");
        }
    }
    out << rep.dump(2) << '\n';
    return 0;
}

int cmdSuperpotentialCheck(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    const ToricPresentation& pres = model.presentation();
    if(!pres.canonicalBundle)
        throw DomainError("superpotential-check: '" + pres.name + "' is not a canonical bundle");
    kahler::PotentialContext ctx(model);
    const int count = o.steps > 0 ? o.steps : 500;
    std::mt19937_64 rng(o.seed);
    std::lognormal_distribution<double> mag(0.0, 0.5);
    std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
    double maxRel = 0, maxInv = 0;
    for(int i = 0; i < count; i++) {
        Eigen::VectorXcd z = randomPoint(rng, model.d());
        std::complex<double> Wh = coords::superpotential_homog(z, model);
        std::complex<double> Wa = coords::superpotential_aa(coords::action_angle(z, model), model, ctx);
        maxRel = std::max(maxRel, std::abs(Wa - Wh) / std::abs(Wh));
        for(int s = 0; s < 20; s++) {
            Eigen::VectorXcd lambda(pres.Q.cols());
            for(Eigen::Index l = 0; l < lambda.size(); l++) lambda(l) = std::polar(mag(rng), phase(rng));
            std::complex<double> Ws = coords::superpotential_homog(reduction::act_N(z, pres.Q, lambda), model);
            maxInv = std::max(maxInv, std::abs(Ws - Wh) / std::abs(Wh));
        }
    }
    bool pass = maxRel <= 1e-8 && maxInv <= 1e-12;
    ojson rep;
    rep["points"] = count;
    rep["seed"] = o.seed;
    rep["max_relative_error"] = maxRel;
    rep["max_invariance_error"] = maxInv;
    rep["pass"] = pass;
    out << rep.dump(2) << '\n';
    return pass ? 0 : 1;
}

/// regular lattice of interior points, `steps` per axis
std::vector<Eigen::VectorXd> interiorLattice(const ToricModel& model, int steps, double tol)
{
    const std::size_t n = model.n();
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, INFINITY), hi = Eigen::VectorXd::Constant(n, -INFINITY);
    for(const VertexRecord& v : model.vertices()) {
        lo = lo.cwiseMin(v.xi);
        hi = hi.cwiseMax(v.xi);
    }
    if(model.vertices().empty()) {
        lo = model.halfspaces().interiorPoint().array() - 1;
        hi = model.halfspaces().interiorPoint().array() + 1;
    }
    if(!model.halfspaces().bounded()) {
        double diam = std::max(1.0, (hi - lo).norm());
        lo.array() -= diam;
        hi.array() += diam;
    }
    std::vector<Eigen::VectorXd> pts;
    std::vector<int> idx(n, 0);
    while(true) {
        Eigen::VectorXd xi(n);
        for(std::size_t m = 0; m < n; m++)
            xi(m) = lo(m) + (hi(m) - lo(m)) * (idx[m] + 1) / (steps + 1.0);
        if(polytope::classify(model.halfspaces(), xi, tol).region == polytope::Region::Interior)
            pts.push_back(xi);
        std::size_t m = n;
        while(m > 0 && idx[m - 1] == steps - 1) { idx[m - 1] = 0; m--; }
        if(m == 0) break;
        idx[m - 1]++;
    }
    return pts;
}

int cmdGrid(const Options& o, std::ostream& out)
{
    ToricModel model(build_presentation(loadWithOverrides(o)), o.tol);
    const std::size_t n = model.n(), d = model.d();
    std::string what = o.what.empty() ? "moment" : o.what;
    int steps = o.steps > 0 ? o.steps : 10;
    std::ostringstream csv;
    auto header = [&](std::vector<std::string> cols) {
        for(std::size_t i = 0; i < cols.size(); i++) csv << (i ? "," : "") << cols[i];
        csv << '\n';
    };
    auto row = [&](const std::vector<double>& vals) {
        for(std::size_t i = 0; i < vals.size(); i++) csv << (i ? "," : "") << csvNumber(vals[i]);
        csv << '\n';
    };
    std::vector<std::string> xiCols;
    for(std::size_t m = 0; m < n; m++) xiCols.push_back("xi" + std::to_string(m + 1));
    if(what == "moment") {
        std::vector<std::string> cols{"index"};
        for(std::size_t j = 0; j < d; j++) {
            cols.push_back("z" + std::to_string(j + 1) + "_re");
            cols.push_back("z" + std::to_string(j + 1) + "_im");
        }
        cols.insert(cols.end(), xiCols.begin(), xiCols.end());
        header(cols);
        std::mt19937_64 rng(o.seed);
        for(int i = 0; i < steps; i++) {
            Eigen::VectorXcd z = randomPoint(rng, d);
            Eigen::VectorXd xi = reduction::moment_map(z, model);
            std::vector<double> vals{static_cast<double>(i)};
            for(std::size_t j = 0; j < d; j++) { vals.push_back(z(j).real()); vals.push_back(z(j).imag()); }
            for(std::size_t m = 0; m < n; m++) vals.push_back(xi(m));
            row(vals);
        }
    } else if(what == "G" || what == "F" || what == "hessdet") {
        kahler::PotentialContext ctx(model);
        std::vector<std::string> cols = xiCols;
        if(what == "F")
            for(std::size_t m = 0; m < n; m++) cols.push_back("x" + std::to_string(m + 1));
        cols.push_back(what == "hessdet" ? "det_hess_G" : what);
        header(cols);
        for(const Eigen::VectorXd& xi : interiorLattice(model, steps, o.tol)) {
            std::vector<double> vals(xi.data(), xi.data() + n);
            if(what == "G") {
                vals.push_back(kahler::G_value(ctx, xi));
            } else if(what == "F") {
                Eigen::VectorXd x = kahler::grad_G_calibrated(ctx, xi);
                vals.insert(vals.end(), x.data(), x.data() + n);
                vals.push_back((x + ctx.calibration()).dot(xi) - kahler::G_value(ctx, xi));
            } else {
                vals.push_back(kahler::hess_G(ctx, xi).determinant());
            }
            row(vals);
        }
    } else {
        throw ParseError("--what: grid accepts moment, G, F or hessdet");
    }
    out << csv.str();
    return 0;
}

}  // internal namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Toric quotients: polytopes, moment maps, potentials and coordinates", "toric"};
    app.require_subcommand(1);
    Options o;
    typedef std::function<int(const Options&, std::ostream&)> Handler;
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("config", o.config, "configuration file (JSON)")->required();
        sub->add_option("--a", o.a, "level a, as a JSON array or comma-separated list");
        sub->add_option("--kappa", o.kappa, "facet offsets kappa (replaces the level)");
        sub->add_option("--anchor", o.anchor, "1-based anchor facets used to pin kappa");
        sub->add_option("--point", o.point, "point as JSON; complex numbers as [re, im]");
        sub->add_option("--seed", o.seed, "seed of the random generator");
        sub->add_option("--steps", o.steps, "number of samples or lattice steps per axis");
        sub->add_option("--tol", o.tol, "feasibility tolerance for vertices and classification");
        sub->add_option("--what", o.what, "variant of the subcommand");
        sub->add_option("--convention", o.convention, "canonical bundle basis")
            ->check(CLI::IsMember({"straight", "all-ones"}));
        commands.emplace_back(sub, h);
    };
    add("validate", "check the lattice identities and the Delzant conditions", cmdValidate);
    add("polytope", "facets, vertices and boundedness of the moment polytope", cmdPolytope);
    add("vertices", "vertex coordinates of the moment polytope", cmdVertices);
    add("km-extend", "presentation of the canonical bundle", cmdKmExtend);
    add("moment", "moment map at a homogeneous point", cmdMoment);
    add("retract", "retraction of a homogeneous point onto the level set", cmdRetract);
    add("potential", "potentials, gradients and Hessians at xi (or x with --what x)", cmdPotential);
    add("convert", "coordinate conversions (--what to-aa|from-aa|torus|charts)", cmdConvert);
    add("superpotential-check", "compare the superpotential in two coordinate systems", cmdSuperpotentialCheck);
    add("grid", "CSV samples (--what moment|G|F|hessdet)", cmdGrid);

    std::vector<std::string> argv{"toric"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<char*> cargv;
    for(std::string& s : argv) cargv.push_back(s.data());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch(const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        for(auto& c : commands)
            if(c.first->parsed())
                return c.second(o, out);
    } catch(const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch(const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch(const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace cli
}  // namespace toric
