#include "toric/cli.h"
#include "toric/errors.h"
#include "toric/polytope.h"
#include <json.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

namespace toric {
namespace cli {

using nlohmann::json;

namespace {

std::string located(const std::string& source, const std::string& path, const std::string& msg)
{
    return source + ": " + (path.empty() ? "/" : path) + ": " + msg;
}

Integer parseInteger(const json& v, const std::string& source, const std::string& path)
{
    if(v.is_number_integer())
        return v.is_number_unsigned() ? Integer(v.get<unsigned long long>()) : Integer(v.get<long long>());
    if(v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if(s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos)
            return Integer(s);
    }
    throw ParseError(located(source, path, "expected an integer, got " + v.dump()));
}

IntegerMatrix parseMatrix(const json& v, const std::string& source, const std::string& path,
    std::size_t defaultCols = 0)
{
    if(!v.is_array())
        throw ParseError(located(source, path, "expected a matrix (array of rows)"));
    std::vector<std::vector<Integer>> rows;
    for(std::size_t i = 0; i < v.size(); i++) {
        const std::string rp = path + "/" + std::to_string(i);
        if(!v[i].is_array())
            throw ParseError(located(source, rp, "expected a row (array of integers)"));
        std::vector<Integer> row;
        for(std::size_t j = 0; j < v[i].size(); j++)
            row.push_back(parseInteger(v[i][j], source, rp + "/" + std::to_string(j)));
        if(!rows.empty() && row.size() != rows[0].size())
            throw ParseError(located(source, rp, "row has length " + std::to_string(row.size()) +
                ", expected " + std::to_string(rows[0].size())));
        rows.push_back(std::move(row));
    }
    return IntegerMatrix::fromRows(rows, defaultCols);
}

std::vector<double> parseReals(const json& v, const std::string& source, const std::string& path)
{
    if(!v.is_array())
        throw ParseError(located(source, path, "expected an array of numbers"));
    std::vector<double> out;
    for(std::size_t i = 0; i < v.size(); i++) {
        if(!v[i].is_number())
            throw ParseError(located(source, path + "/" + std::to_string(i), "expected a number, got " + v[i].dump()));
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::vector<std::size_t> parseIndexSet(const json& v, const std::string& source, const std::string& path)
{
    if(!v.is_array())
        throw ParseError(located(source, path, "expected an array of 1-based indices"));
    std::vector<std::size_t> out;
    for(std::size_t i = 0; i < v.size(); i++) {
        if(!v[i].is_number_integer() || v[i].get<long long>() < 1)
            throw ParseError(located(source, path + "/" + std::to_string(i), "expected a positive integer index"));
        out.push_back(v[i].get<std::size_t>() - 1);
    }
    return out;
}

CanonicalConvention parseConvention(const json& v, const std::string& source, const std::string& path)
{
    if(v.is_string()) {
        if(v == "all-ones") return CanonicalConvention::AllOnes;
        if(v == "straight") return CanonicalConvention::Straight;
    }
    throw ParseError(located(source, path, "convention must be \"all-ones\" or \"straight\""));
}

void checkKeys(const json& obj, const std::vector<std::string>& allowed, const std::string& source,
    const std::string& path)
{
    for(auto it = obj.begin(); it != obj.end(); ++it)
        if(std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ParseError(located(source, path + "/" + it.key(), "unknown field"));
}

}  // internal namespace

PresentationConfig parse_config(const std::string& text, const std::string& source)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch(const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for(std::size_t i = 0; i + 1 < e.byte && i < text.size(); i++) {
            if(text[i] == '\n') { line++; col = 1; } else col++;
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
            ": invalid JSON (" + e.what() + ")");
    }
    if(!doc.is_object())
        throw ParseError(located(source, "", "configuration must be a JSON object"));
    checkKeys(doc, {"name", "d", "n", "B", "Q", "A", "level", "canonical_bundle", "expected", "comment"},
        source, "");
    PresentationConfig cfg;
    cfg.source = source;
    cfg.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : source;
    if(!doc.contains("B"))
        throw ParseError(located(source, "/B", "missing required field"));
    cfg.B = parseMatrix(doc["B"], source, "/B");
    const std::size_t n = cfg.B.rows(), d = cfg.B.cols();
    if(n == 0 || d == 0)
        throw ParseError(located(source, "/B", "matrix must be nonempty"));
    if(doc.contains("n") && (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(n)))
        throw ParseError(located(source, "/n", "does not match the number of rows of B (" + std::to_string(n) + ")"));
    if(doc.contains("d") && (!doc["d"].is_number_integer() || doc["d"].get<long long>() != static_cast<long long>(d)))
        throw ParseError(located(source, "/d", "does not match the number of columns of B (" + std::to_string(d) + ")"));
    if(doc.contains("Q")) {
        cfg.Q = parseMatrix(doc["Q"], source, "/Q", d - n);
        if(cfg.Q->rows() != d || cfg.Q->cols() != d - n)
            throw ParseError(located(source, "/Q", "expected a " + std::to_string(d) + "x" +
                std::to_string(d - n) + " matrix"));
    }
    if(doc.contains("A")) {
        cfg.A = parseMatrix(doc["A"], source, "/A");
        if(cfg.A->rows() != d || cfg.A->cols() != n)
            throw ParseError(located(source, "/A", "expected a " + std::to_string(d) + "x" +
                std::to_string(n) + " matrix"));
    }
    if(!doc.contains("level") || !doc["level"].is_object())
        throw ParseError(located(source, "/level", "missing level object"));
    const json& lv = doc["level"];
    checkKeys(lv, {"kappa", "a", "anchor"}, source, "/level");
    if(lv.contains("kappa")) {
        if(lv.contains("a") || lv.contains("anchor"))
            throw ParseError(located(source, "/level", "give either kappa or a (with optional anchor), not both"));
        cfg.level.kappa = parseReals(lv["kappa"], source, "/level/kappa");
        if(cfg.level.kappa->size() != d)
            throw ParseError(located(source, "/level/kappa", "expected " + std::to_string(d) + " entries"));
    } else if(lv.contains("a")) {
        cfg.level.a = parseReals(lv["a"], source, "/level/a");
        if(cfg.level.a->size() != d - n)
            throw ParseError(located(source, "/level/a", "expected " + std::to_string(d - n) + " entries"));
        if(lv.contains("anchor")) {
            cfg.level.anchor = parseIndexSet(lv["anchor"], source, "/level/anchor");
            if(cfg.level.anchor->size() != n)
                throw ParseError(located(source, "/level/anchor", "expected " + std::to_string(n) + " indices"));
            for(std::size_t j : *cfg.level.anchor)
                if(j >= d)
                    throw ParseError(located(source, "/level/anchor", "index " + std::to_string(j + 1) + " out of range"));
        }
    } else {
        throw ParseError(located(source, "/level", "needs kappa or a"));
    }
    if(doc.contains("canonical_bundle")) {
        const json& cb = doc["canonical_bundle"];
        if(!cb.is_object())
            throw ParseError(located(source, "/canonical_bundle", "expected an object"));
        checkKeys(cb, {"convention", "anchor"}, source, "/canonical_bundle");
        CanonicalSpec spec;
        if(cb.contains("convention"))
            spec.convention = parseConvention(cb["convention"], source, "/canonical_bundle/convention");
        if(cb.contains("anchor")) {
            spec.anchor = parseIndexSet(cb["anchor"], source, "/canonical_bundle/anchor");
            if(spec.anchor->size() != n)
                throw ParseError(located(source, "/canonical_bundle/anchor", "expected " + std::to_string(n) + " indices"));
        }
        cfg.canonical = spec;
    }
    if(doc.contains("expected")) {
        const json& ex = doc["expected"];
        if(!ex.is_object())
            throw ParseError(located(source, "/expected", "expected an object"));
        checkKeys(ex, {"B", "Q", "A"}, source, "/expected");
        if(ex.contains("B")) cfg.expectedB = parseMatrix(ex["B"], source, "/expected/B");
        if(ex.contains("Q")) cfg.expectedQ = parseMatrix(ex["Q"], source, "/expected/Q");
        if(ex.contains("A")) cfg.expectedA = parseMatrix(ex["A"], source, "/expected/A");
    }
    return cfg;
}

PresentationConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if(!in)
        throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

void apply_overrides(PresentationConfig& cfg, const Overrides& ov)
{
    const std::size_t n = cfg.B.rows(), d = cfg.B.cols();
    if(ov.kappa) {
        if(ov.kappa->size() != d)
            throw ParseError("--kappa: expected " + std::to_string(d) + " entries");
        cfg.level = LevelSpec();
        cfg.level.kappa = ov.kappa;
    }
    if(ov.a) {
        if(ov.kappa)
            throw ParseError("--a and --kappa are mutually exclusive");
        if(ov.a->size() != d - n)
            throw ParseError("--a: expected " + std::to_string(d - n) + " entries");
        if(cfg.level.kappa) cfg.level.kappa.reset();
        cfg.level.a = ov.a;
    }
    if(ov.anchor) {
        if(ov.anchor->size() != n)
            throw ParseError("--anchor: expected " + std::to_string(n) + " indices");
        for(std::size_t j : *ov.anchor)
            if(j >= d) throw ParseError("--anchor: index " + std::to_string(j + 1) + " out of range");
        if(!cfg.level.a)
            throw ParseError("--anchor requires a level given by a");
        cfg.level.anchor = ov.anchor;
    }
    if(ov.convention) {
        if(!cfg.canonical) cfg.canonical = CanonicalSpec();
        cfg.canonical->convention = *ov.convention;
    }
}

Eigen::VectorXd resolve_kappa(const PresentationConfig& cfg, const IntegerMatrix& Q)
{
    if(cfg.level.kappa)
        return Eigen::Map<const Eigen::VectorXd>(cfg.level.kappa->data(), cfg.level.kappa->size());
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(cfg.level.a->data(), cfg.level.a->size());
    std::vector<std::size_t> anchor = cfg.level.anchor ? *cfg.level.anchor : lattice::default_anchor(cfg.B);
    return polytope::kappa_from_level(Q, a, anchor);
}

ToricPresentation base_presentation(const PresentationConfig& cfg)
{
    IntegerMatrix Q = cfg.Q ? *cfg.Q : lattice::kernel_basis(cfg.B);
    return lattice::make_presentation(cfg.name, cfg.B, Q, cfg.A, resolve_kappa(cfg, Q));
}

ToricPresentation build_presentation(const PresentationConfig& cfg)
{
    ToricPresentation base = base_presentation(cfg);
    if(!cfg.canonical) return base;
    ToricPresentation k = lattice::extend_to_canonical(base, cfg.canonical->convention, cfg.canonical->anchor);
    k.name = cfg.name;
    return k;
}

}  // namespace cli
}  // namespace toric
