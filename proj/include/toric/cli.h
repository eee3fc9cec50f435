/** \file    cli.h
    \brief   Configuration files and the command-line front end

    Configuration files are JSON objects:
      name              string
      d, n              optional counts, checked against B
      B                 row-major integer matrix
      Q, A              optional integer matrices (derived when absent)
      level             {"kappa": [...]} or {"a": [...], "anchor": [...]} (anchor optional, 1-based)
      canonical_bundle  optional {"convention": "all-ones"|"straight", "anchor": [...]};
                        when present the file describes the canonical bundle of the given base
      expected          optional {"B": ..., "Q": ..., "A": ...} reference matrices of the
                        (extended) presentation, compared by `validate`
    All index sets in files and on the command line are 1-based.
*/
#pragma once
#include "toric/lattice.h"
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace toric {
namespace cli {

struct LevelSpec {
    std::optional<std::vector<double>> kappa;
    std::optional<std::vector<double>> a;
    std::optional<std::vector<std::size_t>> anchor;   ///< zero-based
};

struct CanonicalSpec {
    CanonicalConvention convention = CanonicalConvention::AllOnes;
    std::optional<std::vector<std::size_t>> anchor;   ///< zero-based
};

struct PresentationConfig {
    std::string name;
    std::string source;                 ///< file name used in error messages
    IntegerMatrix B;
    std::optional<IntegerMatrix> Q, A;
    LevelSpec level;
    std::optional<CanonicalSpec> canonical;
    std::optional<IntegerMatrix> expectedB, expectedQ, expectedA;
};

/// parse a configuration; throws ParseError with the line or JSON field of the problem
PresentationConfig parse_config(const std::string& text, const std::string& source);

/// read and parse a configuration file
PresentationConfig load_config(const std::string& path);

/// command-line replacements for parts of a configuration
struct Overrides {
    std::optional<std::vector<double>> a, kappa;
    std::optional<std::vector<std::size_t>> anchor;   ///< zero-based
    std::optional<CanonicalConvention> convention;
};
void apply_overrides(PresentationConfig& cfg, const Overrides& ov);

/// kappa of the base presentation, from the level specification
Eigen::VectorXd resolve_kappa(const PresentationConfig& cfg, const IntegerMatrix& Q);

/// the presentation of the base manifold described by the configuration
ToricPresentation base_presentation(const PresentationConfig& cfg);

/// the presentation described by the configuration (extended when it is a canonical bundle)
ToricPresentation build_presentation(const PresentationConfig& cfg);

/** Run the command line. `args` excludes the program name.
    Returns 0 on success, 1 on a mathematical or domain failure and 2 on a usage or parse error.
*/
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace toric
