#ifndef HEDGEHOG_ENGINE_HPP
#define HEDGEHOG_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "hedgehog/gwring.hpp"
#include "hedgehog/quadform.hpp"

namespace hedgehog {

/// The affine quadric q = a_1 x_1^2 + ... + a_{n+1} x_{n+1}^2 = 1 with an
/// optional claimed rational point. n >= 1.
struct QuadricProblem {
    FieldDescriptor field;
    Vec coefficients; // n+1 nonzero entries
    std::optional<Vec> point;

    QuadricProblem(FieldDescriptor k, Vec coeffs, std::optional<Vec> pt = std::nullopt);

    long n() const { return static_cast<long>(coefficients.size()) - 1; }
    DiagonalForm form() const { return DiagonalForm(field, coefficients); }
};

/// Affine-linear polynomial c_0 + sum_j c_j x_j; index 0 is the constant.
using LinearPoly = Vec;

/// Tangent-field certificate: entries s with sum_i a_i x_i s_i = 0 and empty
/// zero locus on the quadric.
struct SectionCertificate {
    FieldDescriptor field;
    std::vector<LinearPoly> entries;          // n+1 polynomials over n+1 variables
    std::optional<Matrix> basis_change;       // present when built through a split
};

enum class Verdict { SectionExists, NoSection, Unknown };

enum class ObstructionKind { AllEmbeddingsPositive, LevelTooLarge, NecessaryConditionFails };

struct Obstruction {
    ObstructionKind kind;
    std::optional<int> level;  // LevelTooLarge: s(k), absent when infinite
    long level_bound = 0;      // LevelTooLarge: 2n+1
};

/// Criterion identifiers attached to verdicts.
namespace criteria {
inline constexpr const char* kOddPairing = "odd-dimension-pairing";
inline constexpr const char* kIsotropicSplitting = "isotropic-splitting";
inline constexpr const char* kLevelBound = "level-bound";
inline constexpr const char* kCohDim2 = "cohomological-dimension-2";
inline constexpr const char* kRealEmbeddingSigns = "real-embedding-signs";
inline constexpr const char* kValueGroup = "value-group-criterion";
inline constexpr const char* kNecessaryCondition = "necessary-condition";
} // namespace criteria

struct Decision {
    Verdict verdict = Verdict::Unknown;
    std::optional<SectionCertificate> certificate;
    std::string criterion; // which rule fired
    std::optional<Obstruction> obstruction;
    std::string diagnostics;
};

enum class TriState { Yes, No, Unknown };

/// Pairing section (a_2 x_2, -a_1 x_1, ..., a_{n+1} x_{n+1}, -a_n x_n) for
/// odd n; throws OddCaseOnly for even n.
SectionCertificate section_odd(const FieldDescriptor& k, const Vec& coeffs);

/// Even-n section through an isotropic vector: split off a hyperbolic plane,
/// write (0, b_3 y_3, -y_1, b_5 y_5, -b_4 y_4, ...) there, conjugate back.
SectionCertificate section_isotropic(const QuadricProblem& q, long bound);

/// Exact check: the tangent identity holds and the zero locus misses q = 1.
bool verify_section(const QuadricProblem& q, const SectionCertificate& s);

struct RationalPointAnswer {
    TriState state = TriState::Unknown;
    std::optional<Vec> point;
};

RationalPointAnswer has_rational_point(const QuadricProblem& q);

/// Quadratic point on the projective quadric q = 0 through an anisotropic
/// vector u: w orthogonal to u with q(w) != 0 gives k(sqrt(-q(u)/q(w))).
struct QuadraticPoint {
    QuadExtension extension;
    Vec u;
    Vec w;
};

QuadraticPoint quadratic_point(const DiagonalForm& q, const Vec& u, long bound,
                               Functional fn = Functional::FieldTrace);

/// Decides -ab in [D(q)^2] where that is in reach: finite-square-class
/// fields by enumeration; over Q when q is isotropic, of dimension 3, or a
/// scaled all-equal-coefficient form.
TriState binary_in_transfer_ideal(const DiagonalForm& q, const FieldElem& a,
                                  const FieldElem& b);

struct EngineOptions {
    long search_bound = 1000;
};

Decision decide_section(const QuadricProblem& p, const EngineOptions& opt = {});

Decision sphere_decision(const FieldDescriptor& k, long n);

} // namespace hedgehog

#endif
