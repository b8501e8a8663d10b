#ifndef HEDGEHOG_GWRING_HPP
#define HEDGEHOG_GWRING_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hedgehog/quadform.hpp"

namespace hedgehog {

/// Element of GW(k) as a formal difference of rank-one generators <a>.
/// No canonical form is kept; equality goes through gw_equal only.
struct GWElem {
    FieldDescriptor field;
    Vec plus;
    Vec minus;

    static GWElem zero(const FieldDescriptor& k) { return GWElem{k, {}, {}}; }
    static GWElem form(const DiagonalForm& q) { return GWElem{q.field, q.coeffs, {}}; }
    static GWElem generators(const FieldDescriptor& k, const std::vector<long>& entries);
    static GWElem hyperbolic(const FieldDescriptor& k, long copies = 1);

    long rank() const {
        return static_cast<long>(plus.size()) - static_cast<long>(minus.size());
    }
};

GWElem gw_add(const GWElem& x, const GWElem& y);
GWElem gw_sub(const GWElem& x, const GWElem& y);
GWElem gw_mul(const GWElem& x, const GWElem& y);
GWElem gw_scale(const GWElem& x, long n);

/// Complete classical invariants per field kind.
struct GWInvariants {
    long rank = 0;
    std::optional<SquareClass> disc;
    std::optional<SquareClass> signed_disc; // (-1)^{r(r-1)/2} * disc
    std::map<Place, int> hasse;             // relevant places only
    std::optional<long> signature;          // Reals / Rationals
    std::optional<std::pair<long, long>> signatures2; // RealQuadratic embeddings
};

GWInvariants invariants_of(const GWElem& x);

/// Hasse invariant of a virtual element at one place: c(plus)c(minus)
/// (d(x), d(minus))_v, the cocycle extension of c(q) = prod_{i<j}(a_i,a_j)_v.
int hasse_at(const GWElem& x, const Place& v);

/// Signed discriminant as a square class.
SquareClass signed_discriminant(const GWElem& x);

/// Exact equality in GW(k) via the complete invariant set of the field kind.
bool gw_equal(const GWElem& x, const GWElem& y);

/// Sign of u + v sqrt(d) under the embedding sqrt(d) -> +-sqrt(d).
int embedding_sign(const FieldDescriptor& k, const FieldElem& e, bool positive_root);

enum class Functional {
    FieldTrace, // tr(u + v sqrt a) = 2u
    SOne,       // s(1) = 0, s(sqrt a) = 1
};

/// Quadratic extension E = k(sqrt(alpha)) with a chosen nonzero functional.
struct QuadExtension {
    FieldDescriptor base;
    FieldElem alpha;
    Functional functional = Functional::FieldTrace;

    QuadExtension(FieldDescriptor base, FieldElem alpha, Functional fn);
};

/// Element u + v sqrt(alpha) of the extension.
struct ExtElem {
    FieldElem u;
    FieldElem v;
};

/// GW element over a quadratic extension (generator lists of ExtElem).
struct ExtGWElem {
    QuadExtension ext;
    std::vector<ExtElem> plus;
    std::vector<ExtElem> minus;
};

ExtElem ext_mul(const QuadExtension& e, const ExtElem& a, const ExtElem& b);
bool ext_is_zero(const QuadExtension& e, const ExtElem& a);

/// Scharlau transfer along the extension's functional: each generator <b>
/// becomes the 2x2 base form with Gram [[f(b), f(b sqrt a)], [f(b sqrt a),
/// f(b a)]], diagonalized.
GWElem scharlau_transfer(const ExtGWElem& x);

/// Transfer with the s(1)=0, s(sqrt a)=1 functional regardless of the
/// extension's stored choice.
GWElem transfer_s_one(const ExtGWElem& x);

/// chi of the even-dimensional projective quadric closure:
/// n/2 <1,-1> + <2, 2 prod a_i>. Throws OddDimension for odd n.
GWElem euler_characteristic(const FieldDescriptor& k, long n, const Vec& coeffs);

/// Witt class: the unique anisotropic representative (empty = hyperbolic).
struct WittClass {
    FieldDescriptor field;
    Vec rep;

    std::size_t dim() const { return rep.size(); }
};

/// Finite Witt-ring model over F_p or Q_p: all anisotropic classes with an
/// addition table, built by invariant lookup.
class WittModel {
public:
    explicit WittModel(const FieldDescriptor& k);

    const FieldDescriptor& field() const { return field_; }
    std::size_t size() const { return reps_.size(); }
    const Vec& rep(std::size_t i) const { return reps_[i]; }

    std::size_t index_of(const GWElem& x) const; // Witt class of x
    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t zero_index() const { return 0; }

private:
    FieldDescriptor field_;
    std::vector<Vec> reps_; // reps_[0] is the zero class
    std::vector<std::vector<std::size_t>> add_table_;
};

/// Shared per-field model; built once per process and field.
const WittModel& witt_model(const FieldDescriptor& k);

WittClass witt_reduce(const GWElem& x);

struct IdealMembership {
    bool member = false;
    long closure_iterations = 0; // instrumentation for the fixed point
};

/// Membership in the ideal generated by `generators`, decided exactly in
/// Z x W(k): gcd over ranks of the additive generators {<u> g_i} plus a
/// fixed-point subgroup closure of their rank-zero Witt parts.
IdealMembership ideal_membership_detail(const GWElem& target,
                                        const std::vector<GWElem>& generators);
bool ideal_membership(const GWElem& target, const std::vector<GWElem>& generators);

struct QuotientReport {
    bool is_z2 = false;          // ideal equals all even-rank elements
    bool all_even_rank = true;   // every generator has even rank
    std::vector<std::string> failed_probes;
    long rank_gcd = 0;
    std::size_t reachable_witt_classes = 0;
};

/// Checks whether the ideal generated equals the even-rank ideal GI(k); when
/// it does the quotient is Z/2 via the mod-2 rank map.
QuotientReport quotient_by_even_ideal(const FieldDescriptor& k,
                                      const std::vector<GWElem>& generators);

struct TransferBound {
    GWElem transferred; // s_*(phi)
    GWElem corrected;   // s_*(phi + <gamma>) - <1,-1>, gamma with s_*(<gamma>) hyperbolic
};

std::vector<TransferBound> transfer_subgroup_bound(const QuadExtension& ext,
                                                   const std::vector<ExtGWElem>& probes);

} // namespace hedgehog

#endif
