#ifndef HEDGEHOG_FIELD_HPP
#define HEDGEHOG_FIELD_HPP

#include <optional>
#include <string>
#include <vector>

#include "hedgehog/rational.hpp"

namespace hedgehog {

enum class FieldKind {
    Rationals,
    Reals,
    QuadraticallyClosed,
    FinitePrime,   // F_p, p an odd prime
    PAdic,         // Q_p, p = 2 allowed
    RealQuadratic, // Q(sqrt(d)), d > 1 squarefree
};

/// Which base field a computation runs over. Validated on construction:
/// FinitePrime needs an odd prime, PAdic any prime, RealQuadratic a
/// squarefree d > 1.
struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    Int p = 0; // FinitePrime / PAdic
    Int d = 0; // RealQuadratic

    static FieldDescriptor rationals();
    static FieldDescriptor reals();
    static FieldDescriptor quadratically_closed();
    static FieldDescriptor finite_prime(const Int& p);
    static FieldDescriptor padic(const Int& p);
    static FieldDescriptor real_quadratic(const Int& d);

    bool operator==(const FieldDescriptor& o) const;
    bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }

    /// Finite square-class group available (everything except Q and Q(sqrt d)).
    bool finite_square_classes() const;
    std::string name() const;
};

/// One element of the base field. `u` is the rational coordinate (for
/// FinitePrime a residue in [0,p)); `v` is the sqrt(d) coordinate and is
/// only nonzero over RealQuadratic.
struct FieldElem {
    Rat u = 0;
    Rat v = 0;

    bool operator==(const FieldElem& o) const { return u == o.u && v == o.v; }
};

/// Exact arithmetic in a fixed field; all element constructors canonicalize
/// (mod-p reduction over FinitePrime).
class Field {
public:
    explicit Field(FieldDescriptor desc) : desc_(std::move(desc)) {}

    const FieldDescriptor& desc() const { return desc_; }

    FieldElem make(const Rat& u) const;
    FieldElem make(const Rat& u, const Rat& v) const;
    FieldElem from_string(const std::string& s) const;
    std::string to_string(const FieldElem& e) const;

    FieldElem zero() const { return FieldElem{}; }
    FieldElem one() const { return FieldElem{1, 0}; }
    FieldElem from_int(long n) const { return make(Rat(n)); }

    bool is_zero(const FieldElem& e) const { return e.u == 0 && e.v == 0; }
    bool is_one(const FieldElem& e) const { return e.u == 1 && e.v == 0; }
    bool equal(const FieldElem& a, const FieldElem& b) const { return a == b; }

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem inv(const FieldElem& a) const;
    FieldElem div(const FieldElem& a, const FieldElem& b) const;

private:
    FieldDescriptor desc_;
};

/// Canonical representative of x modulo squares. Representatives:
/// Q: squarefree integer; R: +-1; quadratically closed: 1;
/// F_p: {1, least non-residue}; Q_p (p odd): {1, u, p, up};
/// Q_2: {+-1, +-2, +-5, +-10}.
struct SquareClass {
    FieldDescriptor field;
    Int rep = 1;

    bool operator==(const SquareClass& o) const { return field == o.field && rep == o.rep; }
    bool operator!=(const SquareClass& o) const { return !(*this == o); }
    bool operator<(const SquareClass& o) const { return rep < o.rep; }
    bool trivial() const { return rep == 1; }
};

SquareClass square_class(const FieldDescriptor& k, const FieldElem& x);
SquareClass square_class(const FieldDescriptor& k, const Rat& x);
SquareClass class_mul(const SquareClass& a, const SquareClass& b);

/// Full finite square-class group, or nullopt for Q and Q(sqrt d).
std::optional<std::vector<SquareClass>> square_class_group(const FieldDescriptor& k);

/// Least quadratic non-residue mod an odd prime.
Int least_nonresidue(const Int& p);

/// A place of Q: the real place or a finite prime.
struct Place {
    bool real = true;
    Int p = 0;

    static Place real_place() { return Place{}; }
    static Place finite(const Int& p) { return Place{false, p}; }

    bool operator==(const Place& o) const { return real == o.real && p == o.p; }
    bool operator<(const Place& o) const {
        if (real != o.real) return real; // real place sorts first
        return p < o.p;
    }
    std::string name() const { return real ? "real" : p.get_str(); }
};

/// Hilbert symbol (a,b)_v in {+1,-1}: +1 iff z^2 = a x^2 + b y^2 has a
/// nonzero solution over the completion at v.
int hilbert_symbol(const Place& v, const Rat& a, const Rat& b);

/// Places where the collected rationals can have nontrivial local behavior:
/// the real place, 2, and every prime dividing a numerator or denominator.
std::vector<Place> relevant_places(const std::vector<Rat>& values);

/// Level s(k): least number of squares summing to -1; nullopt when infinite.
std::optional<int> level(const FieldDescriptor& k);

} // namespace hedgehog

#endif
