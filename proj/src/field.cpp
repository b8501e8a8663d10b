#include "hedgehog/field.hpp"

#include <algorithm>
#include <set>

namespace hedgehog {

FieldDescriptor FieldDescriptor::rationals() { return FieldDescriptor{FieldKind::Rationals}; }
FieldDescriptor FieldDescriptor::reals() { return FieldDescriptor{FieldKind::Reals}; }
FieldDescriptor FieldDescriptor::quadratically_closed() {
    return FieldDescriptor{FieldKind::QuadraticallyClosed};
}

FieldDescriptor FieldDescriptor::finite_prime(const Int& p) {
    if (p == 2 || !is_prime(p))
        throw UnsupportedField("FinitePrime requires an odd prime, got " + p.get_str());
    return FieldDescriptor{FieldKind::FinitePrime, p};
}

FieldDescriptor FieldDescriptor::padic(const Int& p) {
    if (!is_prime(p)) throw UnsupportedField("PAdic requires a prime, got " + p.get_str());
    return FieldDescriptor{FieldKind::PAdic, p};
}

FieldDescriptor FieldDescriptor::real_quadratic(const Int& d) {
    if (d <= 1) throw UnsupportedField("RealQuadratic requires d > 1");
    if (squarefree_part(Rat(d)) != d)
        throw UnsupportedField("RealQuadratic requires squarefree d, got " + d.get_str());
    return FieldDescriptor{FieldKind::RealQuadratic, 0, d};
}

bool FieldDescriptor::operator==(const FieldDescriptor& o) const {
    return kind == o.kind && p == o.p && d == o.d;
}

bool FieldDescriptor::finite_square_classes() const {
    switch (kind) {
    case FieldKind::Reals:
    case FieldKind::QuadraticallyClosed:
    case FieldKind::FinitePrime:
    case FieldKind::PAdic:
        return true;
    default:
        return false;
    }
}

std::string FieldDescriptor::name() const {
    switch (kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Reals: return "R";
    case FieldKind::QuadraticallyClosed: return "Qbar";
    case FieldKind::FinitePrime: return "F_" + p.get_str();
    case FieldKind::PAdic: return "Q_" + p.get_str();
    case FieldKind::RealQuadratic: return "Q(sqrt " + d.get_str() + ")";
    }
    return "?";
}

FieldElem Field::make(const Rat& u) const {
    if (desc_.kind == FieldKind::FinitePrime) return FieldElem{Rat(residue_mod(u, desc_.p)), 0};
    return FieldElem{u, 0};
}

FieldElem Field::make(const Rat& u, const Rat& v) const {
    if (v == 0) return make(u);
    if (desc_.kind != FieldKind::RealQuadratic)
        throw InvalidElement("sqrt coordinate only valid over a real quadratic field");
    return FieldElem{u, v};
}

FieldElem Field::from_string(const std::string& s) const {
    auto comma = s.find(',');
    if (comma == std::string::npos) return make(rat_from_string(s));
    return make(rat_from_string(s.substr(0, comma)), rat_from_string(s.substr(comma + 1)));
}

std::string Field::to_string(const FieldElem& e) const {
    if (e.v == 0) return rat_to_string(e.u);
    return rat_to_string(e.u) + "," + rat_to_string(e.v);
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
    return make(Rat(a.u + b.u), Rat(a.v + b.v));
}

FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const {
    return make(Rat(a.u - b.u), Rat(a.v - b.v));
}

FieldElem Field::neg(const FieldElem& a) const { return make(Rat(-a.u), Rat(-a.v)); }

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const {
    if (desc_.kind == FieldKind::RealQuadratic)
        return make(Rat(a.u * b.u + Rat(desc_.d) * a.v * b.v), Rat(a.u * b.v + a.v * b.u));
    return make(Rat(a.u * b.u));
}

FieldElem Field::inv(const FieldElem& a) const {
    if (is_zero(a)) throw ZeroElement("inverse of zero");
    if (desc_.kind == FieldKind::RealQuadratic) {
        Rat norm = a.u * a.u - Rat(desc_.d) * a.v * a.v; // nonzero: d is not a square
        return make(Rat(a.u / norm), Rat(-a.v / norm));
    }
    if (desc_.kind == FieldKind::FinitePrime) {
        Int inv;
        mpz_invert(inv.get_mpz_t(), a.u.get_num().get_mpz_t(), desc_.p.get_mpz_t());
        return make(Rat(inv));
    }
    return make(Rat(1 / a.u));
}

FieldElem Field::div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }

Int least_nonresidue(const Int& p) {
    for (Int a = 2;; ++a)
        if (legendre(a, p) == -1) return a;
}

namespace {

// Square class of a 2-adic unit from its residue mod 8 (units are squares
// iff congruent to 1 mod 8).
Int dyadic_unit_rep(const Rat& u) {
    Int m = (u.get_num() * u.get_den()) % 8; // den odd, den^-1 = den mod 8
    if (m < 0) m += 8;
    if (m == 1) return 1;
    if (m == 3) return -5;
    if (m == 5) return 5;
    return -1; // m == 7
}

} // namespace

SquareClass square_class(const FieldDescriptor& k, const FieldElem& x) {
    if (x.u == 0 && x.v == 0) throw ZeroElement("square class of zero");
    switch (k.kind) {
    case FieldKind::Rationals:
        return SquareClass{k, squarefree_part(x.u)};
    case FieldKind::Reals:
        return SquareClass{k, x.u > 0 ? Int(1) : Int(-1)};
    case FieldKind::QuadraticallyClosed:
        return SquareClass{k, 1};
    case FieldKind::FinitePrime: {
        Int r = residue_mod(x.u, k.p);
        if (r == 0) throw ZeroElement("zero residue");
        return SquareClass{k, legendre(r, k.p) == 1 ? Int(1) : least_nonresidue(k.p)};
    }
    case FieldKind::PAdic: {
        long v = valuation(x.u, k.p);
        Rat w = unit_part(x.u, k.p);
        if (k.p == 2) {
            Int rep = dyadic_unit_rep(w);
            if (v % 2 != 0) rep *= 2;
            return SquareClass{k, rep};
        }
        Int rep = 1;
        if (legendre(residue_mod(w, k.p), k.p) == -1) rep = least_nonresidue(k.p);
        if (v % 2 != 0) rep *= k.p;
        return SquareClass{k, rep};
    }
    case FieldKind::RealQuadratic:
        throw UnsupportedField("square classes are not canonicalized over " + k.name());
    }
    throw UnsupportedField("unreachable");
}

SquareClass square_class(const FieldDescriptor& k, const Rat& x) {
    return square_class(k, FieldElem{x, 0});
}

SquareClass class_mul(const SquareClass& a, const SquareClass& b) {
    if (a.field != b.field) throw FieldMismatch("square classes over different fields");
    if (a.field.kind == FieldKind::FinitePrime) {
        // representatives may exceed p only as the fixed non-residue; reduce exactly
        Field f(a.field);
        return square_class(a.field, f.mul(f.make(Rat(a.rep)), f.make(Rat(b.rep))));
    }
    return square_class(a.field, Rat(a.rep * b.rep));
}

std::optional<std::vector<SquareClass>> square_class_group(const FieldDescriptor& k) {
    std::vector<Int> reps;
    switch (k.kind) {
    case FieldKind::Rationals:
    case FieldKind::RealQuadratic:
        return std::nullopt;
    case FieldKind::QuadraticallyClosed:
        reps = {1};
        break;
    case FieldKind::Reals:
        reps = {1, -1};
        break;
    case FieldKind::FinitePrime:
        reps = {1, least_nonresidue(k.p)};
        break;
    case FieldKind::PAdic:
        if (k.p == 2) {
            reps = {1, -1, 2, -2, 5, -5, 10, -10};
        } else {
            Int u = least_nonresidue(k.p);
            reps = {1, u, k.p, u * k.p};
        }
        break;
    }
    std::vector<SquareClass> out;
    out.reserve(reps.size());
    for (const Int& r : reps) out.push_back(SquareClass{k, r});
    return out;
}

int hilbert_symbol(const Place& v, const Rat& a, const Rat& b) {
    if (a == 0 || b == 0) throw ZeroElement("hilbert symbol needs nonzero arguments");
    if (v.real) return (a < 0 && b < 0) ? -1 : 1;

    const Int& p = v.p;
    long al = valuation(a, p), be = valuation(b, p);
    Rat u = unit_part(a, p), w = unit_part(b, p);

    if (p != 2) {
        int s = 1;
        if ((al % 2 != 0) && (be % 2 != 0)) s *= legendre(-1, p);
        if (be % 2 != 0) s *= legendre(residue_mod(u, p), p);
        if (al % 2 != 0) s *= legendre(residue_mod(w, p), p);
        return s;
    }

    // (a,b)_2 = (-1)^{eps(u)eps(w) + al*omega(w) + be*omega(u)}, with
    // eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 read mod 2 from u mod 8.
    auto mod8 = [](const Rat& r) {
        Int m = (r.get_num() * r.get_den()) % 8;
        if (m < 0) m += 8;
        return m;
    };
    Int mu = mod8(u), mw = mod8(w);
    long eps_u = (mu == 3 || mu == 7) ? 1 : 0;
    long eps_w = (mw == 3 || mw == 7) ? 1 : 0;
    long om_u = (mu == 3 || mu == 5) ? 1 : 0;
    long om_w = (mw == 3 || mw == 5) ? 1 : 0;
    long e = eps_u * eps_w + al * om_w + be * om_u;
    return (e % 2 == 0) ? 1 : -1;
}

std::vector<Place> relevant_places(const std::vector<Rat>& values) {
    std::set<Place> out;
    out.insert(Place::real_place());
    out.insert(Place::finite(2));
    for (const Rat& r : values) {
        if (r == 0) continue;
        for (const Int& part : {Int(r.get_num()), Int(r.get_den())}) {
            if (part == 0) continue;
            for (const auto& [q, e] : factor(part).parts) out.insert(Place::finite(q));
        }
    }
    return std::vector<Place>(out.begin(), out.end());
}

std::optional<int> level(const FieldDescriptor& k) {
    switch (k.kind) {
    case FieldKind::QuadraticallyClosed:
        return 1;
    case FieldKind::FinitePrime:
        return (k.p % 4 == 1) ? 1 : 2;
    case FieldKind::PAdic:
        if (k.p == 2) return 4;
        return (k.p % 4 == 1) ? 1 : 2;
    case FieldKind::Reals:
    case FieldKind::Rationals:
    case FieldKind::RealQuadratic:
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace hedgehog
