#include "hedgehog/gwring.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>

namespace hedgehog {

GWElem GWElem::generators(const FieldDescriptor& k, const std::vector<long>& entries) {
    Field f(k);
    GWElem x{k, {}, {}};
    for (long e : entries) x.plus.push_back(f.from_int(e));
    return x;
}

GWElem GWElem::hyperbolic(const FieldDescriptor& k, long copies) {
    Field f(k);
    GWElem x{k, {}, {}};
    for (long i = 0; i < (copies < 0 ? -copies : copies); ++i) {
        Vec& side = copies < 0 ? x.minus : x.plus;
        side.push_back(f.one());
        side.push_back(f.neg(f.one()));
    }
    return x;
}

namespace {

void require_same_field(const GWElem& x, const GWElem& y) {
    if (x.field != y.field) throw FieldMismatch("GW elements over different fields");
}

void require_nonzero_entries(const GWElem& x) {
    Field f(x.field);
    for (const auto& side : {x.plus, x.minus})
        for (const auto& e : side)
            if (f.is_zero(e)) throw ZeroElement("zero generator in GW element");
}

} // namespace

GWElem gw_add(const GWElem& x, const GWElem& y) {
    require_same_field(x, y);
    GWElem z = x;
    z.plus.insert(z.plus.end(), y.plus.begin(), y.plus.end());
    z.minus.insert(z.minus.end(), y.minus.begin(), y.minus.end());
    return z;
}

GWElem gw_sub(const GWElem& x, const GWElem& y) {
    require_same_field(x, y);
    GWElem z = x;
    z.plus.insert(z.plus.end(), y.minus.begin(), y.minus.end());
    z.minus.insert(z.minus.end(), y.plus.begin(), y.plus.end());
    return z;
}

GWElem gw_mul(const GWElem& x, const GWElem& y) {
    require_same_field(x, y);
    Field f(x.field);
    GWElem z{x.field, {}, {}};
    for (const auto& a : x.plus) {
        for (const auto& b : y.plus) z.plus.push_back(f.mul(a, b));
        for (const auto& b : y.minus) z.minus.push_back(f.mul(a, b));
    }
    for (const auto& a : x.minus) {
        for (const auto& b : y.plus) z.minus.push_back(f.mul(a, b));
        for (const auto& b : y.minus) z.plus.push_back(f.mul(a, b));
    }
    return z;
}

GWElem gw_scale(const GWElem& x, long n) {
    GWElem z{x.field, {}, {}};
    for (long i = 0; i < (n < 0 ? -n : n); ++i) z = n < 0 ? gw_sub(z, x) : gw_add(z, x);
    return z;
}

namespace {

// parity of r(r-1)/2 for any integer r (period 4: odd exactly at 2, 3 mod 4)
bool signed_disc_flip(long r) {
    long m = ((r % 4) + 4) % 4;
    return m == 2 || m == 3;
}

SquareClass disc_class(const GWElem& x) {
    Field f(x.field);
    FieldElem prod = f.one();
    for (const auto& e : x.plus) prod = f.mul(prod, e);
    for (const auto& e : x.minus) prod = f.mul(prod, e); // classes are 2-torsion
    return square_class(x.field, prod);
}

std::vector<Rat> rat_entries(const Vec& side) {
    std::vector<Rat> out;
    out.reserve(side.size());
    for (const auto& e : side) out.push_back(e.u);
    return out;
}

int hasse_of_list(const std::vector<Rat>& a, const Place& v) {
    int s = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) s *= hilbert_symbol(v, a[i], a[j]);
    return s;
}

long signature_of(const GWElem& x) {
    long s = 0;
    for (const auto& e : x.plus) s += (e.u > 0) ? 1 : -1;
    for (const auto& e : x.minus) s -= (e.u > 0) ? 1 : -1;
    return s;
}

std::vector<Place> places_for(const GWElem& x) {
    std::vector<Rat> vals = rat_entries(x.plus);
    std::vector<Rat> mv = rat_entries(x.minus);
    vals.insert(vals.end(), mv.begin(), mv.end());
    return relevant_places(vals);
}

} // namespace

int embedding_sign(const FieldDescriptor& k, const FieldElem& e, bool positive_root) {
    if (k.kind != FieldKind::RealQuadratic) {
        if (e.u == 0) throw ZeroElement("sign of zero");
        return e.u > 0 ? 1 : -1;
    }
    Rat v = positive_root ? e.v : Rat(-e.v);
    if (v == 0) {
        if (e.u == 0) throw ZeroElement("sign of zero");
        return e.u > 0 ? 1 : -1;
    }
    if (e.u == 0) return v > 0 ? 1 : -1;
    int su = e.u > 0 ? 1 : -1, sv = v > 0 ? 1 : -1;
    if (su == sv) return su;
    // |u| vs |v| sqrt(d): compare u^2 and v^2 d (never equal, d non-square)
    return (e.u * e.u > v * v * Rat(k.d)) ? su : sv;
}

int hasse_at(const GWElem& x, const Place& v) {
    if (x.field.kind != FieldKind::Rationals && x.field.kind != FieldKind::PAdic)
        throw UnsupportedField("Hasse invariant unavailable over " + x.field.name());
    require_nonzero_entries(x);
    std::vector<Rat> p = rat_entries(x.plus), m = rat_entries(x.minus);
    int h = hasse_of_list(p, v) * hasse_of_list(m, v);
    Rat dm(1), dx(1);
    for (const Rat& r : m) dm *= r;
    dx = dm;
    for (const Rat& r : p) dx *= r;
    if (dx != 0 && dm != 0) h *= hilbert_symbol(v, dx, dm);
    return h;
}

SquareClass signed_discriminant(const GWElem& x) {
    require_nonzero_entries(x);
    SquareClass d = disc_class(x);
    if (signed_disc_flip(x.rank()))
        d = class_mul(d, square_class(x.field, Rat(-1)));
    return d;
}

GWInvariants invariants_of(const GWElem& x) {
    require_nonzero_entries(x);
    GWInvariants inv;
    inv.rank = x.rank();
    switch (x.field.kind) {
    case FieldKind::RealQuadratic: {
        long s1 = 0, s2 = 0;
        for (const auto& e : x.plus) {
            s1 += embedding_sign(x.field, e, true);
            s2 += embedding_sign(x.field, e, false);
        }
        for (const auto& e : x.minus) {
            s1 -= embedding_sign(x.field, e, true);
            s2 -= embedding_sign(x.field, e, false);
        }
        inv.signatures2 = {s1, s2};
        return inv;
    }
    case FieldKind::Reals:
    case FieldKind::Rationals:
        inv.signature = signature_of(x);
        break;
    default:
        break;
    }
    inv.disc = disc_class(x);
    inv.signed_disc = signed_discriminant(x);
    if (x.field.kind == FieldKind::PAdic) {
        Place v = Place::finite(x.field.p);
        inv.hasse[v] = hasse_at(x, v);
    } else if (x.field.kind == FieldKind::Rationals) {
        for (const Place& v : places_for(x)) inv.hasse[v] = hasse_at(x, v);
    }
    return inv;
}

bool gw_equal(const GWElem& x, const GWElem& y) {
    require_same_field(x, y);
    require_nonzero_entries(x);
    require_nonzero_entries(y);
    if (x.rank() != y.rank()) return false;
    switch (x.field.kind) {
    case FieldKind::QuadraticallyClosed:
        return true;
    case FieldKind::Reals:
        return signature_of(x) == signature_of(y);
    case FieldKind::FinitePrime:
        return disc_class(x) == disc_class(y);
    case FieldKind::PAdic: {
        if (disc_class(x) != disc_class(y)) return false;
        Place v = Place::finite(x.field.p);
        return hasse_at(x, v) == hasse_at(y, v);
    }
    case FieldKind::Rationals: {
        if (signature_of(x) != signature_of(y)) return false;
        if (disc_class(x) != disc_class(y)) return false;
        std::set<Place> places;
        for (const Place& v : places_for(x)) places.insert(v);
        for (const Place& v : places_for(y)) places.insert(v);
        for (const Place& v : places) {
            if (v.real) continue; // real data is the signature
            if (hasse_at(x, v) != hasse_at(y, v)) return false;
        }
        return true;
    }
    case FieldKind::RealQuadratic:
        throw UnsupportedField("GW equality undecided over " + x.field.name());
    }
    throw UnsupportedField("unreachable");
}

QuadExtension::QuadExtension(FieldDescriptor b, FieldElem a, Functional fn)
    : base(std::move(b)), alpha(std::move(a)), functional(fn) {
    Field f(base);
    if (f.is_zero(alpha)) throw ZeroElement("extension by sqrt(0)");
    if (base.kind == FieldKind::RealQuadratic)
        throw UnsupportedField("transfers from extensions of " + base.name() +
                               " are not supported");
    alpha = f.make(alpha.u, alpha.v);
    if (square_class(base, alpha).trivial())
        throw NonSquarefreeExtension(f.to_string(alpha) + " is a square in " + base.name());
}

ExtElem ext_mul(const QuadExtension& e, const ExtElem& a, const ExtElem& b) {
    Field f(e.base);
    return ExtElem{f.add(f.mul(a.u, b.u), f.mul(e.alpha, f.mul(a.v, b.v))),
                   f.add(f.mul(a.u, b.v), f.mul(a.v, b.u))};
}

bool ext_is_zero(const QuadExtension& e, const ExtElem& a) {
    Field f(e.base);
    return f.is_zero(a.u) && f.is_zero(a.v);
}

namespace {

GWElem transfer_with(const ExtGWElem& x, Functional fn) {
    const QuadExtension& ext = x.ext;
    Field f(ext.base);
    auto functional = [&](const ExtElem& e) -> FieldElem {
        if (fn == Functional::FieldTrace) return f.add(e.u, e.u);
        return e.v; // s(1) = 0, s(sqrt a) = 1
    };
    GWElem out{ext.base, {}, {}};
    auto push = [&](const ExtElem& beta, Vec& side) {
        if (ext_is_zero(ext, beta)) throw ZeroElement("zero generator in transfer");
        ExtElem beta_sqrt = ext_mul(ext, beta, ExtElem{f.zero(), f.one()});
        ExtElem beta_alpha = ext_mul(ext, beta, ExtElem{ext.alpha, f.zero()});
        Matrix gram{{functional(beta), functional(beta_sqrt)},
                    {functional(beta_sqrt), functional(beta_alpha)}};
        DiagonalizeResult d = diagonalize(GramMatrix(ext.base, gram));
        side.push_back(d.form.coeffs[0]);
        side.push_back(d.form.coeffs[1]);
    };
    for (const auto& b : x.plus) push(b, out.plus);
    for (const auto& b : x.minus) push(b, out.minus);
    return out;
}

} // namespace

GWElem scharlau_transfer(const ExtGWElem& x) { return transfer_with(x, x.ext.functional); }

GWElem transfer_s_one(const ExtGWElem& x) { return transfer_with(x, Functional::SOne); }

GWElem euler_characteristic(const FieldDescriptor& k, long n, const Vec& coeffs) {
    if (n <= 0 || n % 2 != 0)
        throw OddDimension("Euler characteristic formula applies to even n > 0");
    if (static_cast<long>(coeffs.size()) != n + 1)
        throw InvalidElement("expected n+1 coefficients");
    Field f(k);
    FieldElem prod = f.one();
    for (const auto& c : coeffs) {
        if (f.is_zero(c)) throw ZeroElement("zero coefficient");
        prod = f.mul(prod, f.make(c.u, c.v));
    }
    GWElem chi = GWElem::hyperbolic(k, n / 2);
    chi.plus.push_back(f.from_int(2));
    chi.plus.push_back(f.mul(f.from_int(2), prod));
    return chi;
}

WittModel::WittModel(const FieldDescriptor& k) : field_(k) {
    if (k.kind != FieldKind::FinitePrime && k.kind != FieldKind::PAdic)
        throw UnsupportedField("finite Witt model needs F_p or Q_p, got " + k.name());
    auto classes = *square_class_group(k);
    std::size_t max_dim = (k.kind == FieldKind::FinitePrime) ? 2 : 4;
    Field f(k);

    reps_.push_back({}); // zero class
    std::set<std::string> seen;
    auto key_of = [&](const Vec& rep) {
        GWElem x{k, rep, {}};
        std::string key = std::to_string(rep.size()) + "|" + disc_class(x).rep.get_str();
        if (k.kind == FieldKind::PAdic)
            key += "|" + std::to_string(hasse_at(x, Place::finite(k.p)));
        return key;
    };

    std::vector<Vec> tuples = {{}};
    for (std::size_t dim = 1; dim <= max_dim; ++dim) {
        std::vector<Vec> next;
        for (const auto& t : tuples)
            for (const auto& c : classes) {
                Vec e = t;
                e.push_back(f.make(Rat(c.rep)));
                next.push_back(e);
            }
        tuples = next;
        for (const auto& t : tuples) {
            if (is_isotropic(DiagonalForm(k, t))) continue;
            if (seen.insert(key_of(t)).second) reps_.push_back(t);
        }
    }

    // addition table by reduction of concatenated representatives
    add_table_.assign(reps_.size(), std::vector<std::size_t>(reps_.size()));
    for (std::size_t i = 0; i < reps_.size(); ++i)
        for (std::size_t j = 0; j < reps_.size(); ++j) {
            GWElem sum{k, reps_[i], {}};
            sum.plus.insert(sum.plus.end(), reps_[j].begin(), reps_[j].end());
            add_table_[i][j] = index_of(sum);
        }
}

std::size_t WittModel::index_of(const GWElem& x) const {
    require_nonzero_entries(x);
    if (x.field != field_) throw FieldMismatch("element over a different field");
    long r = x.rank();
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        long diff = r - static_cast<long>(reps_[i].size());
        if (diff % 2 != 0) continue;
        GWElem candidate{field_, reps_[i], {}};
        candidate = gw_add(candidate, GWElem::hyperbolic(field_, diff / 2));
        if (gw_equal(x, candidate)) return i;
    }
    throw UnsupportedField("Witt class not matched; model incomplete");
}

std::size_t WittModel::add(std::size_t a, std::size_t b) const { return add_table_[a][b]; }

const WittModel& witt_model(const FieldDescriptor& k) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<WittModel>> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::string key = k.name();
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<WittModel>(k)).first;
    return *it->second;
}

WittClass witt_reduce(const GWElem& x) {
    const WittModel& model = witt_model(x.field);
    return WittClass{x.field, model.rep(model.index_of(x))};
}

namespace {

std::size_t witt_neg(const WittModel& m, std::size_t a) {
    // -w has representative the negated form; find it through the table
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.add(a, i) == m.zero_index()) return i;
    throw UnsupportedField("Witt negation failed");
}

std::size_t witt_scalar(const WittModel& m, const Int& n, std::size_t w) {
    // order of w divides the (finite) group order
    long order = 1;
    std::size_t acc = w;
    while (acc != m.zero_index()) {
        acc = m.add(acc, w);
        ++order;
    }
    Int r = n % order;
    if (r < 0) r += order;
    std::size_t out = m.zero_index();
    for (Int i = 0; i < r; ++i) out = m.add(out, w);
    return out;
}

struct IdealStructure {
    const WittModel& model;
    Int rank_gcd;            // 0 when every additive generator has rank 0
    std::size_t we = 0;      // Witt part of a combination of rank rank_gcd
    std::set<std::size_t> w0; // subgroup of rank-zero Witt parts
    long iterations = 0;

    explicit IdealStructure(const FieldDescriptor& k) : model(witt_model(k)) {}

    bool contains(const GWElem& t) {
        Int r = t.rank();
        std::size_t wt = model.index_of(t);
        if (rank_gcd == 0) return r == 0 && w0.count(wt) > 0;
        if (r % rank_gcd != 0) return false;
        Int mult = r / rank_gcd;
        std::size_t shift = witt_scalar(model, mult, we);
        std::size_t residual = model.add(wt, witt_neg(model, shift));
        return w0.count(residual) > 0;
    }
};

IdealStructure build_ideal(const FieldDescriptor& k, const std::vector<GWElem>& generators) {
    IdealStructure st(k);
    auto classes = *square_class_group(k);
    Field f(k);

    // additive generators <u> g over all square classes u
    std::vector<std::pair<Int, std::size_t>> gens; // (rank, witt index)
    for (const GWElem& g : generators) {
        if (g.field != k) throw FieldMismatch("generator over a different field");
        for (const auto& c : classes) {
            GWElem scaled = gw_mul(GWElem{k, {f.make(Rat(c.rep))}, {}}, g);
            gens.emplace_back(scaled.rank(), st.model.index_of(scaled));
        }
    }

    // extended gcd over the ranks, tracking the Witt part of the combination
    Int d = 0;
    std::size_t we = st.model.zero_index();
    for (const auto& [r, w] : gens) {
        if (r == 0) continue;
        if (d == 0) {
            d = r < 0 ? Int(-r) : r;
            we = (r < 0) ? witt_neg(st.model, w) : w;
            continue;
        }
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t(),
                   Int(r).get_mpz_t());
        std::size_t combined = st.model.add(witt_scalar(st.model, x, we),
                                            witt_scalar(st.model, y, w));
        d = g;
        we = combined;
    }
    st.rank_gcd = d;
    st.we = we;

    // rank-zero differences generate the Witt subgroup W0
    std::vector<std::size_t> w0_gens;
    for (const auto& [r, w] : gens) {
        if (d == 0) {
            w0_gens.push_back(w);
        } else {
            Int mult = Int(r) / d;
            std::size_t shift = witt_scalar(st.model, mult, st.we);
            w0_gens.push_back(st.model.add(w, witt_neg(st.model, shift)));
        }
    }

    st.w0.insert(st.model.zero_index());
    bool grew = true;
    while (grew) {
        grew = false;
        ++st.iterations;
        std::vector<std::size_t> cur(st.w0.begin(), st.w0.end());
        for (std::size_t s : cur)
            for (std::size_t g : w0_gens)
                if (st.w0.insert(st.model.add(s, g)).second) grew = true;
    }
    return st;
}

} // namespace

IdealMembership ideal_membership_detail(const GWElem& target,
                                        const std::vector<GWElem>& generators) {
    IdealStructure st = build_ideal(target.field, generators);
    IdealMembership out;
    out.member = st.contains(target);
    out.closure_iterations = st.iterations;
    return out;
}

bool ideal_membership(const GWElem& target, const std::vector<GWElem>& generators) {
    return ideal_membership_detail(target, generators).member;
}

QuotientReport quotient_by_even_ideal(const FieldDescriptor& k,
                                      const std::vector<GWElem>& generators) {
    IdealStructure st = build_ideal(k, generators);
    QuotientReport rep;
    rep.rank_gcd = st.rank_gcd.get_si();
    rep.reachable_witt_classes = st.w0.size();
    for (const GWElem& g : generators)
        if (g.rank() % 2 != 0) rep.all_even_rank = false;

    Field f(k);
    auto classes = *square_class_group(k);
    // GI(k) is generated additively by <1,1> and <1,-u> over the classes u
    std::vector<std::pair<std::string, GWElem>> probes;
    probes.emplace_back("<1,1>", GWElem::generators(k, {1, 1}));
    for (const auto& c : classes) {
        GWElem p{k, {f.one(), f.neg(f.make(Rat(c.rep)))}, {}};
        probes.emplace_back("<1,-(" + c.rep.get_str() + ")>", p);
    }
    bool all_member = true;
    for (auto& [name, probe] : probes) {
        if (!st.contains(probe)) {
            all_member = false;
            rep.failed_probes.push_back(name);
        }
    }
    rep.is_z2 = rep.all_even_rank && all_member;
    return rep;
}

std::vector<TransferBound> transfer_subgroup_bound(const QuadExtension& ext,
                                                   const std::vector<ExtGWElem>& probes) {
    Field f(ext.base);
    // gamma with s_*(<gamma>) hyperbolic: sqrt(a) for the trace, the embedded
    // a for the s(1)=0 functional
    ExtElem gamma = (ext.functional == Functional::FieldTrace)
                        ? ExtElem{f.zero(), f.one()}
                        : ExtElem{ext.alpha, f.zero()};
    std::vector<TransferBound> out;
    for (const ExtGWElem& probe : probes) {
        ExtGWElem shifted = probe;
        shifted.plus.push_back(gamma);
        TransferBound tb{scharlau_transfer(probe),
                         gw_sub(scharlau_transfer(shifted), GWElem::hyperbolic(ext.base))};
        out.push_back(std::move(tb));
    }
    return out;
}

} // namespace hedgehog
