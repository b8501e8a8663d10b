#include "hedgehog/rational.hpp"

#include <atomic>

namespace hedgehog {

namespace {
std::atomic<long> g_factor_bound{1000000};
} // namespace

long factor_bound_default() { return g_factor_bound.load(); }

void set_factor_bound_default(long bound) {
    if (bound < 2) throw InvalidElement("factor bound must be >= 2");
    g_factor_bound.store(bound);
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw InvalidElement("not a rational literal: '" + s + "'");
    if (r.get_den() == 0) throw InvalidElement("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw InvalidElement("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Int Factorization::reconstruct() const {
    Int n = sign;
    for (const auto& [p, e] : parts)
        for (unsigned i = 0; i < e; ++i) n *= p;
    return n;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    // n-1 = d * 2^s
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    // Witness set deterministic for n < 3.3e24.
    static const long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long b : bases) {
        Int a = b;
        if (a % n == 0) continue;
        Int x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    static const Int kDeterministicLimit("3317044064679887385961981");
    if (n < kDeterministicLimit) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Factorization factor(const Int& n, long bound) {
    if (n == 0) throw InvalidElement("factor(0)");
    Factorization f;
    Int m = n;
    if (m < 0) {
        f.sign = -1;
        m = -m;
    }
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) f.parts.emplace_back(p, e);
    };
    strip(2);
    for (Int d = 3; d <= bound && d * d <= m; d += 2) strip(d);
    if (m > 1) {
        if (m <= Int(bound) * Int(bound)) {
            // trial division reached sqrt(m), so the cofactor is prime
            f.parts.emplace_back(m, 1);
        } else if (is_prime(m)) {
            f.parts.emplace_back(m, 1);
        } else {
            throw FactorBoundExceeded("composite cofactor " + m.get_str() +
                                      " above trial-division bound " + std::to_string(bound));
        }
    }
    return f;
}

Factorization factor(const Int& n) { return factor(n, factor_bound_default()); }

Int squarefree_part(const Rat& r, long bound) {
    if (r == 0) throw ZeroElement("squarefree_part(0)");
    // r = num/den = (num*den) / den^2, so the squarefree part of num*den works.
    Factorization f = factor(Int(r.get_num() * r.get_den()), bound);
    Int d = f.sign;
    for (const auto& [p, e] : f.parts)
        if (e % 2 == 1) d *= p;
    return d;
}

Int squarefree_part(const Rat& r) { return squarefree_part(r, factor_bound_default()); }

int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

long valuation(const Rat& r, const Int& p) {
    if (r == 0) throw ZeroElement("valuation of 0");
    Int tmp;
    long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), r.get_num().get_mpz_t(), p.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), r.get_den().get_mpz_t(), p.get_mpz_t()));
    return vn - vd;
}

Rat unit_part(const Rat& r, const Int& p) {
    long v = valuation(r, p);
    Rat pk(1);
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
    if (v >= 0)
        pk = Rat(1, pw);
    else
        pk = Rat(pw, 1);
    pk.canonicalize();
    return Rat(r * pk);
}

Int residue_mod(const Rat& r, const Int& p) {
    if (r.get_den() % p == 0)
        throw InvalidElement("denominator not prime to " + p.get_str());
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), r.get_den().get_mpz_t(), p.get_mpz_t()) == 0)
        throw InvalidElement("no inverse mod " + p.get_str());
    Int res = (r.get_num() * inv) % p;
    if (res < 0) res += p;
    return res;
}

Int sqrt_mod(const Int& a, const Int& p) {
    Int r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    if (legendre(r, p) != 1) throw InvalidElement("not a quadratic residue mod " + p.get_str());
    if (p % 4 == 3) {
        Int e = (p + 1) / 4, x;
        mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return x;
    }
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    Int z = 2;
    while (legendre(z, p) != -1) ++z;
    Int m(static_cast<long>(s)), c, t, x;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Int e = (q + 1) / 2;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        Int b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = (b * b) % p;
        x = (x * b) % p;
        c = (b * b) % p;
        t = (t * c) % p;
        m = i;
    }
    return x;
}

bool rational_square_root(const Rat& r, Rat& out) {
    if (r < 0) return false;
    if (r == 0) {
        out = 0;
        return true;
    }
    if (!mpz_perfect_square_p(r.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(r.get_den().get_mpz_t()))
        return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), r.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), r.get_den().get_mpz_t());
    out = make_rat(sn, sd);
    return true;
}

} // namespace hedgehog
