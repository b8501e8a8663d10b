#ifndef HEDGEHOG_RATIONAL_HPP
#define HEDGEHOG_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "hedgehog/errors.hpp"

namespace hedgehog {

using Int = mpz_class;
using Rat = mpq_class; // canonical: denominator > 0, gcd(num, den) = 1

/// Parses "num", "-num" or "num/den" into a canonical rational.
Rat rat_from_string(const std::string& s);

/// Canonical text form: "num" when den == 1, else "num/den".
std::string rat_to_string(const Rat& r);

/// Builds a canonical rational from a (possibly non-reduced) pair.
Rat make_rat(const Int& num, const Int& den);

struct Factorization {
    int sign = 1;                                 // +1 or -1
    std::vector<std::pair<Int, unsigned>> parts;  // primes strictly increasing, exponents >= 1

    Int reconstruct() const;
};

/// Default trial-division bound used whenever a caller does not pass one.
long factor_bound_default();
void set_factor_bound_default(long bound);

/// Deterministic Miller-Rabin below 3.3e24 (12 fixed bases), combined with
/// GMP's test above that.
bool is_prime(const Int& n);

/// Trial division up to `bound`, then a primality check on the cofactor.
/// Throws FactorBoundExceeded when a composite cofactor survives.
Factorization factor(const Int& n, long bound);
Factorization factor(const Int& n);

/// The unique squarefree integer d with r = d * (rational square).
Int squarefree_part(const Rat& r, long bound);
Int squarefree_part(const Rat& r);

/// Legendre symbol (a|p) for odd prime p.
int legendre(const Int& a, const Int& p);

/// p-adic valuation of a nonzero rational.
long valuation(const Rat& r, const Int& p);

/// Unit part r / p^valuation(r), exact.
Rat unit_part(const Rat& r, const Int& p);

/// Residue of a rational whose denominator is prime to p, in [0, p).
Int residue_mod(const Rat& r, const Int& p);

/// sqrt of a quadratic residue mod an odd prime (Tonelli-Shanks).
Int sqrt_mod(const Int& a, const Int& p);

/// If r = s^2 for rational s, returns s >= 0.
bool rational_square_root(const Rat& r, Rat& out);

} // namespace hedgehog

#endif
