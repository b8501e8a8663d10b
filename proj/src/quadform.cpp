#include "hedgehog/quadform.hpp"

#include <algorithm>

namespace hedgehog {

Matrix identity_matrix(const Field& f, std::size_t n) {
    Matrix m(n, Vec(n, f.zero()));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = f.one();
    return m;
}

Matrix matrix_mul(const Field& f, const Matrix& a, const Matrix& b) {
    std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Matrix out(n, Vec(c, f.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            FieldElem s = f.zero();
            for (std::size_t t = 0; t < k; ++t) s = f.add(s, f.mul(a[i][t], b[t][j]));
            out[i][j] = s;
        }
    return out;
}

Matrix matrix_transpose(const Matrix& a) {
    if (a.empty()) return a;
    Matrix out(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
    return out;
}

Vec matrix_apply(const Field& f, const Matrix& a, const Vec& x) {
    Vec out(a.size(), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) out[i] = f.add(out[i], f.mul(a[i][j], x[j]));
    return out;
}

Matrix matrix_inverse(const Field& f, const Matrix& a) {
    std::size_t n = a.size();
    Matrix m = a, inv = identity_matrix(f, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && f.is_zero(m[piv][col])) ++piv;
        if (piv == n) throw SingularForm("matrix not invertible");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        FieldElem d = f.inv(m[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = f.mul(m[col][j], d);
            inv[col][j] = f.mul(inv[col][j], d);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || f.is_zero(m[r][col])) continue;
            FieldElem fct = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] = f.sub(m[r][j], f.mul(fct, m[col][j]));
                inv[r][j] = f.sub(inv[r][j], f.mul(fct, inv[col][j]));
            }
        }
    }
    return inv;
}

DiagonalForm::DiagonalForm(FieldDescriptor k, Vec a) : field(std::move(k)) {
    if (a.empty()) throw InvalidElement("diagonal form needs at least one coefficient");
    Field f(field);
    coeffs.reserve(a.size());
    for (const FieldElem& e : a) {
        FieldElem c = f.make(e.u, e.v);
        if (f.is_zero(c)) throw InvalidElement("diagonal form coefficients must be nonzero");
        coeffs.push_back(c);
    }
}

FieldElem DiagonalForm::evaluate(const Vec& x) const { return bilinear(x, x); }

FieldElem DiagonalForm::bilinear(const Vec& x, const Vec& y) const {
    if (x.size() != dim() || y.size() != dim())
        throw InvalidElement("vector dimension mismatch");
    Field f(field);
    FieldElem s = f.zero();
    for (std::size_t i = 0; i < dim(); ++i)
        s = f.add(s, f.mul(coeffs[i], f.mul(x[i], y[i])));
    return s;
}

DiagonalForm DiagonalForm::concat(const DiagonalForm& other) const {
    if (field != other.field) throw FieldMismatch("concat over different fields");
    Vec c = coeffs;
    c.insert(c.end(), other.coeffs.begin(), other.coeffs.end());
    return DiagonalForm(field, c);
}

DiagonalForm DiagonalForm::append(const FieldElem& c) const {
    Vec cs = coeffs;
    cs.push_back(c);
    return DiagonalForm(field, cs);
}

GramMatrix::GramMatrix(FieldDescriptor k, Matrix a) : field(std::move(k)) {
    std::size_t n = a.size();
    Field f(field);
    for (auto& row : a) {
        if (row.size() != n) throw InvalidElement("Gram matrix must be square");
        for (auto& e : row) e = f.make(e.u, e.v);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(a[i][j] == a[j][i])) throw InvalidElement("Gram matrix must be symmetric");
    entries = std::move(a);
}

GramMatrix gram_of(const DiagonalForm& q) {
    Field f(q.field);
    Matrix m(q.dim(), Vec(q.dim(), f.zero()));
    for (std::size_t i = 0; i < q.dim(); ++i) m[i][i] = q.coeffs[i];
    return GramMatrix(q.field, m);
}

namespace {

// Congruence column/row operation col_r += f*col_k on A (symmetric), and
// col-only on P.
void congruence_add(const Field& f, Matrix& a, Matrix& p, std::size_t r, std::size_t k,
                    const FieldElem& c) {
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i][r] = f.add(a[i][r], f.mul(c, a[i][k]));
    for (std::size_t j = 0; j < n; ++j) a[r][j] = f.add(a[r][j], f.mul(c, a[k][j]));
    for (std::size_t i = 0; i < n; ++i) p[i][r] = f.add(p[i][r], f.mul(c, p[i][k]));
}

void congruence_swap(Matrix& a, Matrix& p, std::size_t i, std::size_t j) {
    std::size_t n = a.size();
    for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    std::swap(a[i], a[j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(p[r][i], p[r][j]);
}

} // namespace

DiagonalizeResult diagonalize(const GramMatrix& g) {
    Field f(g.field);
    std::size_t n = g.dim();
    Matrix a = g.entries;
    Matrix p = identity_matrix(f, n);

    for (std::size_t k = 0; k < n; ++k) {
        if (f.is_zero(a[k][k])) {
            std::size_t j = k + 1;
            while (j < n && f.is_zero(a[j][j])) ++j;
            if (j < n) {
                congruence_swap(a, p, k, j);
            } else {
                // all remaining diagonal entries vanish; find any nonzero
                // off-diagonal entry of the trailing block
                std::size_t bi = n, bj = n;
                for (std::size_t i = k; i < n && bi == n; ++i)
                    for (std::size_t l = i + 1; l < n; ++l)
                        if (!f.is_zero(a[i][l])) {
                            bi = i;
                            bj = l;
                            break;
                        }
                if (bi == n) throw SingularForm("form has zero radical block");
                if (bi != k) congruence_swap(a, p, k, bi);
                congruence_add(f, a, p, k, bj, f.one()); // a[k][k] becomes 2*a[k][bj]
            }
        }
        FieldElem piv = a[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            if (f.is_zero(a[r][k])) continue;
            congruence_add(f, a, p, r, k, f.neg(f.div(a[r][k], piv)));
        }
    }

    Vec diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (f.is_zero(a[i][i])) throw SingularForm("singular Gram matrix");
        diag[i] = a[i][i];
    }
    return DiagonalizeResult{DiagonalForm(g.field, diag), p};
}

namespace {

std::vector<Rat> rational_coeffs(const DiagonalForm& q) {
    std::vector<Rat> out;
    out.reserve(q.dim());
    for (const auto& c : q.coeffs) out.push_back(c.u);
    return out;
}

int hasse_invariant(const std::vector<Rat>& a, const Place& v) {
    int s = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) s *= hilbert_symbol(v, a[i], a[j]);
    return s;
}

// Isotropy of a rational-coefficient form over Q_p, dimensions 1..4 by the
// classical disc/Hasse criteria, >= 5 always isotropic.
bool padic_isotropic(const std::vector<Rat>& a, const Int& p) {
    std::size_t m = a.size();
    if (m <= 1) return false;
    if (m >= 5) return true;
    FieldDescriptor qp = FieldDescriptor::padic(p);
    Rat disc(1);
    for (const Rat& c : a) disc *= c;
    Place v = Place::finite(p);
    if (m == 2) return square_class(qp, Rat(-disc)).trivial();
    int eps = hasse_invariant(a, v);
    if (m == 3) return eps == hilbert_symbol(v, Rat(-1), Rat(-disc));
    // m == 4: anisotropic iff disc is a square and eps = -(-1,-1)_p
    bool disc_trivial = square_class(qp, disc).trivial();
    return !(disc_trivial && eps == -hilbert_symbol(v, Rat(-1), Rat(-1)));
}

bool rational_isotropic(const DiagonalForm& q) {
    std::vector<Rat> a = rational_coeffs(q);
    std::size_t m = a.size();
    if (m <= 1) return false;
    if (m == 2) return squarefree_part(Rat(-a[0] * a[1])) == 1;
    bool pos = false, neg = false;
    for (const Rat& c : a) (c > 0 ? pos : neg) = true;
    if (!pos || !neg) return false;
    for (const Place& v : relevant_places(a)) {
        if (v.real) continue;
        if (!padic_isotropic(a, v.p)) return false;
    }
    return true;
}

} // namespace

bool is_isotropic(const DiagonalForm& q) {
    Field f(q.field);
    switch (q.field.kind) {
    case FieldKind::RealQuadratic:
        throw UnsupportedField("isotropy is not decided over " + q.field.name());
    case FieldKind::Reals: {
        bool pos = false, neg = false;
        for (const auto& c : q.coeffs) (c.u > 0 ? pos : neg) = true;
        return q.dim() >= 2 && pos && neg;
    }
    case FieldKind::QuadraticallyClosed:
        return q.dim() >= 2;
    case FieldKind::FinitePrime: {
        if (q.dim() >= 3) return true;
        if (q.dim() == 1) return false;
        Int t = residue_mod(Rat(-q.coeffs[0].u * q.coeffs[1].u), q.field.p);
        return legendre(t, q.field.p) == 1;
    }
    case FieldKind::PAdic:
        return padic_isotropic(rational_coeffs(q), q.field.p);
    case FieldKind::Rationals:
        return rational_isotropic(q);
    }
    throw UnsupportedField("unreachable");
}

bool represents(const DiagonalForm& q, const FieldElem& c) {
    Field f(q.field);
    FieldElem cc = f.make(c.u, c.v);
    if (f.is_zero(cc)) throw ZeroElement("represents(q, 0)");
    if (is_isotropic(q)) return true; // isotropic regular forms are universal
    return is_isotropic(q.append(f.neg(cc)));
}

std::set<SquareClass> represented_classes(const DiagonalForm& q) {
    auto group = square_class_group(q.field);
    if (!group)
        throw UnsupportedField("square-class enumeration unavailable over " + q.field.name());
    Field f(q.field);
    std::set<SquareClass> out;
    for (const SquareClass& c : *group)
        if (represents(q, f.make(Rat(c.rep)))) out.insert(c);
    return out;
}

namespace {

std::set<SquareClass> close_under_mul(const FieldDescriptor& k,
                                      const std::set<SquareClass>& gens) {
    std::set<SquareClass> s = gens;
    s.insert(SquareClass{k, 1});
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<SquareClass> cur(s.begin(), s.end());
        for (const auto& a : cur)
            for (const auto& b : cur)
                if (s.insert(class_mul(a, b)).second) grew = true;
    }
    return s;
}

} // namespace

ValueGroup value_group(const DiagonalForm& q) {
    std::set<SquareClass> members = close_under_mul(q.field, represented_classes(q));
    return ValueGroup{q.field, std::move(members)};
}

ValueGroup value_group_squared(const DiagonalForm& q) {
    std::set<SquareClass> d = represented_classes(q);
    std::set<SquareClass> pairs;
    for (const auto& a : d)
        for (const auto& b : d) pairs.insert(class_mul(a, b));
    std::set<SquareClass> members = close_under_mul(q.field, pairs);
    return ValueGroup{q.field, std::move(members)};
}

namespace {

// Complete enumeration over F_p: binary subforms by a square-root test,
// ternary subforms by scanning one coordinate (every isotropic ternary has
// a zero with first coordinate 1 or a zero supported on a pair).
Vec fp_isotropic_vector(const DiagonalForm& q) {
    const Int& p = q.field.p;
    Field f(q.field);
    std::size_t m = q.dim();
    std::vector<Int> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = q.coeffs[i].u.get_num();

    auto build = [&](std::size_t i, const Int& xi, std::size_t j, const Int& xj,
                     std::size_t l, const Int& xl) {
        Vec v(m, f.zero());
        v[i] = f.make(Rat(xi));
        if (j < m) v[j] = f.make(Rat(xj));
        if (l < m) v[l] = f.make(Rat(xl));
        return v;
    };

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Int inv;
            mpz_invert(inv.get_mpz_t(), a[j].get_mpz_t(), p.get_mpz_t());
            Int t = ((-a[i] * inv) % p + p) % p;
            if (legendre(t, p) == 1) return build(i, 1, j, sqrt_mod(t, p), m, 0);
        }

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t l = j + 1; l < m; ++l) {
                Int inv;
                mpz_invert(inv.get_mpz_t(), a[l].get_mpz_t(), p.get_mpz_t());
                for (Int xj = 0; xj < p; ++xj) {
                    Int t = ((-(a[i] + a[j] * xj * xj) * inv) % p + p) % p;
                    if (t == 0) return build(i, 1, j, xj, l, 0);
                    if (legendre(t, p) == 1) return build(i, 1, j, xj, l, sqrt_mod(t, p));
                }
            }
    throw SearchExhausted("no isotropic vector found over " + q.field.name());
}

// Rational-vector search: pairs in closed form, then staged integer cubes
// solving one coordinate by an exact square-root test.
Vec rational_isotropic_search(const DiagonalForm& q, long bound) {
    Field f(q.field);
    std::size_t m = q.dim();
    std::vector<Rat> a = rational_coeffs(q);

    // the search space is rational vectors, so a zero exists at any height
    // only if the coefficients form an isotropic form over Q itself
    if (q.field.kind != FieldKind::Rationals) {
        Vec lifted;
        for (const Rat& c : a) lifted.push_back(FieldElem{c, 0});
        if (!rational_isotropic(DiagonalForm(FieldDescriptor::rationals(), lifted)))
            throw SearchExhausted("no rational zero exists at any height (the "
                                  "coefficient form is anisotropic over Q)");
    }

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Rat t = -a[j] / a[i], s;
            if (rational_square_root(t, s)) {
                Vec v(m, f.zero());
                v[i] = f.make(s);
                v[j] = f.one();
                return v;
            }
        }
    if (m == 2) throw SearchExhausted("no rational zero of the binary form");

    long budget = 4000000;
    std::vector<long> stages;
    for (long h = 1;; h = std::min(bound, std::max(h + 1, h * 3 / 2))) {
        stages.push_back(h);
        if (h >= bound) break;
    }
    long h_prev = 0;
    for (long h : stages) {
        for (std::size_t solve = 0; solve < m; ++solve) {
            // iterate the cube [-h,h]^(m-1) over the other coordinates
            std::vector<std::size_t> free_idx;
            for (std::size_t i = 0; i < m; ++i)
                if (i != solve) free_idx.push_back(i);
            std::vector<long> c(free_idx.size(), -h);
            while (true) {
                if (--budget <= 0) throw SearchExhausted("height search budget exhausted at bound " +
                                                         std::to_string(bound));
                bool nonzero = false;
                long mx = 0;
                for (long t : c) {
                    if (t != 0) nonzero = true;
                    mx = std::max(mx, std::abs(t));
                }
                // only heights unseen at earlier stages are new
                if (nonzero && mx > h_prev) {
                    Rat sum(0);
                    for (std::size_t i = 0; i < free_idx.size(); ++i)
                        sum += a[free_idx[i]] * Rat(c[i]) * Rat(c[i]);
                    Rat t = -sum / a[solve], s;
                    if (t == 0 || rational_square_root(t, s)) {
                        Vec v(m, f.zero());
                        for (std::size_t i = 0; i < free_idx.size(); ++i)
                            v[free_idx[i]] = f.make(Rat(c[i]));
                        v[solve] = (t == 0) ? f.zero() : f.make(s);
                        return v;
                    }
                }
                std::size_t k = 0;
                while (k < c.size() && c[k] == h) c[k++] = -h;
                if (k == c.size()) break;
                ++c[k];
            }
        }
        h_prev = h;
    }
    throw SearchExhausted("no rational zero with coordinates of height <= " +
                          std::to_string(bound));
}

} // namespace

Vec find_isotropic_vector(const DiagonalForm& q, long bound) {
    if (bound <= 0) throw InvalidElement("search bound must be positive");
    if (!is_isotropic(q)) throw NotIsotropic("form is anisotropic over " + q.field.name());
    if (q.field.kind == FieldKind::FinitePrime) return fp_isotropic_vector(q);
    return rational_isotropic_search(q, bound);
}

Matrix hyperbolic_split(const DiagonalForm& q, const Vec& v) {
    Field f(q.field);
    if (v.size() != q.dim()) throw InvalidElement("vector dimension mismatch");
    bool nonzero = false;
    for (const auto& e : v)
        if (!f.is_zero(e)) nonzero = true;
    if (!nonzero || !f.is_zero(q.evaluate(v)))
        throw NotIsotropicVector("hyperbolic_split needs a nonzero vector with q(v) = 0");

    std::size_t m = q.dim();
    // w with psi(v,w) != 0: any basis vector e_j with v_j != 0 works
    std::size_t j = 0;
    while (f.is_zero(v[j])) ++j;
    Vec w(m, f.zero());
    w[j] = f.one();
    FieldElem pv = q.bilinear(v, w); // = a_j v_j != 0
    // normalize and project to the null cone: u2 = w/pv - (q(w/pv)/2) v
    Vec wn(m);
    for (std::size_t i = 0; i < m; ++i) wn[i] = f.div(w[i], pv);
    FieldElem half_q = f.div(q.evaluate(wn), f.from_int(2));
    Vec u2(m);
    for (std::size_t i = 0; i < m; ++i) u2[i] = f.sub(wn[i], f.mul(half_q, v[i]));

    // kernel of psi(v,.) = psi(u2,.) = 0
    Matrix rows(2, Vec(m));
    for (std::size_t i = 0; i < m; ++i) {
        rows[0][i] = f.mul(q.coeffs[i], v[i]);
        rows[1][i] = f.mul(q.coeffs[i], u2[i]);
    }
    // row-reduce the 2 x m system
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < 2; ++col) {
        std::size_t piv = rank;
        while (piv < 2 && f.is_zero(rows[piv][col])) ++piv;
        if (piv == 2) continue;
        std::swap(rows[piv], rows[rank]);
        FieldElem d = f.inv(rows[rank][col]);
        for (std::size_t t = 0; t < m; ++t) rows[rank][t] = f.mul(rows[rank][t], d);
        for (std::size_t r = 0; r < 2; ++r) {
            if (r == rank || f.is_zero(rows[r][col])) continue;
            FieldElem fct = rows[r][col];
            for (std::size_t t = 0; t < m; ++t)
                rows[r][t] = f.sub(rows[r][t], f.mul(fct, rows[rank][t]));
        }
        pivots.push_back(col);
        ++rank;
    }

    std::vector<Vec> kernel;
    for (std::size_t col = 0; col < m; ++col) {
        if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
        Vec k(m, f.zero());
        k[col] = f.one();
        for (std::size_t r = 0; r < rank; ++r) k[pivots[r]] = f.neg(rows[r][col]);
        kernel.push_back(k);
    }

    Matrix p(m, Vec(m, f.zero()));
    for (std::size_t i = 0; i < m; ++i) {
        p[i][0] = v[i];
        p[i][1] = u2[i];
    }
    if (!kernel.empty()) {
        // diagonalize q restricted to the kernel block
        Matrix sub(kernel.size(), Vec(kernel.size()));
        for (std::size_t r = 0; r < kernel.size(); ++r)
            for (std::size_t s = 0; s < kernel.size(); ++s)
                sub[r][s] = q.bilinear(kernel[r], kernel[s]);
        DiagonalizeResult dr = diagonalize(GramMatrix(q.field, sub));
        for (std::size_t c = 0; c < kernel.size(); ++c)
            for (std::size_t i = 0; i < m; ++i) {
                FieldElem s = f.zero();
                for (std::size_t r = 0; r < kernel.size(); ++r)
                    s = f.add(s, f.mul(kernel[r][i], dr.basis_change[r][c]));
                p[i][2 + c] = s;
            }
    }
    return p;
}

DiagonalForm pfister_expand(const FieldDescriptor& k, const Vec& b) {
    if (b.empty()) throw InvalidElement("Pfister form needs at least one slot");
    if (b.size() > 20) throw InvalidElement("Pfister form dimension overflow");
    Field f(k);
    std::size_t n = b.size();
    Vec out;
    out.reserve(1u << n);
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        FieldElem prod = f.one();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) prod = f.mul(prod, f.neg(b[i]));
        out.push_back(prod);
    }
    return DiagonalForm(k, out);
}

DiagonalForm dim3_neighbor_pfister(const FieldDescriptor& k, const FieldElem& a1,
                                   const FieldElem& a2, const FieldElem& a3) {
    Field f(k);
    return DiagonalForm(
        k, {f.one(), f.mul(a1, a2), f.mul(a1, a3), f.mul(a2, a3)});
}

} // namespace hedgehog
