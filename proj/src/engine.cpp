#include "hedgehog/engine.hpp"

#include <algorithm>

namespace hedgehog {

QuadricProblem::QuadricProblem(FieldDescriptor k, Vec coeffs, std::optional<Vec> pt)
    : field(std::move(k)) {
    if (coeffs.size() < 2)
        throw InvalidElement("quadric problems need n >= 1, i.e. at least two coefficients");
    DiagonalForm q(field, coeffs); // validates nonzero entries, canonicalizes
    coefficients = q.coeffs;
    if (pt) {
        Field f(field);
        if (pt->size() != coefficients.size())
            throw InvalidCertificate("point has wrong dimension");
        Vec normalized;
        normalized.reserve(pt->size());
        for (const auto& e : *pt) normalized.push_back(f.make(e.u, e.v));
        if (!f.is_one(q.evaluate(normalized)))
            throw InvalidCertificate("claimed point does not satisfy q = 1");
        point = std::move(normalized);
    }
}

SectionCertificate section_odd(const FieldDescriptor& k, const Vec& coeffs) {
    std::size_t m = coeffs.size();
    if (m % 2 != 0) throw OddCaseOnly("pairing section needs odd n (even coefficient count)");
    DiagonalForm q(k, coeffs);
    Field f(k);
    SectionCertificate cert{k, {}, std::nullopt};
    cert.entries.assign(m, LinearPoly(m + 1, f.zero()));
    for (std::size_t i = 0; i + 1 < m; i += 2) {
        cert.entries[i][1 + i + 1] = q.coeffs[i + 1];     // s_i = a_{i+1} x_{i+1}
        cert.entries[i + 1][1 + i] = f.neg(q.coeffs[i]);  // s_{i+1} = -a_i x_i
    }
    return cert;
}

SectionCertificate section_isotropic(const QuadricProblem& p, long bound) {
    if (p.n() % 2 != 0) throw OddCaseOnly("isotropic construction is for even n");
    DiagonalForm q = p.form();
    Field f(p.field);
    std::size_t m = q.dim();

    Vec v = find_isotropic_vector(q, bound); // throws NotIsotropic / SearchExhausted
    Matrix pmat = hyperbolic_split(q, v);
    Matrix a = gram_of(q).entries;
    Matrix b = matrix_mul(f, matrix_mul(f, matrix_transpose(pmat), a), pmat);

    // model coordinates: q = 2 y_0 y_1 + sum_{i>=2} b_i y_i^2
    Matrix t(m, Vec(m, f.zero()));
    t[1][2] = b[2][2];      // s_1 = b_2 y_2
    t[2][0] = f.neg(f.one()); // s_2 = -y_0
    for (std::size_t j = 3; j + 1 < m; j += 2) {
        t[j][j + 1] = b[j + 1][j + 1]; // s_j = b_{j+1} y_{j+1}
        t[j + 1][j] = f.neg(b[j][j]);  // s_{j+1} = -b_j y_j
    }

    Matrix s = matrix_mul(f, matrix_mul(f, pmat, t), matrix_inverse(f, pmat));
    SectionCertificate cert{p.field, {}, pmat};
    cert.entries.assign(m, LinearPoly(m + 1, f.zero()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) cert.entries[i][1 + j] = s[i][j];
    return cert;
}

bool verify_section(const QuadricProblem& p, const SectionCertificate& cert) {
    DiagonalForm q = p.form();
    Field f(p.field);
    std::size_t m = q.dim();
    if (cert.entries.size() != m) throw InvalidCertificate("wrong number of section entries");
    for (const auto& e : cert.entries)
        if (e.size() != m + 1)
            throw DegreeTooHigh("section entries must be affine-linear in the n+1 variables");

    // (i) sum_i a_i x_i s_i = 0 as a polynomial
    for (std::size_t i = 0; i < m; ++i) {
        // coefficient of x_i alone: a_i * const_i
        if (!f.is_zero(f.mul(q.coeffs[i], cert.entries[i][0]))) return false;
        for (std::size_t j = i; j < m; ++j) {
            FieldElem c = f.mul(q.coeffs[i], cert.entries[i][1 + j]);
            if (i != j) c = f.add(c, f.mul(q.coeffs[j], cert.entries[j][1 + i]));
            if (!f.is_zero(c)) return false;
        }
    }

    // (ii) zero locus of s misses q = 1: either infeasible or inside q = 0
    Matrix rows(m, Vec(m + 1, f.zero())); // augmented [C | -c0]
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) rows[i][j] = cert.entries[i][1 + j];
        rows[i][m] = f.neg(cert.entries[i][0]);
    }
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && f.is_zero(rows[piv][col])) ++piv;
        if (piv == m) continue;
        std::swap(rows[piv], rows[rank]);
        FieldElem d = f.inv(rows[rank][col]);
        for (std::size_t c = 0; c <= m; ++c) rows[rank][c] = f.mul(rows[rank][c], d);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || f.is_zero(rows[r][col])) continue;
            FieldElem fct = rows[r][col];
            for (std::size_t c = 0; c <= m; ++c)
                rows[r][c] = f.sub(rows[r][c], f.mul(fct, rows[rank][c]));
        }
        pivots.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < m; ++r)
        if (!f.is_zero(rows[r][m])) return true; // locus empty

    Vec x0(m, f.zero());
    for (std::size_t r = 0; r < rank; ++r) x0[pivots[r]] = rows[r][m];
    std::vector<Vec> kernel;
    for (std::size_t col = 0; col < m; ++col) {
        if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
        Vec k(m, f.zero());
        k[col] = f.one();
        for (std::size_t r = 0; r < rank; ++r) k[pivots[r]] = f.neg(rows[r][col]);
        kernel.push_back(k);
    }
    // q restricted to the solution subspace must vanish identically
    if (!f.is_zero(q.evaluate(x0))) return false;
    for (const auto& dr : kernel)
        if (!f.is_zero(q.bilinear(x0, dr))) return false;
    for (std::size_t r = 0; r < kernel.size(); ++r)
        for (std::size_t s = r; s < kernel.size(); ++s)
            if (!f.is_zero(q.bilinear(kernel[r], kernel[s]))) return false;
    return true;
}

RationalPointAnswer has_rational_point(const QuadricProblem& p) {
    if (p.point) return {TriState::Yes, p.point};
    if (p.field.kind == FieldKind::RealQuadratic) return {TriState::Unknown, std::nullopt};
    Field f(p.field);
    return {represents(p.form(), f.one()) ? TriState::Yes : TriState::No, std::nullopt};
}

QuadraticPoint quadratic_point(const DiagonalForm& q, const Vec& u, long /*bound*/,
                               Functional fn) {
    Field f(q.field);
    std::size_t m = q.dim();
    if (m < 2) throw NoOrthogonalVector("no orthogonal direction in dimension 1");
    if (u.size() != m) throw InvalidElement("vector dimension mismatch");
    FieldElem qu = q.evaluate(u);
    if (f.is_zero(qu)) throw InvalidElement("quadratic_point needs q(u) != 0");

    // kernel of psi(u, .): one linear condition sum a_i u_i x_i = 0
    std::size_t lead = 0;
    while (f.is_zero(u[lead])) ++lead;
    FieldElem au = f.mul(q.coeffs[lead], u[lead]);
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < m; ++j) {
        if (j == lead) continue;
        Vec w(m, f.zero());
        w[j] = f.one();
        w[lead] = f.neg(f.div(f.mul(q.coeffs[j], u[j]), au));
        basis.push_back(w);
    }
    std::vector<Vec> candidates = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Vec w(m);
            for (std::size_t t = 0; t < m; ++t) w[t] = f.add(basis[i][t], basis[j][t]);
            candidates.push_back(w);
        }
    for (const Vec& w : candidates) {
        FieldElem qw = q.evaluate(w);
        if (f.is_zero(qw)) continue;
        FieldElem alpha = f.neg(f.div(qu, qw));
        return QuadraticPoint{QuadExtension(q.field, alpha, fn), u, w};
    }
    // cannot happen for a regular form on a space of dimension >= 2
    throw DegenerateChoice("q vanishes on the whole orthogonal complement");
}

TriState binary_in_transfer_ideal(const DiagonalForm& q, const FieldElem& a,
                                  const FieldElem& b) {
    Field f(q.field);
    if (f.is_zero(a) || f.is_zero(b)) throw ZeroElement("binary form needs nonzero entries");
    FieldElem target = f.neg(f.mul(a, b));

    if (q.field.finite_square_classes()) {
        return value_group_squared(q).contains(square_class(q.field, target))
                   ? TriState::Yes
                   : TriState::No;
    }
    if (q.field.kind != FieldKind::Rationals) return TriState::Unknown;

    if (is_isotropic(q)) return TriState::Yes; // D(q) is everything
    if (q.dim() == 3) {
        DiagonalForm phi =
            dim3_neighbor_pfister(q.field, q.coeffs[0], q.coeffs[1], q.coeffs[2]);
        return represents(phi, target) ? TriState::Yes : TriState::No;
    }
    bool all_equal_class = true;
    for (const auto& c : q.coeffs)
        if (!square_class(q.field, f.mul(c, q.coeffs[0])).trivial()) all_equal_class = false;
    if (all_equal_class) {
        // q ~ c * (sum of m squares); its value classes match the Pfister
        // form with 2^t entries, 2^(t-1) < m <= 2^t
        std::size_t twopow = 1;
        while (twopow < q.dim()) twopow *= 2;
        DiagonalForm phi(q.field, Vec(twopow, f.one()));
        return represents(phi, target) ? TriState::Yes : TriState::No;
    }
    return TriState::Unknown;
}

namespace {

Decision section_exists(std::string criterion, std::optional<SectionCertificate> cert,
                        std::string diagnostics = "") {
    return Decision{Verdict::SectionExists, std::move(cert), std::move(criterion),
                    std::nullopt, std::move(diagnostics)};
}

Decision no_section(std::string criterion, Obstruction obs, std::string diagnostics = "") {
    return Decision{Verdict::NoSection, std::nullopt, std::move(criterion), obs,
                    std::move(diagnostics)};
}

Decision unknown(std::string diagnostics) {
    return Decision{Verdict::Unknown, std::nullopt, "", std::nullopt, std::move(diagnostics)};
}

// Theorem route (f): the necessary condition -prod a_i in [D(q)^2].
Decision necessary_condition_route(const QuadricProblem& p) {
    Field f(p.field);
    DiagonalForm q = p.form();
    FieldElem prod = f.one();
    for (const auto& c : q.coeffs) prod = f.mul(prod, c);
    TriState nc;
    try {
        nc = binary_in_transfer_ideal(q, f.one(), prod);
    } catch (const Error& e) {
        return unknown(std::string("necessary condition undecided: ") + e.what());
    }
    switch (nc) {
    case TriState::No:
        return no_section(criteria::kNecessaryCondition,
                          Obstruction{ObstructionKind::NecessaryConditionFails, std::nullopt, 0},
                          "-prod(a_i) lies outside [D(q)^2]");
    case TriState::Yes:
        return unknown("open case: n even, no rational point, and the necessary "
                       "condition -prod(a_i) in [D(q)^2] holds");
    default:
        return unknown("necessary condition undecided over " + p.field.name());
    }
}

} // namespace

Decision sphere_decision(const FieldDescriptor& k, long n) {
    if (n < 1) throw InvalidElement("sphere decision needs n >= 1");
    Field f(k);
    if (n % 2 == 1) {
        Vec ones(static_cast<std::size_t>(n) + 1, f.one());
        return section_exists(criteria::kOddPairing, section_odd(k, ones));
    }
    std::optional<int> s = level(k);
    long bound = 2 * n + 1;
    if (s && *s <= bound)
        return section_exists(criteria::kLevelBound, std::nullopt,
                              "level s = " + std::to_string(*s) + " <= " +
                                  std::to_string(bound));
    Obstruction obs{ObstructionKind::LevelTooLarge, s, bound};
    return no_section(criteria::kLevelBound, obs,
                      s ? ("level s = " + std::to_string(*s) + " exceeds " +
                           std::to_string(bound))
                        : "level is infinite");
}

Decision decide_section(const QuadricProblem& p, const EngineOptions& opt) {
    Field f(p.field);
    long n = p.n();
    DiagonalForm q = p.form();

    // (a) odd n: explicit pairing section
    if (n % 2 == 1) return section_exists(criteria::kOddPairing, section_odd(p.field, q.coeffs));

    // (b) isotropic q: explicit section through a hyperbolic splitting
    bool isotropy_decidable = p.field.kind != FieldKind::RealQuadratic;
    if (isotropy_decidable && is_isotropic(q)) {
        try {
            return section_exists(criteria::kIsotropicSplitting,
                                  section_isotropic(p, opt.search_bound));
        } catch (const SearchExhausted& e) {
            return section_exists(criteria::kIsotropicSplitting, std::nullopt,
                                  std::string("form is isotropic; no vector within the "
                                              "search bound (") +
                                      e.what() + ")");
        }
    }

    // sphere fast path: all coefficients 1, already known anisotropic
    bool sphere = std::all_of(q.coeffs.begin(), q.coeffs.end(),
                              [&](const FieldElem& c) { return f.is_one(c); });
    if (sphere) return sphere_decision(p.field, n);

    switch (p.field.kind) {
    case FieldKind::QuadraticallyClosed:
    case FieldKind::FinitePrime:
    case FieldKind::PAdic: {
        // (c) cohomological dimension <= 2: a rational point settles it
        RationalPointAnswer rp = has_rational_point(p);
        if (rp.state == TriState::Yes)
            return section_exists(criteria::kCohDim2, std::nullopt,
                                  "rational point exists and the base field has "
                                  "cohomological dimension <= 2");
        return necessary_condition_route(p);
    }
    case FieldKind::Reals: {
        // (d) mixed signs were caught at (b); all-positive has no -1 in [D(q)]
        bool any_negative = std::any_of(q.coeffs.begin(), q.coeffs.end(),
                                        [](const FieldElem& c) { return c.u < 0; });
        if (!any_negative)
            return no_section(criteria::kRealEmbeddingSigns,
                              Obstruction{ObstructionKind::AllEmbeddingsPositive,
                                          std::nullopt, 0},
                              "every coefficient is positive");
        return necessary_condition_route(p); // all negative: no point on q = 1
    }
    case FieldKind::Rationals: {
        // (e) with a rational point the verdict is the embedding sign test
        RationalPointAnswer rp = has_rational_point(p);
        if (rp.state == TriState::Yes) {
            bool any_negative = std::any_of(q.coeffs.begin(), q.coeffs.end(),
                                            [](const FieldElem& c) { return c.u < 0; });
            if (any_negative)
                return section_exists(criteria::kRealEmbeddingSigns, std::nullopt,
                                      "rational point exists and some coefficient is "
                                      "negative");
            return no_section(criteria::kRealEmbeddingSigns,
                              Obstruction{ObstructionKind::AllEmbeddingsPositive,
                                          std::nullopt, 0},
                              "the real embedding makes every coefficient positive");
        }
        return necessary_condition_route(p);
    }
    case FieldKind::RealQuadratic: {
        if (!p.point)
            return unknown("real quadratic base fields need an explicit point on q = 1");
        bool emb1 = false, emb2 = false;
        for (const auto& c : q.coeffs) {
            if (embedding_sign(p.field, c, true) < 0) emb1 = true;
            if (embedding_sign(p.field, c, false) < 0) emb2 = true;
        }
        if (emb1 && emb2)
            return section_exists(criteria::kRealEmbeddingSigns, std::nullopt,
                                  "both real embeddings send some coefficient below zero");
        return no_section(criteria::kRealEmbeddingSigns,
                          Obstruction{ObstructionKind::AllEmbeddingsPositive, std::nullopt,
                                      0},
                          "some real embedding makes every coefficient positive");
    }
    }
    return unknown("unsupported field");
}

} // namespace hedgehog
