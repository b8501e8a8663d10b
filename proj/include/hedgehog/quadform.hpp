#ifndef HEDGEHOG_QUADFORM_HPP
#define HEDGEHOG_QUADFORM_HPP

#include <optional>
#include <set>
#include <vector>

#include "hedgehog/field.hpp"

namespace hedgehog {

using Vec = std::vector<FieldElem>;
using Matrix = std::vector<std::vector<FieldElem>>;

Matrix identity_matrix(const Field& f, std::size_t n);
Matrix matrix_mul(const Field& f, const Matrix& a, const Matrix& b);
Matrix matrix_transpose(const Matrix& a);
Matrix matrix_inverse(const Field& f, const Matrix& a); // throws SingularForm
Vec matrix_apply(const Field& f, const Matrix& a, const Vec& x);

/// Regular diagonal quadratic form <a_1,...,a_m>; every coefficient nonzero.
struct DiagonalForm {
    FieldDescriptor field;
    Vec coeffs;

    DiagonalForm(FieldDescriptor k, Vec a);

    std::size_t dim() const { return coeffs.size(); }
    Field make_field() const { return Field(field); }

    /// q(x) = sum a_i x_i^2
    FieldElem evaluate(const Vec& x) const;
    /// Polar form psi(x,y) = sum a_i x_i y_i, so q(x) = psi(x,x).
    FieldElem bilinear(const Vec& x, const Vec& y) const;

    DiagonalForm concat(const DiagonalForm& other) const;
    DiagonalForm append(const FieldElem& c) const;
};

/// Symmetric matrix representing a quadratic form q(x) = x^T A x.
struct GramMatrix {
    FieldDescriptor field;
    Matrix entries;

    GramMatrix(FieldDescriptor k, Matrix a);
    std::size_t dim() const { return entries.size(); }
};

GramMatrix gram_of(const DiagonalForm& q);

struct DiagonalizeResult {
    DiagonalForm form;
    Matrix basis_change; // P with P^T A P diagonal
};

/// Congruence diagonalization by symmetric elimination, with the usual
/// row+column addition when every remaining diagonal pivot vanishes.
DiagonalizeResult diagonalize(const GramMatrix& g);

/// Exact isotropy verdict. Local fields use disc/Hasse criteria, the
/// rationals the local-global principle over the relevant places.
bool is_isotropic(const DiagonalForm& q);

/// c in D(q)? Isotropic regular forms are universal; otherwise decided by
/// isotropy of q + <-c>.
bool represents(const DiagonalForm& q, const FieldElem& c);

/// Subgroup of square classes; closed under multiplication and containing 1.
struct ValueGroup {
    FieldDescriptor field;
    std::set<SquareClass> members;

    bool contains(const SquareClass& c) const { return members.count(c) > 0; }
};

/// [D(q)]: subgroup generated by the represented square classes.
ValueGroup value_group(const DiagonalForm& q);
/// [D(q)^2]: subgroup generated by pairwise products of represented classes.
ValueGroup value_group_squared(const DiagonalForm& q);
/// D(q) itself as a set of square classes (finite-square-class fields).
std::set<SquareClass> represented_classes(const DiagonalForm& q);

/// Nonzero v with q(v) = 0. Enumerative: complete over F_p; over the
/// rational-literal fields it searches rational vectors up to the height
/// bound and reports SearchExhausted on failure.
Vec find_isotropic_vector(const DiagonalForm& q, long bound);

/// Change of basis P such that P^T A_q P = [[0,1],[1,0]] + regular diagonal
/// block, given an isotropic vector of q.
Matrix hyperbolic_split(const DiagonalForm& q, const Vec& v);

/// n-fold Pfister form <<b_1,...,b_n>>: subset products prod_{i in S}(-b_i)
/// in binary-mask order, unnormalized.
DiagonalForm pfister_expand(const FieldDescriptor& k, const Vec& b);

/// The Pfister form <1, a1 a2, a1 a3, a2 a3> attached to the neighbor
/// <a1,a2,a3>.
DiagonalForm dim3_neighbor_pfister(const FieldDescriptor& k, const FieldElem& a1,
                                   const FieldElem& a2, const FieldElem& a3);

} // namespace hedgehog

#endif
