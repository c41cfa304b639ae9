#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

// Arithmetic over the three normed division algebras R, C, H, plus the little
// linear algebra the rest of the library needs: 2x2 matrices over them, unit
// determinant elements, the Weyl rotation, and the open-cell coordinates.
//
// A scalar is stored as four real coefficients in the basis (1, i, j, k);
// real and complex values are the d = 1, 2 prefixes with zero padding, so a
// single code path covers all three algebras.

namespace intertwine {

inline constexpr double kGroupTol = 1e-9;  // unit-determinant certification
inline constexpr double kCellTol = 1e-12;  // open-cell threshold on |a|

enum class Field { Real, Complex, Quaternion };

inline int field_dim(Field f) {
  switch (f) {
    case Field::Real: return 1;
    case Field::Complex: return 2;
    default: return 4;
  }
}

inline const char* field_name(Field f) {
  switch (f) {
    case Field::Real: return "R";
    case Field::Complex: return "C";
    default: return "H";
  }
}

struct NotInOpenCell : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotInGroup : std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Scalar

struct Scalar {
  Field field = Field::Real;
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};  // basis (1, i, j, k)
};

// Components beyond field_dim(field) must be zero.
Scalar make_scalar(Field f, double a, double b = 0.0, double c = 0.0,
                   double d = 0.0);
Scalar scalar_zero(Field f);
Scalar scalar_one(Field f);

Scalar operator+(const Scalar& s, const Scalar& t);
Scalar operator-(const Scalar& s, const Scalar& t);
Scalar operator-(const Scalar& s);
Scalar operator*(const Scalar& s, const Scalar& t);
Scalar operator*(double a, const Scalar& s);

Scalar conj(const Scalar& s);
double re(const Scalar& s);
double norm2(const Scalar& s);       // squared norm
double norm(const Scalar& s);
Scalar inv(const Scalar& s);         // conj(s) / |s|^2
double dist(const Scalar& s, const Scalar& t);

// ---------------------------------------------------------------------------
// Vectors and matrices

struct Vector2 {
  Scalar x1, x2;
};

Scalar pairing(const Vector2& x, const Vector2& y);  // conj(x1) y1 + conj(x2) y2
double norm2(const Vector2& x);
Vector2 smul_left(const Scalar& lambda, const Vector2& x);   // (l x1, l x2)
Vector2 smul_right(const Vector2& x, const Scalar& lambda);  // (x1 l, x2 l)

struct Matrix2 {
  Scalar a, b, c, d;  // row-major [[a, b], [c, d]]
};

Matrix2 mat_mul(const Matrix2& m, const Matrix2& n);
Matrix2 mat_sub(const Matrix2& m, const Matrix2& n);
Matrix2 transpose_plain(const Matrix2& m);  // entry transpose, no conjugation
double max_entry_norm(const Matrix2& m);
// Inverse of a general invertible 2x2 matrix over F, computed through the real
// embedding. Throws std::domain_error if numerically singular.
Matrix2 mat_inverse(const Matrix2& m);

// Real matrices of left/right multiplication by a scalar on F = R^d.
Eigen::MatrixXd lmul_matrix(const Scalar& q);
Eigen::MatrixXd rmul_matrix(const Scalar& q);
// Read a scalar back from the first column of an lmul block.
Scalar scalar_from_lmul_column(Field f, const Eigen::VectorXd& col);

// Left action of m on F^2 ~ R^{2d} as a real (2d x 2d) matrix; multiplicative.
Eigen::MatrixXd real_embed(const Matrix2& m, Field f);
double det_real_embed(const Matrix2& m, Field f);

// F^2 <-> R^{2d} coordinates (x1 coefficients first, then x2).
Eigen::VectorXd vec_coords(const Vector2& x);
Vector2 vec_from_coords(Field f, const Eigen::VectorXd& v);

// Real matrices of structural maps on F^2 ~ R^{2d}:
Eigen::MatrixXd right_dilation_matrix(Field f, const Scalar& alpha);  // x -> x.alpha
Eigen::MatrixXd left_dilation_matrix(Field f, const Scalar& alpha);   // x -> alpha.x
Eigen::MatrixXd conj_matrix(Field f);                                 // x -> conj(x)
// x -> w^{-1} . conj(x) = (conj(x2), -conj(x1)); skew-orthogonal, squares to -1.
Eigen::MatrixXd weyl_twist_matrix(Field f);

// ---------------------------------------------------------------------------
// Group elements

struct GroupElement {
  Matrix2 m;
  Field field = Field::Real;
};

// Certifies det(real_embed) = 1 within tol; throws NotInGroup otherwise.
GroupElement group_element(const Matrix2& m, Field f, double tol = kGroupTol);
GroupElement identity_element(Field f);
GroupElement weyl(Field f);                       // [[0,-1],[1,0]]
GroupElement n_elem(const Scalar& t);             // [[1,t],[0,1]]
GroupElement nbar_elem(const Scalar& t);          // [[1,0],[t,1]]
GroupElement diag_elem(Field f, double a);        // [[a,0],[0,1/a]], a > 0
GroupElement m_elem(const Scalar& mu);            // [[mu,0],[0,mu^{-1}]], |mu| = 1

GroupElement mul(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
Vector2 act(const GroupElement& g, const Vector2& x);

// The unit-determinant representative [x | w.conj(x)/||x||^2] with first
// column x. Throws std::domain_error when x = 0.
GroupElement column_rep(const Vector2& x);

// Open-cell coordinates g = nbar(g) . diag(lambda, lambda^{-1}) . n(g).
struct BruhatData {
  Scalar nbar;     // c a^{-1}
  Scalar m_part;   // a / |a|
  double a_part;   // |a|
  Scalar lambda;   // a = m_part * a_part
  Scalar n_part;   // a^{-1} b
};

BruhatData bruhat(const GroupElement& g);          // throws NotInOpenCell
GroupElement from_bruhat(Field f, const BruhatData& bd);

// Max entry-wise deviation between w g w^{-1} and the inverse of the plain
// entry transpose of g. Identically zero over commutative scalars; over H it
// is reported, not asserted.
double weyl_conj_residual(const GroupElement& g);

}  // namespace intertwine
