#pragma once

// Closed-form calculus of phase-modulated Gaussian atoms on R^m.  Every
// operation the library applies to test functions (Fourier transform, affine
// pullbacks, scalar dilations, plane integrals, L2 pairings) maps finite
// sums of atoms to finite sums of atoms, so each has an exact formula that
// doubles as the oracle for the quadrature engine.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "intertwine/scalars.hpp"

namespace intertwine {

// coeff * exp(-pi (x-center)^T Q (x-center)) * exp(2 pi i freq^T x)
struct GaussAtom {
  std::complex<double> coeff;
  Eigen::MatrixXd Q;       // m x m, symmetric positive definite
  Eigen::VectorXd center;  // m
  Eigen::VectorXd freq;    // m
};

// Finite sum of atoms sharing one ambient dimension.
struct SchwartzFun {
  int dim = 0;
  std::vector<GaussAtom> atoms;
};

// Validates symmetry (1e-14) and positive definiteness of Q.
GaussAtom make_atom(std::complex<double> coeff, const Eigen::MatrixXd& Q,
                    const Eigen::VectorXd& center, const Eigen::VectorXd& freq);

// exp(-pi |x|^2): unit mass, Fourier fixed point.
SchwartzFun standard_fun(int m);
SchwartzFun from_atoms(int m, std::vector<GaussAtom> atoms);

SchwartzFun add(const SchwartzFun& f, const SchwartzFun& g);
SchwartzFun scale(std::complex<double> s, const SchwartzFun& f);
// Pointwise complex conjugate (conj coeff, negated frequency).
SchwartzFun complex_conj(const SchwartzFun& f);

std::complex<double> eval(const SchwartzFun& f, const Eigen::VectorXd& x);

// hat f(y) = integral of f(x) exp(-2 pi i y.x) dx, exactly.
SchwartzFun fourier(const SchwartzFun& f);

// x -> f(Ax + b).  Throws std::domain_error when A is singular.
SchwartzFun pullback_affine(const SchwartzFun& f, const Eigen::MatrixXd& A,
                            const Eigen::VectorXd& b);
SchwartzFun pullback_linear(const SchwartzFun& f, const Eigen::MatrixXd& A);

// f(x . alpha) resp. f(alpha . x), componentwise scalar multiplication on
// F^(m/d); requires d | m.
SchwartzFun dilate(const SchwartzFun& f, const Scalar& alpha);
SchwartzFun dilate_left(const SchwartzFun& f, const Scalar& alpha);

// g.f = f(g^-1 x) for certified g acting on F^2 (m = 2d).
SchwartzFun group_pullback(const GroupElement& g, const SchwartzFun& f);

// f(conj(x)) componentwise.
SchwartzFun conj_arg(Field fld, const SchwartzFun& f);

std::complex<double> integral(const SchwartzFun& f);
// integral of conj(f) g
std::complex<double> l2_pair(const SchwartzFun& f, const SchwartzFun& g);

// integral over {t.x + v : t in F} (t multiplying x from the left),
// where f lives on F^2 realized as R^(2d).  Throws on x = 0.
std::complex<double> line_integral(const SchwartzFun& f, const Vector2& x,
                                   const Vector2& v);

// Subtracts integral(f) times the standard atom; the result has total
// integral exactly zero.
SchwartzFun zero_mean(const SchwartzFun& f);

// Radial C^1 plateau: 0 below 1/(2n) and above 2n, 1 on [1/n, n],
// quintic-smoothstep transitions.
double chi_cutoff(int n, double r);

// {"dim": m, "atoms": [{"coeff": [re, im], "Q": row-major, "center": [...],
//  "freq": [...]}]}
std::string to_json_string(const SchwartzFun& f);
SchwartzFun fun_from_json(const std::string& text);

}  // namespace intertwine
