#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "intertwine/atoms.hpp"
#include "intertwine/module_ops.hpp"
#include "intertwine/quad.hpp"
#include "intertwine/scalars.hpp"

namespace intertwine {

// ---------------------------------------------------------------------------
// The twisted Fourier transform
//
//   fw(f)(x) = (F f)(w^{-1} conj(x)) = (F f)((conj(x2), -conj(x1)))
//
// an exact atom operation (Fourier transform followed by the pullback along
// the orthogonal twist).  It is an involution: fw(fw(f)) = f.
SchwartzFun fw(const SchwartzFun& f);

// ---------------------------------------------------------------------------
// The intertwining integral
//
//   iw(f)(x) = integral over t in F of f(t x + w conj(x) / |x|^2)
//
// in closed form (via the plane integral of the atom calculus).  Throws
// std::domain_error at x = 0, where the integral is singular.
std::complex<double> iw(const SchwartzFun& f, const Vector2& x);
// The same integral by the tensor rule on R^d; agrees with the closed form
// within the rule's accuracy.
std::complex<double> iw_quad(const SchwartzFun& f, const Vector2& x,
                             const QuadSpec& spec);

// ---------------------------------------------------------------------------
// The normalizing scalar gamma(l) = exp(-2 pi i re(l^{-1})), unit modulus.
std::complex<double> gamma_factor(const LPoint& l);

// ---------------------------------------------------------------------------
// The gamma-convolution
//
//   gamma_conv(f, x) = integral over F of e^{-2 pi i re(lambda)}
//                      f(lambda x) d lambda     (Lebesgue measure)
//
// computed as a multiplicative-measure integral of the |lambda|^d-weighted
// integrand plus a small-disc panel below eps_inner.  The value is reported
// together with a cutoff-sensitivity estimate (difference against eps/2);
// a large sensitivity flags the quadrature, not the identity.
//
// By default the input must have exact zero mean (throws
// std::invalid_argument otherwise): the identity this integral witnesses is
// only checked on zero-mean vectors, and enforcing the precondition here
// keeps misuse loud.  Pass enforce_zero_mean = false to evaluate anyway
// (the Lebesgue integral itself converges for any Schwartz input).
struct GammaConvResult {
  std::complex<double> value{0.0, 0.0};
  double sensitivity = 0.0;
};
GammaConvResult gamma_conv(const SchwartzFun& f, const Vector2& x,
                           const QuadSpec& spec,
                           bool enforce_zero_mean = true);

// The same integral with the phase e^{-2 pi i re(beta lambda)}.  The left
// scaling law is exact:
//   gamma_conv(f, mu x) = |mu|^{-d} gamma_conv_kernel(f, x, mu^{-1}).
std::complex<double> gamma_conv_kernel(const SchwartzFun& f, const Vector2& x,
                                       const Scalar& beta,
                                       const QuadSpec& spec);

// ---------------------------------------------------------------------------
// Left-dilation pairing |a|^d integral of conj(f)(x) g(a x) dx.  Over R and
// C it coincides with inner(f, g, a); over H it is the variant that the
// isometry of fw actually satisfies.
std::complex<double> inner_left(const SchwartzFun& f, const SchwartzFun& g,
                                const LPoint& alpha);

// ---------------------------------------------------------------------------
// Verification reports

struct VerifyReport {
  std::string name;
  Field field = Field::Real;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;          // max_residual <= tolerance, and not inconclusive
  bool inconclusive = false;  // quadrature could not certify either way
  double seconds = 0.0;
};

// <fw f, fw f>(l) = |l|^{-d} integral conj(f)(x) f(l^{-1} x) dx, closed
// form on both sides.  (Over R and C the right side equals the twisted
// pairing <f,f>_w(l) = <f,f>(l^{-1}).)
VerifyReport verify_isometry(const SchwartzFun& f,
                             const std::vector<Scalar>& l_samples,
                             double tol);

// fw(g.f) = g.(fw f) pointwise on the samples, closed form both sides.
VerifyReport verify_equivariance(const SchwartzFun& f, const GroupElement& g,
                                 const std::vector<Vector2>& x_samples,
                                 double tol);

// The dilation law of fw:
//   (fw f)(x l) = |l|^{-2d} fw(f(l^{-1} .))(x)
// with the dilation on the *left* inside fw; exact on atoms in every field.
VerifyReport fw_dilation_check(const SchwartzFun& f, const LPoint& l,
                               const std::vector<Vector2>& x_samples,
                               double tol);
// Residuals of the two possible readings (left dilation inside fw, right
// dilation inside fw).  Over R and C they agree; over H only the first
// vanishes.  Diagnostic only.
std::pair<double, double> fw_dilation_readings(
    const SchwartzFun& f, const LPoint& l,
    const std::vector<Vector2>& x_samples);

// iw(fw(f))(x) = gamma_conv(f, x) on zero-mean inputs, the closed-form
// image against the quadrature of the convolution.  Reports inconclusive
// when the cutoff sensitivity exceeds a tenth of the tolerance.
VerifyReport verify_normalization(const SchwartzFun& f,
                                  const std::vector<Vector2>& x_samples,
                                  const QuadSpec& spec, double tol);

}  // namespace intertwine
