#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "intertwine/quad.hpp"
#include "intertwine/scalars.hpp"

// Boundary analysis over the real and complex scalars: unitary characters of
// the multiplicative group, the shell distribution 1_{|x|>1} and its
// character transforms, the reducibility detector built on them, and the
// coordinate picture on grids where the truncated integral splits into
// near, far, and residual parts.

namespace intertwine {

// ---------------------------------------------------------------------------
// Characters of F^x, F = R or C:
//   R: chi(l) = sign(l)^sigma * |l|^{2 pi i t}   (sigma in {0, 1})
//   C: chi(l) = e^{i n theta}  * |l|^{2 pi i t}  (sigma = n, any integer)
struct CharacterParam {
  Field field = Field::Real;
  int sigma = 0;
  double t = 0.0;
};

bool operator==(const CharacterParam& a, const CharacterParam& b);

// Throws std::invalid_argument for quaternionic parameters or, over R,
// sigma outside {0, 1}.
std::complex<double> character_eval(const CharacterParam& p, const Scalar& l);

// The reflection (sigma, t) -> (sigma^{-1}-component, -t): over R sigma is
// self-inverse, over C the index n flips sign.  An involution.
CharacterParam weyl_act(const CharacterParam& p);

// Parameters fixed by the reflection: R -> {(0,0), (1,0)}, C -> {(0,0)}.
std::vector<CharacterParam> weyl_fixed(Field f);

// ---------------------------------------------------------------------------
// Character transform of the shell distribution 1_{1<|x|<R} against the
// multiplicative Haar measure:
//
//   tw_transform(p, R) = integral_{1<|x|<R} conj(chi_p(x)) d^x
//
// Closed forms: sign/odd-index characters vanish exactly; the even sector
// gives (1 - R^{-2 pi i t}) / (i pi t), and 2 ln R at t = 0 (with the
// complex circle normalized to total angular mass 2, matching the real
// case; pass raw_angular = true for the Euclidean 2 pi normalization,
// which multiplies the even sector by pi).  Quad mode evaluates the same
// window with the radial-angular rule.  Throws std::invalid_argument
// unless R > 1.
enum class TwMode { Closed, Quad };

std::complex<double> tw_transform(const CharacterParam& p, double R,
                                  TwMode mode, const QuadSpec& spec,
                                  bool raw_angular = false);
// Closed mode with defaults.
std::complex<double> tw_transform(const CharacterParam& p, double R);

// ---------------------------------------------------------------------------
// Reducibility detector.  Parameters not fixed by the reflection are out of
// scope; fixed parameters are REDUCIBLE when the transform vanishes
// identically on the cutoff grid and IRREDUCIBLE when it carries the
// logarithmic point mass (value growing like 2 ln R).  Anything else throws
// std::runtime_error: the detector refuses to guess.
enum class ReducibilityVerdict { Reducible, Irreducible, NotWeylFixed };

struct ClassifyPolicy {
  double zero_tol = 1e-12;   // "vanishes identically" threshold
  double slope_band = 0.05;  // relative band around the 2 ln R slope
};

ReducibilityVerdict classify(const CharacterParam& p,
                             const std::vector<double>& R_grid,
                             const ClassifyPolicy& policy = {});

const char* verdict_name(ReducibilityVerdict v);

// ---------------------------------------------------------------------------
// Grid functions on F^x: values on a uniform, endpoint-inclusive grid in
// log|x| times the angular component ({+,-} over R, a wrapped circle grid
// over C), with linear interpolation between nodes.  Points beyond the
// radial window evaluate to 0 when the support is compact, and clamp to
// the boundary ring otherwise (so a smooth ambient function keeps a sane
// value near 0).

struct ResidualGrid {
  double log_lo = -6.0;
  double log_hi = 6.0;
  int radial = 481;
  int angular = 2;  // 2 over R (signs); circle nodes over C
};

struct GridFun {
  Field field = Field::Real;
  ResidualGrid grid;
  std::vector<std::complex<double>> values;  // [ia * radial + ir]
  bool compact = false;   // no mass on the first/last radial ring
  double support_lo = 0;  // log-radius bounds of the nonzero values
  double support_hi = 0;
};

// Samples fun on the grid and records the support metadata.
GridFun sample_gridfun(Field f, const ResidualGrid& grid,
                       const std::function<std::complex<double>(const Scalar&)>& fun);
std::complex<double> eval(const GridFun& g, const Scalar& x);

// An elementary tensor: f on the opposite unipotent coordinate (a copy of
// F), phi on the multiplicative group.
struct TensorElem {
  GridFun f;
  GridFun phi;
};

// ---------------------------------------------------------------------------
// The truncated integral in the coordinate picture at a base point
// (nbar0, l0), split over the unit shell of the integration variable:
//
//   FULL  = integral over t of f(nbar0 + t) phi(-t^{-1} l0^{-1}) d^x t
//   INFTY = the |t| > 1 part
//   ZERO  = the |t| < 1 part with f(nbar0 + t) - f(nbar0) in place of f
//   RES   = f(nbar0) * integral_{|t|<1} phi(-t^{-1} l0^{-1}) d^x t
//
// so that FULL = ZERO + INFTY + RES exactly; the parts use one composite
// log-radial rule and FULL an independent, unaligned one, making the
// partition identity a real two-rule crosscheck.  phi must be compactly
// supported (std::invalid_argument otherwise).  Grids too coarse to resolve
// the unit shell set the inconclusive flag.
enum class OpenPart { Zero, Infty, Res, Full };

struct OpenPictureResult {
  std::complex<double> value{0.0, 0.0};
  bool inconclusive = false;
};

OpenPictureResult open_picture_parts(const TensorElem& x, const Scalar& nbar0,
                                     const Scalar& l0, OpenPart part,
                                     const QuadSpec& spec);

// ---------------------------------------------------------------------------
// Convolution of the truncated shell against the flipped grid function:
//
//   out(l0) = integral_{1<|s|<R} phi(l0^{-1} s) d^x s
//
// computed in log coordinates on phi's own grid (grid-aligned samples, so
// translating phi by whole grid steps translates the output exactly).  The
// f component passes through unchanged.  Throws std::invalid_argument when
// phi is not compactly supported and std::domain_error when the convolved
// support would escape the radial window.  R <= 1 gives the empty window,
// i.e. zero.
TensorElem rw_convolution(const TensorElem& x, double R);

}  // namespace intertwine
