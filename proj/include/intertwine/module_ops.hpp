#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "intertwine/atoms.hpp"
#include "intertwine/quad.hpp"
#include "intertwine/scalars.hpp"

namespace intertwine {

// ---------------------------------------------------------------------------
// Points of the multiplicative group F^x (the diagonal-torus parameter).

struct LPoint {
  Scalar value;
};

// Throws std::domain_error on zero input.
LPoint l_point(const Scalar& value);

// ---------------------------------------------------------------------------
// The L-valued pairing.
//
//   inner(f, g, a) = |a|^d * integral over F^2 of conj(f)(x) g(x a) dx
//
// computed in closed form through the atom calculus (d = dim F).  The
// twisted variant is the plain pairing evaluated at a^{-1}.
std::complex<double> inner(const SchwartzFun& f, const SchwartzFun& g,
                           const LPoint& alpha, bool twisted = false);

// The pairing packaged as a function on F^x with a closed-form evaluator.
struct LFunction {
  Field field = Field::Real;
  SchwartzFun f, g;
  bool twisted = false;
};

LFunction pairing_function(Field field, const SchwartzFun& f,
                           const SchwartzFun& g, bool twisted = false);
std::complex<double> eval(const LFunction& phi, const Scalar& l);

// integral over F^x of |phi| against the multiplicative Haar measure.
double l1_norm(const LFunction& phi, const QuadSpec& spec);

// ---------------------------------------------------------------------------
// Module actions of F^x on Schwartz vectors (exact atom operations).
//
//   plain:    f.l   = |l|^{-d} f(x l^{-1})
//   twisted:  f._wl = |l|^{+d} f(x l)
SchwartzFun act_module(const SchwartzFun& f, const LPoint& l,
                       bool twisted = false);

// ---------------------------------------------------------------------------
// Grid functions on F^x: a uniform log-radial (midpoint) grid times the unit
// sphere of F, carrying the multiplicative Haar weights
// d^x l = (dr / r) x dsigma.

struct LGridFunction {
  Field field = Field::Real;
  std::vector<double> radii;  // midpoints of a uniform grid in log r
  double log_step = 0.0;      // radial weight per shell
  SphereRule sphere;          // unit sphere of F
  std::vector<std::complex<double>> values;  // [ir * n_angular + ia]

  std::size_t n_radial() const { return radii.size(); }
  std::size_t n_angular() const { return sphere.points.size(); }
  std::size_t index(std::size_t ir, std::size_t ia) const {
    return ir * n_angular() + ia;
  }
  // the grid point as a scalar of the field
  Scalar point(std::size_t ir, std::size_t ia) const;
  // multiplicative Haar weight of the cell (radially uniform)
  double weight(std::size_t, std::size_t ia) const {
    return log_step * sphere.weights[ia];
  }
};

LGridFunction make_lgrid(Field field, double r_lo, double r_hi, int n_radial,
                         int angular_nodes);
void fill(LGridFunction& grid,
          const std::function<std::complex<double>(const Scalar&)>& fun);
LGridFunction sample(const LFunction& phi, double r_lo, double r_hi,
                     int n_radial, int angular_nodes);

std::complex<double> integrate(const LGridFunction& phi);
double l1_norm(const LGridFunction& phi);

// ---------------------------------------------------------------------------
// Convolution action of a compactly supported grid function on a Schwartz
// vector, evaluated at a point of F^2:
//
//   plain:    integral of f(x l^{-1}) phi(l) |l|^{-d} d^x l
//   twisted:  integral of f(x l^{-1}) phi(l) |l|^{+d} d^x l
//
// Throws std::domain_error when the grid is empty.
std::complex<double> act_conv_eval(const SchwartzFun& f,
                                   const LGridFunction& phi, const Vector2& x,
                                   bool twisted = false);
// The same integral evaluated on a caller-supplied set of points.
std::vector<std::complex<double>> act_conv(const SchwartzFun& f,
                                           const LGridFunction& phi,
                                           const std::vector<Vector2>& points,
                                           bool twisted = false);

// ---------------------------------------------------------------------------
// Characters of F^x and the induced transform of a grid function.
//
//   R: index 0 -> |l|^{it},  index 1 -> sign(l) |l|^{it}
//   C: index n -> e^{i n theta} |l|^{it}
//   H: index 0 -> |l|^{it} (the only characters factoring through |.|)
std::complex<double> character_value(Field field, int index, double t,
                                     const Scalar& l);
// sum of phi(l) conj(chi(l)) over the grid against d^x l
std::complex<double> character_transform(const LGridFunction& phi, int index,
                                         double t);

// Certified bracket around the group-algebra norm of a function on F^x:
// the lower bound samples characters (valid for the abelian duals of R^x
// and C^x), the upper bound is the L^1 norm.  For F = H only the upper
// bound is provided (lower_valid = false).  Throws std::domain_error when
// the sampled values grow towards the outer radius (non-integrable input).
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_valid = false;
};
NormBracket cstar_norm_estimate(const LGridFunction& phi);
NormBracket cstar_norm_estimate(const LFunction& phi, const QuadSpec& spec);

// ---------------------------------------------------------------------------
// Norm estimates on Schwartz vectors.

// Upper estimate of sup |f|: multi-start pattern search from the atom
// centers (plus midpoints and the origin) with 1% headroom.  Exact up to
// the headroom for a single atom, a reported bound for sums.
double sup_norm_estimate(const SchwartzFun& f);

// integral of |f| over R^m: quadrature for m <= 4; for m = 8 the closed
// triangle-inequality bound (sum of exact single-atom L^1 masses), which is
// exact when the sum has a single atom.
double l1_norm_rm(const SchwartzFun& f, const QuadSpec& spec);

// ---------------------------------------------------------------------------
// The boundedness inequality |<h,h>(l)| <= |h|_inf |h|_1 min(|l|^d, |l|^-d).
struct PairingBoundResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};
PairingBoundResult pairing_bound_check(const SchwartzFun& h, const LPoint& l,
                            const QuadSpec& spec);

// ---------------------------------------------------------------------------
// Truncation convergence: f_n = f * chi_n (radial plateau cutoff) and
//   row(n) = L^1 norm over F^x of l -> <f - f_n, f - f_n>(l),
// with the pairing computed by polar quadrature (the integrand has radial
// kinks) and the outer integral by the multiplicative-measure rule.
struct TruncationRow {
  int n = 0;
  double l1 = 0.0;
};
std::vector<TruncationRow> truncation_cauchy(const SchwartzFun& f,
                                             const std::vector<int>& n_list,
                                             const QuadSpec& spec);

}  // namespace intertwine
