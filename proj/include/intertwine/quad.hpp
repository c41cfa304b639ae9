#pragma once

// Deterministic numerical integration: tensor Gauss-Legendre boxes on R^m,
// radial x angular rules for the multiplicative measure on the punctured
// scalar algebra, polar rules on R^m, and a Cesaro-style mean for
// oscillating cutoff limits.  All summation orders are fixed, so results
// are bit-identical across runs and across thread counts.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "intertwine/scalars.hpp"

namespace intertwine {

struct QuadSpec {
  double box_halfwidth = 6.0;
  int nodes_per_axis = 80;  // clamped to 24 when m = 8, see nodes_for
  int radial_nodes = 200;
  int angular_nodes = 64;
  double eps_inner = 1e-3;
  double lambda_outer = 12.0;
  double tol = 1e-8;
};

// Throws std::invalid_argument unless all entries are positive and
// eps_inner < lambda_outer.
void validate(const QuadSpec& spec);

// Effective tensor nodes per axis for dimension m.
int nodes_for(const QuadSpec& spec, int m);

// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

using RmIntegrand = std::function<std::complex<double>(const Eigen::VectorXd&)>;
using FxIntegrand = std::function<std::complex<double>(const Scalar&)>;

// Tensor Gauss-Legendre over the box [-halfwidth, halfwidth]^m.  The outer
// axis is cut into 64 fixed chunks; chunks may be evaluated concurrently
// (the integrand must tolerate concurrent calls) but each chunk sums in
// lexicographic order with compensated accumulation and the chunk merge is
// ordered, so the result does not depend on the thread count.
std::complex<double> integrate_rm(const RmIntegrand& fun, int m,
                                  const QuadSpec& spec);
// Same chunking and arithmetic on one thread; bitwise-equal reference.
std::complex<double> integrate_rm_serial(const RmIntegrand& fun, int m,
                                         const QuadSpec& spec);

// Unit-sphere rule in R^m for m in {1, 2, 4, 8}: counting measure of mass 2,
// trapezoid circle of mass 2pi, product rule on S^3 of mass 2pi^2, and a
// six-polar-angle product rule on S^7 of mass pi^4/3.
struct SphereRule {
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> points;
};
SphereRule sphere_rule(int m, int angular_nodes);

// Integral against dr/r x sphere over {eps_inner <= |x| <= lambda_outer},
// i.e. the multiplicative Haar measure of the punctured scalar algebra.
std::complex<double> integrate_fx(const FxIntegrand& fun, Field f,
                                  const QuadSpec& spec);

// Lebesgue integral over R^m in polar form: uniform trapezoid grid in
// log r (radial_nodes points across [eps_inner, lambda_outer]) times
// sphere_rule.  Tolerates mild C^1 kinks in the radial direction, which the
// tensor rule does not.
std::complex<double> integrate_polar(const RmIntegrand& fun, int m,
                                     const QuadSpec& spec);

struct CesaroResult {
  std::complex<double> mean;
  double dispersion;  // root mean square deviation from the mean
};

// Arithmetic mean of fun over the given cutoff grid (expected log-uniform).
CesaroResult pv_cesaro(const std::function<std::complex<double>(double)>& fun,
                       const std::vector<double>& R_grid);

// n cutoffs R_k = lo * exp(k * span / n), k = 0..n-1: uniform and half-open
// in log R, so full oscillations of R^(i omega) average to exactly zero
// whenever omega * span is a multiple of 2 pi.
std::vector<double> half_open_log_grid(double lo, double span, int n);

}  // namespace intertwine
