#include "intertwine/intertwiners.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace intertwine {

namespace {

constexpr double kPi = 3.14159265358979323846;

Field field_of_dim(int dim) {
  switch (dim) {
    case 2: return Field::Real;
    case 4: return Field::Complex;
    case 8: return Field::Quaternion;
    default:
      throw std::invalid_argument(
          "intertwiners: ambient dimension must be 2, 4, or 8");
  }
}

Scalar scalar_from_rd(Field f, const Eigen::VectorXd& v) {
  Scalar s = scalar_zero(f);
  for (int k = 0; k < field_dim(f); ++k) s.c[k] = v(k);
  return s;
}

Vector2 vec_add(const Vector2& a, const Vector2& b) {
  return Vector2{a.x1 + b.x1, a.x2 + b.x2};
}

// w conj(x) / |x|^2 = (-conj(x2), conj(x1)) / |x|^2, the offset of the
// integration line.  Throws on x = 0.
Vector2 line_offset(const Vector2& x) {
  double n2 = norm2(x);
  if (n2 <= 0.0) {
    throw std::domain_error("iw: the intertwining integral is singular at 0");
  }
  return Vector2{(-1.0 / n2) * conj(x.x2), (1.0 / n2) * conj(x.x1)};
}

// Crude scale of f used only to normalize the zero-mean precondition test:
// sum of |coeff| det(Q)^{-1/2} (each term bounds the L1 mass of its atom).
double l1_bound(const SchwartzFun& f) {
  double b = 0.0;
  for (const GaussAtom& a : f.atoms) {
    b += std::abs(a.coeff) / std::sqrt(a.Q.determinant());
  }
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// integral over F of e^{-2 pi i re(beta lambda)} f(lambda x) d lambda
// (Lebesgue), split into the multiplicative-measure shell above eps (the
// |lambda|^d weight converts the measure) plus a Gauss-Legendre polar panel
// on the disc |lambda| <= eps.
std::complex<double> gconv_value(const SchwartzFun& f, const Vector2& x,
                                 const Scalar& beta, const QuadSpec& spec,
                                 double eps) {
  Field fld = x.x1.field;
  int d = field_dim(fld);
  auto integrand = [&](const Scalar& lam) {
    double phase = -2.0 * kPi * re(beta * lam);
    return std::polar(1.0, phase) * eval(f, vec_coords(smul_left(lam, x)));
  };

  QuadSpec shell = spec;
  shell.eps_inner = eps;
  std::complex<double> outer = integrate_fx(
      [&](const Scalar& lam) {
        return std::pow(norm(lam), d) * integrand(lam);
      },
      fld, shell);

  std::vector<double> gn, gw;
  gauss_legendre(24, gn, gw);
  SphereRule sph = sphere_rule(d, spec.angular_nodes);
  std::complex<double> panel(0.0, 0.0);
  for (std::size_t i = 0; i < gn.size(); ++i) {
    double r = 0.5 * eps * (gn[i] + 1.0);
    double wr = 0.5 * eps * gw[i] * std::pow(r, d - 1);
    for (std::size_t j = 0; j < sph.points.size(); ++j) {
      Scalar lam = scalar_from_rd(fld, r * sph.points[j]);
      panel += wr * sph.weights[j] * integrand(lam);
    }
  }
  return outer + panel;
}

}  // namespace

SchwartzFun fw(const SchwartzFun& f) {
  Field fld = field_of_dim(f.dim);
  return pullback_linear(fourier(f), weyl_twist_matrix(fld));
}

std::complex<double> iw(const SchwartzFun& f, const Vector2& x) {
  return line_integral(f, x, line_offset(x));
}

std::complex<double> iw_quad(const SchwartzFun& f, const Vector2& x,
                             const QuadSpec& spec) {
  Field fld = x.x1.field;
  Vector2 v = line_offset(x);
  return integrate_rm(
      [&](const Eigen::VectorXd& t) {
        Vector2 p = vec_add(smul_left(scalar_from_rd(fld, t), x), v);
        return eval(f, vec_coords(p));
      },
      field_dim(fld), spec);
}

std::complex<double> gamma_factor(const LPoint& l) {
  return std::polar(1.0, -2.0 * kPi * re(inv(l.value)));
}

GammaConvResult gamma_conv(const SchwartzFun& f, const Vector2& x,
                           const QuadSpec& spec, bool enforce_zero_mean) {
  validate(spec);
  if (norm2(x) <= 0.0) {
    throw std::domain_error("gamma_conv: x = 0 is not in the open orbit");
  }
  Field fld = x.x1.field;
  if (f.dim != 2 * field_dim(fld)) {
    throw std::invalid_argument("gamma_conv: dimension mismatch");
  }
  if (enforce_zero_mean &&
      std::abs(integral(f)) > 1e-9 * (1.0 + l1_bound(f))) {
    throw std::invalid_argument(
        "gamma_conv: input must have zero mean (subtract the mean first, or "
        "pass enforce_zero_mean = false)");
  }
  Scalar one = scalar_one(fld);
  GammaConvResult out;
  out.value = gconv_value(f, x, one, spec, spec.eps_inner);
  std::complex<double> refined =
      gconv_value(f, x, one, spec, 0.5 * spec.eps_inner);
  out.sensitivity = std::abs(out.value - refined);
  return out;
}

std::complex<double> gamma_conv_kernel(const SchwartzFun& f, const Vector2& x,
                                       const Scalar& beta,
                                       const QuadSpec& spec) {
  validate(spec);
  if (norm2(x) <= 0.0) {
    throw std::domain_error(
        "gamma_conv_kernel: x = 0 is not in the open orbit");
  }
  return gconv_value(f, x, beta, spec, spec.eps_inner);
}

std::complex<double> inner_left(const SchwartzFun& f, const SchwartzFun& g,
                                const LPoint& alpha) {
  int d = field_dim(alpha.value.field);
  return std::pow(norm(alpha.value), d) * l2_pair(f, dilate_left(g, alpha.value));
}

VerifyReport verify_isometry(const SchwartzFun& f,
                             const std::vector<Scalar>& l_samples,
                             double tol) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.name = "isometry";
  rep.field = field_of_dim(f.dim);
  rep.samples = static_cast<int>(l_samples.size());
  rep.tolerance = tol;
  SchwartzFun g = fw(f);
  for (const Scalar& l : l_samples) {
    std::complex<double> lhs = inner(g, g, l_point(l));
    std::complex<double> rhs = inner_left(f, f, l_point(inv(l)));
    rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
  }
  rep.pass = rep.max_residual <= rep.tolerance;
  rep.seconds = seconds_since(t0);
  return rep;
}

VerifyReport verify_equivariance(const SchwartzFun& f, const GroupElement& g,
                                 const std::vector<Vector2>& x_samples,
                                 double tol) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.name = "equivariance";
  rep.field = field_of_dim(f.dim);
  rep.samples = static_cast<int>(x_samples.size());
  rep.tolerance = tol;
  SchwartzFun lhs = fw(group_pullback(g, f));
  SchwartzFun rhs = group_pullback(g, fw(f));
  for (const Vector2& x : x_samples) {
    Eigen::VectorXd p = vec_coords(x);
    rep.max_residual =
        std::max(rep.max_residual, std::abs(eval(lhs, p) - eval(rhs, p)));
  }
  rep.pass = rep.max_residual <= rep.tolerance;
  rep.seconds = seconds_since(t0);
  return rep;
}

VerifyReport fw_dilation_check(const SchwartzFun& f, const LPoint& l,
                               const std::vector<Vector2>& x_samples,
                               double tol) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.name = "fw-dilation";
  rep.field = field_of_dim(f.dim);
  rep.samples = static_cast<int>(x_samples.size());
  rep.tolerance = tol;
  int d = field_dim(rep.field);
  SchwartzFun lhs = dilate(fw(f), l.value);
  SchwartzFun rhs = scale(std::pow(norm(l.value), -2 * d),
                          fw(dilate_left(f, inv(l.value))));
  for (const Vector2& x : x_samples) {
    Eigen::VectorXd p = vec_coords(x);
    rep.max_residual =
        std::max(rep.max_residual, std::abs(eval(lhs, p) - eval(rhs, p)));
  }
  rep.pass = rep.max_residual <= rep.tolerance;
  rep.seconds = seconds_since(t0);
  return rep;
}

std::pair<double, double> fw_dilation_readings(
    const SchwartzFun& f, const LPoint& l,
    const std::vector<Vector2>& x_samples) {
  int d = field_dim(field_of_dim(f.dim));
  double factor = std::pow(norm(l.value), -2 * d);
  SchwartzFun lhs = dilate(fw(f), l.value);
  SchwartzFun left_inside = scale(factor, fw(dilate_left(f, inv(l.value))));
  SchwartzFun right_inside = scale(factor, fw(dilate(f, inv(l.value))));
  double r_left = 0.0, r_right = 0.0;
  for (const Vector2& x : x_samples) {
    Eigen::VectorXd p = vec_coords(x);
    std::complex<double> v = eval(lhs, p);
    r_left = std::max(r_left, std::abs(v - eval(left_inside, p)));
    r_right = std::max(r_right, std::abs(v - eval(right_inside, p)));
  }
  return {r_left, r_right};
}

VerifyReport verify_normalization(const SchwartzFun& f,
                                  const std::vector<Vector2>& x_samples,
                                  const QuadSpec& spec, double tol) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.name = "normalization";
  rep.field = field_of_dim(f.dim);
  rep.samples = static_cast<int>(x_samples.size());
  rep.tolerance = tol;
  SchwartzFun g = fw(f);
  for (const Vector2& x : x_samples) {
    GammaConvResult gc = gamma_conv(f, x, spec);
    rep.max_residual =
        std::max(rep.max_residual, std::abs(iw(g, x) - gc.value));
    if (gc.sensitivity > 0.1 * tol) rep.inconclusive = true;
  }
  rep.pass = !rep.inconclusive && rep.max_residual <= rep.tolerance;
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace intertwine
