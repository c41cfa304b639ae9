#include "intertwine/module_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intertwine {

namespace {

constexpr double kPi = 3.14159265358979323846;

Field field_of_dim(int m) {
  switch (m) {
    case 2: return Field::Real;
    case 4: return Field::Complex;
    case 8: return Field::Quaternion;
    default:
      throw std::invalid_argument(
          "expected a function on F^2 (dimension 2, 4 or 8)");
  }
}

}  // namespace

LPoint l_point(const Scalar& value) {
  if (norm(value) == 0.0) {
    throw std::domain_error("points of F^x must be nonzero");
  }
  return {value};
}

std::complex<double> inner(const SchwartzFun& f, const SchwartzFun& g,
                           const LPoint& alpha, bool twisted) {
  if (f.dim != g.dim) {
    throw std::invalid_argument("pairing needs equal dimensions");
  }
  Scalar a = twisted ? inv(alpha.value) : alpha.value;
  int d = field_dim(a.field);
  return std::pow(norm(a), d) * l2_pair(f, dilate(g, a));
}

LFunction pairing_function(Field field, const SchwartzFun& f,
                           const SchwartzFun& g, bool twisted) {
  if (f.dim != 2 * field_dim(field) || g.dim != f.dim) {
    throw std::invalid_argument("pairing needs functions on F^2");
  }
  return {field, f, g, twisted};
}

std::complex<double> eval(const LFunction& phi, const Scalar& l) {
  return inner(phi.f, phi.g, l_point(l), phi.twisted);
}

double l1_norm(const LFunction& phi, const QuadSpec& spec) {
  auto fun = [&](const Scalar& l) {
    return std::complex<double>(std::abs(eval(phi, l)), 0.0);
  };
  return integrate_fx(fun, phi.field, spec).real();
}

SchwartzFun act_module(const SchwartzFun& f, const LPoint& l, bool twisted) {
  int d = field_dim(l.value.field);
  if (twisted) {
    return scale(std::pow(norm(l.value), d), dilate(f, l.value));
  }
  return scale(std::pow(norm(l.value), -d), dilate(f, inv(l.value)));
}

// ---------------------------------------------------------------------------
// Grid functions on F^x

Scalar LGridFunction::point(std::size_t ir, std::size_t ia) const {
  Scalar s = scalar_zero(field);
  const Eigen::VectorXd& dir = sphere.points[ia];
  for (int k = 0; k < field_dim(field); ++k) s.c[k] = radii[ir] * dir(k);
  return s;
}

LGridFunction make_lgrid(Field field, double r_lo, double r_hi, int n_radial,
                         int angular_nodes) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || n_radial < 1) {
    throw std::invalid_argument("log-radial grid needs 0 < r_lo < r_hi");
  }
  LGridFunction grid;
  grid.field = field;
  grid.sphere = sphere_rule(field_dim(field), angular_nodes);
  double span = std::log(r_hi / r_lo);
  grid.log_step = span / n_radial;
  grid.radii.resize(n_radial);
  for (int k = 0; k < n_radial; ++k) {
    grid.radii[k] = r_lo * std::exp(span * (k + 0.5) / n_radial);
  }
  grid.values.assign(grid.n_radial() * grid.n_angular(),
                     std::complex<double>(0.0, 0.0));
  return grid;
}

void fill(LGridFunction& grid,
          const std::function<std::complex<double>(const Scalar&)>& fun) {
  for (std::size_t ir = 0; ir < grid.n_radial(); ++ir) {
    for (std::size_t ia = 0; ia < grid.n_angular(); ++ia) {
      grid.values[grid.index(ir, ia)] = fun(grid.point(ir, ia));
    }
  }
}

LGridFunction sample(const LFunction& phi, double r_lo, double r_hi,
                     int n_radial, int angular_nodes) {
  LGridFunction grid =
      make_lgrid(phi.field, r_lo, r_hi, n_radial, angular_nodes);
  fill(grid, [&](const Scalar& l) { return eval(phi, l); });
  return grid;
}

std::complex<double> integrate(const LGridFunction& phi) {
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t ir = 0; ir < phi.n_radial(); ++ir) {
    for (std::size_t ia = 0; ia < phi.n_angular(); ++ia) {
      sum += phi.values[phi.index(ir, ia)] * phi.weight(ir, ia);
    }
  }
  return sum;
}

double l1_norm(const LGridFunction& phi) {
  double sum = 0.0;
  for (std::size_t ir = 0; ir < phi.n_radial(); ++ir) {
    for (std::size_t ia = 0; ia < phi.n_angular(); ++ia) {
      sum += std::abs(phi.values[phi.index(ir, ia)]) * phi.weight(ir, ia);
    }
  }
  return sum;
}

std::complex<double> act_conv_eval(const SchwartzFun& f,
                                   const LGridFunction& phi, const Vector2& x,
                                   bool twisted) {
  if (phi.values.empty()) {
    throw std::domain_error("convolution against an empty grid");
  }
  int d = field_dim(phi.field);
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t ir = 0; ir < phi.n_radial(); ++ir) {
    for (std::size_t ia = 0; ia < phi.n_angular(); ++ia) {
      std::complex<double> v = phi.values[phi.index(ir, ia)];
      if (v == std::complex<double>(0.0, 0.0)) continue;
      Scalar l = phi.point(ir, ia);
      Vector2 xl = smul_right(x, inv(l));
      double factor = std::pow(norm(l), twisted ? d : -d);
      sum += eval(f, vec_coords(xl)) * v * factor * phi.weight(ir, ia);
    }
  }
  return sum;
}

std::vector<std::complex<double>> act_conv(const SchwartzFun& f,
                                           const LGridFunction& phi,
                                           const std::vector<Vector2>& points,
                                           bool twisted) {
  std::vector<std::complex<double>> out;
  out.reserve(points.size());
  for (const Vector2& x : points) {
    out.push_back(act_conv_eval(f, phi, x, twisted));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characters and the norm bracket

std::complex<double> character_value(Field field, int index, double t,
                                     const Scalar& l) {
  double r = norm(l);
  if (r == 0.0) throw std::domain_error("characters live on F^x");
  std::complex<double> radial =
      std::exp(std::complex<double>(0.0, t * std::log(r)));
  switch (field) {
    case Field::Real:
      return (index != 0 && l.c[0] < 0.0) ? -radial : radial;
    case Field::Complex: {
      double theta = std::atan2(l.c[1], l.c[0]);
      return std::exp(std::complex<double>(0.0, index * theta)) * radial;
    }
    default:
      return radial;
  }
}

std::complex<double> character_transform(const LGridFunction& phi, int index,
                                         double t) {
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t ir = 0; ir < phi.n_radial(); ++ir) {
    for (std::size_t ia = 0; ia < phi.n_angular(); ++ia) {
      Scalar l = phi.point(ir, ia);
      sum += phi.values[phi.index(ir, ia)] *
             std::conj(character_value(phi.field, index, t, l)) *
             phi.weight(ir, ia);
    }
  }
  return sum;
}

NormBracket cstar_norm_estimate(const LGridFunction& phi) {
  // Integrability screen: the mean modulus over the outer quarter of the
  // log-radial range must not exceed the quarter before it.  This catches
  // growth towards the outer radius; decay slower than that (or beyond the
  // window) is invisible to any finite grid.
  std::size_t nr = phi.n_radial();
  if (nr >= 8) {
    auto shell_mean = [&](std::size_t lo, std::size_t hi) {
      double s = 0.0;
      std::size_t count = 0;
      for (std::size_t ir = lo; ir < hi; ++ir) {
        for (std::size_t ia = 0; ia < phi.n_angular(); ++ia) {
          s += std::abs(phi.values[phi.index(ir, ia)]);
          ++count;
        }
      }
      return s / static_cast<double>(count);
    };
    double inner_mean = shell_mean(nr / 2, 3 * nr / 4);
    double outer_mean = shell_mean(3 * nr / 4, nr);
    if (outer_mean > 1.05 * inner_mean + 1e-14) {
      throw std::domain_error(
          "grid function grows towards the outer radius; the L^1 bound "
          "would be meaningless");
    }
  }
  NormBracket bracket;
  bracket.upper = l1_norm(phi);
  if (phi.field == Field::Quaternion) {
    bracket.lower = 0.0;
    bracket.lower_valid = false;
    return bracket;
  }
  int max_index = (phi.field == Field::Real) ? 1 : 8;
  int min_index = (phi.field == Field::Real) ? 0 : -8;
  double best = 0.0;
  for (int index = min_index; index <= max_index; ++index) {
    for (int k = 0; k < 257; ++k) {
      double t = -8.0 + 16.0 * k / 256.0;
      best = std::max(best, std::abs(character_transform(phi, index, t)));
    }
  }
  bracket.lower = best;
  bracket.lower_valid = true;
  return bracket;
}

NormBracket cstar_norm_estimate(const LFunction& phi, const QuadSpec& spec) {
  validate(spec);
  LGridFunction grid = sample(phi, spec.eps_inner, spec.lambda_outer,
                              spec.radial_nodes, spec.angular_nodes);
  NormBracket bracket = cstar_norm_estimate(grid);
  // The pairing decays only algebraically, |phi(l)| <= min(A |l|^d, B/|l|^d)
  // with A = sup|g| |f|_1 and B = sup|f| |g|_1 (Hoelder on the defining
  // integral), so the radial window [eps, lambda] misses real mass.  Add the
  // integrated bound over both missing ranges to keep the upper end of the
  // bracket an upper bound.
  int d = field_dim(phi.field);
  double surface = (phi.field == Field::Real)      ? 2.0
                   : (phi.field == Field::Complex) ? 2.0 * kPi
                                                   : 2.0 * kPi * kPi;
  auto l1_bound = [](const SchwartzFun& h) {
    double sum = 0.0;
    for (const GaussAtom& a : h.atoms) {
      sum += std::abs(a.coeff) / std::sqrt(Eigen::MatrixXd(a.Q).determinant());
    }
    return sum;
  };
  double a_coef = sup_norm_estimate(phi.g) * l1_bound(phi.f);
  double b_coef = sup_norm_estimate(phi.f) * l1_bound(phi.g);
  if (phi.twisted) std::swap(a_coef, b_coef);
  double tail_in =
      a_coef * surface * std::pow(spec.eps_inner, d) / static_cast<double>(d);
  double tail_out = b_coef * surface * std::pow(spec.lambda_outer, -d) /
                    static_cast<double>(d);
  bracket.upper += tail_in + tail_out;
  return bracket;
}

// ---------------------------------------------------------------------------
// Norm estimates on Schwartz vectors

double sup_norm_estimate(const SchwartzFun& f) {
  if (f.atoms.empty()) return 0.0;
  int m = f.dim;
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Zero(m));
  for (const GaussAtom& a : f.atoms) starts.push_back(a.center);
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < f.atoms.size(); ++j) {
      starts.push_back(0.5 * (f.atoms[i].center + f.atoms[j].center));
    }
  }
  double best = 0.0;
  for (const Eigen::VectorXd& start : starts) {
    Eigen::VectorXd x = start;
    double val = std::abs(eval(f, x));
    double step = 0.5;
    int guard = 0;
    while (step > 1e-6 && guard < 20000) {
      bool moved = false;
      for (int k = 0; k < m && !moved; ++k) {
        for (double s : {1.0, -1.0}) {
          Eigen::VectorXd y = x;
          y(k) += s * step;
          double v = std::abs(eval(f, y));
          ++guard;
          if (v > val) {
            val = v;
            x = y;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    best = std::max(best, val);
  }
  return 1.01 * best;
}

double l1_norm_rm(const SchwartzFun& f, const QuadSpec& spec) {
  if (f.atoms.empty()) return 0.0;
  // A single atom has |f| = |coeff| exp(-pi (x-c)^T Q (x-c)) with exact mass
  // |coeff| det(Q)^{-1/2}.  In dimension 8 the tensor rule is out of reach,
  // so the triangle-inequality sum of atom masses stands in; it is an upper
  // bound, exact for one atom.
  if (f.atoms.size() == 1 || f.dim > 4) {
    double sum = 0.0;
    for (const GaussAtom& a : f.atoms) {
      sum += std::abs(a.coeff) /
             std::sqrt(Eigen::MatrixXd(a.Q).determinant());
    }
    return sum;
  }
  auto fun = [&](const Eigen::VectorXd& x) {
    return std::complex<double>(std::abs(eval(f, x)), 0.0);
  };
  return integrate_rm(fun, f.dim, spec).real();
}

PairingBoundResult pairing_bound_check(const SchwartzFun& h, const LPoint& l,
                            const QuadSpec& spec) {
  int d = field_dim(l.value.field);
  if (h.dim != 2 * d) {
    throw std::invalid_argument("pairing bound check needs a function on F^2");
  }
  PairingBoundResult out;
  out.lhs = std::abs(inner(h, h, l));
  double r = norm(l.value);
  double factor = std::min(std::pow(r, d), std::pow(r, -d));
  out.rhs = sup_norm_estimate(h) * l1_norm_rm(h, spec) * factor;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

// ---------------------------------------------------------------------------
// Truncation convergence

std::vector<TruncationRow> truncation_cauchy(const SchwartzFun& f,
                                             const std::vector<int>& n_list,
                                             const QuadSpec& spec) {
  validate(spec);
  Field field = field_of_dim(f.dim);
  int d = field_dim(field);
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (n_list[k] < 2 || (k > 0 && n_list[k] <= n_list[k - 1])) {
      throw std::invalid_argument("n_list must be increasing with n >= 2");
    }
  }
  std::vector<TruncationRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    auto diff = [&](const Eigen::VectorXd& x) {
      return eval(f, x) * (1.0 - chi_cutoff(n, x.norm()));
    };
    auto phi = [&](const Scalar& l) {
      auto integrand = [&](const Eigen::VectorXd& xc) {
        Vector2 x = vec_from_coords(field, xc);
        Vector2 xl = smul_right(x, l);
        return std::conj(diff(xc)) * diff(vec_coords(xl));
      };
      return std::pow(norm(l), d) * integrate_polar(integrand, f.dim, spec);
    };
    auto absphi = [&](const Scalar& l) {
      return std::complex<double>(std::abs(phi(l)), 0.0);
    };
    rows.push_back({n, integrate_fx(absphi, field, spec).real()});
  }
  return rows;
}

}  // namespace intertwine
