#include "intertwine/quad.hpp"

#include <cmath>
#include <stdexcept>

namespace intertwine {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kChunks = 64;

// Compensated (Kahan) accumulator for complex values.
struct Kahan {
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  void add(std::complex<double> v) {
    double yr = v.real() - cr;
    double tr = sr + yr;
    cr = (tr - sr) - yr;
    sr = tr;
    double yi = v.imag() - ci;
    double ti = si + yi;
    ci = (ti - si) - yi;
    si = ti;
  }
  std::complex<double> value() const { return {sr, si}; }
};

void scaled_gl(int n, double a, double b, std::vector<double>& nodes,
               std::vector<double>& weights) {
  gauss_legendre(n, nodes, weights);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half * nodes[i];
    weights[i] *= half;
  }
}

std::complex<double> integrate_rm_impl(const RmIntegrand& fun, int m,
                                       const QuadSpec& spec, bool parallel) {
  validate(spec);
  if (m < 1) throw std::invalid_argument("integrate_rm needs m >= 1");
  int n = nodes_for(spec, m);
  std::vector<double> nodes, weights;
  scaled_gl(n, -spec.box_halfwidth, spec.box_halfwidth, nodes, weights);

  std::vector<std::complex<double>> partial(kChunks, {0.0, 0.0});

  auto run_chunk = [&](int chunk) {
    int lo = static_cast<int>(static_cast<long long>(chunk) * n / kChunks);
    int hi = static_cast<int>(static_cast<long long>(chunk + 1) * n / kChunks);
    Kahan acc;
    Eigen::VectorXd x(m);
    std::vector<int> idx(m, 0);
    for (int i0 = lo; i0 < hi; ++i0) {
      x(0) = nodes[i0];
      std::fill(idx.begin(), idx.end(), 0);
      for (;;) {
        double w = weights[i0];
        for (int ax = 1; ax < m; ++ax) {
          x(ax) = nodes[idx[ax]];
          w *= weights[idx[ax]];
        }
        acc.add(w * fun(x));
        // odometer over axes 1..m-1, last axis fastest
        int ax = m - 1;
        for (; ax >= 1; --ax) {
          if (++idx[ax] < n) break;
          idx[ax] = 0;
        }
        if (ax < 1) break;
      }
    }
    partial[chunk] = acc.value();
  };

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int chunk = 0; chunk < kChunks; ++chunk) run_chunk(chunk);
  } else {
    for (int chunk = 0; chunk < kChunks; ++chunk) run_chunk(chunk);
  }

  Kahan total;
  for (int chunk = 0; chunk < kChunks; ++chunk) total.add(partial[chunk]);
  return total.value();
}

}  // namespace

void validate(const QuadSpec& spec) {
  bool ok = spec.box_halfwidth > 0.0 && spec.nodes_per_axis > 0 &&
            spec.radial_nodes > 0 && spec.angular_nodes > 0 &&
            spec.eps_inner > 0.0 && spec.lambda_outer > 0.0 &&
            spec.tol > 0.0 && spec.eps_inner < spec.lambda_outer;
  if (!ok) throw std::invalid_argument("quadrature spec is not positive/ordered");
}

int nodes_for(const QuadSpec& spec, int m) {
  if (m >= 8) return std::min(spec.nodes_per_axis, 24);
  return spec.nodes_per_axis;
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_n, then Newton.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one final recurrence pass to refresh the derivative at the root
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (x * p0 - p1) / (x * x - 1.0);
        break;
      }
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::complex<double> integrate_rm(const RmIntegrand& fun, int m,
                                  const QuadSpec& spec) {
  return integrate_rm_impl(fun, m, spec, true);
}

std::complex<double> integrate_rm_serial(const RmIntegrand& fun, int m,
                                         const QuadSpec& spec) {
  return integrate_rm_impl(fun, m, spec, false);
}

SphereRule sphere_rule(int m, int angular_nodes) {
  if (angular_nodes < 4) {
    throw std::invalid_argument("sphere_rule needs at least 4 angular nodes");
  }
  SphereRule rule;
  if (m == 1) {
    rule.weights = {1.0, 1.0};
    Eigen::VectorXd plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    rule.points = {plus, minus};
    return rule;
  }
  if (m == 2) {
    int K = angular_nodes;
    double w = 2.0 * kPi / K;
    for (int k = 0; k < K; ++k) {
      double th = 2.0 * kPi * k / K;
      Eigen::VectorXd p(2);
      p << std::cos(th), std::sin(th);
      rule.weights.push_back(w);
      rule.points.push_back(p);
    }
    return rule;
  }
  if (m == 4) {
    // (cos a, sin a cos b, sin a sin b cos phi, sin a sin b sin phi)
    // with measure sin^2(a) sin(b) da db dphi; total mass 2 pi^2.
    int na = std::max(4, angular_nodes / 2);
    int nb = std::max(4, angular_nodes / 4);
    int nphi = angular_nodes;
    std::vector<double> an, aw, bn, bw;
    scaled_gl(na, 0.0, kPi, an, aw);
    scaled_gl(nb, 0.0, kPi, bn, bw);
    double wphi = 2.0 * kPi / nphi;
    for (int ia = 0; ia < na; ++ia) {
      double sa = std::sin(an[ia]), ca = std::cos(an[ia]);
      for (int ib = 0; ib < nb; ++ib) {
        double sb = std::sin(bn[ib]), cb = std::cos(bn[ib]);
        for (int ip = 0; ip < nphi; ++ip) {
          double phi = 2.0 * kPi * ip / nphi;
          Eigen::VectorXd p(4);
          p << ca, sa * cb, sa * sb * std::cos(phi), sa * sb * std::sin(phi);
          rule.weights.push_back(aw[ia] * sa * sa * bw[ib] * sb * wphi);
          rule.points.push_back(p);
        }
      }
    }
    return rule;
  }
  if (m == 8) {
    // Hyperspherical product rule: six polar angles with sin^k weights and
    // one azimuth.  This rule exists for percent-level cross-checks; the
    // node counts are capped because the product grid grows as the sixth
    // power and the integrals it feeds tolerate coarse angular resolution.
    int npolar = std::min(6, std::max(4, angular_nodes / 8));
    int nphi = std::min(16, std::max(8, angular_nodes / 2));
    std::vector<std::vector<double>> tn(6), tw(6);
    for (int k = 0; k < 6; ++k) scaled_gl(npolar, 0.0, kPi, tn[k], tw[k]);
    double wphi = 2.0 * kPi / nphi;
    std::vector<int> idx(6, 0);
    for (;;) {
      double sin_prod = 1.0;
      double weight = 1.0;
      Eigen::VectorXd p(8);
      for (int k = 0; k < 6; ++k) {
        double th = tn[k][idx[k]];
        double s = std::sin(th), c = std::cos(th);
        p(k) = sin_prod * c;
        weight *= tw[k][idx[k]] * std::pow(s, 6 - k);
        sin_prod *= s;
      }
      for (int ip = 0; ip < nphi; ++ip) {
        double phi = 2.0 * kPi * ip / nphi;
        Eigen::VectorXd q = p;
        q(6) = sin_prod * std::cos(phi);
        q(7) = sin_prod * std::sin(phi);
        rule.weights.push_back(weight * wphi);
        rule.points.push_back(q);
      }
      int k = 5;
      for (; k >= 0; --k) {
        if (++idx[k] < npolar) break;
        idx[k] = 0;
      }
      if (k < 0) break;
    }
    return rule;
  }
  throw std::invalid_argument("sphere_rule supports m in {1, 2, 4, 8}");
}

std::complex<double> integrate_fx(const FxIntegrand& fun, Field f,
                                  const QuadSpec& spec) {
  validate(spec);
  int d = field_dim(f);
  SphereRule sphere = sphere_rule(d, spec.angular_nodes);
  std::vector<double> un, uw;
  scaled_gl(spec.radial_nodes, std::log(spec.eps_inner),
            std::log(spec.lambda_outer), un, uw);
  Kahan acc;
  for (std::size_t a = 0; a < sphere.points.size(); ++a) {
    const Eigen::VectorXd& omega = sphere.points[a];
    for (int i = 0; i < spec.radial_nodes; ++i) {
      double r = std::exp(un[i]);
      Scalar lambda = scalar_zero(f);
      for (int k = 0; k < d; ++k) lambda.c[k] = r * omega(k);
      acc.add(sphere.weights[a] * uw[i] * fun(lambda));
    }
  }
  return acc.value();
}

std::complex<double> integrate_polar(const RmIntegrand& fun, int m,
                                     const QuadSpec& spec) {
  validate(spec);
  SphereRule sphere = sphere_rule(m, spec.angular_nodes);
  int n = spec.radial_nodes;
  double ulo = std::log(spec.eps_inner), uhi = std::log(spec.lambda_outer);
  double h = (uhi - ulo) / (n - 1);
  Kahan acc;
  for (std::size_t a = 0; a < sphere.points.size(); ++a) {
    const Eigen::VectorXd& omega = sphere.points[a];
    Eigen::VectorXd x(m);
    for (int i = 0; i < n; ++i) {
      double u = ulo + h * i;
      double r = std::exp(u);
      double trap = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      x = r * omega;
      // dx = r^m du on the ray
      acc.add(sphere.weights[a] * trap * h * std::pow(r, m) * fun(x));
    }
  }
  return acc.value();
}

CesaroResult pv_cesaro(const std::function<std::complex<double>(double)>& fun,
                       const std::vector<double>& R_grid) {
  if (R_grid.size() < 4) {
    throw std::invalid_argument("pv_cesaro needs at least 4 cutoffs");
  }
  std::vector<std::complex<double>> vals;
  vals.reserve(R_grid.size());
  Kahan sum;
  for (double R : R_grid) {
    vals.push_back(fun(R));
    sum.add(vals.back());
  }
  std::complex<double> mean = sum.value() / static_cast<double>(vals.size());
  double var = 0.0;
  for (const auto& v : vals) var += std::norm(v - mean);
  return {mean, std::sqrt(var / static_cast<double>(vals.size()))};
}

std::vector<double> half_open_log_grid(double lo, double span, int n) {
  if (lo <= 0.0 || span <= 0.0 || n < 1) {
    throw std::invalid_argument("half_open_log_grid needs positive arguments");
  }
  std::vector<double> grid(n);
  double ulo = std::log(lo);
  for (int k = 0; k < n; ++k) grid[k] = std::exp(ulo + span * k / n);
  return grid;
}

}  // namespace intertwine
