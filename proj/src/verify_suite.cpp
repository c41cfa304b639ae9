#include "intertwine/verify_suite.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "intertwine/atoms.hpp"
#include "intertwine/intertwiners.hpp"
#include "intertwine/module_ops.hpp"
#include "intertwine/quad.hpp"
#include "intertwine/residual.hpp"
#include "intertwine/rng.hpp"
#include "intertwine/sampling.hpp"

namespace intertwine {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::uint64_t field_slot(Field f) {
  switch (f) {
    case Field::Real: return 0;
    case Field::Complex: return 1;
    default: return 2;
  }
}

// Shared shape of every check: time the body, turn an escaped exception into
// a failed result instead of tearing down the whole report, and derive the
// status string unless the body already marked the check skipped.
CheckResult guarded(const char* name, double tol,
                    const std::function<void(CheckResult&)>& body) {
  Timer tm;
  CheckResult r;
  r.name = name;
  r.tol = tol;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.status = "fail";
    r.note = std::string("exception: ") + e.what();
    r.seconds = tm.elapsed();
    return r;
  }
  if (r.status != "skipped-slow") r.status = r.pass ? "pass" : "fail";
  r.seconds = tm.elapsed();
  return r;
}

std::vector<Vector2> draw_points(Field f, Rng& rng, int n, double lo,
                                 double hi) {
  std::vector<Vector2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.push_back(random_x(f, rng, lo, hi));
  return out;
}

Scalar scaled_direction(Field f, Rng& rng, double radius) {
  int d = field_dim(f);
  double c[4] = {0.0, 0.0, 0.0, 0.0};
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (int k = 0; k < d; ++k) {
      c[k] = rng.normal();
      n2 += c[k] * c[k];
    }
  } while (n2 < 1e-12);
  double s = radius / std::sqrt(n2);
  return make_scalar(f, s * c[0], s * c[1], s * c[2], s * c[3]);
}

// 25 torus samples with radii sweeping [1/8, 8] on a log grid; the angular
// part alternates signs on the line, walks the circle uniformly, and is a
// seeded random direction on the quaternions.
std::vector<Scalar> isometry_l_grid(Field f, Rng& rng) {
  const int n = 25;
  std::vector<Scalar> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    double rad = std::pow(8.0, (k - 12) / 12.0);
    if (f == Field::Real) {
      out.push_back(make_scalar(f, (k % 2 == 0) ? rad : -rad));
    } else if (f == Field::Complex) {
      double th = 2.0 * kPi * k / n;
      out.push_back(make_scalar(f, rad * std::cos(th), rad * std::sin(th)));
    } else {
      out.push_back(scaled_direction(f, rng, rad));
    }
  }
  return out;
}

}  // namespace

std::uint64_t check_seed(std::uint64_t base, CheckId id, Field f) {
  std::uint64_t slot =
      8ull * static_cast<std::uint64_t>(id) + field_slot(f) + 1ull;
  return base ^ (slot * 0x9E3779B97F4A7C15ull);
}

CheckResult check_isometry(Field f, const RunConfig& cfg) {
  return guarded("isometry", cfg.tol.isometry, [&](CheckResult& r) {
    Rng rng(check_seed(cfg.seed, CheckId::Isometry, f));
    std::vector<Scalar> ls = isometry_l_grid(f, rng);
    bool ok = true;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      SchwartzFun fn = random_fun(2 * field_dim(f), 2, rng, 0.6);
      VerifyReport rep = verify_isometry(fn, ls, cfg.tol.isometry);
      r.max_residual = std::max(r.max_residual, rep.max_residual);
      r.samples += rep.samples;
      ok = ok && rep.pass;
    }
    r.pass = ok;
  });
}

CheckResult check_equivariance(Field f, const RunConfig& cfg) {
  return guarded("equivariance", cfg.tol.equivariance, [&](CheckResult& r) {
    Rng rng(check_seed(cfg.seed, CheckId::Equivariance, f));
    SchwartzFun fn = random_fun(2 * field_dim(f), 2, rng, 0.6);
    std::vector<Vector2> xs = draw_points(f, rng, 50, 0.5, 2.0);
    std::vector<GroupElement> gens = generator_set(f);
    std::vector<GroupElement> elems = gens;
    for (int k = 0; k < 5; ++k) elems.push_back(random_word(gens, rng, 3));
    bool ok = true;
    for (const GroupElement& g : elems) {
      VerifyReport rep = verify_equivariance(fn, g, xs, cfg.tol.equivariance);
      r.max_residual = std::max(r.max_residual, rep.max_residual);
      r.samples += rep.samples;
      ok = ok && rep.pass;
    }
    r.pass = ok;
  });
}

CheckResult check_dilation(Field f, const RunConfig& cfg) {
  return guarded("dilation", cfg.tol.dilation, [&](CheckResult& r) {
    Rng rng(check_seed(cfg.seed, CheckId::Dilation, f));
    int d = field_dim(f);
    int m = 2 * d;
    int cases = std::max(50, cfg.trials);
    double worst = 0.0;
    for (int k = 0; k < cases; ++k) {
      // Fourier transform of a right dilation:
      //   F(f(. a)) = |a|^{-2d} (F f)(. (1/conj(a)))
      // compared atom by atom, each parameter relative to its own scale
      // (coefficients grow like |a|^{2d} under fourier-of-dilate, so an
      // absolute comparison would just measure that growth times roundoff)
      SchwartzFun fn = random_fun(m, 2, rng, 0.6);
      Scalar a = random_lpoint(f, rng, 4.0).value;
      SchwartzFun lhs = fourier(dilate(fn, a));
      SchwartzFun rhs = scale(std::pow(norm(a), -2.0 * d),
                              dilate(fourier(fn), inv(conj(a))));
      for (std::size_t i = 0; i < lhs.atoms.size(); ++i) {
        const GaussAtom& L = lhs.atoms[i];
        const GaussAtom& R = rhs.atoms[i];
        worst = std::max(worst, std::abs(L.coeff - R.coeff) /
                                    (1.0 + std::abs(L.coeff)));
        worst = std::max(worst, (L.Q - R.Q).cwiseAbs().maxCoeff() /
                                    (1.0 + L.Q.cwiseAbs().maxCoeff()));
        worst = std::max(worst,
                         (L.center - R.center).cwiseAbs().maxCoeff() /
                             (1.0 + L.center.cwiseAbs().maxCoeff()));
        worst = std::max(worst, (L.freq - R.freq).cwiseAbs().maxCoeff() /
                                    (1.0 + L.freq.cwiseAbs().maxCoeff()));
      }
      for (int j = 0; j < 5; ++j) {
        Eigen::VectorXd p = random_vec(m, rng, 1.5);
        std::complex<double> vl = eval(lhs, p);
        std::complex<double> vr = eval(rhs, p);
        worst = std::max(worst,
                         std::abs(vl - vr) / (1.0 + std::abs(vl)));
      }
      // dilation law of the twisted transform (left dilation inside)
      LPoint l = random_lpoint(f, rng, 4.0);
      VerifyReport rep =
          fw_dilation_check(fn, l, draw_points(f, rng, 5, 0.5, 2.0),
                            cfg.tol.dilation);
      worst = std::max(worst, rep.max_residual);
      r.samples += 5 + rep.samples;
    }
    r.max_residual = worst;
    r.pass = worst <= cfg.tol.dilation;
  });
}

CheckResult check_normalization(Field f, const RunConfig& cfg) {
  double tol = f == Field::Quaternion ? cfg.tol.normalization_h
                                      : cfg.tol.normalization;
  return guarded("normalization", tol, [&](CheckResult& r) {
    if (f == Field::Quaternion && !cfg.slow) {
      r.pass = true;
      r.status = "skipped-slow";
      r.note = "quaternionic run takes minutes; pass --slow to include it";
      return;
    }
    Rng rng(check_seed(cfg.seed, CheckId::Normalization, f));
    int m = 2 * field_dim(f);
    SchwartzFun zf = zero_mean(random_fun(m, 2, rng, 0.5));
    std::vector<Vector2> pts;
    if (f == Field::Quaternion) {
      for (int k = 0; k < 3; ++k)
        pts.push_back(scaled_real_pair(f, rng, 0.5, 2.0));
    } else {
      pts = draw_points(f, rng, 10, 0.5, 2.0);
    }
    VerifyReport rep = verify_normalization(zf, pts, cfg.quad, tol);
    r.max_residual = rep.max_residual;
    r.samples = rep.samples;
    r.pass = rep.pass;
    if (rep.inconclusive) {
      r.note =
          "quadrature refinement moved the value; the grid cannot certify "
          "this tolerance either way";
    }
  });
}

CheckResult check_line_integral(Field f, const RunConfig& cfg) {
  double tol = f == Field::Quaternion ? cfg.tol.line_integral_h
                                      : cfg.tol.line_integral;
  return guarded("line_integral", tol, [&](CheckResult& r) {
    Rng rng(check_seed(cfg.seed, CheckId::LineIntegral, f));
    int d = field_dim(f);
    SchwartzFun s = standard_fun(2 * d);
    // the t-integrand is a Gaussian packet near the origin, so a moderate
    // box with dense nodes beats a wide one (see the quadrature notes)
    QuadSpec spec = cfg.quad;
    if (f == Field::Quaternion) {
      spec.nodes_per_axis = 64;
      spec.box_halfwidth = 8.0;
    } else {
      spec.nodes_per_axis = 180;
      spec.box_halfwidth = 9.0;
    }
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      Vector2 x = f == Field::Quaternion
                      ? scaled_real_pair(f, rng, 0.75, 1.0)
                      : random_x(f, rng, 0.75, 1.25);
      double r2 = norm2(x);
      double expect = std::pow(r2, -0.5 * d) * std::exp(-kPi / r2);
      worst = std::max(worst, std::abs(iw(s, x) - expect));
      worst = std::max(worst, std::abs(iw_quad(s, x, spec) - expect));
      ++r.samples;
    }
    r.max_residual = worst;
    r.pass = worst <= tol;
  });
}

CheckResult check_pairing_bound(Field f, const RunConfig& cfg) {
  return guarded("pairing_bound", cfg.tol.bound_headroom, [&](CheckResult& r) {
    Rng rng(check_seed(cfg.seed, CheckId::PairingBound, f));
    QuadSpec spec = cfg.quad;
    spec.nodes_per_axis = 24;  // |h| is positive and wide; cheap nodes do
    int pairs = std::max(100, cfg.trials);
    double worst = 0.0;
    for (int k = 0; k < pairs; ++k) {
      SchwartzFun h = random_fun(2 * field_dim(f), 2, rng, 0.5);
      LPoint l = random_lpoint(f, rng, 8.0);
      PairingBoundResult b = pairing_bound_check(h, l, spec);
      double overshoot =
          b.rhs > 0.0 ? std::max(0.0, b.lhs / b.rhs - 1.0)
                      : (b.lhs > 0.0 ? std::numeric_limits<double>::infinity()
                                     : 0.0);
      worst = std::max(worst, overshoot);
      ++r.samples;
    }
    r.max_residual = worst;
    r.pass = worst <= cfg.tol.bound_headroom;
  });
}

CheckResult check_truncation(Field f, const RunConfig& cfg) {
  return guarded("truncation", cfg.tol.truncation_slope, [&](CheckResult& r) {
    if (f != Field::Real && !cfg.slow) {
      r.pass = true;
      r.status = "skipped-slow";
      r.note =
          "the inner sphere rule makes this field expensive at default "
          "quadrature settings; pass --slow (and consider lowering "
          "quad.radial / quad.angular)";
      return;
    }
    Rng rng(check_seed(cfg.seed, CheckId::Truncation, f));
    SchwartzFun fn = random_fun(2 * field_dim(f), 2, rng, 0.5);
    std::vector<TruncationRow> rows =
        truncation_cauchy(fn, {2, 4, 8, 16, 32, 64}, cfg.quad);
    r.samples = static_cast<int>(rows.size());
    if (rows.front().l1 <= 0.0 || rows.back().l1 <= 0.0) {
      r.pass = false;
      r.note = "degenerate tail norms; slope undefined";
      return;
    }
    double slope = std::log(rows.back().l1 / rows.front().l1) /
                   std::log(static_cast<double>(rows.back().n) /
                            static_cast<double>(rows.front().n));
    r.max_residual = slope;
    r.pass = slope <= cfg.tol.truncation_slope;
    std::ostringstream os;
    os << "log-log endpoint slope of the truncation tail; first/last L1 = "
       << rows.front().l1 << " / " << rows.back().l1;
    r.note = os.str();
  });
}

std::vector<CheckResult> check_residual_transforms(Field f,
                                                   const RunConfig& cfg) {
  std::vector<CheckResult> out;
  const std::vector<double> r_cuts = {2.0, std::exp(1.0), 10.0};
  const std::vector<int> odd =
      f == Field::Real ? std::vector<int>{1} : std::vector<int>{-2, -1, 1, 2};

  out.push_back(guarded("residual_odd", cfg.tol.residual_odd,
                        [&](CheckResult& r) {
    double worst = 0.0;
    for (int s : odd) {
      for (double t : {0.0, 0.4, 1.0}) {
        for (double R : r_cuts) {
          CharacterParam p{f, s, t};
          worst = std::max(worst, std::abs(tw_transform(p, R)));
          worst = std::max(
              worst, std::abs(tw_transform(p, R, TwMode::Quad, cfg.quad)));
          r.samples += 2;
        }
      }
    }
    r.max_residual = worst;
    r.pass = worst <= cfg.tol.residual_odd;
  }));

  out.push_back(guarded("residual_point_mass", cfg.tol.residual_point_mass,
                        [&](CheckResult& r) {
    double worst = 0.0;
    for (double R : half_open_log_grid(2.0, 3.0, 6)) {
      CharacterParam p{f, 0, 0.0};
      double target = 2.0 * std::log(R);
      worst = std::max(worst, std::abs(tw_transform(p, R) - target));
      worst = std::max(worst, std::abs(tw_transform(p, R, TwMode::Quad,
                                                    cfg.quad) -
                                       target));
      r.samples += 2;
    }
    r.max_residual = worst;
    r.pass = worst <= cfg.tol.residual_point_mass;
  }));

  out.push_back(guarded("residual_cesaro", cfg.tol.cesaro_band,
                        [&](CheckResult& r) {
    std::vector<double> cuts = half_open_log_grid(std::exp(1.0), 12.0, 96);
    double worst = 0.0;
    for (double t : {0.25, 0.5, 1.0}) {
      CharacterParam p{f, 0, t};
      CesaroResult cz = pv_cesaro(
          [&](double R) { return tw_transform(p, R); }, cuts);
      std::complex<double> target =
          1.0 / std::complex<double>(0.0, kPi * t);
      worst = std::max(worst, std::abs(cz.mean - target) / std::abs(target));
      ++r.samples;
    }
    r.max_residual = worst;
    r.pass = worst <= cfg.tol.cesaro_band;
    r.note = "relative gap between the log-averaged cutoff transform and "
             "the principal value";
  }));

  out.push_back(guarded("residual_quad", cfg.tol.residual_quad,
                        [&](CheckResult& r) {
    std::vector<int> sectors = odd;
    sectors.insert(sectors.begin(), 0);
    double worst = 0.0;
    for (int s : sectors) {
      for (double t : {0.25, 0.65, 1.0}) {
        for (double R : r_cuts) {
          CharacterParam p{f, s, t};
          worst = std::max(worst,
                           std::abs(tw_transform(p, R, TwMode::Quad, cfg.quad) -
                                    tw_transform(p, R)));
          ++r.samples;
        }
      }
    }
    r.max_residual = worst;
    r.pass = worst <= cfg.tol.residual_quad;
  }));

  return out;
}

CheckResult check_classification(Field f, const RunConfig& cfg) {
  (void)cfg;
  return guarded("classification", 0.5, [&](CheckResult& r) {
    std::vector<double> grid = half_open_log_grid(2.0, 5.0, 24);
    struct Bullet {
      CharacterParam p;
      ReducibilityVerdict want;
    };
    std::vector<Bullet> bullets;
    if (f == Field::Real) {
      bullets.push_back({{f, 0, 0.0}, ReducibilityVerdict::Irreducible});
      bullets.push_back({{f, 1, 0.0}, ReducibilityVerdict::Reducible});
    } else {
      bullets.push_back({{f, 0, 0.0}, ReducibilityVerdict::Irreducible});
    }
    int bad = 0;
    std::ostringstream os;
    for (const Bullet& b : bullets) {
      ReducibilityVerdict got = classify(b.p, grid);
      if (got != b.want) ++bad;
      if (r.samples > 0) os << "; ";
      os << "(" << b.p.sigma << ", " << b.p.t << ") -> " << verdict_name(got);
      ++r.samples;
    }
    r.note = os.str();
    r.max_residual = bad;
    r.pass = bad == 0;
  });
}

namespace {

double bump(double u) {
  double u2 = u * u;
  return u2 < 1.0 ? std::exp(-1.0 / (1.0 - u2)) : 0.0;
}

}  // namespace

std::vector<CheckResult> check_partition(Field f, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  QuadSpec spec = cfg.quad;

  if (f == Field::Real) {
    ResidualGrid grid;
    GridFun fR = sample_gridfun(f, grid, [](const Scalar& x) {
      return std::complex<double>(bump((x.c[0] - 0.3) / 2.0), 0.0);
    });
    GridFun phiR = sample_gridfun(f, grid, [](const Scalar& x) {
      double s = x.c[0] > 0 ? 1.0 : 0.6;
      return std::complex<double>(s * bump(std::log(norm(x)) / 1.5), 0.0);
    });
    TensorElem ten{fR, phiR};

    out.push_back(guarded("partition", cfg.tol.partition, [&](CheckResult& r) {
      double worst = 0.0;
      bool conclusive = true;
      std::vector<std::pair<double, double>> bases = {
          {0.4, std::exp(0.3)}, {-0.2, -std::exp(-0.4)}, {1.1, 1.0}};
      for (auto [u0v, l0v] : bases) {
        Scalar u0 = make_scalar(f, u0v);
        Scalar l0 = make_scalar(f, l0v);
        auto Z = open_picture_parts(ten, u0, l0, OpenPart::Zero, spec);
        auto I = open_picture_parts(ten, u0, l0, OpenPart::Infty, spec);
        auto Rs = open_picture_parts(ten, u0, l0, OpenPart::Res, spec);
        auto Fu = open_picture_parts(ten, u0, l0, OpenPart::Full, spec);
        conclusive = conclusive && !Fu.inconclusive;
        worst = std::max(worst,
                         std::abs(Fu.value - (Z.value + I.value + Rs.value)));
        ++r.samples;
      }
      r.max_residual = worst;
      r.pass = conclusive && worst <= cfg.tol.partition;
      if (!conclusive) r.note = "grid too coarse to certify the partition";
    }));

    out.push_back(guarded("residue_convolution", cfg.tol.partition,
                          [&](CheckResult& r) {
      TensorElem conv = rw_convolution(ten, std::exp(4.0));
      Scalar u0 = make_scalar(f, 0.4);
      std::complex<double> f0 = eval(fR, u0);
      double worst = 0.0;
      int k = 0;
      for (double rho0 : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
        double sign = (k++ % 2 == 0) ? 1.0 : -1.0;
        Scalar l0 = make_scalar(f, sign * std::exp(rho0));
        auto Rs = open_picture_parts(ten, u0, l0, OpenPart::Res, spec);
        std::complex<double> want = f0 * eval(conv.phi, l0);
        worst = std::max(worst, std::abs(Rs.value - want));
        ++r.samples;
      }
      r.max_residual = worst;
      r.pass = worst <= cfg.tol.partition;
    }));
  } else {
    ResidualGrid cgrid;
    cgrid.radial = 241;
    cgrid.angular = 64;
    GridFun fC = sample_gridfun(f, cgrid, [&](const Scalar& u) {
      return std::complex<double>(
          bump(dist(u, make_scalar(f, 0.3)) / 2.0), 0.0);
    });
    GridFun phiC = sample_gridfun(f, cgrid, [](const Scalar& l) {
      double rho = std::log(norm(l));
      double theta = std::atan2(l.c[1], l.c[0]);
      return std::complex<double>(
          bump(rho / 1.5) * (1.0 + 0.3 * std::cos(theta)), 0.0);
    });
    TensorElem ten{fC, phiC};

    out.push_back(guarded("partition", cfg.tol.partition, [&](CheckResult& r) {
      Scalar u0 = make_scalar(f, 0.4, 0.2);
      Scalar l0 = make_scalar(f, std::exp(0.2) * std::cos(0.9),
                              std::exp(0.2) * std::sin(0.9));
      auto Z = open_picture_parts(ten, u0, l0, OpenPart::Zero, spec);
      auto I = open_picture_parts(ten, u0, l0, OpenPart::Infty, spec);
      auto Rs = open_picture_parts(ten, u0, l0, OpenPart::Res, spec);
      auto Fu = open_picture_parts(ten, u0, l0, OpenPart::Full, spec);
      r.samples = 1;
      r.max_residual = std::abs(Fu.value - (Z.value + I.value + Rs.value));
      r.pass = !Fu.inconclusive && r.max_residual <= cfg.tol.partition;
      if (Fu.inconclusive) r.note = "grid too coarse to certify the partition";
    }));
  }

  return out;
}

std::vector<CheckResult> run_suite(Field f, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  out.push_back(check_isometry(f, cfg));
  out.push_back(check_equivariance(f, cfg));
  out.push_back(check_dilation(f, cfg));
  out.push_back(check_normalization(f, cfg));
  out.push_back(check_line_integral(f, cfg));
  out.push_back(check_pairing_bound(f, cfg));
  if (f == Field::Real) out.push_back(check_truncation(f, cfg));
  if (f != Field::Quaternion) {
    for (CheckResult& r : check_residual_transforms(f, cfg))
      out.push_back(std::move(r));
    out.push_back(check_classification(f, cfg));
    for (CheckResult& r : check_partition(f, cfg)) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace intertwine
