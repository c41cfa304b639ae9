#include "intertwine/residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace intertwine {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_rc(Field f, const char* who) {
  if (f == Field::Quaternion) {
    throw std::invalid_argument(std::string(who) +
                                ": only the real and complex scalars carry "
                                "this boundary analysis");
  }
}

double grid_step(const ResidualGrid& g) {
  return (g.log_hi - g.log_lo) / (g.radial - 1);
}

void validate_grid(Field f, const ResidualGrid& g) {
  if (g.radial < 2 || g.log_hi <= g.log_lo) {
    throw std::invalid_argument("grid: need log_lo < log_hi and >= 2 rings");
  }
  if (f == Field::Real && g.angular != 2) {
    throw std::invalid_argument("grid: the real line has two signs");
  }
  if (f == Field::Complex && g.angular < 4) {
    throw std::invalid_argument("grid: circle needs at least 4 nodes");
  }
}

// (1 - R^{-2 pi i t}) / (i pi t), continued by 2 ln R at t = 0.
std::complex<double> even_sector(double t, double R) {
  double L = std::log(R);
  if (t == 0.0) return {2.0 * L, 0.0};
  std::complex<double> num =
      1.0 - std::polar(1.0, -2.0 * kPi * t * L);
  return num / std::complex<double>(0.0, kPi * t);
}

bool all_values_zero(const GridFun& g) {
  for (const auto& v : g.values) {
    if (v != std::complex<double>(0.0, 0.0)) return false;
  }
  return true;
}

void scan_support(GridFun& g) {
  int lo = -1, hi = -1;
  for (int ir = 0; ir < g.grid.radial; ++ir) {
    bool nonzero = false;
    for (int ia = 0; ia < g.grid.angular; ++ia) {
      if (g.values[static_cast<std::size_t>(ia) * g.grid.radial + ir] !=
          std::complex<double>(0.0, 0.0)) {
        nonzero = true;
        break;
      }
    }
    if (nonzero) {
      if (lo < 0) lo = ir;
      hi = ir;
    }
  }
  double h = grid_step(g.grid);
  if (lo < 0) {  // identically zero
    g.compact = true;
    g.support_lo = g.grid.log_lo;
    g.support_hi = g.grid.log_lo;
    return;
  }
  g.support_lo = g.grid.log_lo + lo * h;
  g.support_hi = g.grid.log_lo + hi * h;
  g.compact = (lo > 0 && hi < g.grid.radial - 1);
}

}  // namespace

bool operator==(const CharacterParam& a, const CharacterParam& b) {
  return a.field == b.field && a.sigma == b.sigma && a.t == b.t;
}

std::complex<double> character_eval(const CharacterParam& p, const Scalar& l) {
  require_rc(p.field, "character_eval");
  double r = norm(l);
  if (r <= 0.0) throw std::domain_error("character_eval: 0 is not a unit");
  std::complex<double> radial = std::polar(1.0, 2.0 * kPi * p.t * std::log(r));
  if (p.field == Field::Real) {
    if (p.sigma != 0 && p.sigma != 1) {
      throw std::invalid_argument(
          "character_eval: the real component index is 0 or 1");
    }
    double s = (l.c[0] < 0.0 && p.sigma == 1) ? -1.0 : 1.0;
    return s * radial;
  }
  double theta = std::atan2(l.c[1], l.c[0]);
  return std::polar(1.0, p.sigma * theta) * radial;
}

CharacterParam weyl_act(const CharacterParam& p) {
  require_rc(p.field, "weyl_act");
  CharacterParam out = p;
  if (p.field == Field::Complex) out.sigma = -p.sigma;
  out.t = -p.t;
  return out;
}

std::vector<CharacterParam> weyl_fixed(Field f) {
  require_rc(f, "weyl_fixed");
  if (f == Field::Real) {
    return {CharacterParam{f, 0, 0.0}, CharacterParam{f, 1, 0.0}};
  }
  return {CharacterParam{f, 0, 0.0}};
}

std::complex<double> tw_transform(const CharacterParam& p, double R,
                                  TwMode mode, const QuadSpec& spec,
                                  bool raw_angular) {
  require_rc(p.field, "tw_transform");
  if (!(R > 1.0)) {
    throw std::invalid_argument("tw_transform: the cutoff must exceed 1");
  }
  if (mode == TwMode::Closed) {
    if (p.field == Field::Real) {
      if (p.sigma != 0 && p.sigma != 1) {
        throw std::invalid_argument(
            "tw_transform: the real component index is 0 or 1");
      }
      return p.sigma == 0 ? even_sector(p.t, R)
                          : std::complex<double>(0.0, 0.0);
    }
    if (p.sigma != 0) return {0.0, 0.0};
    std::complex<double> base = even_sector(p.t, R);
    return raw_angular ? kPi * base : base;
  }
  QuadSpec window = spec;
  window.eps_inner = 1.0;
  window.lambda_outer = R;
  std::complex<double> val = integrate_fx(
      [&](const Scalar& x) { return std::conj(character_eval(p, x)); },
      p.field, window);
  if (p.field == Field::Complex && !raw_angular) val /= kPi;
  return val;
}

std::complex<double> tw_transform(const CharacterParam& p, double R) {
  QuadSpec spec;
  return tw_transform(p, R, TwMode::Closed, spec);
}

ReducibilityVerdict classify(const CharacterParam& p,
                             const std::vector<double>& R_grid,
                             const ClassifyPolicy& policy) {
  require_rc(p.field, "classify");
  if (R_grid.size() < 2) {
    throw std::invalid_argument("classify: need at least two cutoffs");
  }
  if (!(weyl_act(p) == p)) return ReducibilityVerdict::NotWeylFixed;

  bool all_zero = true;
  double mean_l = 0.0, mean_v = 0.0;
  std::vector<double> logs(R_grid.size()), vals(R_grid.size());
  for (std::size_t k = 0; k < R_grid.size(); ++k) {
    std::complex<double> v = tw_transform(p, R_grid[k]);
    if (std::abs(v) > policy.zero_tol) all_zero = false;
    logs[k] = std::log(R_grid[k]);
    vals[k] = v.real();
    mean_l += logs[k];
    mean_v += vals[k];
  }
  if (all_zero) return ReducibilityVerdict::Reducible;

  mean_l /= static_cast<double>(R_grid.size());
  mean_v /= static_cast<double>(R_grid.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t k = 0; k < R_grid.size(); ++k) {
    cov += (logs[k] - mean_l) * (vals[k] - mean_v);
    var += (logs[k] - mean_l) * (logs[k] - mean_l);
  }
  if (var <= 0.0) {
    throw std::invalid_argument("classify: cutoff grid is degenerate");
  }
  double slope = cov / var;
  if (std::abs(slope - 2.0) <= policy.slope_band * 2.0) {
    return ReducibilityVerdict::Irreducible;
  }
  throw std::runtime_error(
      "classify: transform neither vanishes nor carries the logarithmic "
      "point mass; refusing to guess");
}

const char* verdict_name(ReducibilityVerdict v) {
  switch (v) {
    case ReducibilityVerdict::Reducible: return "REDUCIBLE";
    case ReducibilityVerdict::Irreducible: return "IRREDUCIBLE";
    default: return "NOT_WEYL_FIXED";
  }
}

GridFun sample_gridfun(
    Field f, const ResidualGrid& grid,
    const std::function<std::complex<double>(const Scalar&)>& fun) {
  require_rc(f, "sample_gridfun");
  validate_grid(f, grid);
  GridFun g;
  g.field = f;
  g.grid = grid;
  g.values.assign(static_cast<std::size_t>(grid.radial) * grid.angular,
                  {0.0, 0.0});
  double h = grid_step(grid);
  for (int ia = 0; ia < grid.angular; ++ia) {
    for (int ir = 0; ir < grid.radial; ++ir) {
      double r = std::exp(grid.log_lo + ir * h);
      Scalar x;
      if (f == Field::Real) {
        x = make_scalar(f, ia == 0 ? r : -r);
      } else {
        double theta = 2.0 * kPi * ia / grid.angular;
        x = make_scalar(f, r * std::cos(theta), r * std::sin(theta));
      }
      g.values[static_cast<std::size_t>(ia) * grid.radial + ir] = fun(x);
    }
  }
  scan_support(g);
  return g;
}

std::complex<double> eval(const GridFun& g, const Scalar& x) {
  const ResidualGrid& gr = g.grid;
  double h = grid_step(gr);
  double r = norm(x);
  double lr = r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity();
  if (lr < gr.log_lo) {
    if (g.compact) return {0.0, 0.0};
    lr = gr.log_lo;
  }
  if (lr > gr.log_hi) {
    if (g.compact) return {0.0, 0.0};
    lr = gr.log_hi;
  }
  double pos = (lr - gr.log_lo) / h;
  int i0 = std::min(static_cast<int>(pos), gr.radial - 2);
  double fr = pos - i0;
  auto at = [&](int ia, int ir) {
    return g.values[static_cast<std::size_t>(ia) * gr.radial + ir];
  };
  if (g.field == Field::Real) {
    int ia = x.c[0] >= 0.0 ? 0 : 1;
    return (1.0 - fr) * at(ia, i0) + fr * at(ia, i0 + 1);
  }
  double theta = std::atan2(x.c[1], x.c[0]);
  if (theta < 0.0) theta += 2.0 * kPi;
  double apos = theta / (2.0 * kPi / gr.angular);
  int j0 = static_cast<int>(apos) % gr.angular;
  int j1 = (j0 + 1) % gr.angular;
  double fa = apos - std::floor(apos);
  std::complex<double> lo =
      (1.0 - fr) * at(j0, i0) + fr * at(j0, i0 + 1);
  std::complex<double> hi =
      (1.0 - fr) * at(j1, i0) + fr * at(j1, i0 + 1);
  return (1.0 - fa) * lo + fa * hi;
}

OpenPictureResult open_picture_parts(const TensorElem& x, const Scalar& nbar0,
                                     const Scalar& l0, OpenPart part,
                                     const QuadSpec& spec) {
  validate(spec);
  Field fld = x.f.field;
  require_rc(fld, "open_picture_parts");
  if (x.phi.field != fld || nbar0.field != fld || l0.field != fld) {
    throw std::invalid_argument("open_picture_parts: mixed scalar fields");
  }
  if (!x.phi.compact) {
    throw std::invalid_argument(
        "open_picture_parts: phi must be compactly supported");
  }
  if (norm2(l0) <= 0.0) {
    throw std::domain_error("open_picture_parts: l0 must be invertible");
  }

  OpenPictureResult out;
  out.inconclusive =
      grid_step(x.f.grid) > 0.05 || grid_step(x.phi.grid) > 0.05;
  if (all_values_zero(x.phi)) return out;

  // The grid argument of phi is -t^{-1} l0^{-1}, of log-radius
  // -log|t| - log|l0|; restricting log|t| to the reflected support window
  // (plus one interpolation skirt) loses nothing.
  double pad = grid_step(x.phi.grid);
  double L0 = std::log(norm(l0));
  double win_lo = -x.phi.support_hi - L0 - pad;
  double win_hi = -x.phi.support_lo - L0 + pad;

  std::complex<double> f0 = eval(x.f, nbar0);
  Scalar l0_inv = inv(l0);

  auto integrand = [&](const Scalar& t) -> std::complex<double> {
    std::complex<double> phi_v = eval(x.phi, -(inv(t) * l0_inv));
    switch (part) {
      case OpenPart::Res:
        return f0 * phi_v;
      case OpenPart::Zero:
        return (eval(x.f, nbar0 + t) - f0) * phi_v;
      default:
        return eval(x.f, nbar0 + t) * phi_v;
    }
  };

  // composite midpoint in log|t| times the angular component, against d^x t
  auto window_sum = [&](double lo, double hi,
                        int n) -> std::complex<double> {
    if (!(hi > lo) || n < 1) return {0.0, 0.0};
    double step = (hi - lo) / n;
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      double tau = lo + (k + 0.5) * step;
      double r = std::exp(tau);
      if (fld == Field::Real) {
        acc += step * integrand(make_scalar(fld, r));
        acc += step * integrand(make_scalar(fld, -r));
      } else {
        int A = x.phi.grid.angular;
        double wa = 2.0 * kPi / A;
        for (int ja = 0; ja < A; ++ja) {
          double th = wa * ja;
          acc += step * wa *
                 integrand(make_scalar(fld, r * std::cos(th),
                                       r * std::sin(th)));
        }
      }
    }
    return acc;
  };

  int n = 10 * spec.radial_nodes;
  switch (part) {
    case OpenPart::Zero:
    case OpenPart::Res:
      out.value = window_sum(win_lo, std::min(win_hi, 0.0), n);
      break;
    case OpenPart::Infty:
      out.value = window_sum(std::max(win_lo, 0.0), win_hi, n);
      break;
    case OpenPart::Full:
      // one unaligned rule across the whole window, so the partition
      // identity compares two genuinely different discretizations
      out.value = window_sum(win_lo, win_hi, 2 * n + 137);
      break;
  }
  return out;
}

TensorElem rw_convolution(const TensorElem& x, double R) {
  const GridFun& phi = x.phi;
  require_rc(phi.field, "rw_convolution");
  if (x.f.field != phi.field) {
    throw std::invalid_argument("rw_convolution: mixed scalar fields");
  }
  if (!phi.compact) {
    throw std::invalid_argument(
        "rw_convolution: phi must be compactly supported");
  }
  GridFun out = phi;
  std::fill(out.values.begin(), out.values.end(),
            std::complex<double>(0.0, 0.0));
  if (R <= 1.0 || all_values_zero(phi)) {
    scan_support(out);
    return TensorElem{x.f, out};
  }

  const ResidualGrid& gr = phi.grid;
  double h = grid_step(gr);
  double lnR = std::log(R);
  // output support in log radius is [-support_hi, lnR - support_lo]
  if (lnR - phi.support_lo > gr.log_hi + 1e-12 ||
      -phi.support_hi < gr.log_lo - 1e-12) {
    throw std::domain_error("rw_convolution: support escapes the grid");
  }

  // the kernel is even across the angular component, so only the
  // angular-summed profile enters (and the output is angular-constant)
  std::vector<std::complex<double>> profile(gr.radial, {0.0, 0.0});
  double wa = phi.field == Field::Real ? 1.0 : 2.0 * kPi / gr.angular;
  for (int ir = 0; ir < gr.radial; ++ir) {
    for (int ia = 0; ia < gr.angular; ++ia) {
      profile[ir] +=
          wa * phi.values[static_cast<std::size_t>(ia) * gr.radial + ir];
    }
  }
  auto profile_at = [&](double pos) -> std::complex<double> {
    if (pos < 0.0 || pos > gr.radial - 1) return {0.0, 0.0};
    int i0 = std::min(static_cast<int>(pos), gr.radial - 2);
    double fr = pos - i0;
    return (1.0 - fr) * profile[i0] + fr * profile[i0 + 1];
  };

  // trapezoid over v in [0, lnR] on the grid step, with a partial final
  // cell; samples land on whole grid offsets, so translating phi by grid
  // steps translates the output exactly
  int K = static_cast<int>(std::floor(lnR / h + 1e-12));
  double rem = std::max(lnR - K * h, 0.0);
  for (int ir0 = 0; ir0 < gr.radial; ++ir0) {
    double rho0 = gr.log_lo + ir0 * h;
    std::complex<double> acc(0.0, 0.0);
    auto sample = [&](double v) { return profile_at((v - rho0 - gr.log_lo) / h); };
    if (K >= 1) {
      for (int j = 0; j <= K; ++j) {
        double w = (j == 0 || j == K) ? 0.5 * h : h;
        acc += w * sample(j * h);
      }
    }
    if (rem > 1e-14) {
      acc += 0.5 * rem * (sample(K * h) + sample(lnR));
    }
    for (int ia = 0; ia < gr.angular; ++ia) {
      out.values[static_cast<std::size_t>(ia) * gr.radial + ir0] = acc;
    }
  }
  scan_support(out);
  return TensorElem{x.f, out};
}

}  // namespace intertwine
