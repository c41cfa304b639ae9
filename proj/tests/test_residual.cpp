#include "intertwine/residual.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "intertwine/quad.hpp"
#include "intertwine/rng.hpp"

using namespace intertwine;

namespace {

constexpr double kPi = 3.14159265358979323846;

// C-infinity bump supported exactly on |u| < 1.
double bump(double u) {
  double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

std::complex<double> cplx(double re) { return {re, 0.0}; }

}  // namespace

TEST_CASE("characters of the multiplicative group and the reflection") {
  CharacterParam triv{Field::Real, 0, 0.0};
  CharacterParam eps{Field::Real, 1, 0.0};
  CHECK(weyl_act(triv) == triv);
  CHECK(weyl_act(eps) == eps);

  CharacterParam pc{Field::Complex, 3, 1.5};
  CharacterParam pcw = weyl_act(pc);
  CHECK(pcw.sigma == -3);
  CHECK(pcw.t == -1.5);

  Rng rng(81);
  for (int k = 0; k < 50; ++k) {
    Field f = (k % 2 == 0) ? Field::Real : Field::Complex;
    int sig = f == Field::Real ? (k % 4 < 2 ? 0 : 1)
                               : static_cast<int>(std::floor(rng.uniform(-6.0, 6.0)));
    CharacterParam p{f, sig, rng.uniform(-3.0, 3.0)};
    CHECK(weyl_act(weyl_act(p)) == p);
  }

  auto fr = weyl_fixed(Field::Real);
  REQUIRE(fr.size() == 2);
  CHECK((fr[0].sigma == 0 && fr[0].t == 0.0));
  CHECK((fr[1].sigma == 1 && fr[1].t == 0.0));
  for (const auto& p : fr) CHECK(weyl_act(p) == p);
  auto fc = weyl_fixed(Field::Complex);
  REQUIRE(fc.size() == 1);
  CHECK((fc[0].sigma == 0 && fc[0].t == 0.0));
  CHECK(weyl_act(fc[0]) == fc[0]);
  CHECK_THROWS_AS(weyl_fixed(Field::Quaternion), std::invalid_argument);
  CHECK_THROWS_AS(weyl_act(CharacterParam{Field::Quaternion, 0, 0.0}),
                  std::invalid_argument);

  // evaluation: unit modulus and multiplicativity
  for (int k = 0; k < 25; ++k) {
    CharacterParam p{Field::Real, k % 2, rng.uniform(-2.0, 2.0)};
    Scalar a = make_scalar(Field::Real, (k % 2 ? -1.0 : 1.0) *
                                            std::exp(rng.uniform(-2.0, 2.0)));
    Scalar b = make_scalar(Field::Real, std::exp(rng.uniform(-2.0, 2.0)));
    CHECK(std::abs(std::abs(character_eval(p, a)) - 1.0) <= 1e-12);
    CHECK(std::abs(character_eval(p, a * b) -
                   character_eval(p, a) * character_eval(p, b)) <= 1e-12);
  }
  for (int k = 0; k < 25; ++k) {
    CharacterParam p{Field::Complex, (k % 7) - 3, rng.uniform(-2.0, 2.0)};
    double ra = std::exp(rng.uniform(-1.0, 1.0)), ta = rng.uniform(0.0, 2.0 * kPi);
    double rb = std::exp(rng.uniform(-1.0, 1.0)), tb = rng.uniform(0.0, 2.0 * kPi);
    Scalar a = make_scalar(Field::Complex, ra * std::cos(ta), ra * std::sin(ta));
    Scalar b = make_scalar(Field::Complex, rb * std::cos(tb), rb * std::sin(tb));
    CHECK(std::abs(std::abs(character_eval(p, a)) - 1.0) <= 1e-12);
    CHECK(std::abs(character_eval(p, a * b) -
                   character_eval(p, a) * character_eval(p, b)) <= 1e-12);
  }

  // sign and winding pins
  CHECK(character_eval(eps, make_scalar(Field::Real, -2.0)).real() ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(character_eval(triv, make_scalar(Field::Real, -2.0)) - cplx(1.0)) <=
        1e-14);
  double th = 0.7;
  auto v = character_eval(CharacterParam{Field::Complex, 2, 0.0},
                          make_scalar(Field::Complex, std::cos(th), std::sin(th)));
  CHECK(std::abs(v - std::polar(1.0, 2.0 * th)) <= 1e-12);

  CHECK_THROWS_AS(character_eval(triv, scalar_zero(Field::Real)),
                  std::domain_error);
  CHECK_THROWS_AS(character_eval(CharacterParam{Field::Real, 7, 0.0},
                                 make_scalar(Field::Real, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("shell transform closed forms") {
  // odd sectors vanish identically
  for (double t : {0.0, 0.25, 1.7}) {
    for (double R : {1.5, 2.718281828, 20.0}) {
      CHECK(std::abs(tw_transform(CharacterParam{Field::Real, 1, t}, R)) == 0.0);
      CHECK(std::abs(tw_transform(CharacterParam{Field::Complex, 3, t}, R)) == 0.0);
      CHECK(std::abs(tw_transform(CharacterParam{Field::Complex, -1, t}, R)) == 0.0);
    }
  }

  // the point mass: 2 ln R in the even sector at t = 0
  CHECK(std::abs(tw_transform(CharacterParam{Field::Real, 0, 0.0}, std::exp(1.0)) -
                 cplx(2.0)) <= 1e-14);
  for (double R : {1.2, 3.0, 50.0}) {
    CHECK(std::abs(tw_transform(CharacterParam{Field::Real, 0, 0.0}, R) -
                   cplx(2.0 * std::log(R))) <= 1e-13);
    CHECK(std::abs(tw_transform(CharacterParam{Field::Complex, 0, 0.0}, R) -
                   cplx(2.0 * std::log(R))) <= 1e-13);
  }

  // even sector at t != 0 against a fine direct rule in log radius
  double t = 0.65, R = 7.0;
  double L = std::log(R);
  int N = 200000;
  double hh = L / N;
  std::complex<double> ref(0.0, 0.0);
  for (int j = 0; j <= N; ++j) {
    double w = (j == 0 || j == N) ? 0.5 : 1.0;
    ref += 2.0 * w * hh * std::polar(1.0, -2.0 * kPi * t * (j * hh));
  }
  CHECK(std::abs(tw_transform(CharacterParam{Field::Real, 0, t}, R) - ref) <= 1e-8);

  // circle normalization: the flagged variant is exactly pi times larger
  QuadSpec spec;
  auto vr = tw_transform(CharacterParam{Field::Real, 0, t}, R);
  auto vc = tw_transform(CharacterParam{Field::Complex, 0, t}, R, TwMode::Closed,
                         spec, false);
  auto vcr = tw_transform(CharacterParam{Field::Complex, 0, t}, R, TwMode::Closed,
                          spec, true);
  CHECK(std::abs(vc - vr) <= 1e-15);
  CHECK(std::abs(vcr - kPi * vc) <= 1e-14);

  // continuity across t = 0
  CHECK(std::abs(tw_transform(CharacterParam{Field::Real, 0, 1e-8}, R) -
                 cplx(2.0 * L)) <= 1e-5);

  // the cutoff must exceed 1, and quaternions are out of scope
  CHECK_THROWS_AS(tw_transform(CharacterParam{Field::Real, 0, 0.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(tw_transform(CharacterParam{Field::Real, 0, 0.5}, 0.3),
                  std::invalid_argument);
  CHECK_THROWS_AS(tw_transform(CharacterParam{Field::Quaternion, 0, 0.0}, 2.0),
                  std::invalid_argument);
}

TEST_CASE("shell transform by quadrature matches the closed forms") {
  QuadSpec spec;
  double worst = 0.0;
  for (Field f : {Field::Real, Field::Complex}) {
    for (double t : {0.0, 0.5, 1.0}) {
      for (double R : {2.0, 7.389056098930650, 20.0}) {
        auto c = tw_transform(CharacterParam{f, 0, t}, R);
        auto q = tw_transform(CharacterParam{f, 0, t}, R, TwMode::Quad, spec);
        worst = std::max(worst, std::abs(q - c));
        CHECK(std::abs(q - c) <= 1e-9);
      }
    }
  }
  MESSAGE("quadrature vs closed, worst residual: " << worst);

  auto qr = tw_transform(CharacterParam{Field::Complex, 0, 0.5}, 5.0, TwMode::Quad,
                         spec, true);
  auto cr = tw_transform(CharacterParam{Field::Complex, 0, 0.5}, 5.0,
                         TwMode::Closed, spec, true);
  CHECK(std::abs(qr - cr) <= 1e-9);

  // odd sectors vanish under the quadrature as well
  CHECK(std::abs(tw_transform(CharacterParam{Field::Real, 1, 0.7}, 9.0,
                              TwMode::Quad, spec)) <= 1e-12);
  CHECK(std::abs(tw_transform(CharacterParam{Field::Complex, 3, 0.7}, 9.0,
                              TwMode::Quad, spec)) <= 1e-12);
  CHECK(std::abs(tw_transform(CharacterParam{Field::Complex, -5, 0.0}, 4.0,
                              TwMode::Quad, spec)) <= 1e-12);
}

TEST_CASE("principal value recovered by averaging over log-uniform cutoffs") {
  // cutoffs spanning 12 log units make every oscillation with t * 12 whole
  // average to zero exactly, leaving the principal value 1 / (i pi t)
  auto grid = half_open_log_grid(std::exp(1.0), 12.0, 96);
  for (double t : {0.25, 0.5, 1.0}) {
    auto res = pv_cesaro(
        [&](double R) { return tw_transform(CharacterParam{Field::Real, 0, t}, R); },
        grid);
    std::complex<double> target = 1.0 / std::complex<double>(0.0, kPi * t);
    CHECK(std::abs(res.mean - target) <= 0.05 * std::abs(target));
    CHECK(std::abs(res.mean - target) <= 1e-12);
    // individual cutoffs genuinely oscillate around the mean
    CHECK(res.dispersion > 0.1 * std::abs(target));
  }
}

TEST_CASE("reducibility verdicts") {
  auto grid = half_open_log_grid(2.0, 5.0, 24);
  CHECK(classify(CharacterParam{Field::Real, 0, 0.0}, grid) ==
        ReducibilityVerdict::Irreducible);
  CHECK(classify(CharacterParam{Field::Real, 1, 0.0}, grid) ==
        ReducibilityVerdict::Reducible);
  CHECK(classify(CharacterParam{Field::Complex, 0, 0.0}, grid) ==
        ReducibilityVerdict::Irreducible);
  CHECK(classify(CharacterParam{Field::Real, 0, 0.5}, grid) ==
        ReducibilityVerdict::NotWeylFixed);
  CHECK(classify(CharacterParam{Field::Complex, 2, 0.0}, grid) ==
        ReducibilityVerdict::NotWeylFixed);
  CHECK(classify(CharacterParam{Field::Complex, 0, -1.0}, grid) ==
        ReducibilityVerdict::NotWeylFixed);

  // the logarithmic slope is exact, so even a razor-thin band certifies
  ClassifyPolicy tight;
  tight.slope_band = 1e-9;
  CHECK(classify(CharacterParam{Field::Real, 0, 0.0}, grid, tight) ==
        ReducibilityVerdict::Irreducible);

  CHECK_THROWS_AS(classify(CharacterParam{Field::Real, 0, 0.0}, {2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify(CharacterParam{Field::Real, 0, 0.0}, {2.0, 2.0}),
                  std::invalid_argument);

  CHECK(std::string(verdict_name(ReducibilityVerdict::Reducible)) == "REDUCIBLE");
  CHECK(std::string(verdict_name(ReducibilityVerdict::Irreducible)) ==
        "IRREDUCIBLE");
  CHECK(std::string(verdict_name(ReducibilityVerdict::NotWeylFixed)) ==
        "NOT_WEYL_FIXED");
}

TEST_CASE("grid functions on the punctured line and plane") {
  ResidualGrid grid;
  double h = (grid.log_hi - grid.log_lo) / (grid.radial - 1);

  auto smooth = [](const Scalar& x) {
    double rho = std::log(norm(x));
    return cplx(std::exp(-0.3 * rho * rho) * (x.c[0] > 0 ? 1.0 : 0.25));
  };
  auto f = sample_gridfun(Field::Real, grid, smooth);
  CHECK(!f.compact);  // Gaussian tails never hit exact zero

  // exact on the nodes, quadratically accurate between them
  Scalar node = make_scalar(Field::Real, std::exp(grid.log_lo + 37 * h));
  CHECK(std::abs(eval(f, node) - smooth(node)) <= 1e-15);
  Scalar mid = make_scalar(Field::Real, -1.2345);
  CHECK(std::abs(eval(f, mid) - smooth(mid)) <= 1e-3);

  // beyond the window a non-compact function clamps to the boundary ring
  CHECK(std::abs(eval(f, make_scalar(Field::Real, 1e-9)) - f.values[0]) <= 1e-15);
  CHECK(std::abs(eval(f, make_scalar(Field::Real, 1e9)) -
                 f.values[grid.radial - 1]) <= 1e-15);
  CHECK(std::abs(eval(f, scalar_zero(Field::Real)) - f.values[0]) <= 1e-15);
  CHECK(std::abs(eval(f, make_scalar(Field::Real, -1e-9)) -
                 f.values[grid.radial]) <= 1e-15);

  // a hard bump is detected as compact and evaluates to zero outside
  auto g = sample_gridfun(Field::Real, grid, [](const Scalar& x) {
    return cplx(bump(std::log(norm(x)) / 1.5));
  });
  CHECK(g.compact);
  CHECK(g.support_lo == doctest::Approx(-1.5).epsilon(0.05));
  CHECK(g.support_hi == doctest::Approx(1.5).epsilon(0.05));
  CHECK(std::abs(eval(g, make_scalar(Field::Real, std::exp(-3.0)))) == 0.0);
  CHECK(std::abs(eval(g, make_scalar(Field::Real, 100.0))) == 0.0);
  CHECK(std::abs(eval(g, scalar_zero(Field::Real))) == 0.0);

  // circle grid: wrapped angular interpolation
  ResidualGrid cgrid;
  cgrid.angular = 64;
  auto winding = [](const Scalar& x) {
    double rho = std::log(norm(x));
    double theta = std::atan2(x.c[1], x.c[0]);
    return std::polar(bump(rho / 2.0), theta);
  };
  auto w = sample_gridfun(Field::Complex, cgrid, winding);
  CHECK(w.compact);
  double seam = 2.0 * kPi - 0.01;  // between the last node and the first
  Scalar z = make_scalar(Field::Complex, std::cos(seam), std::sin(seam));
  CHECK(std::abs(eval(w, z) - winding(z)) <= 2e-3);
  double inner = 2.0 * kPi * 17.0 / 64.0 + 0.3 * (2.0 * kPi / 64.0);
  Scalar z2 = make_scalar(Field::Complex, 0.8 * std::cos(inner),
                          0.8 * std::sin(inner));
  CHECK(std::abs(eval(w, z2) - winding(z2)) <= 2e-3);

  // invalid layouts are rejected
  CHECK_THROWS_AS(sample_gridfun(Field::Quaternion, grid, smooth),
                  std::invalid_argument);
  ResidualGrid bad1;
  bad1.radial = 1;
  CHECK_THROWS_AS(sample_gridfun(Field::Real, bad1, smooth),
                  std::invalid_argument);
  ResidualGrid bad2;
  bad2.angular = 5;
  CHECK_THROWS_AS(sample_gridfun(Field::Real, bad2, smooth),
                  std::invalid_argument);
}

TEST_CASE("coordinate picture at the boundary point") {
  QuadSpec spec;
  ResidualGrid grid;

  auto f_fun = [](const Scalar& x) { return cplx(bump((x.c[0] - 0.3) / 2.0)); };
  auto phi_fun = [](const Scalar& x) {
    double s = x.c[0] > 0 ? 1.0 : 0.6;
    return cplx(s * bump(std::log(norm(x)) / 1.5));
  };
  auto fR = sample_gridfun(Field::Real, grid, f_fun);
  auto phiR = sample_gridfun(Field::Real, grid, phi_fun);
  REQUIRE(phiR.compact);
  TensorElem ten{fR, phiR};

  auto at = [&](OpenPart part, const Scalar& u0, const Scalar& l0) {
    return open_picture_parts(ten, u0, l0, part, spec);
  };

  SUBCASE("the three parts reassemble the full integral") {
    double worst = 0.0;
    std::vector<std::pair<double, double>> bases = {
        {0.4, std::exp(0.3)}, {-0.2, -std::exp(-0.4)}, {1.1, 1.0}};
    for (auto [u0v, l0v] : bases) {
      Scalar u0 = make_scalar(Field::Real, u0v);
      Scalar l0 = make_scalar(Field::Real, l0v);
      auto Z = at(OpenPart::Zero, u0, l0);
      auto I = at(OpenPart::Infty, u0, l0);
      auto Rs = at(OpenPart::Res, u0, l0);
      auto Fu = at(OpenPart::Full, u0, l0);
      CHECK(!Fu.inconclusive);
      double gap = std::abs(Fu.value - (Z.value + I.value + Rs.value));
      worst = std::max(worst, gap);
      CHECK(gap <= 1e-3);
    }
    MESSAGE("partition identity, worst two-rule gap: " << worst);
  }

  SUBCASE("the residue part vanishes where f does") {
    auto Rs = at(OpenPart::Res, make_scalar(Field::Real, 3.0),
                 make_scalar(Field::Real, std::exp(0.3)));
    CHECK(std::abs(Rs.value) == 0.0);
  }

  SUBCASE("the zero part vanishes for constant f") {
    auto ones =
        sample_gridfun(Field::Real, grid, [](const Scalar&) { return cplx(1.0); });
    TensorElem tc{ones, phiR};
    auto Z = open_picture_parts(tc, make_scalar(Field::Real, 0.7),
                                make_scalar(Field::Real, 1.3), OpenPart::Zero,
                                spec);
    CHECK(std::abs(Z.value) <= 1e-12);
  }

  SUBCASE("the residue part is the shell convolution at the base point") {
    auto conv = rw_convolution(ten, std::exp(4.0));
    double worst = 0.0;
    Scalar u0 = make_scalar(Field::Real, 0.4);
    std::complex<double> f0 = eval(fR, u0);
    int k = 0;
    for (double rho0 : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
      double sign = (k++ % 2 == 0) ? 1.0 : -1.0;
      Scalar l0 = make_scalar(Field::Real, sign * std::exp(rho0));
      auto Rs = at(OpenPart::Res, u0, l0);
      std::complex<double> want = f0 * eval(conv.phi, l0);
      double gap = std::abs(Rs.value - want);
      worst = std::max(worst, gap);
      CHECK(gap <= 1e-3);
    }
    MESSAGE("residue vs grid convolution, worst gap: " << worst);
  }

  SUBCASE("coarse grids are flagged inconclusive") {
    ResidualGrid coarse;
    coarse.radial = 41;  // 0.3 log units per ring
    auto fC = sample_gridfun(Field::Real, coarse, f_fun);
    auto phiC = sample_gridfun(Field::Real, coarse, phi_fun);
    REQUIRE(phiC.compact);
    auto r = open_picture_parts(TensorElem{fC, phiC}, make_scalar(Field::Real, 0.4),
                                make_scalar(Field::Real, 1.2), OpenPart::Full,
                                spec);
    CHECK(r.inconclusive);
  }

  SUBCASE("preconditions") {
    auto gauss = sample_gridfun(Field::Real, grid, [](const Scalar& x) {
      double rho = std::log(norm(x));
      return cplx(std::exp(-0.5 * rho * rho));
    });
    CHECK(!gauss.compact);
    Scalar u0 = make_scalar(Field::Real, 0.4);
    Scalar l0 = make_scalar(Field::Real, 1.0);
    CHECK_THROWS_AS(
        open_picture_parts(TensorElem{fR, gauss}, u0, l0, OpenPart::Full, spec),
        std::invalid_argument);
    CHECK_THROWS_AS(open_picture_parts(ten, u0, scalar_zero(Field::Real),
                                       OpenPart::Res, spec),
                    std::domain_error);
  }

  SUBCASE("complex scalars: partition identity") {
    ResidualGrid cgrid;
    cgrid.radial = 241;  // 0.05 log units per ring
    cgrid.angular = 64;
    auto fC = sample_gridfun(Field::Complex, cgrid, [](const Scalar& u) {
      return cplx(bump(dist(u, make_scalar(Field::Complex, 0.3)) / 2.0));
    });
    auto phiC = sample_gridfun(Field::Complex, cgrid, [](const Scalar& l) {
      double rho = std::log(norm(l));
      double theta = std::atan2(l.c[1], l.c[0]);
      return cplx(bump(rho / 1.5) * (1.0 + 0.3 * std::cos(theta)));
    });
    REQUIRE(phiC.compact);
    TensorElem tc{fC, phiC};
    Scalar u0 = make_scalar(Field::Complex, 0.4, 0.2);
    Scalar l0 = make_scalar(Field::Complex, std::exp(0.2) * std::cos(0.9),
                            std::exp(0.2) * std::sin(0.9));
    auto Z = open_picture_parts(tc, u0, l0, OpenPart::Zero, spec);
    auto I = open_picture_parts(tc, u0, l0, OpenPart::Infty, spec);
    auto Rs = open_picture_parts(tc, u0, l0, OpenPart::Res, spec);
    auto Fu = open_picture_parts(tc, u0, l0, OpenPart::Full, spec);
    CHECK(!Fu.inconclusive);
    double gap = std::abs(Fu.value - (Z.value + I.value + Rs.value));
    MESSAGE("complex partition gap: " << gap);
    CHECK(gap <= 1e-3);
  }
}

TEST_CASE("shell convolution on the grid") {
  ResidualGrid grid;
  auto mk_phi = [&](double center) {
    return sample_gridfun(Field::Real, grid, [=](const Scalar& x) {
      double rho = std::log(norm(x));
      double s = x.c[0] > 0 ? 1.0 : 0.35;
      return cplx(s * bump(rho - center));
    });
  };
  auto f = sample_gridfun(Field::Real, grid, [](const Scalar& x) {
    return cplx(bump((x.c[0] - 0.3) / 2.0));
  });

  auto base = rw_convolution(TensorElem{f, mk_phi(0.0)}, std::exp(2.0));
  CHECK(base.f.values == f.values);  // f rides along untouched

  SUBCASE("kernel is even across the signs, so the output is too") {
    for (int ir = 0; ir < grid.radial; ++ir) {
      CHECK(base.phi.values[ir] == base.phi.values[grid.radial + ir]);
    }
    CHECK(base.phi.compact);
  }

  SUBCASE("values match a fine direct rule") {
    double worst = 0.0;
    for (double rho0 : {-0.5, 0.0, 0.75}) {
      int N = 20000;
      double hh = 2.0 / N;
      double ref = 0.0;
      for (int j = 0; j <= N; ++j) {
        double w = (j == 0 || j == N) ? 0.5 : 1.0;
        ref += w * hh * 1.35 * bump(j * hh - rho0);
      }
      double got =
          eval(base.phi, make_scalar(Field::Real, std::exp(rho0))).real();
      worst = std::max(worst, std::abs(got - ref));
      CHECK(std::abs(got - ref) <= 1e-3);
    }
    MESSAGE("grid convolution vs fine rule, worst gap: " << worst);
  }

  SUBCASE("translating the input by grid steps translates the output") {
    auto shifted = rw_convolution(TensorElem{f, mk_phi(0.5)}, std::exp(2.0));
    double worst = 0.0;
    for (int ir = 0; ir + 20 < grid.radial; ++ir) {
      worst = std::max(worst, std::abs(shifted.phi.values[ir] -
                                       base.phi.values[ir + 20]));
    }
    CHECK(worst <= 1e-13);
  }

  SUBCASE("sign-odd input is annihilated exactly") {
    auto odd = sample_gridfun(Field::Real, grid, [](const Scalar& x) {
      double rho = std::log(norm(x));
      return cplx((x.c[0] > 0 ? 1.0 : -1.0) * bump(rho));
    });
    auto out = rw_convolution(TensorElem{f, odd}, std::exp(2.0));
    for (const auto& v : out.phi.values) CHECK(std::abs(v) == 0.0);
  }

  SUBCASE("empty inputs and empty windows give zero") {
    auto zero = sample_gridfun(Field::Real, grid,
                               [](const Scalar&) { return cplx(0.0); });
    auto out = rw_convolution(TensorElem{f, zero}, std::exp(2.0));
    for (const auto& v : out.phi.values) CHECK(std::abs(v) == 0.0);
    for (double R : {1.0, 0.5}) {
      auto cut = rw_convolution(TensorElem{f, mk_phi(0.0)}, R);
      for (const auto& v : cut.phi.values) CHECK(std::abs(v) == 0.0);
    }
  }

  SUBCASE("support escaping the window is an error, not a silent wrap") {
    CHECK_THROWS_AS(rw_convolution(TensorElem{f, mk_phi(0.0)}, std::exp(5.2)),
                    std::domain_error);
  }

  SUBCASE("non-compact input is rejected") {
    auto gauss = sample_gridfun(Field::Real, grid, [](const Scalar& x) {
      double rho = std::log(norm(x));
      return cplx(std::exp(-0.5 * rho * rho));
    });
    CHECK_THROWS_AS(rw_convolution(TensorElem{f, gauss}, 2.0),
                    std::invalid_argument);
  }

  SUBCASE("circle grid collapses to the angular mean") {
    ResidualGrid cgrid;
    cgrid.radial = 241;
    cgrid.angular = 64;
    auto fC = sample_gridfun(Field::Complex, cgrid, [](const Scalar& u) {
      return cplx(bump(dist(u, make_scalar(Field::Complex, 0.3)) / 2.0));
    });
    auto phiC = sample_gridfun(Field::Complex, cgrid, [](const Scalar& l) {
      double rho = std::log(norm(l));
      double theta = std::atan2(l.c[1], l.c[0]);
      return cplx(bump(rho) * (1.0 + std::cos(theta)));
    });
    REQUIRE(phiC.compact);
    auto out = rw_convolution(TensorElem{fC, phiC}, std::exp(2.0));
    double rho0 = 0.3;
    int N = 20000;
    double hh = 2.0 / N;
    double ref = 0.0;  // angular mean of (1 + cos) is 1, times circle mass
    for (int j = 0; j <= N; ++j) {
      double w = (j == 0 || j == N) ? 0.5 : 1.0;
      ref += w * hh * 2.0 * kPi * bump(j * hh - rho0);
    }
    auto got = eval(out.phi, make_scalar(Field::Complex, std::exp(rho0), 0.0));
    CHECK(std::abs(got - cplx(ref)) <= 1e-2);
    // output carries no angular dependence
    for (int ir = 0; ir < cgrid.radial; ++ir) {
      CHECK(out.phi.values[ir] == out.phi.values[17 * cgrid.radial + ir]);
    }
  }
}
