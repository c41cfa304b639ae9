#include "intertwine/sampling.hpp"

#include <cmath>
#include <utility>

namespace intertwine {

Eigen::MatrixXd random_spd(int m, Rng& rng) {
  Eigen::MatrixXd R(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) R(r, c) = rng.uniform(-1.0, 1.0);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(R);
  Eigen::MatrixXd rot = qr.householderQ();
  Eigen::VectorXd eigs(m);
  for (int k = 0; k < m; ++k) eigs(k) = rng.uniform(0.4, 1.6);
  Eigen::MatrixXd Q = rot * eigs.asDiagonal() * rot.transpose();
  return 0.5 * (Q + Q.transpose());
}

Eigen::VectorXd random_vec(int m, Rng& rng, double scale) {
  Eigen::VectorXd v(m);
  for (int k = 0; k < m; ++k) v(k) = scale * rng.uniform(-1.0, 1.0);
  return v;
}

SchwartzFun random_fun(int m, int n_atoms, Rng& rng, double scale) {
  std::vector<GaussAtom> atoms;
  for (int k = 0; k < n_atoms; ++k) {
    std::complex<double> coeff(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    atoms.push_back(make_atom(coeff, random_spd(m, rng),
                              random_vec(m, rng, scale),
                              random_vec(m, rng, scale)));
  }
  return from_atoms(m, std::move(atoms));
}

LPoint random_lpoint(Field f, Rng& rng, double range) {
  double r = std::exp(rng.uniform(-std::log(range), std::log(range)));
  Scalar s = scalar_zero(f);
  double n2 = 0.0;
  do {
    for (int k = 0; k < field_dim(f); ++k) s.c[k] = rng.normal();
    n2 = norm2(s);
  } while (n2 < 1e-12);
  return l_point((r / std::sqrt(n2)) * s);
}

Vector2 random_x(Field f, Rng& rng, double lo, double hi) {
  int m = 2 * field_dim(f);
  Eigen::VectorXd v(m);
  double n2 = 0.0;
  do {
    for (int k = 0; k < m; ++k) v(k) = rng.normal();
    n2 = v.squaredNorm();
  } while (n2 < 1e-8);
  double r = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  return vec_from_coords(f, (r / std::sqrt(n2)) * v);
}

Vector2 scaled_real_pair(Field f, Rng& rng, double lo, double hi) {
  Scalar q = scalar_zero(f);
  double n2 = 0.0;
  do {
    for (int k = 0; k < field_dim(f); ++k) q.c[k] = rng.normal();
    n2 = norm2(q);
  } while (n2 < 1e-12);
  double a, b, p2;
  do {
    a = rng.uniform(-1.0, 1.0);
    b = rng.uniform(-1.0, 1.0);
    p2 = a * a + b * b;
  } while (p2 < 1e-8);
  double r = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  double s = r / std::sqrt(n2 * p2);
  return Vector2{(s * a) * q, (s * b) * q};
}

std::vector<GroupElement> generator_set(Field f) {
  Scalar one = scalar_one(f);
  std::vector<GroupElement> gens = {n_elem(one), nbar_elem(one),
                                    diag_elem(f, 2.0), weyl(f)};
  if (f == Field::Complex) {
    gens.push_back(m_elem(make_scalar(f, std::cos(0.7), std::sin(0.7))));
  } else {
    gens.push_back(m_elem(make_scalar(f, -1.0)));
  }
  return gens;
}

GroupElement random_word(const std::vector<GroupElement>& gens, Rng& rng,
                         int len) {
  GroupElement g = gens[static_cast<std::size_t>(rng.uniform(0.0, 0.999) *
                                                 gens.size())];
  for (int k = 1; k < len; ++k) {
    g = mul(g, gens[static_cast<std::size_t>(rng.uniform(0.0, 0.999) *
                                             gens.size())]);
  }
  return g;
}

}  // namespace intertwine
