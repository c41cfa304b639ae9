#include "intertwine/atoms.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace intertwine {

namespace {

constexpr double kPi = 3.14159265358979323846;
const std::complex<double> kI(0.0, 1.0);

void require_dim(const SchwartzFun& f, int m, const char* what) {
  if (f.dim != m) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

Eigen::MatrixXd block_diag_repeat(const Eigen::MatrixXd& block, int copies) {
  int d = static_cast<int>(block.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * copies, d * copies);
  for (int k = 0; k < copies; ++k) {
    out.block(d * k, d * k, d, d) = block;
  }
  return out;
}

}  // namespace

GaussAtom make_atom(std::complex<double> coeff, const Eigen::MatrixXd& Q,
                    const Eigen::VectorXd& center,
                    const Eigen::VectorXd& freq) {
  int m = static_cast<int>(Q.rows());
  if (Q.cols() != m || center.size() != m || freq.size() != m) {
    throw std::invalid_argument("atom parameter dimensions disagree");
  }
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-14) {
    throw std::invalid_argument("atom quadratic form is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("atom quadratic form is not positive definite");
  }
  return {coeff, Q, center, freq};
}

SchwartzFun standard_fun(int m) {
  SchwartzFun f;
  f.dim = m;
  f.atoms.push_back({std::complex<double>(1.0, 0.0),
                     Eigen::MatrixXd::Identity(m, m), Eigen::VectorXd::Zero(m),
                     Eigen::VectorXd::Zero(m)});
  return f;
}

SchwartzFun from_atoms(int m, std::vector<GaussAtom> atoms) {
  for (const GaussAtom& a : atoms) {
    if (a.Q.rows() != m) {
      throw std::invalid_argument("atom dimension disagrees with the sum");
    }
  }
  return {m, std::move(atoms)};
}

SchwartzFun add(const SchwartzFun& f, const SchwartzFun& g) {
  require_dim(g, f.dim, "add");
  SchwartzFun out = f;
  out.atoms.insert(out.atoms.end(), g.atoms.begin(), g.atoms.end());
  return out;
}

SchwartzFun scale(std::complex<double> s, const SchwartzFun& f) {
  SchwartzFun out = f;
  for (GaussAtom& a : out.atoms) a.coeff *= s;
  return out;
}

SchwartzFun complex_conj(const SchwartzFun& f) {
  SchwartzFun out = f;
  for (GaussAtom& a : out.atoms) {
    a.coeff = std::conj(a.coeff);
    a.freq = -a.freq;
  }
  return out;
}

std::complex<double> eval(const SchwartzFun& f, const Eigen::VectorXd& x) {
  if (x.size() != f.dim) {
    throw std::invalid_argument("eval: dimension mismatch");
  }
  std::complex<double> total(0.0, 0.0);
  for (const GaussAtom& a : f.atoms) {
    Eigen::VectorXd u = x - a.center;
    double quad = u.dot(a.Q * u);
    double phase = 2.0 * kPi * a.freq.dot(x);
    total += a.coeff * std::exp(-kPi * quad) *
             std::exp(kI * phase);
  }
  return total;
}

SchwartzFun fourier(const SchwartzFun& f) {
  SchwartzFun out;
  out.dim = f.dim;
  out.atoms.reserve(f.atoms.size());
  for (const GaussAtom& a : f.atoms) {
    Eigen::LLT<Eigen::MatrixXd> llt(a.Q);
    Eigen::MatrixXd Qinv =
        llt.solve(Eigen::MatrixXd::Identity(f.dim, f.dim));
    double det = a.Q.determinant();
    std::complex<double> coeff =
        a.coeff / std::sqrt(det) *
        std::exp(kI * (2.0 * kPi * a.freq.dot(a.center)));
    // Keep the inverse exactly symmetric against rounding.
    Qinv = 0.5 * (Qinv + Qinv.transpose()).eval();
    out.atoms.push_back({coeff, Qinv, a.freq, -a.center});
  }
  return out;
}

SchwartzFun pullback_affine(const SchwartzFun& f, const Eigen::MatrixXd& A,
                            const Eigen::VectorXd& b) {
  if (A.rows() != f.dim || A.cols() != f.dim || b.size() != f.dim) {
    throw std::invalid_argument("pullback_affine: dimension mismatch");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    throw std::domain_error("pullback_affine: singular matrix");
  }
  SchwartzFun out;
  out.dim = f.dim;
  out.atoms.reserve(f.atoms.size());
  for (const GaussAtom& a : f.atoms) {
    Eigen::MatrixXd Q = A.transpose() * a.Q * A;
    Q = 0.5 * (Q + Q.transpose()).eval();
    Eigen::VectorXd center = lu.solve(a.center - b);
    Eigen::VectorXd freq = A.transpose() * a.freq;
    std::complex<double> coeff =
        a.coeff * std::exp(kI * (2.0 * kPi * a.freq.dot(b)));
    out.atoms.push_back({coeff, Q, center, freq});
  }
  return out;
}

SchwartzFun pullback_linear(const SchwartzFun& f, const Eigen::MatrixXd& A) {
  return pullback_affine(f, A, Eigen::VectorXd::Zero(f.dim));
}

SchwartzFun dilate(const SchwartzFun& f, const Scalar& alpha) {
  int d = field_dim(alpha.field);
  if (f.dim % d != 0) {
    throw std::invalid_argument("dilate: dimension is not a scalar multiple");
  }
  return pullback_linear(
      f, block_diag_repeat(rmul_matrix(alpha), f.dim / d));
}

SchwartzFun dilate_left(const SchwartzFun& f, const Scalar& alpha) {
  int d = field_dim(alpha.field);
  if (f.dim % d != 0) {
    throw std::invalid_argument("dilate: dimension is not a scalar multiple");
  }
  return pullback_linear(
      f, block_diag_repeat(lmul_matrix(alpha), f.dim / d));
}

SchwartzFun group_pullback(const GroupElement& g, const SchwartzFun& f) {
  require_dim(f, 2 * field_dim(g.field), "group_pullback");
  return pullback_linear(f, real_embed(inverse(g).m, g.field));
}

SchwartzFun conj_arg(Field fld, const SchwartzFun& f) {
  int d = field_dim(fld);
  if (f.dim % d != 0) {
    throw std::invalid_argument("conj_arg: dimension is not a scalar multiple");
  }
  Eigen::MatrixXd block = Eigen::MatrixXd::Identity(d, d);
  for (int k = 1; k < d; ++k) block(k, k) = -1.0;
  return pullback_linear(f, block_diag_repeat(block, f.dim / d));
}

std::complex<double> integral(const SchwartzFun& f) {
  std::complex<double> total(0.0, 0.0);
  for (const GaussAtom& a : f.atoms) {
    Eigen::LLT<Eigen::MatrixXd> llt(a.Q);
    Eigen::VectorXd Qinv_freq = llt.solve(a.freq);
    double det = a.Q.determinant();
    total += a.coeff / std::sqrt(det) *
             std::exp(-kPi * a.freq.dot(Qinv_freq)) *
             std::exp(kI * (2.0 * kPi * a.freq.dot(a.center)));
  }
  return total;
}

std::complex<double> l2_pair(const SchwartzFun& f, const SchwartzFun& g) {
  require_dim(g, f.dim, "l2_pair");
  std::complex<double> total(0.0, 0.0);
  for (const GaussAtom& af : f.atoms) {
    for (const GaussAtom& ag : g.atoms) {
      Eigen::MatrixXd Qs = af.Q + ag.Q;
      Eigen::LLT<Eigen::MatrixXd> llt(Qs);
      Eigen::VectorXd x0 = llt.solve(af.Q * af.center + ag.Q * ag.center);
      Eigen::VectorXd eta = ag.freq - af.freq;
      Eigen::VectorXd Qsinv_eta = llt.solve(eta);
      double quad = af.center.dot(af.Q * af.center) +
                    ag.center.dot(ag.Q * ag.center) - x0.dot(Qs * x0);
      double det = Qs.determinant();
      total += std::conj(af.coeff) * ag.coeff * std::exp(-kPi * quad) /
               std::sqrt(det) * std::exp(-kPi * eta.dot(Qsinv_eta)) *
               std::exp(kI * (2.0 * kPi * eta.dot(x0)));
    }
  }
  return total;
}

std::complex<double> line_integral(const SchwartzFun& f, const Vector2& x,
                                   const Vector2& v) {
  Field fld = x.x1.field;
  int d = field_dim(fld);
  require_dim(f, 2 * d, "line_integral");
  if (norm2(x) == 0.0) {
    throw std::domain_error("line_integral along the zero direction");
  }
  // t -> t.x is the stacked right-multiplication block matrix.
  Eigen::MatrixXd B(2 * d, d);
  B.topRows(d) = rmul_matrix(x.x1);
  B.bottomRows(d) = rmul_matrix(x.x2);
  Eigen::VectorXd vv = vec_coords(v);

  std::complex<double> total(0.0, 0.0);
  for (const GaussAtom& a : f.atoms) {
    Eigen::VectorXd r = vv - a.center;
    Eigen::MatrixXd M = B.transpose() * a.Q * B;
    M = 0.5 * (M + M.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    Eigen::VectorXd u = B.transpose() * (a.Q * r);
    Eigen::VectorXd eta = B.transpose() * a.freq;
    Eigen::VectorXd Minv_u = llt.solve(u);
    Eigen::VectorXd Minv_eta = llt.solve(eta);
    double det = M.determinant();
    total += a.coeff * std::exp(kI * (2.0 * kPi * a.freq.dot(vv))) *
             std::exp(-kPi * r.dot(a.Q * r)) / std::sqrt(det) *
             std::exp(kPi * u.dot(Minv_u)) *
             std::exp(-kPi * eta.dot(Minv_eta)) *
             std::exp(-kI * (2.0 * kPi * eta.dot(Minv_u)));
  }
  return total;
}

SchwartzFun zero_mean(const SchwartzFun& f) {
  std::complex<double> mass = integral(f);
  SchwartzFun out = f;
  if (mass != std::complex<double>(0.0, 0.0)) {
    SchwartzFun ref = standard_fun(f.dim);
    out = add(out, scale(-mass, ref));
  }
  return out;
}

double chi_cutoff(int n, double r) {
  if (n < 1) throw std::invalid_argument("chi_cutoff needs n >= 1");
  auto smoothstep = [](double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::min(1.0, std::max(0.0, t * t * t * (t * (6.0 * t - 15.0) + 10.0)));
  };
  double lo_start = 1.0 / (2.0 * n);
  double lo_end = 1.0 / n;
  double hi_start = static_cast<double>(n);
  double hi_end = 2.0 * static_cast<double>(n);
  if (r <= lo_start || r >= hi_end) return 0.0;
  if (r < lo_end) return smoothstep((r - lo_start) / (lo_end - lo_start));
  if (r <= hi_start) return 1.0;
  return 1.0 - smoothstep((r - hi_start) / (hi_end - hi_start));
}

std::string to_json_string(const SchwartzFun& f) {
  nlohmann::json j;
  j["dim"] = f.dim;
  j["atoms"] = nlohmann::json::array();
  for (const GaussAtom& a : f.atoms) {
    nlohmann::json ja;
    ja["coeff"] = {a.coeff.real(), a.coeff.imag()};
    std::vector<double> q(a.Q.data(), a.Q.data() + a.Q.size());
    // Eigen stores column-major; emit row-major as documented.
    std::vector<double> row_major;
    row_major.reserve(q.size());
    for (int r = 0; r < f.dim; ++r) {
      for (int c = 0; c < f.dim; ++c) row_major.push_back(a.Q(r, c));
    }
    ja["Q"] = row_major;
    ja["center"] = std::vector<double>(a.center.data(),
                                       a.center.data() + a.center.size());
    ja["freq"] =
        std::vector<double>(a.freq.data(), a.freq.data() + a.freq.size());
    j["atoms"].push_back(ja);
  }
  return j.dump(2);
}

SchwartzFun fun_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int m = j.at("dim").get<int>();
  std::vector<GaussAtom> atoms;
  for (const auto& ja : j.at("atoms")) {
    std::vector<double> cv = ja.at("coeff").get<std::vector<double>>();
    if (cv.size() != 2) {
      throw std::invalid_argument("coeff must be [re, im]");
    }
    std::vector<double> q = ja.at("Q").get<std::vector<double>>();
    std::vector<double> c = ja.at("center").get<std::vector<double>>();
    std::vector<double> xi = ja.at("freq").get<std::vector<double>>();
    if (static_cast<int>(q.size()) != m * m ||
        static_cast<int>(c.size()) != m || static_cast<int>(xi.size()) != m) {
      throw std::invalid_argument("atom arrays have the wrong length");
    }
    Eigen::MatrixXd Q(m, m);
    for (int r = 0; r < m; ++r) {
      for (int col = 0; col < m; ++col) Q(r, col) = q[r * m + col];
    }
    Eigen::VectorXd center = Eigen::Map<Eigen::VectorXd>(c.data(), m);
    Eigen::VectorXd freq = Eigen::Map<Eigen::VectorXd>(xi.data(), m);
    atoms.push_back(make_atom({cv[0], cv[1]}, Q, center, freq));
  }
  return from_atoms(m, std::move(atoms));
}

}  // namespace intertwine
