// Compares the parallel box quadrature against its single-thread reference:
// wall time for both, speedup, and a bitwise agreement check on the results.
// The integrand is a Gaussian-times-oscillation profile in m dimensions,
// close in shape and cost to what the verification checks integrate.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cmath>

#include <Eigen/Dense>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "intertwine/quad.hpp"

using namespace intertwine;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::complex<double> probe(const Eigen::VectorXd& x) {
  double q = x.squaredNorm();
  double phase = 0.7 * x.sum();
  return std::exp(-0.9 * q) * std::complex<double>(std::cos(phase),
                                                   std::sin(phase));
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  int mismatches = 0;
  for (int m : {1, 2, 4}) {
    QuadSpec spec;
    spec.nodes_per_axis = m == 4 ? 28 : (m == 2 ? 120 : 4000);

    auto t0 = clock_type::now();
    std::complex<double> par = integrate_rm(probe, m, spec);
    double t_par = seconds_since(t0);

    t0 = clock_type::now();
    std::complex<double> ser = integrate_rm_serial(probe, m, spec);
    double t_ser = seconds_since(t0);

    bool equal = par.real() == ser.real() && par.imag() == ser.imag();
    if (!equal) ++mismatches;
    std::printf(
        "m=%d nodes=%d  parallel %.3fs  serial %.3fs  speedup %.2fx  %s\n", m,
        spec.nodes_per_axis, t_par, t_ser, t_par > 0 ? t_ser / t_par : 0.0,
        equal ? "bitwise equal" : "MISMATCH");
    if (!equal) {
      std::printf("  parallel = (%.17g, %.17g)\n  serial   = (%.17g, %.17g)\n",
                  par.real(), par.imag(), ser.real(), ser.imag());
    }
  }
  return mismatches == 0 ? 0 : 1;
}
