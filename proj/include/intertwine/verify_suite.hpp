#pragma once

#include <cstdint>
#include <vector>

#include "intertwine/config.hpp"

// The verification battery behind the command-line tool: each function runs
// one named check against the library's closed forms and quadratures and
// reports the worst residual seen, the tolerance it was held to, and how the
// comparison went.  Checks draw their random samples from a generator seeded
// per check and per field (see check_seed), so any single check reproduces
// byte-identically from the run seed without replaying the checks before it.

namespace intertwine {

// Fixed registry slots; the seed derivation depends on these values, so new
// checks append rather than reorder.
enum class CheckId {
  Isometry = 0,
  Equivariance = 1,
  Dilation = 2,
  Normalization = 3,
  LineIntegral = 4,
  PairingBound = 5,
  Truncation = 6,
  ResidualTransforms = 7,
  Classification = 8,
  Partition = 9,
};

// seed XOR ((8*id + field_slot + 1) * 0x9E3779B97F4A7C15), with field_slot
// 0, 1, 2 for the real, complex, quaternion scalars.
std::uint64_t check_seed(std::uint64_t base, CheckId id, Field f);

// <fw f, fw f>(l) against the dilated pairing of f at l^{-1}, closed form on
// both sides; cfg.trials random two-atom functions, each paired against a
// 25-point grid of l with radii sweeping [1/8, 8].
CheckResult check_isometry(Field f, const RunConfig& cfg);

// fw(g.f) = g.(fw f) for the generator set and five random three-letter
// words, compared pointwise at 50 sample points.
CheckResult check_equivariance(Field f, const RunConfig& cfg);

// The two dilation laws, atom-exact: the Fourier transform of a right
// dilation, and the dilation law of fw (left dilation inside the transform).
// max(50, cfg.trials) random cases per law.
CheckResult check_dilation(Field f, const RunConfig& cfg);

// iw(fw f) against the gamma-convolution on zero-mean inputs.  Real and
// complex scalars: 10 samples with 0.5 <= |x| <= 2.  Quaternions: runs only
// under slow=true (3 samples from the real-proportional family, looser
// tolerance); otherwise reports status "skipped-slow".
CheckResult check_normalization(Field f, const RunConfig& cfg);

// iw of the standard atom against its radial closed form and against the
// tensor-rule quadrature at 10 points.  The quadrature spec is calibrated
// per field; quaternionic samples stay in the commuting family where the
// radial form is exact.
CheckResult check_line_integral(Field f, const RunConfig& cfg);

// |<h,h>(l)| <= |h|_inf |h|_1 min(|l|^d, |l|^-d) on max(100, cfg.trials)
// seeded (h, l) pairs; the reported residual is the worst relative overshoot
// of the left side.
CheckResult check_pairing_bound(Field f, const RunConfig& cfg);

// Decay of the truncation tail: log-log endpoint slope of the L^1 pairing
// norm of f - f_n over n in {2,...,64} must fall below the (negative) slope
// tolerance.  Off the real scalars the inner sphere rule makes this
// expensive at default quadrature settings, so those fields run only under
// slow=true and otherwise report "skipped-slow".
CheckResult check_truncation(Field f, const RunConfig& cfg);

// Shell transforms of the boundary characters (real and complex scalars
// only): odd sectors vanish, the fixed character carries the 2 ln R point
// mass, log-averaged cutoffs recover the principal value 1/(i pi t), and the
// quadrature path agrees with the closed forms.  Four results, in that
// order.
std::vector<CheckResult> check_residual_transforms(Field f,
                                                   const RunConfig& cfg);

// The certified verdicts of the cutoff detector (real and complex scalars
// only): sign character at t = 0 reducible, trivial character at t = 0
// irreducible.  The residual is the number of mismatched verdicts.
CheckResult check_classification(Field f, const RunConfig& cfg);

// The coordinate-picture partition on smooth tensors (real and complex
// scalars only): zero-part + infinity-part + residue reassemble the full
// truncated integral under an independent quadrature rule, and (real
// scalars) the residue matches the shell convolution at five base points.
std::vector<CheckResult> check_partition(Field f, const RunConfig& cfg);

// The standard battery for one field, in registry order, with the checks
// that do not apply to the field left out (truncation runs only on the real
// scalars by default; the residual checks need commutative scalars).
std::vector<CheckResult> run_suite(Field f, const RunConfig& cfg);

}  // namespace intertwine
