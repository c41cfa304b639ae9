#pragma once

#include <vector>

#include "intertwine/atoms.hpp"
#include "intertwine/module_ops.hpp"
#include "intertwine/rng.hpp"
#include "intertwine/scalars.hpp"

// Seeded random draws shared by the verification suite and the CLI.  Every
// draw consumes the generator in a fixed order, so a seed pins the whole
// sample set across runs and platforms.

namespace intertwine {

// Symmetric positive definite m x m matrix with eigenvalues in [0.4, 1.6]
// (a random rotation of a random diagonal): well-conditioned quadratic
// forms that keep every closed form stable.
Eigen::MatrixXd random_spd(int m, Rng& rng);

// Componentwise uniform in [-scale, scale].
Eigen::VectorXd random_vec(int m, Rng& rng, double scale = 1.0);

// Sum of n_atoms Gaussian atoms with random forms, centers, and
// frequencies; scale controls the center/frequency spread.
SchwartzFun random_fun(int m, int n_atoms, Rng& rng, double scale = 1.0);

// Invertible scalar with |l| log-uniform in [1/range, range] and a uniform
// direction on the unit sphere of the algebra.
LPoint random_lpoint(Field f, Rng& rng, double range = 8.0);

// Nonzero vector with |x| log-uniform in [lo, hi] and uniform direction.
Vector2 random_x(Field f, Rng& rng, double lo, double hi);

// Real multiple of a unit quaternion times a real pair: the quaternionic
// sample family on which the normalization identity is available.
Vector2 scaled_real_pair(Field f, Rng& rng, double lo, double hi);

// Standard generator set: the two unipotents at 1, the dilation by 2, the
// reflection, and an M-sample.  Over the quaternions the M-sample is taken
// in the real subgroup, where the transform's symmetry holds; the
// obstruction for quaternion-entried M-samples is exercised separately.
std::vector<GroupElement> generator_set(Field f);

// Product of len uniformly chosen generators.
GroupElement random_word(const std::vector<GroupElement>& gens, Rng& rng,
                         int len);

}  // namespace intertwine
