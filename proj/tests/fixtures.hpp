#ifndef DIGRAPHON_TESTS_FIXTURES_HPP
#define DIGRAPHON_TESTS_FIXTURES_HPP

#include <vector>

#include "digraphon/core.hpp"
#include "digraphon/rng.hpp"

namespace fixtures {

using digraphon::Rng;
using digraphon::StepDigraphon;

inline StepDigraphon constant(double c) {
  return StepDigraphon(Eigen::VectorXd::Ones(1),
                       Eigen::MatrixXd::Constant(1, 1, c));
}

/// Directed k-cycle blow-up on k equal blocks.
inline StepDigraphon cycle(int k) {
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(k, 1.0 / k);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) v(i, (i + 1) % k) = 1.0;
  return StepDigraphon(mu, v);
}

inline StepDigraphon c3() { return cycle(3); }

/// Strict upper-triangular ones on 3 equal blocks (nilpotent).
inline StepDigraphon ut() {
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(3, 1.0 / 3);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 3);
  v(0, 1) = v(0, 2) = v(1, 2) = 1.0;
  return StepDigraphon(mu, v);
}

/// 4-cycle plus the chord 2 -> 1, which closes a 2-cycle through blocks 1
/// and 2: period gcd(4, 2) = 2, classes {0,2} / {1,3}.
inline StepDigraphon chorded4() {
  StepDigraphon base = cycle(4);
  Eigen::MatrixXd v = base.values();
  v(2, 1) = 1.0;
  return StepDigraphon(base.measures(), v);
}

/// Two components (a 2-cycle and a self-loop) joined only through the
/// fragmented block 2: edges 0<->1, 0->2, 2->3, 3->3.
inline StepDigraphon fig2() {
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(4, 0.25);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
  v(0, 1) = v(1, 0) = 1.0;
  v(0, 2) = v(2, 3) = v(3, 3) = 1.0;
  return StepDigraphon(mu, v);
}

inline Eigen::VectorXd random_measures(Rng& rng, int t) {
  Eigen::VectorXd mu(t);
  for (int i = 0; i < t; ++i) mu[i] = 0.5 + rng.next_double();
  return mu / mu.sum();
}

/// Uniform values thinned by Bernoulli(support_prob) support.
inline StepDigraphon random_digraphon(Rng& rng, int t, double support_prob) {
  Eigen::VectorXd mu = random_measures(rng, t);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(t, t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (rng.next_bool(support_prob)) v(i, j) = rng.next_double();
  return StepDigraphon(mu, v);
}

/// Random digraphon guaranteed strongly connected: a full directed cycle
/// plus Bernoulli extras.
inline StepDigraphon random_strongly_connected(Rng& rng, int t,
                                               double extra_prob) {
  Eigen::VectorXd mu = random_measures(rng, t);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(t, t);
  for (int i = 0; i < t; ++i) v(i, (i + 1) % t) = 0.2 + 0.8 * rng.next_double();
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (v(i, j) == 0 && rng.next_bool(extra_prob))
        v(i, j) = rng.next_double();
  return StepDigraphon(mu, v);
}

/// Random kernel on equal blocks with entries in [-1, 1].
inline digraphon::Kernel random_kernel(Rng& rng, int t) {
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(t, 1.0 / t);
  Eigen::MatrixXd v(t, t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) v(i, j) = 2 * rng.next_double() - 1;
  return digraphon::Kernel(mu, v);
}

}  // namespace fixtures

#endif  // DIGRAPHON_TESTS_FIXTURES_HPP
