#ifndef DIGRAPHON_SPECTRAL_HPP
#define DIGRAPHON_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "digraphon/core.hpp"
#include "digraphon/structure.hpp"

namespace digraphon {

/// M = diag(mu) V. The nonzero spectrum of the induced integral operator
/// equals the nonzero spectrum of M; left eigenfunctions are eigenvectors of
/// M^T, right eigenfunctions eigenvectors of V diag(mu).
Eigen::MatrixXd induced_matrix(const StepDigraphon& g);

struct Eigenvalue {
  std::complex<double> value;
  int multiplicity = 1;
};

struct SpectrumResult {
  std::vector<Eigenvalue> eigenvalues;  // |value| descending, then angle
  double rho = 0;
  std::vector<Eigenvalue> peripheral;  // |value| >= rho (1 - tol_rel)
  double tol_rel = 1e-9;
};

SpectrumResult spectrum(const StepDigraphon& g, double tol_rel = 1e-9);

/// Nonnegative left/right eigenfunctions at rho, normalized
/// sum_i mu_i vL_i vR_i = 1; zero off ground(g).
struct PerronPair {
  double rho = 0;
  Eigen::VectorXd v_left;
  Eigen::VectorXd v_right;
};

PerronPair perron_pair(const StepDigraphon& g);

/// Number of eigenvalues with |lambda| >= rho (1 - tol_rel).
int peripheral_multiplicity(const StepDigraphon& g, double tol_rel = 1e-9);

/// Series ||g^k||_2^{1/k} for k = 1..kmax, computed with per-step
/// renormalization so k ~ hundreds stays finite; exactly 0 once a power
/// vanishes.
std::vector<double> gelfand_estimate(const StepDigraphon& g, int kmax);

/// Max over 3 <= k <= kmax of |t(C_k, g) - sum m(lambda) lambda^k|; throws if
/// the imaginary parts of the eigenvalue power sums fail to cancel to 1e-10.
double cycle_spectrum_check(const StepDigraphon& g, int kmax);

struct ComponentRadiusReport {
  double rho = 0;
  std::vector<double> component_radii;
  bool max_identity = false;     // rho == max component radius (0 when none)
  bool zero_iff_empty = false;   // rho == 0 exactly when no components
  bool monotone = false;         // rho(restriction) <= rho for each component
  bool holds() const { return max_identity && zero_iff_empty && monotone; }
};

ComponentRadiusReport component_radius_check(const StepDigraphon& g);

struct PoweringPeriodicReport {
  int period = 1;
  bool classes_are_components = false;
  bool fragmented_empty = false;
  bool restrictions_aperiodic = false;
  double max_radius_error = 0;   // vs rho^D / mu(P_i)
  double max_perron_error = 0;   // rescaled Perron pair vs recomputed one
  bool holds() const {
    return classes_are_components && fragmented_empty &&
           restrictions_aperiodic && max_radius_error <= 1e-8 &&
           max_perron_error <= 1e-8;
  }
};

/// Verifies the structure of g^D for strongly connected g of period D.
PoweringPeriodicReport powering_periodic_check(const StepDigraphon& g);

struct AsymptoticsReport {
  double rho = 0;
  int period = 1;
  std::vector<std::vector<int>> classes;
  std::vector<double> residuals;  // e_l for l = 1..lmax
  double fitted_rate = 0;         // exp of the log-residual slope
  double subdominant = 0;         // largest non-peripheral |lambda|
  bool offclass_zero = true;      // g^l <= 1e-14 on off-class pairs
};

/// On-class residuals e_l = max |g^l(i,j) - rho^l vR(i) vL(j)| and the fitted
/// decay rate over l in [lmax/2, lmax]. Residuals below 1e-13 report as 0.
AsymptoticsReport asymptotic_analysis(const StepDigraphon& g, int lmax);

}  // namespace digraphon

#endif  // DIGRAPHON_SPECTRAL_HPP
