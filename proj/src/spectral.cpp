#include "digraphon/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "digraphon/densities.hpp"

namespace digraphon {

namespace {

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "eigensolver did not converge");
  std::vector<std::complex<double>> vals(m.rows());
  for (int i = 0; i < m.rows(); ++i) vals[i] = solver.eigenvalues()[i];
  std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    return std::arg(a) < std::arg(b);
  });
  return vals;
}

// Ensures ground(g) forms a single strong component; returns its block set.
std::vector<int> ground_component(const StepDigraphon& g) {
  std::vector<int> grd = ground(g);
  Decomposition dec = decompose(g);
  if (dec.components.size() == 1 && dec.components[0] == grd)
    return grd;
  throw Error(ErrorCode::NotStronglyConnected,
              "ground set is not a single strong component");
}

// Power iteration for the Perron eigenvector of a nonnegative matrix,
// shifted by +I so the dominant eigenvalue rho + 1 is strictly dominant
// regardless of the period. Falls back to the dense eigensolver.
Eigen::VectorXd perron_vector(const Eigen::MatrixXd& a, double rho) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd shifted = a + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXd next = shifted * v;
    double norm = next.norm();
    if (norm == 0) break;
    next /= norm;
    if ((next - v).lpNorm<Eigen::Infinity>() < 1e-15) {
      v = next;
      break;
    }
    v = next;
  }
  double residual = (a * v - rho * v).lpNorm<Eigen::Infinity>();
  if (residual > 1e-10 * std::max(1.0, rho)) {
    // Defective or slow-converging case: take the eigenvector of the
    // largest real eigenvalue directly.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorCode::ConvergenceFailure, "eigensolver did not converge");
    int best = 0;
    double best_val = -1;
    for (int i = 0; i < n; ++i) {
      const auto ev = solver.eigenvalues()[i];
      if (std::abs(ev.imag()) < 1e-9 && ev.real() > best_val) {
        best_val = ev.real();
        best = i;
      }
    }
    v = solver.eigenvectors().col(best).real();
    v.normalize();
  }
  if (v.sum() < 0) v = -v;
  double worst_negative = -v.minCoeff();
  if (worst_negative > 1e-9)
    throw Error(ErrorCode::ConvergenceFailure,
                "Perron vector has a negative entry of magnitude " +
                    std::to_string(worst_negative));
  return v.cwiseMax(0.0);
}

}  // namespace

Eigen::MatrixXd induced_matrix(const StepDigraphon& g) {
  return g.measures().asDiagonal() * g.values();
}

SpectrumResult spectrum(const StepDigraphon& g, double tol_rel) {
  const int t = g.block_count();
  if (t > 512)
    throw Error(ErrorCode::TooLarge, "spectrum limited to 512 blocks");
  SpectrumResult result;
  result.tol_rel = tol_rel;

  // A cycle-free support makes the induced matrix nilpotent; its spectrum is
  // exactly {0}, which the dense eigensolver only recovers up to eps^(1/t).
  {
    SupportDigraph s = support_digraph(g);
    std::vector<int> outdeg(t, 0);
    std::vector<int> removable;
    for (int u = 0; u < t; ++u) {
      for (int w = 0; w < t; ++w) outdeg[u] += s.edge(u, w) ? 1 : 0;
      if (outdeg[u] == 0) removable.push_back(u);
    }
    int removed = 0;
    while (!removable.empty()) {
      int w = removable.back();
      removable.pop_back();
      ++removed;
      for (int u = 0; u < t; ++u)
        if (s.edge(u, w) && --outdeg[u] == 0) removable.push_back(u);
    }
    if (removed == t) {
      result.eigenvalues.push_back({std::complex<double>(0, 0), t});
      return result;
    }
  }

  std::vector<std::complex<double>> vals = sorted_eigenvalues(induced_matrix(g));
  result.rho = vals.empty() ? 0 : std::abs(vals.front());
  const double radius = 1e-7 * std::max(1.0, result.rho);
  for (const auto& v : vals) {
    if (!result.eigenvalues.empty() &&
        std::abs(v - result.eigenvalues.back().value) <= radius) {
      // Cluster: running centroid keeps the representative stable.
      Eigenvalue& e = result.eigenvalues.back();
      e.value = (e.value * double(e.multiplicity) + v) /
                double(e.multiplicity + 1);
      ++e.multiplicity;
    } else {
      result.eigenvalues.push_back({v, 1});
    }
  }
  for (const auto& e : result.eigenvalues)
    if (std::abs(e.value) >= result.rho * (1 - tol_rel) && result.rho > 0)
      result.peripheral.push_back(e);
  return result;
}

PerronPair perron_pair(const StepDigraphon& g) {
  std::vector<int> grd = ground_component(g);
  const int t = g.block_count();
  const int n = static_cast<int>(grd.size());

  SpectrumResult spec = spectrum(g);
  if (spec.rho <= 0)
    throw Error(ErrorCode::ZeroSpectralRadius, "spectral radius is zero");

  Eigen::MatrixXd left_op(n, n), right_op(n, n);  // M^T and V diag(mu) on ground
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      left_op(a, b) = g.values()(grd[b], grd[a]) * g.measures()[grd[b]];
      right_op(a, b) = g.values()(grd[a], grd[b]) * g.measures()[grd[b]];
    }
  Eigen::VectorXd vl = perron_vector(left_op, spec.rho);
  Eigen::VectorXd vr = perron_vector(right_op, spec.rho);

  PerronPair pair;
  pair.rho = spec.rho;
  pair.v_left = Eigen::VectorXd::Zero(t);
  pair.v_right = Eigen::VectorXd::Zero(t);
  for (int a = 0; a < n; ++a) {
    pair.v_left[grd[a]] = vl[a];
    pair.v_right[grd[a]] = vr[a];
  }
  double inner = (g.measures().array() * pair.v_left.array() *
                  pair.v_right.array())
                     .sum();
  if (inner <= 0)
    throw Error(ErrorCode::ConvergenceFailure,
                "Perron pair has nonpositive mu-inner product");
  double scale = 1.0 / std::sqrt(inner);
  pair.v_left *= scale;
  pair.v_right *= scale;
  return pair;
}

int peripheral_multiplicity(const StepDigraphon& g, double tol_rel) {
  ground_component(g);
  SpectrumResult spec = spectrum(g, tol_rel);
  if (spec.rho <= 0)
    throw Error(ErrorCode::ZeroSpectralRadius, "spectral radius is zero");
  int count = 0;
  for (const auto& e : spec.peripheral) count += e.multiplicity;
  return count;
}

std::vector<double> gelfand_estimate(const StepDigraphon& g, int kmax) {
  if (kmax < 2)
    throw Error(ErrorCode::ShapeMismatch, "gelfand_estimate needs kmax >= 2");
  const Eigen::VectorXd& mu = g.measures();
  Eigen::MatrixXd step = mu.asDiagonal() * g.values();
  Eigen::MatrixXd b = g.values();  // values of g^k up to the running scale
  Eigen::MatrixXd weight = mu * mu.transpose();
  double log_scale = 0;
  std::vector<double> series;
  series.reserve(kmax);
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      b = b * step;
      double peak = b.cwiseAbs().maxCoeff();
      if (peak > 0) {
        b /= peak;
        log_scale += std::log(peak);
      } else {
        log_scale = 0;
      }
    }
    double l2 = std::sqrt((weight.array() * b.array().square()).sum());
    series.push_back(l2 == 0 ? 0.0
                             : std::exp((std::log(l2) + log_scale) / k));
  }
  return series;
}

double cycle_spectrum_check(const StepDigraphon& g, int kmax) {
  if (kmax > 20)
    throw Error(ErrorCode::TooLarge, "cycle_spectrum_check limited to k <= 20");
  SpectrumResult spec = spectrum(g);
  double worst = 0;
  for (int k = 3; k <= kmax; ++k) {
    std::complex<double> sum = 0;
    for (const auto& e : spec.eigenvalues)
      sum += double(e.multiplicity) * std::pow(e.value, k);
    if (std::abs(sum.imag()) > 1e-10)
      throw Error(ErrorCode::ConvergenceFailure,
                  "eigenvalue power sum has imaginary residue " +
                      std::to_string(sum.imag()));
    worst = std::max(worst, std::abs(cycle_density(g, k) - sum.real()));
  }
  return worst;
}

ComponentRadiusReport component_radius_check(const StepDigraphon& g) {
  ComponentRadiusReport report;
  report.rho = spectrum(g).rho;
  Decomposition dec = decompose(g);
  double max_radius = 0;
  report.monotone = true;
  for (const auto& blocks : dec.components) {
    double r = spectrum(restricted(g, blocks, RestrictMode::ZeroOut)).rho;
    report.component_radii.push_back(r);
    max_radius = std::max(max_radius, r);
    if (r > report.rho + 1e-10) report.monotone = false;
  }
  report.max_identity = std::abs(report.rho - max_radius) <= 1e-9;
  report.zero_iff_empty =
      dec.components.empty() ? report.rho <= 1e-12 : report.rho > 1e-12;
  return report;
}

PoweringPeriodicReport powering_periodic_check(const StepDigraphon& g) {
  const int t = g.block_count();
  Decomposition dec = decompose(g);
  std::vector<int> all(t);
  std::iota(all.begin(), all.end(), 0);
  if (dec.components.size() != 1 || dec.components[0] != all)
    throw Error(ErrorCode::NotStronglyConnected,
                "powering check needs a strongly connected digraphon");

  PeriodicStructure ps = period_and_classes(g, all);
  const int d = ps.period;
  PoweringPeriodicReport report;
  report.period = d;

  StepDigraphon gd = power(g, d);
  Decomposition dec_d = decompose(gd);
  report.fragmented_empty = dec_d.fragmented.empty();
  report.classes_are_components = dec_d.components.size() == ps.classes.size();
  if (report.classes_are_components)
    for (const auto& cls : ps.classes) {
      bool found = false;
      for (const auto& comp : dec_d.components) found = found || comp == cls;
      report.classes_are_components = report.classes_are_components && found;
    }
  if (!report.classes_are_components || !report.fragmented_empty) return report;

  PerronPair pp = perron_pair(g);
  double rho_d = std::pow(pp.rho, d);
  report.restrictions_aperiodic = true;
  for (const auto& cls : ps.classes) {
    double mass = 0;
    for (int b : cls) mass += g.measures()[b];
    StepDigraphon r = restricted(gd, cls, RestrictMode::Renormalize);
    std::vector<int> r_all(r.block_count());
    std::iota(r_all.begin(), r_all.end(), 0);
    PeriodicStructure rp = period_and_classes(r, r_all);
    if (rp.period != 1) report.restrictions_aperiodic = false;
    PerronPair rpp = perron_pair(r);
    report.max_radius_error = std::max(
        report.max_radius_error, std::abs(rpp.rho - rho_d / mass));

    // The restriction of the full pair, rescaled by sqrt(D mu(P_i)), is a
    // Perron pair of the restriction. Compare products vR(i) vL(j) so the
    // comparison is independent of the left/right scale split.
    double scale = d * mass;  // squared rescale applied to the product
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = 0; b < cls.size(); ++b) {
        double expected = scale * pp.v_right[cls[a]] * pp.v_left[cls[b]];
        double got = rpp.v_right[a] * rpp.v_left[b];
        report.max_perron_error =
            std::max(report.max_perron_error, std::abs(expected - got));
      }
  }
  return report;
}

AsymptoticsReport asymptotic_analysis(const StepDigraphon& g, int lmax) {
  const int t = g.block_count();
  Decomposition dec = decompose(g);
  std::vector<int> all(t);
  std::iota(all.begin(), all.end(), 0);
  if (dec.components.size() != 1 || dec.components[0] != all)
    throw Error(ErrorCode::NotStronglyConnected,
                "asymptotic analysis needs a strongly connected digraphon");

  AsymptoticsReport report;
  PerronPair pp = perron_pair(g);  // throws ZeroSpectralRadius when rho = 0
  report.rho = pp.rho;
  PeriodicStructure ps = period_and_classes(g, all);
  report.period = ps.period;
  report.classes = ps.classes;
  if (lmax < 10 * ps.period)
    throw Error(ErrorCode::ShapeMismatch,
                "lmax must be at least 10 D = " + std::to_string(10 * ps.period));

  SpectrumResult spec = spectrum(g);
  for (const auto& e : spec.eigenvalues)
    if (std::abs(e.value) < spec.rho * (1 - spec.tol_rel)) {
      report.subdominant = std::abs(e.value);
      break;
    }

  std::vector<int> cls(t, 0);
  for (int c = 0; c < ps.period; ++c)
    for (int b : ps.classes[c]) cls[b] = c;

  Eigen::MatrixXd step = g.measures().asDiagonal() * g.values();
  Eigen::MatrixXd pl = g.values();  // values of g^l
  double rho_l = report.rho;
  report.residuals.reserve(lmax);
  for (int l = 1; l <= lmax; ++l) {
    if (l > 1) {
      pl = pl * step;
      rho_l *= report.rho;
    }
    double e_l = 0;
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) {
        bool on_class = (cls[j] - cls[i] - l) % ps.period == 0;
        if (on_class) {
          // Mass concentrates on the 1/D fraction of on-class pairs, so the
          // on-class limit carries a factor D.
          e_l = std::max(
              e_l, std::abs(pl(i, j) -
                            ps.period * rho_l * pp.v_right[i] * pp.v_left[j]));
        } else if (pl(i, j) > 1e-14) {
          report.offclass_zero = false;
        }
      }
    // Below the double-precision floor the residual is numerically zero.
    report.residuals.push_back(e_l < 1e-13 ? 0.0 : e_l);
  }

  // Log-linear fit over the back half of the range, skipping exact zeros.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int l = lmax / 2; l <= lmax; ++l) {
    double e_l = report.residuals[l - 1];
    if (e_l <= 0) continue;
    double x = l, y = std::log(e_l);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2 && count * sxx - sx * sx > 0)
    report.fitted_rate = std::exp((count * sxy - sx * sy) /
                                  (count * sxx - sx * sx));
  return report;
}

}  // namespace digraphon
