#include "oqs/coupling.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace oqs {

std::vector<double> cluster_values(const std::vector<double>& values, double tol) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> reps;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    double sum = sorted[i];
    // chain neighbours: successive gaps below tol belong to one cluster
    while (j < sorted.size() && sorted[j] - sorted[j - 1] <= tol) {
      sum += sorted[j];
      ++j;
    }
    reps.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return reps;
}

std::size_t cluster_index(const std::vector<double>& reps, double v, double tol) {
  auto it = std::lower_bound(reps.begin(), reps.end(), v);
  std::size_t best = reps.size();
  double best_d = std::numeric_limits<double>::infinity();
  if (it != reps.end()) {
    best = static_cast<std::size_t>(it - reps.begin());
    best_d = std::abs(*it - v);
  }
  if (it != reps.begin()) {
    const auto prev = it - 1;
    const double d = std::abs(*prev - v);
    if (d < best_d) {
      best = static_cast<std::size_t>(prev - reps.begin());
      best_d = d;
    }
  }
  if (best_d > tol) {
    throw std::runtime_error("cluster_index: value " + std::to_string(v) +
                             " is not within tolerance of any cluster");
  }
  return best;
}

void GammaSpectrum::validate() const {
  if (gamma.size() != static_cast<std::size_t>(grid.size())) {
    throw std::invalid_argument("GammaSpectrum: one matrix per grid frequency required");
  }
  const int nb = n_beta();
  for (int i = 0; i < grid.size(); ++i) {
    if (gamma[i].rows() != nb || gamma[i].cols() != nb) {
      throw std::invalid_argument("GammaSpectrum: inconsistent matrix dimensions");
    }
    require_hermitian(gamma[i], 1e-12, "gamma(" + std::to_string(grid.omega(i)) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> es(gamma[i], Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12) {
      std::ostringstream msg;
      msg << "gamma(omega=" << grid.omega(i) << ") is not positive semidefinite "
          << "(eigenvalue " << es.eigenvalues().minCoeff() << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

double CouplingTable::reconstruction_error(const GammaSpectrum& spectrum) const {
  double worst = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, (gamma_at(i) - spectrum.gamma[i]).norm());
  }
  return worst;
}

CouplingTable lorentzian_coupling(double a, double gamma_bar, const FrequencyGrid& grid) {
  if (!(a > 0.0) || !(gamma_bar > 0.0)) {
    throw std::invalid_argument("lorentzian_coupling: a and gamma_bar must be > 0");
  }
  CouplingTable table{grid, 1, {}};
  table.g.reserve(grid.size());
  const double dw = grid.spacing();
  for (int i = 0; i < grid.size(); ++i) {
    const double w = grid.omega(i);
    const double val =
        a * std::sqrt(2.0 * gamma_bar / (w * w + gamma_bar * gamma_bar) * dw /
                      (2.0 * std::numbers::pi));
    Matrix m(1, 1);
    m(0, 0) = val;
    table.g.push_back(std::move(m));
  }
  return table;
}

CouplingTable ohmic_thermal_coupling(double a, double gamma_bar, double beta,
                                     const FrequencyGrid& grid) {
  if (!(a > 0.0) || !(gamma_bar > 0.0)) {
    throw std::invalid_argument("ohmic_thermal_coupling: a and gamma_bar must be > 0");
  }
  if (!(beta > 0.0)) {  // +infinity passes this test
    throw std::invalid_argument("ohmic_thermal_coupling: beta must be > 0 or +infinity");
  }
  CouplingTable table{grid, 1, {}};
  table.g.reserve(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double w = grid.omega(i);
    double g2 = a * gamma_bar * std::abs(w) * gamma_bar / (w * w + gamma_bar * gamma_bar);
    if (w < 0.0) {
      g2 *= std::isinf(beta) ? 0.0 : std::exp(beta * w);
    }
    Matrix m(1, 1);
    m(0, 0) = std::sqrt(g2);
    table.g.push_back(std::move(m));
  }
  return table;
}

CouplingTable diagonalize_gamma(const GammaSpectrum& spectrum, double rank_tol) {
  const int nb = spectrum.n_beta();
  CouplingTable table{spectrum.grid, nb, {}};
  table.g.reserve(spectrum.grid.size());
  for (int i = 0; i < spectrum.grid.size(); ++i) {
    require_hermitian(spectrum.gamma[i], 1e-12,
                      "gamma(" + std::to_string(spectrum.grid.omega(i)) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> es(spectrum.gamma[i]);
    const RealVector evals = es.eigenvalues();
    const double max_eval = std::max(evals.maxCoeff(), 0.0);
    const double neg_floor = std::max(1e-12, rank_tol * max_eval);
    if (evals.minCoeff() < -neg_floor) {
      std::ostringstream msg;
      msg << "diagonalize_gamma: gamma(omega=" << spectrum.grid.omega(i)
          << ") is not positive semidefinite (eigenvalue " << evals.minCoeff() << ")";
      throw std::invalid_argument(msg.str());
    }
    // keep eigenvalues above the relative rank cut, largest first
    std::vector<int> kept;
    for (int l = nb - 1; l >= 0; --l) {
      if (evals(l) > rank_tol * max_eval && evals(l) > 0.0) kept.push_back(l);
    }
    Matrix gm(nb, static_cast<Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
      gm.col(static_cast<Index>(c)) =
          es.eigenvectors().col(kept[c]) * std::sqrt(evals(kept[c]));
    }
    table.g.push_back(std::move(gm));
  }
  return table;
}

cplx analytic_correlation(const CouplingTable& table, int beta, int beta2, double s) {
  if (beta < 0 || beta >= table.n_beta || beta2 < 0 || beta2 >= table.n_beta) {
    throw std::invalid_argument("analytic_correlation: beta index out of range");
  }
  cplx sum = 0.0;
  for (int i = 0; i < table.grid.size(); ++i) {
    const Matrix& gm = table.g[i];
    cplx weight = 0.0;
    for (Index l = 0; l < gm.cols(); ++l) {
      weight += gm(beta, l) * std::conj(gm(beta2, l));
    }
    const double w = table.grid.omega(i);
    sum += std::polar(1.0, -w * s) * weight;
  }
  return sum;
}

CorrelationDecay estimate_tau_e(const CouplingTable& table, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw std::invalid_argument("estimate_tau_e: threshold must be in (0, 1)");
  }
  const double c = table.grid.speed();
  double scale = 0.0;
  for (int b = 0; b < table.n_beta; ++b) {
    scale = std::max(scale, std::abs(analytic_correlation(table, b, b, 0.0)));
  }
  if (scale == 0.0) {
    throw std::runtime_error("estimate_tau_e: zero correlation at s = 0");
  }
  for (int j = 1; j < table.grid.size(); ++j) {
    const double s = j / c;
    double worst = 0.0;
    for (int b = 0; b < table.n_beta; ++b) {
      for (int b2 = 0; b2 < table.n_beta; ++b2) {
        worst = std::max(worst, std::abs(analytic_correlation(table, b, b2, s)));
      }
    }
    if (worst <= threshold * scale) {
      return CorrelationDecay{s, j};
    }
  }
  throw std::runtime_error(
      "estimate_tau_e: correlation does not decay below threshold within one ring "
      "period; increase n_omega or choose a faster-decaying bath");
}

}  // namespace oqs
