#pragma once

#include "oqs/common.hpp"
#include "oqs/frequency_grid.hpp"

#include <limits>
#include <vector>

namespace oqs {

/// Hermitian positive-semidefinite correlation-weight matrices gamma(omega),
/// one N_beta x N_beta matrix per grid frequency.
struct GammaSpectrum {
  FrequencyGrid grid;
  std::vector<Matrix> gamma;  // indexed by grid position

  int n_beta() const { return gamma.empty() ? 0 : static_cast<int>(gamma.front().rows()); }

  /// Checks Hermiticity (1e-12) and the eigenvalue floor (-1e-12).
  void validate() const;
};

/// Coupling coefficients g_{beta,l}(omega) obtained from diagonalising
/// gamma(omega). For grid position i, `g[i]` is an N_beta x d_omega(i) matrix
/// whose column l holds g_{beta,l}(omega_i) = U_{beta,l} sqrt(Lambda_l).
struct CouplingTable {
  FrequencyGrid grid;
  int n_beta = 0;
  std::vector<Matrix> g;  // indexed by grid position; may have 0 columns

  int rank_at(int i) const { return static_cast<int>(g[i].cols()); }

  /// Reconstructs gamma(omega_i) = g g^dagger at grid position i.
  Matrix gamma_at(int i) const { return g[i] * g[i].adjoint(); }

  /// Max Frobenius deviation between g g^dagger and the given spectrum.
  double reconstruction_error(const GammaSpectrum& spectrum) const;
};

/// Single-channel coupling g(omega) = a sqrt(2 gamma_bar / (omega^2 + gamma_bar^2)
/// * delta_omega / (2 pi)); reproduces the correlation a^2 exp(-gamma_bar |s|)
/// in the large-N_omega limit.
CouplingTable lorentzian_coupling(double a, double gamma_bar, const FrequencyGrid& grid);

/// Single-channel thermal coupling with spectral density a gamma_bar |omega|
/// gamma_bar / (omega^2 + gamma_bar^2), detailed-balance suppressed by
/// exp(beta omega) on the negative branch. beta = +infinity selects zero
/// temperature (all omega < 0 couplings vanish).
CouplingTable ohmic_thermal_coupling(double a, double gamma_bar, double beta,
                                     const FrequencyGrid& grid);

/// Per-frequency eigendecomposition gamma = U Lambda U^dagger; eigenvalues
/// below rank_tol * max eigenvalue are dropped and define d_omega. Throws if
/// any eigenvalue is below the negativity floor, naming the offending omega.
CouplingTable diagonalize_gamma(const GammaSpectrum& spectrum, double rank_tol = 1e-12);

/// Reference correlation sum_omega e^{-i omega s} sum_l g_{b,l} conj(g_{b2,l});
/// periodic in s with period 2 pi / delta_omega.
cplx analytic_correlation(const CouplingTable& table, int beta, int beta2, double s);

struct CorrelationDecay {
  double tau_e = 0.0;  // smallest s = j/c with |C(s)| <= threshold |C(0)|
  int x_e = 0;         // c * tau_e, in integer ring sites
};

/// Operationalised correlation time: scans s = j/c over one ring period for the
/// first point where every |C_{b,b2}(s)| falls below threshold * max_b |C_{b,b}(0)|.
/// Throws if the correlation never decays below the threshold within a period.
CorrelationDecay estimate_tau_e(const CouplingTable& table, double threshold = 0.01);

}  // namespace oqs
