#pragma once

#include "oqs/common.hpp"

#include <cstdint>
#include <vector>

namespace oqs {

/// Desk-scale reference environment: Hermitian H_E, a stationary state rho_E
/// and centered Hermitian interaction operators B_beta. Serves as the ground
/// truth that minimal encodings are checked against.
struct FullEnvironment {
  Matrix h_env;
  Matrix rho_env;
  std::vector<Matrix> b_ops;

  Index dim() const { return h_env.rows(); }
  int n_beta() const { return static_cast<int>(b_ops.size()); }

  /// Centers the interaction operators (B -> B - Tr(B rho) 1) and validates.
  static FullEnvironment make(Matrix h, Matrix rho, std::vector<Matrix> b);

  /// Stationarity, positivity, unit trace, Hermiticity and centering checks.
  void validate() const;
};

/// Reproducible random stationary environment with a clustered spectrum
/// (n_energies distinct eigenvalues), used by tests and the equivalence check.
FullEnvironment random_full_environment(int dim, int n_beta, int n_energies,
                                        std::uint64_t seed, double energy_scale = 1.0);

/// B_beta split into frequency components B_beta(omega) over the eigenvalue
/// differences of H_E (clustered with tolerance 1e-9 |H_E|).
struct FrequencyDecomposition {
  std::vector<double> omegas;             // sorted, symmetric about 0
  std::vector<std::vector<Matrix>> b_of;  // [beta][omega index]

  int n_omega() const { return static_cast<int>(omegas.size()); }
  int index_of(double omega, double tol) const;
};

FrequencyDecomposition frequency_operators(const FullEnvironment& env);

/// Purification |psi> of rho_E on H_E (x) H_a, with the ancilla aligned to the
/// H_E eigenbasis so that words of b(omega) operators carry sharp sector labels.
/// Indexing: psi[a * env_dim + e].
struct Purification {
  Vector psi;
  Index env_dim = 0;
  Index anc_dim = 0;

  /// Applies M (x) 1_a to a vector on H_E (x) H_a.
  Vector apply_env_operator(const Matrix& m, const Vector& v) const;
  /// Tr_a |v><v| as a density matrix on H_E.
  Matrix env_marginal(const Vector& v) const;
};

Purification purify(const FullEnvironment& env, double rank_tol = 1e-12);

}  // namespace oqs
