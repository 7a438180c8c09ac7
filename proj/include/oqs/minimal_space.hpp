#pragma once

#include "oqs/common.hpp"
#include "oqs/env_encoding.hpp"
#include "oqs/full_environment.hpp"

#include <vector>

namespace oqs {

struct WordLetter {
  int beta = 0;
  int omega_index = 0;  // into FrequencyDecomposition::omegas
};

/// One relevant state b_{beta_m}(omega_m) ... b_{beta_1}(omega_1) |psi>,
/// letters applied first-to-last.
struct RelevantState {
  Vector vec;                    // on H_E (x) H_a
  std::vector<WordLetter> word;  // empty for |psi> itself
  double omega_sum = 0.0;        // Omega
  int sector = 0;                // index into RelevantStateSet::sector_omegas
  double norm = 0.0;
  bool negligible = false;       // norm < 1e-12: retained, skipped by Gram-Schmidt
};

struct RelevantStateSet {
  int order = 0;  // n
  FrequencyDecomposition freq;
  Purification purification;
  std::vector<RelevantState> states;  // |psi> first, then lexicographic words
  std::vector<double> sector_omegas;  // clustered Omega values
  std::size_t psi_index = 0;

  std::size_t size() const { return states.size(); }
};

/// All words of length m <= floor(n/2) over the letters (beta, omega).
RelevantStateSet enumerate_relevant_states(const FullEnvironment& env, int n);

/// Minimal d_E-dimensional representation: orthonormalisation coefficients
/// e_{j,phi}, per-(beta, omega) matrices b~ and the encoded purification.
struct MinimalSpace {
  Index d_e = 0;
  Matrix e_matrix;                           // d_e x n_states
  std::vector<double> sector_omega;          // Omega per basis vector
  std::vector<double> omegas;                // transition frequencies
  int n_beta = 0;
  std::vector<std::vector<Matrix>> b_tilde;  // [beta][omega index], d_e x d_e
  Vector psi_tilde;                          // first basis vector
  std::vector<std::size_t> kept_states;      // accepted input-state indices

  const Matrix& b_tilde_at(int beta, int omega_index) const {
    return b_tilde[beta][omega_index];
  }
};

/// Gram-Schmidt over the Gram metric; dep_tol is relative to the largest Gram
/// eigenvalue. Throws on a Gram matrix with an eigenvalue below -1e-10 (scaled).
MinimalSpace gram_schmidt(const RelevantStateSet& states, double dep_tol = 1e-10);

/// Core orthogonalisation on a raw Gram matrix (also used by tests): returns
/// the e-matrix rows and the accepted column indices. `sector` may be empty
/// (treated as a single sector); `skip[i]` marks states excluded a priori.
struct GramSchmidtResult {
  Matrix e_matrix;
  std::vector<std::size_t> kept;
};
GramSchmidtResult gram_schmidt_from_gram(const Matrix& gram, const std::vector<int>& sector,
                                         const std::vector<bool>& skip, double dep_tol);

/// Environment on the quantum computer built from a minimal space:
/// H~_E = -sum_Omega Omega Pi_Omega (diagonal) and B~ = sum_omega b~(omega).
EnvEncoding minimal_encoding(const MinimalSpace& space);

}  // namespace oqs
