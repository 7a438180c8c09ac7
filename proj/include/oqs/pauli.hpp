#pragma once

#include "oqs/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oqs {

/// Pauli string over n qubits in the symplectic (x_mask, z_mask) form:
/// qubit q carries X if only bit q of x_mask is set, Z for z_mask, Y for both.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  std::string text() const;  // e.g. "XIZ" (qubit 0 leftmost)
  int weight() const;        // number of non-identity factors

  bool operator==(const PauliString& other) const = default;
};

/// Dense matrix of the string on 2^n dimensions (test/oracle use).
Matrix pauli_matrix(const PauliString& p);

struct PauliTerm {
  PauliString op;
  double coeff = 0.0;
};

struct PauliExpansion {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;

  std::size_t size() const { return terms.size(); }
  Matrix reconstruct() const;
};

/// Expands a Hermitian matrix over Pauli strings, coefficient Tr(P M)/2^n;
/// matrices smaller than 2^n are zero-padded into unreachable basis states.
/// Coefficients with |c| < prune_tol are dropped.
PauliExpansion pauli_decompose(const Matrix& m, double prune_tol = 1e-12);

}  // namespace oqs
