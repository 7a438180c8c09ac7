#include "oqs/pauli.hpp"

#include <bit>
#include <cmath>

namespace oqs {

namespace {

/// P|k> = phase(k) |k ^ x_mask>; Z contributes (-1)^bit, Y contributes i(-1)^bit.
cplx pauli_phase(const PauliString& p, std::uint64_t k) {
  cplx phase = 1.0;
  for (int q = 0; q < p.n_qubits; ++q) {
    const bool x = (p.x_mask >> q) & 1u;
    const bool z = (p.z_mask >> q) & 1u;
    const bool bit = (k >> q) & 1u;
    if (z && bit) phase = -phase;
    if (x && z) phase *= imag_unit;
  }
  return phase;
}

}  // namespace

std::string PauliString::text() const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) {
    const bool x = (x_mask >> q) & 1u;
    const bool z = (z_mask >> q) & 1u;
    if (x && z) s[static_cast<std::size_t>(q)] = 'Y';
    else if (x) s[static_cast<std::size_t>(q)] = 'X';
    else if (z) s[static_cast<std::size_t>(q)] = 'Z';
  }
  return s;
}

int PauliString::weight() const {
  return std::popcount(x_mask | z_mask);
}

Matrix pauli_matrix(const PauliString& p) {
  const Index dim = Index(1) << p.n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
    m(static_cast<Index>(k ^ p.x_mask), static_cast<Index>(k)) = pauli_phase(p, k);
  }
  return m;
}

Matrix PauliExpansion::reconstruct() const {
  const Index dim = Index(1) << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& term : terms) m += term.coeff * pauli_matrix(term.op);
  return m;
}

PauliExpansion pauli_decompose(const Matrix& m, double prune_tol) {
  require_hermitian(m, 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()), "pauli_decompose input");
  int n = 0;
  while ((Index(1) << n) < m.rows()) ++n;
  if (n > 24) throw std::invalid_argument("pauli_decompose: matrix too large");
  const Index dim = Index(1) << n;

  Matrix padded;
  const Matrix* work = &m;
  if (m.rows() != dim) {
    padded = Matrix::Zero(dim, dim);
    padded.topLeftCorner(m.rows(), m.cols()) = m;
    work = &padded;
  }

  PauliExpansion expansion;
  expansion.n_qubits = n;
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
    for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim); ++z) {
      const PauliString p{n, x, z};
      // Tr(P M) = sum_k phase(k) M(k, k ^ x)
      cplx tr = 0.0;
      for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
        tr += pauli_phase(p, k) * (*work)(static_cast<Index>(k), static_cast<Index>(k ^ x));
      }
      const cplx coeff = tr * scale;
      if (std::abs(coeff) < prune_tol) continue;
      expansion.terms.push_back(PauliTerm{p, coeff.real()});
    }
  }
  return expansion;
}

}  // namespace oqs
