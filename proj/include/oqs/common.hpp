#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqs {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using Index = Eigen::Index;

inline constexpr cplx imag_unit{0.0, 1.0};

/// Deterministic 64-bit mixer used to derive per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

/// Uniform double in [0, 1) from a 64-bit word; avoids any
/// implementation-defined distribution so runs reproduce bit-exactly.
inline double uniform01(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

inline double hermiticity_error(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const Matrix& m, double tol, const std::string& what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(what + ": matrix is not square");
  }
  const double err = hermiticity_error(m);
  if (err > tol) {
    throw std::invalid_argument(what + ": matrix is not Hermitian (deviation " +
                                std::to_string(err) + ")");
  }
}

/// Largest singular value; for Hermitian input this is the operator norm.
inline double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

/// Clusters sorted-or-unsorted values that lie within `tol` of each other and
/// returns the sorted cluster representatives (mean of each cluster).
std::vector<double> cluster_values(const std::vector<double>& values, double tol);

/// Index of the cluster representative closest to `v`; throws if the distance
/// exceeds `tol`.
std::size_t cluster_index(const std::vector<double>& reps, double v, double tol);

}  // namespace oqs
