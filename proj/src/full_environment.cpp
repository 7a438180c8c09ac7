#include "oqs/full_environment.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace oqs {

FullEnvironment FullEnvironment::make(Matrix h, Matrix rho, std::vector<Matrix> b) {
  FullEnvironment env{std::move(h), std::move(rho), std::move(b)};
  for (auto& op : env.b_ops) {
    require_hermitian(op, 1e-10, "FullEnvironment B operator");
    const cplx mean = (op * env.rho_env).trace();
    op -= mean.real() * Matrix::Identity(env.dim(), env.dim());
  }
  env.validate();
  return env;
}

void FullEnvironment::validate() const {
  require_hermitian(h_env, 1e-10, "FullEnvironment H_E");
  require_hermitian(rho_env, 1e-10, "FullEnvironment rho_E");
  if (std::abs(rho_env.trace().real() - 1.0) > 1e-12 ||
      std::abs(rho_env.trace().imag()) > 1e-12) {
    throw std::invalid_argument("FullEnvironment: rho_E must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_env, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw std::invalid_argument("FullEnvironment: rho_E is not positive semidefinite");
  }
  const double comm = (h_env * rho_env - rho_env * h_env).cwiseAbs().maxCoeff();
  if (comm > 1e-10) {
    throw std::invalid_argument("FullEnvironment: rho_E is not stationary ([H, rho] = " +
                                std::to_string(comm) + ")");
  }
  for (const auto& op : b_ops) {
    require_hermitian(op, 1e-10, "FullEnvironment B operator");
    if (std::abs((op * rho_env).trace()) > 1e-12) {
      throw std::invalid_argument("FullEnvironment: B operator is not centered");
    }
  }
}

namespace {

/// Platform-independent standard normal from a counter-based stream.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : state_(seed) {}

  double uniform() { return uniform01(splitmix64(state_++)); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Matrix random_unitary(int dim, NormalStream& rng) {
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // fix the phase convention so the result is deterministic
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

FullEnvironment random_full_environment(int dim, int n_beta, int n_energies,
                                        std::uint64_t seed, double energy_scale) {
  if (dim < 2 || n_beta < 1 || n_energies < 1) {
    throw std::invalid_argument("random_full_environment: bad dimensions");
  }
  NormalStream rng(derive_seed(seed, 0xe17));
  const Matrix v = random_unitary(dim, rng);

  RealVector energies(dim);
  std::vector<double> levels(n_energies);
  for (int i = 0; i < n_energies; ++i) levels[i] = energy_scale * (2.0 * rng.uniform() - 1.0);
  for (int i = 0; i < dim; ++i) energies(i) = levels[i % n_energies];

  RealVector probs(dim);
  double total = 0.0;
  for (int i = 0; i < dim; ++i) {
    probs(i) = -std::log(std::max(rng.uniform(), 1e-12));
    total += probs(i);
  }
  probs /= total;

  const Matrix h = v * energies.asDiagonal() * v.adjoint();
  const Matrix rho = v * probs.asDiagonal() * v.adjoint();

  std::vector<Matrix> ops;
  ops.reserve(n_beta);
  for (int b = 0; b < n_beta; ++b) {
    Matrix g(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    }
    ops.push_back(0.5 * (g + g.adjoint()));
  }
  return FullEnvironment::make(0.5 * (h + h.adjoint()), 0.5 * (rho + rho.adjoint()),
                               std::move(ops));
}

int FrequencyDecomposition::index_of(double omega, double tol) const {
  return static_cast<int>(cluster_index(omegas, omega, tol));
}

FrequencyDecomposition frequency_operators(const FullEnvironment& env) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(env.h_env);
  const RealVector evals = es.eigenvalues();
  const Matrix vecs = es.eigenvectors();
  const double tol = 1e-9 * std::max(1.0, evals.cwiseAbs().maxCoeff());

  std::vector<double> raw(evals.data(), evals.data() + evals.size());
  const std::vector<double> energies = cluster_values(raw, tol);
  const double lookup = tol * (static_cast<double>(evals.size()) + 2.0);

  // projector onto each clustered eigenspace
  std::vector<Matrix> projectors(energies.size(),
                                 Matrix::Zero(env.dim(), env.dim()));
  for (Index i = 0; i < evals.size(); ++i) {
    const std::size_t c = cluster_index(energies, evals(i), lookup);
    projectors[c] += vecs.col(i) * vecs.col(i).adjoint();
  }

  // all eigenvalue differences, clustered and symmetrised about zero
  std::vector<double> diffs;
  diffs.reserve(energies.size() * energies.size());
  for (double er : energies) {
    for (double ec : energies) diffs.push_back(ec - er);
  }
  std::vector<double> omegas = cluster_values(diffs, tol);
  {
    // enforce exact +/- symmetry of the representative list
    const std::size_t m = omegas.size();
    for (std::size_t i = 0; i < m / 2; ++i) {
      const double s = 0.5 * (omegas[i] - omegas[m - 1 - i]);
      omegas[i] = s;
      omegas[m - 1 - i] = -s;
    }
    if (m % 2 == 1) omegas[m / 2] = 0.0;
  }

  FrequencyDecomposition dec;
  dec.omegas = omegas;
  dec.b_of.assign(env.b_ops.size(),
                  std::vector<Matrix>(omegas.size(), Matrix::Zero(env.dim(), env.dim())));
  const double diff_lookup = tol * (static_cast<double>(diffs.size()) + 2.0);
  for (std::size_t r = 0; r < energies.size(); ++r) {
    for (std::size_t c = 0; c < energies.size(); ++c) {
      const double w = energies[c] - energies[r];
      const std::size_t wi = cluster_index(omegas, w, diff_lookup);
      for (int beta = 0; beta < env.n_beta(); ++beta) {
        dec.b_of[beta][wi] += projectors[r] * env.b_ops[beta] * projectors[c];
      }
    }
  }
  return dec;
}

Vector Purification::apply_env_operator(const Matrix& m, const Vector& v) const {
  Vector out(v.size());
  Eigen::Map<const Matrix> in_view(v.data(), env_dim, anc_dim);
  Eigen::Map<Matrix> out_view(out.data(), env_dim, anc_dim);
  out_view = m * in_view;
  return out;
}

Matrix Purification::env_marginal(const Vector& v) const {
  Eigen::Map<const Matrix> view(v.data(), env_dim, anc_dim);
  return view * view.adjoint();
}

Purification purify(const FullEnvironment& env, double rank_tol) {
  // Diagonalise H_E first, then rho_E inside each eigenspace; stationarity
  // makes rho block-diagonal there. This ties every Schmidt vector to a sharp
  // energy so that relevant-state sectors are exact.
  Eigen::SelfAdjointEigenSolver<Matrix> es(env.h_env);
  const RealVector evals = es.eigenvalues();
  const Matrix vecs = es.eigenvectors();
  const double tol = 1e-9 * std::max(1.0, evals.cwiseAbs().maxCoeff());
  std::vector<double> raw(evals.data(), evals.data() + evals.size());
  const std::vector<double> energies = cluster_values(raw, tol);
  const double lookup = tol * (static_cast<double>(evals.size()) + 2.0);
  std::vector<std::size_t> assignment(static_cast<std::size_t>(evals.size()));
  for (Index i = 0; i < evals.size(); ++i) {
    assignment[static_cast<std::size_t>(i)] = cluster_index(energies, evals(i), lookup);
  }

  std::vector<std::pair<double, Vector>> schmidt;  // (p, eigvec of rho)
  for (std::size_t c = 0; c < energies.size(); ++c) {
    std::vector<Index> members;
    for (Index i = 0; i < evals.size(); ++i) {
      if (assignment[static_cast<std::size_t>(i)] == c) members.push_back(i);
    }
    Matrix w(env.dim(), static_cast<Index>(members.size()));
    for (std::size_t j = 0; j < members.size(); ++j) w.col(static_cast<Index>(j)) = vecs.col(members[j]);
    const Matrix block = w.adjoint() * env.rho_env * w;
    Eigen::SelfAdjointEigenSolver<Matrix> bs(block);
    for (Index j = 0; j < bs.eigenvalues().size(); ++j) {
      const double p = bs.eigenvalues()(j);
      if (p > rank_tol) schmidt.emplace_back(p, (w * bs.eigenvectors().col(j)).eval());
    }
  }
  if (schmidt.empty()) {
    throw std::runtime_error("purify: rho_E has numerical rank zero");
  }

  Purification pur;
  pur.env_dim = env.dim();
  pur.anc_dim = static_cast<Index>(schmidt.size());
  pur.psi = Vector::Zero(pur.env_dim * pur.anc_dim);
  Eigen::Map<Matrix> view(pur.psi.data(), pur.env_dim, pur.anc_dim);
  for (Index a = 0; a < pur.anc_dim; ++a) {
    view.col(a) = std::sqrt(schmidt[static_cast<std::size_t>(a)].first) *
                  schmidt[static_cast<std::size_t>(a)].second;
  }
  return pur;
}

}  // namespace oqs
