#include "oqs/minimal_space.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace oqs {

RelevantStateSet enumerate_relevant_states(const FullEnvironment& env, int n) {
  if (n < 1) throw std::invalid_argument("enumerate_relevant_states: n must be >= 1");
  RelevantStateSet set;
  set.order = n;
  set.freq = frequency_operators(env);
  set.purification = purify(env);

  const int n_omega = set.freq.n_omega();
  const int n_beta = env.n_beta();
  const int max_len = n / 2;

  RelevantState psi;
  psi.vec = set.purification.psi;
  psi.norm = psi.vec.norm();
  set.states.push_back(std::move(psi));

  // words in lexicographic (beta-word, omega-word) order per length
  std::vector<WordLetter> word;
  for (int m = 1; m <= max_len; ++m) {
    std::vector<int> betas(m, 0), omegas_idx(m, 0);
    while (true) {
      RelevantState st;
      st.word.resize(m);
      Vector v = set.purification.psi;
      double omega_sum = 0.0;
      for (int p = 0; p < m; ++p) {
        st.word[p] = WordLetter{betas[p], omegas_idx[p]};
        v = set.purification.apply_env_operator(set.freq.b_of[betas[p]][omegas_idx[p]], v);
        omega_sum += set.freq.omegas[omegas_idx[p]];
      }
      st.vec = std::move(v);
      st.omega_sum = omega_sum;
      st.norm = st.vec.norm();
      st.negligible = st.norm < 1e-12;
      set.states.push_back(std::move(st));

      // increment (betas, omegas_idx) as one mixed-radix counter, betas major
      int pos = m - 1;
      while (pos >= 0) {
        if (++omegas_idx[pos] < n_omega) break;
        omegas_idx[pos] = 0;
        --pos;
      }
      if (pos >= 0) continue;
      pos = m - 1;
      while (pos >= 0) {
        if (++betas[pos] < n_beta) break;
        betas[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }

  // sector labels from clustered Omega values
  const double htol = 1e-8 * std::max(1.0, std::abs(set.freq.omegas.empty()
                                                        ? 0.0
                                                        : std::max(std::abs(set.freq.omegas.front()),
                                                                   std::abs(set.freq.omegas.back()))));
  std::vector<double> sums;
  sums.reserve(set.states.size());
  for (const auto& st : set.states) sums.push_back(st.omega_sum);
  set.sector_omegas = cluster_values(sums, htol);
  for (auto& st : set.states) {
    st.sector = static_cast<int>(cluster_index(set.sector_omegas, st.omega_sum, 2 * htol + 1e-300));
  }
  return set;
}

GramSchmidtResult gram_schmidt_from_gram(const Matrix& gram, const std::vector<int>& sector,
                                         const std::vector<bool>& skip, double dep_tol) {
  const Index n = gram.rows();
  require_hermitian(gram, 1e-8 * std::max(1.0, gram.cwiseAbs().maxCoeff()), "Gram matrix");

  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const double lambda_max = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, lambda_max)) {
    throw std::invalid_argument("gram_schmidt: invalid Gram matrix (eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
  }

  // zero cross-sector entries; they vanish identically for stationary states
  Matrix g = gram;
  if (!sector.empty()) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (sector[static_cast<std::size_t>(i)] != sector[static_cast<std::size_t>(j)]) {
          g(i, j) = 0.0;
        }
      }
    }
  }

  std::vector<Vector> basis;    // coefficient rows e_j
  std::vector<Vector> g_basis;  // cached g * e_j, keeps the sweep O(n^3)
  std::vector<std::size_t> kept;
  const double dep_floor = dep_tol * std::max(lambda_max, 1e-300);
  for (Index i = 0; i < n; ++i) {
    if (!skip.empty() && skip[static_cast<std::size_t>(i)]) continue;
    Vector u = Vector::Zero(n);
    u(i) = 1.0;
    Vector gu = g.col(i);
    // modified Gram-Schmidt with one re-orthogonalisation pass
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const cplx overlap = basis[j].adjoint() * gu;
        u -= overlap * basis[j];
        gu -= overlap * g_basis[j];
      }
    }
    const double norm2 = std::max((u.adjoint() * gu).real(), 0.0);
    if (norm2 <= dep_floor) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    basis.push_back(u * inv);
    g_basis.push_back(gu * inv);
    kept.push_back(static_cast<std::size_t>(i));
  }

  GramSchmidtResult result;
  result.e_matrix = Matrix::Zero(static_cast<Index>(basis.size()), n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    result.e_matrix.row(static_cast<Index>(j)) = basis[j].transpose();
  }
  result.kept = std::move(kept);
  return result;
}

MinimalSpace gram_schmidt(const RelevantStateSet& set, double dep_tol) {
  const std::size_t n = set.size();
  if (n == 0 || !set.states[set.psi_index].word.empty()) {
    throw std::invalid_argument("gram_schmidt: state list must start with |psi>");
  }
  if (std::abs(set.states[set.psi_index].norm - 1.0) > 1e-10) {
    throw std::invalid_argument("gram_schmidt: |psi> must be normalised");
  }

  // Gram matrix over the raw state vectors
  const Index dim = set.states.front().vec.size();
  Matrix s(dim, static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) s.col(static_cast<Index>(i)) = set.states[i].vec;
  Matrix gram = s.adjoint() * s;

  std::vector<int> sectors(n);
  std::vector<bool> skip(n);
  for (std::size_t i = 0; i < n; ++i) {
    sectors[i] = set.states[i].sector;
    skip[i] = set.states[i].negligible;
  }
  GramSchmidtResult gs = gram_schmidt_from_gram(gram, sectors, skip, dep_tol);

  MinimalSpace space;
  space.d_e = gs.e_matrix.rows();
  space.e_matrix = gs.e_matrix;
  space.kept_states = gs.kept;
  space.omegas = set.freq.omegas;
  space.n_beta = static_cast<int>(set.freq.b_of.size());
  space.psi_tilde = Vector::Zero(space.d_e);
  space.psi_tilde(0) = 1.0;
  space.sector_omega.reserve(gs.kept.size());
  for (std::size_t k : gs.kept) {
    space.sector_omega.push_back(set.sector_omegas[static_cast<std::size_t>(set.states[k].sector)]);
  }

  // b~(omega) = conj(E) <phi'|b|phi> E^T restricted to the allowed sector blocks
  const double wtol = 1e-7 * std::max(1.0, std::abs(space.omegas.empty() ? 0.0 : space.omegas.back()));
  space.b_tilde.assign(space.n_beta, {});
  for (int beta = 0; beta < space.n_beta; ++beta) {
    space.b_tilde[beta].reserve(space.omegas.size());
    for (std::size_t wi = 0; wi < space.omegas.size(); ++wi) {
      Matrix bs(dim, static_cast<Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        bs.col(static_cast<Index>(i)) =
            set.purification.apply_env_operator(set.freq.b_of[beta][wi], set.states[i].vec);
      }
      const Matrix elements = s.adjoint() * bs;  // <phi'| b |phi>
      Matrix bt = space.e_matrix.conjugate() * elements * space.e_matrix.transpose();
      // exact block structure: Omega_row = Omega_col + omega
      for (Index r = 0; r < space.d_e; ++r) {
        for (Index c = 0; c < space.d_e; ++c) {
          const double target = space.sector_omega[static_cast<std::size_t>(c)] +
                                space.omegas[wi];
          if (std::abs(space.sector_omega[static_cast<std::size_t>(r)] - target) > wtol) {
            bt(r, c) = 0.0;
          }
        }
      }
      space.b_tilde[beta].push_back(std::move(bt));
    }
  }
  return space;
}

EnvEncoding minimal_encoding(const MinimalSpace& space) {
  EnvEncoding enc;
  enc.dim = space.d_e;
  enc.h_diag = RealVector::Zero(space.d_e);
  for (Index j = 0; j < space.d_e; ++j) {
    enc.h_diag(j) = -space.sector_omega[static_cast<std::size_t>(j)];
  }
  enc.sector_of = enc.h_diag;

  const double sector_tol = 1e-8 * std::max(1.0, enc.h_diag.cwiseAbs().maxCoeff());
  if (std::abs(space.sector_omega.front()) > sector_tol) {
    throw std::logic_error("minimal_encoding: |psi~> is not in the zero-frequency sector");
  }

  for (int beta = 0; beta < space.n_beta; ++beta) {
    Matrix b = Matrix::Zero(space.d_e, space.d_e);
    for (const auto& bt : space.b_tilde[beta]) b += bt;
    enc.b_ops.push_back(b.sparseView(1.0, 0.0));
  }
  enc.init_state = space.psi_tilde;
  enc.init_index = 0;
  return enc;
}

}  // namespace oqs
