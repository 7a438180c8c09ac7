#include "oqs/correlation.hpp"

#include <cmath>

namespace oqs {

void validate_word(const std::vector<WordOp>& word, int n_beta) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i].beta < 0 || word[i].beta >= n_beta) {
      throw std::invalid_argument("correlation word: beta index out of range");
    }
    if (word[i].nu != 0 && word[i].nu != 1) {
      throw std::invalid_argument("correlation word: nu must be 0 or 1");
    }
    if (i > 0 && word[i].t > word[i - 1].t + 1e-12) {
      throw std::invalid_argument("correlation word: times must be non-increasing");
    }
  }
}

FullCorrelator::FullCorrelator(const FullEnvironment& env)
    : n_beta_(env.n_beta()), freq_(frequency_operators(env)), pur_(purify(env)) {}

Matrix FullCorrelator::b_at_time(int beta, double t) const {
  Matrix b = Matrix::Zero(pur_.env_dim, pur_.env_dim);
  for (std::size_t wi = 0; wi < freq_.omegas.size(); ++wi) {
    b += std::polar(1.0, -freq_.omegas[wi] * t) * freq_.b_of[beta][wi];
  }
  return b;
}

cplx FullCorrelator::correlation(const std::vector<WordOp>& word) const {
  validate_word(word, n_beta_);
  // <psi| b^{1-nu_{m-1}}(t_{m-1}) ... b^{1-nu_0}(t_0) b^{nu_0}(t_0) ... |psi>
  Vector right = pur_.psi;
  Vector left = pur_.psi;
  for (std::size_t i = word.size(); i-- > 0;) {
    const Matrix b = b_at_time(word[i].beta, word[i].t);
    if (word[i].nu == 1) {
      right = pur_.apply_env_operator(b, right);
    } else {
      left = pur_.apply_env_operator(b, left);  // B(t) is Hermitian
    }
  }
  return left.dot(right);
}

EncodingCorrelator::EncodingCorrelator(const EnvEncoding& enc)
    : h_diag_(enc.h_diag), init_(enc.init_state) {
  b_dense_.reserve(enc.b_ops.size());
  for (int beta = 0; beta < enc.n_beta(); ++beta) b_dense_.push_back(enc.b_dense(beta));
}

Matrix EncodingCorrelator::b_at_time(int beta, double t) const {
  const Matrix& b = b_dense_[static_cast<std::size_t>(beta)];
  Matrix out(b.rows(), b.cols());
  for (Index i = 0; i < b.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      out(i, j) = b(i, j) == cplx(0.0)
                      ? cplx(0.0)
                      : b(i, j) * std::polar(1.0, (h_diag_(i) - h_diag_(j)) * t);
    }
  }
  return out;
}

cplx EncodingCorrelator::correlation(const std::vector<WordOp>& word) const {
  validate_word(word, static_cast<int>(b_dense_.size()));
  Vector right = init_;
  Vector left = init_;
  for (std::size_t i = word.size(); i-- > 0;) {
    const Matrix b = b_at_time(word[i].beta, word[i].t);
    if (word[i].nu == 1) {
      right = b * right;
    } else {
      left = b * left;
    }
  }
  return left.dot(right);
}

cplx multi_time_correlation(const FullEnvironment& env, const std::vector<WordOp>& word) {
  return FullCorrelator(env).correlation(word);
}

cplx multi_time_correlation(const EnvEncoding& enc, const std::vector<WordOp>& word) {
  return EncodingCorrelator(enc).correlation(word);
}

}  // namespace oqs
