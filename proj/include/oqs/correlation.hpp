#pragma once

#include "oqs/common.hpp"
#include "oqs/env_encoding.hpp"
#include "oqs/full_environment.hpp"

#include <vector>

namespace oqs {

/// One factor of a time-ordered correlation word: the superoperator
/// B(t)^nu . B(t)^{1-nu} with nu = 1 acting from the left.
struct WordOp {
  int beta = 0;
  double t = 0.0;
  int nu = 1;
};

void validate_word(const std::vector<WordOp>& word, int n_beta);

/// Tr[ B(t0, nu0) ... B(tm, num) rho_E ] on the reference environment,
/// evaluated through the purification as a two-sided vector expression.
class FullCorrelator {
 public:
  explicit FullCorrelator(const FullEnvironment& env);

  cplx correlation(const std::vector<WordOp>& word) const;

  const FrequencyDecomposition& frequencies() const { return freq_; }
  const Purification& purification() const { return pur_; }

 private:
  Matrix b_at_time(int beta, double t) const;

  int n_beta_;
  FrequencyDecomposition freq_;
  Purification pur_;
};

/// The same correlation word evaluated on an encoded environment with
/// B~(t) = e^{i H~ t} B~ e^{-i H~ t} and the encoded initial state.
class EncodingCorrelator {
 public:
  explicit EncodingCorrelator(const EnvEncoding& enc);

  cplx correlation(const std::vector<WordOp>& word) const;

 private:
  Matrix b_at_time(int beta, double t) const;

  RealVector h_diag_;
  std::vector<Matrix> b_dense_;
  Vector init_;
};

/// Convenience single-shot evaluators.
cplx multi_time_correlation(const FullEnvironment& env, const std::vector<WordOp>& word);
cplx multi_time_correlation(const EnvEncoding& enc, const std::vector<WordOp>& word);

}  // namespace oqs
