#pragma once

#include "oqs/common.hpp"
#include "oqs/frequency_grid.hpp"

#include <memory>

namespace oqs {

/// Unitary map between the frequency basis {|omega_k>} (k = -(N-1)/2 ... (N-1)/2,
/// stored in ascending grid order) and the ring basis {|x>} (x = 0 ... N-1):
///
///   state amplitudes    d_x = N^{-1/2} sum_k e^{+i 2 pi k x / N} c_k
///   coupling tables     g_x = N^{-1/2} sum_k e^{-i 2 pi k x / N} g_k
///
/// Backed by FFTW when available, direct summation otherwise; both backends
/// agree to ~1e-12 and the direct path can be forced for cross-checks.
class RingTransform {
 public:
  explicit RingTransform(int n, bool force_direct = false);
  ~RingTransform();

  RingTransform(const RingTransform&) = delete;
  RingTransform& operator=(const RingTransform&) = delete;

  int size() const { return n_; }

  /// Frequency amplitudes -> ring amplitudes (sign +1 in the exponent).
  Vector to_position(const Vector& freq_amps) const;
  /// Ring amplitudes -> frequency amplitudes (inverse of to_position).
  Vector to_frequency(const Vector& pos_amps) const;
  /// Coupling coefficients g(omega) -> g(x) (sign -1 in the exponent).
  Vector coupling_to_position(const Vector& g_freq) const;

  bool uses_fft() const { return plan_ != nullptr; }

 private:
  Vector dft(const Vector& in, int sign) const;

  int n_;
  void* plan_ = nullptr;      // fftw_plan for sign = +1 (FFTW_BACKWARD)
  void* plan_fwd_ = nullptr;  // fftw_plan for sign = -1 (FFTW_FORWARD)
};

}  // namespace oqs
