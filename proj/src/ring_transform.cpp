#include "oqs/ring_transform.hpp"

#include <cmath>
#include <numbers>

#ifdef OQS_HAVE_FFTW3
#include <fftw3.h>
#endif

namespace oqs {

RingTransform::RingTransform(int n, bool force_direct) : n_(n) {
  if (n < 1) throw std::invalid_argument("RingTransform: size must be >= 1");
#ifdef OQS_HAVE_FFTW3
  if (!force_direct && n > 16) {
    // FFTW_ESTIMATE keeps planning deterministic run-to-run.
    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    plan_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    plan_fwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_free(buf);
  }
#else
  (void)force_direct;
#endif
}

RingTransform::~RingTransform() {
#ifdef OQS_HAVE_FFTW3
  if (plan_) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
#endif
}

Vector RingTransform::dft(const Vector& in, int sign) const {
  if (in.size() != n_) throw std::invalid_argument("RingTransform: size mismatch");
  const int k_min = -(n_ - 1) / 2;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_));
  Vector out(n_);
#ifdef OQS_HAVE_FFTW3
  if (plan_) {
    fftw_complex* a = fftw_alloc_complex(static_cast<std::size_t>(n_));
    fftw_complex* b = fftw_alloc_complex(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      a[i][0] = in(i).real();
      a[i][1] = in(i).imag();
    }
    fftw_execute_dft(static_cast<fftw_plan>(sign > 0 ? plan_ : plan_fwd_), a, b);
    // FFTW indexes the input by k' = 0..N-1; our k = k' + k_min contributes an
    // extra phase e^{sign i 2 pi k_min x / N} per output site.
    for (int x = 0; x < n_; ++x) {
      const double phi = sign * 2.0 * std::numbers::pi * k_min * x / n_;
      const cplx rot = std::polar(norm, phi);
      out(x) = cplx(b[x][0], b[x][1]) * rot;
    }
    fftw_free(a);
    fftw_free(b);
    return out;
  }
#endif
  for (int x = 0; x < n_; ++x) {
    cplx acc = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double phi = sign * 2.0 * std::numbers::pi * (k_min + i) * x / n_;
      acc += std::polar(1.0, phi) * in(i);
    }
    out(x) = norm * acc;
  }
  return out;
}

Vector RingTransform::to_position(const Vector& freq_amps) const {
  return dft(freq_amps, +1);
}

Vector RingTransform::to_frequency(const Vector& pos_amps) const {
  // inverse of to_position: c_k = N^{-1/2} sum_x e^{-i 2 pi k x / N} d_x
  if (pos_amps.size() != n_) throw std::invalid_argument("RingTransform: size mismatch");
  const int k_min = -(n_ - 1) / 2;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_));
#ifdef OQS_HAVE_FFTW3
  if (plan_) {
    fftw_complex* a = fftw_alloc_complex(static_cast<std::size_t>(n_));
    fftw_complex* b = fftw_alloc_complex(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x) {
      a[x][0] = pos_amps(x).real();
      a[x][1] = pos_amps(x).imag();
    }
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), a, b);
    Vector out(n_);
    for (int i = 0; i < n_; ++i) {
      const int k = k_min + i;
      const int idx = (k % n_ + n_) % n_;  // e^{-2 pi i k x / N} row of the DFT
      out(i) = norm * cplx(b[idx][0], b[idx][1]);
    }
    fftw_free(a);
    fftw_free(b);
    return out;
  }
#endif
  Vector out(n_);
  for (int i = 0; i < n_; ++i) {
    cplx acc = 0.0;
    for (int x = 0; x < n_; ++x) {
      const double phi = -2.0 * std::numbers::pi * (k_min + i) * x / n_;
      acc += std::polar(1.0, phi) * pos_amps(x);
    }
    out(i) = norm * acc;
  }
  return out;
}

Vector RingTransform::coupling_to_position(const Vector& g_freq) const {
  return dft(g_freq, -1);
}

}  // namespace oqs
