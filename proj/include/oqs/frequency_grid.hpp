#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oqs {

/// Uniformly discretised bath spectrum: an odd number of frequencies
/// omega_k = k * delta_omega with k = -(N-1)/2 ... (N-1)/2.
class FrequencyGrid {
 public:
  FrequencyGrid(int n_omega, double delta_omega)
      : n_omega_(n_omega), delta_omega_(delta_omega) {
    if (n_omega < 1 || n_omega % 2 == 0) {
      throw std::invalid_argument(
          "FrequencyGrid: n_omega must be a positive odd integer, got " +
          std::to_string(n_omega));
    }
    if (!(delta_omega > 0.0)) {
      throw std::invalid_argument("FrequencyGrid: delta_omega must be > 0");
    }
  }

  int size() const { return n_omega_; }
  double spacing() const { return delta_omega_; }

  int k_min() const { return -(n_omega_ - 1) / 2; }
  int k_max() const { return (n_omega_ - 1) / 2; }

  /// Frequency at grid position i = 0 ... N-1 (ascending).
  double omega(int i) const { return (k_min() + i) * delta_omega_; }
  /// Integer wavenumber at grid position i.
  int k(int i) const { return k_min() + i; }

  /// Grid position of wavenumber k.
  int index_of_k(int k) const { return k - k_min(); }

  std::vector<double> frequencies() const {
    std::vector<double> f(n_omega_);
    for (int i = 0; i < n_omega_; ++i) f[i] = omega(i);
    return f;
  }

  /// Wavepackage transport speed c = N delta_omega / (2 pi) in sites per time.
  double speed() const {
    return n_omega_ * delta_omega_ / (2.0 * std::numbers::pi);
  }

  /// Ring period 2 pi / delta_omega of the free environment evolution.
  double period() const { return 2.0 * std::numbers::pi / delta_omega_; }

  bool operator==(const FrequencyGrid& other) const {
    return n_omega_ == other.n_omega_ && delta_omega_ == other.delta_omega_;
  }

 private:
  int n_omega_;
  double delta_omega_;
};

inline FrequencyGrid build_frequency_grid(int n_omega, double delta_omega) {
  return FrequencyGrid(n_omega, delta_omega);
}

}  // namespace oqs
