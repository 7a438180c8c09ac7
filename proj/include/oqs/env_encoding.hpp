#pragma once

#include "oqs/common.hpp"
#include "oqs/coupling.hpp"
#include "oqs/frequency_grid.hpp"
#include "oqs/ring_transform.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace oqs {

/// Basis layout of a second-order (vacuum + frequency sectors) encoding.
/// Basis index 0 is the vacuum; the state for grid position i, channel l sits
/// at base[i] + l with 0 <= l < channels[i].
struct SecondOrderLayout {
  FrequencyGrid grid;
  std::vector<int> channels;  // d_omega per grid position
  std::vector<Index> base;    // first basis index per grid position

  Index state_index(int grid_pos, int channel) const {
    return base[grid_pos] + channel;
  }
  bool uniform_channels() const {
    for (int c : channels)
      if (c != channels.front()) return false;
    return !channels.empty();
  }
};

/// Environment as represented on the quantum computer: a diagonal
/// Hamiltonian, Hermitian interaction operators, and a pure initial state.
struct EnvEncoding {
  Index dim = 0;
  RealVector h_diag;                  // diagonal of H~_E
  std::vector<SparseMatrix> b_ops;    // B~_beta, Hermitian
  Vector init_state;                  // |psi~>, unit norm
  Index init_index = -1;              // basis index when |psi~> is a basis vector
  RealVector sector_of;               // level frequency per basis state
  std::optional<SecondOrderLayout> layout;
  std::vector<Index> diss_projector;  // optional basis-state subset for Pi

  int n_beta() const { return static_cast<int>(b_ops.size()); }
  Matrix b_dense(int beta) const { return Matrix(b_ops[beta]); }
  void validate() const;
};

/// Vacuum + one state per (omega, l) with B~ = sum g sigma + h.c.; reproduces
/// the table's two-time correlations from the vacuum.
EnvEncoding second_order_encoding(const CouplingTable& table);

/// Fourier view of a second-order encoding: ring states |x, l>, transported at
/// speed c by the free evolution, with couplings g(x).
class PositionBasisView {
 public:
  PositionBasisView(const EnvEncoding& enc, bool force_direct_transform = false);

  const FrequencyGrid& grid() const { return layout_.grid; }
  int n_sites() const { return layout_.grid.size(); }
  int n_channels() const { return n_channels_; }
  double speed() const { return layout_.grid.speed(); }
  const RingTransform& transform() const { return *transform_; }
  const SecondOrderLayout& layout() const { return layout_; }

  /// g_{beta,l}(x) table.
  const Vector& coupling_x(int beta, int channel) const {
    return g_x_[static_cast<std::size_t>(beta) * n_channels_ + channel];
  }

  /// Extracts the channel's excitation amplitudes (grid order) from a full
  /// environment vector, transformed to the ring basis.
  Vector channel_to_position(const Vector& env_vec, int channel) const;
  /// Writes ring amplitudes for one channel back into a full environment vector.
  void position_to_channel(const Vector& pos_amps, int channel, Vector& env_vec) const;

 private:
  SecondOrderLayout layout_;
  int n_channels_;
  std::shared_ptr<const RingTransform> transform_;
  std::vector<Vector> g_x_;  // [beta * n_channels + l]
};

/// Pi = sum over zone sites (x_lo <= x <= x_hi) and channels of |x,l><x,l|.
struct RingZoneProjector {
  int x_lo = 0;
  int x_hi = -1;  // empty when x_hi < x_lo
  bool contains(int x) const { return x >= x_lo && x <= x_hi; }
  int site_count() const { return x_hi >= x_lo ? x_hi - x_lo + 1 : 0; }
};

/// The protocol projector of the conditional dissipation: all ring sites
/// x > x_T. x_T = N-1 yields the empty projector.
RingZoneProjector dissipation_projector_second_order(const PositionBasisView& view, int x_t);

/// Dense environment-basis matrix of a ring-zone projector (test/oracle use).
Matrix ring_zone_projector_matrix(const PositionBasisView& view, const RingZoneProjector& zone);

/// Coefficients of the two-excitation encoding: g1[beta](k) couples |v><omega|
/// and g2[beta](k, k1, k2) couples |omega><omega1, omega2|.
struct FourthOrderCouplings {
  FrequencyGrid grid;
  std::vector<Vector> g1;               // [beta], length N
  std::vector<std::vector<cplx>> g2;    // [beta], flat index (k*N + k1)*N + k2
  int n_beta() const { return static_cast<int>(g1.size()); }
  cplx g2_at(int beta, int k, int k1, int k2) const {
    const int n = grid.size();
    return g2[beta][static_cast<std::size_t>((k * n + k1)) * n + k2];
  }
};

/// Basis {v} + {|omega>} + {|omega1, omega2>} (ordered pairs) with the
/// one- and two-excitation interaction blocks given by the coupling tables.
EnvEncoding fourth_order_example_encoding(const FourthOrderCouplings& couplings);

/// The same couplings expressed on the ring.
struct FourthOrderRingCouplings {
  FrequencyGrid grid;
  std::vector<Vector> g1_x;             // [beta], length N
  std::vector<std::vector<cplx>> g2_x;  // [beta], flat index (x*N + x1)*N + x2
};

FourthOrderRingCouplings fourth_order_to_position(const FourthOrderCouplings& couplings);
FourthOrderCouplings fourth_order_from_position(const FourthOrderRingCouplings& ring);

struct DeltaCheckReport {
  double support_violation = 0.0;  // worst violation of the three x-space conditions
  double max_delta = 0.0;          // worst |Delta| over the probed words
  bool support_ok(double tol = 1e-10) const { return support_violation <= tol; }
};

/// Verifies the x-space locality conditions (g1 vanishing beyond x_E, the
/// two-excitation table vanishing for x2 > x_E and reducing to a spectator
/// delta when either of the first two slots passes x_E) and evaluates the
/// reinitialisation error Delta for the four independent four-time orderings.
/// Time gaps are chosen so that every probed gap exceeds x_E / c.
DeltaCheckReport fourth_order_delta_check(const FourthOrderCouplings& couplings, int x_e);

}  // namespace oqs
