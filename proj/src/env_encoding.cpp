#include "oqs/env_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace oqs {

namespace {

Matrix dense_adjoint_gap(const SparseMatrix& m) {
  Matrix d(m);
  return d - d.adjoint();
}

}  // namespace

void EnvEncoding::validate() const {
  if (dim < 1) throw std::invalid_argument("EnvEncoding: empty encoding");
  if (h_diag.size() != dim || sector_of.size() != dim) {
    throw std::invalid_argument("EnvEncoding: diagonal size mismatch");
  }
  if (init_state.size() != dim) {
    throw std::invalid_argument("EnvEncoding: initial-state size mismatch");
  }
  if (std::abs(init_state.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("EnvEncoding: initial state is not normalised");
  }
  for (const auto& b : b_ops) {
    if (b.rows() != dim || b.cols() != dim) {
      throw std::invalid_argument("EnvEncoding: interaction operator size mismatch");
    }
    const double herm = dense_adjoint_gap(b).cwiseAbs().maxCoeff();
    if (herm > 1e-12) {
      throw std::invalid_argument("EnvEncoding: interaction operator not Hermitian (" +
                                  std::to_string(herm) + ")");
    }
  }
  const double htol = 1e-9 * std::max(1.0, h_diag.cwiseAbs().maxCoeff());
  for (Index i = 0; i < dim; ++i) {
    if (std::abs(init_state(i)) > 1e-12 && std::abs(sector_of(i)) > htol) {
      throw std::logic_error("EnvEncoding: initial state has weight outside the zero sector");
    }
  }
}

EnvEncoding second_order_encoding(const CouplingTable& table) {
  SecondOrderLayout layout{table.grid, {}, {}};
  layout.channels.resize(table.grid.size());
  layout.base.resize(table.grid.size());
  Index next = 1;  // index 0 is the vacuum
  for (int i = 0; i < table.grid.size(); ++i) {
    layout.channels[i] = table.rank_at(i);
    layout.base[i] = next;
    next += layout.channels[i];
  }

  EnvEncoding enc;
  enc.dim = next;
  enc.h_diag = RealVector::Zero(enc.dim);
  enc.sector_of = RealVector::Zero(enc.dim);
  for (int i = 0; i < table.grid.size(); ++i) {
    for (int l = 0; l < layout.channels[i]; ++l) {
      enc.h_diag(layout.state_index(i, l)) = table.grid.omega(i);
    }
  }
  enc.sector_of = enc.h_diag;

  enc.b_ops.reserve(table.n_beta);
  for (int beta = 0; beta < table.n_beta; ++beta) {
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(2 * static_cast<std::size_t>(enc.dim));
    for (int i = 0; i < table.grid.size(); ++i) {
      for (int l = 0; l < layout.channels[i]; ++l) {
        const cplx g = table.g[i](beta, l);
        const Index idx = layout.state_index(i, l);
        // B~ = sum g sigma + h.c. with sigma = |v><omega,l|
        trips.emplace_back(0, idx, g);
        trips.emplace_back(idx, 0, std::conj(g));
      }
    }
    SparseMatrix b(enc.dim, enc.dim);
    b.setFromTriplets(trips.begin(), trips.end());
    enc.b_ops.push_back(std::move(b));
  }

  enc.init_state = Vector::Zero(enc.dim);
  enc.init_state(0) = 1.0;
  enc.init_index = 0;
  enc.layout = std::move(layout);
  return enc;
}

PositionBasisView::PositionBasisView(const EnvEncoding& enc, bool force_direct_transform)
    : layout_(enc.layout ? *enc.layout : SecondOrderLayout{FrequencyGrid(1, 1.0), {}, {}}) {
  if (!enc.layout) {
    throw std::invalid_argument(
        "PositionBasisView: encoding does not carry a second-order grid layout");
  }
  if (!layout_.uniform_channels()) {
    throw std::invalid_argument(
        "PositionBasisView: non-uniform channel count per frequency; the ring "
        "picture requires one state per (x, l)");
  }
  n_channels_ = layout_.channels.front();
  transform_ = std::make_shared<RingTransform>(layout_.grid.size(), force_direct_transform);

  const int n = layout_.grid.size();
  g_x_.reserve(static_cast<std::size_t>(enc.n_beta()) * n_channels_);
  for (int beta = 0; beta < enc.n_beta(); ++beta) {
    const Matrix b = enc.b_dense(beta);
    for (int l = 0; l < n_channels_; ++l) {
      Vector g_freq(n);
      for (int i = 0; i < n; ++i) g_freq(i) = b(0, layout_.state_index(i, l));
      g_x_.push_back(transform_->coupling_to_position(g_freq));
    }
  }
}

Vector PositionBasisView::channel_to_position(const Vector& env_vec, int channel) const {
  const int n = layout_.grid.size();
  Vector c(n);
  for (int i = 0; i < n; ++i) c(i) = env_vec(layout_.state_index(i, channel));
  return transform_->to_position(c);
}

void PositionBasisView::position_to_channel(const Vector& pos_amps, int channel,
                                            Vector& env_vec) const {
  const Vector c = transform_->to_frequency(pos_amps);
  const int n = layout_.grid.size();
  for (int i = 0; i < n; ++i) env_vec(layout_.state_index(i, channel)) = c(i);
}

RingZoneProjector dissipation_projector_second_order(const PositionBasisView& view, int x_t) {
  if (x_t < 0 || x_t >= view.n_sites()) {
    throw std::invalid_argument("dissipation projector: x_T must lie in [0, N-1]");
  }
  return RingZoneProjector{x_t + 1, view.n_sites() - 1};
}

Matrix ring_zone_projector_matrix(const PositionBasisView& view, const RingZoneProjector& zone) {
  const int n = view.n_sites();
  const Index dim = view.layout().base.back() + view.n_channels();
  Matrix p = Matrix::Zero(dim, dim);
  const int k_min = -(n - 1) / 2;
  for (int l = 0; l < view.n_channels(); ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (int x = std::max(zone.x_lo, 0); x <= std::min(zone.x_hi, n - 1); ++x) {
          // <omega_i|x><x|omega_j> with <x|omega_j> = e^{+2 pi i k_j x/N}/sqrt(N)
          const double phi = 2.0 * std::numbers::pi * (j - i) * x / n;
          acc += std::polar(1.0 / n, phi);
        }
        (void)k_min;
        p(view.layout().state_index(i, l), view.layout().state_index(j, l)) = acc;
      }
    }
  }
  return p;
}

EnvEncoding fourth_order_example_encoding(const FourthOrderCouplings& couplings) {
  const int n = couplings.grid.size();
  const int nb = couplings.n_beta();
  for (const auto& v : couplings.g1) {
    if (v.size() != n) throw std::invalid_argument("fourth-order encoding: g1 size mismatch");
  }
  for (const auto& v : couplings.g2) {
    if (v.size() != static_cast<std::size_t>(n) * n * n) {
      throw std::invalid_argument("fourth-order encoding: g2 size mismatch");
    }
  }

  EnvEncoding enc;
  enc.dim = 1 + n + static_cast<Index>(n) * n;
  enc.h_diag = RealVector::Zero(enc.dim);
  auto one_idx = [&](int k) { return 1 + k; };
  auto two_idx = [&](int k1, int k2) { return 1 + n + k1 * n + k2; };
  for (int k = 0; k < n; ++k) enc.h_diag(one_idx(k)) = couplings.grid.omega(k);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      enc.h_diag(two_idx(k1, k2)) = couplings.grid.omega(k1) + couplings.grid.omega(k2);
    }
  }
  enc.sector_of = enc.h_diag;

  for (int beta = 0; beta < nb; ++beta) {
    std::vector<Eigen::Triplet<cplx>> trips;
    for (int k = 0; k < n; ++k) {
      const cplx g = couplings.g1[beta](k);
      if (g != cplx(0.0)) {
        trips.emplace_back(0, one_idx(k), g);
        trips.emplace_back(one_idx(k), 0, std::conj(g));
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
          const cplx g = couplings.g2_at(beta, k, k1, k2);
          if (g != cplx(0.0)) {
            trips.emplace_back(one_idx(k), two_idx(k1, k2), g);
            trips.emplace_back(two_idx(k1, k2), one_idx(k), std::conj(g));
          }
        }
      }
    }
    SparseMatrix b(enc.dim, enc.dim);
    b.setFromTriplets(trips.begin(), trips.end());
    enc.b_ops.push_back(std::move(b));
  }

  enc.init_state = Vector::Zero(enc.dim);
  enc.init_state(0) = 1.0;
  enc.init_index = 0;
  return enc;
}

namespace {

/// Applies the ring transform along one axis of the flat (k, k1, k2) tensor.
/// sign_to_position = +1 transforms like a state index, -1 like a coupling index.
std::vector<cplx> transform_axis(const std::vector<cplx>& in, int n, int axis, int sign,
                                 const RingTransform& tr) {
  std::vector<cplx> out(in.size());
  const int strides[3] = {n * n, n, 1};
  const int stride = strides[axis];
  // iterate over all lines along `axis`
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int base = 0;
      if (axis == 0) base = a * n + b;
      else if (axis == 1) base = a * n * n + b;
      else base = a * n * n + b * n;
      Vector line(n);
      for (int k = 0; k < n; ++k) line(k) = in[base + k * stride];
      const Vector t = (sign > 0) ? tr.to_position(line) : tr.coupling_to_position(line);
      for (int x = 0; x < n; ++x) out[base + x * stride] = t(x);
    }
  }
  return out;
}

std::vector<cplx> inverse_transform_axis(const std::vector<cplx>& in, int n, int axis, int sign,
                                         const RingTransform& tr) {
  // inverse of transform_axis: conjugate-transform trick, since the maps are unitary
  std::vector<cplx> conj_in(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) conj_in[i] = std::conj(in[i]);
  auto t = transform_axis(conj_in, n, axis, sign, tr);
  for (auto& v : t) v = std::conj(v);
  return t;
}

}  // namespace

FourthOrderRingCouplings fourth_order_to_position(const FourthOrderCouplings& couplings) {
  const int n = couplings.grid.size();
  RingTransform tr(n);
  FourthOrderRingCouplings ring{couplings.grid, {}, {}};
  for (const auto& g1 : couplings.g1) {
    ring.g1_x.push_back(tr.coupling_to_position(g1));
  }
  for (const auto& g2 : couplings.g2) {
    // g_x = N^{-3/2} sum e^{+2 pi i (k x - k1 x1 - k2 x2)/N} g_k
    auto t = transform_axis(g2, n, 0, +1, tr);
    t = transform_axis(t, n, 1, -1, tr);
    t = transform_axis(t, n, 2, -1, tr);
    ring.g2_x.push_back(std::move(t));
  }
  return ring;
}

FourthOrderCouplings fourth_order_from_position(const FourthOrderRingCouplings& ring) {
  const int n = ring.grid.size();
  RingTransform tr(n);
  FourthOrderCouplings c{ring.grid, {}, {}};
  for (const auto& g1x : ring.g1_x) {
    // inverse of coupling_to_position = conjugated to_position round trip
    Vector conj_g(n);
    for (int i = 0; i < n; ++i) conj_g(i) = std::conj(g1x(i));
    Vector t = tr.to_frequency(conj_g);
    for (int i = 0; i < n; ++i) t(i) = std::conj(t(i));
    c.g1.push_back(std::move(t));
  }
  for (const auto& g2x : ring.g2_x) {
    auto t = inverse_transform_axis(g2x, n, 2, -1, tr);
    t = inverse_transform_axis(t, n, 1, -1, tr);
    t = inverse_transform_axis(t, n, 0, +1, tr);
    c.g2.push_back(std::move(t));
  }
  return c;
}

namespace {

Matrix heisenberg_b(const Matrix& b, const RealVector& h, double t) {
  Matrix out(b.rows(), b.cols());
  for (Index i = 0; i < b.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      out(i, j) = b(i, j) * std::polar(1.0, (h(i) - h(j)) * t);
    }
  }
  return out;
}

/// Tr[ B(t0)^v0 ... rho ... ] for a four-operator word with optional
/// reinitialisation P inserted between times t_gap and t_gap+1.
cplx four_time_value(const std::vector<Matrix>& b_at_t, const RealVector& /*h*/,
                     const std::array<int, 4>& nu, int gap, Index vac) {
  const Index d = b_at_t[0].rows();
  Matrix rho = Matrix::Zero(d, d);
  rho(vac, vac) = 1.0;
  for (int i = 3; i >= 0; --i) {
    if (i == gap) {
      const cplx tr = rho.trace();
      rho.setZero();
      rho(vac, vac) = tr;
    }
    if (nu[i] == 1) {
      rho = b_at_t[i] * rho;
    } else {
      rho = rho * b_at_t[i];
    }
  }
  return rho.trace();
}

}  // namespace

DeltaCheckReport fourth_order_delta_check(const FourthOrderCouplings& couplings, int x_e) {
  const int n = couplings.grid.size();
  if (x_e < 0 || x_e >= n) {
    throw std::invalid_argument("fourth_order_delta_check: x_e out of range");
  }
  DeltaCheckReport report;

  const FourthOrderRingCouplings ring = fourth_order_to_position(couplings);
  const int nb = couplings.n_beta();
  for (int beta = 0; beta < nb; ++beta) {
    for (int x = 0; x < n; ++x) {
      if (x > x_e) {
        report.support_violation =
            std::max(report.support_violation, std::abs(ring.g1_x[beta](x)));
      }
      for (int x1 = 0; x1 < n; ++x1) {
        for (int x2 = 0; x2 < n; ++x2) {
          const cplx v = ring.g2_x[beta][static_cast<std::size_t>((x * n + x1)) * n + x2];
          if (x2 > x_e) {
            report.support_violation = std::max(report.support_violation, std::abs(v));
          }
          if (x > x_e || x1 > x_e) {
            const cplx expected = (x == x1) ? ring.g1_x[beta](x2) : cplx(0.0);
            report.support_violation =
                std::max(report.support_violation, std::abs(v - expected));
          }
        }
      }
    }
  }

  // Probe the four independent orderings with every gap exceeding tau_E.
  const EnvEncoding enc = fourth_order_example_encoding(couplings);
  const double c = couplings.grid.speed();
  const double gap_time = (x_e + 2) / c;
  const std::array<double, 4> times = {3 * gap_time, 2 * gap_time, gap_time, 0.0};
  const std::array<std::array<int, 4>, 4> orderings = {{
      {1, 1, 1, 1},  // <v|B(t) B(t1) B(t2) B(t3)|v>
      {1, 0, 1, 1},  // <v|B(t1) B(t) B(t2) B(t3)|v>
      {1, 1, 0, 1},  // <v|B(t2) B(t) B(t1) B(t3)|v>
      {1, 0, 0, 1},  // <v|B(t2) B(t1) B(t) B(t3)|v>
  }};

  std::vector<std::vector<Matrix>> b_at_t(nb);
  for (int beta = 0; beta < nb; ++beta) {
    const Matrix b = enc.b_dense(beta);
    for (double t : times) b_at_t[beta].push_back(heisenberg_b(b, enc.h_diag, t));
  }

  for (int beta = 0; beta < nb; ++beta) {
    for (const auto& nu : orderings) {
      const cplx plain = four_time_value(b_at_t[beta], enc.h_diag, nu, -1, 0);
      for (int gap = 0; gap <= 2; ++gap) {
        const cplx cut = four_time_value(b_at_t[beta], enc.h_diag, nu, gap, 0);
        report.max_delta = std::max(report.max_delta, std::abs(plain - cut));
      }
    }
  }
  return report;
}

}  // namespace oqs
