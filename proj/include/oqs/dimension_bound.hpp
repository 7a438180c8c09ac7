#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace oqs {

using BigInt = boost::multiprecision::cpp_int;

struct DimensionBound {
  BigInt d_max;  // [(N_omega N_beta)^{floor(n/2)+1} - 1] / [N_omega N_beta - 1]
  int n_qubits;  // ceil(log2 d_max)
};

/// Exact relevant-state-space bound and the matching environment qubit count.
/// N_omega N_beta = 1 degenerates to floor(n/2) + 1 and is handled explicitly.
DimensionBound dimension_bound(int n, std::uint64_t n_omega, std::uint64_t n_beta);

int ceil_log2(const BigInt& value);

}  // namespace oqs
