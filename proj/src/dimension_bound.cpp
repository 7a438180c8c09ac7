#include "oqs/dimension_bound.hpp"

#include <stdexcept>

namespace oqs {

int ceil_log2(const BigInt& value) {
  if (value <= 0) throw std::invalid_argument("ceil_log2: value must be positive");
  if (value == 1) return 0;
  const unsigned bit = boost::multiprecision::msb(value);  // floor(log2)
  const BigInt pow2 = BigInt(1) << bit;
  return static_cast<int>(bit) + (value == pow2 ? 0 : 1);
}

DimensionBound dimension_bound(int n, std::uint64_t n_omega, std::uint64_t n_beta) {
  if (n < 1) throw std::invalid_argument("dimension_bound: n must be >= 1");
  if (n_omega < 1 || n_beta < 1) {
    throw std::invalid_argument("dimension_bound: counts must be >= 1");
  }
  const BigInt k = BigInt(n_omega) * BigInt(n_beta);
  const int words = n / 2;
  BigInt d;
  if (k == 1) {
    d = words + 1;  // geometric series degenerates to the word count
  } else {
    d = (boost::multiprecision::pow(k, static_cast<unsigned>(words + 1)) - 1) / (k - 1);
  }
  return DimensionBound{d, ceil_log2(d)};
}

}  // namespace oqs
