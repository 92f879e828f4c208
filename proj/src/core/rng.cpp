#include "core/rng.hpp"

#include <cmath>

namespace dirac {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// 53-bit mantissa in [0, 1)
inline double to_unit(std::uint64_t u) { return static_cast<double>(u >> 11) * 0x1.0p-53; }

}  // namespace

PhiloxBlock philox4x32(std::uint64_t key, std::uint64_t stream, std::uint64_t block) {
  std::uint32_t c0 = static_cast<std::uint32_t>(block);
  std::uint32_t c1 = static_cast<std::uint32_t>(block >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(stream);
  std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);

  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c0, hi0, lo0);
    mulhilo(kPhiloxM1, c2, hi1, lo1);
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return PhiloxBlock{{c0, c1, c2, c3}};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double NormalStream::next() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  const PhiloxBlock b = philox4x32(seed_, stream_, block_++);
  const std::uint64_t ua =
      static_cast<std::uint64_t>(b.w[0]) | (static_cast<std::uint64_t>(b.w[1]) << 32);
  const std::uint64_t ub =
      static_cast<std::uint64_t>(b.w[2]) | (static_cast<std::uint64_t>(b.w[3]) << 32);
  const double u1 = 1.0 - to_unit(ua);  // (0, 1], keeps log() finite
  const double u2 = to_unit(ub);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 6.283185307179586476925286766559 * u2;
  cached_ = r * std::sin(angle);
  have_cached_ = true;
  return r * std::cos(angle);
}

double NormalStream::next_uniform() {
  const PhiloxBlock b = philox4x32(seed_, stream_, block_++);
  const std::uint64_t u =
      static_cast<std::uint64_t>(b.w[0]) | (static_cast<std::uint64_t>(b.w[1]) << 32);
  return to_unit(u);
}

std::uint64_t NormalStream::next_u64() {
  const PhiloxBlock b = philox4x32(seed_, stream_, block_++);
  return static_cast<std::uint64_t>(b.w[0]) | (static_cast<std::uint64_t>(b.w[1]) << 32);
}

}  // namespace dirac
