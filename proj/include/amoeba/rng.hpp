#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace amoeba {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// One philox2x64-10 block: two 64-bit words of output per counter value.
struct Philox2x64Block {
  std::uint64_t w0, w1;
};

inline Philox2x64Block philox2x64_10(std::uint64_t c0, std::uint64_t c1, std::uint64_t key) {
  constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
  constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;
  std::uint64_t x0 = c0, x1 = c1, k = key;
  for (int round = 0; round < 10; ++round) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(kMul) * x0;
    const std::uint64_t lo = static_cast<std::uint64_t>(prod);
    const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
    x0 = hi ^ k ^ x1;
    x1 = lo;
    k += kWeyl;
  }
  return {x0, x1};
}

}  // namespace detail

// Counter-based stream: draws are a pure function of (seed, stream_id, counter),
// so replay is exact no matter how work is scheduled across threads.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed),
        stream_id_(stream_id),
        key_(detail::splitmix64(seed ^ detail::splitmix64(stream_id))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream for an independent sub-task; ignores this stream's position.
  RngStream derive(std::uint64_t sub_id) const {
    return RngStream(seed_, detail::splitmix64(stream_id_ * 0x9E3779B97F4A7C15ULL + sub_id + 1));
  }

  std::uint64_t next_u64() {
    if (cached_) {
      cached_ = false;
      return cache_;
    }
    const auto block = detail::philox2x64_10(counter_++, stream_id_, key_);
    cache_ = block.w1;
    cached_ = true;
    return block.w0;
  }

  // Uniform on (0, 1]; never zero so it is safe under log().
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard complex Gaussian with E|z|^2 = 1: |z|^2 ~ Exp(1), phase uniform.
  std::complex<double> next_complex_gaussian() {
    const double r = std::sqrt(-std::log(next_unit()));
    const double phi = 2.0 * std::numbers::pi * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t cache_ = 0;
  bool cached_ = false;
};

}  // namespace amoeba
