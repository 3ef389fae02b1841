#pragma once

#include <cmath>
#include <cstdint>

namespace boa {

// Counter-based generator built on the splitmix64 mixer. Output depends only
// on (key, counter), so identical seeds reproduce across platforms and the
// stream can be split by key without shared state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x1F123BB5159A55E5ull));
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return splitmix64(key_ ^ splitmix64(counter_++)); }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Box-Muller; burns two uniforms per call regardless of sigma so streams
  // stay aligned across configurations.
  double next_gaussian() {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace boa
