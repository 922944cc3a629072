#pragma once
#include <cstdint>
#include <cmath>

namespace sglab {

// Counter-keyed xoshiro256++ streams. Each (master_seed, replica, slab) pair
// owns an independent stream derived through splitmix64 key mixing, so draws
// never depend on scheduling or on how replicas are partitioned over workers.

inline uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  RngStream(uint64_t master_seed, uint64_t stream_a, uint64_t stream_b) {
    uint64_t s = master_seed;
    (void)splitmix64(s);
    s ^= 0x517cc1b727220a95ULL * (stream_a + 1);
    (void)splitmix64(s);
    s ^= 0x2545f4914f6cdd1dULL * (stream_b + 1);
    for (int i = 0; i < 4; i++) st_[i] = splitmix64(s);
    if ((st_[0] | st_[1] | st_[2] | st_[3]) == 0) st_[0] = 1;  // never all-zero
    have_spare_ = false;
    spare_ = 0.0;
  }

  uint64_t next_u64() {
    auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const uint64_t result = rotl(st_[0] + st_[3], 23) + st_[0];
    const uint64_t t = st_[1] << 17;
    st_[2] ^= st_[0];
    st_[3] ^= st_[1];
    st_[1] ^= st_[2];
    st_[0] ^= st_[3];
    st_[2] ^= t;
    st_[3] = rotl(st_[3], 45);
    return result;
  }

  // uniform in (0,1); 53-bit mantissa, never exactly 0
  double uniform() {
    return (double)((next_u64() >> 11) + 1ULL) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Box-Muller with cached spare (deterministic per stream)
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // integer in [0, n)
  uint64_t below(uint64_t n) { return next_u64() % n; }

 private:
  uint64_t st_[4];
  bool have_spare_;
  double spare_;
};

}  // namespace sglab
