#pragma once

#include <complex>
#include <cstdint>

namespace quatmod {

// splitmix64; deterministic across platforms, unlike <random> distributions.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double real01() { return double(next() >> 11) * 0x1.0p-53; }

    double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

    // uniform integer in [lo, hi] inclusive
    long integer(long lo, long hi) {
        uint64_t span = uint64_t(hi - lo) + 1;
        return lo + long(next() % span);
    }

    std::complex<double> complexIn(double radius) {
        return {real(-radius, radius), real(-radius, radius)};
    }

  private:
    uint64_t state_;
};

}  // namespace quatmod
