#include "relutil/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relutil {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RngSeed RngSeed::child(std::uint64_t index) const {
    std::uint64_t st = stream ^ (0xd1b54a32d192ed03ULL * (index + 1));
    return RngSeed{seed, splitmix64(st)};
}

Rng::Rng(RngSeed s) {
    std::uint64_t st = s.seed;
    std::uint64_t a = splitmix64(st);
    st = a ^ (s.stream + 0x9e3779b97f4a7c15ULL);
    gen_.seed(splitmix64(st));
}

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_in(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Rng::below: bound must be positive");
    }
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t rem = (kMax % bound + 1) % bound; // 2^64 mod bound
    std::uint64_t limit = 0 - rem;                  // largest multiple of bound, mod 2^64
    std::uint64_t x = next_u64();
    while (rem != 0 && x >= limit) {
        x = next_u64();
    }
    return x % bound;
}

} // namespace relutil
