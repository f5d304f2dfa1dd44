#pragma once

#include <cstdint>
#include <random>

namespace relutil {

// Identifies a reproducible random stream. Identical (seed, stream) pairs
// always produce identical output sequences, on any thread or worker count.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    // Derives an independent substream, e.g. one per realization or path
    // block. Children of distinct (stream, index) pairs do not collide in
    // practice (64-bit mixed space).
    [[nodiscard]] RngSeed child(std::uint64_t index) const;
};

std::uint64_t splitmix64(std::uint64_t& state);

// Seeded generator with explicitly documented algorithms for every
// distribution we draw from, so that sequences are identical across
// standard-library implementations:
//   engine   mt19937_64, seeded by splitmix64-mixing (seed, stream)
//   uniform  53-bit mantissa scaling, [0, 1)
//   normal   Box-Muller with cached spare
//   integers rejection sampling, no modulo bias
class Rng {
  public:
    explicit Rng(RngSeed s);

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1).
    double uniform();

    // Uniform on [lo, hi).
    double uniform_in(double lo, double hi);

    // Standard normal.
    double normal();

    // Uniform on {0, 1, ..., bound-1}; bound must be positive.
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace relutil
