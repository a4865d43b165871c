#pragma once

// SplitMix64 stream with Box-Muller Gaussians.
//
// The generator and the uniform-to-Gaussian transform are fixed here (rather
// than delegating to std:: distributions) so that a seed produces the same
// matrix entries, bit for bit, on every platform and standard library.

#include <cstdint>

namespace spiked {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1): 53-bit mantissa, offset half an ulp
    // so log() below never sees zero.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // One Gaussian per pair of uniforms (Box-Muller, cosine branch only).
    double next_gaussian();

  private:
    std::uint64_t state_;
};

enum class EntryLaw { gaussian, rademacher, uniform };

// Mean zero, variance one draw under the given law. The uniform law is on
// [-sqrt(3), sqrt(3)].
double draw_entry(SplitMix64& rng, EntryLaw law);

}  // namespace spiked
