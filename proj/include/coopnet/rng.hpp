#ifndef COOPNET_RNG_HPP
#define COOPNET_RNG_HPP

#include <cmath>
#include <cstdint>

namespace coopnet {

namespace detail {

// Stafford's Mix13 finalizer: bijective 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based random stream keyed by (seed, stream index).
///
/// The n-th draw depends only on (seed, stream, n), so trial streams can be
/// recreated on any worker and in any order with identical results. Stream
/// derivation and per-draw output both go through a full 64-bit avalanche,
/// giving statistically independent streams for distinct indices.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream)
        : key_(detail::mix64(seed ^ detail::mix64(stream ^ 0x6a09e667f3bcc909ULL))) {}

    std::uint64_t next_u64() {
        ctr_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(key_ ^ detail::mix64(ctr_));
    }

    /// Uniform on (0,1]; never returns 0, so -log() below is finite.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Unit-mean exponential draw (|h|^2 under Rayleigh fading).
    double next_exp() { return -std::log(next_unit()); }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

/// Derives a child seed for a named substream (per-K rows of a sweep, etc.).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return detail::mix64(seed ^ (0xd1b54a32d192ed03ULL * (salt + 1)));
}

} // namespace coopnet

#endif
