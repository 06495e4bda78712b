#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace fracpass {

/// Philox4x32-10 block function (Salmon et al., SC'11): maps a 128-bit
/// counter and 64-bit key to 128 pseudo-random bits.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                      std::array<std::uint32_t, 2> key) noexcept;

/// Independent substream families. The tag lands in the top byte of the
/// 64-bit substream id so that indices of different families never collide.
enum class StreamTag : std::uint8_t {
    gaussian_block = 1,  // normals feeding one circulant FFT (two paths)
    bridge_uniform = 2,  // per-path uniforms of the bridge detector
    cholesky_path = 3,   // normals of the Cholesky oracle
    scratch = 4,         // tests and ad-hoc experiments
};

[[nodiscard]] constexpr std::uint64_t substream_id(StreamTag tag, std::uint64_t index) noexcept {
    return (static_cast<std::uint64_t>(tag) << 56) | (index & 0x00FF'FFFF'FFFF'FFFFULL);
}

/// Counter-based generator: the output stream is a pure function of
/// (seed, substream, position). Satisfies UniformRandomBitGenerator, so it
/// plugs into the <random> distributions, and also offers random access.
class CounterRng {
public:
    using result_type = std::uint32_t;

    CounterRng(std::uint64_t seed, std::uint64_t substream) noexcept;
    CounterRng(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept
        : CounterRng(seed, substream_id(tag, index)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1) attached to `position`; does not
    /// disturb the sequential state.
    [[nodiscard]] double uniform_at(std::uint64_t position) const noexcept;

    /// Jump the sequential stream to the start of 128-bit block `position`.
    void seek(std::uint64_t position) noexcept;

private:
    [[nodiscard]] std::array<std::uint32_t, 4> block(std::uint64_t position) const noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t substream_;
    std::uint64_t position_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4;
};

/// SplitMix64 finaliser, used to derive child seeds from (seed, label).
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (label + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace fracpass
