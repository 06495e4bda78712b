#include "fracpass/rng.hpp"

namespace fracpass {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t substream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      substream_(substream) {}

std::array<std::uint32_t, 4> CounterRng::block(std::uint64_t position) const noexcept {
    return philox4x32({static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(position >> 32),
                       static_cast<std::uint32_t>(substream_), static_cast<std::uint32_t>(substream_ >> 32)},
                      key_);
}

CounterRng::result_type CounterRng::operator()() noexcept {
    if (used_ == 4) {
        buffer_ = block(position_++);
        used_ = 0;
    }
    return buffer_[used_++];
}

double CounterRng::uniform_at(std::uint64_t position) const noexcept {
    const auto bits = block(position);
    const std::uint64_t mantissa = (static_cast<std::uint64_t>(bits[0] >> 5) << 26) | (bits[1] >> 6);
    // (m + 0.5) / 2^53 never hits 0 or 1.
    return (static_cast<double>(mantissa) + 0.5) * 0x1.0p-53;
}

void CounterRng::seek(std::uint64_t position) noexcept {
    position_ = position;
    used_ = 4;
}

}  // namespace fracpass
