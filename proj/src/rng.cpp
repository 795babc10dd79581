#include "zicount/rng.hpp"

namespace zicount {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kLeap = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kSub = 0x8BB84B93962EACC9ULL;

// SplitMix64 finalizer: a 64-bit bijective mixer.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t key, std::uint64_t stream_id,
                     std::uint64_t substream_id)
    : key_(key), stream_id_(stream_id), substream_id_(substream_id) {
  std::uint64_t d = mix64(key + kGolden);
  d = mix64(d ^ (stream_id + kLeap));
  d = mix64(d ^ (substream_id + kSub));
  base_ = d;
}

std::uint64_t RngStream::next_u64() {
  ++counter_lo_;
  if (counter_lo_ == 0) ++counter_hi_;
  return mix64(base_ + counter_lo_ * kGolden + counter_hi_ * kLeap);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open_double() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace zicount
