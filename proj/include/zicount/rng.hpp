#pragma once

#include <cstdint>

namespace zicount {

/// Counter-based random stream. The output sequence is a pure function of
/// (key, stream_id, substream_id, counter), so any (scenario, replication)
/// pair owns an independent substream and results do not depend on thread
/// count or scheduling. Streams with any differing field produce
/// statistically independent sequences.
class RngStream {
 public:
  RngStream(std::uint64_t key, std::uint64_t stream_id, std::uint64_t substream_id);

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform on (0, 1); safe to feed into logs and inverse CDFs.
  double next_open_double();

  std::uint64_t key() const { return key_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t substream_id() const { return substream_id_; }
  std::uint64_t counter_lo() const { return counter_lo_; }
  std::uint64_t counter_hi() const { return counter_hi_; }

 private:
  std::uint64_t key_;
  std::uint64_t stream_id_;
  std::uint64_t substream_id_;
  std::uint64_t counter_lo_ = 0;
  std::uint64_t counter_hi_ = 0;
  std::uint64_t base_;  // digest of (key, stream, substream)
};

}  // namespace zicount
