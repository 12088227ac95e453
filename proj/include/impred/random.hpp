#pragma once

#include <cstdint>

namespace impred {

// splitmix64 finalizer: a full-avalanche bijection on 64 bits.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Order-dependent combiner for deriving stream ids from (cell, rep, ...) keys.
inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a + 0x9E3779B97F4A7C15ull + (b << 1));
}

// Counter-based uniform stream: the t-th variate is a pure function of
// (seed, stream_id, t), so any position can be addressed directly and a run
// split across workers reproduces the serial sequence bit for bit.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed, std::uint64_t stream_id = 0,
                         std::uint64_t position = 0)
      : seed_(seed), stream_id_(stream_id), pos_(position) {
    // Two chained avalanche rounds separate the key halves; per-draw mixing
    // below adds the third.
    key_ = mix64(seed_ + 0xA0761D6478BD642Full);
    key_ = mix64(key_ ^ (stream_id_ + 0xE7037ED1A0B428DBull));
  }

  std::uint64_t next_word() { return mix64(key_ ^ (pos_++ + 0x8EBC6AF09C88C6E3ull)); }

  // Strictly inside (0,1): centered 53-bit lattice, min 2^-54, max 1 - 2^-54.
  double next() {
    return (static_cast<double>(next_word() >> 11) + 0.5) * 0x1.0p-53;
  }

  void skip(std::uint64_t n) { pos_ += n; }
  void seek(std::uint64_t position) { pos_ = position; }
  std::uint64_t position() const { return pos_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Same generator repositioned; used to stride draws across workers.
  UniformStream at(std::uint64_t position) const {
    return UniformStream(seed_, stream_id_, position);
  }

  // Independent stream derived from this one's identity.
  UniformStream substream(std::uint64_t id) const {
    return UniformStream(seed_, hash_combine(stream_id_, id));
  }

 private:
  std::uint64_t seed_, stream_id_, pos_, key_;
};

}  // namespace impred
