#pragma once

// Bernoulli site configurations. Every site carries a uniform drawn from a
// keyed hash of (seed, x, y), so the colouring does not depend on evaluation
// order and one seed couples all values of p monotonically.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "nfpp/errors.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/window.hpp"

namespace nfpp {

inline constexpr double kCriticalP = 0.5;

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for trial `index` of stream `stream` under a master seed. Streams keep
/// unrelated uses of the same master seed apart.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ (stream * 0xd1b54a32d192ed03ULL)) + index);
}

/// Uniform in (0,1) attached to site (x, y).
inline constexpr double site_uniform(std::uint64_t seed, int x, int y) {
  const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                            static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
  const std::uint64_t h = splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dULL) ^ key);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

class Configuration {
 public:
  Configuration() = default;

  static Configuration sample(const Window& w, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("sample: p must lie in [0,1]");
    Configuration c(w, p, seed, true);
    for (int r = 0; r < w.height(); ++r) {
      const int y = w.row_min() + r;
      const int x0 = w.col_min() - floordiv2(y);
      const std::size_t base = static_cast<std::size_t>(r) * w.width();
      for (int k = 0; k < w.width(); ++k)
        if (site_uniform(seed, x0 + k, y) <= p) c.set_bit(base + k);
    }
    return c;
  }

  /// Hand-built colouring; `blue[i]` is indexed like the window.
  static Configuration from_colors(const Window& w, const std::vector<std::uint8_t>& blue, double p = 0.5) {
    if (blue.size() != w.size()) throw ArgumentError("from_colors: size mismatch");
    Configuration c(w, p, 0, false);
    for (std::size_t i = 0; i < blue.size(); ++i)
      if (blue[i]) c.set_bit(i);
    return c;
  }

  /// Same uniforms thresholded at p2.
  Configuration recolor(double p2) const {
    if (!seeded_) throw ArgumentError("recolor: configuration has no uniforms");
    if (p2 == p_) return *this;
    return sample(window_, p2, seed_);
  }

  const Window& window() const { return window_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  bool seeded() const { return seeded_; }

  bool blue(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1ULL; }
  bool blue(SiteCoord v) const { return blue(window_.index(v)); }
  int weight(std::size_t i) const { return blue(i) ? 0 : 1; }
  int weight(SiteCoord v) const { return weight(window_.index(v)); }
  double uniform(SiteCoord v) const { return site_uniform(seed_, v.x, v.y); }

  std::size_t count_blue() const {
    std::size_t n = 0;
    for (const std::uint64_t b : bits_) n += static_cast<std::size_t>(std::popcount(b));
    return n;
  }
  std::vector<std::uint8_t> blue_mask() const {
    std::vector<std::uint8_t> m(window_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = blue(i) ? 1 : 0;
    return m;
  }
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.window_ == b.window_ && a.bits_ == b.bits_;
  }

  // Binary dump, little-endian:
  //   8 bytes  magic "NFPPCFG1"
  //   4 x i32  col_min col_max row_min row_max
  //   f64      p
  //   u64      seed
  //   u64[]    bitmap words, site i at bit (i mod 64) of word i/64,
  //            sites row-major in offset layout (row = y, col = x + floor(y/2))
  void dump(std::ostream& os) const {
    os.write("NFPPCFG1", 8);
    const std::int32_t b[4] = {window_.col_min(), window_.col_max(), window_.row_min(), window_.row_max()};
    for (const std::int32_t v : b) put_le(os, static_cast<std::uint32_t>(v), 4);
    put_le(os, std::bit_cast<std::uint64_t>(p_), 8);
    put_le(os, seed_, 8);
    for (const std::uint64_t wd : bits_) put_le(os, wd, 8);
  }
  static Configuration load(std::istream& is) {
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, "NFPPCFG1", 8) != 0) throw ArgumentError("load: bad magic");
    std::int32_t b[4];
    for (std::int32_t& v : b) v = static_cast<std::int32_t>(static_cast<std::uint32_t>(get_le(is, 4)));
    const double p = std::bit_cast<double>(get_le(is, 8));
    const std::uint64_t seed = get_le(is, 8);
    Configuration c(Window(b[0], b[1], b[2], b[3]), p, seed, true);
    for (std::uint64_t& wd : c.bits_) wd = get_le(is, 8);
    if (!is) throw ArgumentError("load: truncated stream");
    return c;
  }

 private:
  Configuration(const Window& w, double p, std::uint64_t seed, bool seeded)
      : window_(w), p_(p), seed_(seed), seeded_(seeded), bits_((w.size() + 63) / 64, 0) {}
  void set_bit(std::size_t i) { bits_[i >> 6] |= 1ULL << (i & 63); }

  static void put_le(std::ostream& os, std::uint64_t v, int n) {
    for (int k = 0; k < n; ++k) os.put(static_cast<char>((v >> (8 * k)) & 0xff));
  }
  static std::uint64_t get_le(std::istream& is, int n) {
    std::uint64_t v = 0;
    for (int k = 0; k < n; ++k) {
      const int ch = is.get();
      if (ch == std::char_traits<char>::eof()) throw ArgumentError("load: truncated stream");
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(ch)) << (8 * k);
    }
    return v;
  }

  Window window_;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
  bool seeded_ = false;
  std::vector<std::uint64_t> bits_;
};

}  // namespace nfpp
