#pragma once

// Randomized and exhaustive agreement checks between the passage-time side
// and the separator side of the three dualities. Shared by the CLI and the
// acceptance binary.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nfpp/clusters.hpp"
#include "nfpp/config.hpp"
#include "nfpp/duality.hpp"
#include "nfpp/fpp.hpp"
#include "nfpp/parallel.hpp"
#include "nfpp/quad.hpp"

namespace nfpp {

inline constexpr std::uint64_t kQuadStream = 0xd1;
inline constexpr std::uint64_t kCircuitStream = 0xd2;

struct DualityReport {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::size_t skipped = 0;
  std::vector<std::string> examples;  // first few mismatches, for diagnostics

  double skip_rate() const {
    const std::size_t total = checked + skipped;
    return total ? static_cast<double>(skipped) / static_cast<double>(total) : 0.0;
  }
};

inline constexpr double kDualityPs[] = {0.2, 0.35, 0.5, 0.65, 0.8};

/// Parallelogram with sides a, b in [4, 12] and marks at four random
/// counterclockwise positions of its boundary circuit.
inline DiscreteQuad random_quad(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> side(4, 12);
  const int a = side(rng), b = side(rng);
  DiscreteQuad q = parallelogram_quad({0, 0}, a, b);
  const QuadLayout L = layout_quad(q);
  const std::size_t n = L.circuit.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = i;
  std::shuffle(pos.begin(), pos.end(), rng);
  pos.resize(4);
  std::sort(pos.begin(), pos.end());
  for (int k = 0; k < 4; ++k) q.marks[k] = L.circuit[pos[k]];
  return q;
}

namespace detail {

inline void merge_report(DualityReport& into, const DualityReport& r) {
  into.checked += r.checked;
  into.mismatches += r.mismatches;
  into.skipped += r.skipped;
  for (const auto& e : r.examples)
    if (into.examples.size() < 5) into.examples.push_back(e);
}

}  // namespace detail

/// Min crossing time of a quad versus the max number of disjoint yellow
/// crossings in the other direction.
inline DualityReport verify_quad_duality(std::size_t samples, std::uint64_t seed, unsigned threads) {
  const auto parts = parallel_map<DualityReport>(samples, threads, [&](std::size_t t) {
    DualityReport r;
    std::mt19937_64 rng(derive_seed(seed, kQuadStream, t));
    const DiscreteQuad q = random_quad(rng);
    const double p = kDualityPs[t % 5];
    const Configuration c = Configuration::sample(bounding_window(q.sites, 2), p, rng());
    const int T = quad_passage_time(c, q);
    const int M = max_disjoint_yellow_crossings(c, q);
    ++r.checked;
    if (T != M) {
      ++r.mismatches;
      r.examples.push_back("quad trial " + std::to_string(t) + ": T=" + std::to_string(T) + " flow=" + std::to_string(M));
    }
    return r;
  });
  DualityReport out;
  for (const auto& r : parts) detail::merge_report(out, r);
  return out;
}

inline constexpr double kCirclePs[] = {0.2, 0.3, 0.4, 0.5};

/// T(C, C') versus the peeled count of disjoint separating circuits. An
/// instance is a 20 x 20 window at p in {0.2, 0.3, 0.4, 0.5}: C is the blue
/// cluster of a random blue site of the central 10 x 10 block, C' the cluster
/// of a random blue site outside C within graph distance 6 of it. When a
/// cluster reaches the window edge or the peeling escapes, the same
/// configuration is re-examined on windows padded by 10 and then 40 sites
/// (colours do not depend on the window). Skipped: no such pair, C and C'
/// joined in a larger window, or still indeterminate at the largest padding.
inline DualityReport verify_circuit_duality(std::size_t samples, std::uint64_t seed, unsigned threads) {
  const auto parts = parallel_map<DualityReport>(samples, threads, [&](std::size_t t) {
    DualityReport r;
    std::mt19937_64 rng(derive_seed(seed, kCircuitStream, t));
    const Window base(0, 19, 0, 19);
    const double p = kCirclePs[t % 4];
    const std::uint64_t cfg_seed = rng();
    const Configuration c0 = Configuration::sample(base, p, cfg_seed);
    const ClusterLabeling L0 = label_clusters(c0, Color::kBlue);
    std::vector<std::size_t> centre;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const std::size_t row = i / 20, col = i % 20;
      if (row >= 5 && row < 15 && col >= 5 && col < 15 && c0.blue(i)) centre.push_back(i);
    }
    if (centre.empty()) {
      ++r.skipped;
      return r;
    }
    const std::size_t first = centre[rng() % centre.size()];
    std::vector<std::size_t> near;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (c0.blue(i) && L0.label[i] != L0.label[first] && graph_distance(base.site(i), base.site(first)) <= 6)
        near.push_back(i);
    if (near.empty()) {
      ++r.skipped;
      return r;
    }
    const SiteCoord sa = base.site(first), sb = base.site(near[rng() % near.size()]);
    for (const int pad : {0, 10, 40}) {
      const Window w(-pad, 19 + pad, -pad, 19 + pad);
      const Configuration c = Configuration::sample(w, p, cfg_seed);
      const ClusterLabeling L = label_clusters(c, Color::kBlue);
      const std::int32_t a = L.at(sa), b = L.at(sb);
      if (a == b) break;  // joined outside the smaller window
      bool edge = false;
      for (std::size_t i = 0; i < w.size() && !edge; ++i) edge = (L.label[i] == a || L.label[i] == b) && w.on_edge(i);
      if (edge) continue;
      const SeparatingCircuits S = max_disjoint_separating_circuits(c, L.sites_of(a), L.sites_of(b));
      if (!S.determinate) continue;
      const int T = passage_time(c, L.mask_of(a), L.mask_of(b), nullptr, false).time;
      ++r.checked;
      if (T != S.count) {
        ++r.mismatches;
        r.examples.push_back("circuit trial " + std::to_string(t) + ": T=" + std::to_string(T) +
                             " circuits=" + std::to_string(S.count));
      }
      return r;
    }
    ++r.skipped;
    return r;
  });
  DualityReport out;
  for (const auto& r : parts) detail::merge_report(out, r);
  return out;
}

/// The strip fixture: four rows of a horizontal strip cut to six columns.
/// The end sites `a` (left) and `b` (right) are forced blue; the 4 x 4 block
/// between them is free.
struct StripFixture {
  Window window{-1, 6, -1, 4};
  std::vector<SiteCoord> block;  // the 16 free sites, in window order
  SiteCoord a, b;
  std::vector<SiteCoord> region;  // block plus the two end sites

  StripFixture() {
    for (int row = 0; row < 4; ++row)
      for (int col = 1; col <= 4; ++col) block.push_back({col - floordiv2(row), row});
    a = {0 - floordiv2(1), 1};
    b = {5 - floordiv2(2), 2};
    region = block;
    region.push_back(a);
    region.push_back(b);
    std::sort(region.begin(), region.end());
  }

  Configuration coloring(std::uint32_t bits) const {
    std::vector<std::uint8_t> m(window.size(), 0);
    for (std::size_t k = 0; k < block.size(); ++k) m[window.index(block[k])] = (bits >> k) & 1u;
    m[window.index(a)] = 1;
    m[window.index(b)] = 1;
    return Configuration::from_colors(window, m);
  }
};

/// Passage time inside the fixture versus the exhaustive maximum family of
/// disjoint yellow separators, over all 2^16 colourings of the block.
inline DualityReport verify_strip_duality(unsigned threads) {
  const StripFixture F;
  const SiteMask region = sites_mask(F.window, F.region);
  const std::size_t total = std::size_t{1} << F.block.size();
  const auto parts = parallel_map<DualityReport>(total, threads, [&](std::size_t bits) {
    DualityReport r;
    const Configuration c = F.coloring(static_cast<std::uint32_t>(bits));
    SiteMask A(F.window.size(), 0), B(F.window.size(), 0);
    A[F.window.index(F.a)] = 1;
    B[F.window.index(F.b)] = 1;
    const int T = passage_time(c, A, B, &region, false).time;
    const int S = strip_separator_count_bruteforce(c, {F.a}, {F.b}, F.region);
    ++r.checked;
    if (T != S) {
      ++r.mismatches;
      r.examples.push_back("strip colouring " + std::to_string(bits) + ": T=" + std::to_string(T) +
                           " separators=" + std::to_string(S));
    }
    return r;
  });
  DualityReport out;
  for (const auto& r : parts) detail::merge_report(out, r);
  return out;
}

}  // namespace nfpp
