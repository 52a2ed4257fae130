#pragma once

// Finite rectangular windows of the lattice. Storage is row-major in "odd-r"
// offset form: row = y, col = x + floor(y/2). Within a row the index grows
// with x and rows grow with y, so index order is exactly the lexicographic
// (y, x) site order and ties can be broken by comparing indices.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nfpp/errors.hpp"
#include "nfpp/lattice.hpp"

namespace nfpp {

inline constexpr int floordiv2(int y) { return y >= 0 ? y / 2 : -((-y + 1) / 2); }

inline constexpr std::size_t kNoSite = static_cast<std::size_t>(-1);

class Window {
 public:
  Window() = default;
  Window(int col_min, int col_max, int row_min, int row_max)
      : col_min_(col_min), col_max_(col_max), row_min_(row_min), row_max_(row_max) {
    if (col_max < col_min || row_max < row_min) throw ArgumentError("window: empty index range");
    width_ = col_max - col_min + 1;
    height_ = row_max - row_min + 1;
    const double n = static_cast<double>(width_) * static_cast<double>(height_);
    if (n > 4.0e9) throw CapacityError("window: " + std::to_string(n) + " sites exceeds capacity");
  }

  /// Smallest window whose fully-covered plane rectangle contains `box`
  /// enlarged by `margin` on every side.
  static Window covering(const AxisBox& box, double margin = 0.0) {
    const int r0 = static_cast<int>(std::floor((box.ymin() - margin) / kRowHeight));
    const int r1 = static_cast<int>(std::ceil((box.ymax() + margin) / kRowHeight));
    const int c0 = static_cast<int>(std::floor(box.xmin() - margin - 0.5));
    const int c1 = static_cast<int>(std::ceil(box.xmax() + margin));
    return Window(c0, c1, r0, r1);
  }

  int col_min() const { return col_min_; }
  int col_max() const { return col_max_; }
  int row_min() const { return row_min_; }
  int row_max() const { return row_max_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }

  bool contains(SiteCoord v) const {
    const int col = v.x + floordiv2(v.y);
    return v.y >= row_min_ && v.y <= row_max_ && col >= col_min_ && col <= col_max_;
  }
  std::size_t index(SiteCoord v) const {
    const int col = v.x + floordiv2(v.y);
    return static_cast<std::size_t>(v.y - row_min_) * width_ + static_cast<std::size_t>(col - col_min_);
  }
  std::size_t index_or_none(SiteCoord v) const { return contains(v) ? index(v) : kNoSite; }
  SiteCoord site(std::size_t i) const {
    const int row = static_cast<int>(i / width_) + row_min_;
    const int col = static_cast<int>(i % width_) + col_min_;
    return {col - floordiv2(row), row};
  }
  bool on_edge(std::size_t i) const {
    const std::size_t r = i / width_, c = i % width_;
    return r == 0 || c == 0 || r + 1 == static_cast<std::size_t>(height_) || c + 1 == static_cast<std::size_t>(width_);
  }

  /// Plane rectangle every point of which lies in a hexagon of a window site
  /// whose six neighbours may fall outside; sites with centres in it are in
  /// the window.
  AxisBox inner_plane_box() const {
    return AxisBox::from_bounds(col_min_ + 0.5, col_max_, row_min_ * kRowHeight, row_max_ * kRowHeight);
  }
  bool covers(const AxisBox& b, double margin = 0.0) const {
    const AxisBox in = inner_plane_box();
    return b.xmin() - margin >= in.xmin() && b.xmax() + margin <= in.xmax() && b.ymin() - margin >= in.ymin() &&
           b.ymax() + margin <= in.ymax();
  }
  void require_covers(const AxisBox& b, double margin, const char* what) const {
    if (!covers(b, margin)) throw WindowError(std::string(what) + ": window does not cover the required region");
  }

  /// Index of neighbour k of site i, or kNoSite if it falls outside.
  std::size_t neighbor(std::size_t i, int k) const {
    const int r = static_cast<int>(i / width_);
    const int c = static_cast<int>(i % width_);
    const int par = (r + row_min_) & 1;
    const SiteCoord d = kNeighborOffsets[k];
    int dc = d.x;
    if (d.y == 1) dc += par;
    if (d.y == -1) dc += par - 1;
    const int nr = r + d.y, nc = c + dc;
    if (nr < 0 || nr >= height_ || nc < 0 || nc >= width_) return kNoSite;
    return static_cast<std::size_t>(nr) * width_ + nc;
  }

  /// Calls f(j) for every in-window neighbour j of i.
  template <class F>
  void for_each_neighbor(std::size_t i, F&& f) const {
    const int r = static_cast<int>(i / width_);
    const int c = static_cast<int>(i % width_);
    const int par = (r + row_min_) & 1;
    for (int k = 0; k < 6; ++k) {
      const SiteCoord d = kNeighborOffsets[k];
      int dc = d.x;
      if (d.y == 1) dc += par;
      if (d.y == -1) dc += par - 1;
      const int nr = r + d.y, nc = c + dc;
      if (nr < 0 || nr >= height_ || nc < 0 || nc >= width_) continue;
      f(static_cast<std::size_t>(nr) * width_ + nc);
    }
  }

  friend bool operator==(const Window& a, const Window& b) {
    return a.col_min_ == b.col_min_ && a.col_max_ == b.col_max_ && a.row_min_ == b.row_min_ && a.row_max_ == b.row_max_;
  }

 private:
  int col_min_ = 0, col_max_ = -1, row_min_ = 0, row_max_ = -1;
  int width_ = 0, height_ = 0;
};

using SiteMask = std::vector<std::uint8_t>;

inline SiteMask region_mask(const Window& w, const Region& r) {
  SiteMask m(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) m[i] = contains(r, embed(w.site(i))) ? 1 : 0;
  return m;
}

/// Sites of the discrete strip: those whose open hexagon meets the strip.
inline SiteMask discrete_strip_mask(const Window& w, const Strip& s) {
  SiteMask m(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) m[i] = hexagon_meets_strip(w.site(i), s) ? 1 : 0;
  return m;
}

inline std::vector<SiteCoord> sites_in_region(const Region& r, const AxisBox& bound) {
  if (!std::isfinite(bound.xmin()) || !std::isfinite(bound.xmax()) || !std::isfinite(bound.ymin()) ||
      !std::isfinite(bound.ymax()))
    throw ArgumentError("sites_in_region: bound must be finite");
  std::vector<SiteCoord> out;
  if (bound.r1 < 0 || bound.r2 < 0) return out;
  const Window w = Window::covering(bound, 1.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const SiteCoord v = w.site(i);
    const Point e = embed(v);
    if (contains(bound, e) && contains(r, e)) out.push_back(v);
  }
  return out;
}

inline std::vector<SiteCoord> mask_sites(const Window& w, const SiteMask& m) {
  std::vector<SiteCoord> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(w.site(i));
  return out;
}

inline SiteMask sites_mask(const Window& w, const std::vector<SiteCoord>& s, const char* what = "site set") {
  SiteMask m(w.size(), 0);
  for (const SiteCoord v : s) {
    if (!w.contains(v)) throw WindowError(std::string(what) + ": site outside window");
    m[w.index(v)] = 1;
  }
  return m;
}

}  // namespace nfpp
