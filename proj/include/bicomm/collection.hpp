#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bicomm/grid.hpp"

namespace bicomm {

struct RectAttributes {
  std::optional<double> mu;
  std::optional<double> nu;
  std::optional<int> stratum;
  std::string tag;
};

/// Finite set of dyadic rectangles (scales <= resolution) with optional
/// per-rectangle attributes, iterated in (j1, j2, k1, k2) order.
class RectCollection {
 public:
  using Map = std::map<DyadicRectangle, RectAttributes>;

  explicit RectCollection(int resolution) : n_(resolution) {}
  RectCollection(int resolution, const std::vector<DyadicRectangle>& rects);

  int resolution() const noexcept { return n_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  bool contains(const DyadicRectangle& r) const { return items_.count(r) != 0; }

  /// Returns false (and leaves the collection unchanged) for duplicates.
  bool insert(const DyadicRectangle& r, RectAttributes attrs = {});
  bool erase(const DyadicRectangle& r) { return items_.erase(r) != 0; }
  RectAttributes& attributes(const DyadicRectangle& r);
  const RectAttributes& attributes(const DyadicRectangle& r) const;

  std::vector<DyadicRectangle> rectangles() const;
  Map::const_iterator begin() const { return items_.begin(); }
  Map::const_iterator end() const { return items_.end(); }

  /// Cells covered by the union of the members.
  CellSet cover() const;

  bool operator==(const RectCollection& o) const;

 private:
  int n_;
  Map items_;
};

}  // namespace bicomm
