#include "bicomm/collection.hpp"

#include "bicomm/error.hpp"

namespace bicomm {

RectCollection::RectCollection(int resolution, const std::vector<DyadicRectangle>& rects) : n_(resolution) {
  for (const auto& r : rects) insert(r);
}

bool RectCollection::insert(const DyadicRectangle& r, RectAttributes attrs) {
  if (r.first().scale() > n_ || r.second().scale() > n_)
    fail(ErrorCode::invalid_argument, "rectangle finer than the collection resolution");
  return items_.emplace(r, std::move(attrs)).second;
}

RectAttributes& RectCollection::attributes(const DyadicRectangle& r) {
  const auto it = items_.find(r);
  if (it == items_.end()) fail(ErrorCode::invalid_argument, "rectangle not in collection");
  return it->second;
}

const RectAttributes& RectCollection::attributes(const DyadicRectangle& r) const {
  const auto it = items_.find(r);
  if (it == items_.end()) fail(ErrorCode::invalid_argument, "rectangle not in collection");
  return it->second;
}

std::vector<DyadicRectangle> RectCollection::rectangles() const {
  std::vector<DyadicRectangle> out;
  out.reserve(items_.size());
  for (const auto& [r, a] : items_) out.push_back(r);
  return out;
}

CellSet RectCollection::cover() const {
  CellSet u(n_);
  for (const auto& [r, a] : items_) u = u | CellSet::from_rectangle(n_, r);
  return u;
}

bool RectCollection::operator==(const RectCollection& o) const {
  if (n_ != o.n_ || items_.size() != o.items_.size()) return false;
  auto a = items_.begin();
  for (auto b = o.items_.begin(); b != o.items_.end(); ++a, ++b)
    if (!(a->first == b->first)) return false;
  return true;
}

}  // namespace bicomm
