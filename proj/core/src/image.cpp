#include "facet/image.hpp"

#include <cmath>

#include "facet/rng.hpp"

namespace facet {

bool Image::all_finite() const {
  for (double v : px_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double Image::mean() const {
  double s = 0.0;
  for (double v : px_) s += v;
  return px_.empty() ? 0.0 : s / static_cast<double>(px_.size());
}

std::uint64_t Image::content_hash() const {
  std::uint64_t h = fnv1a64(&height_, sizeof(height_));
  h = fnv1a64(&width_, sizeof(width_), h);
  return fnv1a64(px_.data(), px_.size() * sizeof(double), h);
}

}  // namespace facet
