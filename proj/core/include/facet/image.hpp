#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace facet {

// Grayscale intensity matrix, row-major, double precision. Intensities are
// nominally on a 0..1 scale but operations downstream (normalization,
// attention) may move individual pixels outside that range.
class Image {
 public:
  Image() = default;
  Image(int height, int width, double fill = 0.0)
      : height_(height), width_(width) {
    if (height < 1 || width < 1) {
      throw std::invalid_argument("Image: dimensions must be positive");
    }
    px_.assign(static_cast<std::size_t>(height) * width, fill);
  }

  int height() const { return height_; }
  int width() const { return width_; }
  bool empty() const { return px_.empty(); }

  double& at(int r, int c) {
    assert(r >= 0 && r < height_ && c >= 0 && c < width_);
    return px_[static_cast<std::size_t>(r) * width_ + c];
  }
  double at(int r, int c) const {
    assert(r >= 0 && r < height_ && c >= 0 && c < width_);
    return px_[static_cast<std::size_t>(r) * width_ + c];
  }

  double* row(int r) { return px_.data() + static_cast<std::size_t>(r) * width_; }
  const double* row(int r) const {
    return px_.data() + static_cast<std::size_t>(r) * width_;
  }

  std::vector<double>& pixels() { return px_; }
  const std::vector<double>& pixels() const { return px_; }

  bool same_size(const Image& o) const {
    return height_ == o.height_ && width_ == o.width_;
  }

  bool all_finite() const;
  double mean() const;

  // Hash over dimensions and raw pixel bytes; the C2 cache key.
  std::uint64_t content_hash() const;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> px_;
};

// An image tagged with the identifier it is known by in manifests, trial
// tables and stimulus dumps.
struct NamedImage {
  std::string id;
  Image image;
};

}  // namespace facet
