#include "facet/stimulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace facet {

bool OvalMask::fits_strictly_inside(int h, int w) const {
  if (row_semi <= 0.0 || col_semi <= 0.0) return false;
  return center_row - row_semi > 0.0 && center_row + row_semi < h - 1 &&
         center_col - col_semi > 0.0 && center_col + col_semi < w - 1;
}

OvalMask default_oval(int height, int width, double col_frac, double row_frac,
                      double background) {
  OvalMask m;
  m.center_row = (height - 1) / 2.0;
  m.center_col = (width - 1) / 2.0;
  m.row_semi = row_frac * height;
  m.col_semi = col_frac * width;
  m.background = background;
  return m;
}

Region scale_region(const Region& r, double scale) {
  Region s;
  s.top = static_cast<int>(std::lround(r.top * scale));
  s.left = static_cast<int>(std::lround(r.left * scale));
  s.bottom = static_cast<int>(std::lround(r.bottom * scale));
  s.right = static_cast<int>(std::lround(r.right * scale));
  return s;
}

Region invert_region(const Region& r, int height) {
  return Region{height - r.bottom, r.left, height - r.top, r.right};
}

Image resize_bilinear(const Image& img, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("resize_bilinear: scale must be > 0");
  const int oh = std::max(1, static_cast<int>(std::lround(img.height() * scale)));
  const int ow = std::max(1, static_cast<int>(std::lround(img.width() * scale)));
  Image out(oh, ow);
  const double ry = static_cast<double>(img.height()) / oh;
  const double rx = static_cast<double>(img.width()) / ow;
  for (int r = 0; r < oh; ++r) {
    // Pixel-center mapping (align_corners = false).
    const double sy = std::clamp((r + 0.5) * ry - 0.5, 0.0, img.height() - 1.0);
    const int y0 = static_cast<int>(sy);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double fy = sy - y0;
    for (int c = 0; c < ow; ++c) {
      const double sx = std::clamp((c + 0.5) * rx - 0.5, 0.0, img.width() - 1.0);
      const int x0 = static_cast<int>(sx);
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double fx = sx - x0;
      const double a = img.at(y0, x0) * (1 - fx) + img.at(y0, x1) * fx;
      const double b = img.at(y1, x0) * (1 - fx) + img.at(y1, x1) * fx;
      out.at(r, c) = a * (1 - fy) + b * fy;
    }
  }
  return out;
}

Image preprocess(const Image& img, double scale, const OvalMask& oval,
                 double target_mean, double target_var) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw std::invalid_argument("preprocess: scale must be in (0, 1]");
  }
  if (!(target_var > 0.0)) {
    throw std::invalid_argument("preprocess: target variance must be > 0");
  }
  Image scaled = resize_bilinear(img, scale);
  if (!oval.fits_strictly_inside(scaled.height(), scaled.width())) {
    throw std::invalid_argument("preprocess: oval does not fit inside the scaled image");
  }

  double sum = 0.0, sumsq = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < scaled.height(); ++r) {
    for (int c = 0; c < scaled.width(); ++c) {
      if (!oval.inside(r, c)) continue;
      const double v = scaled.at(r, c);
      sum += v;
      sumsq += v * v;
      ++n;
    }
  }
  if (n == 0) throw std::invalid_argument("preprocess: oval covers no pixels");
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  if (var <= 0.0) {
    throw std::invalid_argument("preprocess: zero in-oval variance, normalization undefined");
  }

  const double gain = std::sqrt(target_var / var);
  Image out(scaled.height(), scaled.width(), target_mean);
  for (int r = 0; r < scaled.height(); ++r) {
    for (int c = 0; c < scaled.width(); ++c) {
      if (oval.inside(r, c)) {
        out.at(r, c) = (scaled.at(r, c) - mean) * gain + target_mean;
      }
    }
  }
  return out;
}

Image invert(const Image& img) {
  Image out(img.height(), img.width());
  for (int r = 0; r < img.height(); ++r) {
    const double* src = img.row(img.height() - 1 - r);
    std::copy(src, src + img.width(), out.row(r));
  }
  return out;
}

Image translate(const Image& img, int dr, int dc, double background) {
  Image out(img.height(), img.width(), background);
  for (int r = 0; r < img.height(); ++r) {
    const int sr = r - dr;
    if (sr < 0 || sr >= img.height()) continue;
    for (int c = 0; c < img.width(); ++c) {
      const int sc = c - dc;
      if (sc < 0 || sc >= img.width()) continue;
      out.at(r, c) = img.at(sr, sc);
    }
  }
  return out;
}

Image attenuate_outside(const Image& img, const Region& keep, double attenuation) {
  Image out = img;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (!keep.contains(r, c)) out.at(r, c) *= attenuation;
    }
  }
  return out;
}

Image make_composite(const Image& top_src, const Image& bottom_src, bool aligned,
                     int gap_px, int misalign_px, double background) {
  if (!top_src.same_size(bottom_src)) {
    throw std::invalid_argument("make_composite: source dimensions differ");
  }
  if (gap_px < 0) throw std::invalid_argument("make_composite: gap_px must be >= 0");
  if (std::abs(misalign_px) >= top_src.width()) {
    throw std::invalid_argument("make_composite: misalignment exceeds image width");
  }
  const int h = top_src.height();
  const int w = top_src.width();
  const int half = h / 2;
  const int dc = aligned ? 0 : misalign_px;

  Image out(h, w, background);
  for (int r = 0; r < half; ++r) {
    std::copy(top_src.row(r), top_src.row(r) + w, out.row(r));
  }
  // Rows [half, half+gap) stay background; the bottom half lands gap_px lower.
  for (int r = half + gap_px; r < h; ++r) {
    const int sr = r - gap_px;
    for (int c = 0; c < w; ++c) {
      const int sc = c - dc;
      if (sc < 0 || sc >= w) continue;
      out.at(r, c) = bottom_src.at(sr, sc);
    }
  }
  return out;
}

Image apply_attention_cfe(const Image& img, int gap_px, double attenuation,
                          AttendedHalf attended, double background) {
  if (!(attenuation >= 0.0 && attenuation <= 1.0)) {
    throw std::invalid_argument("apply_attention_cfe: attenuation must be in [0, 1]");
  }
  const int h = img.height();
  const int half = h / 2;

  Image work = img;
  double attended_center;
  if (attended == AttendedHalf::top) {
    // Suppress everything below the gap band [half, half+gap).
    for (int r = std::min(h, half + gap_px); r < h; ++r) {
      for (int c = 0; c < img.width(); ++c) work.at(r, c) *= attenuation;
    }
    attended_center = (half - 1) / 2.0;
  } else {
    // Inverted composite: judged halves occupy rows [half, h), the gap band
    // sits at [half-gap, half), and the task-irrelevant half above it.
    for (int r = 0; r < std::max(0, half - gap_px); ++r) {
      for (int c = 0; c < img.width(); ++c) work.at(r, c) *= attenuation;
    }
    attended_center = (half + h - 1) / 2.0;
  }
  const int shift = static_cast<int>(std::lround((h - 1) / 2.0 - attended_center));
  return translate(work, shift, 0, background);
}

std::pair<Image, Image> make_whole_part(const Image& eyes_src, const Image& base_src,
                                        const Region& eye_region, int feather_px,
                                        double background) {
  if (!eyes_src.same_size(base_src)) {
    throw std::invalid_argument("make_whole_part: source dimensions differ");
  }
  if (!eye_region.valid_for(base_src.height(), base_src.width())) {
    throw std::invalid_argument("make_whole_part: eye region out of bounds");
  }
  if (feather_px < 0) throw std::invalid_argument("make_whole_part: feather_px must be >= 0");

  Image whole = base_src;
  for (int r = eye_region.top; r < eye_region.bottom; ++r) {
    for (int c = eye_region.left; c < eye_region.right; ++c) {
      // Linear ramp from the region border inward; depth 1 at the border row.
      const int depth = 1 + std::min(std::min(r - eye_region.top, eye_region.bottom - 1 - r),
                                     std::min(c - eye_region.left, eye_region.right - 1 - c));
      const double w = feather_px == 0
                           ? 1.0
                           : std::min(1.0, static_cast<double>(depth) / (feather_px + 1));
      whole.at(r, c) = w * eyes_src.at(r, c) + (1.0 - w) * base_src.at(r, c);
    }
  }

  Image part(base_src.height(), base_src.width(), background);
  for (int r = eye_region.top; r < eye_region.bottom; ++r) {
    for (int c = eye_region.left; c < eye_region.right; ++c) {
      part.at(r, c) = whole.at(r, c);
    }
  }
  return {std::move(whole), std::move(part)};
}

Image apply_attention_wpe(const Image& img, const Region& eye_region,
                          double attenuation, double background) {
  if (!eye_region.valid_for(img.height(), img.width())) {
    throw std::invalid_argument("apply_attention_wpe: eye region out of bounds");
  }
  Image work = attenuate_outside(img, eye_region, attenuation);
  const int dr = static_cast<int>(std::lround((img.height() - 1) / 2.0 - eye_region.center_row()));
  const int dc = static_cast<int>(std::lround((img.width() - 1) / 2.0 - eye_region.center_col()));
  return translate(work, dr, dc, background);
}

}  // namespace facet
