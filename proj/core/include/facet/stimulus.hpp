#pragma once

#include <utility>
#include <vector>

#include "facet/image.hpp"

namespace facet {

// Elliptical crop mask. Semi-axes are in pixels of the image the mask is
// applied to; everything outside is set to `background`.
struct OvalMask {
  double center_row = 0.0;
  double center_col = 0.0;
  double row_semi = 0.0;  // vertical semi-axis (half the oval height)
  double col_semi = 0.0;  // horizontal semi-axis (half the oval width)
  double background = 0.5;

  bool inside(int r, int c) const {
    const double dr = (r - center_row) / row_semi;
    const double dc = (c - center_col) / col_semi;
    return dr * dr + dc * dc <= 1.0;
  }
  // The mask must cover a strictly interior region of an h x w image.
  bool fits_strictly_inside(int h, int w) const;
};

// Centered oval with semi-axes given as fractions of image width/height.
OvalMask default_oval(int height, int width, double col_frac, double row_frac,
                      double background);

// Axis-aligned rectangle with half-open pixel bounds.
struct Region {
  int top = 0, left = 0, bottom = 0, right = 0;

  int height() const { return bottom - top; }
  int width() const { return right - left; }
  double center_row() const { return (top + bottom - 1) / 2.0; }
  double center_col() const { return (left + right - 1) / 2.0; }
  bool valid_for(int h, int w) const {
    return 0 <= top && top < bottom && bottom <= h && 0 <= left &&
           left < right && right <= w;
  }
  bool contains(int r, int c) const {
    return top <= r && r < bottom && left <= c && c < right;
  }
  bool operator==(const Region&) const = default;
};

// Maps a region through an image rescale by `scale` (rounded bounds).
Region scale_region(const Region& r, double scale);

// The same region after an upside-down flip of an image with `height` rows.
Region invert_region(const Region& r, int height);

// Bilinear resample to round(height*scale) x round(width*scale).
Image resize_bilinear(const Image& img, double scale);

// Resize by `scale`, crop to `oval` (given in post-scale coordinates; pixels
// outside become oval.background), then affinely rescale the in-oval pixels
// so their mean and population variance hit the targets exactly. The
// background is then re-set to target_mean so the crop boundary carries no
// intensity step relative to the normalized interior.
Image preprocess(const Image& img, double scale, const OvalMask& oval,
                 double target_mean, double target_var);

// 1-based odd positions go to train, even to test; input order preserved.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_train_test(const std::vector<T>& faces) {
  if (faces.size() < 2) {
    throw std::invalid_argument("split_train_test: need at least 2 faces");
  }
  std::pair<std::vector<T>, std::vector<T>> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    (i % 2 == 0 ? out.first : out.second).push_back(faces[i]);
  }
  return out;
}

// Upside-down flip (row order reversed).
Image invert(const Image& img);

// Shifts content by (dr, dc); vacated pixels take `background`.
Image translate(const Image& img, int dr, int dc, double background);

// Pixels outside `keep` are multiplied by `attenuation`; pixels inside are
// untouched.
Image attenuate_outside(const Image& img, const Region& keep, double attenuation);

// Composite: rows [0, H/2) from top_src, a gap_px band of background, then
// bottom_src's lower half pushed down by gap_px (its last gap_px rows fall
// off the canvas, keeping dimensions fixed). When aligned == false the
// bottom half is additionally shifted horizontally by misalign_px.
Image make_composite(const Image& top_src, const Image& bottom_src, bool aligned,
                     int gap_px, int misalign_px, double background);

enum class AttendedHalf { top, bottom };

// Simulates gaze on the judged halves of a composite: the half on the other
// side of the gap is attenuated, then the image is shifted vertically so the
// attended half's center lands on the image center. `attended = bottom` is
// the orientation-aware form used for inverted composites, where the judged
// content sits in the lower half of the frame.
Image apply_attention_cfe(const Image& img, int gap_px, double attenuation,
                          AttendedHalf attended, double background);

// whole: base_src with `eye_region` replaced by eyes_src, blended with a
// linear feather of `feather_px` rows/cols just inside the region border
// (feather_px = 0 is a hard paste). part: the whole's eye region alone on a
// background canvas of the same dimensions.
std::pair<Image, Image> make_whole_part(const Image& eyes_src, const Image& base_src,
                                        const Region& eye_region, int feather_px,
                                        double background);

// Simulates gaze on the eye region: pixels outside it are attenuated, then
// the image is translated so the region center lands on the image center.
Image apply_attention_wpe(const Image& img, const Region& eye_region,
                          double attenuation, double background);

}  // namespace facet
