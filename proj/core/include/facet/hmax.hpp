#pragma once

#include <utility>
#include <vector>

#include "facet/gabor.hpp"
#include "facet/image.hpp"
#include "facet/stimulus.hpp"

namespace facet {

// One C1 scale band: which S1 scales it pools and its spatial pooling grid.
struct C1BandSpec {
  std::vector<int> scale_indices;  // indices into GaborParams::scales
  int window = 0;                  // pooling window side, in S1 cells
  int stride = 0;                  // pooling step, in S1 cells
};

struct C1Params {
  std::vector<C1BandSpec> bands;

  int n_bands() const { return static_cast<int>(bands.size()); }
  void validate(const GaborParams& gabor) const;  // throws

  // 9 bands pooling the 18 default S1 scales pairwise; windows grow from 8
  // to 22 cells with stride = window / 2.
  static C1Params defaults();
};

// Responses of one scale (S1) or one band (C1): orientation-major stack of
// rows x cols grids. An empty grid (rows == 0) marks a level that was not
// computed (band-subset extraction) or that the image was too small for.
struct BandGrid {
  int orientations = 0;
  int rows = 0;
  int cols = 0;
  std::vector<float> v;  // [orientation][row][col]

  bool empty() const { return rows == 0 || cols == 0; }
  float at(int o, int r, int c) const {
    return v[(static_cast<std::size_t>(o) * rows + r) * cols + c];
  }
  float& at(int o, int r, int c) {
    return v[(static_cast<std::size_t>(o) * rows + r) * cols + c];
  }
};

// Affine map from a grid index to the image-pixel center of that cell:
// center_px = origin + index * step. Identical for rows and columns.
struct GridGeometry {
  double origin = 0.0;
  double step = 1.0;
};

// Response stack produced by s1() (one level per Gabor scale) or c1() (one
// level per band), with the pixel geometry of each level.
struct FeatureMap {
  std::vector<BandGrid> levels;
  std::vector<GridGeometry> geometry;

  int n_levels() const { return static_cast<int>(levels.size()); }
  int n_orientations() const;
  bool all_finite() const;
};

// S1: for every scale and orientation, the valid-region correlation of the
// image with the zero-mean unit-norm Gabor filter, normalized by the norm of
// the mean-centered image patch. Responses lie in [-1, 1]; constant patches
// give 0. Affine intensity changes (a*img + b, a > 0) leave S1 unchanged.
FeatureMap s1(const Image& img, const GaborParams& params);

// As above but only for the scales listed in `scale_subset`; other levels
// are left empty (their geometry is still filled in).
FeatureMap s1(const Image& img, const GaborParams& params,
              const std::vector<int>& scale_subset);

// C1: per band and orientation, the max of |S1| over the band's spatial
// windows and member scales, subsampled by the band stride.
FeatureMap c1(const FeatureMap& s1map, const GaborParams& gabor, const C1Params& params);

// Computes C1 for just the listed bands (0-based indices), running S1 only
// on the scales those bands need. Unlisted bands are left empty.
FeatureMap c1_bands(const Image& img, const GaborParams& gabor, const C1Params& params,
                    const std::vector<int>& band_subset);

// Bounding extent of the oval measured in C1 grid cells of one band: the
// number of distinct grid columns/rows whose pixel centers fall within the
// oval's horizontal/vertical span. A calibration probe, not a pipeline step.
std::pair<int, int> face_oval_extent(const FeatureMap& c1map, int band_index,
                                     const OvalMask& oval);

}  // namespace facet
