#include "facet/hmax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace facet {

int FeatureMap::n_orientations() const {
  for (const auto& b : levels) {
    if (!b.empty()) return b.orientations;
  }
  return 0;
}

bool FeatureMap::all_finite() const {
  for (const auto& b : levels) {
    for (float x : b.v) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

void C1Params::validate(const GaborParams& gabor) const {
  if (bands.empty()) throw std::invalid_argument("C1Params: need at least 1 band");
  std::vector<bool> covered(gabor.scales.size(), false);
  for (const auto& b : bands) {
    if (b.window < 1 || b.stride < 1) {
      throw std::invalid_argument("C1Params: window and stride must be >= 1");
    }
    if (b.scale_indices.empty()) {
      throw std::invalid_argument("C1Params: every band must pool at least one scale");
    }
    for (int si : b.scale_indices) {
      if (si < 0 || si >= gabor.n_scales()) {
        throw std::invalid_argument("C1Params: scale index out of range");
      }
      covered[si] = true;
    }
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) {
      throw std::invalid_argument("C1Params: S1 scale " + std::to_string(i) +
                                  " belongs to no band");
    }
  }
}

C1Params C1Params::defaults() {
  // Windows grow 8..22 across the nine bands; stride is half the window.
  static const int kWindows[9] = {8, 10, 12, 14, 16, 18, 20, 21, 22};
  C1Params p;
  for (int b = 0; b < 9; ++b) {
    C1BandSpec spec;
    spec.scale_indices = {2 * b, 2 * b + 1};
    spec.window = kWindows[b];
    spec.stride = kWindows[b] / 2;
    p.bands.push_back(spec);
  }
  return p;
}

namespace {

// Valid-region normalized correlation of one filter with the image. The
// numerator is a plain correlation with the zero-mean filter; the
// denominator is the L2 norm of the mean-centered patch, so the response is
// invariant to affine intensity changes of the input.
void s1_one_scale(const Image& img, const GaborParams& params, int scale_index,
                  BandGrid& out) {
  const int size = params.scales[scale_index].size;
  const int rows = img.height() - size + 1;
  const int cols = img.width() - size + 1;
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("s1: image smaller than filter (size " +
                                std::to_string(size) + ")");
  }
  const int n_orient = params.n_orientations();
  out.orientations = n_orient;
  out.rows = rows;
  out.cols = cols;
  out.v.assign(static_cast<std::size_t>(n_orient) * rows * cols, 0.0f);

  // Patch norms from integral images of I and I^2.
  const int iw = img.width() + 1;
  std::vector<double> ii(static_cast<std::size_t>(img.height() + 1) * iw, 0.0);
  std::vector<double> ii2(ii.size(), 0.0);
  for (int r = 0; r < img.height(); ++r) {
    double rs = 0.0, rs2 = 0.0;
    const double* px = img.row(r);
    for (int c = 0; c < img.width(); ++c) {
      rs += px[c];
      rs2 += px[c] * px[c];
      ii[static_cast<std::size_t>(r + 1) * iw + c + 1] =
          ii[static_cast<std::size_t>(r) * iw + c + 1] + rs;
      ii2[static_cast<std::size_t>(r + 1) * iw + c + 1] =
          ii2[static_cast<std::size_t>(r) * iw + c + 1] + rs2;
    }
  }
  const double inv_taps = 1.0 / (static_cast<double>(size) * size);
  std::vector<double> inv_norm(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto tl = static_cast<std::size_t>(r) * iw + c;
      const auto br = static_cast<std::size_t>(r + size) * iw + c + size;
      const auto tr = static_cast<std::size_t>(r) * iw + c + size;
      const auto bl = static_cast<std::size_t>(r + size) * iw + c;
      const double sum = ii[br] - ii[tr] - ii[bl] + ii[tl];
      const double sum2 = ii2[br] - ii2[tr] - ii2[bl] + ii2[tl];
      const double cnorm2 = sum2 - sum * sum * inv_taps;
      inv_norm[static_cast<std::size_t>(r) * cols + c] =
          cnorm2 > 1e-12 ? 1.0 / std::sqrt(cnorm2) : 0.0;
    }
  }

  for (int o = 0; o < n_orient; ++o) {
    const std::vector<double> g =
        make_gabor_filter(params.scales[scale_index], params.orientations[o], params.gamma);
    float* dst = &out.at(o, 0, 0);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        double acc = 0.0;
        for (int fr = 0; fr < size; ++fr) {
          const double* ip = img.row(r + fr) + c;
          const double* gp = g.data() + static_cast<std::size_t>(fr) * size;
          for (int fc = 0; fc < size; ++fc) acc += ip[fc] * gp[fc];
        }
        double resp = acc * inv_norm[static_cast<std::size_t>(r) * cols + c];
        resp = std::clamp(resp, -1.0, 1.0);
        dst[static_cast<std::size_t>(r) * cols + c] = static_cast<float>(resp);
      }
    }
  }
}

// Spatial max of |grid| over window/stride, one orientation plane at a time.
BandGrid pool_abs_max(const BandGrid& in, int window, int stride) {
  BandGrid out;
  if (in.empty() || in.rows < window || in.cols < window) return out;
  out.orientations = in.orientations;
  out.rows = (in.rows - window) / stride + 1;
  out.cols = (in.cols - window) / stride + 1;
  out.v.assign(static_cast<std::size_t>(out.orientations) * out.rows * out.cols, 0.0f);
  for (int o = 0; o < in.orientations; ++o) {
    for (int r = 0; r < out.rows; ++r) {
      for (int c = 0; c < out.cols; ++c) {
        float m = 0.0f;
        for (int wr = 0; wr < window; ++wr) {
          const float* p = &in.v[(static_cast<std::size_t>(o) * in.rows + r * stride + wr) *
                                     in.cols +
                                 c * stride];
          for (int wc = 0; wc < window; ++wc) {
            const float a = std::fabs(p[wc]);
            if (a > m) m = a;
          }
        }
        out.at(o, r, c) = m;
      }
    }
  }
  return out;
}

GridGeometry band_geometry(const GaborParams& gabor, const C1BandSpec& spec) {
  // Pixel center of C1 cell j, measured on the band's finest member scale.
  const int f = gabor.scales[spec.scale_indices.front()].size;
  GridGeometry g;
  g.origin = (spec.window - 1) / 2.0 + (f - 1) / 2.0;
  g.step = spec.stride;
  return g;
}

// Elementwise max of two pooled grids over their overlapping region; member
// scales of one band produce slightly different grid sizes.
void merge_max(BandGrid& acc, BandGrid&& pooled) {
  if (pooled.empty()) return;
  if (acc.empty()) {
    acc = std::move(pooled);
    return;
  }
  const int rows = std::min(acc.rows, pooled.rows);
  const int cols = std::min(acc.cols, pooled.cols);
  BandGrid merged;
  merged.orientations = acc.orientations;
  merged.rows = rows;
  merged.cols = cols;
  merged.v.resize(static_cast<std::size_t>(acc.orientations) * rows * cols);
  for (int o = 0; o < acc.orientations; ++o) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        merged.at(o, r, c) = std::max(acc.at(o, r, c), pooled.at(o, r, c));
      }
    }
  }
  acc = std::move(merged);
}

}  // namespace

FeatureMap s1(const Image& img, const GaborParams& params) {
  std::vector<int> all(params.n_scales());
  for (int i = 0; i < params.n_scales(); ++i) all[i] = i;
  return s1(img, params, all);
}

FeatureMap s1(const Image& img, const GaborParams& params,
              const std::vector<int>& scale_subset) {
  params.validate();
  FeatureMap map;
  map.levels.resize(params.n_scales());
  map.geometry.resize(params.n_scales());
  for (int i = 0; i < params.n_scales(); ++i) {
    map.geometry[i] = {(params.scales[i].size - 1) / 2.0, 1.0};
  }
  for (int si : scale_subset) {
    if (si < 0 || si >= params.n_scales()) {
      throw std::invalid_argument("s1: scale index out of range");
    }
    s1_one_scale(img, params, si, map.levels[si]);
  }
  return map;
}

FeatureMap c1(const FeatureMap& s1map, const GaborParams& gabor, const C1Params& params) {
  params.validate(gabor);
  if (s1map.n_levels() != gabor.n_scales()) {
    throw std::invalid_argument("c1: S1 map does not match GaborParams scale count");
  }
  FeatureMap out;
  out.levels.resize(params.n_bands());
  out.geometry.resize(params.n_bands());
  for (int b = 0; b < params.n_bands(); ++b) {
    const auto& spec = params.bands[b];
    out.geometry[b] = band_geometry(gabor, spec);
    BandGrid acc;
    for (int si : spec.scale_indices) {
      const BandGrid& lvl = s1map.levels[si];
      if (lvl.empty()) {
        throw std::invalid_argument("c1: S1 level " + std::to_string(si) +
                                    " was not computed");
      }
      merge_max(acc, pool_abs_max(lvl, spec.window, spec.stride));
    }
    out.levels[b] = std::move(acc);
  }
  return out;
}

FeatureMap c1_bands(const Image& img, const GaborParams& gabor, const C1Params& params,
                    const std::vector<int>& band_subset) {
  params.validate(gabor);
  std::vector<int> scales;
  for (int b : band_subset) {
    if (b < 0 || b >= params.n_bands()) {
      throw std::invalid_argument("c1_bands: band index out of range");
    }
    for (int si : params.bands[b].scale_indices) scales.push_back(si);
  }
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

  const FeatureMap s1map = s1(img, gabor, scales);

  FeatureMap out;
  out.levels.resize(params.n_bands());
  out.geometry.resize(params.n_bands());
  for (int b = 0; b < params.n_bands(); ++b) {
    out.geometry[b] = band_geometry(gabor, params.bands[b]);
  }
  for (int b : band_subset) {
    const auto& spec = params.bands[b];
    BandGrid acc;
    for (int si : spec.scale_indices) {
      merge_max(acc, pool_abs_max(s1map.levels[si], spec.window, spec.stride));
    }
    out.levels[b] = std::move(acc);
  }
  return out;
}

std::pair<int, int> face_oval_extent(const FeatureMap& c1map, int band_index,
                                     const OvalMask& oval) {
  if (band_index < 0 || band_index >= c1map.n_levels()) {
    throw std::invalid_argument("face_oval_extent: band index out of range");
  }
  const BandGrid& band = c1map.levels[band_index];
  const GridGeometry& g = c1map.geometry[band_index];
  int w = 0, h = 0;
  for (int c = 0; c < band.cols; ++c) {
    const double px = g.origin + c * g.step;
    if (px >= oval.center_col - oval.col_semi && px <= oval.center_col + oval.col_semi) ++w;
  }
  for (int r = 0; r < band.rows; ++r) {
    const double px = g.origin + r * g.step;
    if (px >= oval.center_row - oval.row_semi && px <= oval.center_row + oval.row_semi) ++h;
  }
  return {w, h};
}

}  // namespace facet
