#include "facet/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "facet/rng.hpp"

namespace facet {
namespace {

double smoothstep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * (3.0 - 2.0 * x);
}

// Soft-edged ellipse coverage in [0, 1]; the edge spans ~edge_px pixels.
double ellipse_cov(double r, double c, double cy, double cx, double ry, double rx,
                   double edge_px) {
  const double dr = (r - cy) / ry;
  const double dc = (c - cx) / rx;
  const double u = std::sqrt(dr * dr + dc * dc);
  const double eu = edge_px / std::min(ry, rx);
  return smoothstep((1.0 + eu - u) / (2.0 * eu));
}

void add_ellipse(Image& img, double cy, double cx, double ry, double rx,
                 double delta, double edge_px = 1.5) {
  const int r0 = std::max(0, static_cast<int>(cy - ry - edge_px - 1));
  const int r1 = std::min(img.height() - 1, static_cast<int>(cy + ry + edge_px + 1));
  const int c0 = std::max(0, static_cast<int>(cx - rx - edge_px - 1));
  const int c1 = std::min(img.width() - 1, static_cast<int>(cx + rx + edge_px + 1));
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      const double cov = ellipse_cov(r, c, cy, cx, ry, rx, edge_px);
      if (cov > 0.0) img.at(r, c) += delta * cov;
    }
  }
}

struct FaceLayout {
  double h, w;
  double head_ry, head_rx;
};

void draw_face(Image& img, Rng& rng, const FaceLayout& lay) {
  const double h = lay.h, w = lay.w;
  const double cy = (h - 1) / 2.0, cx = (w - 1) / 2.0;

  // Base head: skin tone inside the head oval, gentle gradient shading.
  const double skin = 0.60 + rng.uniform_real(-0.06, 0.06);
  const double grad_v = rng.uniform_real(-0.05, 0.05);
  const double grad_h = rng.uniform_real(-0.03, 0.03);
  const double jit_r = rng.uniform_real(-0.004, 0.004) * h;
  const double jit_c = rng.uniform_real(-0.004, 0.004) * w;
  const double head_cy = cy + jit_r, head_cx = cx + jit_c;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      const double cov = ellipse_cov(r, c, head_cy, head_cx, lay.head_ry, lay.head_rx, 2.0);
      if (cov <= 0.0) continue;
      const double shade = grad_v * (r / h - 0.5) + grad_h * (c / w - 0.5);
      img.at(r, c) += cov * (skin + shade - img.at(r, c));
    }
  }

  // Eyes: bright sclera, dark iris, darker pupil. Both eyes share a row.
  const double eye_row = 0.40 * h + rng.uniform_real(-0.0085, 0.0085) * h;
  const double eye_sep = (0.16 + rng.uniform_real(-0.012, 0.012)) * w;
  const double eye_rx = (0.050 + rng.uniform_real(-0.008, 0.008)) * w;
  const double eye_ry = (0.026 + rng.uniform_real(-0.005, 0.005)) * h;
  const double sclera = 0.10 + rng.uniform_real(-0.03, 0.03);
  const double iris_frac = 0.72 + rng.uniform_real(-0.10, 0.10);
  const double iris_dark = -0.28 + rng.uniform_real(-0.08, 0.08);
  const double iris_off = rng.uniform_real(-0.15, 0.15) * eye_rx;
  for (int side = -1; side <= 1; side += 2) {
    const double ex = cx + side * eye_sep / 2.0 + rng.uniform_real(-0.004, 0.004) * w;
    const double ey = eye_row + rng.uniform_real(-0.003, 0.003) * h;
    add_ellipse(img, ey, ex, eye_ry, eye_rx, sclera);
    const double ir = iris_frac * eye_ry;
    add_ellipse(img, ey, ex + iris_off, ir, ir, iris_dark);
    add_ellipse(img, ey, ex + iris_off, ir * 0.45, ir * 0.45, iris_dark * 0.6);
  }

  // Brows: dark bars above each eye.
  const double brow_dy = (0.045 + rng.uniform_real(-0.008, 0.008)) * h;
  const double brow_ry = (0.010 + rng.uniform_real(-0.004, 0.004)) * h;
  const double brow_rx = eye_rx * (1.35 + rng.uniform_real(-0.15, 0.15));
  const double brow_dark = -0.16 + rng.uniform_real(-0.05, 0.05);
  for (int side = -1; side <= 1; side += 2) {
    add_ellipse(img, eye_row - brow_dy, cx + side * eye_sep / 2.0, brow_ry, brow_rx,
                brow_dark);
  }

  // Nose: a wedge widening downward, slightly shaded, with nostril dots.
  const double nose_top = (0.455 + rng.uniform_real(-0.012, 0.012)) * h;
  const double nose_len = (0.155 + rng.uniform_real(-0.020, 0.020)) * h;
  const double nose_hw = (0.035 + rng.uniform_real(-0.008, 0.008)) * w;
  const double nose_shade = -0.07 + rng.uniform_real(-0.03, 0.03);
  const int nr0 = static_cast<int>(nose_top);
  const int nr1 = std::min(img.height() - 1, static_cast<int>(nose_top + nose_len));
  for (int r = nr0; r <= nr1; ++r) {
    const double t = (r - nose_top) / nose_len;
    const double hw = nose_hw * t;
    for (int c = static_cast<int>(cx - hw - 2); c <= static_cast<int>(cx + hw + 2); ++c) {
      if (c < 0 || c >= img.width()) continue;
      const double cov = std::clamp((hw - std::abs(c - cx)) / 1.5 + 1.0, 0.0, 1.0);
      img.at(r, c) += nose_shade * cov * smoothstep(t * 4.0);
    }
  }
  const double nostril_dark = -0.14 + rng.uniform_real(-0.04, 0.04);
  const double nostril_off = (0.018 + rng.uniform_real(-0.004, 0.004)) * w;
  const double nostril_r = 0.006 * (h + w) / 2.0;
  for (int side = -1; side <= 1; side += 2) {
    add_ellipse(img, nose_top + nose_len, cx + side * nostril_off, nostril_r,
                nostril_r * 1.3, nostril_dark);
  }

  // Mouth: a dark horizontal bar with a fainter lower-lip band.
  const double mouth_row = (0.70 + rng.uniform_real(-0.012, 0.012)) * h;
  const double mouth_rx = (0.105 + rng.uniform_real(-0.020, 0.020)) * w;
  const double mouth_ry = (0.009 + rng.uniform_real(-0.003, 0.003)) * h;
  const double mouth_dark = -0.22 + rng.uniform_real(-0.06, 0.06);
  add_ellipse(img, mouth_row, cx + rng.uniform_real(-0.006, 0.006) * w, mouth_ry,
              mouth_rx, mouth_dark);
  add_ellipse(img, mouth_row + 2.2 * mouth_ry, cx, mouth_ry * 0.9, mouth_rx * 0.8,
              mouth_dark * rng.uniform_real(0.15, 0.40));

  // Soft shading blobs: cheeks, forehead, chin, plus free blobs inside the
  // head for extra per-face texture.
  for (int side = -1; side <= 1; side += 2) {
    add_ellipse(img, 0.58 * h + rng.uniform_real(-0.02, 0.02) * h,
                cx + side * 0.22 * w, 0.07 * h, 0.08 * w,
                rng.uniform_real(-0.045, 0.045), 6.0);
  }
  add_ellipse(img, 0.27 * h, cx + rng.uniform_real(-0.03, 0.03) * w, 0.08 * h,
              0.16 * w, rng.uniform_real(-0.035, 0.035), 8.0);
  add_ellipse(img, 0.80 * h, cx, 0.05 * h, 0.07 * w, rng.uniform_real(-0.04, 0.04), 5.0);
  for (int i = 0; i < 4; ++i) {
    const double br = rng.uniform_real(0.28, 0.78) * h;
    const double bc = cx + rng.uniform_real(-0.22, 0.22) * w;
    add_ellipse(img, br, bc, rng.uniform_real(0.03, 0.07) * h,
                rng.uniform_real(0.03, 0.08) * w, rng.uniform_real(-0.05, 0.05), 5.0);
  }
}

}  // namespace

SyntheticSet gen_synthetic_faces(int count, std::uint64_t seed, int canvas_height,
                                 int canvas_width) {
  if (count < 1) throw std::invalid_argument("gen_synthetic_faces: count must be >= 1");
  if (canvas_height < 96 || canvas_width < 80) {
    throw std::invalid_argument(
        "gen_synthetic_faces: canvas too small to contain face parts (min 96x80)");
  }

  SyntheticSet set;
  set.canvas_height = canvas_height;
  set.canvas_width = canvas_width;

  FaceLayout lay;
  lay.h = canvas_height;
  lay.w = canvas_width;
  lay.head_ry = 0.505 * lay.h;
  lay.head_rx = 0.415 * lay.w;

  // Shared eye band: covers eyes and brows of every face in the set, with
  // margin for the blend feather.
  set.eye_region.top = static_cast<int>(std::lround(0.325 * lay.h));
  set.eye_region.bottom = static_cast<int>(std::lround(0.465 * lay.h));
  set.eye_region.left = static_cast<int>(std::lround(0.23 * lay.w));
  set.eye_region.right = static_cast<int>(std::lround(0.77 * lay.w));

  set.faces.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, "synthetic-face", static_cast<std::uint64_t>(i)));
    Image img(canvas_height, canvas_width, 0.42);
    draw_face(img, rng, lay);
    set.faces.push_back(std::move(img));
  }
  return set;
}

}  // namespace facet
