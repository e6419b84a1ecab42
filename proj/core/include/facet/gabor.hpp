#pragma once

#include <vector>

namespace facet {

struct GaborScale {
  int size = 0;        // filter side length in pixels, odd
  double lambda = 0.0; // carrier wavelength, pixels
  double sigma = 0.0;  // Gaussian envelope, pixels
};

struct GaborParams {
  std::vector<double> orientations;  // radians
  std::vector<GaborScale> scales;    // sizes strictly increasing
  double gamma = 0.3;                // envelope aspect ratio

  int n_orientations() const { return static_cast<int>(orientations.size()); }
  int n_scales() const { return static_cast<int>(scales.size()); }
  int max_filter_size() const;
  void validate() const;  // throws std::invalid_argument

  // 4 orientations (0/45/90/135 deg) and 18 sizes from 7 to 41 px in steps
  // of 2. Per-size envelope follows the classic quadratic fit
  // sigma = 0.0036 s^2 + 0.35 s + 0.18 with lambda = sigma / 0.8.
  static GaborParams defaults();
};

// Zero-mean, unit-norm Gabor restricted to a circular aperture of radius
// size/2; row-major size x size taps.
std::vector<double> make_gabor_filter(const GaborScale& scale, double theta,
                                      double gamma);

}  // namespace facet
