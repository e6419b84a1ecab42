#include "facet/gabor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace facet {

int GaborParams::max_filter_size() const {
  int m = 0;
  for (const auto& s : scales) m = std::max(m, s.size);
  return m;
}

void GaborParams::validate() const {
  if (orientations.size() < 2) {
    throw std::invalid_argument("GaborParams: need at least 2 orientations");
  }
  if (scales.empty()) throw std::invalid_argument("GaborParams: need at least 1 scale");
  int prev = 0;
  for (const auto& s : scales) {
    if (s.size < 3 || s.size % 2 == 0) {
      throw std::invalid_argument("GaborParams: filter sizes must be odd and >= 3");
    }
    if (s.size <= prev) {
      throw std::invalid_argument("GaborParams: filter sizes must be strictly increasing");
    }
    if (!(s.lambda > 0.0) || !(s.sigma > 0.0)) {
      throw std::invalid_argument("GaborParams: lambda and sigma must be > 0");
    }
    prev = s.size;
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("GaborParams: gamma must be > 0");
}

GaborParams GaborParams::defaults() {
  GaborParams p;
  const double d = std::numbers::pi / 180.0;
  p.orientations = {0.0, 45.0 * d, 90.0 * d, 135.0 * d};
  p.gamma = 0.3;
  for (int size = 7; size <= 41; size += 2) {
    GaborScale s;
    s.size = size;
    s.sigma = 0.0036 * size * size + 0.35 * size + 0.18;
    s.lambda = s.sigma / 0.8;
    p.scales.push_back(s);
  }
  return p;
}

std::vector<double> make_gabor_filter(const GaborScale& scale, double theta,
                                      double gamma) {
  const int n = scale.size;
  const double half = (n - 1) / 2.0;
  const double aperture2 = (n / 2.0) * (n / 2.0);
  std::vector<double> f(static_cast<std::size_t>(n) * n, 0.0);

  double sum = 0.0;
  int live = 0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = c - half;
      const double y = r - half;
      if (x * x + y * y > aperture2) continue;
      const double x0 = x * std::cos(theta) + y * std::sin(theta);
      const double y0 = -x * std::sin(theta) + y * std::cos(theta);
      const double env = std::exp(-(x0 * x0 + gamma * gamma * y0 * y0) /
                                  (2.0 * scale.sigma * scale.sigma));
      const double v = env * std::cos(2.0 * std::numbers::pi * x0 / scale.lambda);
      f[static_cast<std::size_t>(r) * n + c] = v;
      sum += v;
      ++live;
    }
  }

  // Zero mean over the aperture, then unit L2 norm.
  const double mean = sum / live;
  double norm2 = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = c - half;
      const double y = r - half;
      auto& v = f[static_cast<std::size_t>(r) * n + c];
      if (x * x + y * y > aperture2) {
        v = 0.0;
        continue;
      }
      v -= mean;
      norm2 += v * v;
    }
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : f) v *= inv;
  return f;
}

}  // namespace facet
