#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "facet/hmax.hpp"
#include "facet/templates.hpp"

namespace facet {

// Globally pooled template responses: the face representation every
// experiment compares. values[i] belongs to bank template i.
struct C2Vector {
  std::vector<float> values;
  std::uint64_t bank_hash = 0;
};

struct ResponseMap {
  int rows = 0;
  int cols = 0;
  std::vector<float> v;
  float at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
};

// Which scale bands a C2 unit pools over, relative to the band its template
// was learned at.
enum class PoolingSpan {
  band_only,  // the template's own band
  adjacent,   // own band plus immediate neighbors
  all,        // every band of the C1 pyramid
};

PoolingSpan pooling_span_from_name(const std::string& name);
const char* pooling_span_name(PoolingSpan s);

// 0-based band indices a bank needs under `span`, clipped to [0, n_bands).
std::vector<int> required_bands(int template_band, PoolingSpan span, int n_bands);

// Gaussian tuning over the Euclidean distance between the template and each
// k x k C1 patch of its own band:
//   response(p) = exp(-||patch(p) - t.patch||^2 / (2 sigma^2 d)),
// d = k*k*n_orientations. Responses are in (0, 1], hitting 1 exactly iff the
// patch equals the template bit-for-bit.
ResponseMap s2_response(const FeatureMap& c1map, const Template& t, double sigma);

// Max of the template's Gaussian response over all valid positions of every
// band in the pooling span.
C2Vector c2(const FeatureMap& c1map, const TemplateBank& bank, PoolingSpan span);

// Euclidean distance between two C2 vectors of the same bank.
double dissimilarity(const C2Vector& a, const C2Vector& b);

// --- C2 cache container (little-endian, float32 matrix) ------------------

struct C2Cache {
  std::uint64_t bank_hash = 0;
  std::uint64_t config_hash = 0;
  std::vector<std::string> image_ids;
  int n_templates = 0;
  std::vector<float> matrix;  // row per image

  const float* row(std::size_t i) const { return matrix.data() + i * n_templates; }
};

void save_c2_cache(const C2Cache& cache, const std::filesystem::path& path);
C2Cache load_c2_cache(const std::filesystem::path& path);

}  // namespace facet
