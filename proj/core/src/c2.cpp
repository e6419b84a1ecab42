#include "facet/c2.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace facet {

PoolingSpan pooling_span_from_name(const std::string& name) {
  if (name == "band-only") return PoolingSpan::band_only;
  if (name == "adjacent") return PoolingSpan::adjacent;
  if (name == "all") return PoolingSpan::all;
  throw std::invalid_argument("unknown pooling span: " + name);
}

const char* pooling_span_name(PoolingSpan s) {
  switch (s) {
    case PoolingSpan::band_only: return "band-only";
    case PoolingSpan::adjacent: return "adjacent";
    case PoolingSpan::all: return "all";
  }
  return "?";
}

std::vector<int> required_bands(int template_band, PoolingSpan span, int n_bands) {
  const int own = template_band - 1;
  if (own < 0 || own >= n_bands) {
    throw std::invalid_argument("required_bands: template band out of range");
  }
  std::vector<int> bands;
  switch (span) {
    case PoolingSpan::band_only:
      bands.push_back(own);
      break;
    case PoolingSpan::adjacent:
      for (int b = std::max(0, own - 1); b <= std::min(n_bands - 1, own + 1); ++b) {
        bands.push_back(b);
      }
      break;
    case PoolingSpan::all:
      for (int b = 0; b < n_bands; ++b) bands.push_back(b);
      break;
  }
  return bands;
}

namespace {

// Smallest squared patch distance over all valid positions of one band.
// `cutoff` lets the scan bail out of a position as soon as its partial sum
// exceeds the best distance seen so far.
double min_dist2_on_band(const BandGrid& g, const Template& t, double cutoff) {
  const int k = t.k;
  double best = cutoff;
  for (int pr = 0; pr + k <= g.rows; ++pr) {
    for (int pc = 0; pc + k <= g.cols; ++pc) {
      double acc = 0.0;
      for (int o = 0; o < g.orientations && acc < best; ++o) {
        const float* tp = t.patch.data() + static_cast<std::size_t>(o) * k * k;
        for (int r = 0; r < k; ++r) {
          const float* gp =
              &g.v[(static_cast<std::size_t>(o) * g.rows + pr + r) * g.cols + pc];
          for (int c = 0; c < k; ++c) {
            const double d = static_cast<double>(gp[c]) - tp[r * k + c];
            acc += d * d;
          }
        }
      }
      if (acc < best) best = acc;
    }
  }
  return best;
}

}  // namespace

ResponseMap s2_response(const FeatureMap& c1map, const Template& t, double sigma) {
  const int bi = t.band - 1;
  if (bi < 0 || bi >= c1map.n_levels() || c1map.levels[bi].empty()) {
    throw std::invalid_argument("s2_response: C1 map does not cover template band " +
                                std::to_string(t.band));
  }
  const BandGrid& g = c1map.levels[bi];
  const int k = t.k;
  if (g.rows < k || g.cols < k) {
    throw std::invalid_argument("s2_response: band grid smaller than template");
  }
  if (static_cast<std::size_t>(g.orientations) * k * k != t.patch.size()) {
    throw std::invalid_argument("s2_response: orientation count mismatch");
  }
  const double d = static_cast<double>(k) * k * g.orientations;
  const double denom = 2.0 * sigma * sigma * d;

  ResponseMap out;
  out.rows = g.rows - k + 1;
  out.cols = g.cols - k + 1;
  out.v.resize(static_cast<std::size_t>(out.rows) * out.cols);
  for (int pr = 0; pr < out.rows; ++pr) {
    for (int pc = 0; pc < out.cols; ++pc) {
      double acc = 0.0;
      for (int o = 0; o < g.orientations; ++o) {
        const float* tp = t.patch.data() + static_cast<std::size_t>(o) * k * k;
        for (int r = 0; r < k; ++r) {
          const float* gp =
              &g.v[(static_cast<std::size_t>(o) * g.rows + pr + r) * g.cols + pc];
          for (int c = 0; c < k; ++c) {
            const double diff = static_cast<double>(gp[c]) - tp[r * k + c];
            acc += diff * diff;
          }
        }
      }
      out.v[static_cast<std::size_t>(pr) * out.cols + pc] =
          static_cast<float>(std::exp(-acc / denom));
    }
  }
  return out;
}

C2Vector c2(const FeatureMap& c1map, const TemplateBank& bank, PoolingSpan span) {
  if (bank.templates.empty()) throw std::invalid_argument("c2: empty template bank");
  const std::vector<int> bands = required_bands(bank.band, span, c1map.n_levels());
  const int own = bank.band - 1;
  if (c1map.levels[own].empty()) {
    throw std::invalid_argument("c2: C1 map does not cover band " + std::to_string(bank.band));
  }
  const double d = static_cast<double>(bank.k) * bank.k * bank.n_orientations;
  const double denom = 2.0 * bank.sigma * bank.sigma * d;

  C2Vector out;
  out.bank_hash = bank.content_hash();
  out.values.resize(bank.size());
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const Template& t = bank.templates[i];
    double best = std::numeric_limits<double>::infinity();
    for (int b : bands) {
      const BandGrid& g = c1map.levels[b];
      // Neighbor bands the image was too small for contribute nothing; the
      // template's own band was checked above.
      if (g.empty() || g.rows < t.k || g.cols < t.k) continue;
      best = min_dist2_on_band(g, t, best);
    }
    out.values[i] = static_cast<float>(std::exp(-best / denom));
  }
  return out;
}

double dissimilarity(const C2Vector& a, const C2Vector& b) {
  if (a.bank_hash != b.bank_hash) {
    throw std::invalid_argument("dissimilarity: C2 vectors from different banks");
  }
  if (a.values.size() != b.values.size()) {
    throw std::invalid_argument("dissimilarity: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = static_cast<double>(a.values[i]) - b.values[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

namespace {

constexpr std::array<char, 4> kCacheMagic = {'F', 'C', '2', 'C'};
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw std::runtime_error(path.string() + ": truncated C2 cache");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void save_c2_cache(const C2Cache& cache, const std::filesystem::path& path) {
  if (cache.matrix.size() !=
      cache.image_ids.size() * static_cast<std::size_t>(cache.n_templates)) {
    throw std::invalid_argument("save_c2_cache: matrix shape mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out.write(kCacheMagic.data(), kCacheMagic.size());
  put<std::uint32_t>(out, kCacheVersion);
  put<std::uint64_t>(out, cache.bank_hash);
  put<std::uint64_t>(out, cache.config_hash);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cache.image_ids.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cache.n_templates));
  for (const auto& id : cache.image_ids) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
  }
  for (float v : cache.matrix) put<float>(out, v);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

C2Cache load_c2_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::array<char, 4> magic;
  in.read(magic.data(), magic.size());
  if (!in || magic != kCacheMagic) {
    throw std::runtime_error(path.string() + ": not a C2 cache file");
  }
  const auto version = get<std::uint32_t>(in, path);
  if (version != kCacheVersion) {
    throw std::runtime_error(path.string() + ": unsupported cache version");
  }
  C2Cache cache;
  cache.bank_hash = get<std::uint64_t>(in, path);
  cache.config_hash = get<std::uint64_t>(in, path);
  const auto n_images = get<std::uint32_t>(in, path);
  cache.n_templates = static_cast<int>(get<std::uint32_t>(in, path));
  cache.image_ids.resize(n_images);
  for (auto& id : cache.image_ids) {
    const auto len = get<std::uint32_t>(in, path);
    id.resize(len);
    in.read(id.data(), len);
    if (!in) throw std::runtime_error(path.string() + ": truncated C2 cache");
  }
  cache.matrix.resize(static_cast<std::size_t>(n_images) * cache.n_templates);
  for (auto& v : cache.matrix) v = get<float>(in, path);
  return cache;
}

}  // namespace facet
