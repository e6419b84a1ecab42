#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "facet/hmax.hpp"

namespace facet {

// Tuning size classes: the side length of the stored C1 patch, in C1 cells.
enum class SizeClass { small, medium, large };

int size_class_k(SizeClass s);                 // 4, 8, 12
const char* size_class_name(SizeClass s);      // "small", "medium", "large"
SizeClass size_class_from_name(const std::string& name);

// One S2/C2 model neuron: a verbatim snapshot of C1 activity from a training
// image, k x k cells by n_orientations planes, at one scale band.
struct Template {
  int id = 0;
  int k = 0;
  int band = 0;  // 1-based scale band the patch was taken from
  int source_image = 0;
  int source_row = 0;
  int source_col = 0;
  std::vector<float> patch;  // [orientation][row][col], k*k*n_orientations
};

struct TemplateBank {
  SizeClass size_class = SizeClass::large;
  int k = 0;
  int band = 0;  // 1-based
  int n_orientations = 0;
  double sigma = 0.5;  // S2 tuning width (normalized C1 units)
  std::uint64_t model_hash = 0;
  std::uint64_t seed = 0;
  std::vector<Template> templates;

  std::size_t size() const { return templates.size(); }
  // Hash over header fields and patch payload; keys C2 caches and the
  // verify subcommand's integrity checks.
  std::uint64_t content_hash() const;
};

// Draws n distinct (image, row, col) snapshot positions uniformly at random
// over the valid k x k patch positions of every training image's band grid,
// and copies the C1 patches verbatim. Deterministic per seed.
//
// `train_c1` holds each training image's C1 map with `band` computed (other
// levels may be empty). Throws if any grid is smaller than k x k or if the
// number of distinct positions is smaller than n.
TemplateBank learn_templates(const std::vector<FeatureMap>& train_c1, SizeClass size_class,
                             int n, int band, double sigma, std::uint64_t seed,
                             std::uint64_t model_hash);

// Binary bank container (little-endian, float32 patches) plus a JSON sidecar
// at path + ".json" mirroring the header for human inspection. The sidecar
// also records the run's config hash and master seed.
void save_bank(const TemplateBank& bank, const std::filesystem::path& path,
               std::uint64_t config_hash, std::uint64_t master_seed);
TemplateBank load_bank(const std::filesystem::path& path);

}  // namespace facet
