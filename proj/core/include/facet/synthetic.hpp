#pragma once

#include <cstdint>
#include <vector>

#include "facet/image.hpp"
#include "facet/stimulus.hpp"

namespace facet {

// A procedurally generated set of frontal "faces": an oval head with eyes,
// brows, nose, mouth and soft shading, each face drawn with its own jittered
// part positions, sizes and intensities. eye_region is the canvas-coordinate
// band that contains both eyes (with margin) for every face in the set; it
// is shared so eye regions can be swapped between faces.
struct SyntheticSet {
  std::vector<Image> faces;
  Region eye_region;
  int canvas_height = 0;
  int canvas_width = 0;
};

// Deterministic per (seed, index): face i depends only on those two values,
// so the same face is produced regardless of count. Throws if the canvas is
// too small to hold the parts.
SyntheticSet gen_synthetic_faces(int count, std::uint64_t seed, int canvas_height,
                                 int canvas_width);

}  // namespace facet
