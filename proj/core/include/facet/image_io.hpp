#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "facet/image.hpp"

namespace facet {

// Raised when one or more files in a directory cannot be decoded. The
// message names every offending file.
class ImageLoadError : public std::runtime_error {
 public:
  explicit ImageLoadError(const std::string& msg) : std::runtime_error(msg) {}
};

// Decodes a single PGM (binary P5) or grayscale-interpretable PNG file into
// intensities on [0, 1]. Color PNGs are converted with the standard
// luminance weights. Throws ImageLoadError naming the file on any problem.
Image load_image(const std::filesystem::path& file);

// Loads every .pgm/.png file in `dir`, in lexicographic filename order.
// Each entry's id is the filename stem. If any file fails to decode, all
// remaining files are still attempted and a single ImageLoadError is thrown
// naming every bad file and the count that loaded cleanly.
std::vector<NamedImage> load_images(const std::filesystem::path& dir);

// Writes an 8-bit binary PGM. Pixels are clamped to [0, 1] and quantized to
// 0..255. `comments` go into '#' header lines (used to embed the config hash
// and master seed).
void write_pgm(const Image& img, const std::filesystem::path& file,
               const std::vector<std::string>& comments = {});

}  // namespace facet
