#include "facet/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace facet {
namespace {

[[noreturn]] void fail(const std::filesystem::path& file, const std::string& why) {
  throw ImageLoadError(file.string() + ": " + why);
}

int read_pnm_token(std::istream& in, const std::filesystem::path& file) {
  // Whitespace and '#' comment lines may separate header tokens.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF) fail(file, "truncated PGM header");
  int value = 0;
  bool any = false;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    any = true;
    c = in.get();
  }
  if (!any) fail(file, "malformed PGM header");
  return value;
}

Image load_pgm(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(file, "cannot open");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') fail(file, "not a binary (P5) PGM");
  const int width = read_pnm_token(in, file);
  const int height = read_pnm_token(in, file);
  const int maxval = read_pnm_token(in, file);
  if (width < 1 || height < 1) fail(file, "bad dimensions");
  if (maxval < 1 || maxval > 65535) fail(file, "bad maxval");

  Image img(height, width);
  const std::size_t n = static_cast<std::size_t>(width) * height;
  const double inv = 1.0 / maxval;
  if (maxval < 256) {
    std::vector<unsigned char> buf(n);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) fail(file, "truncated pixel data");
    for (std::size_t i = 0; i < n; ++i) img.pixels()[i] = buf[i] * inv;
  } else {
    // 16-bit PGM samples are big-endian.
    std::vector<unsigned char> buf(2 * n);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(2 * n));
    if (static_cast<std::size_t>(in.gcount()) != 2 * n) fail(file, "truncated pixel data");
    for (std::size_t i = 0; i < n; ++i) {
      img.pixels()[i] = ((buf[2 * i] << 8) | buf[2 * i + 1]) * inv;
    }
  }
  return img;
}

struct PngCloser {
  FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

Image load_png(const std::filesystem::path& file) {
  PngCloser h;
  h.fp = std::fopen(file.string().c_str(), "rb");
  if (!h.fp) fail(file, "cannot open");
  h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!h.png) fail(file, "libpng init failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info) fail(file, "libpng init failed");

  if (setjmp(png_jmpbuf(h.png))) {
    fail(file, "corrupt or truncated PNG");
  }
  png_init_io(h.png, h.fp);
  png_read_info(h.png, h.info);

  const png_uint_32 width = png_get_image_width(h.png, h.info);
  const png_uint_32 height = png_get_image_height(h.png, h.info);
  const png_byte color = png_get_color_type(h.png, h.info);
  const png_byte depth = png_get_bit_depth(h.png, h.info);

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(h.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(h.png);
  if (png_get_valid(h.png, h.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(h.png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(h.png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE) {
    png_set_rgb_to_gray_fixed(h.png, 1, -1, -1);  // default luminance weights
  }
  if (depth == 16) png_set_swap(h.png);  // little-endian 16-bit samples
  png_read_update_info(h.png, h.info);

  const int out_depth = png_get_bit_depth(h.png, h.info);
  const double inv = out_depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
  const std::size_t rowbytes = png_get_rowbytes(h.png, h.info);
  std::vector<unsigned char> rowbuf(rowbytes);

  Image img(static_cast<int>(height), static_cast<int>(width));
  for (png_uint_32 r = 0; r < height; ++r) {
    png_read_row(h.png, rowbuf.data(), nullptr);
    if (out_depth == 16) {
      const auto* p = reinterpret_cast<const std::uint16_t*>(rowbuf.data());
      for (png_uint_32 c = 0; c < width; ++c) img.at(static_cast<int>(r), static_cast<int>(c)) = p[c] * inv;
    } else {
      for (png_uint_32 c = 0; c < width; ++c) img.at(static_cast<int>(r), static_cast<int>(c)) = rowbuf[c] * inv;
    }
  }
  png_read_end(h.png, nullptr);
  return img;
}

}  // namespace

Image load_image(const std::filesystem::path& file) {
  std::ifstream probe(file, std::ios::binary);
  if (!probe) fail(file, "cannot open");
  unsigned char magic[8] = {0};
  probe.read(reinterpret_cast<char*>(magic), 8);
  probe.close();
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (std::memcmp(magic, png_sig, 8) == 0) return load_png(file);
  if (magic[0] == 'P' && magic[1] == '5') return load_pgm(file);
  fail(file, "unsupported format (expected binary PGM or PNG)");
}

std::vector<NamedImage> load_images(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ImageLoadError(dir.string() + ": not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm" || ext == ".png") files.push_back(e.path());
  }
  if (files.empty()) {
    throw ImageLoadError(dir.string() + ": no PGM or PNG files found");
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  std::vector<NamedImage> out;
  std::vector<std::string> errors;
  for (const auto& f : files) {
    try {
      out.push_back({f.stem().string(), load_image(f)});
    } catch (const ImageLoadError& e) {
      errors.emplace_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << errors.size() << " file(s) failed to load (" << out.size()
        << " loaded cleanly):";
    for (const auto& e : errors) msg << "\n  " << e;
    throw ImageLoadError(msg.str());
  }
  return out;
}

void write_pgm(const Image& img, const std::filesystem::path& file,
               const std::vector<std::string>& comments) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error(file.string() + ": cannot open for writing");
  out << "P5\n";
  for (const auto& c : comments) out << "# " << c << "\n";
  out << img.width() << " " << img.height() << "\n255\n";
  std::vector<unsigned char> buf(img.pixels().size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const double v = std::clamp(img.pixels()[i], 0.0, 1.0);
    buf[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error(file.string() + ": write failed");
}

}  // namespace facet
