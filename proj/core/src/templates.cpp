#include "facet/templates.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "facet/rng.hpp"

namespace facet {

int size_class_k(SizeClass s) {
  switch (s) {
    case SizeClass::small: return 4;
    case SizeClass::medium: return 8;
    case SizeClass::large: return 12;
  }
  return 0;
}

const char* size_class_name(SizeClass s) {
  switch (s) {
    case SizeClass::small: return "small";
    case SizeClass::medium: return "medium";
    case SizeClass::large: return "large";
  }
  return "?";
}

SizeClass size_class_from_name(const std::string& name) {
  if (name == "small") return SizeClass::small;
  if (name == "medium") return SizeClass::medium;
  if (name == "large") return SizeClass::large;
  throw std::invalid_argument("unknown size class: " + name);
}

std::uint64_t TemplateBank::content_hash() const {
  std::uint64_t h = fnv1a64(&k, sizeof(k));
  h = fnv1a64(&band, sizeof(band), h);
  h = fnv1a64(&n_orientations, sizeof(n_orientations), h);
  h = fnv1a64(&sigma, sizeof(sigma), h);
  h = fnv1a64(&model_hash, sizeof(model_hash), h);
  for (const auto& t : templates) {
    h = fnv1a64(&t.source_image, sizeof(t.source_image), h);
    h = fnv1a64(&t.source_row, sizeof(t.source_row), h);
    h = fnv1a64(&t.source_col, sizeof(t.source_col), h);
    h = fnv1a64(t.patch.data(), t.patch.size() * sizeof(float), h);
  }
  return h;
}

TemplateBank learn_templates(const std::vector<FeatureMap>& train_c1, SizeClass size_class,
                             int n, int band, double sigma, std::uint64_t seed,
                             std::uint64_t model_hash) {
  if (n < 1) throw std::invalid_argument("learn_templates: n must be >= 1");
  if (train_c1.empty()) throw std::invalid_argument("learn_templates: no training images");
  const int k = size_class_k(size_class);
  const int bi = band - 1;

  struct Pos {
    int img, row, col;
  };
  std::vector<Pos> positions;
  int n_orient = 0;
  for (std::size_t i = 0; i < train_c1.size(); ++i) {
    if (bi < 0 || bi >= train_c1[i].n_levels()) {
      throw std::invalid_argument("learn_templates: band out of range");
    }
    const BandGrid& g = train_c1[i].levels[bi];
    if (g.empty() || g.rows < k || g.cols < k) {
      throw std::invalid_argument("learn_templates: C1 grid of training image " +
                                  std::to_string(i) + " is smaller than " +
                                  std::to_string(k) + "x" + std::to_string(k));
    }
    n_orient = g.orientations;
    for (int r = 0; r + k <= g.rows; ++r) {
      for (int c = 0; c + k <= g.cols; ++c) {
        positions.push_back({static_cast<int>(i), r, c});
      }
    }
  }
  if (static_cast<int>(positions.size()) < n) {
    throw std::invalid_argument("learn_templates: only " + std::to_string(positions.size()) +
                                " distinct (image, position) pairs for " + std::to_string(n) +
                                " templates");
  }

  // Sample without replacement: shuffle the full position list, take n.
  Rng rng(derive_seed(seed, "template-positions"));
  rng.shuffle(positions);

  TemplateBank bank;
  bank.size_class = size_class;
  bank.k = k;
  bank.band = band;
  bank.n_orientations = n_orient;
  bank.sigma = sigma;
  bank.model_hash = model_hash;
  bank.seed = seed;
  bank.templates.reserve(n);
  for (int t = 0; t < n; ++t) {
    const Pos& p = positions[t];
    const BandGrid& g = train_c1[p.img].levels[bi];
    Template tmpl;
    tmpl.id = t;
    tmpl.k = k;
    tmpl.band = band;
    tmpl.source_image = p.img;
    tmpl.source_row = p.row;
    tmpl.source_col = p.col;
    tmpl.patch.resize(static_cast<std::size_t>(n_orient) * k * k);
    for (int o = 0; o < n_orient; ++o) {
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
          tmpl.patch[(static_cast<std::size_t>(o) * k + r) * k + c] =
              g.at(o, p.row + r, p.col + c);
        }
      }
    }
    bank.templates.push_back(std::move(tmpl));
  }
  return bank;
}

namespace {

constexpr std::array<char, 4> kBankMagic = {'F', 'T', 'B', '1'};
constexpr std::uint32_t kBankVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  // Fields are written byte-by-byte little-endian so the container is
  // identical on any host.
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw std::runtime_error(path.string() + ": truncated bank file");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void save_bank(const TemplateBank& bank, const std::filesystem::path& path,
               std::uint64_t config_hash, std::uint64_t master_seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out.write(kBankMagic.data(), kBankMagic.size());
  put<std::uint32_t>(out, kBankVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(bank.size_class));
  put<std::uint8_t>(out, 0);
  put<std::uint8_t>(out, 0);
  put<std::uint8_t>(out, 0);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(bank.band));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(bank.n_orientations));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(bank.k));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(bank.templates.size()));
  put<double>(out, bank.sigma);
  put<std::uint64_t>(out, bank.model_hash);
  put<std::uint64_t>(out, bank.seed);
  for (const auto& t : bank.templates) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.id));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.source_image));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.source_row));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.source_col));
  }
  for (const auto& t : bank.templates) {
    for (float v : t.patch) put<float>(out, v);
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
  out.close();

  nlohmann::json side;
  side["format"] = "facet-template-bank";
  side["format_version"] = kBankVersion;
  side["size_class"] = size_class_name(bank.size_class);
  side["band"] = bank.band;
  side["n_orientations"] = bank.n_orientations;
  side["k"] = bank.k;
  side["n_templates"] = bank.templates.size();
  side["sigma"] = bank.sigma;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(bank.model_hash));
  side["model_hash"] = hex;
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(bank.content_hash()));
  side["bank_hash"] = hex;
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(config_hash));
  side["config_hash"] = hex;
  side["seed"] = bank.seed;
  side["master_seed"] = master_seed;
  std::ofstream js(path.string() + ".json");
  js << side.dump(2) << "\n";
}

TemplateBank load_bank(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::array<char, 4> magic;
  in.read(magic.data(), magic.size());
  if (!in || magic != kBankMagic) {
    throw std::runtime_error(path.string() + ": not a template bank file");
  }
  const auto version = get<std::uint32_t>(in, path);
  if (version != kBankVersion) {
    throw std::runtime_error(path.string() + ": unsupported bank version " +
                             std::to_string(version));
  }
  TemplateBank bank;
  bank.size_class = static_cast<SizeClass>(get<std::uint8_t>(in, path));
  get<std::uint8_t>(in, path);
  get<std::uint8_t>(in, path);
  get<std::uint8_t>(in, path);
  bank.band = static_cast<int>(get<std::uint32_t>(in, path));
  bank.n_orientations = static_cast<int>(get<std::uint32_t>(in, path));
  bank.k = static_cast<int>(get<std::uint32_t>(in, path));
  const auto n = get<std::uint32_t>(in, path);
  bank.sigma = get<double>(in, path);
  bank.model_hash = get<std::uint64_t>(in, path);
  bank.seed = get<std::uint64_t>(in, path);
  if (bank.k != size_class_k(bank.size_class)) {
    throw std::runtime_error(path.string() + ": k does not match size class");
  }
  bank.templates.resize(n);
  for (auto& t : bank.templates) {
    t.k = bank.k;
    t.band = bank.band;
    t.id = static_cast<int>(get<std::uint32_t>(in, path));
    t.source_image = static_cast<int>(get<std::uint32_t>(in, path));
    t.source_row = static_cast<int>(get<std::uint32_t>(in, path));
    t.source_col = static_cast<int>(get<std::uint32_t>(in, path));
  }
  const std::size_t patch_len =
      static_cast<std::size_t>(bank.n_orientations) * bank.k * bank.k;
  for (auto& t : bank.templates) {
    t.patch.resize(patch_len);
    for (auto& v : t.patch) v = get<float>(in, path);
  }
  return bank;
}

}  // namespace facet
