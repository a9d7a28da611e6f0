#include "ccslab/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include "ccslab/errors.hpp"
#include "ccslab/transitions.hpp"

#ifdef CCSLAB_HAVE_PNG
#include <png.h>
#endif

namespace ccslab {

Pixel to_pixel(const Color& c) {
  auto channel = [](double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  };
  return {channel(c.r), channel(c.g), channel(c.b)};
}

Color from_pixel(const Pixel& p) { return {p.r / 255.0, p.g / 255.0, p.b / 255.0}; }

namespace {

bool unit(const Color& c) {
  auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
  return ok(c.r) && ok(c.g) && ok(c.b);
}

const Color kPalette[] = {
    {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 1.0, 0.0},
    {1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, {1.0, 0.5, 0.0}, {0.5, 0.0, 1.0},
};

}  // namespace

void RenderConfig::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) throw std::invalid_argument("render window must be non-empty");
  if (width < 1 || height < 1) throw std::invalid_argument("image size must be at least 1x1");
  if (!(root_tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");
  if (!unit(diverge_color)) throw std::invalid_argument("diverge color must be a unit-interval triple");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!unit(roots[i].color)) throw std::invalid_argument("root colors must be unit-interval triples");
    for (std::size_t j = 0; j < i; ++j) {
      if (roots[i].color == roots[j].color) throw std::invalid_argument("root colors must be distinct");
    }
  }
}

std::vector<ColoredRoot> default_root_colors(const Polynomial& p) {
  const auto raw = polynomial_roots(p);
  std::vector<std::complex<double>> roots;
  for (const auto& r : raw) {
    const bool seen = std::any_of(roots.begin(), roots.end(), [&](const auto& q) { return std::abs(q - r) < 1e-6; });
    if (!seen) roots.push_back(r);
  }
  const double real_tol = 1e-9;
  auto group = [&](const std::complex<double>& z) {
    if (std::abs(z.imag()) <= real_tol * std::max(1.0, std::abs(z))) return 0;
    return z.imag() > 0 ? 1 : 2;
  };
  std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
    if (group(a) != group(b)) return group(a) < group(b);
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<ColoredRoot> out;
  const std::size_t palette = std::size(kPalette);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Color c = kPalette[i % palette];
    if (i >= palette) {
      // Darken repeated palette entries so colors stay distinct.
      const double f = 1.0 / static_cast<double>(1 + i / palette);
      c = {c.r * f, c.g * f, c.b * f};
    }
    auto z = roots[i];
    if (group(z) == 0) z = {z.real(), 0.0};
    out.push_back({ExtComplex(z), c});
  }
  return out;
}

Color standard_color(const ExtComplex& z, const std::vector<ColoredRoot>& roots) {
  if (roots.empty()) throw std::invalid_argument("standard color needs at least one root");
  auto average = [&] {
    Color c;
    for (const auto& r : roots) {
      c.r += r.color.r;
      c.g += r.color.g;
      c.b += r.color.b;
    }
    const double n = static_cast<double>(roots.size());
    return Color{c.r / n, c.g / n, c.b / n};
  };
  if (z.is_infinity()) return average();
  std::vector<double> d;
  bool all_far = true;
  for (const auto& r : roots) {
    const double di = r.root.is_infinity() ? std::numeric_limits<double>::infinity() : std::abs(z.value() - r.root.value());
    if (di <= kColorEpsilon) return r.color;
    all_far = all_far && di > kFarDistance;
    d.push_back(di);
  }
  if (all_far) return average();
  Color c;
  double total = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double w = 1.0 / std::max(d[i], kColorEpsilon);
    c.r += w * roots[i].color.r;
    c.g += w * roots[i].color.g;
    c.b += w * roots[i].color.b;
    total += w;
  }
  return {c.r / total, c.g / total, c.b / total};
}

std::optional<std::size_t> detect_cycle(const std::vector<ExtComplex>& orbit, double tol) {
  const std::size_t n = orbit.size();
  for (std::size_t q = 1; q <= kMaxCyclePeriod && 2 * q <= n; ++q) {
    bool repeats = true;
    for (std::size_t i = 0; i < q && repeats; ++i) {
      repeats = chordal_distance(orbit[n - 1 - i], orbit[n - 1 - i - q]) <= tol;
    }
    if (repeats) return q;
  }
  return std::nullopt;
}

ExtComplex pixel_center(const RenderConfig& cfg, std::size_t x, std::size_t y) {
  const double re = cfg.re_min + (static_cast<double>(x) + 0.5) * (cfg.re_max - cfg.re_min) / static_cast<double>(cfg.width);
  const double im = cfg.im_max - (static_cast<double>(y) + 0.5) * (cfg.im_max - cfg.im_min) / static_cast<double>(cfg.height);
  return ExtComplex(re, im);
}

PointColor render_point(const NewtonMap& map, const ExtComplex& z0, const RenderConfig& cfg) {
  if (cfg.roots.empty()) throw std::invalid_argument("render_point needs a root list");
  // Only the tail matters for cycle detection.
  constexpr std::size_t kKeep = 2 * kMaxCyclePeriod;
  std::vector<ExtComplex> tail;
  tail.reserve(kKeep + 1);
  ExtComplex z = z0;
  tail.push_back(z);
  for (std::size_t i = 0; i < cfg.iterations; ++i) {
    z = map(z);
    tail.push_back(z);
    if (tail.size() > kKeep) tail.erase(tail.begin());
  }
  for (std::size_t i = 0; i < cfg.roots.size(); ++i) {
    if (chordal_distance(z, cfg.roots[i].root) <= cfg.root_tol) return {PixelKind::Root, cfg.roots[i].color, i};
  }
  if (const auto q = detect_cycle(tail, cfg.root_tol)) {
    // The cycle contains no root: the endpoint is not near one and the
    // remaining cycle points are checked here.
    bool has_root = false;
    for (std::size_t i = 0; i < *q && !has_root; ++i) {
      const auto& w = tail[tail.size() - 1 - i];
      for (const auto& r : cfg.roots) has_root = has_root || chordal_distance(w, r.root) <= cfg.root_tol;
    }
    if (!has_root) return {PixelKind::Cycle, cfg.diverge_color, std::nullopt};
  }
  return {PixelKind::Blend, standard_color(z, cfg.roots), std::nullopt};
}

Image render_basins(const Polynomial& p, const RenderConfig& cfg_in) {
  RenderConfig cfg = cfg_in;
  if (cfg.roots.empty()) cfg.roots = default_root_colors(p);
  cfg.validate();
  const NewtonMap map(p);

  Image img;
  img.width = cfg.width;
  img.height = cfg.height;
  img.pixels.resize(cfg.width * cfg.height);

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, cfg.height));
  auto work = [&](std::size_t first) {
    for (std::size_t y = first; y < cfg.height; y += workers) {
      for (std::size_t x = 0; x < cfg.width; ++x) {
        img.pixels[y * cfg.width + x] = to_pixel(render_point(map, pixel_center(cfg, x, y), cfg).color);
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(work, t);
    for (auto& t : threads) t.join();
  }
  return img;
}

std::vector<std::uint8_t> encode_ppm(const Image& img) {
  if (img.pixels.size() != img.width * img.height) throw std::invalid_argument("image buffer size mismatch");
  const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + 3 * img.pixels.size());
  for (const auto& px : img.pixels) {
    out.push_back(px.r);
    out.push_back(px.g);
    out.push_back(px.b);
  }
  return out;
}

void write_ppm(const Image& img, const std::string& path) {
  const auto bytes = encode_ppm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path);
}

bool png_supported() noexcept {
#ifdef CCSLAB_HAVE_PNG
  return true;
#else
  return false;
#endif
}

void write_png(const Image& img, const std::string& path) {
#ifdef CCSLAB_HAVE_PNG
  if (img.pixels.size() != img.width * img.height) throw std::invalid_argument("image buffer size mismatch");
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!file) throw IoError("cannot open " + path + " for writing");
  std::vector<png_byte> row(3 * img.width);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw IoError("failed writing " + path);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      const auto& px = img.at(x, y);
      row[3 * x] = px.r;
      row[3 * x + 1] = px.g;
      row[3 * x + 2] = px.b;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
#else
  (void)img;
  throw Error("PNG output is not available in this build; write " + path + " as .ppm instead");
#endif
}

}  // namespace ccslab
