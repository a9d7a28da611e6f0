#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "ccslab/errors.hpp"
#include "ccslab/render.hpp"

using namespace ccslab;

namespace {

const Color kRed{1, 0, 0};
const Color kGreen{0, 1, 0};
const Color kBlue{0, 0, 1};

RenderConfig small_config(std::size_t w, std::size_t h, std::size_t iters) {
  RenderConfig cfg;
  cfg.width = w;
  cfg.height = h;
  cfg.iterations = iters;
  return cfg;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("pixel conversion") {
  CHECK(to_pixel(kRed) == Pixel{255, 0, 0});
  CHECK(to_pixel(kDivergeColor) == Pixel{0, 89, 89});
  CHECK(to_pixel({0.5, 0.0, 0.5}) == Pixel{128, 0, 128});
  CHECK(from_pixel(Pixel{255, 0, 255}) == Color{1, 0, 1});
}

TEST_CASE("standard_color examples") {
  const std::vector<ColoredRoot> two{{ExtComplex(-1.0, 0.0), kRed}, {ExtComplex(1.0, 0.0), kBlue}};
  CHECK(standard_color(ExtComplex(-1.0, 0.0), two) == kRed);
  const auto mid = standard_color(ExtComplex(0.0, 0.0), two);
  CHECK(mid.r == doctest::Approx(0.5));
  CHECK(mid.g == 0.0);
  CHECK(mid.b == doctest::Approx(0.5));
  const auto far = standard_color(ExtComplex::infinity(), two);
  CHECK(far.r == doctest::Approx(0.5));
  CHECK(far.b == doctest::Approx(0.5));
  CHECK(standard_color(ExtComplex(1e13, 0.0), two) == far);
  // Closer root dominates: d = (1/2, 3/2) gives weights 2 : 2/3.
  const auto near = standard_color(ExtComplex(-0.5, 0.0), two);
  CHECK(near.r == doctest::Approx(0.75));
  CHECK(near.b == doctest::Approx(0.25));
  CHECK_THROWS_AS(standard_color(ExtComplex(0.0, 0.0), {}), std::invalid_argument);
}

TEST_CASE("property: standard_color is a convex combination") {
  const auto roots = default_root_colors(Polynomial::parse("z^3-1"));
  for (int i = -10; i <= 10; ++i) {
    for (int j = -10; j <= 10; ++j) {
      const auto c = standard_color(ExtComplex(0.3 * i, 0.3 * j), roots);
      CHECK(c.r + c.g + c.b == doctest::Approx(1.0));
      CHECK(c.r >= 0.0);
      CHECK(c.g >= 0.0);
      CHECK(c.b >= 0.0);
    }
  }
}

TEST_CASE("default root colors") {
  const auto roots = default_root_colors(Polynomial::parse("z^3-1"));
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].color == kRed);
  CHECK(roots[0].root.value() == std::complex<double>(1.0, 0.0));
  CHECK(roots[1].color == kGreen);
  CHECK(roots[1].root.value().imag() > 0);
  CHECK(roots[2].color == kBlue);
  CHECK(default_root_colors(Polynomial::parse("z^2-2z+1")).size() == 1);
  CHECK_THROWS_AS(default_root_colors(Polynomial::parse("3")), DegreeError);
}

TEST_CASE("detect_cycle examples") {
  const NewtonMap wild(Polynomial::parse("z^3-2z+2"));
  const auto orbit = newton_orbit(wild, ExtComplex(0.0, 0.0), 10);
  CHECK(detect_cycle(orbit, 1e-9) == std::optional<std::size_t>(2));
  const NewtonMap tame(Polynomial::parse("z^2-2"));
  CHECK(detect_cycle(newton_orbit(tame, ExtComplex(1.0, 0.0), 20), 1e-9) == std::optional<std::size_t>(1));
  CHECK_FALSE(detect_cycle({ExtComplex(1.0, 0.0)}, 1e-9).has_value());
  CHECK_FALSE(detect_cycle(newton_orbit(tame, ExtComplex(1.0, 0.0), 2), 1e-12).has_value());
}

TEST_CASE("render_point examples") {
  const auto p = Polynomial::parse("z^3-1");
  auto cfg = small_config(300, 300, 100);
  cfg.roots = default_root_colors(p);
  const auto at_root = render_point(NewtonMap(p), ExtComplex(1.0, 0.0), cfg);
  CHECK(at_root.kind == PixelKind::Root);
  CHECK(at_root.color == kRed);

  const auto q = Polynomial::parse("z^3-2z+2");
  auto wild = small_config(300, 300, 100);
  wild.roots = default_root_colors(q);
  const auto teal = render_point(NewtonMap(q), ExtComplex(0.0, 0.0), wild);
  CHECK(teal.kind == PixelKind::Cycle);
  CHECK(teal.color == kDivergeColor);

  // One step leaves most points short of a root: a blended color.
  auto fuzzy = small_config(300, 300, 1);
  fuzzy.roots = cfg.roots;
  const auto blend = render_point(NewtonMap(p), ExtComplex(0.7, 0.9), fuzzy);
  CHECK(blend.kind == PixelKind::Blend);
  CHECK_FALSE(blend.color == kRed);
  CHECK_FALSE(blend.color == kGreen);
  CHECK_FALSE(blend.color == kBlue);
}

TEST_CASE("pixel centers") {
  const auto cfg = small_config(4, 2, 1);
  CHECK(pixel_center(cfg, 0, 0).value() == std::complex<double>(-1.5, 1.0));
  CHECK(pixel_center(cfg, 3, 1).value() == std::complex<double>(1.5, -1.0));
}

TEST_CASE("config validation") {
  auto cfg = small_config(0, 1, 1);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config(2, 2, 1);
  cfg.re_min = 3.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config(2, 2, 1);
  cfg.roots = {{ExtComplex(1.0, 0.0), kRed}, {ExtComplex(-1.0, 0.0), kRed}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS(render_basins(Polynomial::parse("3"), small_config(2, 2, 0)), DegreeError);
}

TEST_CASE("ppm encoding") {
  Image red{1, 1, {Pixel{255, 0, 0}}};
  const std::vector<std::uint8_t> expected{0x50, 0x36, 0x0A, 0x31, 0x20, 0x31, 0x0A,
                                           0x32, 0x35, 0x35, 0x0A, 0xFF, 0x00, 0x00};
  CHECK(encode_ppm(red) == expected);
  Image two{2, 1, {Pixel{1, 2, 3}, Pixel{4, 5, 6}}};
  const auto bytes = encode_ppm(two);
  CHECK(bytes.size() == std::string("P6\n2 1\n255\n").size() + 6);

  const std::string path = "test_render_red.ppm";
  write_ppm(red, path);
  CHECK(read_file(path) == expected);
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_ppm(red, "/nonexistent-dir/x.ppm"), IoError);
}

TEST_CASE("png output") {
  Image img{2, 2, {Pixel{255, 0, 0}, Pixel{0, 255, 0}, Pixel{0, 0, 255}, Pixel{0, 89, 89}}};
  const std::string path = "test_render.png";
  if (png_supported()) {
    write_png(img, path);
    const auto bytes = read_file(path);
    REQUIRE(bytes.size() > 8);
    CHECK(bytes[1] == 'P');
    CHECK(bytes[2] == 'N');
    CHECK(bytes[3] == 'G');
    std::remove(path.c_str());
  } else {
    CHECK_THROWS_AS(write_png(img, path), Error);
  }
}

TEST_CASE("property: deterministic rendering") {
  const auto p = Polynomial::parse("z^3-2z+2");
  const auto cfg = small_config(40, 30, 50);
  CHECK(encode_ppm(render_basins(p, cfg)) == encode_ppm(render_basins(p, cfg)));
}

TEST_CASE("property: sharpness grows with the iteration count") {
  const auto p = Polynomial::parse("z^3-1");
  const NewtonMap map(p);
  std::vector<ExtComplex> probes;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) probes.emplace_back(-1.75 + 0.5 * i, -1.75 + 0.5 * j);
  }
  double previous = -1.0;
  for (std::size_t n : {1, 3, 10, 100}) {
    auto cfg = small_config(8, 8, n);
    cfg.roots = default_root_colors(p);
    std::size_t captured = 0;
    for (const auto& z : probes) captured += render_point(map, z, cfg).kind == PixelKind::Root ? 1 : 0;
    const double frac = static_cast<double>(captured) / static_cast<double>(probes.size());
    CHECK(frac >= previous);
    previous = frac;
  }
  CHECK(previous == 1.0);
}

TEST_CASE("property: pixels at roots get the exact root color") {
  const auto p = Polynomial::parse("z^3-1");
  // The middle pixel center of this window is exactly 1.
  RenderConfig cfg = small_config(5, 5, 0);
  cfg.re_min = 0.0;
  cfg.re_max = 2.0;
  cfg.im_min = -1.0;
  cfg.im_max = 1.0;
  const auto img = render_basins(p, cfg);
  CHECK(img.at(2, 2) == Pixel{255, 0, 0});
}

TEST_CASE("property: 120-degree symmetry for z^3-1") {
  const auto p = Polynomial::parse("z^3-1");
  const NewtonMap map(p);
  auto cfg = small_config(300, 300, 100);
  cfg.roots = default_root_colors(p);
  const std::complex<double> omega = std::polar(1.0, 2.0 * M_PI / 3.0);
  auto rotated = [](const Color& c) { return Color{c.b, c.r, c.g}; };
  for (int i = 0; i < 12; ++i) {
    for (int j = 1; j < 12; ++j) {
      const std::complex<double> z = std::polar(0.15 * j, 2.0 * M_PI * i / 12.0 + 0.01);
      const auto c0 = render_point(map, ExtComplex(z), cfg);
      const auto c1 = render_point(map, ExtComplex(omega * z), cfg);
      if (c0.kind != PixelKind::Root) continue;
      REQUIRE(c1.kind == PixelKind::Root);
      // red -> green -> blue follows multiplication by omega.
      CHECK(c1.color == rotated(c0.color));
    }
  }
}
