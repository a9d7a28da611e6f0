#pragma once

// Newton-basin imaging: per-pixel iteration, root-weighted coloring and
// detection of attracting cycles that contain no root.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccslab/polynomial.hpp"
#include "ccslab/states.hpp"
#include "ccslab/transitions.hpp"

namespace ccslab {

/// Unit-interval RGB.
struct Color {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend bool operator==(const Color&, const Color&) = default;
};

/// 8-bit RGB.
struct Pixel {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

Pixel to_pixel(const Color& c);
Color from_pixel(const Pixel& p);

struct ColoredRoot {
  ExtComplex root;
  Color color;
};

/// Dark teal, (0, 89, 89) in 8-bit RGB.
inline const Color kDivergeColor{0.0, 89.0 / 255.0, 89.0 / 255.0};
/// Distance clamp in standard_color.
inline constexpr double kColorEpsilon = 1e-12;
inline constexpr double kFarDistance = 1e12;
inline constexpr std::size_t kMaxCyclePeriod = 16;

struct RenderConfig {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  std::size_t width = 300;
  std::size_t height = 300;
  std::size_t iterations = 100;
  /// Computed from the polynomial when empty (see default_root_colors).
  std::vector<ColoredRoot> roots;
  /// Chordal tolerance for root capture and cycle detection.
  double root_tol = 1e-6;
  Color diverge_color = kDivergeColor;

  /// Throws std::invalid_argument when the window, size or colors are invalid.
  void validate() const;
};

/// Distinct roots of p, real roots first, then the upper and lower half
/// planes (each ordered by real part), colored red, green, blue, then a
/// fixed palette. Throws DegreeError for constants.
std::vector<ColoredRoot> default_root_colors(const Polynomial& p);

/// Σ w_i·color_i / Σ w_i with w_i = 1/max(|z - r_i|, ε). Returns a root's
/// color exactly when z is within ε of it, and the plain average when z = ∞
/// or every root is farther than 1e12. Throws std::invalid_argument for an
/// empty root list.
Color standard_color(const ExtComplex& z, const std::vector<ColoredRoot>& roots);

/// Smallest q <= 16 such that the last 2q points repeat with period q
/// (chordal tolerance), or nullopt.
std::optional<std::size_t> detect_cycle(const std::vector<ExtComplex>& orbit, double tol);

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  /// Row-major, top-left origin.
  std::vector<Pixel> pixels;

  const Pixel& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// How a single starting point is colored.
enum class PixelKind { Root, Cycle, Blend };

struct PointColor {
  PixelKind kind = PixelKind::Blend;
  Color color;
  /// Index into the root list for PixelKind::Root.
  std::optional<std::size_t> root;
};

/// Colors one starting point with the rules used by render_basins. `cfg`
/// must carry a non-empty root list.
PointColor render_point(const NewtonMap& map, const ExtComplex& z0, const RenderConfig& cfg);

/// The complex number at the center of pixel (x, y).
ExtComplex pixel_center(const RenderConfig& cfg, std::size_t x, std::size_t y);

/// Renders every pixel center. Rows are distributed over worker threads;
/// the result does not depend on scheduling.
Image render_basins(const Polynomial& p, const RenderConfig& cfg);

/// Binary PPM (P6). Throws IoError.
void write_ppm(const Image& img, const std::string& path);
/// Encoded P6 bytes.
std::vector<std::uint8_t> encode_ppm(const Image& img);
/// Lossless PNG of the same buffer. Throws IoError, or Error when built
/// without PNG support.
void write_png(const Image& img, const std::string& path);
bool png_supported() noexcept;

}  // namespace ccslab
