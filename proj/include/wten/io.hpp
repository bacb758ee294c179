#pragma once

#include "wten/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wten {

/// Reads an NPY file (format 1.0 or 2.0, little-endian float64 or float32,
/// C order) holding an array of shape (n1, n2, p) or (n1, n2). float32 data
/// is widened to double. Throws FormatError or IoError.
Tensor3 load_tensor(const std::filesystem::path& path);

/// Writes NPY 1.0, dtype '<f8', C order, shape (n1, n2, p). Throws IoError.
void save_tensor(const Tensor3& t, const std::filesystem::path& path);

/// In-memory NPY decoding/encoding behind load_tensor / save_tensor.
Tensor3 decode_npy(std::string_view bytes);
std::string encode_npy(const Tensor3& t);

/// Which image a preview shows: the band average or one frontal slice.
struct Band {
  bool mean = true;
  Index index = 0;  ///< 0-based frontal slice when !mean

  static Band average() { return {true, 0}; }
  static Band slice(Index k) { return {false, k}; }
};

/// 8-bit grey image of the selected band, rows = n1 and columns = n2,
/// min-max normalised to 0..255; a constant image maps to 128.
/// Throws IndexError for an out-of-range slice.
std::vector<std::uint8_t> preview_pixels(const Tensor3& t, Band band);

/// Binary PGM (P5) bytes for preview_pixels.
std::string encode_pgm(const Tensor3& t, Band band);

void save_preview(const Tensor3& t, const std::filesystem::path& path, Band band);

}  // namespace wten
