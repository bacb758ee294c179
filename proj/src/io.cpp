#include "wten/io.hpp"

#include "wten/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace wten {

static_assert(std::endian::native == std::endian::little, "NPY IO assumes a little-endian host");

namespace {

constexpr std::string_view kMagic = "\x93NUMPY";

struct NpyHeader {
  std::string descr;
  bool fortran_order = false;
  std::vector<Index> shape;
};

// Minimal reader for the Python dict literal in an NPY header.
class HeaderParser {
 public:
  HeaderParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  NpyHeader parse() {
    NpyHeader h;
    bool seen_descr = false, seen_order = false, seen_shape = false;
    expect('{');
    while (true) {
      skip_space();
      if (peek() == '}') break;
      const std::string key = quoted();
      expect(':');
      skip_space();
      if (key == "descr") {
        h.descr = quoted();
        seen_descr = true;
      } else if (key == "fortran_order") {
        h.fortran_order = boolean();
        seen_order = true;
      } else if (key == "shape") {
        h.shape = tuple();
        seen_shape = true;
      } else {
        fail("unexpected header key '" + key + "'");
      }
      skip_space();
      if (peek() == ',') ++pos_;
    }
    if (!seen_descr || !seen_order || !seen_shape) fail("header lacks descr, fortran_order or shape");
    return h;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("NPY header: " + what, base_ + pos_);
  }
  char peek() const {
    if (pos_ >= text_.size()) fail("unexpected end of header");
    return text_[pos_];
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string quoted() {
    skip_space();
    const char q = peek();
    if (q != '\'' && q != '"') fail("expected a quoted string");
    const std::size_t end = text_.find(q, pos_ + 1);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string s(text_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return s;
  }
  bool boolean() {
    if (text_.substr(pos_, 4) == "True") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "False") {
      pos_ += 5;
      return false;
    }
    fail("expected True or False");
  }
  std::vector<Index> tuple() {
    std::vector<Index> dims;
    expect('(');
    while (true) {
      skip_space();
      if (peek() == ')') {
        ++pos_;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a dimension");
      Index v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        ++pos_;
      }
      dims.push_back(v);
      skip_space();
      if (peek() == ',') ++pos_;
    }
    return dims;
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

template <class T>
T read_le(std::string_view bytes, std::size_t at) {
  T v;
  std::memcpy(&v, bytes.data() + at, sizeof(T));
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

Tensor3 decode_npy(std::string_view bytes) {
  if (bytes.size() < 10 || bytes.substr(0, kMagic.size()) != kMagic) {
    throw FormatError("not an NPY file (bad magic)", 0);
  }
  const auto major = static_cast<unsigned char>(bytes[6]);
  std::size_t header_len = 0;
  std::size_t header_start = 0;
  if (major == 1) {
    header_len = read_le<std::uint16_t>(bytes, 8);
    header_start = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) throw FormatError("truncated NPY preamble", bytes.size());
    header_len = read_le<std::uint32_t>(bytes, 8);
    header_start = 12;
  } else {
    throw FormatError("unsupported NPY version " + std::to_string(major), 6);
  }
  if (bytes.size() < header_start + header_len) {
    throw FormatError("truncated NPY header", bytes.size());
  }
  const NpyHeader h =
      HeaderParser(bytes.substr(header_start, header_len), header_start).parse();

  std::size_t width = 0;
  if (h.descr == "<f8") {
    width = 8;
  } else if (h.descr == "<f4") {
    width = 4;
  } else {
    throw FormatError("unsupported dtype '" + h.descr + "' (need <f8 or <f4)", header_start);
  }
  if (h.fortran_order) throw FormatError("fortran_order arrays are not supported", header_start);
  if (h.shape.size() != 2 && h.shape.size() != 3) {
    throw FormatError("expected a 2-D or 3-D array, got " + std::to_string(h.shape.size()) +
                      " dimensions", header_start);
  }
  const Index n1 = h.shape[0];
  const Index n2 = h.shape[1];
  const Index p = h.shape.size() == 3 ? h.shape[2] : 1;
  if (n1 < 1 || n2 < 1 || p < 1) throw FormatError("array has an empty dimension", header_start);

  const std::size_t payload = header_start + header_len;
  const std::size_t count = static_cast<std::size_t>(n1 * n2 * p);
  if (bytes.size() - payload < count * width) {
    throw FormatError("truncated payload: need " + std::to_string(count * width) + " bytes, have " +
                      std::to_string(bytes.size() - payload), bytes.size());
  }

  Tensor3 t(n1, n2, p);
  std::size_t at = payload;
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      for (Index k = 0; k < p; ++k, at += width) {
        t(i, j, k) = width == 8 ? read_le<double>(bytes, at)
                                : static_cast<double>(read_le<float>(bytes, at));
      }
    }
  }
  return t;
}

std::string encode_npy(const Tensor3& t) {
  if (t.empty()) throw ShapeError("encode_npy: empty tensor");
  std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (" +
                     std::to_string(t.rows()) + ", " + std::to_string(t.cols()) + ", " +
                     std::to_string(t.slices()) + "), }";
  // Pad so the payload starts on a 64-byte boundary; the header ends with '\n'.
  const std::size_t unpadded = kMagic.size() + 4 + dict.size() + 1;
  dict.append((64 - unpadded % 64) % 64, ' ');
  dict.push_back('\n');

  std::string out;
  out.reserve(kMagic.size() + 4 + dict.size() + static_cast<std::size_t>(t.size()) * 8);
  out.append(kMagic);
  out.push_back('\x01');
  out.push_back('\x00');
  const auto len = static_cast<std::uint16_t>(dict.size());
  out.push_back(static_cast<char>(len & 0xff));
  out.push_back(static_cast<char>(len >> 8));
  out.append(dict);
  for (Index i = 0; i < t.rows(); ++i) {
    for (Index j = 0; j < t.cols(); ++j) {
      for (Index k = 0; k < t.slices(); ++k) {
        const double v = t(i, j, k);
        char buf[8];
        std::memcpy(buf, &v, 8);
        out.append(buf, 8);
      }
    }
  }
  return out;
}

Tensor3 load_tensor(const std::filesystem::path& path) { return decode_npy(read_file(path)); }

void save_tensor(const Tensor3& t, const std::filesystem::path& path) {
  write_file(path, encode_npy(t));
}

std::vector<std::uint8_t> preview_pixels(const Tensor3& t, Band band) {
  if (t.empty()) throw ShapeError("preview of an empty tensor");
  Matrix img;
  if (band.mean) {
    img = Matrix::Zero(t.rows(), t.cols());
    for (Index k = 0; k < t.slices(); ++k) img += t.slice(k);
    img /= static_cast<double>(t.slices());
  } else {
    img = t.slice(band.index);
  }
  const double lo = img.minCoeff();
  const double hi = img.maxCoeff();
  std::vector<std::uint8_t> px(static_cast<std::size_t>(img.size()));
  for (Index i = 0; i < img.rows(); ++i) {
    for (Index j = 0; j < img.cols(); ++j) {
      const std::size_t at = static_cast<std::size_t>(i * img.cols() + j);
      if (!(hi > lo)) {
        px[at] = 128;
      } else {
        const double scaled = 255.0 * (img(i, j) - lo) / (hi - lo);
        px[at] = static_cast<std::uint8_t>(std::clamp(std::lround(scaled), 0L, 255L));
      }
    }
  }
  return px;
}

std::string encode_pgm(const Tensor3& t, Band band) {
  const std::vector<std::uint8_t> px = preview_pixels(t, band);
  std::string out = "P5\n" + std::to_string(t.cols()) + " " + std::to_string(t.rows()) + "\n255\n";
  out.append(px.begin(), px.end());
  return out;
}

void save_preview(const Tensor3& t, const std::filesystem::path& path, Band band) {
  write_file(path, encode_pgm(t, band));
}

}  // namespace wten
