#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wten {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Raised when 2^L does not divide the slice count, or L is otherwise invalid.
class LevelError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class OrthogonalityError : public Error {
 public:
  using Error::Error;
};

class ValueError : public Error {
 public:
  using Error::Error;
};

/// A wavelet-domain slice could not be inverted.
class SingularSliceError : public Error {
 public:
  SingularSliceError(int level, bool smooth, std::ptrdiff_t slice, double condition)
      : Error(describe(level, smooth, slice, condition)),
        level_(level),
        smooth_(smooth),
        slice_(slice),
        condition_(condition) {}

  /// Decomposition level j (1-based). For the smooth block this is L.
  int level() const noexcept { return level_; }
  bool smooth() const noexcept { return smooth_; }
  /// 0-based slice index inside the block.
  std::ptrdiff_t slice() const noexcept { return slice_; }
  /// Estimated 2-norm condition number (infinity for exactly singular slices).
  double condition() const noexcept { return condition_; }

 private:
  static std::string describe(int level, bool smooth, std::ptrdiff_t slice, double condition) {
    return std::string("singular wavelet-domain slice: ") + (smooth ? "s_" : "d_") +
           std::to_string(level) + " slice " + std::to_string(slice) +
           " (condition estimate " + std::to_string(condition) + ")";
  }

  int level_;
  bool smooth_;
  std::ptrdiff_t slice_;
  double condition_;
};

/// Malformed tensor file. `offset` is the byte position where parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wten
