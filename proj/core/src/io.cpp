/* Copyright 2026 The AAS Kernels Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aas/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>

#include "aas/error.hpp"

namespace aas::io {
namespace {

static_assert(std::endian::native == std::endian::little,
              "NPY payloads are read and written without byte swapping");

constexpr std::string_view kMagic = "\x93NUMPY";
constexpr std::size_t kPreludeSize = 10;  // magic + version + u16 header length
constexpr std::size_t kHeaderAlign = 64;

[[noreturn]] void Malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedHeader, "malformed NPY: " + why);
}

std::size_t ItemSize(Dtype dtype) { return dtype == Dtype::kF32 ? 4 : 8; }

// Minimal reader for the Python dict literal in an NPY header:
// {'descr': '<f8', 'fortran_order': False, 'shape': (3, 2), }
class HeaderParser {
 public:
  explicit HeaderParser(std::string_view text) : text_(text) {}

  struct Fields {
    std::string descr;
    bool fortran_order = false;
    std::vector<std::size_t> shape;
  };

  Fields Parse() {
    Fields fields;
    bool have_descr = false, have_order = false, have_shape = false;
    Expect('{');
    while (true) {
      SkipSpace();
      if (Peek() == '}') {
        ++pos_;
        break;
      }
      const std::string key = ParseString();
      Expect(':');
      if (key == "descr") {
        fields.descr = ParseString();
        have_descr = true;
      } else if (key == "fortran_order") {
        fields.fortran_order = ParseBool();
        have_order = true;
      } else if (key == "shape") {
        fields.shape = ParseShape();
        have_shape = true;
      } else {
        Malformed("unexpected header key '" + key + "'");
      }
      SkipSpace();
      if (Peek() == ',') {
        ++pos_;
      } else if (Peek() != '}') {
        Malformed("expected ',' or '}' in header");
      }
    }
    SkipSpace();
    if (pos_ != text_.size()) Malformed("trailing characters after header dict");
    if (!have_descr || !have_order || !have_shape) Malformed("header is missing a key");
    return fields;
  }

 private:
  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Malformed(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ParseString() {
    SkipSpace();
    const char quote = Peek();
    if (quote != '\'' && quote != '"') Malformed("expected a quoted string");
    const std::size_t end = text_.find(quote, pos_ + 1);
    if (end == std::string_view::npos) Malformed("unterminated string");
    std::string out(text_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }

  bool ParseBool() {
    SkipSpace();
    if (text_.substr(pos_, 4) == "True") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "False") {
      pos_ += 5;
      return false;
    }
    Malformed("expected True or False");
  }

  std::vector<std::size_t> ParseShape() {
    Expect('(');
    std::vector<std::size_t> shape;
    while (true) {
      SkipSpace();
      if (Peek() == ')') {
        ++pos_;
        return shape;
      }
      if (!std::isdigit(static_cast<unsigned char>(Peek()))) Malformed("bad shape entry");
      std::size_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(Peek()))) {
        v = v * 10 + static_cast<std::size_t>(Peek() - '0');
        ++pos_;
        if (v > (std::size_t{1} << 48)) Malformed("shape entry too large");
      }
      shape.push_back(v);
      SkipSpace();
      if (Peek() == ',') {
        ++pos_;
      } else if (Peek() != ')') {
        Malformed("expected ',' or ')' in shape");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string ShapeLiteral(std::span<const std::size_t> shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(shape[i]);
  }
  if (shape.size() == 1) s += ",";
  return s + ")";
}

std::vector<std::byte> EncodeHeader(std::string_view descr, std::span<const std::size_t> shape) {
  if (shape.empty() || shape.size() > 2) {
    throw Error(ErrorCode::kUnsupportedRank, "only 1-D and 2-D arrays are written");
  }
  std::string dict = "{'descr': '" + std::string(descr) +
                     "', 'fortran_order': False, 'shape': " + ShapeLiteral(shape) + ", }";
  const std::size_t unpadded = kPreludeSize + dict.size() + 1;
  const std::size_t padded = (unpadded + kHeaderAlign - 1) / kHeaderAlign * kHeaderAlign;
  dict.append(padded - unpadded, ' ');
  dict.push_back('\n');

  std::vector<std::byte> out;
  out.reserve(padded);
  for (char c : kMagic) out.push_back(static_cast<std::byte>(c));
  out.push_back(std::byte{1});
  out.push_back(std::byte{0});
  const auto len = static_cast<std::uint16_t>(dict.size());
  out.push_back(static_cast<std::byte>(len & 0xff));
  out.push_back(static_cast<std::byte>(len >> 8));
  for (char c : dict) out.push_back(static_cast<std::byte>(c));
  return out;
}

template <typename T>
void AppendRaw(std::vector<std::byte>& out, std::span<const T> values) {
  const auto* p = reinterpret_cast<const std::byte*>(values.data());
  out.insert(out.end(), p, p + values.size_bytes());
}

std::size_t ShapeProduct(std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (std::size_t s : shape) n *= s;
  return n;
}

void WriteBytes(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "failed writing " + path.string());
}

}  // namespace

std::string_view DtypeDescr(Dtype dtype) noexcept {
  switch (dtype) {
    case Dtype::kF32: return "<f4";
    case Dtype::kF64: return "<f8";
    case Dtype::kI64: return "<i8";
  }
  return "";
}

std::size_t NpyArray::element_count() const noexcept { return ShapeProduct(shape); }

Matrix NpyArray::ToMatrix() const {
  const std::size_t rows = shape.at(0);
  const std::size_t cols = rank() == 2 ? shape[1] : 1;
  return Matrix(rows, cols, ToReal());
}

std::vector<double> NpyArray::ToReal() const {
  if (dtype != Dtype::kI64) return real;
  return std::vector<double>(integer.begin(), integer.end());
}

DurationSeq NpyArray::ToDurations() const {
  if (rank() != 1) {
    throw Error(ErrorCode::kUnsupportedRank, "durations must be a 1-D array");
  }
  if (dtype == Dtype::kI64) return {integer};
  DurationSeq out;
  out.values.reserve(real.size());
  for (double v : real) {
    if (!std::isfinite(v) || v != std::trunc(v)) {
      throw Error(ErrorCode::kUnsupportedDtype, "durations must hold integer values");
    }
    out.values.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

NpyArray ParseNpy(std::span<const std::byte> bytes) {
  if (bytes.size() < kPreludeSize) Malformed("file shorter than the NPY prelude");
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) Malformed("bad magic string");
  const auto major = std::to_integer<unsigned>(bytes[6]);
  const auto minor = std::to_integer<unsigned>(bytes[7]);
  if (major != 1 || minor != 0) {
    Malformed("unsupported format version " + std::to_string(major) + "." +
              std::to_string(minor));
  }
  const std::size_t header_len =
      std::to_integer<std::size_t>(bytes[8]) | (std::to_integer<std::size_t>(bytes[9]) << 8);
  if (bytes.size() < kPreludeSize + header_len) Malformed("header runs past end of file");

  const std::string_view text(reinterpret_cast<const char*>(bytes.data()) + kPreludeSize,
                              header_len);
  const auto fields = HeaderParser(text).Parse();

  NpyArray array;
  if (fields.descr == "<f4") {
    array.dtype = Dtype::kF32;
  } else if (fields.descr == "<f8") {
    array.dtype = Dtype::kF64;
  } else if (fields.descr == "<i8") {
    array.dtype = Dtype::kI64;
  } else {
    throw Error(ErrorCode::kUnsupportedDtype, "unsupported dtype '" + fields.descr + "'");
  }
  if (fields.fortran_order) {
    throw Error(ErrorCode::kFortranOrderUnsupported, "Fortran-ordered arrays are not supported");
  }
  if (fields.shape.empty() || fields.shape.size() > 2) {
    throw Error(ErrorCode::kUnsupportedRank,
                "arrays must be 1-D or 2-D, got rank " + std::to_string(fields.shape.size()));
  }
  array.shape = fields.shape;

  const std::size_t count = array.element_count();
  const auto payload = bytes.subspan(kPreludeSize + header_len);
  if (payload.size() != count * ItemSize(array.dtype)) {
    Malformed("payload holds " + std::to_string(payload.size()) + " bytes, header implies " +
              std::to_string(count * ItemSize(array.dtype)));
  }

  switch (array.dtype) {
    case Dtype::kF32: {
      std::vector<float> tmp(count);
      std::memcpy(tmp.data(), payload.data(), payload.size());
      array.real.assign(tmp.begin(), tmp.end());
      break;
    }
    case Dtype::kF64:
      array.real.resize(count);
      std::memcpy(array.real.data(), payload.data(), payload.size());
      break;
    case Dtype::kI64:
      array.integer.resize(count);
      std::memcpy(array.integer.data(), payload.data(), payload.size());
      break;
  }
  return array;
}

NpyArray ReadNpy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "failed reading " + path.string());
  return ParseNpy(std::as_bytes(std::span<const char>(raw)));
}

std::vector<std::byte> EncodeNpy(std::span<const double> values,
                                 std::span<const std::size_t> shape, Dtype dtype) {
  if (ShapeProduct(shape) != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "shape does not match value count");
  }
  auto out = EncodeHeader(DtypeDescr(dtype), shape);
  switch (dtype) {
    case Dtype::kF64:
      AppendRaw(out, values);
      break;
    case Dtype::kF32: {
      std::vector<float> tmp(values.begin(), values.end());
      AppendRaw(out, std::span<const float>(tmp));
      break;
    }
    case Dtype::kI64: {
      std::vector<std::int64_t> tmp;
      tmp.reserve(values.size());
      for (double v : values) {
        if (!std::isfinite(v) || v != std::trunc(v)) {
          throw Error(ErrorCode::kInvalidParameter, "non-integral value written as i64");
        }
        tmp.push_back(static_cast<std::int64_t>(v));
      }
      AppendRaw(out, std::span<const std::int64_t>(tmp));
      break;
    }
  }
  return out;
}

std::vector<std::byte> EncodeNpy(std::span<const std::int64_t> values,
                                 std::span<const std::size_t> shape) {
  if (ShapeProduct(shape) != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "shape does not match value count");
  }
  auto out = EncodeHeader(DtypeDescr(Dtype::kI64), shape);
  AppendRaw(out, values);
  return out;
}

void WriteMatrix(const std::filesystem::path& path, const Matrix& m, Dtype dtype) {
  const std::size_t shape[] = {m.rows(), m.cols()};
  WriteBytes(path, EncodeNpy(m.data(), shape, dtype));
}

void WriteVector(const std::filesystem::path& path, std::span<const double> v, Dtype dtype) {
  const std::size_t shape[] = {v.size()};
  WriteBytes(path, EncodeNpy(v, shape, dtype));
}

void WriteDurations(const std::filesystem::path& path, const DurationSeq& durations) {
  const std::size_t shape[] = {durations.size()};
  WriteBytes(path, EncodeNpy(std::span<const std::int64_t>(durations.values), shape));
}

std::vector<std::byte> EncodeHeatmap(const Matrix& m, HeatmapNormalization normalization) {
  if (m.empty()) throw Error(ErrorCode::kEmptyInput, "cannot render an empty matrix");
  if (!m.AllFinite()) throw Error(ErrorCode::kNonFiniteInput, "heatmap input is not finite");

  const auto values = m.data();
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  const double hi = *hi_it;
  if (normalization == HeatmapNormalization::kLog) lo = std::max(lo, hi - kHeatmapLogRange);

  const std::string head =
      "P5\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n255\n";
  std::vector<std::byte> out;
  out.reserve(head.size() + values.size());
  for (char c : head) out.push_back(static_cast<std::byte>(c));
  const double range = hi - lo;
  for (double v : values) {
    long px = 0;
    if (range > 0.0) px = std::lround(255.0 * (std::max(v, lo) - lo) / range);
    out.push_back(static_cast<std::byte>(std::clamp(px, 0L, 255L)));
  }
  return out;
}

void WriteHeatmap(const std::filesystem::path& path, const Matrix& m,
                  HeatmapNormalization normalization) {
  WriteBytes(path, EncodeHeatmap(m, normalization));
}

}  // namespace aas::io
