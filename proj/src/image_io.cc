// Copyright 2026 The softlayer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "softlayer/image_io.h"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "softlayer/error.h"

namespace softlayer {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr OpenFile(const std::filesystem::path& path, const char* mode) {
  FilePtr file(std::fopen(path.c_str(), mode));
  if (!file) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() +
                                    "': " + std::strerror(errno));
  }
  return file;
}

struct PngErrorState {
  char message[256] = {};
};

void PngError(png_structp png, png_const_charp message) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof(state->message), "%s", message);
  png_longjmp(png, 1);
}

void PngWarning(png_structp, png_const_charp) {}

struct DecodedPng {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> bytes;
};

// Returns false on libpng failure, leaving the reason in `state`. Kept free of
// objects with non-trivial lifetimes between setjmp and any longjmp.
bool DecodePng(std::FILE* file, DecodedPng* out, PngErrorState* state) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, state, PngError, PngWarning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows;
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, file);
  png_read_info(png, info);

  const int color_type = png_get_color_type(png, info);
  int bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  if (bit_depth == 16 && std::endian::native == std::endian::little) {
    png_set_swap(png);
  }
  png_read_update_info(png, info);

  out->width = static_cast<int>(png_get_image_width(png, info));
  out->height = static_cast<int>(png_get_image_height(png, info));
  out->channels = png_get_channels(png, info);
  bit_depth = png_get_bit_depth(png, info);
  out->bit_depth = bit_depth;
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  out->bytes.resize(row_bytes * out->height);
  rows.resize(out->height);
  for (int y = 0; y < out->height; ++y) {
    rows[y] = out->bytes.data() + row_bytes * y;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

bool EncodePng(std::FILE* file, int width, int height, int channels,
               int bit_depth, std::vector<std::uint8_t>* bytes,
               PngErrorState* state) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, state,
                                            PngError, PngWarning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(height);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  int color_type = PNG_COLOR_TYPE_GRAY;
  if (channels == 3) color_type = PNG_COLOR_TYPE_RGB;
  if (channels == 4) color_type = PNG_COLOR_TYPE_RGBA;
  png_init_io(png, file);
  png_set_IHDR(png, info, width, height, bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16 && std::endian::native == std::endian::little) {
    png_set_swap(png);
  }
  const std::size_t row_bytes =
      static_cast<std::size_t>(width) * channels * (bit_depth / 8);
  for (int y = 0; y < height; ++y) rows[y] = bytes->data() + row_bytes * y;
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

bool HasPngSignature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), 8);
  return in.gcount() == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

bool HasPfmSignature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char sig[2] = {};
  in.read(sig, 2);
  return in.gcount() == 2 && sig[0] == 'P' && (sig[1] == 'f' || sig[1] == 'F');
}

void RequireReadable(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kIo, "cannot read '" + path.string() +
                                    "': no such file");
  }
}

}  // namespace

Image LoadImage(const std::filesystem::path& path) {
  RequireReadable(path);
  if (!HasPngSignature(path)) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "'" + path.string() + "' is not a PNG file");
  }
  FilePtr file = OpenFile(path, "rb");
  DecodedPng png;
  PngErrorState state;
  if (!DecodePng(file.get(), &png, &state)) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "cannot decode '" + path.string() + "': " + state.message);
  }
  if (png.bit_depth != 8 && png.bit_depth != 16) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "'" + path.string() + "' has unsupported bit depth " +
                    std::to_string(png.bit_depth));
  }
  Image image(png.width, png.height, png.channels);
  const std::size_t n = image.plane_size();
  if (png.bit_depth == 8) {
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < png.channels; ++c) {
        image.channel(c)[i] = png.bytes[i * png.channels + c] / 255.0f;
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < png.channels; ++c) {
        std::uint16_t v;
        std::memcpy(&v, png.bytes.data() + 2 * (i * png.channels + c), 2);
        image.channel(c)[i] = v / 65535.0f;
      }
    }
  }
  return image;
}

void SavePng(const std::filesystem::path& path, const Image& image,
             int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "PNG bit depth must be 8 or 16, got " +
                    std::to_string(bit_depth));
  }
  if (image.channels() == 2 || image.empty()) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "cannot write a " + std::to_string(image.channels()) +
                    "-channel image as PNG to '" + path.string() + "'");
  }
  const int channels = image.channels();
  const std::size_t n = image.plane_size();
  std::vector<std::uint8_t> bytes(n * channels * (bit_depth / 8));
  const float max_code = bit_depth == 8 ? 255.0f : 65535.0f;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      const float v = std::clamp(image.channel(c)[i], 0.0f, 1.0f);
      const auto code = static_cast<std::uint16_t>(std::lround(v * max_code));
      if (bit_depth == 8) {
        bytes[i * channels + c] = static_cast<std::uint8_t>(code);
      } else {
        std::memcpy(bytes.data() + 2 * (i * channels + c), &code, 2);
      }
    }
  }
  FilePtr file = OpenFile(path, "wb");
  PngErrorState state;
  if (!EncodePng(file.get(), image.width(), image.height(), channels,
                 bit_depth, &bytes, &state)) {
    throw Error(ErrorCode::kIo,
                "cannot encode '" + path.string() + "': " + state.message);
  }
}

void SaveMaskPng(const std::filesystem::path& path, const BinaryMask& mask) {
  Image image = mask.ToRaster();
  SavePng(path, image, 8);
}

BinaryMask LoadMaskPng(const std::filesystem::path& path) {
  const Image image = LoadImage(path);
  BinaryMask mask(image.width(), image.height());
  auto values = mask.values();
  const auto first = image.channel(0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = first[i] > 0.0f ? 1 : 0;
  }
  return mask;
}

Image LoadPfm(const std::filesystem::path& path) {
  RequireReadable(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  std::string magic;
  int width = 0;
  int height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (!in || (magic != "Pf" && magic != "PF") || width <= 0 || height <= 0 ||
      scale == 0.0) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "'" + path.string() + "' has a malformed PFM header");
  }
  in.get();  // single whitespace byte before the payload
  const int channels = magic == "PF" ? 3 : 1;
  const bool little = scale < 0.0;
  const std::size_t count =
      static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint32_t> raw(count);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(count * 4));
  if (static_cast<std::size_t>(in.gcount()) != count * 4) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "'" + path.string() + "' has a truncated PFM payload");
  }
  const bool swap = little != (std::endian::native == std::endian::little);
  Image image(width, height, channels);
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        std::uint32_t bits =
            raw[(static_cast<std::size_t>(row) * width + x) * channels + c];
        if (swap) bits = __builtin_bswap32(bits);
        image.at(x, y, c) = std::bit_cast<float>(bits);
      }
    }
  }
  return image;
}

void SavePfm(const std::filesystem::path& path, const Image& image) {
  if (image.channels() != 1 && image.channels() != 3) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "PFM holds 1 or 3 channels, got " +
                    std::to_string(image.channels()));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() +
                                    "' for writing");
  }
  const int width = image.width();
  const int height = image.height();
  const int channels = image.channels();
  out << (channels == 1 ? "Pf" : "PF") << "\n"
      << width << " " << height << "\n-1.0\n";
  std::vector<std::uint32_t> raw(static_cast<std::size_t>(width) * channels);
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        std::uint32_t bits = std::bit_cast<std::uint32_t>(image.at(x, y, c));
        if constexpr (std::endian::native == std::endian::big) {
          bits = __builtin_bswap32(bits);
        }
        raw[static_cast<std::size_t>(x) * channels + c] = bits;
      }
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size() * 4));
  }
  if (!out) {
    throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
  }
}

DisparityMap LoadDisparity(const std::filesystem::path& path, bool normalize) {
  RequireReadable(path);
  Image raw;
  if (HasPfmSignature(path)) {
    raw = LoadPfm(path);
    std::size_t bad = 0;
    for (float v : raw.data()) {
      if (!std::isfinite(v)) ++bad;
    }
    if (bad > 0) {
      throw Error(ErrorCode::kNonFiniteData,
                  "'" + path.string() + "' contains " + std::to_string(bad) +
                      " non-finite disparity values");
    }
  } else if (HasPngSignature(path)) {
    raw = LoadImage(path);
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                "'" + path.string() + "' is neither PFM nor PNG");
  }
  if (raw.channels() != 1) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "disparity '" + path.string() + "' must be single channel, got " +
                    std::to_string(raw.channels()));
  }
  DisparityMap disparity(std::move(raw));
  auto values = disparity.values();
  if (normalize) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double max = *hi;
    if (!(max > min)) {
      throw Error(ErrorCode::kDegenerateDisparity,
                  "disparity '" + path.string() +
                      "' is constant; cannot normalize");
    }
    const double range = max - min;
    for (float& v : values) v = static_cast<float>((v - min) / range);
  }
  disparity.Clamp01();
  return disparity;
}

}  // namespace softlayer
