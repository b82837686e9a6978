#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fractrend/raster.hpp"

namespace fractrend {

enum class PgmFormat { kPlain, kRaw };  // P2, P5

// Decodes a P2 or P5 image. maxval must be in [1, 255]; samples are rescaled
// to [0, 255] when maxval < 255. Color (P3/P6) and 16-bit data are rejected
// with kUnsupported; anything structurally wrong is kMalformed.
GrayRaster parse_pgm(std::string_view bytes);

// Reads and decodes `path`. Missing or unreadable files raise kIo with the
// path in the message.
GrayRaster load_gray(const std::filesystem::path& path);

// Encodes with maxval 255. Plain output puts one image row per line.
std::string encode_pgm(const GrayRaster& gray, PgmFormat format = PgmFormat::kRaw);

void save_pgm(const std::filesystem::path& path, const GrayRaster& gray,
              PgmFormat format = PgmFormat::kRaw);

}  // namespace fractrend
