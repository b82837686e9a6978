#include "fractrend/pgm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "fractrend/error.hpp"

namespace fractrend {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads an unsigned decimal token.
  std::optional<unsigned long> next_number() {
    skip_separators();
    const char* begin = bytes_.data() + pos_;
    const char* end = bytes_.data() + bytes_.size();
    unsigned long value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) return std::nullopt;
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  char peek() const { return bytes_[pos_]; }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(unsigned long v, unsigned long maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

}  // namespace

GrayRaster parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorCode::kMalformed, "missing PNM magic number");
  }
  const char kind = bytes[1];
  if (kind == '3' || kind == '6') {
    throw Error(ErrorCode::kUnsupported, "color PPM input; convert to grayscale first");
  }
  if (kind != '2' && kind != '5') {
    throw Error(ErrorCode::kUnsupported, std::string("unsupported PNM variant P") + kind);
  }

  HeaderReader reader(bytes.substr(2));
  const auto width = reader.next_number();
  const auto height = reader.next_number();
  const auto maxval = reader.next_number();
  if (!width || !height || !maxval) throw Error(ErrorCode::kMalformed, "truncated PGM header");
  if (*width == 0 || *height == 0) throw Error(ErrorCode::kMalformed, "PGM with zero extent");
  if (*maxval == 0) throw Error(ErrorCode::kMalformed, "PGM maxval is zero");
  if (*maxval > 255) {
    throw Error(ErrorCode::kUnsupported,
                "PGM maxval " + std::to_string(*maxval) + " exceeds 8-bit depth");
  }

  const std::size_t count = *width * *height;
  std::vector<std::uint8_t> samples;
  samples.reserve(count);

  if (kind == '2') {
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = reader.next_number();
      if (!v) {
        throw Error(ErrorCode::kMalformed, "PGM body truncated after " + std::to_string(i) +
                                               " of " + std::to_string(count) + " samples");
      }
      if (*v > *maxval) throw Error(ErrorCode::kMalformed, "PGM sample exceeds maxval");
      samples.push_back(rescale(*v, *maxval));
    }
  } else {
    // Exactly one whitespace byte separates the header from raw data.
    if (reader.at_end() || !std::isspace(static_cast<unsigned char>(reader.peek()))) {
      throw Error(ErrorCode::kMalformed, "PGM header not terminated by whitespace");
    }
    reader.advance(1);
    const std::size_t offset = 2 + reader.pos();
    if (bytes.size() < offset + count) {
      throw Error(ErrorCode::kMalformed, "PGM body truncated: expected " +
                                             std::to_string(count) + " bytes, got " +
                                             std::to_string(bytes.size() - offset));
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = static_cast<unsigned char>(bytes[offset + i]);
      if (v > *maxval) throw Error(ErrorCode::kMalformed, "PGM sample exceeds maxval");
      samples.push_back(rescale(v, *maxval));
    }
  }
  return GrayRaster(*width, *height, std::move(samples));
}

GrayRaster load_gray(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading " + path.string());
  try {
    return parse_pgm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string encode_pgm(const GrayRaster& gray, PgmFormat format) {
  std::ostringstream out;
  out << (format == PgmFormat::kPlain ? "P2" : "P5") << '\n'
      << gray.width() << ' ' << gray.height() << '\n'
      << 255 << '\n';
  if (format == PgmFormat::kRaw) {
    out.write(reinterpret_cast<const char*>(gray.samples().data()),
              static_cast<std::streamsize>(gray.samples().size()));
  } else {
    for (std::size_t y = 0; y < gray.height(); ++y) {
      for (std::size_t x = 0; x < gray.width(); ++x) {
        if (x) out << ' ';
        out << static_cast<int>(gray.at(x, y));
      }
      out << '\n';
    }
  }
  return out.str();
}

void save_pgm(const std::filesystem::path& path, const GrayRaster& gray, PgmFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  const std::string bytes = encode_pgm(gray, format);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "error writing " + path.string());
}

}  // namespace fractrend
