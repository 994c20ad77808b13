#pragma once

/**
 * @file pnm.hpp
 * @brief Minimal PNM codec: reads P2/P5 graymaps and P3/P6 pixmaps, writes
 *        8-bit PGM (binary P5 or plain P2).
 *
 * Color input is collapsed to luminance (0.299 R + 0.587 G + 0.114 B) on
 * maxval-normalized channels.  Samples wider than 8 bits (maxval > 255) are
 * big-endian per the format.  Parse failures throw PnmError carrying the
 * failure kind and the byte offset where parsing stopped.
 */

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "image.hpp"

namespace qdog {

enum class PnmErrorKind {
    unsupported_magic,   // not one of P2, P3, P5, P6
    malformed_header,    // width, height or maxval missing or garbled
    maxval_out_of_range, // maxval outside [1, 65535]
    malformed_data,      // unparsable sample in a plain raster
    sample_out_of_range, // sample value exceeds maxval
    truncated_data,      // raster ended before width*height samples
};

class PnmError : public std::runtime_error {
public:
    PnmError(PnmErrorKind kind, std::size_t offset, const std::string& what)
        : std::runtime_error("pnm: " + what + " (byte " + std::to_string(offset) + ")"),
          kind_(kind), offset_(offset) {}

    PnmErrorKind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    PnmErrorKind kind_;
    std::size_t offset_;
};

/// Filesystem-level failure (open/read/write), distinct from format errors.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

class PnmParser {
public:
    explicit PnmParser(std::string_view data) : data_(data) {}

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= data_.size(); }

    /// Skips whitespace and '#' comments (comment runs to end of line).
    void skip_space_and_comments() {
        while (!at_end()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (!at_end() && data_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string next_token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (!at_end() && !std::isspace(static_cast<unsigned char>(data_[pos_])) &&
               data_[pos_] != '#')
            ++pos_;
        return std::string(data_.substr(start, pos_ - start));
    }

    /// Reads a non-negative decimal header field.
    long header_int(const char* field) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        const std::string tok = next_token();
        if (tok.empty())
            throw PnmError(PnmErrorKind::malformed_header, start,
                           std::string("missing ") + field);
        long value = 0;
        for (char c : tok) {
            if (c < '0' || c > '9')
                throw PnmError(PnmErrorKind::malformed_header, start,
                               std::string("invalid ") + field + " '" + tok + "'");
            value = value * 10 + (c - '0');
            if (value > 1000000000L)
                throw PnmError(PnmErrorKind::malformed_header, start,
                               std::string(field) + " out of range");
        }
        return value;
    }

    /// Reads a plain-raster sample (decimal, comments and whitespace allowed).
    long plain_sample(long maxval) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        if (at_end())
            throw PnmError(PnmErrorKind::truncated_data, start, "raster ended early");
        const std::string tok = next_token();
        long value = 0;
        for (char c : tok) {
            if (c < '0' || c > '9')
                throw PnmError(PnmErrorKind::malformed_data, start,
                               "invalid sample '" + tok + "'");
            value = value * 10 + (c - '0');
            if (value > 1000000000L)
                break;
        }
        if (value > maxval)
            throw PnmError(PnmErrorKind::sample_out_of_range, start,
                           "sample " + std::to_string(value) + " exceeds maxval " +
                               std::to_string(maxval));
        return value;
    }

    /// Reads a binary sample: one byte, or two big-endian bytes when
    /// maxval > 255.
    long binary_sample(long maxval) {
        const int bytes = maxval > 255 ? 2 : 1;
        if (pos_ + bytes > data_.size())
            throw PnmError(PnmErrorKind::truncated_data, data_.size(), "raster ended early");
        long value = static_cast<unsigned char>(data_[pos_++]);
        if (bytes == 2)
            value = (value << 8) | static_cast<unsigned char>(data_[pos_++]);
        if (value > maxval)
            throw PnmError(PnmErrorKind::sample_out_of_range, pos_ - bytes,
                           "sample " + std::to_string(value) + " exceeds maxval " +
                               std::to_string(maxval));
        return value;
    }

    /// Consumes the single whitespace byte separating maxval from a binary
    /// raster.
    void consume_raster_separator() {
        if (at_end() || !std::isspace(static_cast<unsigned char>(data_[pos_])))
            throw PnmError(PnmErrorKind::malformed_header, pos_,
                           "expected whitespace before binary raster");
        ++pos_;
    }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses an in-memory PNM document into a normalized grayscale image.
inline GrayImage parse_pnm(std::string_view data) {
    detail::PnmParser p(data);
    const std::string magic = p.next_token();
    const bool ascii = (magic == "P2" || magic == "P3");
    const bool color = (magic == "P3" || magic == "P6");
    if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6")
        throw PnmError(PnmErrorKind::unsupported_magic, 0,
                       "unsupported magic '" + magic + "'");

    const long width = p.header_int("width");
    const long height = p.header_int("height");
    const std::size_t header_end = p.pos();
    if (width < 1 || height < 1 || width * height > (1L << 28))
        throw PnmError(PnmErrorKind::malformed_header, header_end,
                       "implausible dimensions " + std::to_string(width) + "x" +
                           std::to_string(height));
    p.skip_space_and_comments();
    const std::size_t maxval_at = p.pos();
    const long maxval = p.header_int("maxval");
    if (maxval < 1 || maxval > 65535)
        throw PnmError(PnmErrorKind::maxval_out_of_range, maxval_at,
                       "maxval " + std::to_string(maxval) + " outside [1, 65535]");
    if (!ascii)
        p.consume_raster_separator();

    GrayImage img(static_cast<int>(width), static_cast<int>(height));
    const double scale = 1.0 / static_cast<double>(maxval);
    const std::size_t n = img.pixels.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (color) {
            const long r = ascii ? p.plain_sample(maxval) : p.binary_sample(maxval);
            const long g = ascii ? p.plain_sample(maxval) : p.binary_sample(maxval);
            const long b = ascii ? p.plain_sample(maxval) : p.binary_sample(maxval);
            img.pixels[i] = 0.299 * (r * scale) + 0.587 * (g * scale) + 0.114 * (b * scale);
        } else {
            const long v = ascii ? p.plain_sample(maxval) : p.binary_sample(maxval);
            img.pixels[i] = v * scale;
        }
    }
    return img;
}

/// Reads a PNM file from disk.
inline GrayImage read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("read failure on '" + path + "'");
    return parse_pnm(buf.str());
}

namespace detail {

/// Round-half-up quantization of v in [0, 1] to an 8-bit level.
inline int quantize_255(double v) {
    if (v <= 0.0) return 0;
    if (v >= 1.0) return 255;
    return static_cast<int>(std::floor(v * 255.0 + 0.5));
}

inline void write_pgm_payload(std::ostream& out, int width, int height,
                              const int* levels, bool ascii) {
    out << (ascii ? "P2" : "P5") << "\n" << width << " " << height << "\n255\n";
    if (ascii) {
        // Plain format: keep lines within the conventional 70 columns.
        std::string line;
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const std::string tok = std::to_string(levels[static_cast<std::size_t>(y) * width + x]);
                if (!line.empty() && line.size() + 1 + tok.size() > 70) {
                    out << line << "\n";
                    line.clear();
                }
                if (!line.empty())
                    line += ' ';
                line += tok;
            }
            out << line << "\n";
            line.clear();
        }
    } else {
        std::string bytes(static_cast<std::size_t>(width) * height, '\0');
        for (std::size_t i = 0; i < bytes.size(); ++i)
            bytes[i] = static_cast<char>(static_cast<unsigned char>(levels[i]));
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
}

} // namespace detail

/// Writes a grayscale image as 8-bit PGM (binary P5, or plain P2 when ascii).
inline void write_pgm(const GrayImage& img, std::ostream& out, bool ascii = false) {
    std::vector<int> levels(img.pixels.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
        levels[i] = detail::quantize_255(img.pixels[i]);
    detail::write_pgm_payload(out, img.width, img.height, levels.data(), ascii);
}

/// Writes an edge map as 8-bit PGM: 255 for edge pixels, 0 elsewhere.
inline void write_pgm(const EdgeMap& edges, std::ostream& out, bool ascii = false) {
    std::vector<int> levels(edges.mask.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
        levels[i] = edges.mask[i] ? 255 : 0;
    detail::write_pgm_payload(out, edges.width, edges.height, levels.data(), ascii);
}

template <class Raster>
inline void write_pgm_file(const Raster& raster, const std::string& path, bool ascii = false) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    write_pgm(raster, out, ascii);
    out.flush();
    if (!out)
        throw IoError("write failure on '" + path + "'");
}

} // namespace qdog
