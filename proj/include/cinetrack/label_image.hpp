#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace cinetrack {

/// Thrown for filesystem problems (missing directory, missing frame, unwritable output).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown for malformed file contents (bad PGM header, illegal label, size mismatch).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum Label : std::uint8_t {
    kBackground = 0,
    kLvMyocardium = 1,
    kLvBloodPool = 2,
    kRvBloodPool = 3,
};

/// Row-major 8-bit label image.
struct LabelImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    LabelImage() = default;
    LabelImage(int w, int h, std::uint8_t fill = kBackground)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::uint8_t at(int row, int col) const { return pixels[index(row, col)]; }
    std::uint8_t& at(int row, int col) { return pixels[index(row, col)]; }
    bool contains(int row, int col) const { return row >= 0 && row < height && col >= 0 && col < width; }

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col);
    }
};

struct LabelMaskSequence {
    std::vector<LabelImage> frames;
    int width = 0;
    int height = 0;
    double pixel_spacing_x = 1.0;
    double pixel_spacing_y = 1.0;
    double frame_interval_ms = 0.0;

    std::size_t size() const { return frames.size(); }
};

/// Binary P5, maxval 255. Throws FormatError on anything else.
LabelImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const LabelImage& image);

/// Reads frame_0000.pgm, frame_0001.pgm, ... plus optional meta.json.
/// Throws IoError if the directory is empty or a frame index is missing,
/// FormatError on illegal labels or inconsistent dimensions.
LabelMaskSequence load_mask_sequence(const std::filesystem::path& directory);

/// Writes the layout that load_mask_sequence reads.
void write_mask_sequence(const std::filesystem::path& directory, const LabelMaskSequence& seq);

std::string frame_file_name(std::size_t index, const char* extension = "pgm");

}  // namespace cinetrack
