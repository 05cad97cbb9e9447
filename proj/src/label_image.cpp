#include "cinetrack/label_image.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace cinetrack {

namespace fs = std::filesystem;

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in, const fs::path& path) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (token.empty()) throw FormatError(path.string() + ": truncated PGM header");
    return token;
}

int parse_positive(const std::string& token, const fs::path& path, const char* what) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(token, &used);
        if (used == token.size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw FormatError(path.string() + ": bad PGM " + what + " '" + token + "'");
}

}  // namespace

std::string frame_file_name(std::size_t index, const char* extension) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "frame_%04zu.%s", index, extension);
    return buf;
}

LabelImage read_pgm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    if (next_token(in, path) != "P5") throw FormatError(path.string() + ": not a binary P5 PGM");
    const int width = parse_positive(next_token(in, path), path, "width");
    const int height = parse_positive(next_token(in, path), path, "height");
    const int maxval = parse_positive(next_token(in, path), path, "maxval");
    if (maxval != 255) throw FormatError(path.string() + ": maxval must be 255, got " + std::to_string(maxval));
    // next_token consumed exactly one whitespace byte after maxval.

    LabelImage image(width, height);
    in.read(reinterpret_cast<char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != image.pixels.size()) {
        throw FormatError(path.string() + ": truncated pixel data");
    }
    return image;
}

void write_pgm(const fs::path& path, const LabelImage& image) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

LabelMaskSequence load_mask_sequence(const fs::path& directory) {
    std::error_code ec;
    if (!fs::is_directory(directory, ec)) throw IoError("not a directory: " + directory.string());

    // Highest frame index present, so that gaps can be reported by index.
    long highest = -1;
    for (const auto& entry : fs::directory_iterator(directory)) {
        const std::string name = entry.path().filename().string();
        unsigned idx = 0;
        char tail = 0;
        if (name.size() == 14 && std::sscanf(name.c_str(), "frame_%4u.pg%c", &idx, &tail) == 2 && tail == 'm') {
            highest = std::max(highest, static_cast<long>(idx));
        }
    }
    if (highest < 0) throw IoError("no frame_%04d.pgm files in " + directory.string());

    LabelMaskSequence seq;
    for (long t = 0; t <= highest; ++t) {
        const fs::path file = directory / frame_file_name(static_cast<std::size_t>(t));
        if (!fs::exists(file)) {
            throw IoError("missing frame index " + std::to_string(t) + " (" + file.string() + ")");
        }
        LabelImage img = read_pgm(file);
        if (t == 0) {
            seq.width = img.width;
            seq.height = img.height;
        } else if (img.width != seq.width || img.height != seq.height) {
            throw FormatError(file.string() + ": dimensions " + std::to_string(img.width) + "x" +
                              std::to_string(img.height) + " differ from frame 0 (" + std::to_string(seq.width) +
                              "x" + std::to_string(seq.height) + ")");
        }
        for (int row = 0; row < img.height; ++row) {
            for (int col = 0; col < img.width; ++col) {
                const int v = img.at(row, col);
                if (v > kRvBloodPool) {
                    throw FormatError(file.string() + ": illegal label " + std::to_string(v) + " at row " +
                                      std::to_string(row) + ", column " + std::to_string(col));
                }
            }
        }
        seq.frames.push_back(std::move(img));
    }

    const fs::path meta = directory / "meta.json";
    if (fs::exists(meta)) {
        std::ifstream in(meta);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
            if (j.contains("pixel_spacing_mm")) {
                seq.pixel_spacing_x = j.at("pixel_spacing_mm").at(0).get<double>();
                seq.pixel_spacing_y = j.at("pixel_spacing_mm").at(1).get<double>();
            }
            if (j.contains("frame_interval_ms")) seq.frame_interval_ms = j.at("frame_interval_ms").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(meta.string() + ": " + e.what());
        }
    }
    return seq;
}

void write_mask_sequence(const fs::path& directory, const LabelMaskSequence& seq) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec || !fs::is_directory(directory)) throw IoError("cannot create directory " + directory.string());

    for (std::size_t t = 0; t < seq.frames.size(); ++t) write_pgm(directory / frame_file_name(t), seq.frames[t]);

    nlohmann::ordered_json meta;
    meta["pixel_spacing_mm"] = {seq.pixel_spacing_x, seq.pixel_spacing_y};
    meta["frame_interval_ms"] = seq.frame_interval_ms;
    std::ofstream out(directory / "meta.json", std::ios::trunc);
    if (!out) throw IoError("cannot write " + (directory / "meta.json").string());
    out << meta.dump(2) << '\n';
}

}  // namespace cinetrack
