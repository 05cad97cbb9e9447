#include "cinetrack/boundary.hpp"

#include <array>
#include <stdexcept>

namespace cinetrack {

bool in_region(Structure s, std::uint8_t label) {
    switch (s) {
        case Structure::LvEndo:
            return label == kLvBloodPool;
        case Structure::LvEpi:
            return label == kLvBloodPool || label == kLvMyocardium;
        case Structure::RvEndo:
            return label == kRvBloodPool;
    }
    return false;
}

std::string_view to_string(Structure s) {
    switch (s) {
        case Structure::LvEndo:
            return "lv-endo";
        case Structure::LvEpi:
            return "lv-epi";
        case Structure::RvEndo:
            return "rv-endo";
    }
    return "?";
}

std::optional<Structure> parse_structure(std::string_view name) {
    for (Structure s : {Structure::LvEndo, Structure::LvEpi, Structure::RvEndo}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

namespace {

constexpr std::array<std::array<int, 2>, 4> kNeighbors4{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};

}  // namespace

std::vector<std::uint8_t> largest_component(const LabelImage& mask, Structure s) {
    const std::size_t n = mask.pixels.size();
    std::vector<std::int32_t> component(n, -1);
    std::vector<std::size_t> stack;
    std::int32_t best_id = -1;
    std::size_t best_size = 0;
    std::int32_t next_id = 0;

    for (int row = 0; row < mask.height; ++row) {
        for (int col = 0; col < mask.width; ++col) {
            const std::size_t seed = mask.index(row, col);
            if (component[seed] >= 0 || !in_region(s, mask.pixels[seed])) continue;

            const std::int32_t id = next_id++;
            std::size_t count = 0;
            component[seed] = id;
            stack.push_back(seed);
            while (!stack.empty()) {
                const std::size_t cur = stack.back();
                stack.pop_back();
                ++count;
                const int r = static_cast<int>(cur / static_cast<std::size_t>(mask.width));
                const int c = static_cast<int>(cur % static_cast<std::size_t>(mask.width));
                for (const auto& [dr, dc] : kNeighbors4) {
                    if (!mask.contains(r + dr, c + dc)) continue;
                    const std::size_t nb = mask.index(r + dr, c + dc);
                    if (component[nb] < 0 && in_region(s, mask.pixels[nb])) {
                        component[nb] = id;
                        stack.push_back(nb);
                    }
                }
            }
            if (count > best_size) {
                best_size = count;
                best_id = id;
            }
        }
    }

    std::vector<std::uint8_t> keep(n, 0);
    if (best_id < 0) return keep;
    for (std::size_t i = 0; i < n; ++i) keep[i] = component[i] == best_id ? 1 : 0;
    return keep;
}

std::vector<Vec2> extract_boundary_candidates(const LabelImage& mask, Structure s) {
    const std::vector<std::uint8_t> keep = largest_component(mask, s);
    std::vector<Vec2> points;
    for (int row = 0; row < mask.height; ++row) {
        for (int col = 0; col < mask.width; ++col) {
            if (!keep[mask.index(row, col)]) continue;
            bool on_boundary = false;
            for (const auto& [dr, dc] : kNeighbors4) {
                if (!mask.contains(row + dr, col + dc) || !keep[mask.index(row + dr, col + dc)]) {
                    on_boundary = true;
                    break;
                }
            }
            if (on_boundary) points.push_back(pixel_center(row, col));
        }
    }
    return points;
}

BoundaryCandidateSet::BoundaryCandidateSet(std::vector<Vec2> points, std::size_t frame_index)
    : frame_index_(frame_index) {
    if (points.empty()) {
        throw std::domain_error("build_candidate_set: empty point set for frame " + std::to_string(frame_index));
    }
    tree_ = KdTree2(std::move(points));
}

std::vector<BoundaryCandidateSet> extract_sequence_candidates(const LabelMaskSequence& seq, Structure s) {
    std::vector<BoundaryCandidateSet> sets;
    sets.reserve(seq.size());
    for (std::size_t t = 0; t < seq.size(); ++t) {
        std::vector<Vec2> pts = extract_boundary_candidates(seq.frames[t], s);
        if (pts.empty()) {
            throw EmptyRegionError(t, "structure " + std::string(to_string(s)) + " has no pixels in frame " +
                                          std::to_string(t));
        }
        sets.emplace_back(std::move(pts), t);
    }
    return sets;
}

}  // namespace cinetrack
