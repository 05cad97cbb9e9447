#pragma once

#include "cinetrack/curve_model.hpp"
#include "cinetrack/kd_tree.hpp"
#include "cinetrack/label_image.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cinetrack {

enum class Structure { LvEndo, LvEpi, RvEndo };

/// Region predicate: LvEndo is label 2, LvEpi labels 1 or 2, RvEndo label 3.
bool in_region(Structure s, std::uint8_t label);

/// "lv-endo", "lv-epi", "rv-endo".
std::string_view to_string(Structure s);
std::optional<Structure> parse_structure(std::string_view name);

/// Pixel centre convention: (col + 0.5, row + 0.5).
inline Vec2 pixel_center(int row, int col) { return {col + 0.5, row + 0.5}; }

/// Binary mask of the largest 4-connected component of `s` (row-major, 0/1).
/// Ties in size go to the component found first in row-major order.
std::vector<std::uint8_t> largest_component(const LabelImage& mask, Structure s);

/// Pixels of the largest component with at least one 4-neighbour outside it
/// (the image border counts as outside), as pixel centres in row-major order.
/// An empty region gives an empty list.
std::vector<Vec2> extract_boundary_candidates(const LabelImage& mask, Structure s);

/// Boundary candidates of one frame plus the Kd-tree used for phi lookups.
class BoundaryCandidateSet {
public:
    /// Throws std::domain_error on an empty point list.
    BoundaryCandidateSet(std::vector<Vec2> points, std::size_t frame_index);

    std::size_t frame_index() const { return frame_index_; }
    const std::vector<Vec2>& points() const { return tree_.points(); }
    std::size_t size() const { return tree_.size(); }
    const KdTree2& tree() const { return tree_; }

    const Vec2& nearest(const Vec2& q) const { return tree_.nearest(q); }

private:
    std::size_t frame_index_;
    KdTree2 tree_;
};

inline BoundaryCandidateSet build_candidate_set(std::vector<Vec2> points, std::size_t t) {
    return BoundaryCandidateSet(std::move(points), t);
}

/// Thrown when a structure has no pixels in some frame.
class EmptyRegionError : public std::domain_error {
public:
    EmptyRegionError(std::size_t frame, const std::string& what)
        : std::domain_error(what), frame_(frame) {}
    std::size_t frame() const { return frame_; }

private:
    std::size_t frame_;
};

/// Candidate sets for every frame of a sequence. Throws EmptyRegionError
/// naming the first frame whose region is empty.
std::vector<BoundaryCandidateSet> extract_sequence_candidates(const LabelMaskSequence& seq, Structure s);

}  // namespace cinetrack
