#include "cinetrack/curves_io.hpp"

#include "cinetrack/label_image.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace cinetrack {

using nlohmann::ordered_json;

std::string curves_to_json(const CurvesDocument& doc) {
    const SplineSequence& s = doc.splines;
    ordered_json j;
    j["structure"] = std::string(to_string(doc.structure));
    j["n_frames"] = s.n_frames();
    j["n_control_points"] = s.n_control_points();
    j["pixel_spacing_mm"] = {doc.pixel_spacing_x, doc.pixel_spacing_y};

    ordered_json frames = ordered_json::array();
    for (std::size_t t = 0; t < s.n_frames(); ++t) {
        ordered_json pts = ordered_json::array();
        for (std::size_t k = 0; k < s.n_control_points(); ++k) pts.push_back({s.at(t, k).x(), s.at(t, k).y()});
        frames.push_back(std::move(pts));
    }
    j["frames"] = std::move(frames);

    ordered_json passes = ordered_json::array();
    for (const PassReport& p : doc.passes) {
        passes.push_back({{"n_control_points", p.n_control_points},
                          {"outer_iters", p.outer_iterations},
                          {"lm_iters", p.lm_iterations},
                          {"converged", p.converged},
                          {"E_cf", p.final_costs.cf},
                          {"E_ac", p.final_costs.ac},
                          {"E_cv", p.final_costs.cv}});
    }
    j["convergence"] = {{"passes", std::move(passes)}};
    return j.dump(2) + "\n";
}

CurvesDocument curves_from_json(const std::string& text) {
    CurvesDocument doc;
    try {
        const auto j = nlohmann::json::parse(text);
        const auto name = j.at("structure").get<std::string>();
        const auto structure = parse_structure(name);
        if (!structure) throw FormatError("curves.json: unknown structure '" + name + "'");
        doc.structure = *structure;

        const auto n_frames = j.at("n_frames").get<std::size_t>();
        const auto n_cp = j.at("n_control_points").get<std::size_t>();
        const auto& frames = j.at("frames");
        if (frames.size() != n_frames) {
            throw FormatError("curves.json: n_frames is " + std::to_string(n_frames) + " but " +
                              std::to_string(frames.size()) + " frames are listed");
        }
        std::vector<Vec2> pts;
        pts.reserve(n_frames * n_cp);
        for (std::size_t t = 0; t < n_frames; ++t) {
            if (frames[t].size() != n_cp) {
                throw FormatError("curves.json: frame " + std::to_string(t) + " has " +
                                  std::to_string(frames[t].size()) + " control points, expected " +
                                  std::to_string(n_cp));
            }
            for (const auto& p : frames[t]) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        }
        doc.splines = SplineSequence(n_frames, n_cp, std::move(pts));

        if (j.contains("pixel_spacing_mm")) {
            doc.pixel_spacing_x = j["pixel_spacing_mm"].at(0).get<double>();
            doc.pixel_spacing_y = j["pixel_spacing_mm"].at(1).get<double>();
        }
        if (j.contains("convergence")) {
            for (const auto& p : j["convergence"].at("passes")) {
                PassReport r;
                r.n_control_points = p.value("n_control_points", std::size_t{0});
                r.outer_iterations = p.value("outer_iters", 0);
                r.lm_iterations = p.value("lm_iters", 0);
                r.converged = p.value("converged", true);
                r.final_costs = {p.value("E_cf", 0.0), p.value("E_ac", 0.0), p.value("E_cv", 0.0)};
                doc.passes.push_back(std::move(r));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("curves.json: ") + e.what());
    } catch (const std::domain_error& e) {
        throw FormatError(std::string("curves.json: ") + e.what());
    }
    return doc;
}

void write_curves(const std::filesystem::path& path, const CurvesDocument& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << curves_to_json(doc);
    if (!out) throw IoError("write failed for " + path.string());
}

CurvesDocument read_curves(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return curves_from_json(buf.str());
}

}  // namespace cinetrack
