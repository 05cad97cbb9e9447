#include "cli.hpp"

#include "cinetrack/boundary.hpp"
#include "cinetrack/curves_io.hpp"
#include "cinetrack/label_image.hpp"
#include "cinetrack/render.hpp"
#include "cinetrack/self_check.hpp"
#include "cinetrack/strain.hpp"
#include "cinetrack/synth.hpp"
#include "cinetrack/tracker.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace cinetrack::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kJacobianThreshold = 1e-6;

struct SynthArgs {
    std::string out;
    int frames = 25;
    int size = 128;
    double amplitude = 0.25;
    bool rv = false;
    double jitter = 0.0;
    std::uint64_t seed = 1;
};

struct TrackArgs {
    std::string masks;
    std::string structure;
    std::string out;
    TrackerConfig cfg;
};

struct StrainArgs {
    std::string curves;
    std::string out;
    std::size_t reference = 0;
};

struct RenderArgs {
    std::string masks;
    std::vector<std::string> curves;
    std::string out;
};

struct CheckArgs {
    std::uint64_t seed = 1;
    double corrupt = 0.0;
};

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

int cmd_synth(const SynthArgs& a, const std::string& usage, std::ostream& out, std::ostream& err) {
    PhantomConfig cfg = PhantomConfig::for_size(a.size);
    cfg.frames = a.frames;
    cfg.contraction_amplitude = a.amplitude;
    cfg.rv_enabled = a.rv;
    cfg.jitter_px = a.jitter;
    cfg.seed = a.seed;
    try {
        cfg.validate();
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n" << usage;
        return kUsage;
    }

    const Phantom phantom = generate_annulus_phantom(cfg);
    write_mask_sequence(a.out, phantom.masks);

    const PhantomTruth& t = phantom.truth;
    nlohmann::ordered_json truth;
    truth["n_frames"] = cfg.frames;
    truth["width"] = cfg.width;
    truth["height"] = cfg.height;
    truth["center"] = {cfg.center_x, cfg.center_y};
    truth["contraction_amplitude"] = cfg.contraction_amplitude;
    truth["endo_radius"] = t.endo_radius;
    truth["epi_radius"] = t.epi_radius;
    truth["endo_strain_percent"] = t.endo_strain;
    truth["epi_strain_percent"] = t.epi_strain;
    truth["peak_strain_percent"] = t.peak_strain;
    truth["peak_frame"] = t.peak_frame;
    write_text(fs::path(a.out) / "truth.json", truth.dump(2) + "\n");

    out << "wrote " << cfg.frames << " frames of " << cfg.width << "x" << cfg.height << " to " << a.out
        << " (truth peak " << fixed(t.peak_strain, 6) << "%)\n";
    return kOk;
}

int cmd_track(const TrackArgs& a, const std::string& usage, std::ostream& out, std::ostream& err) {
    const auto structure = parse_structure(a.structure);
    if (!structure) {
        err << "error: unknown structure '" << a.structure << "'\n" << usage;
        return kUsage;
    }
    try {
        a.cfg.validate();
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n" << usage;
        return kUsage;
    }

    const LabelMaskSequence masks = load_mask_sequence(a.masks);
    if (masks.size() < 2) {
        err << "error: need at least 2 frames, found " << masks.size() << "\n";
        return kIo;
    }
    std::vector<BoundaryCandidateSet> candidates;
    try {
        candidates = extract_sequence_candidates(masks, *structure);
    } catch (const EmptyRegionError& e) {
        err << "error: empty region in frame " << e.frame() << ": " << e.what() << "\n";
        return kEmptyRegion;
    }

    const TrackResult result = track_sequence(candidates, a.cfg);

    CurvesDocument doc;
    doc.structure = *structure;
    doc.splines = result.splines;
    doc.pixel_spacing_x = masks.pixel_spacing_x;
    doc.pixel_spacing_y = masks.pixel_spacing_y;
    doc.passes = result.passes;
    write_curves(a.out, doc);

    out << "pass  n_cp  outer  lm_iters  E_cf          E_ac          E_cv          converged\n";
    for (std::size_t i = 0; i < result.passes.size(); ++i) {
        const PassReport& p = result.passes[i];
        char line[160];
        std::snprintf(line, sizeof line, "%-4zu  %-4zu  %-5d  %-8d  %-12s  %-12s  %-12s  %s\n", i + 1,
                      p.n_control_points, p.outer_iterations, p.lm_iterations, sci(p.final_costs.cf).c_str(),
                      sci(p.final_costs.ac).c_str(), sci(p.final_costs.cv).c_str(), p.converged ? "yes" : "no");
        out << line;
    }
    if (!result.converged()) err << "WARN: convergence flag\n";
    return kOk;
}

int cmd_strain(const StrainArgs& a, const std::string& usage, std::ostream& out, std::ostream& err) {
    const CurvesDocument doc = read_curves(a.curves);
    if (a.reference >= doc.splines.n_frames()) {
        err << "error: reference frame " << a.reference << " out of range for " << doc.splines.n_frames()
            << " frames\n"
            << usage;
        return kUsage;
    }
    const StrainCurve curve = circumferential_strain(doc.splines, a.reference, doc.structure);
    write_text(a.out, strain_to_csv(curve));
    out << "peak " << format_percent(curve.peak) << "% @ frame " << curve.peak_frame << "\n";
    return kOk;
}

int cmd_render(const RenderArgs& a, const std::string& usage, std::ostream& out, std::ostream& err) {
    const LabelMaskSequence masks = load_mask_sequence(a.masks);
    std::vector<CurvesDocument> docs;
    for (const auto& path : a.curves) {
        docs.push_back(read_curves(path));
        if (docs.back().splines.n_frames() != masks.size()) {
            err << "error: " << path << " has " << docs.back().splines.n_frames() << " frames, masks have "
                << masks.size() << "\n"
                << usage;
            return kUsage;
        }
    }
    std::vector<Structure> structures;
    for (const auto& d : docs) {
        if (std::find(structures.begin(), structures.end(), d.structure) == structures.end()) {
            structures.push_back(d.structure);
        }
    }

    std::error_code ec;
    fs::create_directories(a.out, ec);
    if (ec || !fs::is_directory(a.out)) throw IoError("cannot create directory " + a.out);

    for (std::size_t t = 0; t < masks.size(); ++t) {
        std::vector<Vec2> dots;
        for (Structure s : structures) {
            const auto pts = extract_boundary_candidates(masks.frames[t], s);
            dots.insert(dots.end(), pts.begin(), pts.end());
        }
        std::vector<SvgCurve> curves;
        for (std::size_t i = 0; i < docs.size(); ++i) curves.push_back({docs[i].splines.frame(t), curve_color(i)});
        write_text(fs::path(a.out) / frame_file_name(t, "svg"),
                   render_frame_svg(masks.width, masks.height, dots, curves));
    }
    out << "wrote " << masks.size() << " SVG frames to " << a.out << "\n";
    return kOk;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
    const TrackerConfig cfg;
    JacobianCheckOptions opts;
    opts.corrupt_entry = a.corrupt;
    const RandomTrackingInstance inst = make_random_tracking_instance(a.seed);
    const JacobianCheckResult jac = jacobian_check(inst.state, inst.candidates, cfg, a.seed, opts);
    const KdOracleResult kd = kd_tree_oracle(a.seed);

    out << "jacobian max relative error: " << sci(jac.max_relative_error) << " (cf " << sci(jac.max_cf) << ", ac "
        << sci(jac.max_ac) << ", cv " << sci(jac.max_cv) << ", " << jac.entries_checked << " entries)\n";
    out << "kd-tree mismatches vs linear scan: " << kd.mismatches << " / " << kd.queries << "\n";

    const bool ok = jac.max_relative_error < kJacobianThreshold && kd.mismatches == 0;
    out << (ok ? "check passed\n" : "check FAILED\n");
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-spline contour tracking and circumferential strain for cine label masks", "cinetrack"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate an annulus phantom mask sequence");
    synth_cmd->add_option("--out", synth.out, "Output directory")->required();
    synth_cmd->add_option("--frames", synth.frames, "Number of frames")->capture_default_str();
    synth_cmd->add_option("--size", synth.size, "Image width and height in pixels")->capture_default_str();
    synth_cmd->add_option("--amplitude", synth.amplitude, "Contraction amplitude in [0, 1)")->capture_default_str();
    synth_cmd->add_flag("--rv", synth.rv, "Add an RV blood pool");
    synth_cmd->add_option("--jitter", synth.jitter, "Boundary jitter in pixels")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Jitter seed")->capture_default_str();

    TrackArgs track;
    auto* track_cmd = app.add_subcommand("track", "Track one structure through a mask sequence");
    track_cmd->add_option("--masks", track.masks, "Mask directory")->required();
    track_cmd->add_option("--structure", track.structure, "lv-endo | lv-epi | rv-endo")->required();
    track_cmd->add_option("--out", track.out, "Output curves.json")->required();
    track_cmd->add_option("--passes", track.cfg.passes, "Resolution passes")->capture_default_str();
    track_cmd->add_option("--cp0", track.cfg.initial_control_points, "Control points in the first pass")
        ->capture_default_str();
    track_cmd->add_option("--samples", track.cfg.samples_per_segment, "Curve samples per segment")
        ->capture_default_str();
    track_cmd->add_option("--rho-cf", track.cfg.rho_cf, "Closest-feature weight")->capture_default_str();
    track_cmd->add_option("--rho-ac", track.cfg.rho_ac, "Acceleration weight")->capture_default_str();
    track_cmd->add_option("--rho-cv", track.cfg.rho_cv, "Curvature weight")->capture_default_str();

    StrainArgs strain;
    auto* strain_cmd = app.add_subcommand("strain", "Circumferential strain from tracked curves");
    strain_cmd->add_option("--curves", strain.curves, "Input curves.json")->required();
    strain_cmd->add_option("--out", strain.out, "Output strain.csv")->required();
    strain_cmd->add_option("--reference", strain.reference, "Reference frame")->capture_default_str();

    RenderArgs render;
    auto* render_cmd = app.add_subcommand("render", "Write SVG overlays of candidates and curves");
    render_cmd->add_option("--masks", render.masks, "Mask directory")->required();
    render_cmd->add_option("--curves", render.curves, "curves.json (repeatable)")->required();
    render_cmd->add_option("--out", render.out, "Output directory")->required();

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Jacobian and Kd-tree self checks");
    check_cmd->add_option("--seed", check.seed, "Instance seed")->capture_default_str();
    check_cmd->add_option("--debug-corrupt-jacobian", check.corrupt)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kUsage;
    }

    try {
        if (*synth_cmd) return cmd_synth(synth, synth_cmd->help(), out, err);
        if (*track_cmd) return cmd_track(track, track_cmd->help(), out, err);
        if (*strain_cmd) return cmd_strain(strain, strain_cmd->help(), out, err);
        if (*render_cmd) return cmd_render(render, render_cmd->help(), out, err);
        if (*check_cmd) return cmd_check(check, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    }
    return kUsage;
}

}  // namespace cinetrack::cli
