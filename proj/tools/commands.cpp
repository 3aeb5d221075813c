#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "stsal/anomaly.hpp"
#include "stsal/io.hpp"
#include "stsal/metrics.hpp"
#include "stsal/pipeline.hpp"
#include "stsal/qft.hpp"
#include "stsal/stsp.hpp"
#include "stsal/synthetic.hpp"

namespace stsal::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

SampleType parse_dtype(const std::string& s) {
    if (s == "f32") return SampleType::F32;
    if (s == "f64") return SampleType::F64;
    throw ValidationError("--dtype must be f32 or f64");
}

Json metadata(const char* command, const std::vector<std::string>& argv) {
    Json j;
    j["tool"] = "stsal";
    j["version"] = kVersion;
    j["command"] = command;
    j["argv"] = argv;
    return j;
}

void write_json(const fs::path& path, const Json& j) {
    write_atomically(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

void write_text(const fs::path& path, const std::function<void(std::ostream&)>& body) { write_atomically(path, body); }

SaliencyOptions saliency_options(const SaliencyFlags& f) {
    SaliencyOptions o;
    if (f.downsample < 1) throw ValidationError("--downsample must be >= 1");
    if (!(f.sigma_spatial >= 0.0) || !(f.sigma_temporal >= 0.0)) throw ValidationError("sigmas must be >= 0");
    o.downsample = f.downsample;
    o.color = parse_color_mode(f.color);
    o.smooth = {f.sigma_spatial, f.sigma_temporal};
    if (f.window_length > 0) {
        const std::size_t hop = f.window_hop == 0 ? f.window_length : f.window_hop;
        if (hop > f.window_length) throw ValidationError("--window-hop must not exceed --window-length");
        o.window = WindowSpec{f.window_length, hop};
    } else if (f.window_hop != 0) {
        throw ValidationError("--window-hop needs --window-length");
    }
    for (const double w : f.weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("--weights must be finite and >= 0");
    }
    o.weights = f.weights;
    return o;
}

Json describe_flags(const SaliencyFlags& f, const SaliencyOptions& o) {
    Json j;
    j["input"] = f.input;
    j["downsample"] = o.downsample;
    j["color"] = to_string(o.color);
    j["sigma_spatial"] = o.smooth.sigma_spatial;
    j["sigma_temporal"] = o.smooth.sigma_temporal;
    if (o.window) {
        j["window_length"] = o.window->length;
        j["window_hop"] = o.window->hop;
    } else {
        j["window_length"] = nullptr;
        j["window_hop"] = nullptr;
    }
    j["weights"] = o.weights;
    return j;
}

struct ComputedSaliency {
    std::vector<Volume> channels;  // after downsampling and colour conversion
    SaliencyMap map;
};

ComputedSaliency compute(const SaliencyFlags& f, const SaliencyOptions& o) {
    const auto raw = load_channels(f.input, o.color);
    ComputedSaliency out;
    out.channels = prepare_channels(raw, o.downsample, o.color);
    if (o.window && o.window->length > out.channels.front().frames()) {
        throw ValidationError("--window-length " + std::to_string(o.window->length) + " exceeds the " +
                              std::to_string(out.channels.front().frames()) +
                              " frames of the input; omit --window-length for full-span saliency");
    }
    out.map = multi_channel_saliency(out.channels, o.window, o.smooth, o.weights);
    return out;
}

std::pair<double, double> parse_pair(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ValidationError("--pairs entries look like distractor:target, got '" + s + "'");
    const auto num = [&](const std::string& t) {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || p != t.data() + t.size() || !std::isfinite(v)) {
            throw ValidationError("--pairs: '" + t + "' is not a number");
        }
        return v;
    };
    return {num(s.substr(0, colon)), num(s.substr(colon + 1))};
}

DescriptorScale parse_scale(const std::string& s) {
    const auto x = s.find('x');
    std::size_t sigma = 0, tau = 0;
    if (x != std::string::npos) {
        const auto a = std::from_chars(s.data(), s.data() + x, sigma);
        const auto b = std::from_chars(s.data() + x + 1, s.data() + s.size(), tau);
        if (a.ec == std::errc{} && a.ptr == s.data() + x && b.ec == std::errc{} && b.ptr == s.data() + s.size() &&
            sigma >= 2 && tau >= 2) {
            return {sigma, tau};
        }
    }
    throw ValidationError("--scales entries look like 18x10 (side x frames, both >= 2), got '" + s + "'");
}

MotionKind kind_flag(const std::string& s) {
    try {
        return parse_motion_kind(s);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

}  // namespace

void run_saliency(const SaliencyCommand& cmd, const std::vector<std::string>& argv) {
    const SaliencyOptions opts = saliency_options(cmd.flags);
    const SampleType dtype = parse_dtype(cmd.dtype);
    const ComputedSaliency s = compute(cmd.flags, opts);

    const Volume out = to_volume(s.map);
    write_vol1(fs::path(cmd.output), std::span(&out, 1), dtype);
    Json meta = metadata("saliency", argv);
    Json params = describe_flags(cmd.flags, opts);
    params["output"] = cmd.output;
    params["dtype"] = cmd.dtype;
    params["pgm_dir"] = cmd.pgm_dir;
    meta["parameters"] = params;
    Json dims;
    dims["rows"] = s.map.rows();
    dims["cols"] = s.map.cols();
    dims["frames"] = s.map.frames();
    meta["output_dims"] = dims;
    meta["channels"] = s.channels.size();
    if (!cmd.pgm_dir.empty()) {
        const ExportRange r = write_pgm_sequence(cmd.pgm_dir, s.map);
        meta["pgm_normalization"] = {{"min", r.min}, {"max", r.max}};
    }
    write_json(cmd.output + ".json", meta);
}

void run_synth(const SynthCommand& cmd, const std::vector<std::string>& argv) {
    TrialConfig base;
    base.frame_size = cmd.frame_size;
    base.frames = cmd.frames;
    base.fps = cmd.fps;
    base.grid = cmd.grid;
    base.object_rows = cmd.object_rows;
    base.object_cols = cmd.object_cols;
    base.roam = cmd.roam;
    base.speed = cmd.speed;
    base.heading = cmd.heading;

    Json meta = metadata("synth", argv);
    Json geometry;
    geometry["frame_size"] = cmd.frame_size;
    geometry["frames"] = cmd.frames;
    geometry["fps"] = cmd.fps;
    geometry["grid"] = cmd.grid;
    geometry["object_rows"] = cmd.object_rows;
    geometry["object_cols"] = cmd.object_cols;
    geometry["roam"] = cmd.roam;
    geometry["speed"] = cmd.speed;
    geometry["heading"] = cmd.heading;

    if (!cmd.csv.empty()) {
        if (!cmd.video.empty() || !cmd.mask.empty()) throw ValidationError("--csv (grid run) excludes --video/--mask");
        if (cmd.kinds.empty() || cmd.pairs.empty()) throw ValidationError("a grid run needs --kinds and --pairs");
        std::vector<MotionKind> kinds;
        for (const auto& k : cmd.kinds) kinds.push_back(kind_flag(k));
        std::vector<std::pair<double, double>> grid;
        for (const auto& p : cmd.pairs) grid.push_back(parse_pair(p));
        BenchmarkOptions opts{base, {cmd.sigma_spatial, cmd.sigma_temporal}};
        // Validate every condition before the (long) run starts.
        for (const auto k : kinds) {
            for (const auto& [d, t] : grid) {
                TrialConfig c = base;
                c.kind = k;
                c.distractor_param = d;
                c.target_param = t;
                try {
                    c.validate();
                } catch (const std::invalid_argument& e) {
                    throw ValidationError(e.what());
                }
            }
        }
        if (!(cmd.sigma_spatial >= 0.0) || !(cmd.sigma_temporal >= 0.0)) throw ValidationError("sigmas must be >= 0");
        const auto rows = run_benchmark(kinds, grid, cmd.seeds, opts);
        write_text(cmd.csv, [&](std::ostream& out) { write_benchmark_csv(out, rows); });

        Json params;
        params["csv"] = cmd.csv;
        params["kinds"] = cmd.kinds;
        params["pairs"] = cmd.pairs;
        params["seeds"] = cmd.seeds;
        params["sigma_spatial"] = cmd.sigma_spatial;
        params["sigma_temporal"] = cmd.sigma_temporal;
        params["geometry"] = geometry;
        meta["parameters"] = params;
        meta["rows"] = rows.size();
        write_json(cmd.csv + ".json", meta);
        return;
    }

    if (cmd.video.empty() || cmd.mask.empty()) throw ValidationError("a single trial needs --video and --mask");
    TrialConfig cfg = base;
    cfg.kind = kind_flag(cmd.kind);
    cfg.distractor_param = cmd.distractor;
    cfg.target_param = cmd.blind ? cmd.distractor : cmd.target;
    cfg.seed = cmd.seed;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    const Trial trial = generate_trial(cfg);
    write_vol1(fs::path(cmd.video), std::span(&trial.video, 1), SampleType::F32);
    const Volume mask = to_volume(trial.target);
    write_vol1(fs::path(cmd.mask), std::span(&mask, 1), SampleType::F32);

    Json params;
    params["kind"] = to_string(cfg.kind);
    params["distractor"] = cfg.distractor_param;
    params["target"] = cfg.target_param;
    params["blind"] = cfg.blind();
    params["seed"] = cfg.seed;
    params["video"] = cmd.video;
    params["mask"] = cmd.mask;
    params["geometry"] = geometry;
    meta["parameters"] = params;
    meta["target_index"] = trial.target_index;
    write_json(cmd.video + ".json", meta);
}

void run_anomaly(const AnomalyCommand& cmd, const std::vector<std::string>& argv) {
    const SaliencyOptions opts = saliency_options(cmd.flags);
    if (!(cmd.k > 0.0) || !std::isfinite(cmd.k)) throw ValidationError("--k must be > 0");
    const ComputedSaliency s = compute(cmd.flags, opts);
    const auto scores = frame_scores(s.map);
    const Mask regions = abnormal_regions(s.map, cmd.k);

    std::optional<std::vector<std::uint8_t>> labels;
    if (!cmd.labels.empty()) {
        std::ifstream in(cmd.labels);
        if (!in) throw std::runtime_error("cannot open " + cmd.labels);
        labels = read_frame_labels_csv(in, scores.size());
    }

    const fs::path dir(cmd.out_dir);
    Json meta = metadata("anomaly", argv);
    Json params = describe_flags(cmd.flags, opts);
    params["out_dir"] = cmd.out_dir;
    params["k"] = cmd.k;
    params["labels"] = cmd.labels;
    meta["parameters"] = params;

    std::optional<RocCurve> curve;
    if (labels) {
        const ScoredSamples samples{scores, *labels};
        require_two_classes(samples, "anomaly labels");
        curve = roc(samples);
        meta["auc"] = auc(*curve);
        meta["eer"] = eer(*curve);
    }

    write_text(dir / "scores.csv", [&](std::ostream& out) { write_frame_scores_csv(out, scores); });
    const Volume rv = to_volume(regions);
    write_vol1(dir / "regions.vol", std::span(&rv, 1), SampleType::F32);
    if (curve) write_text(dir / "roc.csv", [&](std::ostream& out) { write_roc_csv(out, *curve); });
    write_json(dir / "meta.json", meta);
}

void run_stip(const StipCommand& cmd, const std::vector<std::string>& argv) {
    const SaliencyOptions opts = saliency_options(cmd.flags);
    if (cmd.source != "video" && cmd.source != "saliency") throw ValidationError("--source must be video or saliency");
    NmsConfig nms;
    nms.rho = cmd.rho;
    nms.rho_mult = cmd.rho_mult;
    nms.rx = cmd.rx;
    nms.ry = cmd.ry;
    nms.rt = cmd.rt;
    try {
        nms.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    std::vector<DescriptorScale> scales;
    for (const auto& s : cmd.scales) scales.push_back(parse_scale(s));

    const ComputedSaliency s = compute(cmd.flags, opts);
    const auto points = detect_points(s.map, nms);
    // "video" describes the first prepared channel: luma, L*, or channel 0 of a VOL1 file.
    const auto described = cmd.source == "video" ? extract_all(s.channels.front(), points, scales)
                                                 : extract_all(s.map, points, scales);

    const fs::path dir(cmd.out_dir);
    Json meta = metadata("stip", argv);
    Json params = describe_flags(cmd.flags, opts);
    params["out_dir"] = cmd.out_dir;
    params["source"] = cmd.source;
    if (cmd.rho) {
        params["rho"] = *cmd.rho;
    } else {
        params["rho"] = nullptr;
    }
    params["rho_mult"] = cmd.rho_mult;
    params["rx"] = cmd.rx;
    params["ry"] = cmd.ry;
    params["rt"] = cmd.rt;
    params["scales"] = cmd.scales;
    meta["parameters"] = params;
    meta["threshold"] = nms_threshold(s.map, nms);
    meta["points"] = points.size();
    meta["descriptors"] = described.size();

    write_text(dir / "points.csv", [&](std::ostream& out) { write_points_csv(out, points); });
    write_text(dir / "descriptors.csv", [&](std::ostream& out) { write_descriptors_csv(out, described); });
    write_json(dir / "meta.json", meta);
}

void run_qft(const QftCommand& cmd, const std::vector<std::string>& argv) {
    ComparisonOptions opts;
    opts.trials = cmd.trials;
    opts.min_size = cmd.min_size;
    opts.max_size = cmd.max_size;
    opts.sigma = cmd.sigma;
    opts.seed = cmd.seed;
    if (opts.trials < 1) throw ValidationError("--trials must be >= 1");
    if (opts.min_size < 1 || opts.min_size > opts.max_size) throw ValidationError("need 1 <= --min-size <= --max-size");
    if (!(opts.sigma >= 0.0)) throw ValidationError("--sigma must be >= 0");

    const ComparisonResult result = run_qft_comparison(opts);
    write_text(cmd.output, [&](std::ostream& out) { write_comparison_csv(out, result, opts); });

    Json meta = metadata("qft-compare", argv);
    Json params;
    params["trials"] = opts.trials;
    params["min_size"] = opts.min_size;
    params["max_size"] = opts.max_size;
    params["sigma"] = opts.sigma;
    params["seed"] = opts.seed;
    params["output"] = cmd.output;
    meta["parameters"] = params;
    meta["mean_raw"] = result.mean_raw;
    meta["mean_smoothed"] = result.mean_smoothed;
    meta["skipped"] = result.skipped;
    write_json(cmd.output + ".json", meta);

    std::cout << "mean_raw=" << format_double(result.mean_raw)
              << " mean_smoothed=" << format_double(result.mean_smoothed) << " skipped=" << result.skipped << '\n';
}

void run_eval(const EvalCommand& cmd, const std::vector<std::string>& argv) {
    const int modes = !cmd.scores.empty() + !cmd.saliency.empty() + !cmd.frame_scores.empty();
    if (modes != 1) throw ValidationError("give exactly one of --scores, --saliency (with --mask), --frame-scores (with --labels)");
    FMeasureMode fmode;
    if (cmd.f_mode == "pr") {
        fmode = FMeasureMode::PrecisionRecall;
    } else if (cmd.f_mode == "tpr-fpr") {
        fmode = FMeasureMode::TprFpr;
    } else {
        throw ValidationError("--f-mode must be pr or tpr-fpr");
    }

    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
    std::string mode;
    if (!cmd.scores.empty()) {
        mode = "samples";
        std::ifstream in(cmd.scores);
        if (!in) throw std::runtime_error("cannot open " + cmd.scores);
        auto s = read_scored_csv(in);
        scores = std::move(s.scores);
        labels = std::move(s.labels);
    } else if (!cmd.saliency.empty()) {
        mode = "volume";
        if (cmd.mask.empty()) throw ValidationError("--saliency needs --mask");
        const auto z = read_vol1(fs::path(cmd.saliency));
        const auto m = read_vol1(fs::path(cmd.mask));
        if (z.size() != 1 || m.size() != 1) throw ValidationError("--saliency and --mask must be single-channel VOL1");
        if (z[0].dims() != m[0].dims()) {
            throw ValidationError("saliency dims " + to_string(z[0].dims()) + " differ from mask dims " +
                                  to_string(m[0].dims()));
        }
        scores = z[0].storage();
        labels.resize(scores.size());
        for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = m[0][k] != 0.0;
    } else {
        mode = "frames";
        if (cmd.labels.empty()) throw ValidationError("--frame-scores needs --labels");
        std::ifstream in(cmd.frame_scores);
        if (!in) throw std::runtime_error("cannot open " + cmd.frame_scores);
        // frame,score has the same two-column shape as score,label; read then reorder by frame.
        std::vector<std::pair<std::size_t, double>> rows;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::size_t frame = 0;
            double score = 0.0;
            const auto comma = line.find(',');
            bool ok = comma != std::string::npos;
            if (ok) {
                const auto a = std::from_chars(line.data(), line.data() + comma, frame);
                const auto b = std::from_chars(line.data() + comma + 1, line.data() + line.size(), score);
                ok = a.ec == std::errc{} && a.ptr == line.data() + comma && b.ec == std::errc{} &&
                     b.ptr == line.data() + line.size();
            }
            if (!ok) {
                if (lineno == 1) continue;
                throw std::runtime_error(cmd.frame_scores + " line " + std::to_string(lineno) + ": expected frame,score");
            }
            rows.emplace_back(frame, score);
        }
        scores.assign(rows.size(), 0.0);
        std::vector<bool> seen(rows.size(), false);
        for (const auto& [f, v] : rows) {
            if (f >= rows.size() || seen[f]) throw std::runtime_error(cmd.frame_scores + ": frames must be 0..T-1, each once");
            seen[f] = true;
            scores[f] = v;
        }
        std::ifstream lin(cmd.labels);
        if (!lin) throw std::runtime_error("cannot open " + cmd.labels);
        labels = read_frame_labels_csv(lin, scores.size());
    }

    const ScoredSamples samples{scores, labels};
    require_two_classes(samples, "eval");
    const RocCurve curve = roc(samples);
    Json meta = metadata("eval", argv);
    Json params;
    params["mode"] = mode;
    params["scores"] = cmd.scores;
    params["saliency"] = cmd.saliency;
    params["mask"] = cmd.mask;
    params["frame_scores"] = cmd.frame_scores;
    params["labels"] = cmd.labels;
    params["f_mode"] = cmd.f_mode;
    if (cmd.threshold) {
        params["threshold"] = *cmd.threshold;
    } else {
        params["threshold"] = nullptr;
    }
    meta["parameters"] = params;
    meta["samples"] = scores.size();
    meta["auc"] = auc(curve);
    meta["eer"] = eer(curve);
    if (cmd.threshold) {
        meta["f_measure"] = f_measure(samples, *cmd.threshold, fmode);
    } else {
        const BestF best = best_f_measure(samples, fmode);
        meta["best_f_measure"] = best.value;
        meta["best_f_threshold"] = best.threshold;
    }

    if (!cmd.roc.empty()) write_text(cmd.roc, [&](std::ostream& out) { write_roc_csv(out, curve); });
    if (!cmd.output.empty()) write_json(cmd.output, meta);
    std::cout << "auc=" << format_double(meta["auc"].get<double>())
              << " eer=" << format_double(meta["eer"].get<double>()) << '\n';
}

}  // namespace stsal::cli
