#include "stsal/synthetic.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "stsal/io.hpp"
#include "stsal/metrics.hpp"
#include "stsal/random.hpp"

namespace stsal {

std::string to_string(MotionKind k) {
    switch (k) {
        case MotionKind::Flicker: return "flicker";
        case MotionKind::Direction: return "direction";
        case MotionKind::Velocity: return "velocity";
    }
    return "unknown";
}

MotionKind parse_motion_kind(const std::string& s) {
    if (s == "flicker") return MotionKind::Flicker;
    if (s == "direction") return MotionKind::Direction;
    if (s == "velocity") return MotionKind::Velocity;
    throw std::invalid_argument("unknown motion kind '" + s + "' (expected flicker, direction or velocity)");
}

void TrialConfig::validate() const {
    if (frame_size == 0 || frames == 0 || grid == 0 || object_rows == 0 || object_cols == 0 || roam == 0) {
        throw std::invalid_argument("TrialConfig: sizes must be positive");
    }
    if (!(fps > 0.0)) throw std::invalid_argument("TrialConfig: fps must be positive");
    if (frame_size % grid != 0) throw std::invalid_argument("TrialConfig: frame size must be a multiple of the grid");
    if (roam > frame_size / grid) throw std::invalid_argument("TrialConfig: roam region exceeds the grid pitch");
    if (object_rows > roam || object_cols > roam) throw std::invalid_argument("TrialConfig: object larger than roam region");
    for (double v : {distractor_param, target_param, speed, heading}) {
        if (!std::isfinite(v)) throw std::invalid_argument("TrialConfig: parameters must be finite");
    }
    if (kind == MotionKind::Flicker && (distractor_param < 0.0 || target_param < 0.0)) {
        throw std::invalid_argument("TrialConfig: flicker rates must be >= 0");
    }
}

namespace {

std::size_t wrap(long long v, std::size_t n) {
    const auto m = static_cast<long long>(n);
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
}

}  // namespace

ObjectLayout draw_layout(const TrialConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    ObjectLayout layout;
    const std::size_t n = cfg.object_count();
    layout.target = static_cast<std::size_t>(rng() % n);
    const std::size_t pitch = cfg.frame_size / cfg.grid;
    const std::size_t margin = (pitch - cfg.roam) / 2;
    layout.objects.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto& o = layout.objects[k];
        o.cell_row = (k / cfg.grid) * pitch + margin;
        o.cell_col = (k % cfg.grid) * pitch + margin;
        o.flicker_phase = unit_uniform(rng);
        o.start_row = static_cast<std::size_t>(rng() % cfg.roam);
        o.start_col = static_cast<std::size_t>(rng() % cfg.roam);
        o.param = k == layout.target ? cfg.target_param : cfg.distractor_param;
    }
    return layout;
}

ObjectPose object_pose(const TrialConfig& cfg, const ObjectLayout::Object& obj, std::size_t t) {
    const double center = static_cast<double>(cfg.roam / 2);
    const double time = static_cast<double>(t);
    ObjectPose pose{true, center, center};
    switch (cfg.kind) {
        case MotionKind::Flicker: {
            const double cycle = time * obj.param / cfg.fps + obj.flicker_phase;
            pose.visible = cycle - std::floor(cycle) < 0.5;
            break;
        }
        case MotionKind::Direction:
        case MotionKind::Velocity: {
            const double heading = cfg.kind == MotionKind::Direction ? obj.param : cfg.heading;
            const double speed = cfg.kind == MotionKind::Direction ? cfg.speed : obj.param;
            pose.row += static_cast<double>(obj.start_row) + speed * std::sin(heading) * time;
            pose.col += static_cast<double>(obj.start_col) + speed * std::cos(heading) * time;
            break;
        }
    }
    return pose;
}

Trial generate_trial(const TrialConfig& cfg) {
    const ObjectLayout layout = draw_layout(cfg);
    const Dims d{cfg.frame_size, cfg.frame_size, cfg.frames};
    Trial trial{Volume(d, 0.0), Mask(d, 0), layout.target};

    const auto half_rows = static_cast<long long>(cfg.object_rows / 2);
    const auto half_cols = static_cast<long long>(cfg.object_cols / 2);
    for (std::size_t k = 0; k < layout.objects.size(); ++k) {
        const auto& obj = layout.objects[k];
        const bool is_target = k == layout.target;
        for (std::size_t t = 0; t < cfg.frames; ++t) {
            const ObjectPose pose = object_pose(cfg, obj, t);
            if (!pose.visible && !is_target) continue;
            const auto top = static_cast<long long>(std::floor(pose.row + 0.5)) - half_rows;
            const auto left = static_cast<long long>(std::floor(pose.col + 0.5)) - half_cols;
            for (std::size_t a = 0; a < cfg.object_rows; ++a) {
                const std::size_t i = obj.cell_row + wrap(top + static_cast<long long>(a), cfg.roam);
                for (std::size_t b = 0; b < cfg.object_cols; ++b) {
                    const std::size_t j = obj.cell_col + wrap(left + static_cast<long long>(b), cfg.roam);
                    if (pose.visible) trial.video(i, j, t) = 1.0;
                    if (is_target) trial.target(i, j, t) = 1;
                }
            }
        }
    }
    return trial;
}

double mask_auc(const SaliencyMap& z, const Mask& mask) {
    if (z.dims() != mask.dims()) throw std::invalid_argument("mask_auc: saliency and mask dims differ");
    return auc(ScoredSamples{z.values(), mask.values()});
}

std::vector<BenchmarkRow> run_benchmark(std::span<const BenchmarkCondition> conditions,
                                        std::span<const std::uint64_t> seeds, const BenchmarkOptions& opts) {
    std::vector<BenchmarkRow> rows;
    rows.reserve(conditions.size() * seeds.size());
    for (const auto& c : conditions) {
        for (const auto seed : seeds) {
            TrialConfig cfg = opts.base;
            cfg.kind = c.kind;
            cfg.distractor_param = c.distractor;
            cfg.target_param = c.target;
            cfg.seed = seed;
            const Trial trial = generate_trial(cfg);
            const SaliencyMap z = saliency_eq1(trial.video, opts.smooth);
            rows.push_back({c.kind, c.distractor, c.target, seed, mask_auc(z, trial.target)});
        }
    }
    return rows;
}

std::vector<BenchmarkRow> run_benchmark(std::span<const MotionKind> kinds,
                                        std::span<const std::pair<double, double>> param_grid,
                                        std::span<const std::uint64_t> seeds, const BenchmarkOptions& opts) {
    if (param_grid.empty()) throw std::invalid_argument("run_benchmark: empty parameter grid");
    std::vector<BenchmarkCondition> conditions;
    for (const auto k : kinds) {
        for (const auto& [d, t] : param_grid) conditions.push_back({k, d, t});
    }
    return run_benchmark(conditions, seeds, opts);
}

void write_benchmark_csv(std::ostream& out, std::span<const BenchmarkRow> rows) {
    out << "kind,distractor,target,seed,auc\n";
    for (const auto& r : rows) {
        out << to_string(r.kind) << ',' << format_double(r.distractor) << ',' << format_double(r.target) << ','
            << r.seed << ',' << format_double(r.auc) << '\n';
    }
}

}  // namespace stsal
