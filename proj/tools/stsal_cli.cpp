#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <system_error>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace stsal::cli;

namespace {

void add_saliency_flags(CLI::App* app, SaliencyFlags& f) {
    app->add_option("--input", f.input, "VOL1 file or directory of PGM/PPM frames (sorted by name)")
        ->required()
        ->check(CLI::ExistingPath);
    app->add_option("--window-length", f.window_length, "Temporal window in frames; omit for full-span saliency");
    app->add_option("--window-hop", f.window_hop, "Window hop in frames (default: window length)");
    app->add_option("--sigma-spatial", f.sigma_spatial, "Gaussian sigma in pixels, 0 disables")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--sigma-temporal", f.sigma_temporal, "Gaussian sigma in frames, 0 disables")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--downsample", f.downsample, "Spatial box-average factor")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--color", f.color, "gray, or lab-sum (RGB input converted to L*a*b*, maps summed)")
        ->capture_default_str()
        ->check(CLI::IsMember({"gray", "lab-sum"}));
    app->add_option("--weights", f.weights, "Per-channel weights for the sum (default all 1)")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-spectrum spatiotemporal saliency"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "stsal 0.1.0");

    SaliencyCommand sal;
    auto* s = app.add_subcommand("saliency", "Compute a saliency volume");
    add_saliency_flags(s, sal.flags);
    s->add_option("--output", sal.output, "Output VOL1 path; metadata goes to <output>.json")->required();
    s->add_option("--pgm-dir", sal.pgm_dir, "Also export min-max normalized PGM frames here");
    s->add_option("--dtype", sal.dtype, "Output sample type")->capture_default_str()->check(CLI::IsMember({"f32", "f64"}));

    SynthCommand syn;
    auto* y = app.add_subcommand("synth", "Generate synthetic motion trials or run the benchmark grid");
    y->add_option("--kind", syn.kind, "flicker, direction or velocity")
        ->capture_default_str()
        ->check(CLI::IsMember({"flicker", "direction", "velocity"}));
    y->add_option("--distractor", syn.distractor, "Distractor parameter (Hz, rad or px/frame)")->capture_default_str();
    y->add_option("--target", syn.target, "Target parameter")->capture_default_str();
    y->add_flag("--blind", syn.blind, "Target uses the distractor parameter");
    y->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
    y->add_option("--video", syn.video, "Trial video VOL1 path; metadata goes to <video>.json");
    y->add_option("--mask", syn.mask, "Target mask VOL1 path");
    y->add_option("--csv", syn.csv, "Run the benchmark grid and write kind,distractor,target,seed,auc here");
    y->add_option("--kinds", syn.kinds, "Grid kinds")->delimiter(',');
    y->add_option("--pairs", syn.pairs, "Grid distractor:target pairs")->delimiter(',');
    y->add_option("--seeds", syn.seeds, "Grid seeds")->delimiter(',');
    y->add_option("--sigma-spatial", syn.sigma_spatial, "Grid saliency sigma, pixels")->capture_default_str();
    y->add_option("--sigma-temporal", syn.sigma_temporal, "Grid saliency sigma, frames")->capture_default_str();
    y->add_option("--frame-size", syn.frame_size, "Square frame side")->capture_default_str()->check(CLI::PositiveNumber);
    y->add_option("--frames", syn.frames, "Frame count")->capture_default_str()->check(CLI::PositiveNumber);
    y->add_option("--fps", syn.fps, "Frame rate")->capture_default_str()->check(CLI::PositiveNumber);
    y->add_option("--grid", syn.grid, "Objects per row and column")->capture_default_str()->check(CLI::PositiveNumber);
    y->add_option("--object-rows", syn.object_rows, "Object height")->capture_default_str()->check(CLI::PositiveNumber);
    y->add_option("--object-cols", syn.object_cols, "Object width")->capture_default_str()->check(CLI::PositiveNumber);
    y->add_option("--roam", syn.roam, "Roam region side")->capture_default_str()->check(CLI::PositiveNumber);
    y->add_option("--speed", syn.speed, "Shared speed for direction trials, px/frame")->capture_default_str();
    y->add_option("--heading", syn.heading, "Shared heading for velocity trials, rad")->capture_default_str();

    AnomalyCommand ano;
    auto* a = app.add_subcommand("anomaly", "Frame abnormality scores and abnormal regions");
    add_saliency_flags(a, ano.flags);
    a->add_option("--out-dir", ano.out_dir, "Writes scores.csv, regions.vol, roc.csv (with --labels), meta.json")
        ->required();
    a->add_option("--k", ano.k, "Region threshold as a multiple of the mean saliency")->capture_default_str();
    a->add_option("--labels", ano.labels, "Per-frame frame,label CSV")->check(CLI::ExistingFile);

    StipCommand st;
    auto* p = app.add_subcommand("stip", "Saliency interest points and descriptors");
    add_saliency_flags(p, st.flags);
    p->add_option("--out-dir", st.out_dir, "Writes points.csv, descriptors.csv, meta.json")->required();
    p->add_option("--source", st.source, "Describe the video (first prepared channel) or the saliency map")
        ->capture_default_str()
        ->check(CLI::IsMember({"video", "saliency"}));
    p->add_option("--rho", st.rho, "Absolute detection threshold (overrides --rho-mult)");
    p->add_option("--rho-mult", st.rho_mult, "Threshold as a multiple of the mean saliency")->capture_default_str();
    p->add_option("--rx", st.rx, "NMS half-extent in x")->capture_default_str()->check(CLI::PositiveNumber);
    p->add_option("--ry", st.ry, "NMS half-extent in y")->capture_default_str()->check(CLI::PositiveNumber);
    p->add_option("--rt", st.rt, "NMS half-extent in t")->capture_default_str()->check(CLI::PositiveNumber);
    p->add_option("--scales", st.scales, "Descriptor boxes, side x frames")->delimiter(',')->capture_default_str();

    QftCommand q;
    auto* f = app.add_subcommand("qft-compare", "Quaternion vs channel-sum saliency on random 4-channel images");
    f->add_option("--trials", q.trials, "Number of trials")->capture_default_str();
    f->add_option("--min-size", q.min_size, "Smallest side")->capture_default_str();
    f->add_option("--max-size", q.max_size, "Largest side")->capture_default_str();
    f->add_option("--sigma", q.sigma, "Smoothing sigma in pixels")->capture_default_str();
    f->add_option("--seed", q.seed, "Random seed")->capture_default_str();
    f->add_option("--output", q.output, "CSV path; metadata goes to <output>.json")->required();

    EvalCommand ev;
    auto* e = app.add_subcommand("eval", "AUC, EER and F-measure from scores and labels");
    e->add_option("--scores", ev.scores, "score,label CSV")->check(CLI::ExistingFile);
    e->add_option("--saliency", ev.saliency, "Saliency VOL1 (voxel scores)")->check(CLI::ExistingFile);
    e->add_option("--mask", ev.mask, "Ground-truth VOL1 mask for --saliency")->check(CLI::ExistingFile);
    e->add_option("--frame-scores", ev.frame_scores, "frame,score CSV (e.g. anomaly scores.csv)")->check(CLI::ExistingFile);
    e->add_option("--labels", ev.labels, "frame,label CSV for --frame-scores")->check(CLI::ExistingFile);
    e->add_option("--roc", ev.roc, "Write threshold,tpr,fpr here");
    e->add_option("--output", ev.output, "Write a JSON summary here");
    e->add_option("--f-mode", ev.f_mode, "pr (precision/recall F1) or tpr-fpr")
        ->capture_default_str()
        ->check(CLI::IsMember({"pr", "tpr-fpr"}));
    e->add_option("--threshold", ev.threshold, "F-measure at this threshold instead of the best over the sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 2;
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (s->parsed()) run_saliency(sal, args);
        if (y->parsed()) run_synth(syn, args);
        if (a->parsed()) run_anomaly(ano, args);
        if (p->parsed()) run_stip(st, args);
        if (f->parsed()) run_qft(q, args);
        if (e->parsed()) run_eval(ev, args);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
