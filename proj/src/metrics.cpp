#include "stsal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stsal/io.hpp"

namespace stsal {

namespace {

struct ClassCounts {
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

ClassCounts validate(const ScoredSamples& s, const char* what) {
    if (s.scores.size() != s.labels.size()) {
        throw std::invalid_argument(std::string(what) + ": scores and labels differ in length");
    }
    ClassCounts c;
    for (std::size_t k = 0; k < s.scores.size(); ++k) {
        if (!std::isfinite(s.scores[k])) throw std::invalid_argument(std::string(what) + ": non-finite score");
        if (s.labels[k]) {
            ++c.positives;
        } else {
            ++c.negatives;
        }
    }
    return c;
}

std::vector<std::size_t> descending_order(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

// Calls visit(threshold, tp, fp) once per distinct score, highest first.
template <typename Visit>
void sweep(const ScoredSamples& s, Visit&& visit) {
    const auto order = descending_order(s.scores);
    std::size_t tp = 0, fp = 0;
    for (std::size_t k = 0; k < order.size();) {
        const double thr = s.scores[order[k]];
        while (k < order.size() && s.scores[order[k]] == thr) {
            if (s.labels[order[k]]) {
                ++tp;
            } else {
                ++fp;
            }
            ++k;
        }
        visit(thr, tp, fp);
    }
}

double harmonic_mean(double a, double b) { return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; }

}  // namespace

void require_two_classes(const ScoredSamples& s, const char* what) {
    const auto c = validate(s, what);
    if (c.positives == 0 || c.negatives == 0) {
        throw std::invalid_argument(std::string(what) + ": need at least one positive and one negative label");
    }
}

RocCurve roc(const ScoredSamples& s) {
    require_two_classes(s, "roc");
    const auto c = validate(s, "roc");
    const double p = static_cast<double>(c.positives);
    const double n = static_cast<double>(c.negatives);
    RocCurve curve;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    sweep(s, [&](double thr, std::size_t tp, std::size_t fp) {
        curve.points.push_back({thr, static_cast<double>(tp) / p, static_cast<double>(fp) / n});
    });
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& a = curve.points[k - 1];
        const auto& b = curve.points[k];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

double auc(const ScoredSamples& s) {
    require_two_classes(s, "auc");
    std::vector<double> pos;
    for (std::size_t k = 0; k < s.scores.size(); ++k) {
        if (s.labels[k]) pos.push_back(s.scores[k]);
    }
    const std::size_t n_neg = s.scores.size() - pos.size();
    std::sort(pos.begin(), pos.end());
    // Twice the Mann-Whitney U statistic; exact in integers. Only the positives
    // are sorted, each negative is located by binary search.
    std::uint64_t twice_u = 0;
    for (std::size_t k = 0; k < s.scores.size(); ++k) {
        if (s.labels[k]) continue;
        const double v = s.scores[k];
        const auto lo = std::lower_bound(pos.begin(), pos.end(), v);
        if (lo == pos.end()) continue;
        const auto hi = *lo == v ? std::upper_bound(lo, pos.end(), v) : lo;
        twice_u += 2 * static_cast<std::uint64_t>(pos.end() - hi) + static_cast<std::uint64_t>(hi - lo);
    }
    return static_cast<double>(twice_u) / (2.0 * static_cast<double>(pos.size()) * static_cast<double>(n_neg));
}

double f_measure(const ScoredSamples& s, double threshold, FMeasureMode mode) {
    const auto c = validate(s, "f_measure");
    if (mode == FMeasureMode::TprFpr && (c.positives == 0 || c.negatives == 0)) {
        throw std::invalid_argument("f_measure: TPR/FPR mode needs both classes");
    }
    std::size_t tp = 0, fp = 0;
    for (std::size_t k = 0; k < s.scores.size(); ++k) {
        if (s.scores[k] >= threshold) {
            if (s.labels[k]) {
                ++tp;
            } else {
                ++fp;
            }
        }
    }
    if (tp + fp == 0) return 0.0;
    if (mode == FMeasureMode::TprFpr) {
        return harmonic_mean(static_cast<double>(tp) / static_cast<double>(c.positives),
                             static_cast<double>(fp) / static_cast<double>(c.negatives));
    }
    const std::size_t fn = c.positives - tp;
    return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

BestF best_f_measure(const ScoredSamples& s, FMeasureMode mode) {
    require_two_classes(s, "best_f_measure");
    const auto c = validate(s, "best_f_measure");
    BestF best{std::numeric_limits<double>::infinity(), 0.0};
    sweep(s, [&](double thr, std::size_t tp, std::size_t fp) {
        double f = 0.0;
        if (mode == FMeasureMode::TprFpr) {
            f = harmonic_mean(static_cast<double>(tp) / static_cast<double>(c.positives),
                              static_cast<double>(fp) / static_cast<double>(c.negatives));
        } else {
            const std::size_t fn = c.positives - tp;
            f = 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
        }
        if (f > best.value) best = {thr, f};
    });
    return best;
}

double eer(const RocCurve& curve) {
    if (curve.points.empty()) throw std::invalid_argument("eer: empty curve");
    // d = FPR - miss rate rises from -1 at (0,0) to +1 at (1,1).
    const auto gap = [](const RocPoint& p) { return p.fpr - (1.0 - p.tpr); };
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
        const double d = gap(curve.points[k]);
        if (d < 0.0) continue;
        if (d == 0.0 || k == 0) return curve.points[k].fpr;
        const auto& a = curve.points[k - 1];
        const auto& b = curve.points[k];
        const double da = gap(a);
        const double alpha = -da / (d - da);
        return a.fpr + alpha * (b.fpr - a.fpr);
    }
    return 1.0;
}

double eer(const ScoredSamples& s) { return eer(roc(s)); }

OwnedSamples read_scored_csv(std::istream& in) {
    OwnedSamples out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("line " + std::to_string(lineno) + ": expected score,label");
        const std::string a = line.substr(0, comma);
        const std::string b = line.substr(comma + 1);
        double score = 0.0;
        long long label = 0;
        try {
            std::size_t used_a = 0, used_b = 0;
            score = std::stod(a, &used_a);
            label = std::stoll(b, &used_b);
            if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            if (lineno == 1 && out.scores.empty()) continue;  // header
            throw std::runtime_error("line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
        if (label != 0 && label != 1) throw std::runtime_error("line " + std::to_string(lineno) + ": label must be 0 or 1");
        out.scores.push_back(score);
        out.labels.push_back(static_cast<std::uint8_t>(label));
    }
    return out;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
    out << "threshold,tpr,fpr\n";
    for (const auto& p : curve.points) {
        out << format_double(p.threshold) << ',' << format_double(p.tpr) << ',' << format_double(p.fpr) << '\n';
    }
}

}  // namespace stsal
