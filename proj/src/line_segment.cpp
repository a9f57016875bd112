#include "meshdiff/line_segment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace meshdiff {

namespace {

void validate(const LineConfig& config) {
    const auto N = config.template_points.size();
    if (N < 3) throw std::invalid_argument("line needs at least 3 points");
    if (config.target_points.size() != N)
        throw std::invalid_argument("template and target lengths differ");
    for (std::size_t i = 1; i < N; ++i)
        if (!(config.template_points[i] > config.template_points[i - 1]))
            throw std::invalid_argument("template points must be strictly ascending");
    if (config.max_iterations <= 0) throw std::invalid_argument("max_iterations must be positive");
}

double effective_threshold(const LineConfig& config) {
    if (config.threshold > 0) return config.threshold;
    return 1e-6 * std::abs(config.target_points.back() - config.target_points.front());
}

// Tiers of recursive binary midpoints of the index range [0, N-1]:
// depth 0 holds the midpoint of the whole range, depth d the midpoints of
// the sub-ranges it induces.
std::vector<std::vector<int>> midpoint_tiers(int N) {
    std::vector<std::vector<int>> tiers;
    std::vector<std::pair<int, int>> ranges{{0, N - 1}};
    while (!ranges.empty()) {
        std::vector<int> mids;
        std::vector<std::pair<int, int>> next;
        for (auto [lo, hi] : ranges) {
            if (hi - lo < 2) continue;
            const int mid = (lo + hi) / 2;
            mids.push_back(mid);
            next.emplace_back(lo, mid);
            next.emplace_back(mid, hi);
        }
        if (!mids.empty()) {
            std::sort(mids.begin(), mids.end());
            tiers.push_back(std::move(mids));
        }
        ranges = std::move(next);
    }
    return tiers;
}

} // namespace

double divide_point(double a_i, double a_i1, double a_i2, double b_i, double b_i2) {
    if (!(a_i < a_i1 && a_i1 < a_i2))
        throw std::invalid_argument("degenerate template triplet: requires a_i < a_i1 < a_i2");
    return b_i + (b_i2 - b_i) * (a_i1 - a_i) / (a_i2 - a_i);
}

std::vector<double> diffuse_offsets(const std::vector<double>& interior_offsets) {
    const auto n = interior_offsets.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? 0.0 : interior_offsets[i - 1];
        const double right = i + 1 == n ? 0.0 : interior_offsets[i + 1];
        out[i] = (left + 2.0 * interior_offsets[i] + right) / 4.0;
    }
    return out;
}

SegmentationResult segment_line(const LineConfig& config, bool mr) {
    validate(config);
    const auto& a = config.template_points;
    const int N = static_cast<int>(a.size());
    const double eps = effective_threshold(config);

    SegmentationResult result;
    std::vector<double> b = config.target_points;
    result.snapshots.push_back({0, b, 0.0});

    if (!mr) {
        for (int it = 1; it <= config.max_iterations; ++it) {
            std::vector<double> interior(N - 2);
            for (int i = 1; i + 1 < N; ++i)
                interior[i - 1] = divide_point(a[i - 1], a[i], a[i + 1], b[i - 1], b[i + 1]) - b[i];
            const std::vector<double> renewed = diffuse_offsets(interior);
            double total = 0;
            for (int i = 1; i + 1 < N; ++i) {
                b[i] += renewed[i - 1];
                total += std::abs(renewed[i - 1]);
            }
            result.snapshots.push_back({it, b, total});
            if (total < eps) {
                result.converged = true;
                break;
            }
        }
        return result;
    }

    // MR scheme: released points of earlier tiers become fixed; within one
    // tier the included line is divided and diffused until the threshold.
    std::vector<char> placed(N, 0);
    placed[0] = placed[N - 1] = 1;
    int pass = 0;
    bool all_converged = true;
    for (const auto& tier : midpoint_tiers(N)) {
        // bracketing placed indices for each tier point
        std::vector<std::pair<int, int>> bracket(tier.size());
        for (std::size_t t = 0; t < tier.size(); ++t) {
            int lo = tier[t] - 1, hi = tier[t] + 1;
            while (!placed[lo]) --lo;
            while (!placed[hi]) ++hi;
            bracket[t] = {lo, hi};
        }
        double total = 0;
        bool tier_converged = false;
        for (int it = 0; it < config.max_iterations; ++it) {
            total = 0;
            for (std::size_t t = 0; t < tier.size(); ++t) {
                const auto [lo, hi] = bracket[t];
                const int p = tier[t];
                const double divided = divide_point(a[lo], a[p], a[hi], b[lo], b[hi]);
                // both included neighbors are placed, so their offsets are 0
                const double renewed = 2.0 * (divided - b[p]) / 4.0;
                b[p] += renewed;
                total += std::abs(renewed);
            }
            if (total < eps) {
                tier_converged = true;
                break;
            }
        }
        all_converged = all_converged && tier_converged;
        for (int p : tier) placed[p] = 1;
        ++pass;
        result.snapshots.push_back({pass, b, total});
    }
    result.converged = all_converged;
    return result;
}

std::vector<double> line_ground_truth(const std::vector<double>& template_points, double b1,
                                      double bN) {
    const auto N = template_points.size();
    if (N < 2) throw std::invalid_argument("need at least 2 template points");
    const double span = template_points.back() - template_points.front();
    if (span == 0) throw std::invalid_argument("degenerate template: a_N equals a_1");
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i)
        out[i] = b1 + (bN - b1) * (template_points[i] - template_points.front()) / span;
    return out;
}

} // namespace meshdiff
