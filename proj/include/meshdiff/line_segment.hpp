#pragma once

#include <vector>

namespace meshdiff {

/// 1D dividing/diffusing configuration. Endpoints of the target never move.
struct LineConfig {
    std::vector<double> template_points; // strictly ascending, length N >= 3
    std::vector<double> target_points;   // same length; [0] and [N-1] fixed
    double threshold = -1;               // <= 0 selects 1e-6 * |b_N - b_1|
    int max_iterations = 10000;
};

struct LineSnapshot {
    int iteration = 0;           // sweep index, or tier-pass index in MR mode
    std::vector<double> points;
    double total_offset = 0;     // sum of |renewed offsets| for this sweep
};

struct SegmentationResult {
    std::vector<LineSnapshot> snapshots; // snapshots[0] is the initial state
    bool converged = false;
};

/// Optimal interior point between (a_i, a_i2) given fixed b_i, b_i2:
/// the proportional split b_i + (b_i2 - b_i) * (a_i1 - a_i) / (a_i2 - a_i).
double divide_point(double a_i, double a_i1, double a_i2, double b_i, double b_i2);

/// Local averaging of interior offsets, (o_{i-1} + 2 o_i + o_{i+1}) / 4,
/// with the boundary offsets taken as zero.
std::vector<double> diffuse_offsets(const std::vector<double>& interior_offsets);

/// Alternates dividing and diffusing until the total renewed offset drops
/// below the threshold. With mr=true the interior points are released in
/// tiers of recursive binary midpoints, each tier iterated to the threshold
/// before the next is unlocked; one snapshot is recorded per tier pass.
SegmentationResult segment_line(const LineConfig& config, bool mr);

/// Closed-form proportional division of [b1, bN] along the template.
std::vector<double> line_ground_truth(const std::vector<double>& template_points, double b1,
                                      double bN);

} // namespace meshdiff
