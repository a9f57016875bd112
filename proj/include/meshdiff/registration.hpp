#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meshdiff/mesh.hpp"
#include "meshdiff/pyramid.hpp"

namespace meshdiff {

enum class RefineMode { Full, MultiRes };

struct RegistrationConfig {
    double epsilon = 0.001;      // threshold on mean offset, as a fraction of mean edge length
    int max_iterations = 1000;   // per level
    RefineMode mode = RefineMode::Full;
    double lambda_max = 1.0;
    double lambda_min = 0.1;
    double sigma_factor = 5.0;   // lambda decay length = sigma_factor * mean edge length
    int pyramid_levels = 4;
    int threads = 0;             // 0 = auto
    // Feed the raw dividing offsets of fixed vertices into their solver
    // rows (the reaction constraint). Off by default: fixed rows then act
    // as zero-anchored smoothing constraints, which reproduces the 1D
    // behavior where boundary offsets are zero.
    bool fixed_reaction = false;
};

enum class RefineStatus { Converged, MaxIterations };

struct RegistrationTrace {
    struct Row {
        int level;
        int iteration;
        double mean_offset;
        double elapsed_ms;
    };
    std::vector<Row> rows;
    RefineStatus status = RefineStatus::Converged;
    long long total_dividing_visits = 0;
    double total_ms = 0;
};

struct RefineResult {
    Mesh refined;
    RegistrationTrace trace;
};

/// Alternating dividing and diffusing with re-projection onto the raw
/// target surface, until the mean renewed offset over the free vertices
/// drops below epsilon * mean edge length. MultiRes mode runs the loop per
/// pyramid level coarse to fine, finishing with the full resolution.
/// A prebuilt pyramid may be supplied to amortize construction.
RefineResult refine(const CorrespondedPair& pair, const VertexClassification& classification,
                    const RegistrationConfig& config,
                    const ResolutionPyramid* pyramid = nullptr);

/// Mean Euclidean norm of the offsets over the free set.
double mean_offset(const std::vector<Vec3>& offsets, const std::vector<int>& free_set);

struct DistanceStats {
    std::vector<double> distances; // per vertex
    double mean = 0;
    double stddev = 0;
};

/// Per-vertex distances between two same-topology refinement results.
DistanceStats compare_refinements(const Mesh& result_a, const Mesh& result_b);

void write_trace_csv(const std::string& path, const RegistrationTrace& trace);

} // namespace meshdiff
