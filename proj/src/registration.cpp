#include "meshdiff/registration.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "meshdiff/diffuse_solver.hpp"
#include "meshdiff/geodesic.hpp"
#include "meshdiff/local_rigid.hpp"
#include "meshdiff/parallel.hpp"
#include "meshdiff/spatial.hpp"

namespace meshdiff {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// One dividing/diffusing loop over a single level. Updates `current` in
// place; returns true when the epsilon criterion was met.
bool run_level(const Mesh& template_mesh, std::vector<Vec3>& current, const AabbTree& tree,
               const PyramidLevel& level, const VertexClassification& lambda_source,
               const RegistrationConfig& config, double threshold, int level_index,
               RegistrationTrace& trace, Clock::time_point t0) {
    if (level.free_vertices.empty()) return true;

    VertexClassification level_cls;
    level_cls.klass.assign(template_mesh.vertex_count(), VertexClass::NonInterested);
    level_cls.lambda = lambda_source.lambda;
    for (int v : level.fixed_vertices) level_cls.klass[v] = VertexClass::Fixed;
    for (int v : level.free_vertices) level_cls.klass[v] = VertexClass::Free;
    level_cls.fixed_count = static_cast<int>(level.fixed_vertices.size());

    const DiffusionSystem system(level.neighbor_graph, level_cls);

    std::vector<int> active = level.fixed_vertices;
    active.insert(active.end(), level.free_vertices.begin(), level.free_vertices.end());

    const auto& free = system.free_vertices();
    for (int it = 1; it <= config.max_iterations; ++it) {
        PreliminaryOffsets prelim = dividing_step(template_mesh.vertices, current, active,
                                                  level.neighbor_graph, config.threads);
        trace.total_dividing_visits += static_cast<long long>(active.size());
        if (!config.fixed_reaction) {
            for (int v : level.fixed_vertices) prelim.offsets[v] = Vec3::Zero();
        }

        const std::vector<Vec3> regularized = diffusing_step(system, prelim);

        for (std::size_t i = 0; i < free.size(); ++i) current[free[i]] += regularized[i];
        parallel_for(0, static_cast<int>(free.size()), config.threads, [&](int i) {
            current[free[i]] = tree.closest_point(current[free[i]]).point;
        });

        double sum = 0;
        for (const auto& o : regularized) sum += o.norm();
        const double mean = sum / static_cast<double>(free.size());
        trace.rows.push_back({level_index, it, mean, ms_since(t0)});
        if (mean < threshold) return true;
    }
    return false;
}

} // namespace

RefineResult refine(const CorrespondedPair& pair, const VertexClassification& classification,
                    const RegistrationConfig& config, const ResolutionPyramid* pyramid) {
    if (!same_topology(pair.template_mesh, pair.target_mesh))
        throw std::invalid_argument("refine: template and target topology differ");
    if (config.epsilon <= 0) throw std::invalid_argument("refine: epsilon must be positive");

    const auto t0 = Clock::now();
    const Mesh& tmpl = pair.template_mesh;
    const double mel = mean_edge_length(tmpl);
    const double threshold = config.epsilon * mel;

    // lambda decays with geodesic distance to the original fixed set
    const std::vector<int> fixed = classification.fixed_vertices();
    VertexClassification weighted = classification;
    LambdaParams params{config.lambda_max, config.lambda_min, config.sigma_factor * mel};
    if (!fixed.empty()) {
        weighted = assign_lambda(tmpl, classification, geodesic_field(tmpl, fixed), params);
    } else {
        for (std::size_t v = 0; v < weighted.lambda.size(); ++v)
            weighted.lambda[v] = params.lambda_max + params.lambda_min;
    }

    const AabbTree tree(pair.raw_target_surface);

    RefineResult result;
    result.refined = pair.target_mesh;
    std::vector<Vec3>& current = result.refined.vertices;
    bool all_converged = true;

    if (config.mode == RefineMode::Full) {
        PyramidLevel full;
        full.free_vertices = weighted.free_vertices();
        full.fixed_vertices = fixed;
        full.neighbor_graph.assign(tmpl.vertex_count(), {});
        for (int v = 0; v < tmpl.vertex_count(); ++v) {
            if (!weighted.is_interested(v)) continue;
            for (int u : tmpl.one_ring[v])
                if (weighted.is_interested(u)) full.neighbor_graph[v].push_back(u);
        }
        all_converged = run_level(tmpl, current, tree, full, weighted, config, threshold,
                                  config.pyramid_levels, result.trace, t0);
    } else {
        ResolutionPyramid local;
        const ResolutionPyramid* levels = pyramid;
        if (!levels) {
            local = build_pyramid(tmpl, weighted, config.pyramid_levels);
            levels = &local;
        }
        for (std::size_t j = 0; j < levels->levels.size(); ++j) {
            const bool ok = run_level(tmpl, current, tree, levels->levels[j], weighted, config,
                                      threshold, static_cast<int>(j), result.trace, t0);
            all_converged = all_converged && ok;
        }
    }

    result.trace.status = all_converged ? RefineStatus::Converged : RefineStatus::MaxIterations;
    result.trace.total_ms = ms_since(t0);
    return result;
}

double mean_offset(const std::vector<Vec3>& offsets, const std::vector<int>& free_set) {
    if (free_set.empty()) throw std::invalid_argument("mean_offset: empty free set");
    double sum = 0;
    for (int v : free_set) sum += offsets[v].norm();
    return sum / static_cast<double>(free_set.size());
}

DistanceStats compare_refinements(const Mesh& result_a, const Mesh& result_b) {
    if (!same_topology(result_a, result_b))
        throw std::invalid_argument("compare_refinements: topology mismatch");
    DistanceStats stats;
    stats.distances.resize(result_a.vertices.size());
    for (std::size_t v = 0; v < result_a.vertices.size(); ++v)
        stats.distances[v] = (result_a.vertices[v] - result_b.vertices[v]).norm();
    double sum = 0;
    for (double d : stats.distances) sum += d;
    stats.mean = sum / static_cast<double>(stats.distances.size());
    double var = 0;
    for (double d : stats.distances) var += (d - stats.mean) * (d - stats.mean);
    stats.stddev = std::sqrt(var / static_cast<double>(stats.distances.size()));
    return stats;
}

void write_trace_csv(const std::string& path, const RegistrationTrace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    out << "level,iteration,mean_offset,elapsed_ms\n";
    for (const auto& row : trace.rows)
        out << row.level << ',' << row.iteration << ',' << row.mean_offset << ','
            << row.elapsed_ms << '\n';
}

} // namespace meshdiff
