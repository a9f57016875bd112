#include "meshdiff/diffuse_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace meshdiff {

DiffusionSystem::DiffusionSystem(const std::vector<std::vector<int>>& graph,
                                 const VertexClassification& classification) {
    const int n = static_cast<int>(classification.klass.size());
    if (static_cast<int>(graph.size()) != n)
        throw std::invalid_argument("build_system: graph/classification size mismatch");

    std::vector<int> col_of(n, -1), row_of(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!classification.is_interested(v)) continue;
        if (classification.lambda[v] <= 0)
            throw std::invalid_argument("build_system: non-positive lambda at vertex " +
                                        std::to_string(v));
        row_of[v] = static_cast<int>(rows_.size());
        rows_.push_back(v);
        if (classification.is_free(v)) {
            col_of[v] = static_cast<int>(free_.size());
            free_.push_back(v);
        }
    }

    std::vector<Eigen::Triplet<double>> triplets;
    for (int v : rows_) {
        const double lambda = classification.lambda[v];
        int degree = 0;
        for (int u : graph[v])
            if (classification.is_interested(u)) ++degree;
        if (col_of[v] >= 0)
            triplets.emplace_back(row_of[v], col_of[v], 1.0 + lambda * degree);
        for (int u : graph[v]) {
            if (!classification.is_interested(u) || col_of[u] < 0) continue;
            triplets.emplace_back(row_of[v], col_of[u], -lambda);
        }
    }
    B_.resize(static_cast<int>(rows_.size()), static_cast<int>(free_.size()));
    B_.setFromTriplets(triplets.begin(), triplets.end());
    B_.makeCompressed();

    if (fixed_row_count() == 0) {
        lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
        lu_->compute(B_);
        if (lu_->info() != Eigen::Success)
            throw std::runtime_error("build_system: LU factorization of B failed");
    } else if (!free_.empty()) {
        normal_ = (B_.transpose() * B_).pruned();
        ldlt_ = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
        ldlt_->compute(normal_);
        if (ldlt_->info() != Eigen::Success) {
            int pivot = -1;
            const auto& d = ldlt_->vectorD();
            for (int i = 0; i < d.size(); ++i)
                if (!(d(i) > 0)) { pivot = i; break; }
            throw std::runtime_error(
                "build_system: Cholesky factorization of B^T B failed at pivot " +
                std::to_string(pivot));
        }
    }
}

Eigen::MatrixX3d DiffusionSystem::solve(const Eigen::MatrixX3d& rhs) const {
    if (rhs.rows() != B_.rows())
        throw std::invalid_argument("diffusing_step: right-hand side has " +
                                    std::to_string(rhs.rows()) + " rows, system expects " +
                                    std::to_string(B_.rows()));
    if (free_.empty()) return Eigen::MatrixX3d(0, 3);
    if (lu_) return lu_->solve(rhs);

    const Eigen::MatrixX3d reduced = B_.transpose() * rhs;
    Eigen::MatrixX3d solution = ldlt_->solve(reduced);
    // one pass of iterative refinement in the normal equations
    const Eigen::MatrixX3d residual = reduced - normal_ * solution;
    solution += ldlt_->solve(residual);
    return solution;
}

DiffusionSystem build_system(const std::vector<std::vector<int>>& neighbor_graph,
                             const VertexClassification& classification) {
    return DiffusionSystem(neighbor_graph, classification);
}

std::vector<Vec3> diffusing_step(const DiffusionSystem& system,
                                 const PreliminaryOffsets& offsets) {
    const auto& rows = system.row_vertices();
    for (int v : rows) {
        if (v >= static_cast<int>(offsets.offsets.size()))
            throw std::invalid_argument("diffusing_step: offsets shorter than system vertices");
    }
    Eigen::MatrixX3d rhs(static_cast<int>(rows.size()), 3);
    for (std::size_t r = 0; r < rows.size(); ++r) rhs.row(r) = offsets.offsets[rows[r]];

    const Eigen::MatrixX3d solution = system.solve(rhs);
    std::vector<Vec3> out(system.free_vertices().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = solution.row(i);
    return out;
}

VertexClassification assign_lambda(const Mesh& mesh, const VertexClassification& classification,
                                   const std::vector<double>& geodesic_to_fixed,
                                   const LambdaParams& params) {
    if (geodesic_to_fixed.size() != classification.klass.size())
        throw std::invalid_argument("assign_lambda: distance field size mismatch");
    if (params.sigma <= 0) throw std::invalid_argument("assign_lambda: sigma must be positive");
    (void)mesh;

    VertexClassification out = classification;
    for (std::size_t v = 0; v < out.lambda.size(); ++v) {
        if (!out.is_interested(static_cast<int>(v))) continue;
        const double d = geodesic_to_fixed[v];
        out.lambda[v] = params.lambda_max * std::exp(-d / params.sigma) + params.lambda_min;
    }
    return out;
}

} // namespace meshdiff
