#pragma once

#include <memory>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "meshdiff/local_rigid.hpp"
#include "meshdiff/mesh.hpp"

namespace meshdiff {

/// Sparse diffusing system B = I + A assembled from a neighbor graph.
/// Rows cover every interested vertex; columns only the free ones (the
/// fixed columns are dropped, leaving their rows as reaction constraints).
/// The factorization is computed once at build time and reused for every
/// solve, so the struct is immutable and safe for concurrent solves.
class DiffusionSystem {
  public:
    DiffusionSystem(const std::vector<std::vector<int>>& neighbor_graph,
                    const VertexClassification& classification);

    DiffusionSystem(const DiffusionSystem&) = delete;
    DiffusionSystem& operator=(const DiffusionSystem&) = delete;

    const std::vector<int>& row_vertices() const { return rows_; }
    const std::vector<int>& free_vertices() const { return free_; }
    int fixed_row_count() const { return static_cast<int>(rows_.size() - free_.size()); }
    const Eigen::SparseMatrix<double>& coefficient() const { return B_; }

    /// Solves for the regularized offsets of the free vertices. Case 1
    /// solves BO = C directly; Case 2 solves the reduced normal equations
    /// by substitution plus one round of iterative refinement.
    Eigen::MatrixX3d solve(const Eigen::MatrixX3d& rhs) const;

  private:
    std::vector<int> rows_, free_;
    Eigen::SparseMatrix<double> B_;
    Eigen::SparseMatrix<double> normal_; // B^T B, Case 2 only
    std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
    std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
};

DiffusionSystem build_system(const std::vector<std::vector<int>>& neighbor_graph,
                             const VertexClassification& classification);

/// Regularized offsets for the system's free vertices, aligned with
/// system.free_vertices(). The offsets argument must carry p_i - v_i for
/// every row vertex of the system.
std::vector<Vec3> diffusing_step(const DiffusionSystem& system,
                                 const PreliminaryOffsets& offsets);

struct LambdaParams {
    double lambda_max = 1.0;
    double lambda_min = 0.1;
    double sigma = 1.0; // decay length, in mesh units
};

/// Diffusion weights decaying with geodesic distance to the fixed set:
/// lambda_i = lambda_max * exp(-d_i / sigma) + lambda_min.
VertexClassification assign_lambda(const Mesh& mesh, const VertexClassification& classification,
                                   const std::vector<double>& geodesic_to_fixed,
                                   const LambdaParams& params);

} // namespace meshdiff
