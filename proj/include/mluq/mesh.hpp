#pragma once

#include "mluq/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mluq {

struct BoxDomain {
  Vector3 lo = Vector3::Zero();
  Vector3 hi = Vector3::Ones();

  Vector3 extent() const { return hi - lo; }
  Vector3 center() const { return 0.5 * (lo + hi); }
  bool contains(const Vector3& p, double tol = 1e-10) const;
};

// One member of a space-time mesh hierarchy: a structured tetrahedral box mesh
// (each grid cell split into the six path tetrahedra sharing the cell diagonal,
// identically in every cell) together with a uniform time grid of m nodes.
struct MeshLevel {
  int level = 0;
  Eigen::Matrix3Xd vertices;                   // 3 x n, vertex coordinates
  Eigen::Matrix<int, 4, Eigen::Dynamic> tets;  // 4 x n_tets, vertex indices
  double h = 0.0;                              // nominal mesh width
  double dt = 0.0;                             // time step
  int m = 0;                                   // number of time nodes, T = (m - 1) * dt

  // Structured-grid metadata used for O(1) point location.
  Vector3 lo = Vector3::Zero();
  Eigen::Vector3i cells = Eigen::Vector3i::Zero();  // cells per axis
  Vector3 cell_size = Vector3::Zero();

  Eigen::Index n_vertices() const { return vertices.cols(); }
  Eigen::Index n_tets() const { return tets.cols(); }
  double time_node(int k) const { return k * dt; }
};

struct MeshHierarchy {
  BoxDomain domain;
  double T = 0.0;
  bool nested = false;
  std::vector<MeshLevel> levels;

  const MeshLevel& finest() const { return levels.back(); }
  int n_levels() const { return static_cast<int>(levels.size()); }
};

struct Resolution {
  double h = 0.0;
  double dt = 0.0;
};

// Structured box mesh with spacing h (which must divide every box edge) and
// uniform time grid with step dt (which must divide T).
MeshLevel build_box_mesh(const BoxDomain& domain, double h, double dt, double T,
                         int level_index = 0);

// Nested hierarchy of L levels; level l has h_l = h0 / 2^l and dt_l = dt0 / 2^l.
// Factor-two refinement of the structured split keeps vertex sets and elements
// nested between consecutive levels.
MeshHierarchy build_nested_hierarchy(const BoxDomain& domain, int L, double h0,
                                     double dt0, double T);

// Hierarchy from an explicit resolution ladder (strictly decreasing in h).
// Consecutive levels need not nest.
MeshHierarchy build_nonnested_hierarchy(const BoxDomain& domain,
                                        const std::vector<Resolution>& resolutions,
                                        double T);

struct PointLocation {
  int element = -1;  // -1 when the point is outside the mesh
  Eigen::Vector4d weights = Eigen::Vector4d::Zero();

  bool found() const { return element >= 0; }
};

// Locates p in the mesh and returns the containing element with its barycentric
// weights. Points within tol (in barycentric units) of a face count as inside;
// of the containing elements the one with the lowest index wins. Uses the
// structured grid to restrict the scan to the cells whose closed extent holds p;
// the result is identical to the full scan below.
PointLocation locate_point(const MeshLevel& mesh, const Vector3& p, double tol = 1e-10);

// Reference implementation: linear scan over all elements in index order.
PointLocation locate_point_scan(const MeshLevel& mesh, const Vector3& p, double tol = 1e-10);

// Evaluates the P1 interpolant of nodal data at p. Throws if p lies outside.
double evaluate_p1(const MeshLevel& mesh, const VectorX& nodal, const Vector3& p);
VectorX evaluate_p1(const MeshLevel& mesh, const MatrixX& nodal_columns, const Vector3& p);

double tet_volume(const MeshLevel& mesh, int element);
Vector3 tet_barycenter(const MeshLevel& mesh, int element);

// Legacy ASCII VTK export of the mesh plus optional vertex scalar fields.
void write_vtk(const MeshLevel& mesh, const std::string& path,
               const std::vector<std::pair<std::string, VectorX>>& point_data = {});

// Plain-text sparse matrix export, one "row col value" triplet per line.
void write_coordinate_matrix(const SparseMatrix& mat, const std::string& path);

}  // namespace mluq
