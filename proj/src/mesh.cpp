#include "mluq/mesh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace mluq {

namespace {

// The six permutations of the axes in lexicographic order. Permutation p maps
// to the path tetrahedron visiting cell corners along axes p[0], p[1], p[2];
// all six share the cell diagonal, and using the same split in every cell makes
// the mesh conforming and stable under factor-two refinement.
constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
constexpr bool kPermOdd[6] = {false, true, true, false, false, true};

int checked_count(double length, double step, const char* what) {
  require(step > 0.0, "mesh: ", what, " must be positive, got ", step);
  const double ratio = length / step;
  const int n = static_cast<int>(std::lround(ratio));
  require(n >= 1 && std::abs(ratio - n) <= 1e-9 * std::max(1.0, ratio),
          "mesh: ", what, " = ", step, " does not divide ", length);
  return n;
}

Eigen::Vector4d barycentric(const MeshLevel& mesh, int element, const Vector3& p) {
  const auto t = mesh.tets.col(element);
  const Vector3 v0 = mesh.vertices.col(t[0]);
  Eigen::Matrix3d frame;
  frame.col(0) = mesh.vertices.col(t[1]) - v0;
  frame.col(1) = mesh.vertices.col(t[2]) - v0;
  frame.col(2) = mesh.vertices.col(t[3]) - v0;
  const Vector3 w = frame.inverse() * (p - v0);
  Eigen::Vector4d bary;
  bary[0] = 1.0 - w.sum();
  bary.tail<3>() = w;
  return bary;
}

bool element_contains(const MeshLevel& mesh, int element, const Vector3& p,
                      double tol, Eigen::Vector4d& bary) {
  bary = barycentric(mesh, element, p);
  return (bary.array() >= -tol).all();
}

}  // namespace

bool BoxDomain::contains(const Vector3& p, double tol) const {
  const Vector3 pad = tol * extent().cwiseMax(1.0);
  return (p.array() >= (lo - pad).array()).all() &&
         (p.array() <= (hi + pad).array()).all();
}

MeshLevel build_box_mesh(const BoxDomain& domain, double h, double dt, double T,
                         int level_index) {
  require((domain.extent().array() > 0.0).all(),
          "mesh: box must have positive extent");
  require(T > 0.0, "mesh: T must be positive, got ", T);

  MeshLevel mesh;
  mesh.level = level_index;
  mesh.h = h;
  mesh.dt = dt;
  mesh.m = checked_count(T, dt, "dt") + 1;
  mesh.lo = domain.lo;
  for (int a = 0; a < 3; ++a) {
    mesh.cells[a] = checked_count(domain.extent()[a], h, "h");
    mesh.cell_size[a] = domain.extent()[a] / mesh.cells[a];
  }

  const int cx = mesh.cells[0], cy = mesh.cells[1], cz = mesh.cells[2];
  const int nx = cx + 1, ny = cy + 1, nz = cz + 1;
  const auto vid = [&](int i, int j, int k) { return i + nx * (j + ny * k); };

  mesh.vertices.resize(3, static_cast<Eigen::Index>(nx) * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        mesh.vertices.col(vid(i, j, k)) =
            mesh.lo + Vector3(i * mesh.cell_size[0], j * mesh.cell_size[1],
                              k * mesh.cell_size[2]);

  mesh.tets.resize(4, 6 * static_cast<Eigen::Index>(cx) * cy * cz);
  Eigen::Index e = 0;
  for (int k = 0; k < cz; ++k)
    for (int j = 0; j < cy; ++j)
      for (int i = 0; i < cx; ++i)
        for (int p = 0; p < 6; ++p, ++e) {
          int corner[3] = {i, j, k};
          mesh.tets(0, e) = vid(corner[0], corner[1], corner[2]);
          for (int step = 0; step < 3; ++step) {
            ++corner[kPerm[p][step]];
            mesh.tets(1 + step, e) = vid(corner[0], corner[1], corner[2]);
          }
          // Odd permutations trace a negatively oriented path; swap the last
          // two vertices so every element has positive volume.
          if (kPermOdd[p]) std::swap(mesh.tets(2, e), mesh.tets(3, e));
        }
  return mesh;
}

MeshHierarchy build_nested_hierarchy(const BoxDomain& domain, int L, double h0,
                                     double dt0, double T) {
  require(L >= 1, "mesh: hierarchy needs at least one level, got L = ", L);
  MeshHierarchy hier;
  hier.domain = domain;
  hier.T = T;
  hier.nested = true;
  hier.levels.reserve(L);
  double h = h0, dt = dt0;
  for (int l = 0; l < L; ++l, h *= 0.5, dt *= 0.5)
    hier.levels.push_back(build_box_mesh(domain, h, dt, T, l));
  return hier;
}

MeshHierarchy build_nonnested_hierarchy(const BoxDomain& domain,
                                        const std::vector<Resolution>& resolutions,
                                        double T) {
  require(!resolutions.empty(), "mesh: resolution ladder is empty");
  for (std::size_t i = 1; i < resolutions.size(); ++i)
    require(resolutions[i].h < resolutions[i - 1].h,
            "mesh: resolution ladder must be strictly decreasing in h, got ",
            resolutions[i - 1].h, " then ", resolutions[i].h);
  MeshHierarchy hier;
  hier.domain = domain;
  hier.T = T;
  hier.nested = false;
  hier.levels.reserve(resolutions.size());
  for (std::size_t l = 0; l < resolutions.size(); ++l)
    hier.levels.push_back(build_box_mesh(domain, resolutions[l].h,
                                         resolutions[l].dt, T,
                                         static_cast<int>(l)));
  return hier;
}

PointLocation locate_point(const MeshLevel& mesh, const Vector3& p, double tol) {
  // Candidate cells: every cell whose closed extent contains p, padded so that
  // the barycentric tolerance cannot admit an element the cell filter skips.
  int lo_cell[3], hi_cell[3];
  for (int a = 0; a < 3; ++a) {
    const double c = (p[a] - mesh.lo[a]) / mesh.cell_size[a];
    const double slack = 1e-9 + 64.0 * tol + 1e-12 * std::abs(c);
    if (c < -slack || c > mesh.cells[a] + slack) return {};
    lo_cell[a] = std::clamp(static_cast<int>(std::floor(c - slack)), 0,
                            mesh.cells[a] - 1);
    hi_cell[a] = std::clamp(static_cast<int>(std::floor(c + slack)), 0,
                            mesh.cells[a] - 1);
  }
  PointLocation loc;
  for (int k = lo_cell[2]; k <= hi_cell[2]; ++k)
    for (int j = lo_cell[1]; j <= hi_cell[1]; ++j)
      for (int i = lo_cell[0]; i <= hi_cell[0]; ++i) {
        const Eigen::Index cell =
            i + static_cast<Eigen::Index>(mesh.cells[0]) * (j + mesh.cells[1] * k);
        for (Eigen::Index e = 6 * cell; e < 6 * cell + 6; ++e)
          if (element_contains(mesh, static_cast<int>(e), p, tol, loc.weights)) {
            loc.element = static_cast<int>(e);
            return loc;
          }
      }
  return {};
}

PointLocation locate_point_scan(const MeshLevel& mesh, const Vector3& p, double tol) {
  PointLocation loc;
  for (Eigen::Index e = 0; e < mesh.n_tets(); ++e)
    if (element_contains(mesh, static_cast<int>(e), p, tol, loc.weights)) {
      loc.element = static_cast<int>(e);
      return loc;
    }
  return {};
}

double evaluate_p1(const MeshLevel& mesh, const VectorX& nodal, const Vector3& p) {
  require(nodal.size() == mesh.n_vertices(),
          "evaluate_p1: nodal data has size ", nodal.size(), ", expected ",
          mesh.n_vertices());
  const PointLocation loc = locate_point(mesh, p);
  require(loc.found(), "evaluate_p1: point (", p.x(), ", ", p.y(), ", ", p.z(),
          ") lies outside the mesh");
  double value = 0.0;
  for (int i = 0; i < 4; ++i)
    value += loc.weights[i] * nodal[mesh.tets(i, loc.element)];
  return value;
}

VectorX evaluate_p1(const MeshLevel& mesh, const MatrixX& nodal_columns,
                    const Vector3& p) {
  require(nodal_columns.rows() == mesh.n_vertices(),
          "evaluate_p1: nodal data has ", nodal_columns.rows(),
          " rows, expected ", mesh.n_vertices());
  const PointLocation loc = locate_point(mesh, p);
  require(loc.found(), "evaluate_p1: point (", p.x(), ", ", p.y(), ", ", p.z(),
          ") lies outside the mesh");
  VectorX value = VectorX::Zero(nodal_columns.cols());
  for (int i = 0; i < 4; ++i)
    value += loc.weights[i] * nodal_columns.row(mesh.tets(i, loc.element)).transpose();
  return value;
}

double tet_volume(const MeshLevel& mesh, int element) {
  const auto t = mesh.tets.col(element);
  const Vector3 v0 = mesh.vertices.col(t[0]);
  Eigen::Matrix3d frame;
  frame.col(0) = mesh.vertices.col(t[1]) - v0;
  frame.col(1) = mesh.vertices.col(t[2]) - v0;
  frame.col(2) = mesh.vertices.col(t[3]) - v0;
  return frame.determinant() / 6.0;
}

Vector3 tet_barycenter(const MeshLevel& mesh, int element) {
  const auto t = mesh.tets.col(element);
  return 0.25 * (mesh.vertices.col(t[0]) + mesh.vertices.col(t[1]) +
                 mesh.vertices.col(t[2]) + mesh.vertices.col(t[3]));
}

void write_vtk(const MeshLevel& mesh, const std::string& path,
               const std::vector<std::pair<std::string, VectorX>>& point_data) {
  std::ofstream out(path);
  require(out.good(), "write_vtk: cannot open ", path);
  char buf[96];
  out << "# vtk DataFile Version 3.0\n"
      << "mluq mesh level " << mesh.level << "\n"
      << "ASCII\nDATASET UNSTRUCTURED_GRID\n"
      << "POINTS " << mesh.n_vertices() << " double\n";
  for (Eigen::Index v = 0; v < mesh.n_vertices(); ++v) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", mesh.vertices(0, v),
                  mesh.vertices(1, v), mesh.vertices(2, v));
    out << buf;
  }
  out << "CELLS " << mesh.n_tets() << " " << 5 * mesh.n_tets() << "\n";
  for (Eigen::Index e = 0; e < mesh.n_tets(); ++e)
    out << "4 " << mesh.tets(0, e) << " " << mesh.tets(1, e) << " "
        << mesh.tets(2, e) << " " << mesh.tets(3, e) << "\n";
  out << "CELL_TYPES " << mesh.n_tets() << "\n";
  for (Eigen::Index e = 0; e < mesh.n_tets(); ++e) out << "10\n";
  if (!point_data.empty()) {
    out << "POINT_DATA " << mesh.n_vertices() << "\n";
    for (const auto& [name, values] : point_data) {
      require(values.size() == mesh.n_vertices(), "write_vtk: field ", name,
              " has size ", values.size(), ", expected ", mesh.n_vertices());
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (Eigen::Index v = 0; v < values.size(); ++v) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", values[v]);
        out << buf;
      }
    }
  }
  require(out.good(), "write_vtk: failed writing ", path);
}

void write_coordinate_matrix(const SparseMatrix& mat, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "write_coordinate_matrix: cannot open ", path);
  out << mat.rows() << " " << mat.cols() << " " << mat.nonZeros() << "\n";
  char buf[64];
  for (int k = 0; k < mat.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mat, k); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n",
                    static_cast<long>(it.row()), static_cast<long>(it.col()),
                    it.value());
      out << buf;
    }
  require(out.good(), "write_coordinate_matrix: failed writing ", path);
}

}  // namespace mluq
