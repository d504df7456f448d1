#include "mluq/transfer.hpp"

#include <cmath>
#include <vector>

namespace mluq {

namespace {

// Drops weights below snap (points sitting on coarse vertices/edges produce
// tiny spurious entries) and renormalizes to keep the row a partition of unity.
void append_row(std::vector<Eigen::Triplet<double>>& triplets, int row,
                const MeshLevel& coarse, const PointLocation& loc) {
  constexpr double snap = 1e-12;
  Eigen::Vector4d w = loc.weights.cwiseMax(0.0);
  for (int i = 0; i < 4; ++i)
    if (w[i] < snap) w[i] = 0.0;
  w /= w.sum();
  for (int i = 0; i < 4; ++i)
    if (w[i] > 0.0)
      triplets.emplace_back(row, coarse.tets(i, loc.element), w[i]);
}

}  // namespace

SparseMatrix space_interpolation(const MeshLevel& coarse, const MeshLevel& fine) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * fine.n_vertices());
  for (Eigen::Index v = 0; v < fine.n_vertices(); ++v) {
    const Vector3 p = fine.vertices.col(v);
    const PointLocation loc = locate_point(coarse, p);
    require(loc.found(), "space_interpolation: fine vertex ", v,
            " lies outside the coarse mesh");
    append_row(triplets, static_cast<int>(v), coarse, loc);
  }
  SparseMatrix mat(fine.n_vertices(), coarse.n_vertices());
  mat.setFromTriplets(triplets.begin(), triplets.end());
  mat.makeCompressed();
  return mat;
}

SparseMatrix time_interpolation(int m_coarse, double dt_coarse, int m_fine,
                                double dt_fine) {
  require(m_coarse >= 2 && m_fine >= 2, "time_interpolation: need at least two "
          "time nodes, got ", m_coarse, " and ", m_fine);
  const double span_c = (m_coarse - 1) * dt_coarse;
  const double span_f = (m_fine - 1) * dt_fine;
  require(std::abs(span_c - span_f) <= 1e-9 * span_c,
          "time_interpolation: grids span ", span_c, " and ", span_f);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * m_fine);
  for (int j = 0; j < m_fine; ++j) {
    const double t = j * dt_fine;
    int k = std::min(static_cast<int>(std::floor(t / dt_coarse)), m_coarse - 2);
    double theta = t / dt_coarse - k;
    if (theta < 1e-12) {
      triplets.emplace_back(j, k, 1.0);
    } else if (theta > 1.0 - 1e-12) {
      triplets.emplace_back(j, k + 1, 1.0);
    } else {
      triplets.emplace_back(j, k, 1.0 - theta);
      triplets.emplace_back(j, k + 1, theta);
    }
  }
  SparseMatrix mat(m_fine, m_coarse);
  mat.setFromTriplets(triplets.begin(), triplets.end());
  mat.makeCompressed();
  return mat;
}

TransferOperator make_transfer(const MeshLevel& coarse, const MeshLevel& fine) {
  TransferOperator transfer;
  transfer.coarse_level = coarse.level;
  transfer.fine_level = fine.level;
  transfer.space = space_interpolation(coarse, fine);
  transfer.time = time_interpolation(coarse.m, coarse.dt, fine.m, fine.dt);
  return transfer;
}

SpaceTimeField spacetime_prolong(const SpaceTimeField& coarse_field,
                                 const TransferOperator& transfer) {
  require(coarse_field.rows() == transfer.space.cols() &&
              coarse_field.cols() == transfer.time.cols(),
          "spacetime_prolong: field is ", coarse_field.rows(), "x",
          coarse_field.cols(), ", transfer expects ", transfer.space.cols(),
          "x", transfer.time.cols());
  return transfer.space * coarse_field * transfer.time.transpose();
}

VectorX time_prolong(const VectorX& coarse_series, const TransferOperator& transfer) {
  require(coarse_series.size() == transfer.time.cols(),
          "time_prolong: series has ", coarse_series.size(),
          " nodes, transfer expects ", transfer.time.cols());
  return transfer.time * coarse_series;
}

std::vector<int> midpoint_map(const MeshLevel& source, const MeshLevel& target) {
  std::vector<int> map(target.n_tets());
  for (Eigen::Index e = 0; e < target.n_tets(); ++e) {
    const PointLocation loc = locate_point(source, tet_barycenter(target, static_cast<int>(e)));
    require(loc.found(), "midpoint_map: barycenter of target element ", e,
            " lies outside the source mesh");
    map[e] = loc.element;
  }
  return map;
}

VectorX midpoint_downsample(const VectorX& source_values,
                            const std::vector<int>& map) {
  VectorX out(static_cast<Eigen::Index>(map.size()));
  for (std::size_t e = 0; e < map.size(); ++e) {
    require(map[e] >= 0 && map[e] < source_values.size(),
            "midpoint_downsample: map entry ", map[e], " out of range");
    out[static_cast<Eigen::Index>(e)] = source_values[map[e]];
  }
  return out;
}

}  // namespace mluq
