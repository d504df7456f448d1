#pragma once

#include "mluq/mesh.hpp"
#include "mluq/types.hpp"

#include <vector>

namespace mluq {

// P1 interpolation from a coarse space-time grid to a fine one. Rows of both
// matrices are convex weights (entries in [0, 1], summing to 1), so constants
// are transferred exactly. Works for nested and non-nested level pairs.
struct TransferOperator {
  int coarse_level = 0;
  int fine_level = 0;
  SparseMatrix space;  // n_fine x n_coarse
  SparseMatrix time;   // m_fine x m_coarse
};

// Interpolation matrix evaluating the coarse P1 basis at the fine vertices.
SparseMatrix space_interpolation(const MeshLevel& coarse, const MeshLevel& fine);

// Interpolation matrix between two uniform time grids covering the same span.
SparseMatrix time_interpolation(int m_coarse, double dt_coarse, int m_fine,
                                double dt_fine);

TransferOperator make_transfer(const MeshLevel& coarse, const MeshLevel& fine);

// Tensor-product prolongation of a space-time field (space matrix in the rows,
// time matrix in the columns).
SpaceTimeField spacetime_prolong(const SpaceTimeField& coarse_field,
                                 const TransferOperator& transfer);

// Prolongation of a time series (one value per coarse time node).
VectorX time_prolong(const VectorX& coarse_series, const TransferOperator& transfer);

// For each target element, the index of the source element containing the
// target barycenter. Source is typically the finer mesh: piecewise-constant
// data sampled on it is downsampled by reading the value at the barycenter.
std::vector<int> midpoint_map(const MeshLevel& source, const MeshLevel& target);

VectorX midpoint_downsample(const VectorX& source_values,
                            const std::vector<int>& map);

}  // namespace mluq
