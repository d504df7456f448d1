#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mluq {

using Vector3 = Eigen::Vector3d;
using VectorX = Eigen::VectorXd;
using MatrixX = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

// Nodal space-time data: one column per time node, one row per mesh vertex.
using SpaceTimeField = Eigen::MatrixXd;

class EllipticityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace detail

template <typename... Args>
[[noreturn]] void fail_invalid(const Args&... args) {
  throw std::invalid_argument(detail::cat(args...));
}

template <typename Cond, typename... Args>
void require(const Cond& cond, const Args&... args) {
  if (!cond) fail_invalid(args...);
}

}  // namespace mluq
