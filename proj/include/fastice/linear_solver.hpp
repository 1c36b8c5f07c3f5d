#pragma once

#include <memory>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fastice {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class LinearMethod {
  /// Sparse direct factorization used as the preconditioner of CG (symmetric)
  /// or BiCGSTAB; with reuse the factorization of an earlier operator is kept
  /// until it stops paying off.
  direct,
  /// Incomplete-factorization preconditioned Krylov iteration.
  krylov,
};

struct LinearSolverConfig {
  LinearMethod method = LinearMethod::direct;
  bool reuse_factorization = true;
  double relative_tolerance = 1e-10;
  int max_iterations = 2000;
  /// A reused factorization is rebuilt once the Krylov iteration needs more
  /// than this many steps.
  int refactor_after = 12;
};

struct LinearSolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  bool refactorized = false;
  bool converged = false;
};

class LinearSolver {
 public:
  explicit LinearSolver(LinearSolverConfig config = {});
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  /// Solves A x = b to the given relative residual (the configured one when
  /// `relative_tolerance` is not positive).  `symmetric` selects CG over
  /// BiCGSTAB and Cholesky over LU; A must be SPD when it is set.
  LinearSolveStats solve(const SparseMatrix& A, bool symmetric, const Eigen::VectorXd& b,
                         Eigen::VectorXd& x, double relative_tolerance = 0.0);

  /// Drops any cached factorization.
  void reset();

  int factorizations() const;
  const LinearSolverConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fastice
