#include "fastice/linear_solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#ifdef FASTICE_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#endif

#include "fastice/errors.hpp"

namespace fastice {

namespace {

class Factorization {
 public:
  virtual ~Factorization() = default;
  virtual bool factorize(const SparseMatrix& A) = 0;
  virtual Eigen::VectorXd solve(const Eigen::VectorXd& b) const = 0;
};

class CholeskyFactorization final : public Factorization {
 public:
  bool factorize(const SparseMatrix& A) override {
    if (!analyzed_) {
      llt_.analyzePattern(A);
      analyzed_ = true;
    }
    llt_.factorize(A);
    return llt_.info() == Eigen::Success;
  }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const override { return llt_.solve(b); }

 private:
#ifdef FASTICE_HAVE_CHOLMOD
  Eigen::CholmodSupernodalLLT<SparseMatrix, Eigen::Lower> llt_;
#else
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower> llt_;
#endif
  bool analyzed_ = false;
};

class LuFactorization final : public Factorization {
 public:
  bool factorize(const SparseMatrix& A) override {
    if (!analyzed_) {
      lu_.analyzePattern(A);
      analyzed_ = true;
    }
    lu_.factorize(A);
    return lu_.info() == Eigen::Success;
  }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const override {
    return const_cast<Eigen::SparseLU<SparseMatrix>&>(lu_).solve(b);
  }

 private:
  Eigen::SparseLU<SparseMatrix> lu_;
  bool analyzed_ = false;
};

/// Adapts a (possibly stale) factorization to Eigen's preconditioner concept.
class FactorizationPreconditioner {
 public:
  FactorizationPreconditioner() = default;
  template <typename MatrixType>
  explicit FactorizationPreconditioner(const MatrixType&) {}

  void attach(const Factorization* factor) { factor_ = factor; }

  template <typename MatrixType>
  FactorizationPreconditioner& analyzePattern(const MatrixType&) { return *this; }
  template <typename MatrixType>
  FactorizationPreconditioner& factorize(const MatrixType&) { return *this; }
  template <typename MatrixType>
  FactorizationPreconditioner& compute(const MatrixType&) { return *this; }

  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const { return factor_->solve(b); }

  Eigen::ComputationInfo info() { return Eigen::Success; }

 private:
  const Factorization* factor_ = nullptr;
};

template <typename Krylov>
LinearSolveStats run_krylov(Krylov& krylov, const SparseMatrix& A, const Eigen::VectorXd& b,
                            Eigen::VectorXd& x, const LinearSolverConfig& cfg, double tol) {
  krylov.setTolerance(tol);
  krylov.setMaxIterations(cfg.max_iterations);
  krylov.compute(A);
  x = krylov.solve(b);
  LinearSolveStats stats;
  stats.iterations = static_cast<int>(krylov.iterations());
  const double bnorm = b.norm();
  stats.relative_residual = bnorm > 0 ? (A * x - b).norm() / bnorm : (A * x).norm();
  stats.converged = krylov.info() == Eigen::Success || stats.relative_residual <= tol;
  return stats;
}

}  // namespace

struct LinearSolver::Impl {
  LinearSolverConfig config;
  std::unique_ptr<Factorization> factor;
  bool factor_symmetric = false;
  Eigen::Index factor_size = -1;
  int factorizations = 0;

  void factorize(const SparseMatrix& A, bool symmetric) {
    if (!factor || factor_symmetric != symmetric || factor_size != A.rows()) {
      if (symmetric) {
        factor = std::make_unique<CholeskyFactorization>();
      } else {
        factor = std::make_unique<LuFactorization>();
      }
      factor_symmetric = symmetric;
      factor_size = A.rows();
    }
    ++factorizations;
    if (!factor->factorize(A)) {
      factor.reset();
      throw SolverError(symmetric ? "sparse Cholesky factorization failed (operator not SPD?)"
                                  : "sparse LU factorization failed");
    }
  }

  LinearSolveStats preconditioned(const SparseMatrix& A, bool symmetric, const Eigen::VectorXd& b,
                                  Eigen::VectorXd& x, double tol) {
    if (symmetric) {
      Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                               FactorizationPreconditioner>
          cg;
      cg.preconditioner().attach(factor.get());
      return run_krylov(cg, A, b, x, config, tol);
    }
    Eigen::BiCGSTAB<SparseMatrix, FactorizationPreconditioner> bicg;
    bicg.preconditioner().attach(factor.get());
    return run_krylov(bicg, A, b, x, config, tol);
  }

  LinearSolveStats direct(const SparseMatrix& A, bool symmetric, const Eigen::VectorXd& b,
                          Eigen::VectorXd& x, double tol) {
    bool fresh = false;
    if (!config.reuse_factorization || !factor || factor_symmetric != symmetric ||
        factor_size != A.rows()) {
      factorize(A, symmetric);
      fresh = true;
    }
    LinearSolveStats stats = preconditioned(A, symmetric, b, x, tol);
    if (!fresh && (!stats.converged || stats.iterations > config.refactor_after)) {
      factorize(A, symmetric);
      const int stale_iterations = stats.iterations;
      stats = preconditioned(A, symmetric, b, x, tol);
      stats.iterations += stale_iterations;
      fresh = true;
    }
    stats.refactorized = fresh;
    return stats;
  }

  LinearSolveStats krylov(const SparseMatrix& A, bool symmetric, const Eigen::VectorXd& b,
                          Eigen::VectorXd& x, double tol) {
    if (symmetric) {
      Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                               Eigen::IncompleteCholesky<double>>
          cg;
      return run_krylov(cg, A, b, x, config, tol);
    }
    Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<double>> bicg;
    return run_krylov(bicg, A, b, x, config, tol);
  }
};

LinearSolver::LinearSolver(LinearSolverConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = config;
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

LinearSolveStats LinearSolver::solve(const SparseMatrix& A, bool symmetric,
                                     const Eigen::VectorXd& b, Eigen::VectorXd& x,
                                     double relative_tolerance) {
  if (b.size() == 0 || b.isZero(0.0)) {
    x = Eigen::VectorXd::Zero(b.size());
    return {0, 0.0, false, true};
  }
  const double tol =
      relative_tolerance > 0.0 ? relative_tolerance : impl_->config.relative_tolerance;
  return impl_->config.method == LinearMethod::direct ? impl_->direct(A, symmetric, b, x, tol)
                                                       : impl_->krylov(A, symmetric, b, x, tol);
}

void LinearSolver::reset() { impl_->factor.reset(); }

int LinearSolver::factorizations() const { return impl_->factorizations; }

const LinearSolverConfig& LinearSolver::config() const { return impl_->config; }

}  // namespace fastice
