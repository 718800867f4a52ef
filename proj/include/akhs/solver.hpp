#pragma once

#include "akhs/ball_kernel.hpp"
#include "akhs/domain.hpp"
#include "akhs/kernels.hpp"

#include <Eigen/Dense>

#include <optional>
#include <variant>

namespace akhs {

// Kernel attached to a histopolation problem: univariate averaged pair,
// tensor product of pairs (axis-aligned boxes), or d-ball averaged kernel.
using Kernel = std::variant<AveragedKernelPair, TensorKernel, BallAveragedKernel>;

int kernel_dim(const Kernel& kernel);

// True when the domain is a translate of the kernel's averaging domain
// (segment of length a, box with the factor widths, ball with the radius).
bool kernel_matches(const Kernel& kernel, const Domain& domain);

// Generating kernel Phi(x, y) of the underlying native space; needed by the
// quadrature assembly path. Throws UnsupportedConstructionError when the
// kernel carries no generating profile.
using PointPairFn =
    std::function<double(std::span<const double>, std::span<const double>)>;
PointPairFn base_kernel_fn(const Kernel& kernel);

enum class Assembly { ClosedForm, Overlap, Quadrature };

// Symmetric positive definite histopolation matrix with its factorization.
class HistoMatrix {
public:
    HistoMatrix() = default;
    HistoMatrix(Eigen::MatrixXd entries, Assembly route);

    int size() const { return (int)k_.rows(); }
    const Eigen::MatrixXd& entries() const { return k_; }
    Assembly assembly() const { return assembly_; }
    double jitter() const { return jitter_; }
    bool factorized() const { return llt_.has_value(); }

    // Cholesky factorization with a pivot-quality gate. A numerically
    // semi-definite matrix triggers one retry with diagonal jitter
    // 1e-12 * trace / n; a second failure throws NotPositiveDefiniteError.
    void factorize();

    // K^{-1} rhs through the factorization (requires factorize()).
    Eigen::VectorXd apply_inverse(const Eigen::VectorXd& rhs) const;
    Eigen::MatrixXd apply_inverse_matrix(const Eigen::MatrixXd& rhs) const;

    // Factorize on demand, solve, and iteratively refine until
    // ||K c - rhs||_inf <= 1e-10 (1 + ||rhs||_inf) or the refinement stalls.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs);

    // Squared ratio of the extreme Cholesky diagonal entries (cheap proxy).
    double cond_estimate() const;

private:
    bool attempt_factorization();

    Eigen::MatrixXd k_;
    Assembly assembly_ = Assembly::ClosedForm;
    double jitter_ = 0.0;
    std::optional<Eigen::LLT<Eigen::MatrixXd>> llt_;
};

// Quadrature rule backing approximate assembly: global node list plus one
// sparse nonnegative weight vector per domain, normalized to mean weights
// (each domain's weights sum to 1).
struct QuadratureRule {
    std::vector<std::vector<double>> nodes;
    std::vector<std::vector<std::pair<int, double>>> weights;

    void validate(int expected_domains) const;
};

// Per-domain tensorized Gauss-Legendre rule (segments and boxes).
QuadratureRule tensor_gauss_rule(const HistoProblem& problem, int nodes_per_axis);

// Reproducing-kernel entry K(rho, tau) with automatic route selection:
// closed-form kappa for translates of the kernel domain, exact overlap for
// indicator kernels, double Gauss-Legendre means of the generating kernel
// otherwise.
double repro_entry(const Kernel& kernel, const Domain& d1, const Domain& d2,
                   int quad_nodes = 32);

// Averaging kernel value A(x, tau).
double averaging_value(const Kernel& kernel, std::span<const double> x,
                       const Domain& tau, int quad_nodes = 32);

HistoMatrix assemble(const HistoProblem& problem, const Kernel& kernel,
                     int quad_nodes = 32);

HistoMatrix assemble_quadrature(const HistoProblem& problem, const PointPairFn& phi,
                                const QuadratureRule& rule);

// Solve K c = lambda (convenience wrapper over HistoMatrix::solve).
Eigen::VectorXd solve(HistoMatrix& matrix, const Eigen::VectorXd& data);

// Solved histopolant: expansion coefficients bound to kernel and domains.
class Histopolant {
public:
    Histopolant(HistoProblem problem, Kernel kernel, Eigen::VectorXd coefficients,
                int quad_nodes = 32);

    const Eigen::VectorXd& coefficients() const { return coeff_; }
    const HistoProblem& problem() const { return problem_; }
    const Kernel& kernel() const { return kernel_; }

    double evaluate(std::span<const double> x) const;
    double evaluate(double x) const;
    double evaluate_mean(const Domain& domain) const;

private:
    HistoProblem problem_;
    Kernel kernel_;
    Eigen::VectorXd coeff_;
    int quad_nodes_;
    bool uniform_matched_;
};

// Assemble, solve, and bind. matrix_out (optional) receives the assembled,
// factorized matrix for diagnostics.
Histopolant histopolate(const HistoProblem& problem, Kernel kernel,
                        HistoMatrix* matrix_out = nullptr, int quad_nodes = 32);

// Mean values of the Lagrange basis at the domain indexed by kvec:
// u(tau) = K^{-1} k(tau) with k_i(tau) = K(tau, tau_i).
Eigen::VectorXd lagrange_values(const HistoMatrix& matrix, const Eigen::VectorXd& kvec);

// Power function P(tau) = sqrt(max(0, K(tau,tau) - k(tau)^T K^{-1} k(tau))).
// With an empty matrix (no data) this degenerates to sqrt(K(tau,tau)).
double power_function(const HistoMatrix& matrix, const Kernel& kernel,
                      const HistoProblem& problem, const Domain& tau,
                      int quad_nodes = 32);

// Solves (K_row (x) K_col) vec(C) = vec(data) through the two per-axis
// factorizations: C = K_col^{-1} data K_row^{-1}. data is n_r x n_c with
// col_matrix of size n_r and row_matrix of size n_c.
Eigen::MatrixXd kronecker_solve(HistoMatrix& row_matrix, HistoMatrix& col_matrix,
                                const Eigen::MatrixXd& data);

} // namespace akhs
