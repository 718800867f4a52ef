#include "akhs/solver.hpp"

#include "akhs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace akhs {

namespace {

constexpr double kResidualFactor = 1e-10;
// Cholesky pivot-ratio floor below which the matrix is treated as
// numerically semi-definite. Sits above the ratio produced by the diagonal
// jitter on an exactly singular matrix (1e-12) and well below the ratios of
// honestly conditioned histopolation systems.
constexpr double kPivotRatioFloor = 4e-12;
constexpr int kMaxDense = 4096;

double norm_inf(const Eigen::VectorXd& v) { return v.lpNorm<Eigen::Infinity>(); }

double euclid(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
}

bool width_matches(double domain_full_width, double kernel_width) {
    return std::abs(domain_full_width - kernel_width) <=
           1e-9 * std::max(1.0, kernel_width);
}

bool is_indicator_kernel(const Kernel& kernel) {
    if (const auto* pair = std::get_if<AveragedKernelPair>(&kernel))
        return pair->is_indicator;
    if (const auto* tk = std::get_if<TensorKernel>(&kernel)) {
        for (const AveragedKernelPair& f : tk->factors)
            if (!f.is_indicator) return false;
        return true;
    }
    return false;
}

// Per-domain mean-weighted Gauss-Legendre nodes (tensorized over boxes).
struct DomainRule {
    std::vector<std::vector<double>> nodes;
    std::vector<double> weights; // sum to 1
};

DomainRule domain_rule(const Domain& dom, int nodes_per_axis) {
    if (dom.kind == DomainKind::Ball)
        throw UnsupportedConstructionError(
            "quadrature assembly over ball domains is not supported");
    const GaussRule& gl = gauss_legendre(nodes_per_axis);
    const int d = dom.dim();
    DomainRule rule;
    std::vector<int> idx(d, 0);
    for (;;) {
        std::vector<double> x(d);
        double w = 1.0;
        for (int i = 0; i < d; ++i) {
            double h = dom.extent[dom.kind == DomainKind::Segment ? 0 : i];
            x[i] = dom.center[i] + h * gl.nodes[idx[i]];
            w *= 0.5 * gl.weights[idx[i]]; // mean weight per axis
        }
        rule.nodes.push_back(std::move(x));
        rule.weights.push_back(w);
        int axis = 0;
        while (axis < d && ++idx[axis] == nodes_per_axis) idx[axis++] = 0;
        if (axis == d) break;
    }
    return rule;
}

double quad_mean_entry(const PointPairFn& phi, const DomainRule& r1,
                       const DomainRule& r2) {
    double sum = 0.0;
    for (size_t k = 0; k < r1.nodes.size(); ++k) {
        double inner = 0.0;
        for (size_t l = 0; l < r2.nodes.size(); ++l)
            inner += r2.weights[l] * phi(r1.nodes[k], r2.nodes[l]);
        sum += r1.weights[k] * inner;
    }
    return sum;
}

} // namespace

int kernel_dim(const Kernel& kernel) {
    if (std::holds_alternative<AveragedKernelPair>(kernel)) return 1;
    if (const auto* tk = std::get_if<TensorKernel>(&kernel)) return tk->dim();
    return std::get<BallAveragedKernel>(kernel).dim();
}

bool kernel_matches(const Kernel& kernel, const Domain& domain) {
    if (const auto* pair = std::get_if<AveragedKernelPair>(&kernel))
        return domain.kind == DomainKind::Segment && domain.dim() == 1 &&
               width_matches(2.0 * domain.extent[0], pair->width);
    if (const auto* tk = std::get_if<TensorKernel>(&kernel)) {
        if (domain.kind != DomainKind::Box || domain.dim() != tk->dim()) return false;
        for (int i = 0; i < tk->dim(); ++i)
            if (!width_matches(2.0 * domain.extent[i], tk->factors[i].width)) return false;
        return true;
    }
    const auto& ball = std::get<BallAveragedKernel>(kernel);
    return domain.kind == DomainKind::Ball && domain.dim() == ball.dim() &&
           width_matches(domain.extent[0], ball.radius());
}

PointPairFn base_kernel_fn(const Kernel& kernel) {
    if (const auto* pair = std::get_if<AveragedKernelPair>(&kernel)) {
        if (!pair->base)
            throw UnsupportedConstructionError("kernel '" + pair->name +
                                               "' has no generating profile");
        RealFn phi = pair->base->eval;
        return [phi](std::span<const double> x, std::span<const double> y) {
            return phi(x[0] - y[0]);
        };
    }
    if (const auto* tk = std::get_if<TensorKernel>(&kernel)) {
        std::vector<RealFn> phis;
        for (const AveragedKernelPair& f : tk->factors) {
            if (!f.base)
                throw UnsupportedConstructionError("tensor factor '" + f.name +
                                                   "' has no generating profile");
            phis.push_back(f.base->eval);
        }
        return [phis](std::span<const double> x, std::span<const double> y) {
            double prod = 1.0;
            for (size_t i = 0; i < phis.size(); ++i) prod *= phis[i](x[i] - y[i]);
            return prod;
        };
    }
    const auto& ball = std::get<BallAveragedKernel>(kernel);
    RealFn phi = ball.profile().eval;
    return [phi](std::span<const double> x, std::span<const double> y) {
        return phi(euclid(x, y));
    };
}

HistoMatrix::HistoMatrix(Eigen::MatrixXd entries, Assembly route)
    : k_(std::move(entries)), assembly_(route) {
    if (k_.rows() != k_.cols()) throw ValidationError("HistoMatrix: matrix must be square");
    double scale = std::max(1e-300, k_.cwiseAbs().maxCoeff());
    double asym = (k_ - k_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw ValidationError("HistoMatrix: matrix is not symmetric");
}

bool HistoMatrix::attempt_factorization() {
    Eigen::MatrixXd m = k_;
    if (jitter_ > 0.0) m.diagonal().array() += jitter_;
    llt_.emplace(m);
    if (llt_->info() != Eigen::Success) {
        llt_.reset();
        return false;
    }
    Eigen::VectorXd diag = llt_->matrixLLT().diagonal();
    double lo = diag.minCoeff();
    double hi = diag.maxCoeff();
    if (!(lo > 0.0) || !(hi > 0.0) || (lo / hi) * (lo / hi) <= kPivotRatioFloor) {
        llt_.reset();
        return false;
    }
    return true;
}

void HistoMatrix::factorize() {
    if (llt_) return;
    if (size() == 0) throw ValidationError("HistoMatrix: cannot factorize empty matrix");
    if (!attempt_factorization()) {
        jitter_ = 1e-12 * k_.trace() / size();
        if (!attempt_factorization())
            throw NotPositiveDefiniteError(
                "histopolation matrix is not positive definite "
                "(dependent averaging functionals?)");
    }
}

Eigen::VectorXd HistoMatrix::apply_inverse(const Eigen::VectorXd& rhs) const {
    if (!llt_) throw ValidationError("HistoMatrix: factorize() first");
    return llt_->solve(rhs);
}

Eigen::MatrixXd HistoMatrix::apply_inverse_matrix(const Eigen::MatrixXd& rhs) const {
    if (!llt_) throw ValidationError("HistoMatrix: factorize() first");
    return llt_->solve(rhs);
}

Eigen::VectorXd HistoMatrix::solve(const Eigen::VectorXd& rhs) {
    if (rhs.size() != size()) throw ValidationError("solve: data length mismatch");
    factorize();
    Eigen::VectorXd x = apply_inverse(rhs);
    const double target = kResidualFactor * (1.0 + norm_inf(rhs));
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 4; ++it) {
        Eigen::VectorXd r = rhs - k_ * x;
        double rn = norm_inf(r);
        if (rn <= target || rn >= best) break;
        best = rn;
        x += apply_inverse(r);
    }
    return x;
}

double HistoMatrix::cond_estimate() const {
    if (!llt_) throw ValidationError("HistoMatrix: factorize() first");
    Eigen::VectorXd diag = llt_->matrixLLT().diagonal();
    double ratio = diag.maxCoeff() / diag.minCoeff();
    return ratio * ratio;
}

void QuadratureRule::validate(int expected_domains) const {
    if ((int)weights.size() != expected_domains)
        throw ValidationError("quadrature rule does not cover all domains");
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].empty())
            throw ValidationError("quadrature rule: empty weight vector for domain " +
                                  std::to_string(i + 1));
        double sum = 0.0;
        for (const auto& [idx, w] : weights[i]) {
            if (idx < 0 || idx >= (int)nodes.size())
                throw ValidationError("quadrature rule: node index out of range");
            if (w < 0.0) throw ValidationError("quadrature rule: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw ValidationError("quadrature rule: weights of domain " +
                                  std::to_string(i + 1) + " do not sum to 1");
    }
}

QuadratureRule tensor_gauss_rule(const HistoProblem& problem, int nodes_per_axis) {
    if (nodes_per_axis < 1)
        throw ValidationError("tensor_gauss_rule: need at least one node per axis");
    QuadratureRule rule;
    for (const AverageSample& s : problem.samples) {
        DomainRule dr = domain_rule(s.domain, nodes_per_axis);
        std::vector<std::pair<int, double>> w;
        double sum = 0.0;
        for (double wi : dr.weights) sum += wi;
        for (size_t k = 0; k < dr.nodes.size(); ++k) {
            rule.nodes.push_back(std::move(dr.nodes[k]));
            w.emplace_back((int)rule.nodes.size() - 1, dr.weights[k] / sum);
        }
        rule.weights.push_back(std::move(w));
    }
    return rule;
}

double repro_entry(const Kernel& kernel, const Domain& d1, const Domain& d2,
                   int quad_nodes) {
    if (d1.dim() != d2.dim() || d1.dim() != kernel_dim(kernel))
        throw ValidationError("repro_entry: dimension mismatch");
    if (kernel_matches(kernel, d1) && kernel_matches(kernel, d2)) {
        if (const auto* pair = std::get_if<AveragedKernelPair>(&kernel))
            return pair->kappa(d1.center[0] - d2.center[0]);
        if (const auto* tk = std::get_if<TensorKernel>(&kernel)) {
            double prod = 1.0;
            for (int i = 0; i < tk->dim(); ++i)
                prod *= tk->factors[i].kappa(d1.center[i] - d2.center[i]);
            return prod;
        }
        const auto& ball = std::get<BallAveragedKernel>(kernel);
        return ball.kappa(euclid(d1.center, d2.center));
    }
    if (is_indicator_kernel(kernel))
        return overlap_measure(d1, d2) / (d1.measure() * d2.measure());
    PointPairFn phi = base_kernel_fn(kernel);
    return quad_mean_entry(phi, domain_rule(d1, quad_nodes), domain_rule(d2, quad_nodes));
}

double averaging_value(const Kernel& kernel, std::span<const double> x,
                       const Domain& tau, int quad_nodes) {
    if ((int)x.size() != tau.dim() || tau.dim() != kernel_dim(kernel))
        throw ValidationError("averaging_value: dimension mismatch");
    if (kernel_matches(kernel, tau)) {
        if (const auto* pair = std::get_if<AveragedKernelPair>(&kernel))
            return pair->alpha(x[0] - tau.center[0]);
        if (const auto* tk = std::get_if<TensorKernel>(&kernel)) {
            double prod = 1.0;
            for (int i = 0; i < tk->dim(); ++i)
                prod *= tk->factors[i].alpha(x[i] - tau.center[i]);
            return prod;
        }
        const auto& ball = std::get<BallAveragedKernel>(kernel);
        return ball.alpha(euclid(x, tau.center));
    }
    if (is_indicator_kernel(kernel))
        return tau.contains(x) ? 1.0 / tau.measure() : 0.0;
    // Mean of the generating kernel over the domain.
    PointPairFn phi = base_kernel_fn(kernel);
    DomainRule rule = domain_rule(tau, quad_nodes);
    double sum = 0.0;
    for (size_t k = 0; k < rule.nodes.size(); ++k)
        sum += rule.weights[k] * phi(x, rule.nodes[k]);
    return sum;
}

HistoMatrix assemble(const HistoProblem& problem, const Kernel& kernel,
                     int quad_nodes) {
    const int n = problem.size();
    if (n == 0) throw ValidationError("assemble: empty problem");
    if (n > kMaxDense)
        throw ValidationError(
            "assemble: dense problems are limited to n <= 4096; use the "
            "grid/Kronecker path for larger tensor grids");
    if (problem.dim() != kernel_dim(kernel))
        throw ValidationError("assemble: kernel/problem dimension mismatch");

    bool all_match = true;
    for (const AverageSample& s : problem.samples)
        if (!kernel_matches(kernel, s.domain)) {
            all_match = false;
            break;
        }

    Assembly route;
    if (all_match)
        route = Assembly::ClosedForm;
    else if (is_indicator_kernel(kernel))
        route = Assembly::Overlap;
    else
        route = Assembly::Quadrature;

    if (route == Assembly::Quadrature) {
        HistoMatrix m =
            assemble_quadrature(problem, base_kernel_fn(kernel),
                                tensor_gauss_rule(problem, quad_nodes));
        return m;
    }

    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = route == Assembly::Overlap
                           ? overlap_measure(problem.samples[i].domain,
                                             problem.samples[j].domain) /
                                 (problem.samples[i].domain.measure() *
                                  problem.samples[j].domain.measure())
                           : repro_entry(kernel, problem.samples[i].domain,
                                         problem.samples[j].domain, quad_nodes);
            k(i, j) = v;
            k(j, i) = v;
        }
    return HistoMatrix(std::move(k), route);
}

HistoMatrix assemble_quadrature(const HistoProblem& problem, const PointPairFn& phi,
                                const QuadratureRule& rule) {
    const int n = problem.size();
    if (n == 0) throw ValidationError("assemble_quadrature: empty problem");
    rule.validate(n);
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double sum = 0.0;
            for (const auto& [ki, wi] : rule.weights[i])
                for (const auto& [kj, wj] : rule.weights[j])
                    sum += wi * wj * phi(rule.nodes[ki], rule.nodes[kj]);
            k(i, j) = sum;
            k(j, i) = sum;
        }
    return HistoMatrix(std::move(k), Assembly::Quadrature);
}

Eigen::VectorXd solve(HistoMatrix& matrix, const Eigen::VectorXd& data) {
    return matrix.solve(data);
}

Histopolant::Histopolant(HistoProblem problem, Kernel kernel,
                         Eigen::VectorXd coefficients, int quad_nodes)
    : problem_(std::move(problem)), kernel_(std::move(kernel)),
      coeff_(std::move(coefficients)), quad_nodes_(quad_nodes) {
    if (coeff_.size() != problem_.size())
        throw ValidationError("Histopolant: coefficient count mismatch");
    if (!coeff_.allFinite()) throw ValidationError("Histopolant: non-finite coefficients");
    uniform_matched_ = true;
    for (const AverageSample& s : problem_.samples)
        if (!kernel_matches(kernel_, s.domain)) {
            uniform_matched_ = false;
            break;
        }
}

double Histopolant::evaluate(std::span<const double> x) const {
    if ((int)x.size() != problem_.dim())
        throw ValidationError("evaluate: dimension mismatch");
    double sum = 0.0;
    for (int j = 0; j < problem_.size(); ++j)
        sum += coeff_[j] *
               averaging_value(kernel_, x, problem_.samples[j].domain, quad_nodes_);
    return sum;
}

double Histopolant::evaluate(double x) const {
    return evaluate(std::span<const double>(&x, 1));
}

double Histopolant::evaluate_mean(const Domain& domain) const {
    if (domain.dim() != problem_.dim())
        throw ValidationError("evaluate_mean: dimension mismatch");
    // Translate of the common averaging domain: exact kappa expansion.
    if (uniform_matched_ && kernel_matches(kernel_, domain)) {
        double sum = 0.0;
        for (int j = 0; j < problem_.size(); ++j)
            sum += coeff_[j] * repro_entry(kernel_, domain, problem_.samples[j].domain);
        return sum;
    }
    // Segments/boxes against a uniformly matched expansion: per-axis means
    // of alpha (exact when the anti-derivative is closed-form).
    if (uniform_matched_ && domain.kind != DomainKind::Ball) {
        if (const auto* pair = std::get_if<AveragedKernelPair>(&kernel_)) {
            double sum = 0.0;
            for (int j = 0; j < problem_.size(); ++j)
                sum += coeff_[j] *
                       pair->mean_alpha(domain.center[0] -
                                            problem_.samples[j].domain.center[0],
                                        2.0 * domain.extent[0]);
            return sum;
        }
        if (const auto* tk = std::get_if<TensorKernel>(&kernel_)) {
            if (domain.kind == DomainKind::Box && domain.dim() == tk->dim()) {
                double sum = 0.0;
                for (int j = 0; j < problem_.size(); ++j) {
                    double prod = 1.0;
                    for (int i = 0; i < tk->dim(); ++i)
                        prod *= tk->factors[i].mean_alpha(
                            domain.center[i] - problem_.samples[j].domain.center[i],
                            2.0 * domain.extent[i]);
                    sum += coeff_[j] * prod;
                }
                return sum;
            }
        }
    }
    if (is_indicator_kernel(kernel_)) {
        // Exact for arbitrary domains: the averaging kernel is the
        // normalized indicator of each data domain.
        double sum = 0.0;
        for (int j = 0; j < problem_.size(); ++j) {
            const Domain& dj = problem_.samples[j].domain;
            sum += coeff_[j] * overlap_measure(domain, dj) /
                   (domain.measure() * dj.measure());
        }
        return sum;
    }
    // General fallback: numeric averaging of the pointwise evaluation.
    return average_of(
        [this](std::span<const double> x) { return evaluate(x); }, domain, 1e-9);
}

Histopolant histopolate(const HistoProblem& problem, Kernel kernel,
                        HistoMatrix* matrix_out, int quad_nodes) {
    HistoMatrix matrix = assemble(problem, kernel, quad_nodes);
    std::vector<double> vals = problem.values();
    Eigen::VectorXd lambda =
        Eigen::Map<const Eigen::VectorXd>(vals.data(), (Eigen::Index)vals.size());
    Eigen::VectorXd c = matrix.solve(lambda);
    if (matrix_out) *matrix_out = matrix;
    return Histopolant(problem, std::move(kernel), std::move(c), quad_nodes);
}

Eigen::VectorXd lagrange_values(const HistoMatrix& matrix, const Eigen::VectorXd& kvec) {
    if (!matrix.factorized()) throw ValidationError("lagrange_values: factorize() first");
    if (kvec.size() != matrix.size())
        throw ValidationError("lagrange_values: size mismatch");
    return matrix.apply_inverse(kvec);
}

double power_function(const HistoMatrix& matrix, const Kernel& kernel,
                      const HistoProblem& problem, const Domain& tau, int quad_nodes) {
    double ktt = repro_entry(kernel, tau, tau, quad_nodes);
    if (matrix.size() == 0) return std::sqrt(std::max(0.0, ktt));
    if (!matrix.factorized()) throw ValidationError("power_function: factorize() first");
    if (matrix.size() != problem.size())
        throw ValidationError("power_function: matrix/problem size mismatch");
    Eigen::VectorXd kvec(problem.size());
    for (int i = 0; i < problem.size(); ++i)
        kvec[i] = repro_entry(kernel, tau, problem.samples[i].domain, quad_nodes);
    Eigen::VectorXd u = matrix.apply_inverse(kvec);
    double p2 = ktt - kvec.dot(u);
    return std::sqrt(std::max(0.0, p2)); // roundoff clamp
}

Eigen::MatrixXd kronecker_solve(HistoMatrix& row_matrix, HistoMatrix& col_matrix,
                                const Eigen::MatrixXd& data) {
    if (data.rows() != col_matrix.size() || data.cols() != row_matrix.size())
        throw ValidationError("kronecker_solve: data dims must be n_col-matrix x n_row-matrix");
    row_matrix.factorize();
    col_matrix.factorize();
    Eigen::MatrixXd c =
        row_matrix.apply_inverse_matrix(col_matrix.apply_inverse_matrix(data).transpose())
            .transpose();
    // One step of refinement on the full Kronecker residual.
    Eigen::MatrixXd r =
        data - col_matrix.entries() * c * row_matrix.entries();
    c += row_matrix.apply_inverse_matrix(col_matrix.apply_inverse_matrix(r).transpose())
             .transpose();
    return c;
}

} // namespace akhs
