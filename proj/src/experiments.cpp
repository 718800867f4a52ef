#include "akhs/experiments.hpp"

#include "akhs/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace akhs {

NamedFunction1D function_by_name(const std::string& name) {
    if (name == "runge") {
        // Shifted Runge function; the interval mean has an arctan closed form.
        return NamedFunction1D{
            name,
            [](double x) { return 1.0 / (1.0 + (x - 0.4) * (x - 0.4)); },
            [](double lo, double hi) {
                return (std::atan(hi - 0.4) - std::atan(lo - 0.4)) / (hi - lo);
            }};
    }
    if (name == "const")
        return NamedFunction1D{name, [](double) { return 1.0; },
                               [](double, double) { return 1.0; }};
    if (name == "linear")
        return NamedFunction1D{name, [](double x) { return x; },
                               [](double lo, double hi) { return 0.5 * (lo + hi); }};
    if (name == "step")
        return NamedFunction1D{name, [](double x) { return x < 0.0 ? 0.0 : 1.0; },
                               [](double lo, double hi) {
                                   if (hi <= 0.0) return 0.0;
                                   if (lo >= 0.0) return 1.0;
                                   return hi / (hi - lo);
                               }};
    throw ValidationError("unknown test function: " + name);
}

std::vector<ConvergenceRow> converge(const std::string& kernel_name, double shape,
                                     const std::string& function_name,
                                     std::span<const int> ns, WidthPolicy policy,
                                     double fixed_a) {
    NamedFunction1D fn = function_by_name(function_name);
    if (policy == WidthPolicy::Fixed && !(fixed_a > 0.0))
        throw ValidationError("converge: fixed interval length must be positive");
    pair_by_name(kernel_name, shape, 1.0); // validate the catalog name upfront
    std::vector<ConvergenceRow> rows;
    for (int n : ns) {
        if (n < 2) throw ValidationError("converge: need n >= 2 segments");
        ConvergenceRow row;
        row.n = n;
        row.a = policy == WidthPolicy::Fixed ? fixed_a : 2.0 / (n - 1);
        HistoProblem problem;
        for (int i = 1; i <= n; ++i) {
            double y = -1.0 + 2.0 * (i - 1) / (n - 1);
            problem.samples.push_back(
                {Domain::segment(y, 0.5 * row.a), fn.mean(y - 0.5 * row.a, y + 0.5 * row.a)});
        }
        try {
            HistoMatrix matrix;
            Histopolant h =
                histopolate(problem, pair_by_name(kernel_name, shape, row.a), &matrix);
            row.cond_estimate = matrix.cond_estimate();
            row.jitter = matrix.jitter();
            const int grid_n = 10 * n;
            double sup_err = 0.0;
            for (int k = 0; k < grid_n; ++k) {
                double x = -1.0 + 2.0 * k / (grid_n - 1);
                sup_err = std::max(sup_err, std::abs(fn.f(x) - h.evaluate(x)));
            }
            row.sup_err = sup_err;
            double sup_mean = 0.0;
            const int windows = 1000;
            for (int t = 0; t < windows; ++t) {
                double y = -1.0 + 2.0 * t / (windows - 1);
                double exact = fn.mean(y - 0.5 * row.a, y + 0.5 * row.a);
                double got = h.evaluate_mean(Domain::segment(y, 0.5 * row.a));
                sup_mean = std::max(sup_mean, std::abs(exact - got));
            }
            row.sup_mean_err = sup_mean;
        } catch (const Error& e) {
            row.solver_ok = false;
            row.error = e.what();
            row.sup_err = std::numeric_limits<double>::quiet_NaN();
            row.sup_mean_err = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<KernelTableRow> kernel_table(const AveragedKernelPair& pair,
                                         std::span<const double> grid) {
    double k0 = pair.kappa(0.0);
    if (!(k0 > 0.0)) throw ValidationError("kernel_table: kappa(0) must be positive");
    std::vector<KernelTableRow> rows;
    rows.reserve(grid.size());
    for (double x : grid) {
        KernelTableRow row;
        row.x = x;
        row.alpha = pair.alpha(x);
        row.kappa = pair.kappa(x);
        row.alpha_norm = row.alpha / k0;
        row.kappa_norm = row.kappa / k0;
        rows.push_back(row);
    }
    return rows;
}

LagrangeTable lagrange_table(const std::string& kernel_name, double shape,
                             std::span<const double> centers, double a,
                             std::span<const double> grid) {
    if (centers.empty()) throw ValidationError("lagrange_table: no centers");
    HistoProblem problem;
    for (double c : centers) problem.samples.push_back({Domain::segment(c, 0.5 * a), 0.0});
    Kernel kernel = pair_by_name(kernel_name, shape, a);
    HistoMatrix matrix = assemble(problem, kernel);
    matrix.factorize();

    const int n = (int)centers.size();
    LagrangeTable table;
    table.grid.assign(grid.begin(), grid.end());
    table.values.resize(n);
    table.verification.assign(n, std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[j] = 1.0;
        Eigen::VectorXd u = matrix.solve(e);
        Histopolant lj(problem, kernel, u);
        table.values[j].reserve(grid.size());
        for (double x : grid) table.values[j].push_back(lj.evaluate(x));
        for (int i = 0; i < n; ++i)
            table.verification[i][j] = lj.evaluate_mean(problem.samples[i].domain);
    }
    return table;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw ValidationError("linspace: count must be >= 1");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return g;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_csv_row(std::ostream& out, std::span<const double> row) {
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << fmt(row[i]);
    }
    out << '\n';
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
    out << "n,a,sup_err,sup_mean_err,cond_estimate,jitter,solver_ok\n";
    for (const ConvergenceRow& r : rows) {
        out << r.n << ',' << fmt(r.a) << ',' << fmt(r.sup_err) << ','
            << fmt(r.sup_mean_err) << ',' << fmt(r.cond_estimate) << ','
            << fmt(r.jitter) << ',' << (r.solver_ok ? 1 : 0) << '\n';
    }
}

void write_kernel_table_csv(std::ostream& out, std::span<const KernelTableRow> rows) {
    out << "x,alpha,kappa,alpha_over_kappa0,kappa_over_kappa0\n";
    for (const KernelTableRow& r : rows) {
        double row[5] = {r.x, r.alpha, r.kappa, r.alpha_norm, r.kappa_norm};
        write_csv_row(out, row);
    }
}

void write_lagrange_table_csv(std::ostream& out, const LagrangeTable& table) {
    const int n = (int)table.values.size();
    out << "x";
    for (int j = 1; j <= n; ++j) out << ",l" << j;
    out << '\n';
    for (size_t k = 0; k < table.grid.size(); ++k) {
        out << fmt(table.grid[k]);
        for (int j = 0; j < n; ++j) out << ',' << fmt(table.values[j][k]);
        out << '\n';
    }
    // Verification block: row i holds the means of every l_j over domain i.
    for (int i = 0; i < n; ++i) {
        out << "check:mean:" << (i + 1);
        for (int j = 0; j < n; ++j) out << ',' << fmt(table.verification[i][j]);
        out << '\n';
    }
}

} // namespace akhs
