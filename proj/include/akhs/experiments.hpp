#pragma once

#include "akhs/solver.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace akhs {

// Built-in univariate test function with an exact interval mean.
struct NamedFunction1D {
    std::string name;
    RealFn f;
    std::function<double(double, double)> mean; // mean over [lo, hi]
};

// "runge" (1/(1+(x-0.4)^2)), "const", "linear", "step".
NamedFunction1D function_by_name(const std::string& name);

struct ConvergenceRow {
    int n = 0;
    double a = 0.0;
    double sup_err = 0.0;
    double sup_mean_err = 0.0;
    double cond_estimate = 0.0;
    double jitter = 0.0;
    bool solver_ok = true;
    std::string error;
};

enum class WidthPolicy { Fixed, Shrinking };

// Histopolation of the test function on n equidistant segment centers
// y_i = -1 + 2 (i-1)/(n-1) in [-1,1], with segment length a fixed or
// shrinking as 2/(n-1). Reports the uniform error on a 10n grid and the
// uniform mean error over 1000 sliding windows of length a.
std::vector<ConvergenceRow> converge(const std::string& kernel_name, double shape,
                                     const std::string& function_name,
                                     std::span<const int> ns, WidthPolicy policy,
                                     double fixed_a);

struct KernelTableRow {
    double x = 0.0;
    double alpha = 0.0;
    double kappa = 0.0;
    double alpha_norm = 0.0; // alpha / kappa(0)
    double kappa_norm = 0.0; // kappa / kappa(0)
};

std::vector<KernelTableRow> kernel_table(const AveragedKernelPair& pair,
                                         std::span<const double> grid);

struct LagrangeTable {
    std::vector<double> grid;
    // values[j][k] = l_j(grid[k])
    std::vector<std::vector<double>> values;
    // verification[i][j] = mean of l_j over domain i (should be delta_ij)
    std::vector<std::vector<double>> verification;
};

LagrangeTable lagrange_table(const std::string& kernel_name, double shape,
                             std::span<const double> centers, double a,
                             std::span<const double> grid);

// Uniform evaluation grid helper.
std::vector<double> linspace(double lo, double hi, int count);

// CSV emission, 17 significant digits.
void write_csv_row(std::ostream& out, std::span<const double> row);
void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);
void write_kernel_table_csv(std::ostream& out, std::span<const KernelTableRow> rows);
void write_lagrange_table_csv(std::ostream& out, const LagrangeTable& table);

} // namespace akhs
