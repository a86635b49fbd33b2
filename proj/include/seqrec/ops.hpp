#pragma once

#include <functional>
#include <span>
#include <vector>

#include "seqrec/matrix.hpp"

namespace seqrec {

// --- forward ops -----------------------------------------------------------

// C = A * B with a fixed i-k-j accumulation order; bit-reproducible across
// runs of the same binary. Throws NumericError on shape mismatch, naming both
// shapes.
Matrix matmul(const Matrix& a, const Matrix& b);

// y_i = x_i * gain_i / sqrt(mean(x^2) + eps); eps = 1e-6.
inline constexpr double kRmsNormEps = 1e-6;
std::vector<double> rmsnorm(std::span<const double> x, std::span<const double> gain);

// Row-wise rmsnorm over a matrix; gain has x.cols() entries.
Matrix rmsnorm_rows(const Matrix& x, std::span<const double> gain);

double silu(double x);
Matrix silu(const Matrix& x);

// Numerically stable (max-subtracted) softmax of one row.
std::vector<double> softmax_row(std::span<const double> x);

// --- adjoints ---------------------------------------------------------------

// dA, dB for C = A*B given upstream dC. Accumulates into the outputs.
void matmul_backward(const Matrix& a, const Matrix& b, const Matrix& upstream, Matrix* da,
                     Matrix* db);

// dx and dgain for one rmsnorm row.
void rmsnorm_backward(std::span<const double> x, std::span<const double> gain,
                      std::span<const double> upstream, std::span<double> dx,
                      std::span<double> dgain);

// Row-wise variant; dgain accumulates across rows.
void rmsnorm_rows_backward(const Matrix& x, std::span<const double> gain, const Matrix& upstream,
                           Matrix* dx, std::span<double> dgain);

double silu_grad(double x);
// dx = upstream .* silu'(x); accumulates into dx.
void silu_backward(const Matrix& x, const Matrix& upstream, Matrix* dx);

// --- gradient contract -------------------------------------------------------

// A differentiable scalar-valued objective over a flat parameter vector,
// bundled with its analytic gradient. grad_check drives both against central
// finite differences.
struct GradPair {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;
};

// Returns max over parameters of |analytic - central| / max(1, |central|).
// step defaults to 1e-5. Throws NumericError naming the parameter index if
// the analytic gradient is non-finite.
double grad_check(const GradPair& op, std::span<const double> point, double step = 1e-5);

}  // namespace seqrec
