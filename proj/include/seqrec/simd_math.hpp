#pragma once

#include <cstddef>
#include <cstdint>

namespace seqrec::fastmath {

// Vector-friendly exp2/log2 with a scalar fallback that performs the same
// operation sequence (fma for fma), so SIMD and scalar lanes agree bit for
// bit. Accuracy versus libm is a few 1e-15 absolute over the kernel's range;
// the unit tests pin it.
//
// exp2 flushes results below 2^-1021 to exact zero instead of producing
// subnormals; subnormal outputs cost microcode assists that dwarf the whole
// kernel. Inputs above 1023 clamp to +inf via the exponent field.

double exp2_scalar(double x);
double log2_scalar(double x);  // x must be positive and normal

// out[i] = alpha * gamma^((in[i])^beta); in[i] >= 0, any in[i] == 0 requires
// beta > 0 (0^beta = 0 is produced via the clamped log2 path).
void exp_power_array(const double* in, double* out, size_t n, double alpha, double beta,
                     double log2_gamma);

// out[i] = in[i]^beta for in[i] > 0.
void pow_array(const double* in, double* out, size_t n, double beta);

bool simd_enabled();  // true when the AVX-512 path is compiled in

}  // namespace seqrec::fastmath
