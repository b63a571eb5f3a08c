#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Arithmetic inner loops shared by the aggregation, tree and coordinate
// descent code. Every op has a scalar reference implementation and, on x86-64
// with AVX2+FMA, a vectorized variant; the backend is picked once at runtime.
// SIMD variants are equivalence-tested against the scalar references.
//
// Set ATSE_KERNELS=scalar in the environment to force the reference path.

namespace atse::kernels {

// dot(a, b) = sum a[i]*b[i]; lengths must match (checked by callers).
double dot(std::span<const double> a, std::span<const double> b);

double sum(std::span<const double> a);

double sumsq(std::span<const double> a);

// Maximum element; -inf for an empty span.
double max(std::span<const double> a);

// out[i] = scale * (a[i] - y)^2
void scaled_sq_err(std::span<const double> a, double y, double scale,
                   std::span<double> out);

// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// Name of the active backend ("scalar" or "avx2").
std::string_view active_backend();

// Reference implementations, always available; the dispatched entry points
// above are checked against these.
namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sumsq(std::span<const double> a);
double max(std::span<const double> a);
void scaled_sq_err(std::span<const double> a, double y, double scale,
                   std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace scalar

}  // namespace atse::kernels
