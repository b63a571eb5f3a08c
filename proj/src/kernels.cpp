#include "atse/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <limits>

namespace atse::kernels {

namespace scalar {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double sum(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v;
    return acc;
}

double sumsq(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return acc;
}

double max(std::span<const double> a) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : a)
        if (v > m) m = v;
    return m;
}

void scaled_sq_err(std::span<const double> a, double y, double scale,
                   std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - y;
        out[i] = scale * d * d;
    }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sumsq(std::span<const double> a);
double max(std::span<const double> a);
void scaled_sq_err(std::span<const double> a, double y, double scale,
                   std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

namespace {

struct Backend {
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*sum)(std::span<const double>);
    double (*sumsq)(std::span<const double>);
    double (*max)(std::span<const double>);
    void (*scaled_sq_err)(std::span<const double>, double, double, std::span<double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    const char* name;
};

constexpr Backend kScalar{scalar::dot,   scalar::sum,  scalar::sumsq,
                          scalar::max,   scalar::scaled_sq_err,
                          scalar::axpy,  "scalar"};

#if defined(__x86_64__)
constexpr Backend kAvx2{avx2::dot,   avx2::sum,  avx2::sumsq,
                        avx2::max,   avx2::scaled_sq_err,
                        avx2::axpy,  "avx2"};
#endif

const Backend& select_backend() {
    static const Backend& chosen = []() -> const Backend& {
        const char* force = std::getenv("ATSE_KERNELS");
        if (force != nullptr && std::strcmp(force, "scalar") == 0) return kScalar;
#if defined(__x86_64__)
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
            return kAvx2;
#endif
        return kScalar;
    }();
    return chosen;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    return select_backend().dot(a, b);
}
double sum(std::span<const double> a) { return select_backend().sum(a); }
double sumsq(std::span<const double> a) { return select_backend().sumsq(a); }
double max(std::span<const double> a) { return select_backend().max(a); }
void scaled_sq_err(std::span<const double> a, double y, double scale,
                   std::span<double> out) {
    select_backend().scaled_sq_err(a, y, scale, out);
}
void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    select_backend().axpy(alpha, x, y);
}

std::string_view active_backend() { return select_backend().name; }

}  // namespace atse::kernels
