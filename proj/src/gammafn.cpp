#include "bicoef/gammafn.hpp"

#include "bicoef/error.hpp"

#include <cmath>

namespace bicoef {

namespace {
constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

double lanczos_sum(double x) {
    double a = kCoef[0];
    for (int k = 1; k < 9; ++k) a += kCoef[k] / (x - 1.0 + k);
    return a;
}
} // namespace

double gamma_real(double x) {
    if (!(x > 0.0)) fail(ErrorCode::NonPositiveArgument, "gamma_real requires x > 0");
    double t = x + kG - 0.5;
    return kSqrt2Pi * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_sum(x);
}

double gamma_ln(double x) {
    if (!(x > 0.0)) fail(ErrorCode::NonPositiveArgument, "gamma_ln requires x > 0");
    double t = x + kG - 0.5;
    return std::log(kSqrt2Pi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

} // namespace bicoef
