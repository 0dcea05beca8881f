#pragma once

namespace bicoef {

// Gamma(x) for x > 0 via the Lanczos approximation (g = 7, 9 terms),
// relative error below 1e-12 on the positive axis.
double gamma_real(double x);

// log Gamma(x) for x > 0, same approximation; used where Gamma itself
// would overflow.
double gamma_ln(double x);

} // namespace bicoef
