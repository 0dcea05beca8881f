#pragma once

#include "bicoef/error.hpp"
#include "bicoef/field.hpp"

#include <cmath>
#include <vector>

namespace bicoef {

// Adaptive Gauss(7)-Kronrod(15) quadrature over a real interval for a
// complex-valued integrand.  The per-interval error estimate is the
// difference of the two rules; intervals are bisected until the summed
// estimate meets the absolute tolerance.
namespace gk {

// abscissae / weights of the 15-point Kronrod rule with embedded 7-point Gauss
inline constexpr double kNode[8] = {
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
inline constexpr double kWK[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
inline constexpr double kWG[8] = {
    0.417959183673469387755102040816327,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.129484966168869693270611432679082,
    0.0,
};

} // namespace gk

template <class C>
struct QuadResult {
    C value{};
    double err = 0.0;
    int intervals = 0;
};

template <class C, class F>
QuadResult<C> integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                 int max_intervals = 2048) {
    struct Seg { double a, b; };
    std::vector<Seg> stack{{a, b}};
    QuadResult<C> out;
    double span = std::fabs(b - a);

    while (!stack.empty()) {
        Seg seg = stack.back();
        stack.pop_back();
        double mid = 0.5 * (seg.a + seg.b);
        double h = 0.5 * (seg.b - seg.a);

        C y0 = f(mid);
        C k15 = FieldInfo<C>::from_double(gk::kWK[0]) * y0;
        C g7 = FieldInfo<C>::from_double(gk::kWG[0]) * y0;
        for (int i = 1; i < 8; ++i) {
            C yi = f(mid + h * gk::kNode[i]) + f(mid - h * gk::kNode[i]);
            k15 = k15 + FieldInfo<C>::from_double(gk::kWK[i]) * yi;
            if (gk::kWG[i] != 0.0) g7 = g7 + FieldInfo<C>::from_double(gk::kWG[i]) * yi;
        }
        k15 = FieldInfo<C>::from_double(h) * k15;
        g7 = FieldInfo<C>::from_double(h) * g7;

        double err = mag(k15 - g7);
        if (err <= abs_tol * std::fabs(seg.b - seg.a) / span || std::fabs(seg.b - seg.a) < 1e-14 * span) {
            out.value = out.value + k15;
            out.err += err;
            ++out.intervals;
            continue;
        }
        if (out.intervals + static_cast<int>(stack.size()) + 2 > max_intervals)
            fail(ErrorCode::NoConvergence, "adaptive quadrature exceeded interval budget");
        stack.push_back({seg.a, mid});
        stack.push_back({mid, seg.b});
    }
    return out;
}

} // namespace bicoef
