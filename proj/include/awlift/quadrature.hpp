#pragma once

#include <functional>

#include "awlift/types.hpp"

namespace awlift {

/// Integral of an analytic integrand along the straight segment [a, b],
/// by 15-point Gauss-Legendre with adaptive bisection.
///
/// Panels are accepted when the whole-panel estimate agrees with the sum of
/// its halves within the (absolute) tolerance share of the panel; throws on
/// exceeding the maximum bisection depth.
Cplx integrate_segment(const std::function<Cplx(Cplx)>& f, Cplx a, Cplx b,
                       double abs_tol = 1e-11, int max_depth = 30);

/// Same integral along a polyline a -> m -> b (path-independence checks).
Cplx integrate_polyline(const std::function<Cplx(Cplx)>& f, Cplx a, Cplx m, Cplx b,
                        double abs_tol = 1e-11);

}  // namespace awlift
