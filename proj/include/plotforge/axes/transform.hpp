#pragma once

#include "plotforge/scene/types.hpp"

namespace plotforge::axes {

using scene::AxisTransformDef;
using scene::Range;

inline constexpr double kWheelFactor = 1.25;
inline constexpr double kMinRelativeSpan = 1e-12;

/// Data value to normalized t; t = 0 at range.lo unless inverted. Values
/// outside the range map outside [0,1].
/// Throws Error(LOG_NONPOSITIVE_VALUE) for x <= 0 on a log transform.
double forward(const AxisTransformDef& tr, double x);

/// forward() returning NaN instead of throwing; used by the renderer.
double forward_or_nan(const AxisTransformDef& tr, double x) noexcept;

/// Exact inverse of forward; t = 0 and t = 1 return the range ends exactly.
double inverse(const AxisTransformDef& tr, double t) noexcept;

/// Range covering fractions [f0, f1] of the current span, measured from
/// range.lo regardless of inversion. f = [0, 1] is the identity.
/// Throws Error(SPAN_TOO_SMALL) when the result degenerates.
Range zoom_to_fraction(const AxisTransformDef& tr, double f0, double f1);

/// Wheel zoom anchored at fraction a (measured from range.lo):
/// f0 = a - a / F^n, f1 = a + (1 - a) / F^n with F = kWheelFactor.
Range wheel_zoom(const AxisTransformDef& tr, double anchor_fraction, int notches);

}  // namespace plotforge::axes
