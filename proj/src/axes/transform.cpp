#include "plotforge/axes/transform.hpp"

#include <cmath>
#include <limits>

#include "plotforge/error.hpp"

namespace plotforge::axes {

namespace {

double unflipped_forward(const AxisTransformDef& tr, double x) noexcept
{
    if (tr.kind == scene::AxisKind::Log) {
        const double l0 = std::log10(tr.range.lo);
        const double l1 = std::log10(tr.range.hi);
        return (std::log10(x) - l0) / (l1 - l0);
    }
    return (x - tr.range.lo) / (tr.range.hi - tr.range.lo);
}

double unflipped_inverse(const AxisTransformDef& tr, double u) noexcept
{
    if (u == 0.0) {
        return tr.range.lo;
    }
    if (u == 1.0) {
        return tr.range.hi;
    }
    if (tr.kind == scene::AxisKind::Log) {
        const double l0 = std::log10(tr.range.lo);
        const double l1 = std::log10(tr.range.hi);
        return std::pow(10.0, l0 + u * (l1 - l0));
    }
    return std::lerp(tr.range.lo, tr.range.hi, u);
}

Range checked(double lo, double hi)
{
    const double magnitude = std::max(std::abs(lo), std::abs(hi));
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi - lo >= kMinRelativeSpan * magnitude) || !(lo < hi)) {
        throw Error(ErrorCode::SpanTooSmall, "", "zoomed span would be below 1e-12 of the range magnitude");
    }
    return Range{lo, hi};
}

}  // namespace

double forward(const AxisTransformDef& tr, double x)
{
    if (tr.kind == scene::AxisKind::Log && !(x > 0.0)) {
        throw Error(ErrorCode::LogNonpositiveValue, tr.id, "log transform needs positive values");
    }
    return forward_or_nan(tr, x);
}

double forward_or_nan(const AxisTransformDef& tr, double x) noexcept
{
    if (tr.kind == scene::AxisKind::Log && !(x > 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double u = unflipped_forward(tr, x);
    return tr.inverted ? 1.0 - u : u;
}

double inverse(const AxisTransformDef& tr, double t) noexcept
{
    return unflipped_inverse(tr, tr.inverted ? 1.0 - t : t);
}

Range zoom_to_fraction(const AxisTransformDef& tr, double f0, double f1)
{
    if (!(f0 >= 0.0 && f0 < f1 && f1 <= 1.0)) {
        throw Error(ErrorCode::SpanTooSmall, tr.id, "zoom fractions must satisfy 0 <= f0 < f1 <= 1");
    }
    return checked(unflipped_inverse(tr, f0), unflipped_inverse(tr, f1));
}

Range wheel_zoom(const AxisTransformDef& tr, double anchor_fraction, int notches)
{
    if (notches == 0) {
        return tr.range;
    }
    const double scale = std::pow(kWheelFactor, notches);
    const double a = anchor_fraction;
    const double f0 = a - a / scale;
    const double f1 = a + (1.0 - a) / scale;
    return checked(unflipped_inverse(tr, f0), unflipped_inverse(tr, f1));
}

}  // namespace plotforge::axes
