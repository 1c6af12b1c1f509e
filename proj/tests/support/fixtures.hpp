#pragma once

#include <string>

#include "plotforge/error.hpp"
#include "plotforge/scene/build.hpp"

namespace fixtures {

using plotforge::scene::Json;
using plotforge::scene::Scene;

/// One node "main", linear x [0,100] / y [0,10], four axes, one XY layer.
Json minimal_doc();

/// Root with two children side by side ("left", "right").
Json two_children_doc(double left_weight = 1.0, double right_weight = 1.0);

Scene build(const Json& doc);
Scene minimal_scene();

/// Runs fn, expecting an Error; returns it (fails the test otherwise).
template <typename Fn>
plotforge::ErrorInfo capture_error(Fn&& fn)
{
    try {
        fn();
    } catch (const plotforge::Error& e) {
        return e.info();
    }
    return plotforge::ErrorInfo{plotforge::ErrorCode::SchemaError, "<no error>", "<no error>"};
}

}  // namespace fixtures
