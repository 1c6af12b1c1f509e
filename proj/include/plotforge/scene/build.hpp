#pragma once

#include "plotforge/scene/serialize.hpp"
#include "plotforge/scene/types.hpp"

namespace plotforge::scene {

/// Fills omitted annotation transform refs and normalizes rectangle
/// corners. Idempotent.
void fill_defaults(PlotNode& node);

/// Checks every scene invariant; throws Error naming the offending
/// property path on the first violation.
void validate(const Scene& scene);

/// Parses, defaults and validates a scene document whose data arrays are
/// already inline (see spec::load_spec for CSV resolution).
Scene build_scene(const Json& doc);

}  // namespace plotforge::scene
