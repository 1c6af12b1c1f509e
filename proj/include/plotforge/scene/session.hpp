#pragma once

#include <cstdint>
#include <optional>

#include "plotforge/scene/property.hpp"

namespace plotforge::scene {

struct Publication {
    Snapshot snapshot;
    ChangeRecord change;
};

/// Owns the authoritative scene and batch state. Not thread-safe; the
/// engine dispatcher is its only caller.
///
/// Outside a batch every successful change publishes a snapshot. Inside a
/// batch changes accumulate in a working copy and the outermost end_batch
/// publishes once with the union of their ChangeRecords; a batch with no
/// successful change publishes nothing. Failed changes leave state as it was.
class SceneSession {
public:
    explicit SceneSession(Scene initial);

    /// Last published snapshot.
    const Snapshot& published() const noexcept { return published_; }
    /// Scene including unpublished batch changes.
    const Scene& working() const noexcept { return working_; }

    std::optional<Publication> apply(const PropertyPath& path, const Json& value);
    std::optional<Publication> apply_all(const std::vector<std::pair<PropertyPath, Json>>& writes);
    /// Replaces the whole scene (e.g. zoom updates computed elsewhere).
    std::optional<Publication> replace(Scene scene, ChangeRecord change);

    void begin_batch() noexcept { ++depth_; }
    /// Throws Error(END_WITHOUT_BEGIN) when no batch is open.
    std::optional<Publication> end_batch();

    int batch_depth() const noexcept { return depth_; }
    std::uint64_t publish_count() const noexcept { return publish_count_; }

private:
    std::optional<Publication> commit(Scene scene, ChangeRecord change);
    std::optional<Publication> publish();

    Scene working_;
    Snapshot published_;
    ChangeRecord pending_;
    bool dirty_ = false;
    int depth_ = 0;
    std::uint64_t publish_count_ = 0;
};

}  // namespace plotforge::scene
