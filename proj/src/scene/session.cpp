#include "plotforge/scene/session.hpp"

#include "plotforge/error.hpp"

namespace plotforge::scene {

SceneSession::SceneSession(Scene initial)
    : working_(std::move(initial)), published_(std::make_shared<const Scene>(working_))
{
}

std::optional<Publication> SceneSession::apply(const PropertyPath& path, const Json& value)
{
    Applied a = apply_change(working_, path, value);
    return commit(std::move(a.scene), std::move(a.change));
}

std::optional<Publication> SceneSession::apply_all(const std::vector<std::pair<PropertyPath, Json>>& writes)
{
    Applied a = apply_changes(working_, writes);
    return commit(std::move(a.scene), std::move(a.change));
}

std::optional<Publication> SceneSession::replace(Scene scene, ChangeRecord change)
{
    return commit(std::move(scene), std::move(change));
}

std::optional<Publication> SceneSession::end_batch()
{
    if (depth_ == 0) {
        throw Error(ErrorCode::EndWithoutBegin, "", "end_batch without matching begin_batch");
    }
    --depth_;
    if (depth_ > 0 || !dirty_) {
        return std::nullopt;
    }
    return publish();
}

std::optional<Publication> SceneSession::commit(Scene scene, ChangeRecord change)
{
    working_ = std::move(scene);
    pending_.merge(change);
    dirty_ = true;
    if (depth_ > 0) {
        return std::nullopt;
    }
    return publish();
}

std::optional<Publication> SceneSession::publish()
{
    published_ = std::make_shared<const Scene>(working_);
    Publication p{published_, std::move(pending_)};
    pending_ = {};
    dirty_ = false;
    ++publish_count_;
    return p;
}

}  // namespace plotforge::scene
