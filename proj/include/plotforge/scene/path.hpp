#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plotforge::scene {

/// Dotted property address into the canonical scene form, e.g.
/// `plots[0].axes[1].tick_config.major.target_count`. Subplots are reached
/// through `children[k]`.
class PropertyPath {
public:
    using Segment = std::variant<std::string, std::size_t>;

    PropertyPath() = default;
    explicit PropertyPath(std::vector<Segment> segments) : segments_(std::move(segments)) {}

    /// Throws Error(BAD_PATH) on malformed text.
    static PropertyPath parse(std::string_view text);

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    bool empty() const noexcept { return segments_.empty(); }
    std::size_t size() const noexcept { return segments_.size(); }

    PropertyPath child(std::string key) const;
    PropertyPath child(std::size_t index) const;
    PropertyPath prefix(std::size_t n) const;

    std::string str() const;

    friend bool operator==(const PropertyPath&, const PropertyPath&) = default;

private:
    std::vector<Segment> segments_;
};

}  // namespace plotforge::scene
