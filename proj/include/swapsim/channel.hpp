// channel.hpp: optical arm labels
#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace swapsim {

// One label per optical arm of the scheme: the four biphoton arms, the
// pump input, and the merged output of the third crystal.
enum class ChannelId { Ch1, Ch2, Ch3, Ch4, In, Out };

inline constexpr std::array<ChannelId, 6> kAllChannels = {
    ChannelId::Ch1, ChannelId::Ch2, ChannelId::Ch3,
    ChannelId::Ch4, ChannelId::In,  ChannelId::Out};

constexpr std::string_view to_string(ChannelId id) noexcept {
    switch (id) {
        case ChannelId::Ch1: return "ch1";
        case ChannelId::Ch2: return "ch2";
        case ChannelId::Ch3: return "ch3";
        case ChannelId::Ch4: return "ch4";
        case ChannelId::In:  return "in";
        case ChannelId::Out: return "out";
    }
    return "?";
}

inline std::optional<ChannelId> channel_from_string(std::string_view name) noexcept {
    for (ChannelId id : kAllChannels) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

}  // namespace swapsim
