#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "snb/engine.hpp"

// Helpers shared by the engine translation units. The oracle deliberately
// does not use these.
namespace snb::detail {

inline const std::string& msg_content(const Message& m) {
    return m.content.empty() ? m.imageFile : m.content;
}

inline std::unordered_set<Id> friend_set(const GraphSnapshot& g, Id personId) {
    std::unordered_set<Id> out;
    for (const auto& [f, since] : g.friends_of(personId)) {
        (void)since;
        out.insert(f);
    }
    return out;
}

/// Friends plus friends-of-friends, excluding the start person.
inline std::unordered_set<Id> fof_set(const GraphSnapshot& g, Id personId) {
    std::unordered_set<Id> out = friend_set(g, personId);
    for (Id f : std::vector<Id>(out.begin(), out.end())) {
        for (const auto& [ff, since] : g.friends_of(f)) {
            (void)since;
            out.insert(ff);
        }
    }
    out.erase(personId);
    return out;
}

inline Id find_tag_by_name(const GraphSnapshot& g, const std::string& name) {
    for (const Tag& t : g.tags) {
        if (t.name == name) return t.id;
    }
    return kNoId;
}

inline Id find_tag_class_by_name(const GraphSnapshot& g, const std::string& name) {
    for (const TagClass& tc : g.tagClasses) {
        if (tc.name == name) return tc.id;
    }
    return kNoId;
}

inline Id find_country_by_name(const GraphSnapshot& g, const std::string& name) {
    for (const Place& p : g.places) {
        if (p.kind == PlaceKind::Country && p.name == name) return p.id;
    }
    return kNoId;
}

inline std::int64_t day_ms(std::int64_t days) { return days * 86'400'000LL; }

}  // namespace snb::detail
