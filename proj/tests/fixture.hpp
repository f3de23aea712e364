#pragma once

// Hand-built miniature world shared by the test suites: two continents,
// three countries, four cities, a three-level tag tree, and helpers for
// assembling persons, forums, and message threads with readable timestamps.

#include <string>

#include "snb/graph.hpp"

namespace fx {

using namespace snb;

constexpr Id kVienna = 1, kGraz = 2, kBudapest = 3, kDelhi = 4;
constexpr Id kAustria = 10, kHungary = 11, kIndia = 12;
constexpr Id kEurope = 30, kAsia = 31;
constexpr Id kThing = 0, kMusic = 1, kRock = 2, kSport = 3;  // tag classes
constexpr Id kBeatles = 0, kElvis = 1, kTennis = 2;          // tags
constexpr Id kTuVienna = 0, kBme = 1, kAcme = 2;             // organisations

inline std::int64_t ms(std::int32_t y, std::int32_t mo, std::int32_t d, std::int32_t h = 0,
                       std::int32_t mi = 0) {
    return make_datetime(y, mo, d, h, mi, 0, 0).ms;
}

inline GraphSnapshot world() {
    GraphSnapshot g;
    g.simulationStartMs = ms(2010, 1, 1);
    g.simulationEndMs = ms(2013, 1, 1);

    auto place = [&](Id id, const char* name, PlaceKind kind, Id partOf) {
        g.places.push_back({id, name, std::string("url/") + name, kind, partOf});
    };
    place(kEurope, "Europe", PlaceKind::Continent, kNoId);
    place(kAsia, "Asia", PlaceKind::Continent, kNoId);
    place(kAustria, "Austria", PlaceKind::Country, kEurope);
    place(kHungary, "Hungary", PlaceKind::Country, kEurope);
    place(kIndia, "India", PlaceKind::Country, kAsia);
    place(kVienna, "Vienna", PlaceKind::City, kAustria);
    place(kGraz, "Graz", PlaceKind::City, kAustria);
    place(kBudapest, "Budapest", PlaceKind::City, kHungary);
    place(kDelhi, "Delhi", PlaceKind::City, kIndia);

    auto tagClass = [&](Id id, const char* name, Id parent) {
        g.tagClasses.push_back({id, name, std::string("url/") + name, parent});
    };
    tagClass(kThing, "Thing", kNoId);
    tagClass(kMusic, "Music", kThing);
    tagClass(kRock, "Rock", kMusic);
    tagClass(kSport, "Sport", kThing);

    auto tag = [&](Id id, const char* name, Id cls) {
        g.tags.push_back({id, name, std::string("url/") + name, cls});
    };
    tag(kBeatles, "Beatles", kMusic);
    tag(kElvis, "Elvis", kRock);
    tag(kTennis, "Tennis", kSport);

    g.organisations.push_back({kTuVienna, OrgKind::University, "TU Vienna", "url/tuv", kVienna});
    g.organisations.push_back({kBme, OrgKind::University, "BME", "url/bme", kBudapest});
    g.organisations.push_back({kAcme, OrgKind::Company, "ACME", "url/acme", kAustria});

    g.build_indexes();
    return g;
}

inline Person make_person(Id id, const char* first, const char* last, const char* gender,
                          Date birthday, std::int64_t creationMs, Id cityId) {
    Person p;
    p.id = id;
    p.firstName = first;
    p.lastName = last;
    p.gender = gender;
    p.birthday = birthday;
    p.creationDate = {creationMs};
    p.locationIP = "10.0.0." + std::to_string(id);
    p.browserUsed = "Firefox";
    p.cityId = cityId;
    p.emails = {std::string(first) + std::to_string(id) + "@example.org"};
    p.speaks = {"en"};
    return p;
}

inline Forum make_forum(Id id, const char* title, std::int64_t creationMs, Id moderator) {
    Forum f;
    f.id = id;
    f.title = title;
    f.creationDate = {creationMs};
    f.moderatorPersonId = moderator;
    return f;
}

inline Message make_post(Id id, std::int64_t creationMs, Id creator, Id forumId, Id countryId,
                         const char* content, const char* language = "en") {
    Message m;
    m.id = id;
    m.kind = MessageKind::Post;
    m.creationDate = {creationMs};
    m.locationIP = "10.1.0." + std::to_string(id);
    m.browserUsed = "Chrome";
    m.content = content;
    m.length = static_cast<std::int32_t>(m.content.size());
    m.creatorPersonId = creator;
    m.countryId = countryId;
    m.language = language;
    m.forumId = forumId;
    return m;
}

inline Message make_comment(Id id, std::int64_t creationMs, Id creator, Id parentId,
                            Id countryId, const char* content) {
    Message m;
    m.id = id;
    m.kind = MessageKind::Comment;
    m.creationDate = {creationMs};
    m.locationIP = "10.1.0." + std::to_string(id);
    m.browserUsed = "Chrome";
    m.content = content;
    m.length = static_cast<std::int32_t>(m.content.size());
    m.creatorPersonId = creator;
    m.countryId = countryId;
    m.replyOfMessageId = parentId;
    return m;
}

}  // namespace fx
