#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "engine_util.hpp"
#include "snb/engine.hpp"

namespace snb {

namespace {

using detail::fof_set;
using detail::friend_set;
using detail::msg_content;

std::int64_t iv(Id x) { return static_cast<std::int64_t>(x); }

ResultTable ic1(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    const std::string& firstName = p.str("firstName");
    g.person(start);

    // distances 1..3 via breadth-first layers
    std::unordered_map<Id, int> dist;
    dist[start] = 0;
    std::deque<Id> queue{start};
    while (!queue.empty()) {
        const Id u = queue.front();
        queue.pop_front();
        if (dist[u] == 3) continue;
        for (const auto& [v, since] : g.friends_of(u)) {
            (void)since;
            if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
        }
    }

    ResultTable t;
    t.columns = {"friendId",        "friendLastName", "distanceFromPerson", "friendBirthday",
                 "friendCreationDate", "friendGender", "friendBrowserUsed", "friendLocationIp",
                 "friendEmails",    "friendLanguages", "friendCityName",    "friendUniversities",
                 "friendCompanies"};
    for (const auto& [id, d] : dist) {
        if (id == start) continue;
        const Person& f = g.person(id);
        if (f.firstName != firstName) continue;
        std::vector<std::string> universities;
        for (const StudyAtEdge& s : g.study_of(id)) {
            const Organisation& uni = g.organisation(s.universityId);
            universities.push_back(uni.name + "," + std::to_string(s.classYear) + "," +
                                   g.place(uni.placeId).name);
        }
        std::sort(universities.begin(), universities.end());
        std::vector<std::string> companies;
        for (const WorkAtEdge& w : g.work_of(id)) {
            const Organisation& co = g.organisation(w.companyId);
            companies.push_back(co.name + "," + std::to_string(w.workFrom) + "," +
                                g.place(co.placeId).name);
        }
        std::sort(companies.begin(), companies.end());
        t.rows.push_back({iv(id), f.lastName, static_cast<std::int64_t>(d),
                          format_date(f.birthday), f.creationDate.ms, f.gender, f.browserUsed,
                          f.locationIP, f.emails, f.speaks, g.place(f.cityId).name, universities,
                          companies});
    }
    sort_rows(t, {{2, false}, {1, false}, {0, false}});
    truncate_rows(t, 20);
    return t;
}

ResultTable message_feed(const GraphSnapshot& g, const std::unordered_set<Id>& authors,
                         std::int64_t maxMs) {
    ResultTable t;
    t.columns = {"personId",       "personFirstName", "personLastName",
                 "messageId",      "messageContent",  "messageCreationDate"};
    for (Id a : authors) {
        const Person& person = g.person(a);
        for (Id mid : g.messages_by_creator(a)) {
            const Message& m = g.message(mid);
            if (m.creationDate.ms >= maxMs) continue;
            t.rows.push_back({iv(a), person.firstName, person.lastName, iv(mid), msg_content(m),
                              m.creationDate.ms});
        }
    }
    sort_rows(t, {{5, true}, {3, false}});
    truncate_rows(t, 20);
    return t;
}

ResultTable ic2(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    return message_feed(g, friend_set(g, start), p.date_ms("maxDate"));
}

ResultTable ic3(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const Id countryX = detail::find_country_by_name(g, p.str("countryXName"));
    const Id countryY = detail::find_country_by_name(g, p.str("countryYName"));
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = lo + detail::day_ms(p.i64("durationDays"));

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName", "xCount", "yCount", "count"};
    for (Id id : fof_set(g, start)) {
        const Id home = g.country_of_person(id);
        if (home == countryX || home == countryY) continue;
        std::int64_t x = 0;
        std::int64_t y = 0;
        for (Id mid : g.messages_by_creator(id)) {
            const Message& m = g.message(mid);
            if (m.creationDate.ms < lo || m.creationDate.ms >= hi) continue;
            if (m.countryId == countryX) ++x;
            if (m.countryId == countryY) ++y;
        }
        if (x == 0 || y == 0) continue;
        const Person& person = g.person(id);
        t.rows.push_back({iv(id), person.firstName, person.lastName, x, y, x + y});
    }
    sort_rows(t, {{3, true}, {0, false}});
    truncate_rows(t, 20);
    return t;
}

ResultTable ic4(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = lo + detail::day_ms(p.i64("durationDays"));

    std::unordered_map<Id, std::int64_t> inWindow;
    std::unordered_set<Id> before;
    for (Id f : friend_set(g, start)) {
        for (Id mid : g.messages_by_creator(f)) {
            const Message& m = g.message(mid);
            if (!m.is_post()) continue;
            if (m.creationDate.ms >= hi) continue;
            for (Id tag : g.tags_of_message(mid)) {
                if (m.creationDate.ms < lo) {
                    before.insert(tag);
                } else {
                    ++inWindow[tag];
                }
            }
        }
    }
    ResultTable t;
    t.columns = {"tagName", "postCount"};
    for (const auto& [tag, count] : inWindow) {
        if (before.count(tag)) continue;
        t.rows.push_back({g.tag(tag).name, count});
    }
    sort_rows(t, {{1, true}, {0, false}});
    truncate_rows(t, 10);
    return t;
}

ResultTable ic5(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const std::int64_t minMs = p.date_ms("minDate");
    const auto candidates = fof_set(g, start);

    // forum -> candidate members who joined it after minDate
    std::unordered_map<Id, std::unordered_set<Id>> joiners;
    for (Id id : candidates) {
        for (const auto& [forumId, joined] : g.forums_of_member(id)) {
            if (joined.ms > minMs) joiners[forumId].insert(id);
        }
    }
    ResultTable t;
    t.columns = {"forumTitle", "postCount"};
    std::vector<SortKey> keys{{1, true}};
    // forum id is the documented tiebreak but not a result column; sort via a
    // hidden third column and drop it afterwards.
    t.columns.push_back("_forumId");
    for (const auto& [forumId, members] : joiners) {
        std::int64_t count = 0;
        for (Id mid : g.posts_in_forum(forumId)) {
            if (members.count(g.message(mid).creatorPersonId)) ++count;
        }
        t.rows.push_back({g.forum(forumId).title, count, iv(forumId)});
    }
    keys.push_back({2, false});
    sort_rows(t, keys);
    truncate_rows(t, 20);
    t.columns.pop_back();
    for (Row& r : t.rows) r.pop_back();
    return t;
}

ResultTable ic6(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const Id tagId = detail::find_tag_by_name(g, p.str("tagName"));
    const auto candidates = fof_set(g, start);

    std::unordered_map<Id, std::int64_t> counts;
    for (Id mid : g.messages_with_tag(tagId)) {
        const Message& m = g.message(mid);
        if (!m.is_post() || !candidates.count(m.creatorPersonId)) continue;
        for (Id other : g.tags_of_message(mid)) {
            if (other != tagId) ++counts[other];
        }
    }
    ResultTable t;
    t.columns = {"tagName", "postCount"};
    for (const auto& [tag, count] : counts) t.rows.push_back({g.tag(tag).name, count});
    sort_rows(t, {{1, true}, {0, false}});
    truncate_rows(t, 10);
    return t;
}

ResultTable ic7(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const auto friends = friend_set(g, start);

    struct Best {
        std::int64_t likeMs = -1;
        Id messageId = kNoId;
    };
    std::unordered_map<Id, Best> best;
    for (Id mid : g.messages_by_creator(start)) {
        for (const auto& [liker, at] : g.likes_of_message(mid)) {
            Best& b = best[liker];
            if (at.ms > b.likeMs || (at.ms == b.likeMs && mid < b.messageId)) {
                b = {at.ms, mid};
            }
        }
    }
    ResultTable t;
    t.columns = {"personId",        "personFirstName",      "personLastName", "likeCreationDate",
                 "commentOrPostId", "commentOrPostContent", "minutesLatency", "isNew"};
    for (const auto& [liker, b] : best) {
        const Person& person = g.person(liker);
        const Message& m = g.message(b.messageId);
        const std::int64_t latency = (b.likeMs - m.creationDate.ms) / 60'000;
        t.rows.push_back({iv(liker), person.firstName, person.lastName, b.likeMs, iv(b.messageId),
                          msg_content(m), latency, friends.count(liker) == 0});
    }
    sort_rows(t, {{3, true}, {0, false}});
    truncate_rows(t, 20);
    return t;
}

ResultTable ic8(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    ResultTable t;
    t.columns = {"personId",  "personFirstName", "personLastName",
                 "commentCreationDate", "commentId", "commentContent"};
    for (Id mid : g.messages_by_creator(start)) {
        for (Id rid : g.replies_of(mid)) {
            const Message& reply = g.message(rid);
            const Person& author = g.person(reply.creatorPersonId);
            t.rows.push_back({iv(reply.creatorPersonId), author.firstName, author.lastName,
                              reply.creationDate.ms, iv(rid), reply.content});
        }
    }
    sort_rows(t, {{3, true}, {4, false}});
    truncate_rows(t, 20);
    return t;
}

ResultTable ic9(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    return message_feed(g, fof_set(g, start), p.date_ms("maxDate"));
}

ResultTable ic10(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const std::int64_t month = p.i64("month");
    const auto friends = friend_set(g, start);
    std::unordered_set<Id> candidates = fof_set(g, start);
    for (Id f : friends) candidates.erase(f);

    std::unordered_set<Id> interests;
    for (Id tag : g.interests_of(start)) interests.insert(tag);

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName",
                 "commonInterestScore", "personGender", "personCityName"};
    for (Id id : candidates) {
        const Person& person = g.person(id);
        const bool hit = (person.birthday.month == month && person.birthday.day >= 21) ||
                         (person.birthday.month == month % 12 + 1 && person.birthday.day < 22);
        if (!hit) continue;
        std::int64_t common = 0;
        std::int64_t uncommon = 0;
        for (Id mid : g.messages_by_creator(id)) {
            const Message& m = g.message(mid);
            if (!m.is_post()) continue;
            bool shared = false;
            for (Id tag : g.tags_of_message(mid)) {
                if (interests.count(tag)) {
                    shared = true;
                    break;
                }
            }
            ++(shared ? common : uncommon);
        }
        t.rows.push_back({iv(id), person.firstName, person.lastName, common - uncommon,
                          person.gender, g.place(person.cityId).name});
    }
    sort_rows(t, {{3, true}, {0, false}});
    truncate_rows(t, 10);
    return t;
}

ResultTable ic11(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const Id country = detail::find_country_by_name(g, p.str("countryName"));
    const std::int64_t year = p.i64("workFromYear");

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName", "organizationName",
                 "organizationWorkFromYear"};
    for (Id id : fof_set(g, start)) {
        for (const WorkAtEdge& w : g.work_of(id)) {
            if (w.workFrom >= year) continue;
            const Organisation& company = g.organisation(w.companyId);
            if (company.placeId != country) continue;
            const Person& person = g.person(id);
            t.rows.push_back({iv(id), person.firstName, person.lastName, company.name,
                              static_cast<std::int64_t>(w.workFrom)});
        }
    }
    sort_rows(t, {{4, false}, {0, false}, {3, true}});
    truncate_rows(t, 10);
    return t;
}

ResultTable ic12(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    const Id tagClass = detail::find_tag_class_by_name(g, p.str("tagClassName"));

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName", "tagNames", "replyCount"};
    for (const auto& [friendId, since] : g.friends_of(start)) {
        (void)since;
        std::int64_t replyCount = 0;
        std::set<std::string> tagNames;
        for (Id mid : g.messages_by_creator(friendId)) {
            const Message& m = g.message(mid);
            if (m.is_post()) continue;
            const Message& parent = g.message(m.replyOfMessageId);
            if (!parent.is_post()) continue;
            bool qualifies = false;
            std::vector<std::string> inClass;
            for (Id tag : g.tags_of_message(parent.id)) {
                if (tagClass != kNoId && g.tag_class_is_a(g.tag_class_of(tag), tagClass)) {
                    qualifies = true;
                    inClass.push_back(g.tag(tag).name);
                }
            }
            if (!qualifies) continue;
            ++replyCount;
            tagNames.insert(inClass.begin(), inClass.end());
        }
        if (replyCount == 0) continue;
        const Person& person = g.person(friendId);
        t.rows.push_back({iv(friendId), person.firstName, person.lastName,
                          std::vector<std::string>(tagNames.begin(), tagNames.end()), replyCount});
    }
    sort_rows(t, {{4, true}, {0, false}});
    truncate_rows(t, 20);
    return t;
}

ResultTable ic13(const GraphSnapshot& g, const ParamView& p) {
    ResultTable t;
    t.columns = {"shortestPathLength"};
    t.rows.push_back({static_cast<std::int64_t>(
        shortest_path_length(g, p.id("person1Id"), p.id("person2Id")))});
    return t;
}

ResultTable ic14(const GraphSnapshot& g, const ParamView& p) {
    const auto weights = interaction_weights(g);
    ResultTable t;
    t.columns = {"personIdsInPath", "pathWeight"};
    for (const WeightedPath& path :
         all_weighted_shortest_paths(g, p.id("person1Id"), p.id("person2Id"), weights)) {
        std::vector<std::int64_t> ids;
        for (Id id : path.nodes) ids.push_back(iv(id));
        t.rows.push_back({std::move(ids), path.weight});
    }
    // already ordered by weight desc, id sequence asc
    return t;
}

}  // namespace

ResultTable run_interactive(const GraphSnapshot& g, int query, const Bindings& b) {
    const ParamView p("interactive_" + std::to_string(query), b);
    switch (query) {
        case 1: return ic1(g, p);
        case 2: return ic2(g, p);
        case 3: return ic3(g, p);
        case 4: return ic4(g, p);
        case 5: return ic5(g, p);
        case 6: return ic6(g, p);
        case 7: return ic7(g, p);
        case 8: return ic8(g, p);
        case 9: return ic9(g, p);
        case 10: return ic10(g, p);
        case 11: return ic11(g, p);
        case 12: return ic12(g, p);
        case 13: return ic13(g, p);
        case 14: return ic14(g, p);
        default:
            throw ConfigError("unknown interactive query " + std::to_string(query));
    }
}

}  // namespace snb
