#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "engine_util.hpp"
#include "snb/engine.hpp"

namespace snb {

namespace {

using detail::find_country_by_name;
using detail::find_tag_by_name;
using detail::find_tag_class_by_name;
using detail::msg_content;

std::int64_t iv(Id x) { return static_cast<std::int64_t>(x); }

std::int64_t midnight_after(std::int64_t dateMs) { return dateMs + 86'400'000LL; }

ResultTable bi1(const GraphSnapshot& g, const ParamView& p) {
    const std::int64_t maxMs = p.date_ms("date");
    struct Group {
        std::int64_t count = 0;
        std::int64_t sumLength = 0;
    };
    std::map<std::tuple<std::int64_t, bool, std::int64_t>, Group> groups;
    std::int64_t total = 0;
    for (const Message& m : g.messages) {
        if (m.creationDate.ms >= maxMs) continue;
        ++total;
        const std::int64_t year = to_date(m.creationDate).year;
        const std::int64_t cat = m.length < 40 ? 0 : m.length < 80 ? 1 : m.length < 160 ? 2 : 3;
        Group& grp = groups[{year, !m.is_post(), cat}];
        ++grp.count;
        grp.sumLength += m.length;
    }
    ResultTable t;
    t.columns = {"year",           "isComment",         "lengthCategory",      "messageCount",
                 "averageMessageLength", "sumMessageLength", "percentageOfMessages"};
    for (const auto& [key, grp] : groups) {
        const auto& [year, isComment, cat] = key;
        t.rows.push_back({year, isComment, cat, grp.count, grp.sumLength / grp.count,
                          grp.sumLength,
                          (100.0 * static_cast<double>(grp.count)) / static_cast<double>(total)});
    }
    sort_rows(t, {{0, true}, {1, false}, {2, false}});
    return t;
}

ResultTable bi2(const GraphSnapshot& g, const ParamView& p) {
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = midnight_after(p.date_ms("endDate"));
    const Id c1 = find_country_by_name(g, p.str("country1"));
    const Id c2 = find_country_by_name(g, p.str("country2"));
    const Date simEnd = to_date(DateTime{g.simulationEndMs});

    std::map<std::tuple<std::string, std::int64_t, std::string, std::int64_t, std::string>,
             std::int64_t>
        groups;
    for (const Message& m : g.messages) {
        if (m.creationDate.ms < lo || m.creationDate.ms >= hi) continue;
        const Person& creator = g.person(m.creatorPersonId);
        const Id home = g.country_of_person(creator.id);
        if (home != c1 && home != c2) continue;
        std::int64_t years = simEnd.year - creator.birthday.year;
        if (std::tuple(simEnd.month, simEnd.day) < std::tuple(creator.birthday.month,
                                                              creator.birthday.day)) {
            --years;
        }
        const std::int64_t ageGroup = years / 5;
        const std::int64_t month = to_date(m.creationDate).month;
        const std::string& countryName = g.place(home).name;
        for (Id tag : g.tags_of_message(m.id)) {
            ++groups[{countryName, month, creator.gender, ageGroup, g.tag(tag).name}];
        }
    }
    ResultTable t;
    t.columns = {"country.name", "messageMonth", "person.gender", "ageGroup", "tag.name",
                 "messageCount"};
    for (const auto& [key, count] : groups) {
        if (count <= 100) continue;
        const auto& [country, month, gender, ageGroup, tag] = key;
        t.rows.push_back({country, month, gender, ageGroup, tag, count});
    }
    sort_rows(t, {{5, true}, {4, false}, {3, false}, {2, false}, {1, false}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi3(const GraphSnapshot& g, const ParamView& p) {
    const std::int64_t year = p.i64("year");
    const std::int64_t month = p.i64("month");
    const std::int64_t year2 = month == 12 ? year + 1 : year;
    const std::int64_t month2 = month == 12 ? 1 : month + 1;

    std::unordered_map<Id, std::pair<std::int64_t, std::int64_t>> counts;
    for (const Message& m : g.messages) {
        const Date d = to_date(m.creationDate);
        const bool inMonth1 = d.year == year && d.month == month;
        const bool inMonth2 = d.year == year2 && d.month == month2;
        if (!inMonth1 && !inMonth2) continue;
        for (Id tag : g.tags_of_message(m.id)) {
            auto& c = counts[tag];
            ++(inMonth1 ? c.first : c.second);
        }
    }
    ResultTable t;
    t.columns = {"tag.name", "countMonth1", "countMonth2", "diff"};
    for (const auto& [tag, c] : counts) {
        t.rows.push_back({g.tag(tag).name, c.first, c.second, std::abs(c.first - c.second)});
    }
    sort_rows(t, {{3, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi4(const GraphSnapshot& g, const ParamView& p) {
    const Id tagClass = find_tag_class_by_name(g, p.str("tagClass"));
    const Id country = find_country_by_name(g, p.str("country"));

    ResultTable t;
    t.columns = {"forum.id", "forum.title", "forum.creationDate", "person.id", "postCount"};
    for (const Forum& f : g.forums) {
        if (g.country_of_person(f.moderatorPersonId) != country) continue;
        std::int64_t postCount = 0;
        for (Id mid : g.posts_in_forum(f.id)) {
            for (Id tag : g.tags_of_message(mid)) {
                if (g.tag_class_of(tag) == tagClass) {
                    ++postCount;
                    break;
                }
            }
        }
        if (postCount == 0) continue;
        t.rows.push_back({iv(f.id), f.title, f.creationDate.ms, iv(f.moderatorPersonId),
                          postCount});
    }
    sort_rows(t, {{4, true}, {0, false}});
    truncate_rows(t, 20);
    return t;
}

ResultTable bi5(const GraphSnapshot& g, const ParamView& p) {
    const Id country = find_country_by_name(g, p.str("country"));

    std::vector<std::pair<std::int64_t, Id>> popularity;  // (-count, id) for easy sort
    for (const Forum& f : g.forums) {
        std::int64_t members = 0;
        for (const ForumMember& m : f.members) {
            if (g.country_of_person(m.personId) == country) ++members;
        }
        popularity.push_back({-members, f.id});
    }
    std::sort(popularity.begin(), popularity.end());
    if (popularity.size() > 100) popularity.resize(100);

    std::unordered_set<Id> topForums;
    std::unordered_set<Id> members;
    for (const auto& [negCount, forumId] : popularity) {
        (void)negCount;
        topForums.insert(forumId);
        for (const ForumMember& m : g.forum(forumId).members) members.insert(m.personId);
    }
    ResultTable t;
    t.columns = {"person.id", "person.firstName", "person.lastName", "person.creationDate",
                 "postCount"};
    for (Id id : members) {
        std::int64_t postCount = 0;
        for (Id mid : g.messages_by_creator(id)) {
            const Message& m = g.message(mid);
            if (m.is_post() && topForums.count(m.forumId)) ++postCount;
        }
        const Person& person = g.person(id);
        t.rows.push_back({iv(id), person.firstName, person.lastName, person.creationDate.ms,
                          postCount});
    }
    sort_rows(t, {{4, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi6(const GraphSnapshot& g, const ParamView& p) {
    const Id tag = find_tag_by_name(g, p.str("tag"));
    struct Score {
        std::int64_t messages = 0;
        std::int64_t likes = 0;
        std::int64_t replies = 0;
    };
    std::unordered_map<Id, Score> scores;
    for (Id mid : g.messages_with_tag(tag)) {
        const Message& m = g.message(mid);
        Score& s = scores[m.creatorPersonId];
        ++s.messages;
        s.likes += static_cast<std::int64_t>(g.likes_of_message(mid).size());
        s.replies += static_cast<std::int64_t>(g.replies_of(mid).size());
    }
    ResultTable t;
    t.columns = {"person.id", "replyCount", "likeCount", "messageCount", "score"};
    for (const auto& [id, s] : scores) {
        t.rows.push_back({iv(id), s.replies, s.likes, s.messages,
                          s.messages + 2 * s.replies + 10 * s.likes});
    }
    sort_rows(t, {{4, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi7(const GraphSnapshot& g, const ParamView& p) {
    const Id tag = find_tag_by_name(g, p.str("tag"));
    std::unordered_map<Id, std::unordered_set<Id>> likersOf;  // author -> likers of tagged msgs
    for (Id mid : g.messages_with_tag(tag)) {
        const Message& m = g.message(mid);
        auto& likers = likersOf[m.creatorPersonId];
        for (const auto& [liker, at] : g.likes_of_message(mid)) {
            (void)at;
            likers.insert(liker);
        }
    }
    auto popularity = [&g](Id person) {
        std::int64_t total = 0;
        for (Id mid : g.messages_by_creator(person)) {
            total += static_cast<std::int64_t>(g.likes_of_message(mid).size());
        }
        return total;
    };
    ResultTable t;
    t.columns = {"person.id", "authorityScore"};
    for (const auto& [author, likers] : likersOf) {
        std::int64_t score = 0;
        for (Id liker : likers) score += popularity(liker);
        t.rows.push_back({iv(author), score});
    }
    sort_rows(t, {{1, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi8(const GraphSnapshot& g, const ParamView& p) {
    const Id tag = find_tag_by_name(g, p.str("tag"));
    std::unordered_map<Id, std::int64_t> counts;
    for (Id mid : g.messages_with_tag(tag)) {
        for (Id rid : g.replies_of(mid)) {
            const auto& replyTags = g.tags_of_message(rid);
            if (std::find(replyTags.begin(), replyTags.end(), tag) != replyTags.end()) continue;
            for (Id rt : replyTags) ++counts[rt];
        }
    }
    ResultTable t;
    t.columns = {"relatedTag.name", "count"};
    for (const auto& [rt, count] : counts) t.rows.push_back({g.tag(rt).name, count});
    sort_rows(t, {{1, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi9(const GraphSnapshot& g, const ParamView& p) {
    const Id tc1 = find_tag_class_by_name(g, p.str("tagClass1"));
    const Id tc2 = find_tag_class_by_name(g, p.str("tagClass2"));
    const std::int64_t threshold = p.i64("threshold");

    ResultTable t;
    t.columns = {"forum.id", "count1", "count2", "_absDiff"};
    for (const Forum& f : g.forums) {
        if (static_cast<std::int64_t>(f.members.size()) <= threshold) continue;
        std::int64_t c1 = 0;
        std::int64_t c2 = 0;
        for (Id mid : g.posts_in_forum(f.id)) {
            bool has1 = false;
            bool has2 = false;
            for (Id tag : g.tags_of_message(mid)) {
                const Id cls = g.tag_class_of(tag);
                has1 = has1 || cls == tc1;
                has2 = has2 || cls == tc2;
            }
            if (has1) ++c1;
            if (has2) ++c2;
        }
        if (c1 == 0 || c2 == 0) continue;
        t.rows.push_back({iv(f.id), c1, c2, std::abs(c2 - c1)});
    }
    sort_rows(t, {{3, true}, {0, false}});
    truncate_rows(t, 100);
    t.columns.pop_back();
    for (Row& r : t.rows) r.pop_back();
    return t;
}

ResultTable bi10(const GraphSnapshot& g, const ParamView& p) {
    const Id tag = find_tag_by_name(g, p.str("tag"));
    const std::int64_t minMs = p.date_ms("date");

    std::unordered_set<Id> interested;
    for (Id id : g.persons_with_interest(tag)) interested.insert(id);
    std::unordered_map<Id, std::int64_t> taggedMessages;
    std::unordered_set<Id> wroteAfter;
    for (Id mid : g.messages_with_tag(tag)) {
        const Message& m = g.message(mid);
        ++taggedMessages[m.creatorPersonId];
        if (m.creationDate.ms > minMs) wroteAfter.insert(m.creatorPersonId);
    }
    auto scoreOf = [&](Id id) {
        const auto it = taggedMessages.find(id);
        return (interested.count(id) ? 100 : 0) + (it == taggedMessages.end() ? 0 : it->second);
    };
    std::unordered_set<Id> candidates = interested;
    candidates.insert(wroteAfter.begin(), wroteAfter.end());

    ResultTable t;
    t.columns = {"person.id", "score", "friendsScore", "_combined"};
    for (Id id : candidates) {
        const std::int64_t score = scoreOf(id);
        std::int64_t friendsScore = 0;
        for (const auto& [f, since] : g.friends_of(id)) {
            (void)since;
            friendsScore += scoreOf(f);
        }
        t.rows.push_back({iv(id), score, friendsScore, score + friendsScore});
    }
    sort_rows(t, {{3, true}, {0, false}});
    truncate_rows(t, 100);
    t.columns.pop_back();
    for (Row& r : t.rows) r.pop_back();
    return t;
}

ResultTable bi11(const GraphSnapshot& g, const ParamView& p) {
    const Id country = find_country_by_name(g, p.str("country"));
    const auto blacklist = p.str_list("blacklist");

    std::map<std::pair<Id, Id>, std::pair<std::int64_t, std::int64_t>> groups;  // likes, replies
    for (const Message& reply : g.messages) {
        if (reply.is_post()) continue;
        if (g.country_of_person(reply.creatorPersonId) != country) continue;
        bool banned = false;
        for (const std::string& word : blacklist) {
            if (!word.empty() && reply.content.find(word) != std::string::npos) {
                banned = true;
                break;
            }
        }
        if (banned) continue;
        const auto& replyTags = g.tags_of_message(reply.id);
        const auto& parentTags = g.tags_of_message(reply.replyOfMessageId);
        bool shared = false;
        for (Id rt : replyTags) {
            if (std::find(parentTags.begin(), parentTags.end(), rt) != parentTags.end()) {
                shared = true;
                break;
            }
        }
        if (shared) continue;
        const auto likes = static_cast<std::int64_t>(g.likes_of_message(reply.id).size());
        for (Id rt : replyTags) {
            auto& grp = groups[{reply.creatorPersonId, rt}];
            grp.first += likes;
            grp.second += 1;
        }
    }
    ResultTable t;
    t.columns = {"person.id", "tag.name", "likeCount", "replyCount"};
    for (const auto& [key, grp] : groups) {
        t.rows.push_back({iv(key.first), g.tag(key.second).name, grp.first, grp.second});
    }
    sort_rows(t, {{2, true}, {0, false}, {1, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi12(const GraphSnapshot& g, const ParamView& p) {
    const std::int64_t minMs = p.date_ms("date");
    const std::int64_t threshold = p.i64("likeThreshold");
    ResultTable t;
    t.columns = {"message.id", "message.creationDate", "creator.firstName", "creator.lastName",
                 "likeCount"};
    for (const Message& m : g.messages) {
        if (m.creationDate.ms <= minMs) continue;
        const auto likes = static_cast<std::int64_t>(g.likes_of_message(m.id).size());
        if (likes <= threshold) continue;
        const Person& creator = g.person(m.creatorPersonId);
        t.rows.push_back({iv(m.id), m.creationDate.ms, creator.firstName, creator.lastName,
                          likes});
    }
    sort_rows(t, {{4, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi13(const GraphSnapshot& g, const ParamView& p) {
    const Id country = find_country_by_name(g, p.str("country"));
    std::map<std::pair<std::int64_t, std::int64_t>, std::map<Id, std::int64_t>> groups;
    for (const Message& m : g.messages) {
        if (m.countryId != country) continue;
        const Date d = to_date(m.creationDate);
        auto& tagCounts = groups[{d.year, d.month}];  // group exists even without tags
        for (Id tag : g.tags_of_message(m.id)) ++tagCounts[tag];
    }
    ResultTable t;
    t.columns = {"year", "month", "popularTags"};
    for (const auto& [ym, tagCounts] : groups) {
        std::vector<std::pair<std::int64_t, std::string>> ranked;  // (-count, name)
        for (const auto& [tag, count] : tagCounts) ranked.push_back({-count, g.tag(tag).name});
        std::sort(ranked.begin(), ranked.end());
        if (ranked.size() > 5) ranked.resize(5);
        std::vector<std::string> popular;
        for (const auto& [negCount, name] : ranked) {
            popular.push_back(name + "," + std::to_string(-negCount));
        }
        t.rows.push_back({ym.first, ym.second, std::move(popular)});
    }
    sort_rows(t, {{0, true}, {1, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi14(const GraphSnapshot& g, const ParamView& p) {
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = midnight_after(p.date_ms("endDate"));

    struct Counts {
        std::int64_t threads = 0;
        std::int64_t messages = 0;
    };
    std::unordered_map<Id, Counts> byPerson;
    for (const Message& m : g.messages) {
        if (!m.is_post() || m.creationDate.ms < lo || m.creationDate.ms >= hi) continue;
        Counts& c = byPerson[m.creatorPersonId];
        ++c.threads;
        // walk the reply tree, counting in-interval messages (root included)
        std::vector<Id> stack{m.id};
        while (!stack.empty()) {
            const Id cur = stack.back();
            stack.pop_back();
            const Message& node = g.message(cur);
            if (node.creationDate.ms >= lo && node.creationDate.ms < hi) ++c.messages;
            for (Id rid : g.replies_of(cur)) stack.push_back(rid);
        }
    }
    ResultTable t;
    t.columns = {"person.id", "person.firstName", "person.lastName", "threadCount",
                 "messageCount"};
    for (const auto& [id, c] : byPerson) {
        const Person& person = g.person(id);
        t.rows.push_back({iv(id), person.firstName, person.lastName, c.threads, c.messages});
    }
    sort_rows(t, {{4, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi15(const GraphSnapshot& g, const ParamView& p) {
    const Id country = find_country_by_name(g, p.str("country"));
    std::vector<std::pair<Id, std::int64_t>> counts;
    std::int64_t sum = 0;
    for (const Person& person : g.persons) {
        if (g.country_of_person(person.id) != country) continue;
        std::int64_t inCountry = 0;
        for (const auto& [f, since] : g.friends_of(person.id)) {
            (void)since;
            if (g.country_of_person(f) == country) ++inCountry;
        }
        counts.push_back({person.id, inCountry});
        sum += inCountry;
    }
    ResultTable t;
    t.columns = {"person.id", "count"};
    if (counts.empty()) return t;
    const std::int64_t normal = sum / static_cast<std::int64_t>(counts.size());
    for (const auto& [id, c] : counts) {
        if (c == normal) t.rows.push_back({iv(id), c});
    }
    sort_rows(t, {{0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi16(const GraphSnapshot& g, const ParamView& p) {
    const Id root = p.id("personId");
    const Id country = find_country_by_name(g, p.str("country"));
    const Id tagClass = find_tag_class_by_name(g, p.str("tagClass"));
    const int minLen = static_cast<int>(p.i64("minPathDistance"));
    const int maxLen = static_cast<int>(p.i64("maxPathDistance"));

    std::map<std::pair<Id, Id>, std::int64_t> groups;  // (person, tag) -> messages
    for (Id id : persons_on_trails(g, root, minLen, maxLen)) {
        if (g.country_of_person(id) != country) continue;
        for (Id mid : g.messages_by_creator(id)) {
            const auto& tags = g.tags_of_message(mid);
            bool qualifies = false;
            for (Id tag : tags) {
                if (g.tag_class_of(tag) == tagClass) {
                    qualifies = true;
                    break;
                }
            }
            if (!qualifies) continue;
            for (Id tag : tags) ++groups[{id, tag}];
        }
    }
    ResultTable t;
    t.columns = {"person.id", "tag.name", "messageCount"};
    for (const auto& [key, count] : groups) {
        t.rows.push_back({iv(key.first), g.tag(key.second).name, count});
    }
    sort_rows(t, {{2, true}, {1, false}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi17(const GraphSnapshot& g, const ParamView& p) {
    ResultTable t;
    t.columns = {"count"};
    t.rows.push_back({count_triangles(g, find_country_by_name(g, p.str("country")))});
    return t;
}

ResultTable bi18(const GraphSnapshot& g, const ParamView& p) {
    const std::int64_t minMs = p.date_ms("date");
    const std::int64_t lengthThreshold = p.i64("lengthThreshold");
    const auto languageList = p.str_list("languages");
    const std::unordered_set<std::string> languages(languageList.begin(), languageList.end());

    std::unordered_map<Id, std::int64_t> perPerson;
    for (const Person& person : g.persons) perPerson[person.id] = 0;
    for (const Message& m : g.messages) {
        if (m.content.empty()) continue;
        if (m.length >= lengthThreshold) continue;
        if (m.creationDate.ms <= minMs) continue;
        const Id rootId = m.is_post() ? m.id : root_post(g, m.id).first;
        if (!languages.count(g.message(rootId).language)) continue;
        ++perPerson[m.creatorPersonId];
    }
    std::map<std::int64_t, std::int64_t> histogram;
    for (const auto& [id, count] : perPerson) {
        (void)id;
        ++histogram[count];
    }
    ResultTable t;
    t.columns = {"messageCount", "personCount"};
    for (const auto& [messageCount, personCount] : histogram) {
        t.rows.push_back({messageCount, personCount});
    }
    sort_rows(t, {{1, true}, {0, true}});
    return t;
}

ResultTable bi19(const GraphSnapshot& g, const ParamView& p) {
    const std::int64_t minBirthMs = p.date_ms("date");
    const Id tc1 = find_tag_class_by_name(g, p.str("tagClass1"));
    const Id tc2 = find_tag_class_by_name(g, p.str("tagClass2"));

    // forums tagged with a tag of direct type tc1 / tc2
    std::unordered_set<Id> strangers1, strangers2;
    for (const Forum& f : g.forums) {
        bool has1 = false;
        bool has2 = false;
        for (Id tag : f.tagIds) {
            const Id cls = g.tag_class_of(tag);
            has1 = has1 || cls == tc1;
            has2 = has2 || cls == tc2;
        }
        if (!has1 && !has2) continue;
        for (const ForumMember& m : f.members) {
            if (has1) strangers1.insert(m.personId);
            if (has2) strangers2.insert(m.personId);
        }
    }
    std::unordered_set<Id> eligible;
    for (Id id : strangers1) {
        if (strangers2.count(id)) eligible.insert(id);
    }

    ResultTable t;
    t.columns = {"person.id", "strangerCount", "interactionCount"};
    for (const Person& person : g.persons) {
        if (to_datetime(person.birthday).ms <= minBirthMs) continue;
        std::unordered_set<Id> strangersMet;
        std::int64_t interactions = 0;
        for (Id mid : g.messages_by_creator(person.id)) {
            const Message& m = g.message(mid);
            if (m.is_post()) continue;
            // every ancestor message authored by an eligible stranger counts
            Id cur = m.replyOfMessageId;
            while (true) {
                const Message& anc = g.message(cur);
                const Id author = anc.creatorPersonId;
                if (author != person.id && eligible.count(author) &&
                    !g.knows_lookup(person.id, author)) {
                    ++interactions;
                    strangersMet.insert(author);
                }
                if (anc.is_post()) break;
                cur = anc.replyOfMessageId;
            }
        }
        if (interactions == 0) continue;
        t.rows.push_back({iv(person.id), static_cast<std::int64_t>(strangersMet.size()),
                          interactions});
    }
    sort_rows(t, {{2, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi20(const GraphSnapshot& g, const ParamView& p) {
    std::vector<std::string> names = p.str_list("tagClasses");
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    ResultTable t;
    t.columns = {"tagClass.name", "messageCount"};
    for (const std::string& name : names) {
        const Id cls = find_tag_class_by_name(g, name);
        if (cls == kNoId) continue;
        std::unordered_set<Id> messages;
        for (const Tag& tag : g.tags) {
            if (!g.tag_class_is_a(tag.typeTagClassId, cls)) continue;
            for (Id mid : g.messages_with_tag(tag.id)) messages.insert(mid);
        }
        t.rows.push_back({name, static_cast<std::int64_t>(messages.size())});
    }
    sort_rows(t, {{1, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi21(const GraphSnapshot& g, const ParamView& p) {
    const Id country = find_country_by_name(g, p.str("country"));
    const std::int64_t endMs = p.date_ms("endDate");
    const Date endDate = to_date(DateTime{endMs});

    std::unordered_set<Id> zombies;
    for (const Person& person : g.persons) {
        if (g.country_of_person(person.id) != country) continue;
        if (person.creationDate.ms >= endMs) continue;
        std::int64_t messageCount = 0;
        for (Id mid : g.messages_by_creator(person.id)) {
            if (g.message(mid).creationDate.ms < endMs) ++messageCount;
        }
        const std::int64_t months = months_inclusive(to_date(person.creationDate), endDate);
        if (messageCount < months) zombies.insert(person.id);
    }
    ResultTable t;
    t.columns = {"zombie.id", "zombieLikeCount", "totalLikeCount", "zombieScore"};
    for (Id zombie : zombies) {
        std::int64_t zombieLikes = 0;
        std::int64_t totalLikes = 0;
        for (Id mid : g.messages_by_creator(zombie)) {
            for (const auto& [liker, at] : g.likes_of_message(mid)) {
                (void)at;
                if (g.person(liker).creationDate.ms >= endMs) continue;
                ++totalLikes;
                if (zombies.count(liker)) ++zombieLikes;
            }
        }
        const double score =
            totalLikes == 0 ? 0.0
                            : static_cast<double>(zombieLikes) / static_cast<double>(totalLikes);
        t.rows.push_back({iv(zombie), zombieLikes, totalLikes, score});
    }
    sort_rows(t, {{3, true}, {0, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi22(const GraphSnapshot& g, const ParamView& p) {
    const Id country1 = find_country_by_name(g, p.str("country1"));
    const Id country2 = find_country_by_name(g, p.str("country2"));

    std::vector<Id> group1, group2;
    for (const Person& person : g.persons) {
        const Id home = g.country_of_person(person.id);
        if (home == country1) group1.push_back(person.id);
        if (home == country2) group2.push_back(person.id);
    }
    std::sort(group1.begin(), group1.end());
    std::sort(group2.begin(), group2.end());

    // directed "a replied to a message by b" / "a liked a message by b"
    std::set<std::pair<Id, Id>> replied;
    for (const Message& m : g.messages) {
        if (m.is_post()) continue;
        replied.insert({m.creatorPersonId, g.message(m.replyOfMessageId).creatorPersonId});
    }
    std::set<std::pair<Id, Id>> liked;
    for (const LikeEdge& l : g.likes) {
        liked.insert({l.personId, g.message(l.messageId).creatorPersonId});
    }
    auto score = [&](Id p1, Id p2) {
        std::int64_t s = 0;
        if (replied.count({p1, p2})) s += 4;
        if (replied.count({p2, p1})) s += 1;
        if (g.knows_lookup(p1, p2)) s += 15;
        if (liked.count({p1, p2})) s += 10;
        if (liked.count({p2, p1})) s += 1;
        return s;
    };

    std::map<Id, std::tuple<std::int64_t, Id, Id>> bestPerCity;  // city -> (score, p1, p2)
    for (Id p1 : group1) {
        const Id city = g.person(p1).cityId;
        for (Id p2 : group2) {
            if (p1 == p2) continue;
            const std::int64_t s = score(p1, p2);
            auto it = bestPerCity.find(city);
            if (it == bestPerCity.end() ||
                std::tuple(-s, p1, p2) < std::tuple(-std::get<0>(it->second),
                                                    std::get<1>(it->second),
                                                    std::get<2>(it->second))) {
                bestPerCity[city] = {s, p1, p2};
            }
        }
    }
    ResultTable t;
    t.columns = {"person1.id", "person2.id", "city1.name", "score"};
    for (const auto& [city, best] : bestPerCity) {
        t.rows.push_back({iv(std::get<1>(best)), iv(std::get<2>(best)), g.place(city).name,
                          std::get<0>(best)});
    }
    sort_rows(t, {{3, true}, {0, false}, {1, false}});
    return t;
}

ResultTable bi23(const GraphSnapshot& g, const ParamView& p) {
    const Id home = find_country_by_name(g, p.str("country"));
    std::map<std::pair<std::string, std::int64_t>, std::int64_t> groups;
    for (const Message& m : g.messages) {
        if (m.countryId == home) continue;
        if (g.country_of_person(m.creatorPersonId) != home) continue;
        const std::int64_t month = to_date(m.creationDate).month;
        ++groups[{g.place(m.countryId).name, month}];
    }
    ResultTable t;
    t.columns = {"messageCount", "destination.name", "month"};
    for (const auto& [key, count] : groups) t.rows.push_back({count, key.first, key.second});
    sort_rows(t, {{0, true}, {1, false}, {2, false}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi24(const GraphSnapshot& g, const ParamView& p) {
    const Id tagClass = find_tag_class_by_name(g, p.str("tagClass"));
    struct Group {
        std::int64_t messages = 0;
        std::int64_t likes = 0;
    };
    std::map<std::tuple<std::int64_t, std::int64_t, std::string>, Group> groups;
    for (const Message& m : g.messages) {
        bool qualifies = false;
        for (Id tag : g.tags_of_message(m.id)) {
            if (g.tag_class_of(tag) == tagClass) {
                qualifies = true;
                break;
            }
        }
        if (!qualifies) continue;
        const Date d = to_date(m.creationDate);
        const Id continent = g.continent_of_place(m.countryId);
        Group& grp = groups[{d.year, d.month, g.place(continent).name}];
        ++grp.messages;
        grp.likes += static_cast<std::int64_t>(g.likes_of_message(m.id).size());
    }
    ResultTable t;
    t.columns = {"messageCount", "likeCount", "year", "month", "continent.name"};
    for (const auto& [key, grp] : groups) {
        t.rows.push_back({grp.messages, grp.likes, std::get<0>(key), std::get<1>(key),
                          std::get<2>(key)});
    }
    sort_rows(t, {{2, false}, {3, false}, {4, true}});
    truncate_rows(t, 100);
    return t;
}

ResultTable bi25(const GraphSnapshot& g, const ParamView& p) {
    const std::pair<std::int64_t, std::int64_t> window{p.date_ms("startDate"),
                                                       midnight_after(p.date_ms("endDate"))};
    const auto weights = interaction_weights(g, &window);
    ResultTable t;
    t.columns = {"personIds", "weight"};
    for (const WeightedPath& path :
         all_weighted_shortest_paths(g, p.id("person1Id"), p.id("person2Id"), weights)) {
        std::vector<std::int64_t> ids;
        for (Id id : path.nodes) ids.push_back(iv(id));
        t.rows.push_back({std::move(ids), path.weight});
    }
    return t;
}

}  // namespace

ResultTable run_bi(const GraphSnapshot& g, int query, const Bindings& b) {
    const ParamView p("bi_" + std::to_string(query), b);
    switch (query) {
        case 1: return bi1(g, p);
        case 2: return bi2(g, p);
        case 3: return bi3(g, p);
        case 4: return bi4(g, p);
        case 5: return bi5(g, p);
        case 6: return bi6(g, p);
        case 7: return bi7(g, p);
        case 8: return bi8(g, p);
        case 9: return bi9(g, p);
        case 10: return bi10(g, p);
        case 11: return bi11(g, p);
        case 12: return bi12(g, p);
        case 13: return bi13(g, p);
        case 14: return bi14(g, p);
        case 15: return bi15(g, p);
        case 16: return bi16(g, p);
        case 17: return bi17(g, p);
        case 18: return bi18(g, p);
        case 19: return bi19(g, p);
        case 20: return bi20(g, p);
        case 21: return bi21(g, p);
        case 22: return bi22(g, p);
        case 23: return bi23(g, p);
        case 24: return bi24(g, p);
        case 25: return bi25(g, p);
        default:
            throw ConfigError("unknown business intelligence query " + std::to_string(query));
    }
}

}  // namespace snb
