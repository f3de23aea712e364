#include <algorithm>

#include "engine_util.hpp"
#include "snb/engine.hpp"

namespace snb {

namespace {

using detail::msg_content;

std::int64_t iv(Id x) { return static_cast<std::int64_t>(x); }

ResultTable is1(const GraphSnapshot& g, const ParamView& p) {
    const Person& person = g.person(p.id("personId"));
    ResultTable t;
    t.columns = {"firstName", "lastName", "birthday", "locationIP",
                 "browserUsed", "cityId",  "gender",   "creationDate"};
    t.rows.push_back({person.firstName, person.lastName, format_date(person.birthday),
                      person.locationIP, person.browserUsed, iv(person.cityId), person.gender,
                      person.creationDate.ms});
    return t;
}

ResultTable is2(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    ResultTable t;
    t.columns = {"messageId",      "messageContent",       "messageCreationDate", "originalPostId",
                 "originalPostAuthorId", "originalPostAuthorFirstName", "originalPostAuthorLastName"};
    for (Id mid : g.messages_by_creator(start)) {
        const Message& m = g.message(mid);
        const auto [rootId, forumId] = root_post(g, mid);
        (void)forumId;
        const Message& root = g.message(rootId);
        const Person& author = g.person(root.creatorPersonId);
        t.rows.push_back({iv(mid), msg_content(m), m.creationDate.ms, iv(rootId),
                          iv(root.creatorPersonId), author.firstName, author.lastName});
    }
    sort_rows(t, {{2, true}, {0, true}});
    truncate_rows(t, 10);
    return t;
}

ResultTable is3(const GraphSnapshot& g, const ParamView& p) {
    const Id start = p.id("personId");
    g.person(start);
    ResultTable t;
    t.columns = {"personId", "firstName", "lastName", "friendshipCreationDate"};
    for (const auto& [friendId, since] : g.friends_of(start)) {
        const Person& person = g.person(friendId);
        t.rows.push_back({iv(friendId), person.firstName, person.lastName, since.ms});
    }
    sort_rows(t, {{3, true}, {0, false}});
    return t;
}

ResultTable is4(const GraphSnapshot& g, const ParamView& p) {
    const Message& m = g.message(p.id("messageId"));
    ResultTable t;
    t.columns = {"messageCreationDate", "messageContent"};
    t.rows.push_back({m.creationDate.ms, msg_content(m)});
    return t;
}

ResultTable is5(const GraphSnapshot& g, const ParamView& p) {
    const Message& m = g.message(p.id("messageId"));
    const Person& author = g.person(m.creatorPersonId);
    ResultTable t;
    t.columns = {"personId", "firstName", "lastName"};
    t.rows.push_back({iv(m.creatorPersonId), author.firstName, author.lastName});
    return t;
}

ResultTable is6(const GraphSnapshot& g, const ParamView& p) {
    const Id mid = p.id("messageId");
    g.message(mid);
    const auto [rootId, forumId] = root_post(g, mid);
    (void)rootId;
    const Forum& forum = g.forum(forumId);
    const Person& moderator = g.person(forum.moderatorPersonId);
    ResultTable t;
    t.columns = {"forumId", "forumTitle", "moderatorId", "moderatorFirstName", "moderatorLastName"};
    t.rows.push_back({iv(forumId), forum.title, iv(forum.moderatorPersonId), moderator.firstName,
                      moderator.lastName});
    return t;
}

ResultTable is7(const GraphSnapshot& g, const ParamView& p) {
    const Id mid = p.id("messageId");
    const Message& original = g.message(mid);
    ResultTable t;
    t.columns = {"commentId",     "commentContent",       "commentCreationDate",
                 "replyAuthorId", "replyAuthorFirstName", "replyAuthorLastName",
                 "replyAuthorKnowsOriginalMessageAuthor"};
    for (Id rid : g.replies_of(mid)) {
        const Message& reply = g.message(rid);
        const Person& author = g.person(reply.creatorPersonId);
        const bool knows = reply.creatorPersonId != original.creatorPersonId &&
                           g.knows_lookup(reply.creatorPersonId, original.creatorPersonId);
        t.rows.push_back({iv(rid), reply.content, reply.creationDate.ms,
                          iv(reply.creatorPersonId), author.firstName, author.lastName, knows});
    }
    sort_rows(t, {{2, true}, {3, false}});
    return t;
}

}  // namespace

ResultTable run_short(const GraphSnapshot& g, int query, const Bindings& b) {
    const ParamView p("short_" + std::to_string(query), b);
    switch (query) {
        case 1: return is1(g, p);
        case 2: return is2(g, p);
        case 3: return is3(g, p);
        case 4: return is4(g, p);
        case 5: return is5(g, p);
        case 6: return is6(g, p);
        case 7: return is7(g, p);
        default:
            throw ConfigError("unknown short query " + std::to_string(query));
    }
}

}  // namespace snb
