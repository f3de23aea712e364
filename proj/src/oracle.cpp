// Reference results computed the slow way: every query below works from the
// raw entity and edge vectors with fresh scans and its own little maps, never
// from the snapshot's prebuilt adjacency indexes. The point is to have a
// second, independently derived answer for every read query so the optimized
// engine can be checked row for row.
#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "snb/engine.hpp"

namespace snb {

namespace {

constexpr int kInf = 1 << 29;

std::int64_t iv(Id x) { return static_cast<std::int64_t>(x); }

std::int64_t day_span(std::int64_t days) { return days * 86'400'000LL; }

// ---------------------------------------------------------------------------
// Ordering and truncation, written separately from the engine's sort helpers.
// ---------------------------------------------------------------------------

bool value_less(const Value& a, const Value& b) {
    if (a.index() != b.index()) throw SnbError("result value type mismatch in comparison");
    switch (a.index()) {
        case 0: return std::get<0>(a) < std::get<0>(b);
        case 1: return std::get<1>(a) < std::get<1>(b);
        case 2: return std::get<2>(a) < std::get<2>(b);
        case 3: return std::get<3>(a) < std::get<3>(b);
        case 4: return std::get<4>(a) < std::get<4>(b);
        default: return std::get<5>(a) < std::get<5>(b);
    }
}

void order_rows(ResultTable& t, const std::vector<SortKey>& keys) {
    std::sort(t.rows.begin(), t.rows.end(), [&](const Row& a, const Row& b) {
        for (const SortKey& k : keys) {
            const Value& va = a[k.column];
            const Value& vb = b[k.column];
            if (value_less(va, vb)) return !k.descending;
            if (value_less(vb, va)) return k.descending;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (value_less(a[i], b[i])) return true;
            if (value_less(b[i], a[i])) return false;
        }
        return false;
    });
}

void keep_first(ResultTable& t, std::size_t n) {
    if (t.rows.size() > n) t.rows.resize(n);
}

void drop_last_column(ResultTable& t) {
    t.columns.pop_back();
    for (Row& r : t.rows) r.pop_back();
}

// ---------------------------------------------------------------------------
// Scan-based view of the snapshot.
// ---------------------------------------------------------------------------

struct Ora {
    const GraphSnapshot& g;
    std::map<Id, const Person*> personById;
    std::map<Id, const Message*> msgById;
    std::map<Id, const Forum*> forumById;
    std::map<Id, const Tag*> tagById;
    std::map<Id, const TagClass*> classById;
    std::map<Id, const Place*> placeById;
    std::map<Id, const Organisation*> orgById;

    explicit Ora(const GraphSnapshot& snapshot) : g(snapshot) {
        for (const Person& x : g.persons) personById[x.id] = &x;
        for (const Message& x : g.messages) msgById[x.id] = &x;
        for (const Forum& x : g.forums) forumById[x.id] = &x;
        for (const Tag& x : g.tags) tagById[x.id] = &x;
        for (const TagClass& x : g.tagClasses) classById[x.id] = &x;
        for (const Place& x : g.places) placeById[x.id] = &x;
        for (const Organisation& x : g.organisations) orgById[x.id] = &x;
    }

    const Person& person(Id id) const {
        const auto it = personById.find(id);
        if (it == personById.end()) throw UnknownIdError("person", id);
        return *it->second;
    }
    const Message& msg(Id id) const {
        const auto it = msgById.find(id);
        if (it == msgById.end()) throw UnknownIdError("message", id);
        return *it->second;
    }
    const Forum& forum(Id id) const {
        const auto it = forumById.find(id);
        if (it == forumById.end()) throw UnknownIdError("forum", id);
        return *it->second;
    }
    const Tag& tag(Id id) const {
        const auto it = tagById.find(id);
        if (it == tagById.end()) throw UnknownIdError("tag", id);
        return *it->second;
    }
    const Place& place(Id id) const {
        const auto it = placeById.find(id);
        if (it == placeById.end()) throw UnknownIdError("place", id);
        return *it->second;
    }
    const Organisation& org(Id id) const {
        const auto it = orgById.find(id);
        if (it == orgById.end()) throw UnknownIdError("organisation", id);
        return *it->second;
    }

    std::set<Id> friend_ids(Id p) const {
        std::set<Id> out;
        for (const KnowsEdge& e : g.knows) {
            if (e.person1 == p) out.insert(e.person2);
        }
        return out;
    }
    std::vector<std::pair<Id, std::int64_t>> friends_since(Id p) const {
        std::vector<std::pair<Id, std::int64_t>> out;
        for (const KnowsEdge& e : g.knows) {
            if (e.person1 == p) out.push_back({e.person2, e.creationDate.ms});
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    bool direct_knows(Id a, Id b) const {
        for (const KnowsEdge& e : g.knows) {
            if (e.person1 == a && e.person2 == b) return true;
        }
        return false;
    }
    // friends plus friends-of-friends, start excluded
    std::set<Id> two_hop(Id p) const {
        std::set<Id> out = friend_ids(p);
        for (Id f : std::set<Id>(out)) {
            const std::set<Id> next = friend_ids(f);
            out.insert(next.begin(), next.end());
        }
        out.erase(p);
        return out;
    }

    Id country_up(Id placeId) const {
        Id cur = placeId;
        while (cur != kNoId && place(cur).kind != PlaceKind::Country) cur = place(cur).partOfId;
        return cur;
    }
    Id continent_up(Id placeId) const {
        Id cur = placeId;
        while (cur != kNoId && place(cur).kind != PlaceKind::Continent) {
            cur = place(cur).partOfId;
        }
        return cur;
    }
    Id home_country(Id personId) const { return country_up(person(personId).cityId); }

    Id country_named(const std::string& name) const {
        for (const Place& p : g.places) {
            if (p.kind == PlaceKind::Country && p.name == name) return p.id;
        }
        return kNoId;
    }
    Id tag_named(const std::string& name) const {
        for (const Tag& t : g.tags) {
            if (t.name == name) return t.id;
        }
        return kNoId;
    }
    Id class_named(const std::string& name) const {
        for (const TagClass& t : g.tagClasses) {
            if (t.name == name) return t.id;
        }
        return kNoId;
    }

    std::vector<const Message*> messages_by(Id p) const {
        std::vector<const Message*> out;
        for (const Message& m : g.messages) {
            if (m.creatorPersonId == p) out.push_back(&m);
        }
        return out;
    }
    std::vector<const Message*> replies_to(Id m) const {
        std::vector<const Message*> out;
        for (const Message& c : g.messages) {
            if (c.kind == MessageKind::Comment && c.replyOfMessageId == m) out.push_back(&c);
        }
        return out;
    }
    std::vector<std::pair<Id, std::int64_t>> likes_on(Id m) const {
        std::vector<std::pair<Id, std::int64_t>> out;
        for (const LikeEdge& e : g.likes) {
            if (e.messageId == m) out.push_back({e.personId, e.creationDate.ms});
        }
        return out;
    }
    std::vector<Id> tags_of(Id m) const {
        std::vector<Id> out;
        for (const MessageTagEdge& e : g.messageTags) {
            if (e.messageId == m) out.push_back(e.tagId);
        }
        return out;
    }
    std::vector<Id> with_tag(Id t) const {
        std::vector<Id> out;
        for (const MessageTagEdge& e : g.messageTags) {
            if (e.tagId == t) out.push_back(e.messageId);
        }
        return out;
    }
    std::set<Id> interests_of(Id p) const {
        std::set<Id> out;
        for (const HasInterestEdge& e : g.hasInterest) {
            if (e.personId == p) out.insert(e.tagId);
        }
        return out;
    }
    std::set<Id> interested_in(Id t) const {
        std::set<Id> out;
        for (const HasInterestEdge& e : g.hasInterest) {
            if (e.tagId == t) out.insert(e.personId);
        }
        return out;
    }
    std::vector<std::pair<Id, std::int64_t>> memberships_of(Id p) const {
        std::vector<std::pair<Id, std::int64_t>> out;
        for (const Forum& f : g.forums) {
            for (const ForumMember& m : f.members) {
                if (m.personId == p) out.push_back({f.id, m.joinDate.ms});
            }
        }
        return out;
    }

    Id class_of_tag(Id t) const { return tag(t).typeTagClassId; }
    bool is_a(Id cls, Id ancestor) const {
        Id cur = cls;
        while (cur != kNoId) {
            if (cur == ancestor) return true;
            const auto it = classById.find(cur);
            if (it == classById.end()) return false;
            cur = it->second->parentId;
        }
        return false;
    }
    const Message& root_of(Id m) const {
        const Message* cur = &msg(m);
        while (cur->kind == MessageKind::Comment) cur = &msg(cur->replyOfMessageId);
        return *cur;
    }
    std::string content_of(const Message& m) const {
        return m.content.empty() ? m.imageFile : m.content;
    }
};

// ---------------------------------------------------------------------------
// Path machinery: all-pairs hop counts by Floyd-Warshall, then exhaustive
// enumeration guided by the distance matrix.
// ---------------------------------------------------------------------------

struct HopMatrix {
    std::vector<Id> ids;
    std::map<Id, int> index;
    std::vector<std::vector<int>> dist;

    explicit HopMatrix(const Ora& o) {
        for (const Person& p : o.g.persons) ids.push_back(p.id);
        std::sort(ids.begin(), ids.end());
        const int n = static_cast<int>(ids.size());
        for (int i = 0; i < n; ++i) index[ids[i]] = i;
        dist.assign(n, std::vector<int>(n, kInf));
        for (int i = 0; i < n; ++i) dist[i][i] = 0;
        for (const KnowsEdge& e : o.g.knows) {
            dist[index.at(e.person1)][index.at(e.person2)] = 1;
        }
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                if (dist[i][k] == kInf) continue;
                for (int j = 0; j < n; ++j) {
                    if (dist[i][k] + dist[k][j] < dist[i][j]) {
                        dist[i][j] = dist[i][k] + dist[k][j];
                    }
                }
            }
        }
    }

    int hops(Id a, Id b) const {
        const auto ia = index.find(a);
        const auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) return kInf;
        return dist[ia->second][ib->second];
    }
};

// directed pair weights of reply interactions; window filters on the creation
// date of the forum containing the thread
std::map<std::pair<Id, Id>, double> reply_weights(const Ora& o,
                                                  const std::pair<std::int64_t, std::int64_t>*
                                                      forumWindow) {
    std::map<std::pair<Id, Id>, double> w;
    for (const Message& c : o.g.messages) {
        if (c.kind != MessageKind::Comment) continue;
        const Message& parent = o.msg(c.replyOfMessageId);
        if (forumWindow) {
            const Message& root = o.root_of(c.id);
            const std::int64_t created = o.forum(root.forumId).creationDate.ms;
            if (created < forumWindow->first || created >= forumWindow->second) continue;
        }
        const double step = parent.kind == MessageKind::Post ? 1.0 : 0.5;
        w[{c.creatorPersonId, parent.creatorPersonId}] += step;
        w[{parent.creatorPersonId, c.creatorPersonId}] += step;
    }
    return w;
}

void weighted_paths_table(const Ora& o, Id a, Id b,
                          const std::map<std::pair<Id, Id>, double>& weights, ResultTable& t) {
    if (a == b) {
        t.rows.push_back({std::vector<std::int64_t>{iv(a)}, 0.0});
        return;
    }
    const HopMatrix hm(o);
    const int total = hm.hops(a, b);
    if (total >= kInf) return;

    std::vector<std::pair<double, std::vector<std::int64_t>>> found;
    std::vector<Id> path{a};
    auto dfs = [&](auto&& self, Id u, int depth) -> void {
        if (u == b) {
            double weight = 0.0;
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                const auto it = weights.find({path[i], path[i + 1]});
                if (it != weights.end()) weight += it->second;
            }
            std::vector<std::int64_t> ids;
            for (Id id : path) ids.push_back(iv(id));
            found.push_back({weight, std::move(ids)});
            return;
        }
        for (Id v : o.friend_ids(u)) {
            if (hm.hops(v, b) != total - depth - 1) continue;
            path.push_back(v);
            self(self, v, depth + 1);
            path.pop_back();
        }
    };
    dfs(dfs, a, 0);
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });
    for (auto& [weight, ids] : found) t.rows.push_back({std::move(ids), weight});
}

// every person reachable on a duplicate-edge-free walk of length within
// [minLen, maxLen], excluding the start
std::set<Id> trail_persons(const Ora& o, Id root, int minLen, int maxLen) {
    if (maxLen > 4) {
        throw RangeTooLargeError("path distance above 4 is not supported, got " +
                                 std::to_string(maxLen));
    }
    std::set<Id> out;
    std::set<std::pair<Id, Id>> used;
    auto dfs = [&](auto&& self, Id u, int depth) -> void {
        if (depth >= maxLen) return;
        for (Id v : o.friend_ids(u)) {
            if (used.count({u, v})) continue;
            used.insert({u, v});
            used.insert({v, u});
            if (depth + 1 >= minLen && v != root) out.insert(v);
            self(self, v, depth + 1);
            used.erase({u, v});
            used.erase({v, u});
        }
    };
    dfs(dfs, root, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Interactive complex reads
// ---------------------------------------------------------------------------

ResultTable o_ic1(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const std::string firstName = p.str("firstName");

    // layer sets: exactly-1, exactly-2, exactly-3 hops
    std::set<Id> seen{start};
    std::vector<std::set<Id>> layers;
    std::set<Id> frontier{start};
    for (int d = 1; d <= 3; ++d) {
        std::set<Id> next;
        for (Id u : frontier) {
            for (Id v : o.friend_ids(u)) {
                if (!seen.count(v)) next.insert(v);
            }
        }
        for (Id v : next) seen.insert(v);
        layers.push_back(next);
        frontier = layers.back();
    }

    ResultTable t;
    t.columns = {"friendId",        "friendLastName", "distanceFromPerson", "friendBirthday",
                 "friendCreationDate", "friendGender", "friendBrowserUsed", "friendLocationIp",
                 "friendEmails",    "friendLanguages", "friendCityName",    "friendUniversities",
                 "friendCompanies"};
    for (int d = 1; d <= 3; ++d) {
        for (Id id : layers[d - 1]) {
            const Person& f = o.person(id);
            if (f.firstName != firstName) continue;
            std::vector<std::string> universities;
            for (const StudyAtEdge& s : o.g.studyAt) {
                if (s.personId != id) continue;
                const Organisation& uni = o.org(s.universityId);
                universities.push_back(uni.name + "," + std::to_string(s.classYear) + "," +
                                       o.place(uni.placeId).name);
            }
            std::sort(universities.begin(), universities.end());
            std::vector<std::string> companies;
            for (const WorkAtEdge& w : o.g.workAt) {
                if (w.personId != id) continue;
                const Organisation& co = o.org(w.companyId);
                companies.push_back(co.name + "," + std::to_string(w.workFrom) + "," +
                                    o.place(co.placeId).name);
            }
            std::sort(companies.begin(), companies.end());
            t.rows.push_back({iv(id), f.lastName, static_cast<std::int64_t>(d),
                              format_date(f.birthday), f.creationDate.ms, f.gender, f.browserUsed,
                              f.locationIP, f.emails, f.speaks, o.place(f.cityId).name,
                              universities, companies});
        }
    }
    order_rows(t, {{2, false}, {1, false}, {0, false}});
    keep_first(t, 20);
    return t;
}

ResultTable o_feed(const Ora& o, const std::set<Id>& authors, std::int64_t maxMs) {
    ResultTable t;
    t.columns = {"personId",       "personFirstName", "personLastName",
                 "messageId",      "messageContent",  "messageCreationDate"};
    for (const Message& m : o.g.messages) {
        if (m.creationDate.ms >= maxMs || !authors.count(m.creatorPersonId)) continue;
        const Person& person = o.person(m.creatorPersonId);
        t.rows.push_back({iv(m.creatorPersonId), person.firstName, person.lastName, iv(m.id),
                          o.content_of(m), m.creationDate.ms});
    }
    order_rows(t, {{5, true}, {3, false}});
    keep_first(t, 20);
    return t;
}

ResultTable o_ic2(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    return o_feed(o, o.friend_ids(start), p.date_ms("maxDate"));
}

ResultTable o_ic3(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const Id countryX = o.country_named(p.str("countryXName"));
    const Id countryY = o.country_named(p.str("countryYName"));
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = lo + day_span(p.i64("durationDays"));

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName", "xCount", "yCount", "count"};
    for (Id id : o.two_hop(start)) {
        const Id home = o.home_country(id);
        if (home == countryX || home == countryY) continue;
        std::int64_t x = 0;
        std::int64_t y = 0;
        for (const Message* m : o.messages_by(id)) {
            if (m->creationDate.ms < lo || m->creationDate.ms >= hi) continue;
            if (m->countryId == countryX) ++x;
            if (m->countryId == countryY) ++y;
        }
        if (x == 0 || y == 0) continue;
        const Person& person = o.person(id);
        t.rows.push_back({iv(id), person.firstName, person.lastName, x, y, x + y});
    }
    order_rows(t, {{3, true}, {0, false}});
    keep_first(t, 20);
    return t;
}

ResultTable o_ic4(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = lo + day_span(p.i64("durationDays"));
    const std::set<Id> friends = o.friend_ids(start);

    std::map<Id, std::int64_t> inWindow;
    std::set<Id> before;
    for (const Message& m : o.g.messages) {
        if (m.kind != MessageKind::Post || !friends.count(m.creatorPersonId)) continue;
        if (m.creationDate.ms >= hi) continue;
        for (Id tag : o.tags_of(m.id)) {
            if (m.creationDate.ms < lo) {
                before.insert(tag);
            } else {
                ++inWindow[tag];
            }
        }
    }
    ResultTable t;
    t.columns = {"tagName", "postCount"};
    for (const auto& [tag, count] : inWindow) {
        if (!before.count(tag)) t.rows.push_back({o.tag(tag).name, count});
    }
    order_rows(t, {{1, true}, {0, false}});
    keep_first(t, 10);
    return t;
}

ResultTable o_ic5(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const std::int64_t minMs = p.date_ms("minDate");
    const std::set<Id> candidates = o.two_hop(start);

    ResultTable t;
    t.columns = {"forumTitle", "postCount", "_forumId"};
    for (const Forum& f : o.g.forums) {
        std::set<Id> joiners;
        for (const ForumMember& m : f.members) {
            if (m.joinDate.ms > minMs && candidates.count(m.personId)) joiners.insert(m.personId);
        }
        if (joiners.empty()) continue;
        std::int64_t count = 0;
        for (const Message& m : o.g.messages) {
            if (m.kind == MessageKind::Post && m.forumId == f.id &&
                joiners.count(m.creatorPersonId)) {
                ++count;
            }
        }
        t.rows.push_back({f.title, count, iv(f.id)});
    }
    order_rows(t, {{1, true}, {2, false}});
    keep_first(t, 20);
    drop_last_column(t);
    return t;
}

ResultTable o_ic6(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const Id tagId = o.tag_named(p.str("tagName"));
    const std::set<Id> candidates = o.two_hop(start);

    std::map<Id, std::int64_t> counts;
    for (Id mid : o.with_tag(tagId)) {
        const Message& m = o.msg(mid);
        if (m.kind != MessageKind::Post || !candidates.count(m.creatorPersonId)) continue;
        for (Id other : o.tags_of(mid)) {
            if (other != tagId) ++counts[other];
        }
    }
    ResultTable t;
    t.columns = {"tagName", "postCount"};
    for (const auto& [tag, count] : counts) t.rows.push_back({o.tag(tag).name, count});
    order_rows(t, {{1, true}, {0, false}});
    keep_first(t, 10);
    return t;
}

ResultTable o_ic7(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const std::set<Id> friends = o.friend_ids(start);

    std::map<Id, std::pair<std::int64_t, Id>> best;  // liker -> (likeMs, messageId)
    for (const LikeEdge& e : o.g.likes) {
        if (o.msg(e.messageId).creatorPersonId != start) continue;
        const auto it = best.find(e.personId);
        if (it == best.end() || e.creationDate.ms > it->second.first ||
            (e.creationDate.ms == it->second.first && e.messageId < it->second.second)) {
            best[e.personId] = {e.creationDate.ms, e.messageId};
        }
    }
    ResultTable t;
    t.columns = {"personId",        "personFirstName",      "personLastName", "likeCreationDate",
                 "commentOrPostId", "commentOrPostContent", "minutesLatency", "isNew"};
    for (const auto& [liker, b] : best) {
        const Person& person = o.person(liker);
        const Message& m = o.msg(b.second);
        t.rows.push_back({iv(liker), person.firstName, person.lastName, b.first, iv(b.second),
                          o.content_of(m), (b.first - m.creationDate.ms) / 60'000,
                          friends.count(liker) == 0});
    }
    order_rows(t, {{3, true}, {0, false}});
    keep_first(t, 20);
    return t;
}

ResultTable o_ic8(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    ResultTable t;
    t.columns = {"personId",  "personFirstName", "personLastName",
                 "commentCreationDate", "commentId", "commentContent"};
    for (const Message& reply : o.g.messages) {
        if (reply.kind != MessageKind::Comment) continue;
        if (o.msg(reply.replyOfMessageId).creatorPersonId != start) continue;
        const Person& author = o.person(reply.creatorPersonId);
        t.rows.push_back({iv(reply.creatorPersonId), author.firstName, author.lastName,
                          reply.creationDate.ms, iv(reply.id), reply.content});
    }
    order_rows(t, {{3, true}, {4, false}});
    keep_first(t, 20);
    return t;
}

ResultTable o_ic9(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    return o_feed(o, o.two_hop(start), p.date_ms("maxDate"));
}

ResultTable o_ic10(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const std::int64_t month = p.i64("month");
    const std::set<Id> friends = o.friend_ids(start);
    std::set<Id> candidates = o.two_hop(start);
    for (Id f : friends) candidates.erase(f);
    const std::set<Id> interests = o.interests_of(start);

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName",
                 "commonInterestScore", "personGender", "personCityName"};
    for (Id id : candidates) {
        const Person& person = o.person(id);
        const bool hit = (person.birthday.month == month && person.birthday.day >= 21) ||
                         (person.birthday.month == month % 12 + 1 && person.birthday.day < 22);
        if (!hit) continue;
        std::int64_t common = 0;
        std::int64_t uncommon = 0;
        for (const Message* m : o.messages_by(id)) {
            if (m->kind != MessageKind::Post) continue;
            bool shared = false;
            for (Id tag : o.tags_of(m->id)) {
                if (interests.count(tag)) {
                    shared = true;
                    break;
                }
            }
            ++(shared ? common : uncommon);
        }
        t.rows.push_back({iv(id), person.firstName, person.lastName, common - uncommon,
                          person.gender, o.place(person.cityId).name});
    }
    order_rows(t, {{3, true}, {0, false}});
    keep_first(t, 10);
    return t;
}

ResultTable o_ic11(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const Id country = o.country_named(p.str("countryName"));
    const std::int64_t year = p.i64("workFromYear");
    const std::set<Id> candidates = o.two_hop(start);

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName", "organizationName",
                 "organizationWorkFromYear"};
    for (const WorkAtEdge& w : o.g.workAt) {
        if (!candidates.count(w.personId) || w.workFrom >= year) continue;
        const Organisation& company = o.org(w.companyId);
        if (company.placeId != country) continue;
        const Person& person = o.person(w.personId);
        t.rows.push_back({iv(w.personId), person.firstName, person.lastName, company.name,
                          static_cast<std::int64_t>(w.workFrom)});
    }
    order_rows(t, {{4, false}, {0, false}, {3, true}});
    keep_first(t, 10);
    return t;
}

ResultTable o_ic12(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    const Id tagClass = o.class_named(p.str("tagClassName"));

    ResultTable t;
    t.columns = {"personId", "personFirstName", "personLastName", "tagNames", "replyCount"};
    for (Id friendId : o.friend_ids(start)) {
        std::int64_t replyCount = 0;
        std::set<std::string> tagNames;
        for (const Message* m : o.messages_by(friendId)) {
            if (m->kind != MessageKind::Comment) continue;
            const Message& parent = o.msg(m->replyOfMessageId);
            if (parent.kind != MessageKind::Post) continue;
            bool qualifies = false;
            std::vector<std::string> inClass;
            for (Id tag : o.tags_of(parent.id)) {
                if (tagClass != kNoId && o.is_a(o.class_of_tag(tag), tagClass)) {
                    qualifies = true;
                    inClass.push_back(o.tag(tag).name);
                }
            }
            if (!qualifies) continue;
            ++replyCount;
            tagNames.insert(inClass.begin(), inClass.end());
        }
        if (replyCount == 0) continue;
        const Person& person = o.person(friendId);
        t.rows.push_back({iv(friendId), person.firstName, person.lastName,
                          std::vector<std::string>(tagNames.begin(), tagNames.end()), replyCount});
    }
    order_rows(t, {{4, true}, {0, false}});
    keep_first(t, 20);
    return t;
}

ResultTable o_ic13(const Ora& o, const ParamView& p) {
    const HopMatrix hm(o);
    const int hops = hm.hops(p.id("person1Id"), p.id("person2Id"));
    ResultTable t;
    t.columns = {"shortestPathLength"};
    t.rows.push_back({static_cast<std::int64_t>(hops >= kInf ? -1 : hops)});
    return t;
}

ResultTable o_ic14(const Ora& o, const ParamView& p) {
    ResultTable t;
    t.columns = {"personIdsInPath", "pathWeight"};
    weighted_paths_table(o, p.id("person1Id"), p.id("person2Id"), reply_weights(o, nullptr), t);
    return t;
}

// ---------------------------------------------------------------------------
// Interactive short reads
// ---------------------------------------------------------------------------

ResultTable o_is1(const Ora& o, const ParamView& p) {
    const Person& person = o.person(p.id("personId"));
    ResultTable t;
    t.columns = {"firstName", "lastName", "birthday", "locationIP",
                 "browserUsed", "cityId",  "gender",   "creationDate"};
    t.rows.push_back({person.firstName, person.lastName, format_date(person.birthday),
                      person.locationIP, person.browserUsed, iv(person.cityId), person.gender,
                      person.creationDate.ms});
    return t;
}

ResultTable o_is2(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    ResultTable t;
    t.columns = {"messageId",      "messageContent",       "messageCreationDate", "originalPostId",
                 "originalPostAuthorId", "originalPostAuthorFirstName", "originalPostAuthorLastName"};
    for (const Message* m : o.messages_by(start)) {
        const Message& root = o.root_of(m->id);
        const Person& author = o.person(root.creatorPersonId);
        t.rows.push_back({iv(m->id), o.content_of(*m), m->creationDate.ms, iv(root.id),
                          iv(root.creatorPersonId), author.firstName, author.lastName});
    }
    order_rows(t, {{2, true}, {0, true}});
    keep_first(t, 10);
    return t;
}

ResultTable o_is3(const Ora& o, const ParamView& p) {
    const Id start = p.id("personId");
    o.person(start);
    ResultTable t;
    t.columns = {"personId", "firstName", "lastName", "friendshipCreationDate"};
    for (const auto& [friendId, sinceMs] : o.friends_since(start)) {
        const Person& person = o.person(friendId);
        t.rows.push_back({iv(friendId), person.firstName, person.lastName, sinceMs});
    }
    order_rows(t, {{3, true}, {0, false}});
    return t;
}

ResultTable o_is4(const Ora& o, const ParamView& p) {
    const Message& m = o.msg(p.id("messageId"));
    ResultTable t;
    t.columns = {"messageCreationDate", "messageContent"};
    t.rows.push_back({m.creationDate.ms, o.content_of(m)});
    return t;
}

ResultTable o_is5(const Ora& o, const ParamView& p) {
    const Message& m = o.msg(p.id("messageId"));
    const Person& author = o.person(m.creatorPersonId);
    ResultTable t;
    t.columns = {"personId", "firstName", "lastName"};
    t.rows.push_back({iv(m.creatorPersonId), author.firstName, author.lastName});
    return t;
}

ResultTable o_is6(const Ora& o, const ParamView& p) {
    const Message& root = o.root_of(p.id("messageId"));
    const Forum& forum = o.forum(root.forumId);
    const Person& moderator = o.person(forum.moderatorPersonId);
    ResultTable t;
    t.columns = {"forumId", "forumTitle", "moderatorId", "moderatorFirstName", "moderatorLastName"};
    t.rows.push_back({iv(forum.id), forum.title, iv(forum.moderatorPersonId), moderator.firstName,
                      moderator.lastName});
    return t;
}

ResultTable o_is7(const Ora& o, const ParamView& p) {
    const Id mid = p.id("messageId");
    const Message& original = o.msg(mid);
    ResultTable t;
    t.columns = {"commentId",     "commentContent",       "commentCreationDate",
                 "replyAuthorId", "replyAuthorFirstName", "replyAuthorLastName",
                 "replyAuthorKnowsOriginalMessageAuthor"};
    for (const Message* reply : o.replies_to(mid)) {
        const Person& author = o.person(reply->creatorPersonId);
        const bool knows = reply->creatorPersonId != original.creatorPersonId &&
                           o.direct_knows(reply->creatorPersonId, original.creatorPersonId);
        t.rows.push_back({iv(reply->id), reply->content, reply->creationDate.ms,
                          iv(reply->creatorPersonId), author.firstName, author.lastName, knows});
    }
    order_rows(t, {{2, true}, {3, false}});
    return t;
}

// ---------------------------------------------------------------------------
// Business intelligence reads
// ---------------------------------------------------------------------------

ResultTable o_bi1(const Ora& o, const ParamView& p) {
    const std::int64_t maxMs = p.date_ms("date");
    std::map<std::tuple<std::int64_t, bool, std::int64_t>, std::pair<std::int64_t, std::int64_t>>
        groups;
    std::int64_t total = 0;
    for (const Message& m : o.g.messages) {
        if (m.creationDate.ms >= maxMs) continue;
        ++total;
        std::int64_t cat;
        if (m.length < 40) {
            cat = 0;
        } else if (m.length < 80) {
            cat = 1;
        } else if (m.length < 160) {
            cat = 2;
        } else {
            cat = 3;
        }
        auto& grp = groups[{to_date(m.creationDate).year, m.kind == MessageKind::Comment, cat}];
        grp.first += 1;
        grp.second += m.length;
    }
    ResultTable t;
    t.columns = {"year",           "isComment",         "lengthCategory",      "messageCount",
                 "averageMessageLength", "sumMessageLength", "percentageOfMessages"};
    for (const auto& [key, grp] : groups) {
        t.rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), grp.first,
                          grp.second / grp.first, grp.second,
                          (100.0 * static_cast<double>(grp.first)) / static_cast<double>(total)});
    }
    order_rows(t, {{0, true}, {1, false}, {2, false}});
    return t;
}

ResultTable o_bi2(const Ora& o, const ParamView& p) {
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = p.date_ms("endDate") + day_span(1);
    const Id c1 = o.country_named(p.str("country1"));
    const Id c2 = o.country_named(p.str("country2"));
    const Date simEnd = to_date(DateTime{o.g.simulationEndMs});

    std::map<std::tuple<std::string, std::int64_t, std::string, std::int64_t, std::string>,
             std::int64_t>
        groups;
    for (const Message& m : o.g.messages) {
        if (m.creationDate.ms < lo || m.creationDate.ms >= hi) continue;
        const Person& creator = o.person(m.creatorPersonId);
        const Id home = o.home_country(creator.id);
        if (home != c1 && home != c2) continue;
        std::int64_t years = simEnd.year - creator.birthday.year;
        if (simEnd.month < creator.birthday.month ||
            (simEnd.month == creator.birthday.month && simEnd.day < creator.birthday.day)) {
            --years;
        }
        for (Id tag : o.tags_of(m.id)) {
            ++groups[{o.place(home).name, to_date(m.creationDate).month, creator.gender,
                      years / 5, o.tag(tag).name}];
        }
    }
    ResultTable t;
    t.columns = {"country.name", "messageMonth", "person.gender", "ageGroup", "tag.name",
                 "messageCount"};
    for (const auto& [key, count] : groups) {
        if (count <= 100) continue;
        t.rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key),
                          std::get<4>(key), count});
    }
    order_rows(t, {{5, true}, {4, false}, {3, false}, {2, false}, {1, false}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi3(const Ora& o, const ParamView& p) {
    const std::int64_t year1 = p.i64("year");
    const std::int64_t month1 = p.i64("month");
    const std::int64_t year2 = month1 == 12 ? year1 + 1 : year1;
    const std::int64_t month2 = month1 == 12 ? 1 : month1 + 1;

    std::map<Id, std::pair<std::int64_t, std::int64_t>> counts;
    for (const MessageTagEdge& e : o.g.messageTags) {
        const Date d = to_date(o.msg(e.messageId).creationDate);
        if (d.year == year1 && d.month == month1) {
            ++counts[e.tagId].first;
        } else if (d.year == year2 && d.month == month2) {
            ++counts[e.tagId].second;
        }
    }
    ResultTable t;
    t.columns = {"tag.name", "countMonth1", "countMonth2", "diff"};
    for (const auto& [tag, c] : counts) {
        t.rows.push_back({o.tag(tag).name, c.first, c.second, std::abs(c.first - c.second)});
    }
    order_rows(t, {{3, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi4(const Ora& o, const ParamView& p) {
    const Id tagClass = o.class_named(p.str("tagClass"));
    const Id country = o.country_named(p.str("country"));

    ResultTable t;
    t.columns = {"forum.id", "forum.title", "forum.creationDate", "person.id", "postCount"};
    for (const Forum& f : o.g.forums) {
        if (o.home_country(f.moderatorPersonId) != country) continue;
        std::int64_t postCount = 0;
        for (const Message& m : o.g.messages) {
            if (m.kind != MessageKind::Post || m.forumId != f.id) continue;
            for (Id tag : o.tags_of(m.id)) {
                if (o.class_of_tag(tag) == tagClass) {
                    ++postCount;
                    break;
                }
            }
        }
        if (postCount == 0) continue;
        t.rows.push_back({iv(f.id), f.title, f.creationDate.ms, iv(f.moderatorPersonId),
                          postCount});
    }
    order_rows(t, {{4, true}, {0, false}});
    keep_first(t, 20);
    return t;
}

ResultTable o_bi5(const Ora& o, const ParamView& p) {
    const Id country = o.country_named(p.str("country"));

    std::vector<std::pair<std::int64_t, Id>> ranked;
    for (const Forum& f : o.g.forums) {
        std::int64_t members = 0;
        for (const ForumMember& m : f.members) {
            if (o.home_country(m.personId) == country) ++members;
        }
        ranked.push_back({-members, f.id});
    }
    std::sort(ranked.begin(), ranked.end());
    if (ranked.size() > 100) ranked.resize(100);

    std::set<Id> top;
    std::set<Id> members;
    for (const auto& [neg, fid] : ranked) {
        (void)neg;
        top.insert(fid);
        for (const ForumMember& m : o.forum(fid).members) members.insert(m.personId);
    }
    ResultTable t;
    t.columns = {"person.id", "person.firstName", "person.lastName", "person.creationDate",
                 "postCount"};
    for (Id id : members) {
        std::int64_t postCount = 0;
        for (const Message& m : o.g.messages) {
            if (m.kind == MessageKind::Post && m.creatorPersonId == id && top.count(m.forumId)) {
                ++postCount;
            }
        }
        const Person& person = o.person(id);
        t.rows.push_back({iv(id), person.firstName, person.lastName, person.creationDate.ms,
                          postCount});
    }
    order_rows(t, {{4, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi6(const Ora& o, const ParamView& p) {
    const Id tag = o.tag_named(p.str("tag"));
    std::map<Id, std::tuple<std::int64_t, std::int64_t, std::int64_t>> scores;  // msg, like, reply
    for (Id mid : o.with_tag(tag)) {
        const Message& m = o.msg(mid);
        auto& s = scores[m.creatorPersonId];
        std::get<0>(s) += 1;
        std::get<1>(s) += static_cast<std::int64_t>(o.likes_on(mid).size());
        std::get<2>(s) += static_cast<std::int64_t>(o.replies_to(mid).size());
    }
    ResultTable t;
    t.columns = {"person.id", "replyCount", "likeCount", "messageCount", "score"};
    for (const auto& [id, s] : scores) {
        t.rows.push_back({iv(id), std::get<2>(s), std::get<1>(s), std::get<0>(s),
                          std::get<0>(s) + 2 * std::get<2>(s) + 10 * std::get<1>(s)});
    }
    order_rows(t, {{4, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi7(const Ora& o, const ParamView& p) {
    const Id tag = o.tag_named(p.str("tag"));
    std::map<Id, std::set<Id>> likersOf;
    for (Id mid : o.with_tag(tag)) {
        const Id author = o.msg(mid).creatorPersonId;
        auto& likers = likersOf[author];
        for (const auto& [liker, at] : o.likes_on(mid)) {
            (void)at;
            likers.insert(liker);
        }
    }
    ResultTable t;
    t.columns = {"person.id", "authorityScore"};
    for (const auto& [author, likers] : likersOf) {
        std::int64_t score = 0;
        for (Id liker : likers) {
            for (const LikeEdge& e : o.g.likes) {
                if (o.msg(e.messageId).creatorPersonId == liker) ++score;
            }
        }
        t.rows.push_back({iv(author), score});
    }
    order_rows(t, {{1, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi8(const Ora& o, const ParamView& p) {
    const Id tag = o.tag_named(p.str("tag"));
    std::map<Id, std::int64_t> counts;
    for (Id mid : o.with_tag(tag)) {
        for (const Message* reply : o.replies_to(mid)) {
            const std::vector<Id> replyTags = o.tags_of(reply->id);
            if (std::count(replyTags.begin(), replyTags.end(), tag) > 0) continue;
            for (Id rt : replyTags) ++counts[rt];
        }
    }
    ResultTable t;
    t.columns = {"relatedTag.name", "count"};
    for (const auto& [rt, count] : counts) t.rows.push_back({o.tag(rt).name, count});
    order_rows(t, {{1, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi9(const Ora& o, const ParamView& p) {
    const Id tc1 = o.class_named(p.str("tagClass1"));
    const Id tc2 = o.class_named(p.str("tagClass2"));
    const std::int64_t threshold = p.i64("threshold");

    ResultTable t;
    t.columns = {"forum.id", "count1", "count2", "_absDiff"};
    for (const Forum& f : o.g.forums) {
        if (static_cast<std::int64_t>(f.members.size()) <= threshold) continue;
        std::int64_t c1 = 0;
        std::int64_t c2 = 0;
        for (const Message& m : o.g.messages) {
            if (m.kind != MessageKind::Post || m.forumId != f.id) continue;
            bool has1 = false;
            bool has2 = false;
            for (Id tag : o.tags_of(m.id)) {
                if (o.class_of_tag(tag) == tc1) has1 = true;
                if (o.class_of_tag(tag) == tc2) has2 = true;
            }
            if (has1) ++c1;
            if (has2) ++c2;
        }
        if (c1 == 0 || c2 == 0) continue;
        t.rows.push_back({iv(f.id), c1, c2, std::abs(c2 - c1)});
    }
    order_rows(t, {{3, true}, {0, false}});
    keep_first(t, 100);
    drop_last_column(t);
    return t;
}

ResultTable o_bi10(const Ora& o, const ParamView& p) {
    const Id tag = o.tag_named(p.str("tag"));
    const std::int64_t minMs = p.date_ms("date");

    const std::set<Id> interested = o.interested_in(tag);
    std::map<Id, std::int64_t> taggedCount;
    std::set<Id> wroteAfter;
    for (Id mid : o.with_tag(tag)) {
        const Message& m = o.msg(mid);
        ++taggedCount[m.creatorPersonId];
        if (m.creationDate.ms > minMs) wroteAfter.insert(m.creatorPersonId);
    }
    auto scoreOf = [&](Id id) {
        std::int64_t s = interested.count(id) ? 100 : 0;
        const auto it = taggedCount.find(id);
        if (it != taggedCount.end()) s += it->second;
        return s;
    };
    std::set<Id> candidates = interested;
    candidates.insert(wroteAfter.begin(), wroteAfter.end());

    ResultTable t;
    t.columns = {"person.id", "score", "friendsScore", "_combined"};
    for (Id id : candidates) {
        const std::int64_t score = scoreOf(id);
        std::int64_t friendsScore = 0;
        for (Id f : o.friend_ids(id)) friendsScore += scoreOf(f);
        t.rows.push_back({iv(id), score, friendsScore, score + friendsScore});
    }
    order_rows(t, {{3, true}, {0, false}});
    keep_first(t, 100);
    drop_last_column(t);
    return t;
}

ResultTable o_bi11(const Ora& o, const ParamView& p) {
    const Id country = o.country_named(p.str("country"));
    const std::vector<std::string> blacklist = p.str_list("blacklist");

    std::map<std::pair<Id, Id>, std::pair<std::int64_t, std::int64_t>> groups;
    for (const Message& reply : o.g.messages) {
        if (reply.kind != MessageKind::Comment) continue;
        if (o.home_country(reply.creatorPersonId) != country) continue;
        bool banned = false;
        for (const std::string& word : blacklist) {
            if (!word.empty() && reply.content.find(word) != std::string::npos) banned = true;
        }
        if (banned) continue;
        const std::vector<Id> replyTags = o.tags_of(reply.id);
        const std::vector<Id> parentTags = o.tags_of(reply.replyOfMessageId);
        bool shared = false;
        for (Id rt : replyTags) {
            if (std::count(parentTags.begin(), parentTags.end(), rt) > 0) shared = true;
        }
        if (shared) continue;
        const auto likes = static_cast<std::int64_t>(o.likes_on(reply.id).size());
        for (Id rt : replyTags) {
            auto& grp = groups[{reply.creatorPersonId, rt}];
            grp.first += likes;
            grp.second += 1;
        }
    }
    ResultTable t;
    t.columns = {"person.id", "tag.name", "likeCount", "replyCount"};
    for (const auto& [key, grp] : groups) {
        t.rows.push_back({iv(key.first), o.tag(key.second).name, grp.first, grp.second});
    }
    order_rows(t, {{2, true}, {0, false}, {1, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi12(const Ora& o, const ParamView& p) {
    const std::int64_t minMs = p.date_ms("date");
    const std::int64_t threshold = p.i64("likeThreshold");
    ResultTable t;
    t.columns = {"message.id", "message.creationDate", "creator.firstName", "creator.lastName",
                 "likeCount"};
    for (const Message& m : o.g.messages) {
        if (m.creationDate.ms <= minMs) continue;
        const auto likes = static_cast<std::int64_t>(o.likes_on(m.id).size());
        if (likes <= threshold) continue;
        const Person& creator = o.person(m.creatorPersonId);
        t.rows.push_back({iv(m.id), m.creationDate.ms, creator.firstName, creator.lastName,
                          likes});
    }
    order_rows(t, {{4, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi13(const Ora& o, const ParamView& p) {
    const Id country = o.country_named(p.str("country"));
    std::map<std::pair<std::int64_t, std::int64_t>, std::map<std::string, std::int64_t>> groups;
    for (const Message& m : o.g.messages) {
        if (m.countryId != country) continue;
        const Date d = to_date(m.creationDate);
        auto& byName = groups[{d.year, d.month}];
        for (Id tag : o.tags_of(m.id)) ++byName[o.tag(tag).name];
    }
    ResultTable t;
    t.columns = {"year", "month", "popularTags"};
    for (const auto& [ym, byName] : groups) {
        std::vector<std::pair<std::int64_t, std::string>> ranked;
        for (const auto& [name, count] : byName) ranked.push_back({-count, name});
        std::sort(ranked.begin(), ranked.end());
        std::vector<std::string> popular;
        for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) {
            popular.push_back(ranked[i].second + "," + std::to_string(-ranked[i].first));
        }
        t.rows.push_back({ym.first, ym.second, std::move(popular)});
    }
    order_rows(t, {{0, true}, {1, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi14(const Ora& o, const ParamView& p) {
    const std::int64_t lo = p.date_ms("startDate");
    const std::int64_t hi = p.date_ms("endDate") + day_span(1);

    std::map<Id, std::pair<std::int64_t, std::int64_t>> byPerson;  // threads, messages
    for (const Message& m : o.g.messages) {
        if (m.kind != MessageKind::Post || m.creationDate.ms < lo || m.creationDate.ms >= hi) {
            continue;
        }
        auto& c = byPerson[m.creatorPersonId];
        c.first += 1;
        // recursively gather the reply tree
        std::vector<Id> frontier{m.id};
        while (!frontier.empty()) {
            const Id cur = frontier.back();
            frontier.pop_back();
            const Message& node = o.msg(cur);
            if (node.creationDate.ms >= lo && node.creationDate.ms < hi) c.second += 1;
            for (const Message* reply : o.replies_to(cur)) frontier.push_back(reply->id);
        }
    }
    ResultTable t;
    t.columns = {"person.id", "person.firstName", "person.lastName", "threadCount",
                 "messageCount"};
    for (const auto& [id, c] : byPerson) {
        const Person& person = o.person(id);
        t.rows.push_back({iv(id), person.firstName, person.lastName, c.first, c.second});
    }
    order_rows(t, {{4, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi15(const Ora& o, const ParamView& p) {
    const Id country = o.country_named(p.str("country"));
    std::vector<std::pair<Id, std::int64_t>> counts;
    std::int64_t sum = 0;
    for (const Person& person : o.g.persons) {
        if (o.home_country(person.id) != country) continue;
        std::int64_t inCountry = 0;
        for (Id f : o.friend_ids(person.id)) {
            if (o.home_country(f) == country) ++inCountry;
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
    order_rows(t, {{0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi16(const Ora& o, const ParamView& p) {
    const Id root = p.id("personId");
    const Id country = o.country_named(p.str("country"));
    const Id tagClass = o.class_named(p.str("tagClass"));
    const int minLen = static_cast<int>(p.i64("minPathDistance"));
    const int maxLen = static_cast<int>(p.i64("maxPathDistance"));

    std::map<std::pair<Id, Id>, std::int64_t> groups;
    for (Id id : trail_persons(o, root, minLen, maxLen)) {
        if (o.home_country(id) != country) continue;
        for (const Message* m : o.messages_by(id)) {
            const std::vector<Id> tags = o.tags_of(m->id);
            bool qualifies = false;
            for (Id tag : tags) {
                if (o.class_of_tag(tag) == tagClass) qualifies = true;
            }
            if (!qualifies) continue;
            for (Id tag : tags) ++groups[{id, tag}];
        }
    }
    ResultTable t;
    t.columns = {"person.id", "tag.name", "messageCount"};
    for (const auto& [key, count] : groups) {
        t.rows.push_back({iv(key.first), o.tag(key.second).name, count});
    }
    order_rows(t, {{2, true}, {1, false}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi17(const Ora& o, const ParamView& p) {
    const Id country = o.country_named(p.str("country"));
    std::vector<Id> local;
    for (const Person& person : o.g.persons) {
        if (o.home_country(person.id) == country) local.push_back(person.id);
    }
    std::sort(local.begin(), local.end());
    std::set<std::pair<Id, Id>> knows;
    for (const KnowsEdge& e : o.g.knows) knows.insert({e.person1, e.person2});

    std::int64_t triangles = 0;
    for (std::size_t i = 0; i < local.size(); ++i) {
        for (std::size_t j = i + 1; j < local.size(); ++j) {
            if (!knows.count({local[i], local[j]})) continue;
            for (std::size_t k = j + 1; k < local.size(); ++k) {
                if (knows.count({local[i], local[k]}) && knows.count({local[j], local[k]})) {
                    ++triangles;
                }
            }
        }
    }
    ResultTable t;
    t.columns = {"count"};
    t.rows.push_back({triangles});
    return t;
}

ResultTable o_bi18(const Ora& o, const ParamView& p) {
    const std::int64_t minMs = p.date_ms("date");
    const std::int64_t lengthThreshold = p.i64("lengthThreshold");
    const std::vector<std::string> langs = p.str_list("languages");
    const std::set<std::string> languages(langs.begin(), langs.end());

    std::map<Id, std::int64_t> perPerson;
    for (const Person& person : o.g.persons) perPerson[person.id] = 0;
    for (const Message& m : o.g.messages) {
        if (m.content.empty() || m.length >= lengthThreshold || m.creationDate.ms <= minMs) {
            continue;
        }
        if (!languages.count(o.root_of(m.id).language)) continue;
        ++perPerson[m.creatorPersonId];
    }
    std::map<std::int64_t, std::int64_t> histogram;
    for (const auto& [id, count] : perPerson) {
        (void)id;
        ++histogram[count];
    }
    ResultTable t;
    t.columns = {"messageCount", "personCount"};
    for (const auto& [mc, pc] : histogram) t.rows.push_back({mc, pc});
    order_rows(t, {{1, true}, {0, true}});
    return t;
}

ResultTable o_bi19(const Ora& o, const ParamView& p) {
    const std::int64_t minBirthMs = p.date_ms("date");
    const Id tc1 = o.class_named(p.str("tagClass1"));
    const Id tc2 = o.class_named(p.str("tagClass2"));

    std::set<Id> in1, in2;
    for (const Forum& f : o.g.forums) {
        bool has1 = false;
        bool has2 = false;
        for (Id tag : f.tagIds) {
            if (o.class_of_tag(tag) == tc1) has1 = true;
            if (o.class_of_tag(tag) == tc2) has2 = true;
        }
        for (const ForumMember& m : f.members) {
            if (has1) in1.insert(m.personId);
            if (has2) in2.insert(m.personId);
        }
    }

    ResultTable t;
    t.columns = {"person.id", "strangerCount", "interactionCount"};
    for (const Person& person : o.g.persons) {
        if (to_datetime(person.birthday).ms <= minBirthMs) continue;
        std::set<Id> met;
        std::int64_t interactions = 0;
        for (const Message* m : o.messages_by(person.id)) {
            if (m->kind != MessageKind::Comment) continue;
            const Message* anc = &o.msg(m->replyOfMessageId);
            while (true) {
                const Id author = anc->creatorPersonId;
                if (author != person.id && in1.count(author) && in2.count(author) &&
                    !o.direct_knows(person.id, author)) {
                    ++interactions;
                    met.insert(author);
                }
                if (anc->kind == MessageKind::Post) break;
                anc = &o.msg(anc->replyOfMessageId);
            }
        }
        if (interactions == 0) continue;
        t.rows.push_back({iv(person.id), static_cast<std::int64_t>(met.size()), interactions});
    }
    order_rows(t, {{2, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi20(const Ora& o, const ParamView& p) {
    std::vector<std::string> names = p.str_list("tagClasses");
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    ResultTable t;
    t.columns = {"tagClass.name", "messageCount"};
    for (const std::string& name : names) {
        const Id cls = o.class_named(name);
        if (cls == kNoId) continue;
        std::set<Id> messages;
        for (const MessageTagEdge& e : o.g.messageTags) {
            if (o.is_a(o.class_of_tag(e.tagId), cls)) messages.insert(e.messageId);
        }
        t.rows.push_back({name, static_cast<std::int64_t>(messages.size())});
    }
    order_rows(t, {{1, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi21(const Ora& o, const ParamView& p) {
    const Id country = o.country_named(p.str("country"));
    const std::int64_t endMs = p.date_ms("endDate");
    const Date endDate = to_date(DateTime{endMs});

    std::set<Id> zombies;
    for (const Person& person : o.g.persons) {
        if (o.home_country(person.id) != country || person.creationDate.ms >= endMs) continue;
        std::int64_t messageCount = 0;
        for (const Message* m : o.messages_by(person.id)) {
            if (m->creationDate.ms < endMs) ++messageCount;
        }
        const Date since = to_date(person.creationDate);
        const std::int64_t months =
            (endDate.year * 12 + endDate.month) - (since.year * 12 + since.month) + 1;
        if (messageCount < months) zombies.insert(person.id);
    }
    ResultTable t;
    t.columns = {"zombie.id", "zombieLikeCount", "totalLikeCount", "zombieScore"};
    for (Id zombie : zombies) {
        std::int64_t zombieLikes = 0;
        std::int64_t totalLikes = 0;
        for (const LikeEdge& e : o.g.likes) {
            if (o.msg(e.messageId).creatorPersonId != zombie) continue;
            if (o.person(e.personId).creationDate.ms >= endMs) continue;
            ++totalLikes;
            if (zombies.count(e.personId)) ++zombieLikes;
        }
        const double score =
            totalLikes == 0 ? 0.0
                            : static_cast<double>(zombieLikes) / static_cast<double>(totalLikes);
        t.rows.push_back({iv(zombie), zombieLikes, totalLikes, score});
    }
    order_rows(t, {{3, true}, {0, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi22(const Ora& o, const ParamView& p) {
    const Id country1 = o.country_named(p.str("country1"));
    const Id country2 = o.country_named(p.str("country2"));

    std::vector<Id> group1, group2;
    for (const Person& person : o.g.persons) {
        const Id home = o.home_country(person.id);
        if (home == country1) group1.push_back(person.id);
        if (home == country2) group2.push_back(person.id);
    }
    std::sort(group1.begin(), group1.end());
    std::sort(group2.begin(), group2.end());

    std::set<std::pair<Id, Id>> replied;
    for (const Message& m : o.g.messages) {
        if (m.kind == MessageKind::Comment) {
            replied.insert({m.creatorPersonId, o.msg(m.replyOfMessageId).creatorPersonId});
        }
    }
    std::set<std::pair<Id, Id>> liked;
    for (const LikeEdge& e : o.g.likes) {
        liked.insert({e.personId, o.msg(e.messageId).creatorPersonId});
    }

    std::map<Id, std::tuple<std::int64_t, Id, Id>> best;
    for (Id p1 : group1) {
        for (Id p2 : group2) {
            if (p1 == p2) continue;
            std::int64_t s = 0;
            if (replied.count({p1, p2})) s += 4;
            if (replied.count({p2, p1})) s += 1;
            if (o.direct_knows(p1, p2)) s += 15;
            if (liked.count({p1, p2})) s += 10;
            if (liked.count({p2, p1})) s += 1;
            const Id city = o.person(p1).cityId;
            const auto it = best.find(city);
            if (it == best.end() ||
                std::tuple(-s, p1, p2) <
                    std::tuple(-std::get<0>(it->second), std::get<1>(it->second),
                               std::get<2>(it->second))) {
                best[city] = {s, p1, p2};
            }
        }
    }
    ResultTable t;
    t.columns = {"person1.id", "person2.id", "city1.name", "score"};
    for (const auto& [city, b] : best) {
        t.rows.push_back({iv(std::get<1>(b)), iv(std::get<2>(b)), o.place(city).name,
                          std::get<0>(b)});
    }
    order_rows(t, {{3, true}, {0, false}, {1, false}});
    return t;
}

ResultTable o_bi23(const Ora& o, const ParamView& p) {
    const Id home = o.country_named(p.str("country"));
    std::map<std::pair<std::string, std::int64_t>, std::int64_t> groups;
    for (const Message& m : o.g.messages) {
        if (m.countryId == home || o.home_country(m.creatorPersonId) != home) continue;
        ++groups[{o.place(m.countryId).name, to_date(m.creationDate).month}];
    }
    ResultTable t;
    t.columns = {"messageCount", "destination.name", "month"};
    for (const auto& [key, count] : groups) t.rows.push_back({count, key.first, key.second});
    order_rows(t, {{0, true}, {1, false}, {2, false}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi24(const Ora& o, const ParamView& p) {
    const Id tagClass = o.class_named(p.str("tagClass"));
    std::map<std::tuple<std::int64_t, std::int64_t, std::string>,
             std::pair<std::int64_t, std::int64_t>>
        groups;
    for (const Message& m : o.g.messages) {
        bool qualifies = false;
        for (Id tag : o.tags_of(m.id)) {
            if (o.class_of_tag(tag) == tagClass) qualifies = true;
        }
        if (!qualifies) continue;
        const Date d = to_date(m.creationDate);
        auto& grp = groups[{d.year, d.month, o.place(o.continent_up(m.countryId)).name}];
        grp.first += 1;
        grp.second += static_cast<std::int64_t>(o.likes_on(m.id).size());
    }
    ResultTable t;
    t.columns = {"messageCount", "likeCount", "year", "month", "continent.name"};
    for (const auto& [key, grp] : groups) {
        t.rows.push_back({grp.first, grp.second, std::get<0>(key), std::get<1>(key),
                          std::get<2>(key)});
    }
    order_rows(t, {{2, false}, {3, false}, {4, true}});
    keep_first(t, 100);
    return t;
}

ResultTable o_bi25(const Ora& o, const ParamView& p) {
    const std::pair<std::int64_t, std::int64_t> window{p.date_ms("startDate"),
                                                       p.date_ms("endDate") + day_span(1)};
    ResultTable t;
    t.columns = {"personIds", "weight"};
    weighted_paths_table(o, p.id("person1Id"), p.id("person2Id"), reply_weights(o, &window), t);
    return t;
}

}  // namespace

ResultTable oracle_interactive(const GraphSnapshot& g, int query, const Bindings& b) {
    const ParamView p("interactive_" + std::to_string(query), b);
    const Ora o(g);
    switch (query) {
        case 1: return o_ic1(o, p);
        case 2: return o_ic2(o, p);
        case 3: return o_ic3(o, p);
        case 4: return o_ic4(o, p);
        case 5: return o_ic5(o, p);
        case 6: return o_ic6(o, p);
        case 7: return o_ic7(o, p);
        case 8: return o_ic8(o, p);
        case 9: return o_ic9(o, p);
        case 10: return o_ic10(o, p);
        case 11: return o_ic11(o, p);
        case 12: return o_ic12(o, p);
        case 13: return o_ic13(o, p);
        case 14: return o_ic14(o, p);
        default:
            throw ConfigError("unknown interactive query " + std::to_string(query));
    }
}

ResultTable oracle_short(const GraphSnapshot& g, int query, const Bindings& b) {
    const ParamView p("short_" + std::to_string(query), b);
    const Ora o(g);
    switch (query) {
        case 1: return o_is1(o, p);
        case 2: return o_is2(o, p);
        case 3: return o_is3(o, p);
        case 4: return o_is4(o, p);
        case 5: return o_is5(o, p);
        case 6: return o_is6(o, p);
        case 7: return o_is7(o, p);
        default:
            throw ConfigError("unknown short query " + std::to_string(query));
    }
}

ResultTable oracle_bi(const GraphSnapshot& g, int query, const Bindings& b) {
    const ParamView p("bi_" + std::to_string(query), b);
    const Ora o(g);
    switch (query) {
        case 1: return o_bi1(o, p);
        case 2: return o_bi2(o, p);
        case 3: return o_bi3(o, p);
        case 4: return o_bi4(o, p);
        case 5: return o_bi5(o, p);
        case 6: return o_bi6(o, p);
        case 7: return o_bi7(o, p);
        case 8: return o_bi8(o, p);
        case 9: return o_bi9(o, p);
        case 10: return o_bi10(o, p);
        case 11: return o_bi11(o, p);
        case 12: return o_bi12(o, p);
        case 13: return o_bi13(o, p);
        case 14: return o_bi14(o, p);
        case 15: return o_bi15(o, p);
        case 16: return o_bi16(o, p);
        case 17: return o_bi17(o, p);
        case 18: return o_bi18(o, p);
        case 19: return o_bi19(o, p);
        case 20: return o_bi20(o, p);
        case 21: return o_bi21(o, p);
        case 22: return o_bi22(o, p);
        case 23: return o_bi23(o, p);
        case 24: return o_bi24(o, p);
        case 25: return o_bi25(o, p);
        default:
            throw ConfigError("unknown business intelligence query " + std::to_string(query));
    }
}

}  // namespace snb
