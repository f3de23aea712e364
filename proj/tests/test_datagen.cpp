#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fixture.hpp"
#include "snb/datagen.hpp"

using namespace snb;

namespace {

GeneratorConfig small_config(std::uint64_t seed = 7, std::uint64_t persons = 120) {
    GeneratorConfig cfg;
    cfg.numPersons = persons;
    cfg.seed = seed;
    return cfg;
}

bool streams_equal(const std::vector<UpdateEvent>& a, const std::vector<UpdateEvent>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].t != b[i].t || a[i].td != b[i].td || a[i].opId != b[i].opId) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("config validation rejects out-of-domain fields") {
    GeneratorConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    SUBCASE("no persons") {
        cfg.numPersons = 0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("bad bulk fraction") {
        cfg.bulkFraction = 1.5;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("bad dimension split") {
        cfg.dimensionSplit = {0.5, 0.6, 0.2};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("bad geometric p") {
        cfg.geometricP = 0.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
}

TEST_CASE("generation is a pure function of seed and config") {
    const GenerateResult a = generate(small_config(7));
    const GenerateResult b = generate(small_config(7));
    CHECK(graph_equal(a.snapshot, b.snapshot));
    CHECK(streams_equal(a.stream, b.stream));
    CHECK(a.stats.personIds == b.stats.personIds);
    CHECK(a.stats.friendOfFriendCount == b.stats.friendOfFriendCount);

    const GenerateResult c = generate(small_config(8));
    CHECK_FALSE(graph_equal(a.snapshot, c.snapshot));
}

TEST_CASE("worker count never changes the result") {
    GeneratorConfig one = small_config(11);
    GeneratorConfig four = small_config(11);
    four.workers = 4;
    const GenerateResult a = generate(one);
    const GenerateResult b = generate(four);
    CHECK(graph_equal(a.snapshot, b.snapshot));
    CHECK(streams_equal(a.stream, b.stream));
}

TEST_CASE("generated graphs satisfy the full schema audit across seeds") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        CAPTURE(seed);
        const GenerateResult r = generate(small_config(seed));
        const auto violations = validate_schema(r.snapshot);
        for (const Violation& v : violations) CAPTURE(v.kind + ": " + v.detail);
        REQUIRE(violations.empty());
    }
}

TEST_CASE("entity volumes look like a populated network") {
    const GenerateResult r = generate(small_config(7, 150));
    // bulk snapshot keeps roughly bulkFraction of the persons
    CHECK(r.snapshot.persons.size() > 100);
    CHECK(r.snapshot.persons.size() <= 150);
    CHECK(r.snapshot.messages.size() > r.snapshot.persons.size());
    CHECK(r.snapshot.forums.size() >= r.snapshot.persons.size());  // one wall each
    CHECK_FALSE(r.snapshot.knows.empty());
    CHECK_FALSE(r.stream.empty());
}

TEST_CASE("every person attribute respects its documented domain") {
    const GenerateResult r = generate(small_config(3));
    const GraphSnapshot& g = r.snapshot;
    for (const Person& p : g.persons) {
        CAPTURE(p.id);
        REQUIRE(g.find_place(p.cityId) != nullptr);
        CHECK(g.place(p.cityId).kind == PlaceKind::City);
        CHECK((p.gender == "male" || p.gender == "female"));
        CHECK(is_valid_date(p.birthday.year, p.birthday.month, p.birthday.day));
        CHECK(p.creationDate.ms >= g.simulationStartMs);
        CHECK(p.creationDate.ms < g.simulationEndMs);
        CHECK_FALSE(p.emails.empty());
        CHECK_FALSE(p.speaks.empty());
        CHECK_FALSE(p.firstName.empty());
        CHECK_FALSE(p.lastName.empty());
        // ip prefix comes from the home country's dictionary entry
        CHECK(p.locationIP.find('.') != std::string::npos);
    }
}

TEST_CASE("messages nest correctly in time and structure") {
    const GenerateResult r = generate(small_config(5));
    const GraphSnapshot& g = r.snapshot;
    for (const Message& m : g.messages) {
        CAPTURE(m.id);
        const Person& creator = g.person(m.creatorPersonId);
        CHECK(m.creationDate.ms >= creator.creationDate.ms);
        if (m.is_post()) {
            const Forum& f = g.forum(m.forumId);
            CHECK(m.creationDate.ms >= f.creationDate.ms);
        } else {
            const Message& parent = g.message(m.replyOfMessageId);
            CHECK(m.creationDate.ms >= parent.creationDate.ms);
        }
    }
    for (const Forum& f : g.forums) {
        for (const ForumMember& mem : f.members) {
            CHECK(mem.joinDate.ms >= f.creationDate.ms);
        }
    }
    for (const LikeEdge& e : g.likes) {
        CHECK(e.creationDate.ms >= g.message(e.messageId).creationDate.ms);
    }
}

TEST_CASE("friendship edges stay inside their similarity window") {
    const GeneratorConfig cfg = small_config(7, 200);
    const Dictionaries& dicts = Dictionaries::builtin();
    const StaticWorld world = build_static_world(dicts);
    const PersonGenResult pg = generate_persons(cfg, dicts, world);

    std::vector<KnowsEdge> all;
    for (int dim = 1; dim <= 3; ++dim) {
        const std::vector<KnowsEdge> pass = knows_pass(pg, dim, cfg, all);
        const std::vector<Id> ranking = similarity_ranking(pg, dim, cfg);
        std::map<Id, std::size_t> rank;
        for (std::size_t i = 0; i < ranking.size(); ++i) rank[ranking[i]] = i;

        std::vector<std::int64_t> distances;
        for (const KnowsEdge& e : pass) {
            REQUIRE(e.dimension == dim);
            const auto d = std::abs(static_cast<std::int64_t>(rank[e.person1]) -
                                    static_cast<std::int64_t>(rank[e.person2]));
            REQUIRE(d >= 1);
            REQUIRE(d <= cfg.windowSize);
            distances.push_back(d);
        }
        REQUIRE_FALSE(distances.empty());
        // short distances dominate under the geometric model
        std::sort(distances.begin(), distances.end());
        CHECK(distances[distances.size() / 2] <= cfg.windowSize / 3);
        all.insert(all.end(), pass.begin(), pass.end());
    }

    // passes never duplicate an edge created earlier
    std::set<std::pair<Id, Id>> seen;
    for (const KnowsEdge& e : all) {
        CHECK(seen.insert({std::min(e.person1, e.person2), std::max(e.person1, e.person2)})
                  .second);
    }
}

TEST_CASE("mean degree tracks the configured target") {
    const GeneratorConfig cfg = small_config(9, 300);
    GeneratorConfig full = cfg;
    full.bulkFraction = 1.0;
    const GenerateResult r = generate(full);
    const double meanDegree = static_cast<double>(r.snapshot.knows.size()) /
                              static_cast<double>(r.snapshot.persons.size());
    // half of the lognormal-ish target is acceptable; budgets truncate
    CHECK(meanDegree > cfg.degreeMean * 0.4);
    CHECK(meanDegree < cfg.degreeMean * 2.0);
}

TEST_CASE("flashmob events sit inside the simulation window") {
    const GeneratorConfig cfg = small_config(7);
    const StaticWorld world = build_static_world(Dictionaries::builtin());
    const auto mobs = make_flashmobs(cfg, world);
    CHECK_FALSE(mobs.empty());
    std::set<Id> tagIds;
    for (const Tag& t : world.tags) tagIds.insert(t.id);
    for (const FlashmobEvent& f : mobs) {
        CHECK(f.peakTime.ms >= cfg.simulation_start_ms());
        CHECK(f.peakTime.ms < cfg.simulation_end_ms());
        CHECK(f.intensity > 0.0);
        CHECK(tagIds.count(f.tagId) == 1);
    }
}

TEST_CASE("split produces a timestamp-ordered dependency-safe stream") {
    const GenerateResult r = generate(small_config(13));
    const std::int64_t cut = r.snapshot.simulationStartMs +
                             static_cast<std::int64_t>(
                                 0.9 * static_cast<double>(r.snapshot.simulationEndMs -
                                                           r.snapshot.simulationStartMs));
    for (const Person& p : r.snapshot.persons) CHECK(p.creationDate.ms < cut);
    for (const Message& m : r.snapshot.messages) CHECK(m.creationDate.ms < cut);

    for (std::size_t i = 0; i < r.stream.size(); ++i) {
        const UpdateEvent& e = r.stream[i];
        CAPTURE(i);
        REQUIRE(e.t >= cut);
        REQUIRE(e.td <= e.t);
        REQUIRE(e.opId >= 1);
        REQUIRE(e.opId <= 8);
        if (i > 0) {
            REQUIRE(r.stream[i - 1].t <= e.t);
            if (r.stream[i - 1].t == e.t) REQUIRE(r.stream[i - 1].opId <= e.opId);
        }
    }
}

TEST_CASE("replaying the stream rebuilds the undivided graph") {
    GeneratorConfig cfg = small_config(7, 150);
    GeneratorConfig fullCfg = cfg;
    fullCfg.bulkFraction = 1.0;
    const GenerateResult split = generate(cfg);
    const GenerateResult full = generate(fullCfg);
    CHECK(full.stream.empty());

    GraphSnapshot replayed = split.snapshot;
    for (const UpdateEvent& e : split.stream) apply_update_event(replayed, e);
    const std::string diff = graph_diff(replayed, full.snapshot);
    CAPTURE(diff);
    CHECK(diff.empty());
}

TEST_CASE("curation statistics match a brute-force recount") {
    // hand graph first: known counts
    GraphSnapshot g = fx::world();
    g.add_person(fx::make_person(0, "A", "A", "female", {1990, 1, 1}, fx::ms(2010, 2, 1),
                                 fx::kVienna));
    g.add_person(fx::make_person(1, "B", "B", "male", {1990, 1, 1}, fx::ms(2010, 2, 1),
                                 fx::kGraz));
    g.add_person(fx::make_person(2, "C", "C", "male", {1990, 1, 1}, fx::ms(2010, 2, 1),
                                 fx::kBudapest));
    g.add_person(fx::make_person(3, "D", "D", "male", {1990, 1, 1}, fx::ms(2010, 2, 1),
                                 fx::kDelhi));
    g.add_knows(0, 1, {fx::ms(2010, 3, 1)});
    g.add_knows(1, 2, {fx::ms(2010, 3, 2)});
    Forum f = fx::make_forum(50, "Wall of A", fx::ms(2010, 2, 2), 0);
    g.add_forum(f);
    g.add_forum_member(50, 1, {fx::ms(2010, 3, 3)});
    g.add_message(fx::make_post(500, fx::ms(2010, 4, 1), 0, 50, fx::kAustria, "hello"));
    g.add_message(fx::make_comment(501, fx::ms(2010, 4, 2), 1, 500, fx::kHungary, "hey"));
    g.add_message_tag(500, fx::kBeatles);
    g.add_message_tag(501, fx::kElvis);

    const CurationStats s = compute_curation_stats(g);
    REQUIRE(s.personIds == std::vector<Id>{0, 1, 2, 3});
    CHECK(s.friendCount == std::vector<std::int64_t>{1, 2, 1, 0});
    // distinct persons within two hops
    CHECK(s.friendOfFriendCount == std::vector<std::int64_t>{2, 2, 2, 0});
    // messages written by direct friends
    CHECK(s.friendMessageCount == std::vector<std::int64_t>{1, 1, 1, 0});
    // messages written by the two-hop neighbourhood, start person excluded
    CHECK(s.twoHopMessageCount == std::vector<std::int64_t>{1, 1, 2, 0});
    CHECK(s.totalMessages == 2);
    CHECK(s.messagesByTag.at(fx::kBeatles) == 1);
    CHECK(s.messagesByTag.at(fx::kElvis) == 1);
    CHECK(s.messagesByTagClass.at(fx::kMusic) == 1);
    CHECK(s.messagesByTagClass.at(fx::kRock) == 1);
    CHECK(s.personsByCountry.at(fx::kAustria) == 2);
    CHECK(s.personsByCountry.at(fx::kHungary) == 1);
    CHECK(s.personsByCountry.at(fx::kIndia) == 1);
    CHECK(s.messagesByCountry.at(fx::kAustria) == 1);
    CHECK(s.messagesByCountry.at(fx::kHungary) == 1);
    CHECK(s.messagesByDay.at(fx::ms(2010, 4, 1) / 86400000) == 1);
    CHECK(s.messagesByDay.at(fx::ms(2010, 4, 2) / 86400000) == 1);

    // generated graph second: recount a sample person against the index
    const GenerateResult r = generate(small_config(7));
    const CurationStats rs = compute_curation_stats(r.snapshot);
    REQUIRE(rs.personIds.size() == r.snapshot.persons.size());
    std::int64_t total = 0;
    for (const auto& [day, count] : rs.messagesByDay) {
        (void)day;
        total += count;
    }
    CHECK(total == rs.totalMessages);
    CHECK(rs.totalMessages == static_cast<std::int64_t>(r.snapshot.messages.size()));

    const Id probe = rs.personIds[rs.personIds.size() / 2];
    const std::size_t idx = rs.personIds.size() / 2;
    std::set<Id> friends;
    for (const auto& [fid, since] : r.snapshot.friends_of(probe)) {
        (void)since;
        friends.insert(fid);
    }
    CHECK(rs.friendCount[idx] == static_cast<std::int64_t>(friends.size()));
    std::set<Id> twoHop = friends;
    for (Id fid : friends) {
        for (const auto& [ffid, since] : r.snapshot.friends_of(fid)) {
            (void)since;
            if (ffid != probe) twoHop.insert(ffid);
        }
    }
    CHECK(rs.friendOfFriendCount[idx] == static_cast<std::int64_t>(twoHop.size()));
    std::int64_t friendMessages = 0;
    for (Id fid : friends) {
        friendMessages += static_cast<std::int64_t>(r.snapshot.messages_by_creator(fid).size());
    }
    CHECK(rs.friendMessageCount[idx] == friendMessages);
}

TEST_CASE("bulk fraction controls the cut point") {
    GeneratorConfig cfg = small_config(7);
    cfg.bulkFraction = 0.5;
    const GenerateResult half = generate(cfg);
    const GenerateResult nine = generate(small_config(7));
    CHECK(half.snapshot.persons.size() < nine.snapshot.persons.size());
    CHECK(half.stream.size() > nine.stream.size());
}
