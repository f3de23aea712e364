#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixture.hpp"
#include "snb/graph.hpp"

using namespace snb;

namespace {

// world + three persons, one forum with a small thread, assorted edges
GraphSnapshot populated() {
    GraphSnapshot g = fx::world();
    g.add_person(fx::make_person(0, "Alice", "Ack", "female", {1985, 3, 4}, fx::ms(2010, 2, 1),
                                 fx::kVienna));
    g.add_person(
        fx::make_person(1, "Bela", "Ban", "male", {1990, 7, 21}, fx::ms(2010, 3, 1), fx::kBudapest));
    g.add_person(
        fx::make_person(2, "Chitra", "Cam", "female", {1988, 1, 2}, fx::ms(2010, 4, 1), fx::kDelhi));

    g.add_knows(0, 1, {fx::ms(2010, 5, 1)}, 1);

    Forum wall = fx::make_forum(100, "Wall of Alice", fx::ms(2010, 2, 2), 0);
    g.add_forum(wall);
    g.add_forum_member(100, 1, {fx::ms(2010, 5, 2)});
    g.add_forum_tag(100, fx::kBeatles);

    g.add_message(fx::make_post(1000, fx::ms(2010, 6, 1), 0, 100, fx::kAustria, "first post"));
    g.add_message(
        fx::make_comment(1001, fx::ms(2010, 6, 2), 1, 1000, fx::kHungary, "nice"));
    g.add_message(fx::make_comment(1002, fx::ms(2010, 6, 3), 0, 1001, fx::kAustria, "thanks"));

    g.add_like(1, 1000, {fx::ms(2010, 6, 4)});
    g.add_interest(0, fx::kElvis);
    g.add_study_at(0, fx::kTuVienna, 2004);
    g.add_work_at(1, fx::kAcme, 2010);
    g.add_message_tag(1000, fx::kBeatles);
    return g;
}

}  // namespace

TEST_CASE("accessors resolve ids and reject unknown ones") {
    const GraphSnapshot g = populated();
    CHECK(g.person(1).firstName == "Bela");
    CHECK(g.message(1001).replyOfMessageId == 1000);
    CHECK(g.forum(100).title == "Wall of Alice");
    CHECK(g.tag(fx::kElvis).name == "Elvis");
    CHECK(g.tag_class(fx::kRock).parentId == fx::kMusic);
    CHECK(g.place(fx::kVienna).partOfId == fx::kAustria);
    CHECK(g.organisation(fx::kAcme).kind == OrgKind::Company);

    CHECK(g.find_person(99) == nullptr);
    CHECK_THROWS_AS(g.person(99), UnknownIdError);
    CHECK_THROWS_AS(g.message(99), UnknownIdError);
    CHECK_THROWS_AS(g.forum(99), UnknownIdError);
    try {
        g.person(99);
    } catch (const UnknownIdError& e) {
        CHECK(e.id() == 99);
    }
}

TEST_CASE("friendships are stored in both directions") {
    const GraphSnapshot g = populated();
    CHECK(g.knows.size() == 2);
    CHECK(g.knows_lookup(0, 1));
    CHECK(g.knows_lookup(1, 0));
    CHECK_FALSE(g.knows_lookup(0, 2));
    REQUIRE(g.friends_of(0).size() == 1);
    CHECK(g.friends_of(0)[0].first == 1);
    CHECK(g.friends_of(0)[0].second.ms == fx::ms(2010, 5, 1));
    CHECK(g.friends_of(1)[0].first == 0);
    CHECK(g.friends_of(2).empty());
}

TEST_CASE("derived adjacency answers the populated fixture") {
    const GraphSnapshot g = populated();
    CHECK(g.messages_by_creator(0) == std::vector<Id>{1000, 1002});
    CHECK(g.posts_in_forum(100) == std::vector<Id>{1000});
    CHECK(g.replies_of(1000) == std::vector<Id>{1001});
    CHECK(g.replies_of(1001) == std::vector<Id>{1002});
    CHECK(g.replies_of(1002).empty());

    REQUIRE(g.likes_of_message(1000).size() == 1);
    CHECK(g.likes_of_message(1000)[0].first == 1);
    REQUIRE(g.likes_by_person(1).size() == 1);
    CHECK(g.likes_by_person(1)[0].first == 1000);

    CHECK(g.tags_of_message(1000) == std::vector<Id>{fx::kBeatles});
    CHECK(g.messages_with_tag(fx::kBeatles) == std::vector<Id>{1000});
    CHECK(g.interests_of(0) == std::vector<Id>{fx::kElvis});
    CHECK(g.persons_with_interest(fx::kElvis) == std::vector<Id>{0});

    REQUIRE(g.forums_of_member(1).size() == 1);
    CHECK(g.forums_of_member(1)[0].first == 100);
    CHECK(g.forums_moderated_by(0) == std::vector<Id>{100});

    REQUIRE(g.study_of(0).size() == 1);
    CHECK(g.study_of(0)[0].universityId == fx::kTuVienna);
    CHECK(g.study_of(0)[0].classYear == 2004);
    REQUIRE(g.work_of(1).size() == 1);
    CHECK(g.work_of(1)[0].companyId == fx::kAcme);
}

TEST_CASE("place hierarchy walks resolve cities, countries, continents") {
    const GraphSnapshot g = populated();
    CHECK(g.country_of_person(0) == fx::kAustria);
    CHECK(g.country_of_person(2) == fx::kIndia);
    CHECK(g.country_of_place(fx::kVienna) == fx::kAustria);
    CHECK(g.country_of_place(fx::kAustria) == fx::kAustria);
    CHECK(g.continent_of_place(fx::kVienna) == fx::kEurope);
    CHECK(g.continent_of_place(fx::kIndia) == fx::kAsia);
}

TEST_CASE("tag class hierarchy") {
    const GraphSnapshot g = populated();
    CHECK(g.tag_class_of(fx::kElvis) == fx::kRock);
    CHECK(g.tag_class_is_a(fx::kRock, fx::kRock));
    CHECK(g.tag_class_is_a(fx::kRock, fx::kMusic));
    CHECK(g.tag_class_is_a(fx::kRock, fx::kThing));
    CHECK_FALSE(g.tag_class_is_a(fx::kMusic, fx::kRock));
    CHECK_FALSE(g.tag_class_is_a(fx::kSport, fx::kMusic));
}

TEST_CASE("root_post walks reply chains to the containing thread") {
    const GraphSnapshot g = populated();
    CHECK(root_post(g, 1000) == std::pair<Id, Id>{1000, 100});
    CHECK(root_post(g, 1001) == std::pair<Id, Id>{1000, 100});
    CHECK(root_post(g, 1002) == std::pair<Id, Id>{1000, 100});
    CHECK_THROWS_AS(root_post(g, 4242), UnknownIdError);
}

TEST_CASE("build_indexes over raw vectors matches mutator-built state") {
    const GraphSnapshot viaMutators = populated();
    GraphSnapshot raw;
    raw.simulationStartMs = viaMutators.simulationStartMs;
    raw.simulationEndMs = viaMutators.simulationEndMs;
    raw.persons = viaMutators.persons;
    raw.messages = viaMutators.messages;
    raw.forums = viaMutators.forums;
    raw.tags = viaMutators.tags;
    raw.tagClasses = viaMutators.tagClasses;
    raw.places = viaMutators.places;
    raw.organisations = viaMutators.organisations;
    raw.knows = viaMutators.knows;
    raw.likes = viaMutators.likes;
    raw.hasInterest = viaMutators.hasInterest;
    raw.studyAt = viaMutators.studyAt;
    raw.workAt = viaMutators.workAt;
    raw.messageTags = viaMutators.messageTags;
    raw.build_indexes();

    CHECK(graph_equal(raw, viaMutators));
    CHECK(raw.messages_by_creator(0) == viaMutators.messages_by_creator(0));
    CHECK(raw.friends_of(1) == viaMutators.friends_of(1));
    CHECK(raw.posts_in_forum(100) == viaMutators.posts_in_forum(100));
}

TEST_CASE("shuffle_storage permutes storage but not meaning") {
    GraphSnapshot g = fx::world();
    for (Id i = 0; i < 8; ++i) {
        g.add_person(fx::make_person(i, "P", "Q", "male", {1990, 1, 1},
                                     fx::ms(2010, 2, 1) + static_cast<std::int64_t>(i), fx::kGraz));
    }
    for (Id i = 1; i < 8; ++i) g.add_knows(0, i, {fx::ms(2011, 1, 1)});
    const GraphSnapshot before = g;

    g.shuffle_storage(99);
    CHECK(graph_equal(before, g));
    CHECK(graph_diff(before, g).empty());
    CHECK(g.friends_of(0).size() == 7);
    CHECK(g.knows_lookup(3, 0));

    std::vector<Id> storageOrder;
    for (const Person& p : g.persons) storageOrder.push_back(p.id);
    std::vector<Id> sorted = storageOrder;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<Id>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(storageOrder != sorted);  // seed 99 actually permutes eight entries
}

TEST_CASE("graph_diff reports the first discrepancy") {
    const GraphSnapshot a = populated();
    GraphSnapshot b = populated();
    CHECK(graph_diff(a, b).empty());

    b.likes.clear();
    b.build_indexes();
    CHECK_FALSE(graph_equal(a, b));
    CHECK(graph_diff(a, b).find("like") != std::string::npos);

    GraphSnapshot c = populated();
    for (Person& p : c.persons) {
        if (p.id == 1) p.lastName = "Other";
    }
    CHECK(graph_diff(a, c).find("person 1") != std::string::npos);
}

TEST_CASE("mutable_forum edits flow into rebuilt indexes") {
    GraphSnapshot g = populated();
    Forum* f = g.mutable_forum(100);
    REQUIRE(f != nullptr);
    f->moderatorPersonId = 1;
    g.build_indexes();
    CHECK(g.forums_moderated_by(0).empty());
    CHECK(g.forums_moderated_by(1) == std::vector<Id>{100});
    CHECK(g.mutable_forum(4711) == nullptr);
}

TEST_CASE("validate_schema accepts the populated fixture") {
    const GraphSnapshot g = populated();
    const auto violations = validate_schema(g);
    for (const Violation& v : violations) CAPTURE(v.kind + " " + v.detail);
    CHECK(validate_schema(g).empty());
}

namespace {

bool has_violation(const GraphSnapshot& g, const std::string& kind) {
    for (const Violation& v : validate_schema(g)) {
        if (v.kind == kind) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("validate_schema flags each class of damage") {
    SUBCASE("duplicate person id") {
        GraphSnapshot g = populated();
        g.persons.push_back(g.persons.front());
        g.build_indexes();
        CHECK(has_violation(g, "DuplicateId"));
    }
    SUBCASE("person with unresolved home city") {
        GraphSnapshot g = populated();
        g.persons.front().cityId = 4711;
        g.build_indexes();
        CHECK(has_violation(g, "DanglingReference"));
    }
    SUBCASE("person homed in a country rather than a city") {
        GraphSnapshot g = populated();
        g.persons.front().cityId = fx::kAustria;
        g.build_indexes();
        CHECK(has_violation(g, "PlaceHierarchy"));
    }
    SUBCASE("person without emails") {
        GraphSnapshot g = populated();
        g.persons.front().emails.clear();
        g.build_indexes();
        CHECK(has_violation(g, "MissingRequiredAttribute"));
    }
    SUBCASE("message with unresolved creator") {
        GraphSnapshot g = populated();
        for (Message& m : g.messages) {
            if (m.id == 1002) m.creatorPersonId = 4711;
        }
        g.build_indexes();
        CHECK(has_violation(g, "DanglingReference"));
    }
    SUBCASE("post carrying both content and image") {
        GraphSnapshot g = populated();
        for (Message& m : g.messages) {
            if (m.id == 1000) m.imageFile = "photo1.jpg";
        }
        g.build_indexes();
        CHECK(has_violation(g, "ContentImageExclusivity"));
    }
    SUBCASE("message length out of sync with content") {
        GraphSnapshot g = populated();
        for (Message& m : g.messages) {
            if (m.id == 1000) m.length = 1;
        }
        g.build_indexes();
        CHECK(has_violation(g, "LengthMismatch"));
    }
    SUBCASE("reply cycle never reaching a post") {
        GraphSnapshot g = populated();
        for (Message& m : g.messages) {
            if (m.id == 1001) m.replyOfMessageId = 1002;  // 1001 <-> 1002
        }
        g.build_indexes();
        CHECK(has_violation(g, "CyclicReplyChain"));
    }
    SUBCASE("post from a non-member") {
        GraphSnapshot g = populated();
        g.messages.push_back(
            fx::make_post(1003, fx::ms(2010, 7, 1), 2, 100, fx::kIndia, "crash the wall"));
        g.build_indexes();
        CHECK(has_violation(g, "NonMemberPoster"));
    }
    SUBCASE("one-directional friendship") {
        GraphSnapshot g = populated();
        g.knows.push_back({0, 2, {fx::ms(2011, 1, 1)}, 1});  // no mirror
        g.build_indexes();
        CHECK(has_violation(g, "AsymmetricKnows"));
    }
    SUBCASE("friendship with self") {
        GraphSnapshot g = populated();
        g.knows.push_back({2, 2, {fx::ms(2011, 1, 1)}, 1});
        g.knows.push_back({2, 2, {fx::ms(2011, 1, 1)}, 1});
        g.build_indexes();
        CHECK(has_violation(g, "SelfKnows"));
    }
    SUBCASE("duplicate like") {
        GraphSnapshot g = populated();
        g.likes.push_back(g.likes.front());
        g.build_indexes();
        CHECK(has_violation(g, "DuplicateEdge"));
    }
    SUBCASE("like on an unresolved message") {
        GraphSnapshot g = populated();
        g.likes.push_back({0, 4711, {fx::ms(2011, 1, 1)}});
        g.build_indexes();
        CHECK(has_violation(g, "DanglingReference"));
    }
    SUBCASE("organisation misplaced") {
        GraphSnapshot g = populated();
        for (Organisation& o : g.organisations) {
            if (o.id == fx::kTuVienna) o.placeId = fx::kAustria;  // university in a country
        }
        g.build_indexes();
        CHECK(has_violation(g, "OrganisationPlacement"));
    }
    SUBCASE("tag class cycle") {
        GraphSnapshot g = populated();
        for (TagClass& tc : g.tagClasses) {
            if (tc.id == fx::kThing) tc.parentId = fx::kRock;
        }
        g.build_indexes();
        CHECK(has_violation(g, "TagClassHierarchy"));
    }
}
