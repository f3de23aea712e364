#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "snb/engine.hpp"

using namespace snb;

namespace {

Value I(std::int64_t v) { return v; }
Value D(double v) { return v; }
Value S(std::string v) { return Value(std::move(v)); }
Value B(bool v) { return v; }
Value LI(std::vector<std::int64_t> v) { return Value(std::move(v)); }
Value LS(std::vector<std::string> v) { return Value(std::move(v)); }

ResultTable both_ic(const GraphSnapshot& g, int q, const Bindings& b) {
    const ResultTable engine = run_interactive(g, q, b);
    const std::string diff = table_diff(engine, oracle_interactive(g, q, b));
    CAPTURE(diff);
    REQUIRE(diff.empty());
    return engine;
}

ResultTable both_is(const GraphSnapshot& g, int q, const Bindings& b) {
    const ResultTable engine = run_short(g, q, b);
    const std::string diff = table_diff(engine, oracle_short(g, q, b));
    CAPTURE(diff);
    REQUIRE(diff.empty());
    return engine;
}

ResultTable both_bi(const GraphSnapshot& g, int q, const Bindings& b) {
    const ResultTable engine = run_bi(g, q, b);
    const std::string diff = table_diff(engine, oracle_bi(g, q, b));
    CAPTURE(diff);
    REQUIRE(diff.empty());
    return engine;
}

void expect(const ResultTable& got, const std::vector<Row>& rows) {
    ResultTable want;
    want.columns = got.columns;
    want.rows = rows;
    const std::string diff = table_diff(got, want);
    CAPTURE(diff);
    CHECK(diff.empty());
}

}  // namespace

TEST_CASE("inclusive month spans count partial months on both ends") {
    // the canonical example: Jan 31 to Mar 1 spans three months
    CHECK(months_inclusive({2012, 1, 31}, {2012, 3, 1}) == 3);
    CHECK(months_inclusive({2012, 5, 10}, {2012, 5, 10}) == 1);
    CHECK(months_inclusive({2011, 12, 31}, {2012, 1, 1}) == 2);
    CHECK(months_inclusive({2010, 1, 1}, {2012, 1, 1}) == 25);
    CHECK(months_inclusive({2012, 2, 29}, {2012, 3, 1}) == 2);
}

TEST_CASE("friendship path length distinguishes self, reachable, unreachable") {
    GraphSnapshot g = fx::world();
    for (Id i = 1; i <= 4; ++i) {
        g.add_person(fx::make_person(i, "P", "Q", "female", {1985, 1, 1}, fx::ms(2010, 2, 1),
                                     fx::kVienna));
    }
    g.add_knows(1, 2, {fx::ms(2010, 3, 1)});
    g.add_knows(2, 3, {fx::ms(2010, 3, 2)});

    CHECK(shortest_path_length(g, 1, 3) == 2);
    CHECK(shortest_path_length(g, 3, 1) == 2);
    CHECK(shortest_path_length(g, 1, 1) == 0);
    CHECK(shortest_path_length(g, 1, 4) == -1);

    expect(both_ic(g, 13, {{"person1Id", "1"}, {"person2Id", "3"}}), {{I(2)}});
    expect(both_ic(g, 13, {{"person1Id", "2"}, {"person2Id", "2"}}), {{I(0)}});
    expect(both_ic(g, 13, {{"person1Id", "1"}, {"person2Id", "4"}}), {{I(-1)}});
}

TEST_CASE("path weights count replies to posts double replies to comments") {
    GraphSnapshot g = fx::world();
    for (Id i = 1; i <= 5; ++i) {
        g.add_person(fx::make_person(i, "P", "Q", "male", {1985, 1, 1}, fx::ms(2010, 2, 1),
                                     fx::kVienna));
    }
    // two hop-shortest routes from 1 to 4: via 2 and via 3
    g.add_knows(1, 2, {fx::ms(2010, 3, 1)});
    g.add_knows(2, 4, {fx::ms(2010, 3, 1)});
    g.add_knows(1, 3, {fx::ms(2010, 3, 1)});
    g.add_knows(3, 4, {fx::ms(2010, 3, 1)});

    Forum wall = fx::make_forum(100, "Wall of P Q", fx::ms(2010, 2, 2), 1);
    g.add_forum(wall);
    for (Id i = 2; i <= 4; ++i) g.add_forum_member(100, i, {fx::ms(2010, 2, 3)});
    g.add_message(fx::make_post(1000, fx::ms(2010, 4, 1), 1, 100, fx::kAustria, "root"));
    // replies to the post by person 2 weigh 1.0 each
    g.add_message(fx::make_comment(1001, fx::ms(2010, 4, 2), 2, 1000, fx::kAustria, "r1"));
    g.add_message(fx::make_comment(1003, fx::ms(2010, 4, 4), 2, 1000, fx::kAustria, "r2"));
    // reply to a comment weighs 0.5
    g.add_message(fx::make_comment(1002, fx::ms(2010, 4, 3), 4, 1001, fx::kAustria, "r3"));

    const auto weights = interaction_weights(g);
    REQUIRE(weights.size() == 2);
    CHECK(weights.at({1, 2}) == 2.0);
    CHECK(weights.at({2, 4}) == 0.5);

    // a forum window that excludes the wall leaves no interactions
    const std::pair<std::int64_t, std::int64_t> excluding{fx::ms(2010, 2, 3),
                                                          fx::ms(2010, 2, 4)};
    CHECK(interaction_weights(g, &excluding).empty());
    const std::pair<std::int64_t, std::int64_t> including{fx::ms(2010, 2, 2),
                                                          fx::ms(2010, 2, 3)};
    CHECK(interaction_weights(g, &including).size() == 2);

    expect(both_ic(g, 14, {{"person1Id", "1"}, {"person2Id", "4"}}),
           {{LI({1, 2, 4}), D(2.5)}, {LI({1, 3, 4}), D(0.0)}});
    expect(both_ic(g, 14, {{"person1Id", "1"}, {"person2Id", "1"}}), {{LI({1}), D(0.0)}});
    expect(both_ic(g, 14, {{"person1Id", "1"}, {"person2Id", "5"}}), {});
}

TEST_CASE("short reads return the documented projections") {
    GraphSnapshot g = fx::world();
    g.add_person(fx::make_person(1, "Alice", "Smith", "female", {1985, 2, 3},
                                 fx::ms(2010, 2, 1), fx::kVienna));
    g.add_person(fx::make_person(2, "Bob", "Toth", "male", {1984, 6, 10}, fx::ms(2010, 3, 1),
                                 fx::kBudapest));
    g.add_person(fx::make_person(3, "Carol", "Rao", "female", {1987, 9, 30},
                                 fx::ms(2010, 4, 1), fx::kDelhi));
    g.add_person(fx::make_person(4, "Dave", "Kumar", "male", {1990, 1, 1}, fx::ms(2010, 5, 1),
                                 fx::kDelhi));
    g.add_knows(1, 2, {fx::ms(2011, 1, 5)});
    g.add_knows(1, 3, {fx::ms(2011, 2, 6)});

    g.add_forum(fx::make_forum(200, "Wall of Alice Smith", fx::ms(2010, 2, 2), 1));
    g.add_forum_member(200, 2, {fx::ms(2011, 1, 6)});
    g.add_forum_member(200, 3, {fx::ms(2011, 1, 7)});
    g.add_message(fx::make_post(2000, fx::ms(2011, 3, 1), 1, 200, fx::kAustria, "hello world"));
    g.add_message(fx::make_comment(2001, fx::ms(2011, 3, 2), 2, 2000, fx::kHungary, "bob reply"));
    g.add_message(
        fx::make_comment(2002, fx::ms(2011, 3, 3), 1, 2001, fx::kAustria, "alice reply"));
    g.add_message(
        fx::make_comment(2003, fx::ms(2011, 3, 4), 3, 2002, fx::kIndia, "carol reply"));
    g.add_message(fx::make_comment(2004, fx::ms(2011, 3, 5), 1, 2002, fx::kAustria, "self reply"));
    g.add_message(fx::make_comment(2005, fx::ms(2011, 3, 6), 4, 2000, fx::kIndia, "dave reply"));
    Message photo = fx::make_post(2006, fx::ms(2011, 3, 7), 2, 200, fx::kHungary, "");
    photo.imageFile = "photo9.jpg";
    photo.length = 0;
    g.add_message(photo);

    SUBCASE("profile") {
        expect(both_is(g, 1, {{"personId", "1"}}),
               {{S("Alice"), S("Smith"), S("1985-02-03"), S("10.0.0.1"), S("Firefox"),
                 I(fx::kVienna), S("female"), I(fx::ms(2010, 2, 1))}});
    }
    SUBCASE("recent messages resolve their thread roots") {
        expect(both_is(g, 2, {{"personId", "1"}}),
               {{I(2004), S("self reply"), I(fx::ms(2011, 3, 5)), I(2000), I(1), S("Alice"),
                 S("Smith")},
                {I(2002), S("alice reply"), I(fx::ms(2011, 3, 3)), I(2000), I(1), S("Alice"),
                 S("Smith")},
                {I(2000), S("hello world"), I(fx::ms(2011, 3, 1)), I(2000), I(1), S("Alice"),
                 S("Smith")}});
    }
    SUBCASE("friends with friendship dates, newest first") {
        expect(both_is(g, 3, {{"personId", "1"}}),
               {{I(3), S("Carol"), S("Rao"), I(fx::ms(2011, 2, 6))},
                {I(2), S("Bob"), S("Toth"), I(fx::ms(2011, 1, 5))}});
    }
    SUBCASE("message content falls back to the image file") {
        expect(both_is(g, 4, {{"messageId", "2000"}}),
               {{I(fx::ms(2011, 3, 1)), S("hello world")}});
        expect(both_is(g, 4, {{"messageId", "2006"}}),
               {{I(fx::ms(2011, 3, 7)), S("photo9.jpg")}});
    }
    SUBCASE("message author") {
        expect(both_is(g, 5, {{"messageId", "2001"}}), {{I(2), S("Bob"), S("Toth")}});
    }
    SUBCASE("containing forum of a nested comment") {
        expect(both_is(g, 6, {{"messageId", "2003"}}),
               {{I(200), S("Wall of Alice Smith"), I(1), S("Alice"), S("Smith")}});
    }
    SUBCASE("replies carry an author-knows flag, false for self-replies") {
        expect(both_is(g, 7, {{"messageId", "2002"}}),
               {{I(2004), S("self reply"), I(fx::ms(2011, 3, 5)), I(1), S("Alice"), S("Smith"),
                 B(false)},
                {I(2003), S("carol reply"), I(fx::ms(2011, 3, 4)), I(3), S("Carol"), S("Rao"),
                 B(true)}});
        expect(both_is(g, 7, {{"messageId", "2000"}}),
               {{I(2005), S("dave reply"), I(fx::ms(2011, 3, 6)), I(4), S("Dave"), S("Kumar"),
                 B(false)},
                {I(2001), S("bob reply"), I(fx::ms(2011, 3, 2)), I(2), S("Bob"), S("Toth"),
                 B(true)}});
    }
}

TEST_CASE("likers report latency minutes, ties go to the lowest message") {
    GraphSnapshot g = fx::world();
    g.add_person(fx::make_person(1, "Alice", "Smith", "female", {1985, 2, 3},
                                 fx::ms(2010, 2, 1), fx::kVienna));
    g.add_person(fx::make_person(2, "Bob", "Toth", "male", {1984, 6, 10}, fx::ms(2010, 3, 1),
                                 fx::kGraz));
    g.add_person(fx::make_person(3, "Carol", "Rao", "female", {1987, 9, 30},
                                 fx::ms(2010, 4, 1), fx::kDelhi));
    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_forum(fx::make_forum(300, "Wall of Alice Smith", fx::ms(2010, 2, 2), 1));
    g.add_message(
        fx::make_post(3000, fx::ms(2011, 5, 1, 10, 0), 1, 300, fx::kAustria, "p3000"));
    g.add_message(
        fx::make_post(3001, fx::ms(2011, 5, 1, 11, 0), 1, 300, fx::kAustria, "p3001"));

    // same timestamp on both likes: the lower message id must win
    const std::int64_t bobLike = fx::ms(2011, 5, 1, 12, 5) + 30'500;
    g.add_like(2, 3000, {bobLike});
    g.add_like(2, 3001, {bobLike});
    g.add_like(3, 3001, {fx::ms(2011, 5, 1, 13, 0)});

    expect(both_ic(g, 7, {{"personId", "1"}}),
           {{I(3), S("Carol"), S("Rao"), I(fx::ms(2011, 5, 1, 13, 0)), I(3001), S("p3001"),
             I(120), B(true)},
            {I(2), S("Bob"), S("Toth"), I(bobLike), I(3000), S("p3000"), I(125), B(false)}});
}

TEST_CASE("tag recommendation window is closed-open and history-aware") {
    GraphSnapshot g = fx::world();
    for (Id i = 1; i <= 3; ++i) {
        g.add_person(fx::make_person(i, "P", "Q", "male", {1985, 1, 1}, fx::ms(2010, 2, 1),
                                     fx::kVienna));
    }
    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_forum(fx::make_forum(500, "Wall of P Q", fx::ms(2010, 2, 2), 2));
    g.add_forum(fx::make_forum(501, "Wall of P Q", fx::ms(2010, 2, 2), 3));

    const auto post = [&](Id id, std::int64_t at, Id creator, Id forum,
                          std::vector<Id> tags) {
        g.add_message(fx::make_post(id, at, creator, forum, fx::kAustria, "x"));
        for (Id t : tags) g.add_message_tag(id, t);
    };
    post(5000, fx::ms(2011, 1, 10), 2, 500, {fx::kBeatles});             // before window
    post(5001, fx::ms(2011, 2, 5), 2, 500, {fx::kBeatles, fx::kElvis});  // in window
    post(5002, fx::ms(2011, 2, 10), 2, 500, {fx::kElvis});               // in window
    post(5003, fx::ms(2011, 3, 20), 2, 500, {fx::kTennis});              // after window
    post(5004, fx::ms(2011, 2, 7), 3, 501, {fx::kTennis});               // stranger
    post(5007, fx::ms(2011, 2, 1), 2, 500, {fx::kElvis});                // at window start
    post(5006, fx::ms(2011, 3, 1), 2, 500, {fx::kElvis});                // at window end
    post(5008, fx::ms(2011, 2, 15), 2, 500, {fx::kTennis});              // in window
    // comments with tags never count
    Message c = fx::make_comment(5005, fx::ms(2011, 2, 8), 2, 5000, fx::kAustria, "c");
    g.add_message(c);
    g.add_message_tag(5005, fx::kTennis);

    expect(both_ic(g, 4,
                   {{"personId", "1"}, {"startDate", "2011-02-01"}, {"durationDays", "28"}}),
           {{S("Elvis"), I(3)}, {S("Tennis"), I(1)}});
}

TEST_CASE("interest similarity scores common minus uncommon posts") {
    GraphSnapshot g = fx::world();
    const auto person = [&](Id id, const char* f, const char* l, const char* gender, Date b,
                            Id city) {
        g.add_person(fx::make_person(id, f, l, gender, b, fx::ms(2010, 2, 1), city));
    };
    person(1, "Start", "Person", "female", {1980, 1, 1}, fx::kVienna);
    person(2, "Friend", "Direct", "male", {1981, 1, 1}, fx::kGraz);
    person(5, "Eva", "Low", "female", {1984, 5, 21}, fx::kGraz);     // window edge, in
    person(6, "Finn", "High", "male", {1990, 6, 21}, fx::kVienna);   // window edge, in
    person(7, "Gabi", "Out", "female", {1985, 5, 20}, fx::kVienna);  // day before window
    person(8, "Hugo", "Out", "male", {1988, 6, 22}, fx::kVienna);    // day after window
    person(9, "Ida", "Near", "female", {1985, 5, 25}, fx::kVienna);  // friend, excluded
    person(10, "Jon", "Dec", "male", {1991, 12, 25}, fx::kVienna);
    person(11, "Kim", "Jan", "female", {1990, 1, 21}, fx::kVienna);
    person(12, "Lea", "Jan", "female", {1993, 1, 22}, fx::kVienna);

    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_knows(1, 9, {fx::ms(2010, 6, 1)});
    for (Id fof : {5, 6, 7, 8, 9, 10, 11, 12}) {
        g.add_knows(2, static_cast<Id>(fof), {fx::ms(2010, 6, 2)});
    }
    g.add_interest(1, fx::kBeatles);

    g.add_forum(fx::make_forum(400, "Wall of Eva Low", fx::ms(2010, 2, 2), 5));
    g.add_forum(fx::make_forum(401, "Wall of Finn High", fx::ms(2010, 2, 2), 6));
    const auto post = [&](Id id, Id creator, Id forum, std::vector<Id> tags) {
        g.add_message(fx::make_post(id, fx::ms(2011, 1, 10), creator, forum, fx::kAustria, "x"));
        for (Id t : tags) g.add_message_tag(id, t);
    };
    post(4000, 5, 400, {fx::kBeatles});  // common
    post(4001, 5, 400, {});              // uncommon
    post(4002, 5, 400, {fx::kElvis});    // uncommon
    post(4010, 6, 401, {fx::kBeatles});  // common

    expect(both_ic(g, 10, {{"personId", "1"}, {"month", "5"}}),
           {{I(6), S("Finn"), S("High"), I(1), S("male"), S("Vienna")},
            {I(5), S("Eva"), S("Low"), I(-1), S("female"), S("Graz")}});
    // December wraps into January of the following month
    expect(both_ic(g, 10, {{"personId", "1"}, {"month", "12"}}),
           {{I(10), S("Jon"), S("Dec"), I(0), S("male"), S("Vienna")},
            {I(11), S("Kim"), S("Jan"), I(0), S("female"), S("Vienna")}});
}

TEST_CASE("job referral filters by company country and strict start year") {
    GraphSnapshot g = fx::world();
    g.organisations.push_back({3, OrgKind::Company, "Zeta", "url/zeta", fx::kAustria});
    g.organisations.push_back({4, OrgKind::Company, "Omega", "url/omega", fx::kHungary});
    g.build_indexes();
    const auto person = [&](Id id, const char* f, const char* l, Id city) {
        g.add_person(fx::make_person(id, f, l, "male", {1980, 1, 1}, fx::ms(2010, 2, 1), city));
    };
    person(1, "Start", "Person", fx::kVienna);
    person(2, "Mid", "Friend", fx::kGraz);
    person(3, "Far", "Friend", fx::kBudapest);
    person(4, "No", "Path", fx::kDelhi);
    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_knows(2, 3, {fx::ms(2010, 6, 2)});
    g.add_work_at(2, fx::kAcme, 2008);
    g.add_work_at(2, 3, 2008);  // Zeta, same year: name breaks the tie descending
    g.add_work_at(3, fx::kAcme, 2005);
    g.add_work_at(3, 4, 1999);  // Omega is in Hungary
    g.add_work_at(4, fx::kAcme, 2000);

    expect(both_ic(g, 11,
                   {{"personId", "1"}, {"countryName", "Austria"}, {"workFromYear", "2009"}}),
           {{I(3), S("Far"), S("Friend"), S("ACME"), I(2005)},
            {I(2), S("Mid"), S("Friend"), S("Zeta"), I(2008)},
            {I(2), S("Mid"), S("Friend"), S("ACME"), I(2008)}});
    expect(both_ic(g, 11,
                   {{"personId", "1"}, {"countryName", "Austria"}, {"workFromYear", "2006"}}),
           {{I(3), S("Far"), S("Friend"), S("ACME"), I(2005)}});
    expect(both_ic(g, 11,
                   {{"personId", "1"}, {"countryName", "Hungary"}, {"workFromYear", "2005"}}),
           {{I(3), S("Far"), S("Friend"), S("Omega"), I(1999)}});
}

TEST_CASE("name search walks at most three steps and formats affiliations") {
    GraphSnapshot g = fx::world();
    const auto person = [&](Id id, const char* f, const char* l, Id city) {
        g.add_person(fx::make_person(id, f, l, "male", {1985, 2, 3}, fx::ms(2010, 2, 1), city));
    };
    person(1, "Zed", "Zero", fx::kVienna);
    person(2, "Emil", "Beta", fx::kGraz);
    person(3, "Emil", "Alpha", fx::kBudapest);
    person(4, "Emil", "Alpha", fx::kDelhi);
    person(5, "Emil", "Omega", fx::kVienna);  // four hops away
    person(6, "Emil", "Gamma", fx::kVienna);  // unreachable
    person(7, "Nope", "Nada", fx::kVienna);   // wrong name
    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_knows(2, 3, {fx::ms(2010, 6, 1)});
    g.add_knows(3, 4, {fx::ms(2010, 6, 1)});
    g.add_knows(4, 5, {fx::ms(2010, 6, 1)});
    g.add_knows(1, 7, {fx::ms(2010, 6, 1)});
    g.add_study_at(3, fx::kTuVienna, 2004);
    g.add_study_at(3, fx::kBme, 2006);
    g.add_work_at(3, fx::kAcme, 2010);

    expect(both_ic(g, 1, {{"personId", "1"}, {"firstName", "Emil"}}),
           {{I(2), S("Beta"), I(1), S("1985-02-03"), I(fx::ms(2010, 2, 1)), S("male"),
             S("Firefox"), S("10.0.0.2"), LS({"Emil2@example.org"}), LS({"en"}), S("Graz"),
             LS({}), LS({})},
            {I(3), S("Alpha"), I(2), S("1985-02-03"), I(fx::ms(2010, 2, 1)), S("male"),
             S("Firefox"), S("10.0.0.3"), LS({"Emil3@example.org"}), LS({"en"}), S("Budapest"),
             LS({"BME,2006,Budapest", "TU Vienna,2004,Vienna"}), LS({"ACME,2010,Austria"})},
            {I(4), S("Alpha"), I(3), S("1985-02-03"), I(fx::ms(2010, 2, 1)), S("male"),
             S("Firefox"), S("10.0.0.4"), LS({"Emil4@example.org"}), LS({"en"}), S("Delhi"),
             LS({}), LS({})}});
}

TEST_CASE("zombie scoring follows the documented month arithmetic") {
    GraphSnapshot g = fx::world();
    const auto person = [&](Id id, const char* f, std::int64_t created, Id city) {
        g.add_person(fx::make_person(id, f, "Z", "male", {1980, 1, 1}, created, city));
    };
    person(1, "Zed", fx::ms(2012, 1, 31), fx::kVienna);    // 3 months, 2 messages: zombie
    person(2, "Yan", fx::ms(2012, 1, 31), fx::kGraz);      // 3 months, 3 messages: not
    person(3, "Wim", fx::ms(2012, 2, 15), fx::kVienna);    // 2 months, 0 messages: zombie
    person(4, "Vik", fx::ms(2012, 3, 2), fx::kGraz);       // created after the end date
    person(5, "Xiu", fx::ms(2012, 1, 1), fx::kDelhi);      // other country

    g.add_forum(fx::make_forum(600, "Wall of Zed Z", fx::ms(2012, 1, 31), 1));
    g.add_forum(fx::make_forum(601, "Wall of Yan Z", fx::ms(2012, 1, 31), 2));
    const auto post = [&](Id id, Id creator, Id forum, std::int64_t at) {
        g.add_message(fx::make_post(id, at, creator, forum, fx::kAustria, "m"));
    };
    post(6000, 1, 600, fx::ms(2012, 2, 10));
    post(6001, 1, 600, fx::ms(2012, 2, 15));
    post(6010, 2, 601, fx::ms(2012, 2, 5));
    post(6011, 2, 601, fx::ms(2012, 2, 10));
    post(6012, 2, 601, fx::ms(2012, 2, 15));

    g.add_like(3, 6000, {fx::ms(2012, 2, 16)});  // zombie liker
    g.add_like(2, 6000, {fx::ms(2012, 2, 17)});  // ordinary liker
    g.add_like(5, 6001, {fx::ms(2012, 2, 18)});  // foreign liker still counts in the total
    g.add_like(4, 6001, {fx::ms(2012, 3, 3)});   // liker profile too new, ignored

    expect(both_bi(g, 21, {{"country", "Austria"}, {"endDate", "2012-03-01"}}),
           {{I(1), I(1), I(3), D(1.0 / 3.0)}, {I(3), I(0), I(0), D(0.0)}});
}

TEST_CASE("cross-country pair scores add up to thirty-one") {
    GraphSnapshot g = fx::world();
    const auto person = [&](Id id, const char* f, Id city) {
        g.add_person(fx::make_person(id, f, "P", "male", {1980, 1, 1}, fx::ms(2010, 2, 1), city));
    };
    person(1, "Aron", fx::kVienna);
    person(2, "Axel", fx::kGraz);
    person(3, "Hana", fx::kBudapest);
    person(4, "Hugo", fx::kBudapest);
    g.add_knows(1, 3, {fx::ms(2010, 6, 1)});

    g.add_forum(fx::make_forum(700, "Wall of Aron P", fx::ms(2010, 2, 2), 1));
    g.add_forum(fx::make_forum(701, "Wall of Hana P", fx::ms(2010, 2, 2), 3));
    g.add_forum_member(700, 3, {fx::ms(2010, 2, 3)});
    g.add_forum_member(701, 1, {fx::ms(2010, 2, 3)});
    g.add_message(fx::make_post(7000, fx::ms(2011, 1, 1), 1, 700, fx::kAustria, "pa"));
    g.add_message(fx::make_post(7001, fx::ms(2011, 1, 2), 3, 701, fx::kHungary, "ph"));
    g.add_message(fx::make_comment(7002, fx::ms(2011, 1, 3), 1, 7001, fx::kAustria, "ca"));
    g.add_message(fx::make_comment(7003, fx::ms(2011, 1, 4), 3, 7000, fx::kHungary, "ch"));
    g.add_like(1, 7001, {fx::ms(2011, 1, 5)});
    g.add_like(3, 7000, {fx::ms(2011, 1, 6)});

    expect(both_bi(g, 22, {{"country1", "Austria"}, {"country2", "Hungary"}}),
           {{I(1), I(3), S("Vienna"), I(31)}, {I(2), I(3), S("Graz"), I(0)}});
    // swapping the countries flips the perspective but keeps the total
    expect(both_bi(g, 22, {{"country1", "Hungary"}, {"country2", "Austria"}}),
           {{I(3), I(1), S("Budapest"), I(31)}});
}

TEST_CASE("trails reuse nodes but never edges, and cap at four hops") {
    GraphSnapshot g = fx::world();
    for (Id i = 1; i <= 4; ++i) {
        g.add_person(fx::make_person(i, "P", "Q", "male", {1980, 1, 1}, fx::ms(2010, 2, 1),
                                     fx::kVienna));
    }
    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_knows(2, 3, {fx::ms(2010, 6, 1)});
    g.add_knows(1, 3, {fx::ms(2010, 6, 1)});
    g.add_knows(3, 4, {fx::ms(2010, 6, 1)});

    const auto sorted = [&](int minLen, int maxLen) {
        std::vector<Id> v = persons_on_trails(g, 1, minLen, maxLen);
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(1, 1) == std::vector<Id>{2, 3});
    CHECK(sorted(2, 2) == std::vector<Id>{2, 3, 4});
    CHECK(sorted(3, 3) == std::vector<Id>{4});
    CHECK(sorted(2, 3) == std::vector<Id>{2, 3, 4});
    CHECK(sorted(1, 4) == std::vector<Id>{2, 3, 4});
    CHECK_THROWS_AS(persons_on_trails(g, 1, 2, 5), RangeTooLargeError);
    CHECK_THROWS_AS(run_bi(g, 16,
                           {{"personId", "1"},
                            {"country", "Austria"},
                            {"tagClass", "Music"},
                            {"minPathDistance", "2"},
                            {"maxPathDistance", "5"}}),
                    RangeTooLargeError);
}

TEST_CASE("triangle counting stays inside one country") {
    GraphSnapshot g = fx::world();
    const auto person = [&](Id id, Id city) {
        g.add_person(fx::make_person(id, "P", "Q", "male", {1980, 1, 1}, fx::ms(2010, 2, 1),
                                     city));
    };
    person(1, fx::kVienna);
    person(2, fx::kGraz);
    person(3, fx::kVienna);
    person(4, fx::kGraz);
    person(5, fx::kDelhi);
    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_knows(2, 3, {fx::ms(2010, 6, 1)});
    g.add_knows(1, 3, {fx::ms(2010, 6, 1)});
    g.add_knows(3, 4, {fx::ms(2010, 6, 1)});
    g.add_knows(2, 4, {fx::ms(2010, 6, 1)});
    g.add_knows(1, 5, {fx::ms(2010, 6, 1)});
    g.add_knows(2, 5, {fx::ms(2010, 6, 1)});

    CHECK(count_triangles(g, fx::kAustria) == 2);
    CHECK(count_triangles(g, fx::kIndia) == 0);
    expect(both_bi(g, 17, {{"country", "Austria"}}), {{I(2)}});
    expect(both_bi(g, 17, {{"country", "India"}}), {{I(0)}});
}

TEST_CASE("inserts verify dependencies and reject duplicates") {
    GraphSnapshot g = fx::world();
    g.add_person(fx::make_person(1, "Alice", "Smith", "female", {1985, 2, 3},
                                 fx::ms(2010, 2, 1), fx::kVienna));
    g.add_forum(fx::make_forum(100, "Wall of Alice Smith", fx::ms(2010, 2, 2), 1));
    g.add_message(fx::make_post(1000, fx::ms(2011, 1, 1), 1, 100, fx::kAustria, "root"));

    const auto event = [](int opId, auto payload) {
        UpdateEvent e;
        e.t = fx::ms(2012, 1, 1);
        e.td = fx::ms(2011, 1, 1);
        e.opId = opId;
        e.payload = std::move(payload);
        return e;
    };

    SUBCASE("person with interests, study, work") {
        InsertPersonPayload pl;
        pl.person = fx::make_person(2, "Bob", "Toth", "male", {1984, 6, 10},
                                    fx::ms(2012, 1, 1), fx::kBudapest);
        pl.interestTagIds = {fx::kBeatles, fx::kTennis};
        pl.study = {{2, fx::kBme, 2003}};
        pl.work = {{2, fx::kAcme, 2010}};
        apply_insert(g, event(1, pl));
        REQUIRE(g.find_person(2) != nullptr);
        CHECK(g.interests_of(2) == std::vector<Id>{fx::kBeatles, fx::kTennis});
        REQUIRE(g.study_of(2).size() == 1);
        CHECK(g.study_of(2)[0].universityId == fx::kBme);
        REQUIRE(g.work_of(2).size() == 1);
        CHECK(g.work_of(2)[0].workFrom == 2010);

        CHECK_THROWS_AS(apply_insert(g, event(1, pl)), SchemaViolationError);
        pl.person.id = 3;
        pl.person.cityId = 999;
        CHECK_THROWS_AS(apply_insert(g, event(1, pl)), DependencyMissingError);
    }
    SUBCASE("likes check the message kind") {
        g.add_person(fx::make_person(2, "Bob", "Toth", "male", {1984, 6, 10},
                                     fx::ms(2010, 3, 1), fx::kBudapest));
        apply_insert(g, event(2, InsertLikePayload{2, 1000, {fx::ms(2012, 1, 1)}}));
        REQUIRE(g.likes_of_message(1000).size() == 1);
        CHECK(g.likes_of_message(1000)[0].first == 2);
        // a post like aimed at a comment id and vice versa
        g.add_message(fx::make_comment(1001, fx::ms(2011, 1, 2), 1, 1000, fx::kAustria, "c"));
        CHECK_THROWS_AS(apply_insert(g, event(2, InsertLikePayload{2, 1001, {fx::ms(2012, 1, 1)}})),
                        DependencyMissingError);
        CHECK_THROWS_AS(apply_insert(g, event(3, InsertLikePayload{2, 1000, {fx::ms(2012, 1, 1)}})),
                        DependencyMissingError);
        apply_insert(g, event(3, InsertLikePayload{2, 1001, {fx::ms(2012, 1, 1)}}));
        CHECK(g.likes_of_message(1001).size() == 1);
        CHECK_THROWS_AS(
            apply_insert(g, event(2, InsertLikePayload{2, 9999, {fx::ms(2012, 1, 1)}})),
            DependencyMissingError);
    }
    SUBCASE("comments attach to posts or comments") {
        InsertCommentPayload toPost;
        toPost.comment = fx::make_comment(1001, fx::ms(2011, 2, 1), 1, 1000, fx::kAustria, "a");
        toPost.tagIds = {};
        toPost.parentIsPost = true;
        apply_insert(g, event(7, toPost));

        InsertCommentPayload toComment;
        toComment.comment =
            fx::make_comment(1002, fx::ms(2011, 2, 2), 1, 1001, fx::kAustria, "b");
        toComment.tagIds = {fx::kBeatles};
        toComment.parentIsPost = false;
        apply_insert(g, event(7, toComment));

        REQUIRE(g.find_message(1002) != nullptr);
        CHECK(g.replies_of(1001) == std::vector<Id>{1002});
        CHECK(root_post(g, 1002) == std::pair<Id, Id>{1000, 100});
        CHECK(g.tags_of_message(1002) == std::vector<Id>{fx::kBeatles});

        CHECK_THROWS_AS(apply_insert(g, event(7, toComment)), SchemaViolationError);
        InsertCommentPayload orphan = toComment;
        orphan.comment.id = 1003;
        orphan.comment.replyOfMessageId = 8888;
        CHECK_THROWS_AS(apply_insert(g, event(7, orphan)), DependencyMissingError);
    }
    SUBCASE("forum, membership, post, knows") {
        InsertForumPayload forum;
        forum.forum = fx::make_forum(101, "Group for Beatles in Vienna",
                                     fx::ms(2012, 1, 1), 1);
        forum.forum.tagIds = {fx::kBeatles};
        apply_insert(g, event(4, forum));
        REQUIRE(g.find_forum(101) != nullptr);

        g.add_person(fx::make_person(2, "Bob", "Toth", "male", {1984, 6, 10},
                                     fx::ms(2010, 3, 1), fx::kBudapest));
        apply_insert(g, event(5, InsertMembershipPayload{101, 2, {fx::ms(2012, 1, 2)}}));
        REQUIRE(g.forum(101).members.size() == 1);
        CHECK(g.forum(101).members[0].personId == 2);
        CHECK_THROWS_AS(
            apply_insert(g, event(5, InsertMembershipPayload{999, 2, {fx::ms(2012, 1, 2)}})),
            DependencyMissingError);

        InsertPostPayload post;
        post.post = fx::make_post(1005, fx::ms(2012, 1, 3), 2, 101, fx::kHungary, "np");
        post.tagIds = {fx::kElvis};
        apply_insert(g, event(6, post));
        CHECK(g.posts_in_forum(101) == std::vector<Id>{1005});
        CHECK(g.tags_of_message(1005) == std::vector<Id>{fx::kElvis});

        apply_insert(g, event(8, InsertKnowsPayload{1, 2, {fx::ms(2012, 1, 4)}}));
        CHECK(g.knows_lookup(1, 2));
        CHECK(g.knows_lookup(2, 1));
        CHECK(g.friends_of(1).size() == 1);
    }
}

TEST_CASE("deleting a person reassigns groups and cascades walls") {
    GraphSnapshot g = fx::world();
    const auto person = [&](Id id, const char* f) {
        g.add_person(fx::make_person(id, f, "One", "male", {1980, 1, 1}, fx::ms(2010, 2, 1),
                                     fx::kVienna));
    };
    person(1, "Mod");
    person(2, "Ben");
    person(3, "Cal");
    person(4, "Dan");
    g.add_knows(1, 2, {fx::ms(2010, 6, 1)});
    g.add_knows(1, 3, {fx::ms(2010, 6, 1)});

    g.add_forum(fx::make_forum(800, "Group for Beatles in Vienna", fx::ms(2010, 12, 1), 1));
    g.add_forum_member(800, 1, {fx::ms(2011, 1, 1)});
    g.add_forum_member(800, 2, {fx::ms(2011, 2, 1)});
    g.add_forum_member(800, 3, {fx::ms(2011, 1, 15)});
    g.add_forum_member(800, 4, {fx::ms(2011, 1, 15)});
    g.add_forum(fx::make_forum(801, "Wall of Mod One", fx::ms(2010, 12, 2), 1));
    g.add_forum_member(801, 2, {fx::ms(2011, 1, 5)});

    g.add_message(fx::make_post(8000, fx::ms(2011, 2, 1), 2, 801, fx::kAustria, "onwall"));
    g.add_message(fx::make_post(8001, fx::ms(2011, 2, 2), 1, 800, fx::kAustria, "ingroup"));
    g.add_message(fx::make_comment(8002, fx::ms(2011, 2, 3), 2, 8001, fx::kAustria, "reply"));
    g.add_like(1, 8000, {fx::ms(2011, 2, 4)});
    g.add_like(2, 8001, {fx::ms(2011, 2, 5)});
    g.add_interest(1, fx::kBeatles);

    const DeletionReport r = delete_person(g, 1);
    CHECK(r.persons == 1);
    CHECK(r.forums == 1);
    CHECK(r.posts == 2);
    CHECK(r.comments == 1);
    CHECK(r.knows == 2);
    CHECK(r.likes == 2);
    CHECK(r.memberships == 2);
    CHECK(r.moderatorsReassigned == 1);
    CHECK(r.total_nodes() == 5);

    CHECK(g.find_person(1) == nullptr);
    CHECK(g.find_forum(801) == nullptr);
    REQUIRE(g.find_forum(800) != nullptr);
    // oldest join date wins the moderator seat, ties to the smaller id
    CHECK(g.forum(800).moderatorPersonId == 3);
    CHECK(g.forum(800).members.size() == 3);
    CHECK(g.find_message(8000) == nullptr);
    CHECK(g.find_message(8001) == nullptr);
    CHECK(g.find_message(8002) == nullptr);
    CHECK(g.knows.empty());
    CHECK(g.likes.empty());
    CHECK(g.hasInterest.empty());

    SUBCASE("a group with no other members cascades instead") {
        GraphSnapshot h = fx::world();
        h.add_person(fx::make_person(1, "Solo", "Mod", "male", {1980, 1, 1},
                                     fx::ms(2010, 2, 1), fx::kVienna));
        h.add_forum(fx::make_forum(900, "Group for Tennis in Graz", fx::ms(2010, 12, 1), 1));
        h.add_forum_member(900, 1, {fx::ms(2011, 1, 1)});
        const DeletionReport rr = delete_person(h, 1);
        CHECK(rr.forums == 1);
        CHECK(rr.moderatorsReassigned == 0);
        CHECK(rr.memberships == 1);
        CHECK(h.find_forum(900) == nullptr);
    }
}

TEST_CASE("message deletion takes the whole reply tree") {
    GraphSnapshot fresh = fx::world();
    fresh.add_person(fx::make_person(1, "Ana", "Post", "female", {1980, 1, 1},
                                     fx::ms(2010, 2, 1), fx::kVienna));
    fresh.add_person(fx::make_person(2, "Bo", "Reply", "male", {1981, 1, 1},
                                     fx::ms(2010, 2, 1), fx::kGraz));
    fresh.add_forum(fx::make_forum(950, "Wall of Ana Post", fx::ms(2010, 2, 2), 1));
    fresh.add_forum_member(950, 2, {fx::ms(2010, 2, 3)});
    fresh.add_message(fx::make_post(9000, fx::ms(2011, 1, 1), 1, 950, fx::kAustria, "p"));
    fresh.add_message(fx::make_comment(9001, fx::ms(2011, 1, 2), 2, 9000, fx::kAustria, "c1"));
    fresh.add_message(fx::make_comment(9002, fx::ms(2011, 1, 3), 1, 9001, fx::kAustria, "c2"));
    fresh.add_like(2, 9001, {fx::ms(2011, 1, 4)});
    fresh.add_message_tag(9002, fx::kBeatles);

    SUBCASE("delete the post") {
        GraphSnapshot g = fresh;
        const DeletionReport r = delete_post(g, 9000);
        CHECK(r.posts == 1);
        CHECK(r.comments == 2);
        CHECK(r.likes == 1);
        CHECK(r.persons == 0);
        CHECK(r.forums == 0);
        CHECK(g.messages.empty());
        CHECK(g.likes.empty());
        CHECK(g.messageTags.empty());
        REQUIRE(g.find_forum(950) != nullptr);
        CHECK(g.posts_in_forum(950).empty());
    }
    SUBCASE("delete a mid-thread comment") {
        GraphSnapshot g = fresh;
        const DeletionReport r = delete_comment(g, 9001);
        CHECK(r.posts == 0);
        CHECK(r.comments == 2);
        CHECK(r.likes == 1);
        CHECK(g.find_message(9000) != nullptr);
        CHECK(g.find_message(9001) == nullptr);
        CHECK(g.find_message(9002) == nullptr);
        CHECK(g.replies_of(9000).empty());
    }
    SUBCASE("kind mismatches are rejected") {
        GraphSnapshot g = fresh;
        CHECK_THROWS_AS(delete_post(g, 9001), SnbError);
        CHECK_THROWS_AS(delete_comment(g, 9000), SnbError);
        CHECK_THROWS_AS(delete_post(g, 4242), SnbError);
    }
    SUBCASE("delete the forum") {
        GraphSnapshot g = fresh;
        const DeletionReport r = delete_forum(g, 950);
        CHECK(r.forums == 1);
        CHECK(r.posts == 1);
        CHECK(r.comments == 2);
        CHECK(r.memberships == 1);
        CHECK(r.likes == 1);
        CHECK(g.forums.empty());
        CHECK(g.messages.empty());
        CHECK_THROWS_AS(delete_forum(g, 950), UnknownIdError);
    }
}

TEST_CASE("query dispatch validates numbers, parameters, and ids") {
    GraphSnapshot g = fx::world();
    g.add_person(fx::make_person(1, "Alice", "Smith", "female", {1985, 2, 3},
                                 fx::ms(2010, 2, 1), fx::kVienna));

    CHECK_THROWS_AS(run_interactive(g, 0, {}), ConfigError);
    CHECK_THROWS_AS(run_interactive(g, 15, {}), ConfigError);
    CHECK_THROWS_AS(run_short(g, 8, {}), ConfigError);
    CHECK_THROWS_AS(run_bi(g, 26, {}), ConfigError);

    try {
        run_interactive(g, 1, {});
        FAIL("expected MissingParametersError");
    } catch (const MissingParametersError& e) {
        // the engine names both the query and the first missing key
        CHECK(e.template_name() == "interactive_1.personId");
    }

    try {
        run_short(g, 1, {{"personId", "424242"}});
        FAIL("expected UnknownIdError");
    } catch (const UnknownIdError& e) {
        CHECK(e.id() == 424242);
    }

    CHECK_THROWS_AS(run_interactive(g, 2, {{"personId", "1"}, {"maxDate", "junk"}}), SnbError);
}
