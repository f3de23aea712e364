#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "snb/core.hpp"
#include "snb/rng.hpp"
#include "snb/table.hpp"

using namespace snb;

namespace {

bool leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int month_days(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap(y) ? 29 : d[m - 1];
}

Date next_day(Date d) {
    if (++d.day > month_days(d.year, d.month)) {
        d.day = 1;
        if (++d.month > 12) {
            d.month = 1;
            ++d.year;
        }
    }
    return d;
}

}  // namespace

TEST_CASE("civil day conversions agree with a day-stepping oracle") {
    Date d{1970, 1, 1};
    for (std::int64_t day = 0; day < 40000; ++day) {  // through 2079
        CAPTURE(day);
        REQUIRE(days_from_civil(d.year, d.month, d.day) == day);
        const Date back = civil_from_days(day);
        REQUIRE(back == d);
        d = next_day(d);
    }
}

TEST_CASE("civil day conversions handle dates before the epoch") {
    CHECK(days_from_civil(1969, 12, 31) == -1);
    CHECK(civil_from_days(-1) == Date{1969, 12, 31});
    CHECK(civil_from_days(days_from_civil(1900, 2, 28)) == Date{1900, 2, 28});
    CHECK(civil_from_days(days_from_civil(1600, 2, 29)) == Date{1600, 2, 29});
}

TEST_CASE("date validity covers leap rules and month lengths") {
    CHECK(is_valid_date(2024, 2, 29));
    CHECK_FALSE(is_valid_date(2023, 2, 29));
    CHECK_FALSE(is_valid_date(1900, 2, 29));  // century, not divisible by 400
    CHECK(is_valid_date(2000, 2, 29));
    CHECK_FALSE(is_valid_date(2020, 4, 31));
    CHECK_FALSE(is_valid_date(2020, 0, 1));
    CHECK_FALSE(is_valid_date(2020, 13, 1));
    CHECK_FALSE(is_valid_date(2020, 1, 0));
    CHECK(is_valid_date(2020, 12, 31));
}

TEST_CASE("datetime construction and calendar projection") {
    const DateTime t = make_datetime(2012, 6, 15, 13, 45, 30, 250);
    CHECK(t.ms == (days_from_civil(2012, 6, 15) * 86400000LL + 13 * 3600000LL + 45 * 60000LL +
                   30 * 1000LL + 250));
    CHECK(to_date(t) == Date{2012, 6, 15});
    CHECK(to_datetime(Date{2012, 6, 15}).ms == days_from_civil(2012, 6, 15) * 86400000LL);
    // instants before midnight project onto the previous day
    CHECK(to_date(DateTime{to_datetime(Date{2012, 6, 15}).ms - 1}) == Date{2012, 6, 14});
}

TEST_CASE("date and datetime formatting") {
    CHECK(format_date(Date{2012, 6, 5}) == "2012-06-05");
    CHECK(format_date(Date{1987, 12, 31}) == "1987-12-31");
    CHECK(format_datetime(make_datetime(2012, 6, 5, 1, 2, 3, 45)) ==
          "2012-06-05T01:02:03.045+0000");
    CHECK(format_datetime(DateTime{0}) == "1970-01-01T00:00:00.000+0000");
}

TEST_CASE("parsing round-trips and rejects malformed input") {
    CHECK(parse_date("2012-06-05") == Date{2012, 6, 5});
    const DateTime t = make_datetime(2011, 3, 4, 5, 6, 7, 8);
    CHECK(parse_datetime(format_datetime(t)) == t);
    CHECK_THROWS_AS(parse_date("2012/06/05"), SnbError);
    CHECK_THROWS_AS(parse_date("2012-13-05"), SnbError);
    CHECK_THROWS_AS(parse_date("2023-02-29"), SnbError);
    CHECK_THROWS_AS(parse_datetime("2012-06-05"), SnbError);
    CHECK_THROWS_AS(parse_datetime("garbage"), SnbError);
}

TEST_CASE("error taxonomy carries its payload") {
    const UnknownIdError u("person", 42);
    CHECK(u.id() == 42);
    CHECK(std::string(u.what()).find("person") != std::string::npos);
    CHECK(std::string(u.what()).find("42") != std::string::npos);

    const ParseError p("a.csv", 7, "bad field");
    CHECK(p.file() == "a.csv");
    CHECK(p.line() == 7);
    CHECK(p.reason() == "bad field");

    const InsufficientCandidatesError ic("narrow", 3.5);
    CHECK(ic.achieved_band() == doctest::Approx(3.5));

    const MissingParametersError mp("interactive_4");
    CHECK(mp.template_name() == "interactive_4");
}

TEST_CASE("random streams are deterministic and order independent") {
    rng::Stream a(7, rng::Domain::PersonAttr, 11);
    rng::Stream b(7, rng::Domain::PersonAttr, 11);
    for (int i = 0; i < 100; ++i) REQUIRE(a.bits() == b.bits());

    // a fresh stream for the same key replays the same values regardless of
    // what other streams were consumed in between
    rng::Stream noise(7, rng::Domain::PostGen, 3);
    noise.bits();
    rng::Stream c(7, rng::Domain::PersonAttr, 11);
    rng::Stream d(7, rng::Domain::PersonAttr, 11);
    c.bits();
    CHECK(c.bits() == [&] {
        d.bits();
        return d.bits();
    }());
}

TEST_CASE("streams with different keys diverge") {
    rng::Stream a(7, rng::Domain::PersonAttr, 11);
    rng::Stream b(8, rng::Domain::PersonAttr, 11);
    rng::Stream c(7, rng::Domain::PersonDegree, 11);
    rng::Stream d(7, rng::Domain::PersonAttr, 12);
    const auto x = a.bits();
    CHECK(x != b.bits());
    CHECK(x != c.bits());
    CHECK(x != d.bits());
}

TEST_CASE("uniform, below, and range stay inside their bounds") {
    rng::Stream s(3, rng::Domain::TestShuffle, 0);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const double u = s.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const std::uint64_t k = s.below(7);
        REQUIRE(k < 7);
        seen.insert(k);
        const std::int64_t r = s.range(-3, 3);
        REQUIRE(r >= -3);
        REQUIRE(r <= 3);
    }
    CHECK(seen.size() == 7);  // all buckets reachable
    CHECK(s.below(1) == 0);
    CHECK(s.range(5, 5) == 5);
}

TEST_CASE("truncated geometric respects its support and mass function") {
    rng::Stream s(9, rng::Domain::TestShuffle, 1);
    int counts[6] = {};
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const int k = s.truncated_geometric(0.4, 5);
        REQUIRE(k >= 1);
        REQUIRE(k <= 5);
        ++counts[k];
    }
    double total = 0.0;
    for (int k = 1; k <= 5; ++k) total += rng::truncated_geometric_pmf(0.4, 5, k);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (int k = 1; k <= 5; ++k) {
        const double expected = rng::truncated_geometric_pmf(0.4, 5, k) * n;
        CHECK(std::abs(counts[k] - expected) < 5.0 * std::sqrt(expected));
    }
}

TEST_CASE("gaussian draws have roughly standard moments") {
    rng::Stream s(4, rng::Domain::TestShuffle, 2);
    double sum = 0.0, sumSq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double g = s.gaussian();
        sum += g;
        sumSq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sumSq / n - 1.0) < 0.05);
}

TEST_CASE("mix64 avalanches on single-bit flips") {
    double flipped = 0.0;
    int samples = 0;
    for (std::uint64_t x = 1; x < 200; ++x) {
        for (int bit = 0; bit < 64; bit += 7) {
            const std::uint64_t diff = rng::mix64(x) ^ rng::mix64(x ^ (1ULL << bit));
            flipped += std::popcount(diff);
            ++samples;
        }
    }
    const double mean = flipped / samples;
    CHECK(mean > 28.0);
    CHECK(mean < 36.0);
}

TEST_CASE("value comparison orders each alternative") {
    CHECK(compare_values(Value{std::int64_t{1}}, Value{std::int64_t{2}}) < 0);
    CHECK(compare_values(Value{2.5}, Value{2.5}) == 0);
    CHECK(compare_values(Value{std::string("b")}, Value{std::string("a")}) > 0);
    CHECK(compare_values(Value{false}, Value{true}) < 0);
    CHECK(compare_values(Value{std::vector<std::int64_t>{1, 2}},
                         Value{std::vector<std::int64_t>{1, 3}}) < 0);
    CHECK(compare_values(Value{std::vector<std::string>{"x"}},
                         Value{std::vector<std::string>{"x"}}) == 0);
    CHECK_THROWS_AS(compare_values(Value{std::int64_t{1}}, Value{std::string("1")}), SnbError);
}

TEST_CASE("row comparison is lexicographic with shorter-first ties") {
    const Row a{Value{std::int64_t{1}}, Value{std::string("x")}};
    const Row b{Value{std::int64_t{1}}, Value{std::string("y")}};
    CHECK(compare_rows(a, b) < 0);
    CHECK(compare_rows(a, a) == 0);
    CHECK(compare_rows(Row{Value{std::int64_t{1}}}, a) < 0);
}

TEST_CASE("sort_rows applies keys then whole-row tiebreak") {
    ResultTable t;
    t.columns = {"a", "b"};
    t.rows = {
        {Value{std::int64_t{1}}, Value{std::string("c")}},
        {Value{std::int64_t{2}}, Value{std::string("a")}},
        {Value{std::int64_t{1}}, Value{std::string("a")}},
    };
    sort_rows(t, {{0, true}});
    CHECK(std::get<std::int64_t>(t.rows[0][0]) == 2);
    // the two a=1 rows tie on the key; whole-row ascending breaks it
    CHECK(std::get<std::string>(t.rows[1][1]) == "a");
    CHECK(std::get<std::string>(t.rows[2][1]) == "c");

    // input order never shows through
    ResultTable u = t;
    std::reverse(u.rows.begin(), u.rows.end());
    sort_rows(u, {{0, true}});
    CHECK(table_equal(t, u));
}

TEST_CASE("truncate_rows keeps a prefix") {
    ResultTable t;
    t.columns = {"a"};
    for (std::int64_t i = 0; i < 5; ++i) t.rows.push_back({Value{i}});
    truncate_rows(t, 3);
    CHECK(t.rows.size() == 3);
    CHECK(std::get<std::int64_t>(t.rows.back()[0]) == 2);
    truncate_rows(t, 10);
    CHECK(t.rows.size() == 3);
}

TEST_CASE("value formatting is stable") {
    CHECK(format_value(Value{std::int64_t{-7}}) == "-7");
    CHECK(format_value(Value{0.5}) == "0.5");
    CHECK(format_value(Value{true}) == "true");
    CHECK(format_value(Value{false}) == "false");
    CHECK(format_value(Value{std::string("hi")}) == "hi");
    CHECK(format_value(Value{std::vector<std::int64_t>{1, 2, 3}}) == "1;2;3");
    CHECK(format_value(Value{std::vector<std::string>{"a", "b"}}) == "a;b");
    CHECK(format_row(Row{Value{std::int64_t{1}}, Value{std::string("x")}}) == "1|x");
}

TEST_CASE("table_diff pinpoints the first difference") {
    ResultTable a, b;
    a.columns = b.columns = {"n"};
    a.rows = {{Value{std::int64_t{1}}}, {Value{std::int64_t{2}}}};
    b.rows = a.rows;
    CHECK(table_equal(a, b));
    CHECK(table_diff(a, b).empty());
    b.rows[1][0] = Value{std::int64_t{3}};
    CHECK_FALSE(table_equal(a, b));
    CHECK_FALSE(table_diff(a, b).empty());
    b.rows.pop_back();
    CHECK_FALSE(table_equal(a, b));
}
