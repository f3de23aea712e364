#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "snb/driver.hpp"

using namespace snb;
namespace fs = std::filesystem;

namespace {

struct Generated {
    GenerateResult gen;
    std::vector<CuratedParameters> params;
};

const Generated& generated() {
    static const Generated d = [] {
        GeneratorConfig cfg;
        cfg.numPersons = 150;
        cfg.seed = 7;
        cfg.bulkFraction = 0.9;
        Generated out{generate(cfg), {}};
        out.params = curate_all(out.gen.snapshot, out.gen.stats, 5, 1);
        return out;
    }();
    return d;
}

// bare-bones parameter sets: scheduling only looks at ids and binding counts
std::vector<CuratedParameters> stub_params(std::size_t bindingsPerQuery) {
    std::vector<CuratedParameters> out;
    for (int q = 1; q <= 14; ++q) {
        CuratedParameters p;
        p.id = {TemplateFamily::Interactive, q};
        for (std::size_t i = 0; i < bindingsPerQuery; ++i) {
            p.bindings.push_back({{"slot", std::to_string(q) + "-" + std::to_string(i)}});
        }
        out.push_back(std::move(p));
    }
    return out;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("snb_driver_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ResultsLogRecord record(const std::string& op, std::int64_t scheduled, std::int64_t actual,
                        std::int64_t durationUs, const std::string& status = "ok") {
    ResultsLogRecord r;
    r.operation = op;
    r.scheduledMs = scheduled;
    r.actualMs = actual;
    r.durationUs = durationUs;
    r.status = status;
    return r;
}

}  // namespace

TEST_CASE("synthetic schedules interleave reads at the documented frequencies") {
    // a virtual clock of one update per second, 2600 updates in total
    const Schedule s = build_schedule({}, {}, stub_params(3), {}, 2'600'000);

    std::map<int, int> perQuery;
    std::int64_t prev = 0;
    for (const ScheduleEntry& e : s) {
        REQUIRE(!e.is_update());
        CHECK(e.scheduledMs >= prev);
        prev = e.scheduledMs;
        ++perQuery[std::get<ReadOperation>(e.operation).query];
    }
    const std::array<int, 14> want{100, 70, 37, 72, 45, 20, 29, 57, 16, 86, 162, 59, 136, 53};
    for (int q = 1; q <= 14; ++q) {
        CAPTURE(q);
        CHECK(perQuery[q] == want[q - 1]);
    }
    CHECK(s.size() == 942);

    // bindings rotate round-robin per query
    std::vector<std::string> ic1;
    for (const ScheduleEntry& e : s) {
        const auto& op = std::get<ReadOperation>(e.operation);
        if (op.query == 1) ic1.push_back(op.bindings.at("slot"));
    }
    REQUIRE(ic1.size() == 100);
    for (std::size_t k = 0; k < ic1.size(); ++k) {
        CHECK(ic1[k] == "1-" + std::to_string(k % 3));
    }

    // the k-th instance lands on the virtual time of update k*freq
    std::size_t seen = 0;
    for (const ScheduleEntry& e : s) {
        if (std::get<ReadOperation>(e.operation).query != 9) continue;
        ++seen;
        CHECK(e.scheduledMs == static_cast<std::int64_t>(seen) * 157 * 1000);
    }
    CHECK(seen == 16);
}

TEST_CASE("real streams keep update order and halve their span at double speed") {
    const Generated& d = generated();
    WorkloadDefinition wd;
    wd.tcr = 1.0;
    const Schedule one = build_schedule(d.gen.snapshot, d.gen.stream, d.params, wd);
    wd.tcr = 2.0;
    const Schedule two = build_schedule(d.gen.snapshot, d.gen.stream, d.params, wd);
    REQUIRE(one.size() == two.size());
    REQUIRE(one.size() > d.gen.stream.size());

    std::int64_t prev = 0;
    std::size_t updates = 0;
    std::vector<std::int64_t> updateTimes;
    for (const ScheduleEntry& e : one) {
        CHECK(e.scheduledMs >= prev);
        prev = e.scheduledMs;
        if (e.is_update()) {
            ++updates;
            updateTimes.push_back(std::get<UpdateEvent>(e.operation).t);
            CHECK(e.dependencyMs <= e.scheduledMs);
        }
    }
    CHECK(updates == d.gen.stream.size());
    CHECK(std::is_sorted(updateTimes.begin(), updateTimes.end()));

    // same operations in the same order, wall times remapped exactly
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].is_update() == two[i].is_update());
        CHECK(two[i].scheduledMs ==
              std::llround(static_cast<double>(one[i].scheduledMs) / 2.0));
        if (!one[i].is_update()) {
            CHECK(std::get<ReadOperation>(one[i].operation).query ==
                  std::get<ReadOperation>(two[i].operation).query);
        }
    }

    // updates dispatch before reads that share their wall time
    for (std::size_t i = 1; i < one.size(); ++i) {
        if (one[i].scheduledMs == one[i - 1].scheduledMs) {
            CHECK(!(one[i].is_update() && !one[i - 1].is_update()));
        }
    }
}

TEST_CASE("schedule construction rejects bad workloads") {
    const Generated& d = generated();
    WorkloadDefinition wd;
    wd.tcr = 0.0;
    CHECK_THROWS_AS(build_schedule(d.gen.snapshot, d.gen.stream, d.params, wd), ConfigError);
    wd.tcr = 1.0;
    wd.frequency[3] = 0;
    CHECK_THROWS_AS(build_schedule(d.gen.snapshot, d.gen.stream, d.params, wd), ConfigError);

    // no updates and no virtual clock
    CHECK_THROWS_AS(build_schedule(d.gen.snapshot, {}, d.params, {}, 0), ConfigError);

    auto params = stub_params(2);
    params.erase(params.begin() + 4);  // drop the fifth complex read
    try {
        build_schedule({}, {}, params, {}, 100'000);
        FAIL("expected MissingParametersError");
    } catch (const MissingParametersError& e) {
        CHECK(e.template_name() == "interactive_5");
    }
}

TEST_CASE("on-time scoring follows the one-second budget and skips warmup") {
    ResultsLog log;
    for (int i = 0; i < 94; ++i) log.push_back(record("interactive_1", 0, i, (i + 1) * 1000));
    for (int i = 94; i < 100; ++i) {
        log.push_back(record("interactive_1", 0, 2000 + i, (i + 1) * 1000));
    }
    // late warmup records must not count against the score
    for (int i = 0; i < 50; ++i) log.push_back(record("interactive_1", 0, 9999, 1, "warmup"));

    ValidityReport r = check_validity(log);
    CHECK(r.scoredOps == 100);
    CHECK(r.onTime == 94);
    CHECK(r.fraction == doctest::Approx(0.94));
    CHECK(!r.pass);

    // one more on-time record tips the run over the threshold
    log.push_back(record("interactive_1", 0, 50, 500));
    r = check_validity(log);
    CHECK(r.scoredOps == 101);
    CHECK(r.onTime == 95);
    CHECK(!r.pass);  // 95/101 is still short
    for (int i = 0; i < 20; ++i) log.push_back(record("interactive_1", 0, 1, 500));
    r = check_validity(log);
    CHECK(r.scoredOps == 121);
    CHECK(r.onTime == 115);
    CHECK(r.pass);  // 115/121 = 0.9504

    SUBCASE("empty and error-bearing logs") {
        const ValidityReport empty = check_validity({});
        CHECK(empty.scoredOps == 0);
        CHECK(empty.pass);
        CHECK(empty.throughputOpsPerSec == 0.0);

        // failed operations still count toward pacing
        ResultsLog bad{record("interactive_2", 0, 0, 10, "UnknownIdError")};
        const ValidityReport b = check_validity(bad);
        CHECK(b.scoredOps == 1);
        CHECK(b.onTime == 1);
    }
}

TEST_CASE("latency percentiles and throughput are computed per template") {
    ResultsLog log;
    for (int i = 0; i < 100; ++i) {
        // actual starts 0..99 ms, durations 1..100 ms
        log.push_back(record("interactive_3", 0, i, (i + 1) * 1000));
    }
    log.push_back(record("short_2", 0, 0, 7000));

    const ValidityReport r = check_validity(log);
    REQUIRE(r.perTemplate.count("interactive_3") == 1);
    const LatencyStats& s = r.perTemplate.at("interactive_3");
    CHECK(s.count == 100);
    CHECK(s.p50Us == 50'000);
    CHECK(s.p95Us == 95'000);
    CHECK(s.p99Us == 99'000);
    const LatencyStats& single = r.perTemplate.at("short_2");
    CHECK(single.count == 1);
    CHECK(single.p50Us == 7000);
    CHECK(single.p95Us == 7000);
    CHECK(single.p99Us == 7000);

    // span runs from the first start to the last end (99 ms + 100 ms)
    CHECK(r.spanMs == 199);
    CHECK(r.throughputOpsPerSec == doctest::Approx(101.0 * 1000.0 / 199.0));
}

TEST_CASE("the executor walks the whole schedule and applies updates in order") {
    const Generated& d = generated();
    WorkloadDefinition wd;
    wd.tcr = 1e9;  // compress the simulation span to effectively zero wall time
    const Schedule s = build_schedule(d.gen.snapshot, d.gen.stream, d.params, wd);

    GraphSnapshot live = d.gen.snapshot;
    const ResultsLog log = run(s, live, wd, 4, 2);

    // the run must not desynchronise the graph from a plain sequential replay
    GraphSnapshot replayed = d.gen.snapshot;
    for (const UpdateEvent& e : d.gen.stream) apply_update_event(replayed, e);
    const std::string diff = graph_diff(live, replayed);
    CAPTURE(diff);
    CHECK(diff.empty());

    // every schedule entry produced its step-0 record, with matching operation
    std::set<std::uint64_t> roots;
    std::size_t chained = 0;
    std::size_t warmups = 0;
    for (const ResultsLogRecord& rec : log) {
        const std::size_t index = rec.recordId / 1000;
        REQUIRE(index < s.size());
        CHECK(rec.actualMs >= rec.scheduledMs);
        CHECK(rec.scheduledMs == s[index].scheduledMs);
        if (rec.recordId % 1000 == 0) {
            roots.insert(rec.recordId);
            if (s[index].is_update()) {
                CHECK(rec.operation ==
                      "update_" + std::to_string(std::get<UpdateEvent>(s[index].operation).opId));
            } else {
                CHECK(rec.operation ==
                      "interactive_" +
                          std::to_string(std::get<ReadOperation>(s[index].operation).query));
            }
        } else {
            CHECK(rec.operation.rfind("short_", 0) == 0);
            ++chained;
        }
        if (rec.status == "warmup") ++warmups;
        if (rec.recordId % 1000 == 0 && rec.status != "warmup" && s[index].is_update()) {
            CHECK(rec.status == "ok");
        }
    }
    CHECK(roots.size() == s.size());
    CHECK(chained > 0);  // complex reads seeded at least one short-read sequence
    CHECK(warmups >= 2);

    // chained short reads come in whole person- or message-rooted sequences
    std::map<std::uint64_t, std::vector<std::string>> byRoot;
    for (const ResultsLogRecord& rec : log) {
        if (rec.recordId % 1000 != 0) {
            byRoot[rec.recordId / 1000].push_back(rec.operation);
        }
    }
    for (auto& [root, ops] : byRoot) {
        CAPTURE(root);
        std::size_t i = 0;
        while (i < ops.size()) {
            if (ops[i] == "short_1") {
                REQUIRE(i + 3 <= ops.size());
                CHECK(ops[i + 1] == "short_2");
                CHECK(ops[i + 2] == "short_3");
                i += 3;
            } else {
                REQUIRE(ops[i] == "short_4");
                REQUIRE(i + 4 <= ops.size());
                CHECK(ops[i + 1] == "short_5");
                CHECK(ops[i + 2] == "short_6");
                CHECK(ops[i + 3] == "short_7");
                i += 4;
            }
        }
    }
}

TEST_CASE("engine errors are logged and the run keeps going") {
    const Generated& d = generated();
    GraphSnapshot g = d.gen.snapshot;
    const Id someone = g.persons.front().id;

    Schedule s;
    ScheduleEntry bad;
    bad.scheduledMs = 0;
    bad.operation = ReadOperation{13, {{"person1Id", "987654321"}, {"person2Id", "987654321"}}};
    s.push_back(bad);
    ScheduleEntry good;
    good.scheduledMs = 0;
    good.operation =
        ReadOperation{13, {{"person1Id", std::to_string(someone)},
                           {"person2Id", std::to_string(someone)}}};
    s.push_back(good);

    WorkloadDefinition wd;
    wd.shortReadInitialProb = 0.0;  // keep the log to the two scheduled reads
    const ResultsLog log = run(s, g, wd, 1, 0);
    REQUIRE(log.size() == 2);
    std::map<std::uint64_t, std::string> status;
    for (const auto& rec : log) status[rec.recordId] = rec.status;
    CHECK(status.at(0) == "UnknownIdError");
    CHECK(status.at(1000) == "ok");

    // warmup relabels even failing operations
    GraphSnapshot g2 = d.gen.snapshot;
    const ResultsLog warm = run(s, g2, wd, 1, 1);
    std::map<std::uint64_t, std::string> wstatus;
    for (const auto& rec : warm) wstatus[rec.recordId] = rec.status;
    CHECK(wstatus.at(0) == "warmup");
    CHECK(wstatus.at(1000) == "ok");
}

TEST_CASE("validation mode diffs stored expectations row-exactly") {
    const Generated& d = generated();
    const GraphSnapshot& g = d.gen.snapshot;

    std::vector<ValidationRecord> set;
    for (const CuratedParameters& p : d.params) {
        if (p.id.family != TemplateFamily::Interactive) continue;
        if (p.id.number > 3) continue;
        for (const Bindings& b : p.bindings) {
            set.push_back({"interactive", p.id.number, b,
                           oracle_interactive(g, p.id.number, b)});
        }
    }
    const Bindings shortB{{"personId", std::to_string(g.persons.front().id)}};
    set.push_back({"short", 2, shortB, oracle_short(g, 2, shortB)});
    const CuratedParameters* bi4 = nullptr;
    for (const CuratedParameters& p : d.params) {
        if (p.id.family == TemplateFamily::Bi && p.id.number == 4) bi4 = &p;
    }
    REQUIRE(bi4 != nullptr);
    set.push_back({"bi", 4, bi4->bindings.front(),
                   oracle_bi(g, 4, bi4->bindings.front())});

    CHECK(validate_mode(g, set).empty());

    SUBCASE("a corrupted expectation is reported once, by operation") {
        auto broken = set;
        REQUIRE(!broken[0].expected.rows.empty());
        broken[0].expected.rows[0][0] = std::int64_t{999999};
        const std::vector<Mismatch> m = validate_mode(g, broken);
        REQUIRE(m.size() == 1);
        CHECK(m[0].operation == "interactive_1");
        CHECK(m[0].row == 0);
        CHECK(!m[0].detail.empty());
    }
    SUBCASE("unknown families and raising queries are mismatches") {
        std::vector<ValidationRecord> odd;
        odd.push_back({"mystery", 1, {}, {}});
        odd.push_back({"interactive", 1, {}, {}});  // no bindings: raises
        const std::vector<Mismatch> m = validate_mode(g, odd);
        REQUIRE(m.size() == 2);
        CHECK(m[0].operation == "mystery_1");
        CHECK(m[0].detail.find("unknown") != std::string::npos);
        CHECK(m[1].operation == "interactive_1");
        CHECK(m[1].detail.find("MissingParametersError") != std::string::npos);
    }
}

TEST_CASE("results logs survive a write and read cycle") {
    const fs::path dir = fresh_dir("roundtrip");
    ResultsLog log;
    log.push_back(record("interactive_4", 10, 12, 3456));
    log.push_back(record("short_6", 10, 13, 78, "warmup"));
    log.push_back(record("update_7", 20, 20, 9, "DependencyMissingError"));
    log[0].resultRows = 5;

    write_results_log(log, dir);
    std::ifstream in(dir / "results_log.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "operation|scheduled_start_time|actual_start_time|duration_us|result_count|status");

    const ResultsLog back = read_results_log(dir / "results_log.csv");
    REQUIRE(back.size() == log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(back[i].operation == log[i].operation);
        CHECK(back[i].scheduledMs == log[i].scheduledMs);
        CHECK(back[i].actualMs == log[i].actualMs);
        CHECK(back[i].durationUs == log[i].durationUs);
        CHECK(back[i].resultRows == log[i].resultRows);
        CHECK(back[i].status == log[i].status);
    }

    SUBCASE("summaries carry the verdict and per-template latencies") {
        write_summary(check_validity(log), dir);
        std::ifstream sin(dir / "summary.txt");
        std::string text((std::istreambuf_iterator<char>(sin)),
                         std::istreambuf_iterator<char>());
        CHECK(text.find("operations=2") != std::string::npos);  // warmup excluded
        CHECK(text.find("validity=pass") != std::string::npos);
        CHECK(text.find("throughput_ops_per_sec=") != std::string::npos);
        CHECK(text.find("interactive_4|1|3456|3456|3456") != std::string::npos);
    }
    SUBCASE("damaged logs raise parse errors with the line number") {
        std::ofstream out(dir / "results_log.csv", std::ios::app);
        out << "interactive_1|not_a_number|0|0|0|ok\n";
        out.close();
        CHECK_THROWS_AS(read_results_log(dir / "results_log.csv"), ParseError);
        CHECK_THROWS_AS(read_results_log(dir / "absent.csv"), IoError);
    }
    fs::remove_all(dir);
}
