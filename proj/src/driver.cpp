#include "snb/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <thread>

#include "snb/core.hpp"
#include "snb/rng.hpp"

namespace snb {

namespace {

constexpr std::int64_t kOnTimeBudgetMs = 1000;
constexpr double kPassFraction = 0.95;
constexpr int kMaxChainedSequences = 8;  // continuation odds are 0.1^8 by then

std::string error_name(const SnbError& e) {
    if (dynamic_cast<const UnknownIdError*>(&e)) return "UnknownIdError";
    if (dynamic_cast<const MissingParametersError*>(&e)) return "MissingParametersError";
    if (dynamic_cast<const RangeTooLargeError*>(&e)) return "RangeTooLargeError";
    if (dynamic_cast<const DependencyMissingError*>(&e)) return "DependencyMissingError";
    if (dynamic_cast<const SchemaViolationError*>(&e)) return "SchemaViolationError";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const IoError*>(&e)) return "IoError";
    return "SnbError";
}

std::int64_t wall_ms(std::int64_t simMs, std::int64_t simOrigin, double tcr) {
    return std::llround(static_cast<double>(simMs - simOrigin) / tcr);
}

}  // namespace

Schedule build_schedule(const GraphSnapshot& snapshot, const std::vector<UpdateEvent>& stream,
                        const std::vector<CuratedParameters>& params,
                        const WorkloadDefinition& wd, std::int64_t syntheticSpanMs) {
    (void)snapshot;
    if (wd.tcr <= 0.0) throw ConfigError("time compression ratio must be positive");
    for (int f : wd.frequency) {
        if (f <= 0) throw ConfigError("complex-read frequencies must be positive");
    }

    const CuratedParameters* byQuery[14] = {};
    for (const CuratedParameters& p : params) {
        if (p.id.family == TemplateFamily::Interactive && p.id.number >= 1 &&
            p.id.number <= 14) {
            byQuery[p.id.number - 1] = &p;
        }
    }
    for (int q = 1; q <= 14; ++q) {
        if (byQuery[q - 1] == nullptr || byQuery[q - 1]->bindings.empty()) {
            throw MissingParametersError("interactive_" + std::to_string(q));
        }
    }

    std::size_t updates = stream.size();
    std::vector<std::int64_t> updateWallMs(updates);
    struct Keyed {
        std::int64_t ms;
        int tier;  // updates first on equal times, then reads by (q, k)
        int q;
        std::size_t k;
        ScheduleEntry entry;
    };
    std::vector<Keyed> keyed;

    if (updates == 0) {
        if (syntheticSpanMs <= 0) {
            throw ConfigError("empty update stream needs a synthetic clock span");
        }
        // virtual clock: one update per simulated second
        updates = static_cast<std::size_t>(syntheticSpanMs / 1000);
        updateWallMs.resize(updates);
        for (std::size_t i = 0; i < updates; ++i) {
            updateWallMs[i] = wall_ms(static_cast<std::int64_t>(i + 1) * 1000, 0, wd.tcr);
        }
    } else {
        const std::int64_t origin = stream.front().t;
        for (std::size_t i = 0; i < updates; ++i) {
            ScheduleEntry e;
            e.scheduledMs = wall_ms(stream[i].t, origin, wd.tcr);
            e.dependencyMs = std::max<std::int64_t>(0, wall_ms(stream[i].td, origin, wd.tcr));
            e.operation = stream[i];
            updateWallMs[i] = e.scheduledMs;
            keyed.push_back({e.scheduledMs, 0, 0, i, std::move(e)});
        }
    }

    for (int q = 1; q <= 14; ++q) {
        const std::size_t freq = static_cast<std::size_t>(wd.frequency[q - 1]);
        const auto& bindings = byQuery[q - 1]->bindings;
        for (std::size_t k = 1; k * freq <= updates; ++k) {
            ScheduleEntry e;
            e.scheduledMs = updateWallMs[k * freq - 1];
            e.operation = ReadOperation{q, bindings[(k - 1) % bindings.size()]};
            keyed.push_back({e.scheduledMs, 1, q, k, std::move(e)});
        }
    }

    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.ms, a.tier, a.q, a.k) < std::tie(b.ms, b.tier, b.q, b.k);
    });
    Schedule out;
    out.reserve(keyed.size());
    for (Keyed& k : keyed) out.push_back(std::move(k.entry));
    return out;
}

namespace {

// Ids one complex read hands to the short-read chain.
struct Harvest {
    std::vector<Id> persons;
    std::vector<Id> messages;
};

Id int_cell(const Value& v) { return static_cast<Id>(std::get<std::int64_t>(v)); }

Harvest harvest_interactive(int query, const ResultTable& t) {
    Harvest h;
    for (const Row& row : t.rows) {
        switch (query) {
            case 1:
            case 3:
            case 10:
            case 11:
            case 12:
                h.persons.push_back(int_cell(row[0]));
                break;
            case 14:
                for (std::int64_t id : std::get<std::vector<std::int64_t>>(row[0])) {
                    h.persons.push_back(static_cast<Id>(id));
                }
                break;
            case 2:
            case 9:
                h.messages.push_back(int_cell(row[3]));
                break;
            case 7:
            case 8:
                h.messages.push_back(int_cell(row[4]));
                break;
            default:
                break;  // tag/forum/count shaped results root no sequence
        }
    }
    return h;
}

class Executor {
  public:
    Executor(const Schedule& schedule, GraphSnapshot& g, const WorkloadDefinition& wd,
             int threads, std::size_t warmupOps)
        : schedule_(schedule), g_(g), wd_(wd), warmupOps_(warmupOps) {
        const int workers = std::max(1, threads);
        for (int i = 0; i < workers; ++i) {
            workers_.emplace_back([this] { worker_loop(); });
        }
    }

    ResultsLog execute() {
        start_ = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < schedule_.size(); ++i) {
            const ScheduleEntry& e = schedule_[i];
            wait_until(std::max(e.scheduledMs, e.dependencyMs));
            if (e.is_update()) {
                apply_update(i, e);
            } else {
                std::unique_lock lk(queueMu_);
                queue_.push_back(i);
                queueCv_.notify_one();
            }
        }
        {
            std::unique_lock lk(queueMu_);
            done_ = true;
            queueCv_.notify_all();
        }
        for (std::thread& t : workers_) t.join();
        return std::move(log_);
    }

  private:
    void wait_until(std::int64_t offsetMs) {
        std::this_thread::sleep_until(start_ + std::chrono::milliseconds(offsetMs));
    }

    std::int64_t now_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

    void append(ResultsLogRecord rec) {
        std::lock_guard lk(logMu_);
        log_.push_back(std::move(rec));
    }

    void apply_update(std::size_t index, const ScheduleEntry& e) {
        const UpdateEvent& ev = std::get<UpdateEvent>(e.operation);
        ResultsLogRecord rec;
        rec.recordId = index * 1000;
        rec.operation = "update_" + std::to_string(ev.opId);
        rec.scheduledMs = e.scheduledMs;
        rec.actualMs = now_ms();
        const auto begin = std::chrono::steady_clock::now();
        rec.status = "ok";
        try {
            std::unique_lock lk(graphMu_);
            apply_insert(g_, ev);
        } catch (const SnbError& err) {
            rec.status = error_name(err);
        }
        rec.durationUs = std::chrono::duration_cast<std::chrono::microseconds>(
                             std::chrono::steady_clock::now() - begin)
                             .count();
        if (index < warmupOps_) rec.status = "warmup";
        append(std::move(rec));
    }

    void worker_loop() {
        while (true) {
            std::size_t index;
            {
                std::unique_lock lk(queueMu_);
                queueCv_.wait(lk, [this] { return done_ || !queue_.empty(); });
                if (queue_.empty()) return;
                index = queue_.front();
                queue_.pop_front();
            }
            run_read(index);
        }
    }

    ResultTable timed_read(const char* family, int query, const Bindings& b,
                           std::size_t scheduleIndex, int step, std::int64_t scheduledMs) {
        ResultsLogRecord rec;
        rec.recordId = scheduleIndex * 1000 + static_cast<std::uint64_t>(step);
        rec.operation = std::string(family) + "_" + std::to_string(query);
        rec.scheduledMs = scheduledMs;
        rec.actualMs = now_ms();
        const auto begin = std::chrono::steady_clock::now();
        ResultTable table;
        rec.status = "ok";
        try {
            std::shared_lock lk(graphMu_);
            table = std::string(family) == "interactive" ? run_interactive(g_, query, b)
                                                         : run_short(g_, query, b);
        } catch (const SnbError& err) {
            rec.status = error_name(err);
        }
        rec.durationUs = std::chrono::duration_cast<std::chrono::microseconds>(
                             std::chrono::steady_clock::now() - begin)
                             .count();
        rec.resultRows = table.rows.size();
        if (scheduleIndex < warmupOps_) rec.status = "warmup";
        append(std::move(rec));
        return table;
    }

    void run_read(std::size_t index) {
        const ScheduleEntry& e = schedule_[index];
        const ReadOperation& op = std::get<ReadOperation>(e.operation);
        const ResultTable table =
            timed_read("interactive", op.query, op.bindings, index, 0, e.scheduledMs);

        rng::Stream chain(wd_.seed, rng::Domain::DriverChain, static_cast<std::uint64_t>(index));
        Harvest pool = harvest_interactive(op.query, table);
        double prob = wd_.shortReadInitialProb;
        int step = 1;

        for (int seq = 0; seq < kMaxChainedSequences; ++seq) {
            const bool personRooted = !pool.persons.empty();
            if (!personRooted && pool.messages.empty()) break;
            if (chain.uniform() >= prob) break;

            Harvest next;
            if (personRooted) {
                const Id root = pool.persons[chain.below(pool.persons.size())];
                const Bindings b{{"personId", std::to_string(root)}};
                for (int sq = 1; sq <= 3; ++sq) {
                    const ResultTable t =
                        timed_read("short", sq, b, index, step++, e.scheduledMs);
                    for (const Row& row : t.rows) {
                        if (sq == 2) next.messages.push_back(int_cell(row[0]));
                        if (sq == 3) next.persons.push_back(int_cell(row[0]));
                    }
                }
            } else {
                const Id root = pool.messages[chain.below(pool.messages.size())];
                const Bindings b{{"messageId", std::to_string(root)}};
                for (int sq = 4; sq <= 7; ++sq) {
                    const ResultTable t =
                        timed_read("short", sq, b, index, step++, e.scheduledMs);
                    for (const Row& row : t.rows) {
                        if (sq == 5) next.persons.push_back(int_cell(row[0]));
                        if (sq == 7) next.persons.push_back(int_cell(row[3]));
                    }
                }
            }
            pool = std::move(next);
            prob *= wd_.shortReadDecay;
        }
    }

    const Schedule& schedule_;
    GraphSnapshot& g_;
    const WorkloadDefinition& wd_;
    const std::size_t warmupOps_;

    std::chrono::steady_clock::time_point start_;
    std::shared_mutex graphMu_;
    std::mutex logMu_;
    ResultsLog log_;

    std::mutex queueMu_;
    std::condition_variable queueCv_;
    std::deque<std::size_t> queue_;
    bool done_ = false;
    std::vector<std::thread> workers_;
};

}  // namespace

ResultsLog run(const Schedule& schedule, GraphSnapshot& g, const WorkloadDefinition& wd,
               int threads, std::size_t warmupOps) {
    Executor ex(schedule, g, wd, threads, warmupOps);
    return ex.execute();
}

namespace {

std::int64_t percentile(const std::vector<std::int64_t>& sorted, double p) {
    if (sorted.empty()) return 0;
    const auto rank = static_cast<std::size_t>(
        std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
    return sorted[std::min(sorted.size(), std::max<std::size_t>(rank, 1)) - 1];
}

}  // namespace

ValidityReport check_validity(const ResultsLog& log) {
    ValidityReport r;
    std::map<std::string, std::vector<std::int64_t>> durations;
    std::int64_t firstMs = 0;
    std::int64_t lastMs = 0;
    bool any = false;
    for (const ResultsLogRecord& rec : log) {
        if (rec.status == "warmup") continue;
        ++r.scoredOps;
        if (rec.actualMs - rec.scheduledMs < kOnTimeBudgetMs) ++r.onTime;
        durations[rec.operation].push_back(rec.durationUs);
        const std::int64_t endMs = rec.actualMs + rec.durationUs / 1000;
        if (!any || rec.actualMs < firstMs) firstMs = rec.actualMs;
        if (!any || endMs > lastMs) lastMs = endMs;
        any = true;
    }
    if (r.scoredOps > 0) {
        r.fraction = static_cast<double>(r.onTime) / static_cast<double>(r.scoredOps);
        r.spanMs = std::max<std::int64_t>(lastMs - firstMs, 1);
        r.throughputOpsPerSec =
            static_cast<double>(r.scoredOps) * 1000.0 / static_cast<double>(r.spanMs);
    }
    r.pass = r.fraction >= kPassFraction;
    for (auto& [op, us] : durations) {
        std::sort(us.begin(), us.end());
        r.perTemplate[op] = {us.size(), percentile(us, 50), percentile(us, 95),
                             percentile(us, 99)};
    }
    return r;
}

std::vector<Mismatch> validate_mode(const GraphSnapshot& g,
                                    const std::vector<ValidationRecord>& validationSet) {
    std::vector<Mismatch> out;
    for (const ValidationRecord& rec : validationSet) {
        const std::string op = rec.family + "_" + std::to_string(rec.query);
        ResultTable actual;
        try {
            if (rec.family == "interactive") {
                actual = run_interactive(g, rec.query, rec.bindings);
            } else if (rec.family == "short") {
                actual = run_short(g, rec.query, rec.bindings);
            } else if (rec.family == "bi") {
                actual = run_bi(g, rec.query, rec.bindings);
            } else {
                out.push_back({op, 0, "unknown query family " + rec.family});
                continue;
            }
        } catch (const SnbError& e) {
            out.push_back({op, 0, std::string("query raised ") + error_name(e)});
            continue;
        }
        if (table_equal(actual, rec.expected)) continue;
        std::size_t row = std::min(actual.rows.size(), rec.expected.rows.size());
        for (std::size_t i = 0; i < row; ++i) {
            if (compare_rows(actual.rows[i], rec.expected.rows[i]) != 0) {
                row = i;
                break;
            }
        }
        out.push_back({op, row, table_diff(actual, rec.expected)});
    }
    return out;
}

void write_results_log(const ResultsLog& log, const std::filesystem::path& resultsDir) {
    std::error_code ec;
    std::filesystem::create_directories(resultsDir, ec);
    if (ec) throw IoError("cannot create " + resultsDir.string() + ": " + ec.message());
    std::ofstream out(resultsDir / "results_log.csv", std::ios::binary);
    if (!out) throw IoError("cannot open " + (resultsDir / "results_log.csv").string());
    out << "operation|scheduled_start_time|actual_start_time|duration_us|result_count|status\n";
    for (const ResultsLogRecord& rec : log) {
        out << rec.operation << '|' << rec.scheduledMs << '|' << rec.actualMs << '|'
            << rec.durationUs << '|' << rec.resultRows << '|' << rec.status << '\n';
    }
    if (!out) throw IoError("write failed for results_log.csv");
}

ResultsLog read_results_log(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(file.string(), 1, "missing header");
    ResultsLog log;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const std::size_t next = line.find('|', start);
            f.push_back(line.substr(start, next - start));
            if (next == std::string::npos) break;
            start = next + 1;
        }
        if (f.size() != 6) throw ParseError(file.string(), lineNo, "expected 6 fields");
        try {
            ResultsLogRecord rec;
            rec.recordId = log.size();
            rec.operation = f[0];
            rec.scheduledMs = std::stoll(f[1]);
            rec.actualMs = std::stoll(f[2]);
            rec.durationUs = std::stoll(f[3]);
            rec.resultRows = static_cast<std::size_t>(std::stoull(f[4]));
            rec.status = f[5];
            log.push_back(std::move(rec));
        } catch (const std::exception&) {
            throw ParseError(file.string(), lineNo, "malformed numeric field");
        }
    }
    return log;
}

void write_summary(const ValidityReport& report, const std::filesystem::path& resultsDir) {
    std::error_code ec;
    std::filesystem::create_directories(resultsDir, ec);
    if (ec) throw IoError("cannot create " + resultsDir.string() + ": " + ec.message());
    std::ofstream out(resultsDir / "summary.txt", std::ios::binary);
    if (!out) throw IoError("cannot open " + (resultsDir / "summary.txt").string());
    out << "operations=" << report.scoredOps << '\n';
    out << "on_time=" << report.onTime << '\n';
    std::ostringstream frac;
    frac.precision(6);
    frac << std::fixed << report.fraction;
    out << "on_time_fraction=" << frac.str() << '\n';
    out << "validity=" << (report.pass ? "pass" : "fail") << '\n';
    std::ostringstream tput;
    tput.precision(3);
    tput << std::fixed << report.throughputOpsPerSec;
    out << "throughput_ops_per_sec=" << tput.str() << '\n';
    out << "span_ms=" << report.spanMs << '\n';
    out << "template|count|p50_us|p95_us|p99_us\n";
    for (const auto& [op, stats] : report.perTemplate) {
        out << op << '|' << stats.count << '|' << stats.p50Us << '|' << stats.p95Us << '|'
            << stats.p99Us << '\n';
    }
    if (!out) throw IoError("write failed for summary.txt");
}

}  // namespace snb
