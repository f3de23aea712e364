#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "snb/curation.hpp"
#include "snb/datagen.hpp"
#include "snb/engine.hpp"
#include "snb/graph.hpp"

namespace snb {

/// Updates executed per one instance of each complex read, IC1..IC14.
inline constexpr std::array<int, 14> kSf1Frequencies{26, 37, 69,  36, 57, 129, 87,
                                                     45, 157, 30, 16, 44, 19,  49};

struct WorkloadDefinition {
    std::array<int, 14> frequency = kSf1Frequencies;
    double tcr = 1.0;  // simulated ms per wall ms
    double shortReadInitialProb = 1.0;
    double shortReadDecay = 0.1;
    std::uint64_t seed = 42;
};

struct ReadOperation {
    int query = 0;  // 1..14 within the interactive family
    Bindings bindings;
};

struct ScheduleEntry {
    std::int64_t scheduledMs = 0;   // wall clock offset from run start
    std::int64_t dependencyMs = 0;  // updates: wall mapping of the prerequisite time
    std::variant<ReadOperation, UpdateEvent> operation;

    bool is_update() const { return operation.index() == 1; }
};

using Schedule = std::vector<ScheduleEntry>;

/// Merges the update stream with interleaved complex reads: update i keeps its
/// simulation timestamp remapped through the TCR, and the k-th instance of ICq
/// lands right after update k*freq_q, drawing bindings round-robin. An empty
/// stream with syntheticSpanMs > 0 schedules reads against a virtual clock of
/// one update per second instead. Raises MissingParametersError for a template
/// with no bindings.
Schedule build_schedule(const GraphSnapshot& snapshot, const std::vector<UpdateEvent>& stream,
                        const std::vector<CuratedParameters>& params,
                        const WorkloadDefinition& wd, std::int64_t syntheticSpanMs = 0);

struct ResultsLogRecord {
    std::uint64_t recordId = 0;  // scheduleIndex * 1000 + chain step; stable across runs
    std::string operation;       // interactive_3, short_5, update_7
    std::int64_t scheduledMs = 0;
    std::int64_t actualMs = 0;
    std::int64_t durationUs = 0;
    std::size_t resultRows = 0;
    std::string status;  // ok | warmup | error class name
};

using ResultsLog = std::vector<ResultsLogRecord>;

/// Executes the schedule against the in-process engine. One dispatcher owns
/// the clock and never releases an entry early; updates run on a single
/// ordered lane while reads fan out to `threads` workers. Each completed
/// complex read triggers a person- or message-centric short-read sequence
/// (IS1-3 or IS4-7) rooted at an id harvested from its own result rows,
/// chaining with decaying probability. Engine errors land in the record
/// status; the run continues. The first `warmupOps` schedule entries are
/// logged with status "warmup" and excluded from scoring.
ResultsLog run(const Schedule& schedule, GraphSnapshot& g, const WorkloadDefinition& wd,
               int threads, std::size_t warmupOps = 0);

struct LatencyStats {
    std::size_t count = 0;
    std::int64_t p50Us = 0;
    std::int64_t p95Us = 0;
    std::int64_t p99Us = 0;
};

struct ValidityReport {
    std::size_t scoredOps = 0;
    std::size_t onTime = 0;
    double fraction = 1.0;
    bool pass = true;  // fraction >= 0.95
    double throughputOpsPerSec = 0.0;
    std::int64_t spanMs = 0;  // wall span covered by scored operations
    std::map<std::string, LatencyStats> perTemplate;
};

/// Pure function of the log: an operation is on time when it started less
/// than 1000 ms after its scheduled start; the run passes at >= 95% on time.
/// Records with status "warmup" are excluded.
ValidityReport check_validity(const ResultsLog& log);

struct ValidationRecord {
    std::string family;  // interactive | short | bi
    int query = 0;
    Bindings bindings;
    ResultTable expected;
};

struct Mismatch {
    std::string operation;
    std::size_t row = 0;
    std::string detail;
};

/// Runs every record's query and diffs the result row-exactly against the
/// expected table. Empty result = the engine is valid.
std::vector<Mismatch> validate_mode(const GraphSnapshot& g,
                                    const std::vector<ValidationRecord>& validationSet);

// results_log.csv and summary.txt live in the results directory.
void write_results_log(const ResultsLog& log, const std::filesystem::path& resultsDir);
ResultsLog read_results_log(const std::filesystem::path& file);
void write_summary(const ValidityReport& report, const std::filesystem::path& resultsDir);

}  // namespace snb
