// snbkit: one binary driving the whole pipeline — generate a dataset, curate
// query parameters, load/verify written files, cross-check the engine, run a
// timed workload, and summarize a results log.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snb/core.hpp"
#include "snb/curation.hpp"
#include "snb/datagen.hpp"
#include "snb/driver.hpp"
#include "snb/engine.hpp"
#include "snb/serializer.hpp"

namespace {

// Anchored to the benchmark's person-count column (scale factor 1 is ~11K
// persons); the small end is sized for laptops and CI.
const std::map<std::string, std::uint64_t> kScalePresets = {
    {"0.0001", 150}, {"0.001", 480}, {"0.01", 1500}, {"0.1", 4700}, {"1", 11000},
};

struct CommonOpts {
    std::string scale;
    std::uint64_t persons = 0;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string dir;
    std::string format = "CsvBasic";
    std::size_t bindings = 25;
};

std::string default_dir() {
    const char* env = std::getenv("SNBKIT_DIR");
    return env != nullptr && *env != '\0' ? env : "snbkit_out";
}

std::uint64_t resolve_persons(const CommonOpts& o) {
    if (o.persons > 0) return o.persons;
    if (!o.scale.empty()) {
        std::string key = o.scale;
        if (key.rfind("SF", 0) == 0 || key.rfind("sf", 0) == 0) key = key.substr(2);
        const auto it = kScalePresets.find(key);
        if (it == kScalePresets.end()) {
            throw snb::ConfigError("unknown scale preset " + o.scale);
        }
        return it->second;
    }
    return 150;
}

snb::GeneratorConfig make_config(const CommonOpts& o) {
    snb::GeneratorConfig cfg;
    cfg.numPersons = resolve_persons(o);
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool withFormat, bool withBindings) {
    cmd->add_option("--scale", o.scale, "scale preset (0.0001 .. 1)");
    cmd->add_option("--persons", o.persons, "explicit person count (overrides --scale)");
    cmd->add_option("--seed", o.seed, "generator seed");
    cmd->add_option("--workers", o.workers, "generator worker threads");
    cmd->add_option("--dir", o.dir, "dataset directory (default $SNBKIT_DIR or snbkit_out)");
    if (withFormat) {
        cmd->add_option("--format", o.format,
                        "CsvBasic | CsvMergeForeign | CsvComposite | CsvCompositeMergeForeign");
    }
    if (withBindings) {
        cmd->add_option("--bindings", o.bindings, "curated bindings per query template");
    }
}

void print_manifest(const std::string& label, const snb::Manifest& m) {
    std::size_t rows = 0;
    for (const auto& f : m) rows += f.rows;
    std::cout << label << ": " << m.size() << " files, " << rows << " rows\n";
}

std::vector<snb::CuratedParameters> load_interactive_params(const std::string& dir) {
    std::vector<snb::CuratedParameters> out;
    for (int q = 1; q <= 14; ++q) {
        snb::CuratedParameters p;
        p.id = {snb::TemplateFamily::Interactive, q};
        const auto file = std::filesystem::path(dir) / "substitution_parameters" /
                          (snb::template_name(p.id) + "_param.txt");
        p.bindings = snb::read_parameter_file(file);
        out.push_back(std::move(p));
    }
    return out;
}

int cmd_generate(const CommonOpts& o) {
    const snb::GeneratorConfig cfg = make_config(o);
    const snb::CsvVariant variant = snb::parse_csv_variant(o.format);
    const snb::GenerateResult r = snb::generate(cfg);
    print_manifest("dataset", snb::write_dataset(r.snapshot, variant, o.dir));
    print_manifest("update streams", snb::write_update_streams(r.stream, o.dir));
    const auto params = snb::curate_all(r.snapshot, r.stats, o.bindings, cfg.seed);
    print_manifest("parameters", snb::write_parameter_files(params, o.dir));
    std::cout << "persons=" << r.snapshot.persons.size() << " messages="
              << r.snapshot.messages.size() << " updates=" << r.stream.size() << "\n";
    return 0;
}

int cmd_curate(const CommonOpts& o, bool jsonPersons) {
    const snb::GeneratorConfig cfg = make_config(o);
    const snb::GenerateResult r = snb::generate(cfg);
    const auto params = snb::curate_all(r.snapshot, r.stats, o.bindings, cfg.seed);
    const auto style =
        jsonPersons ? snb::ParamFileStyle::JsonPersons : snb::ParamFileStyle::Pipe;
    print_manifest("parameters", snb::write_parameter_files(params, o.dir, style));
    return 0;
}

int cmd_write(const CommonOpts& o) {
    const snb::GeneratorConfig cfg = make_config(o);
    const snb::CsvVariant variant = snb::parse_csv_variant(o.format);
    const snb::GenerateResult r = snb::generate(cfg);
    print_manifest("dataset", snb::write_dataset(r.snapshot, variant, o.dir));
    print_manifest("update streams", snb::write_update_streams(r.stream, o.dir));
    return 0;
}

int cmd_load(const CommonOpts& o) {
    const snb::CsvVariant variant = snb::parse_csv_variant(o.format);
    const snb::GraphSnapshot g = snb::load_dataset(o.dir, variant);
    std::cout << "persons=" << g.persons.size() << " forums=" << g.forums.size()
              << " messages=" << g.messages.size() << " knows=" << g.knows.size() / 2
              << " likes=" << g.likes.size() << "\n";
    const auto events = snb::load_update_streams(o.dir);
    const auto props = snb::read_update_stream_properties(o.dir);
    std::cout << "updates=" << events.size() << " update_interleave=" << props.updateInterleave
              << "\n";
    const auto violations = snb::validate_schema(g);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cout << "violation: " << v.detail << "\n";
        return 2;
    }
    std::cout << "schema ok\n";
    return 0;
}

int cmd_validate(const CommonOpts& o) {
    const snb::GeneratorConfig cfg = make_config(o);
    const snb::GenerateResult r = snb::generate(cfg);
    const auto params = snb::curate_all(r.snapshot, r.stats, o.bindings, cfg.seed);

    std::vector<snb::ValidationRecord> set;
    for (const snb::CuratedParameters& p : params) {
        const bool interactive = p.id.family == snb::TemplateFamily::Interactive;
        for (const snb::Bindings& b : p.bindings) {
            snb::ValidationRecord rec;
            rec.family = interactive ? "interactive" : "bi";
            rec.query = p.id.number;
            rec.bindings = b;
            rec.expected = interactive ? snb::oracle_interactive(r.snapshot, p.id.number, b)
                                       : snb::oracle_bi(r.snapshot, p.id.number, b);
            set.push_back(std::move(rec));
        }
        // short reads take their person ids from the complex-read bindings
        if (interactive && p.id.number == 7 && !p.bindings.empty()) {
            for (int sq = 1; sq <= 3; ++sq) {
                snb::ValidationRecord rec;
                rec.family = "short";
                rec.query = sq;
                rec.bindings = p.bindings.front();
                rec.expected = snb::oracle_short(r.snapshot, sq, rec.bindings);
                set.push_back(std::move(rec));
            }
        }
    }
    const auto mismatches = snb::validate_mode(r.snapshot, set);
    std::cout << "checked " << set.size() << " operations, " << mismatches.size()
              << " mismatches\n";
    for (const auto& m : mismatches) {
        std::cout << m.operation << " row " << m.row << ": " << m.detail << "\n";
    }
    return mismatches.empty() ? 0 : 2;
}

struct RunOpts {
    double tcr = 1'000'000.0;
    int threads = 4;
    std::string resultsDir;
    std::size_t warmupOps = 0;
    std::int64_t minSimSpanMs = 0;
};

int cmd_run(const CommonOpts& o, const RunOpts& ro) {
    const snb::CsvVariant variant = snb::parse_csv_variant(o.format);
    snb::GraphSnapshot g = snb::load_dataset(o.dir, variant);
    const auto stream = snb::load_update_streams(o.dir);
    const auto params = load_interactive_params(o.dir);
    const auto props = snb::read_update_stream_properties(o.dir);

    snb::WorkloadDefinition wd;
    wd.tcr = ro.tcr;
    wd.seed = o.seed;
    const snb::Schedule schedule = snb::build_schedule(g, stream, params, wd);
    std::cout << "schedule: " << schedule.size() << " operations, update_interleave="
              << props.updateInterleave << "ms\n";

    const snb::ResultsLog log = snb::run(schedule, g, wd, ro.threads, ro.warmupOps);
    const std::string resultsDir =
        ro.resultsDir.empty() ? (std::filesystem::path(o.dir) / "results").string()
                              : ro.resultsDir;
    snb::write_results_log(log, resultsDir);
    const snb::ValidityReport report = snb::check_validity(log);
    snb::write_summary(report, resultsDir);

    std::cout << "operations=" << report.scoredOps << " on_time_fraction=" << report.fraction
              << " throughput=" << report.throughputOpsPerSec << " ops/s\n";
    const std::int64_t simSpan = stream.empty() ? 0 : stream.back().t - stream.front().t;
    if (ro.minSimSpanMs > 0 && simSpan < ro.minSimSpanMs) {
        std::cout << "simulation span " << simSpan << "ms below required " << ro.minSimSpanMs
                  << "ms\n";
        return 2;
    }
    if (!report.pass) {
        std::cout << "validity: fail (need 95% on time)\n";
        return 2;
    }
    std::cout << "validity: pass\n";
    return 0;
}

int cmd_report(const std::string& resultsDir) {
    const auto log =
        snb::read_results_log(std::filesystem::path(resultsDir) / "results_log.csv");
    const snb::ValidityReport report = snb::check_validity(log);
    snb::write_summary(report, resultsDir);
    std::cout << "operations=" << report.scoredOps << " on_time_fraction=" << report.fraction
              << " throughput=" << report.throughputOpsPerSec
              << " ops/s validity=" << (report.pass ? "pass" : "fail") << "\n";
    for (const auto& [op, stats] : report.perTemplate) {
        std::cout << op << " count=" << stats.count << " p50=" << stats.p50Us
                  << "us p95=" << stats.p95Us << "us p99=" << stats.p99Us << "us\n";
    }
    return report.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"social network benchmark kit"};
    app.require_subcommand(1);

    CommonOpts common;
    common.dir = default_dir();
    bool jsonPersons = false;
    RunOpts runOpts;
    std::string resultsDir;

    CLI::App* generate = app.add_subcommand("generate", "generate dataset, streams, parameters");
    add_common(generate, common, true, true);

    CLI::App* curate = app.add_subcommand("curate", "write substitution parameter files");
    add_common(curate, common, false, true);
    curate->add_flag("--json-persons", jsonPersons, "person bindings as JSON lines");

    CLI::App* write = app.add_subcommand("write", "serialize the dataset in one CSV variant");
    add_common(write, common, true, false);

    CLI::App* load = app.add_subcommand("load", "load a written dataset and check its schema");
    add_common(load, common, true, false);

    CLI::App* validate = app.add_subcommand("validate", "cross-check engine against the oracle");
    add_common(validate, common, false, true);

    CLI::App* runCmd = app.add_subcommand("run", "execute the timed workload");
    add_common(runCmd, common, true, false);
    runCmd->add_option("--tcr", runOpts.tcr, "time compression ratio (sim ms per wall ms)");
    runCmd->add_option("--threads", runOpts.threads, "read worker threads");
    runCmd->add_option("--results_dir,--rd", runOpts.resultsDir, "results directory");
    runCmd->add_option("--warmup-ops", runOpts.warmupOps, "unscored schedule prefix");
    runCmd->add_option("--min-sim-span", runOpts.minSimSpanMs,
                       "minimum simulated span in ms for a valid run");

    CLI::App* report = app.add_subcommand("report", "recompute the summary from a results log");
    report->add_option("--results_dir,--rd", resultsDir, "results directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (generate->parsed()) return cmd_generate(common);
        if (curate->parsed()) return cmd_curate(common, jsonPersons);
        if (write->parsed()) return cmd_write(common);
        if (load->parsed()) return cmd_load(common);
        if (validate->parsed()) return cmd_validate(common);
        if (runCmd->parsed()) return cmd_run(common, runOpts);
        if (report->parsed()) return cmd_report(resultsDir);
    } catch (const snb::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const snb::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const snb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const snb::SnbError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
