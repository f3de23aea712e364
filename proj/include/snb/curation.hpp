#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "snb/datagen.hpp"
#include "snb/graph.hpp"
#include "snb/serializer.hpp"

namespace snb {

/// Parameter templates are the 14 interactive complex reads and the 25
/// business intelligence reads; short reads take their parameters from these
/// at run time.
enum class TemplateFamily { Interactive, Bi };

struct TemplateId {
    TemplateFamily family = TemplateFamily::Interactive;
    int number = 1;
};

/// File stem, e.g. "interactive_4" or "bi_17".
std::string template_name(TemplateId id);

/// All 39 curatable templates in file order.
std::vector<TemplateId> all_templates();

/// Greedy window selection over (key, cost) candidates: sort by cost, slide a
/// window of width n, keep the window with the smallest (max-min)/median
/// spread. Returns the selected keys in ascending-cost order and reports the
/// achieved max/min band (1.0 for all-equal or all-zero windows).
struct WindowSelection {
    std::vector<std::uint64_t> keys;
    std::vector<std::int64_t> costs;
    double achievedBand = 1.0;
};
WindowSelection select_similar_costs(std::vector<std::pair<std::uint64_t, std::int64_t>>
                                         candidates,
                                     std::size_t n);

/// One curated template: the header of its parameter file, the formatted rows,
/// and the same rows as engine-ready bindings. proxyCosts holds the curation
/// cost of the primary (first-column) entity per binding where applicable.
struct CuratedParameters {
    TemplateId id;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::map<std::string, std::string>> bindings;
    std::vector<std::int64_t> proxyCosts;
    double achievedBand = 1.0;
};

/// Curates n bindings for one template from the generation statistics.
/// Person-rooted templates throw InsufficientCandidatesError when the graph
/// holds fewer than n persons; value domains with fewer than n distinct
/// candidates (tags, countries, days) recycle candidates instead.
CuratedParameters curate_template(const GraphSnapshot& g, const CurationStats& stats,
                                  TemplateId id, std::size_t n, std::uint64_t seed);

/// All templates at once, in file order.
std::vector<CuratedParameters> curate_all(const GraphSnapshot& g, const CurationStats& stats,
                                          std::size_t n, std::uint64_t seed);

enum class ParamFileStyle {
    Pipe,         // header line + pipe-separated rows
    JsonPersons,  // person-rooted files become JSON lines; others stay pipe
};

/// Writes substitution_parameters/<template>_param.txt under `dir`.
Manifest write_parameter_files(const std::vector<CuratedParameters>& params,
                               const std::filesystem::path& dir,
                               ParamFileStyle style = ParamFileStyle::Pipe);

/// The JSON line format used by ParamFileStyle::JsonPersons.
std::string person_binding_json(const GraphSnapshot& g, Id personId);

/// Loads one parameter file written by write_parameter_files (pipe style)
/// back into engine-ready bindings.
std::vector<std::map<std::string, std::string>> read_parameter_file(
    const std::filesystem::path& file);

}  // namespace snb
