#pragma once

#include <map>
#include <string>
#include <vector>

#include "snb/datagen.hpp"
#include "snb/graph.hpp"
#include "snb/table.hpp"

namespace snb {

/// Query parameters, by name, as text (the form they take in parameter files
/// and driver schedules). Typed access goes through ParamView.
using Bindings = std::map<std::string, std::string>;

/// Typed accessor over one binding set. Missing keys raise
/// MissingParametersError naming the query; malformed values raise ParseError.
class ParamView {
  public:
    ParamView(std::string queryName, const Bindings& b);

    std::int64_t i64(const std::string& key) const;
    std::int32_t i32(const std::string& key) const;
    Id id(const std::string& key) const;
    const std::string& str(const std::string& key) const;
    /// Midnight GMT of a "yyyy-mm-dd" value, epoch millis. Plain integers are
    /// accepted as epoch millis directly.
    std::int64_t date_ms(const std::string& key) const;
    std::vector<std::string> str_list(const std::string& key) const;  // ';'-separated

  private:
    const std::string& raw(const std::string& key) const;

    std::string query_;
    const Bindings* b_;
};

// ---------------------------------------------------------------------------
// Read queries. `query` is the 1-based number within its family; results use
// the documented column set and ordering for that query. Unknown numbers
// raise ConfigError; unknown start entities raise UnknownIdError.
// ---------------------------------------------------------------------------

ResultTable run_interactive(const GraphSnapshot& g, int query, const Bindings& b);  // 1..14
ResultTable run_short(const GraphSnapshot& g, int query, const Bindings& b);        // 1..7
ResultTable run_bi(const GraphSnapshot& g, int query, const Bindings& b);           // 1..25

// Independent reimplementations used to cross-check the engine. Same
// contracts, written against the entity vectors without derived indexes.
ResultTable oracle_interactive(const GraphSnapshot& g, int query, const Bindings& b);
ResultTable oracle_short(const GraphSnapshot& g, int query, const Bindings& b);
ResultTable oracle_bi(const GraphSnapshot& g, int query, const Bindings& b);

// ---------------------------------------------------------------------------
// Updates
// ---------------------------------------------------------------------------

/// Applies one insert after verifying every referenced entity exists
/// (DependencyMissingError otherwise; SchemaViolationError on duplicate ids).
void apply_insert(GraphSnapshot& g, const UpdateEvent& e);

struct DeletionReport {
    std::size_t persons = 0;
    std::size_t forums = 0;
    std::size_t posts = 0;
    std::size_t comments = 0;
    std::size_t knows = 0;        // friendships (pairs)
    std::size_t likes = 0;
    std::size_t memberships = 0;
    std::size_t moderatorsReassigned = 0;

    std::size_t total_nodes() const { return persons + forums + posts + comments; }
};

DeletionReport delete_person(GraphSnapshot& g, Id personId);
DeletionReport delete_forum(GraphSnapshot& g, Id forumId);
DeletionReport delete_post(GraphSnapshot& g, Id postId);
DeletionReport delete_comment(GraphSnapshot& g, Id commentId);

// ---------------------------------------------------------------------------
// Shared graph algorithms
// ---------------------------------------------------------------------------

/// Hop count of a shortest friendship path; 0 when a == b, -1 when
/// disconnected.
int shortest_path_length(const GraphSnapshot& g, Id a, Id b);

struct WeightedPath {
    std::vector<Id> nodes;  // endpoints included
    double weight = 0.0;
};

/// Interaction weight of every unordered person pair: each direct reply
/// between their messages contributes 1.0 (reply to a post) or 0.5 (reply to
/// a comment). When `forumWindow` is set, only replies whose thread root
/// lives in a forum created inside [first, second) contribute.
std::map<std::pair<Id, Id>, double> interaction_weights(
    const GraphSnapshot& g,
    const std::pair<std::int64_t, std::int64_t>* forumWindow = nullptr);

/// Every hop-shortest friendship path between a and b, weighted by the given
/// pair weights, ordered by weight descending then node sequence ascending.
/// a == b yields one zero-length path of weight 0; disconnected yields none.
std::vector<WeightedPath> all_weighted_shortest_paths(
    const GraphSnapshot& g, Id a, Id b, const std::map<std::pair<Id, Id>, double>& weights);

/// Persons (other than root) reachable from root over a friendship trail
/// (edge-distinct, nodes repeatable) whose length lies in [minLen, maxLen].
/// maxLen above 4 raises RangeTooLargeError.
std::vector<Id> persons_on_trails(const GraphSnapshot& g, Id root, int minLen, int maxLen);

/// Distinct friendship triangles within one country's residents.
std::int64_t count_triangles(const GraphSnapshot& g, Id countryId);

/// Number of calendar months in the inclusive span from `from` to `to`
/// (same month -> 1; December to January -> 2).
std::int64_t months_inclusive(const Date& from, const Date& to);

}  // namespace snb
