#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "snb/engine.hpp"

namespace snb {

// ---------------------------------------------------------------------------
// ResultTable
// ---------------------------------------------------------------------------

int compare_values(const Value& a, const Value& b) {
    if (a.index() != b.index()) throw SnbError("comparing result values of different types");
    return std::visit(
        [&](const auto& x) -> int {
            const auto& y = std::get<std::decay_t<decltype(x)>>(b);
            if (x < y) return -1;
            if (y < x) return 1;
            return 0;
        },
        a);
}

int compare_rows(const Row& a, const Row& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare_values(a[i], b[i]); c != 0) return c;
    }
    if (a.size() < b.size()) return -1;
    if (a.size() > b.size()) return 1;
    return 0;
}

void sort_rows(ResultTable& t, const std::vector<SortKey>& keys) {
    std::sort(t.rows.begin(), t.rows.end(), [&keys](const Row& a, const Row& b) {
        for (const SortKey& k : keys) {
            const int c = compare_values(a[k.column], b[k.column]);
            if (c != 0) return k.descending ? c > 0 : c < 0;
        }
        return compare_rows(a, b) < 0;
    });
}

void truncate_rows(ResultTable& t, std::size_t limit) {
    if (t.rows.size() > limit) t.rows.resize(limit);
}

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(double x) const {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", x);
            return buf;
        }
        std::string operator()(const std::string& x) const { return x; }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::vector<std::int64_t>& x) const {
            std::string out;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (i > 0) out.push_back(';');
                out += std::to_string(x[i]);
            }
            return out;
        }
        std::string operator()(const std::vector<std::string>& x) const {
            std::string out;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (i > 0) out.push_back(';');
                out += x[i];
            }
            return out;
        }
    };
    return std::visit(Visitor{}, v);
}

std::string format_row(const Row& r) {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) out.push_back('|');
        out += format_value(r[i]);
    }
    return out;
}

bool table_equal(const ResultTable& a, const ResultTable& b) { return table_diff(a, b).empty(); }

std::string table_diff(const ResultTable& a, const ResultTable& b) {
    if (a.columns != b.columns) {
        std::string ca, cb;
        for (const auto& c : a.columns) ca += c + "|";
        for (const auto& c : b.columns) cb += c + "|";
        return "column sets differ: [" + ca + "] vs [" + cb + "]";
    }
    const std::size_t n = std::min(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.rows[i].size() != b.rows[i].size() || compare_rows(a.rows[i], b.rows[i]) != 0) {
            return "row " + std::to_string(i) + " differs: [" + format_row(a.rows[i]) + "] vs [" +
                   format_row(b.rows[i]) + "]";
        }
    }
    if (a.rows.size() != b.rows.size()) {
        return "row counts differ: " + std::to_string(a.rows.size()) + " vs " +
               std::to_string(b.rows.size());
    }
    return "";
}

// ---------------------------------------------------------------------------
// ParamView
// ---------------------------------------------------------------------------

ParamView::ParamView(std::string queryName, const Bindings& b)
    : query_(std::move(queryName)), b_(&b) {}

const std::string& ParamView::raw(const std::string& key) const {
    auto it = b_->find(key);
    if (it == b_->end()) throw MissingParametersError(query_ + "." + key);
    return it->second;
}

std::int64_t ParamView::i64(const std::string& key) const {
    const std::string& s = raw(key);
    std::int64_t v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError(query_, 0, "parameter " + key + ": expected integer, got '" + s + "'");
    }
    return v;
}

std::int32_t ParamView::i32(const std::string& key) const {
    return static_cast<std::int32_t>(i64(key));
}

Id ParamView::id(const std::string& key) const { return static_cast<Id>(i64(key)); }

const std::string& ParamView::str(const std::string& key) const { return raw(key); }

std::int64_t ParamView::date_ms(const std::string& key) const {
    const std::string& s = raw(key);
    if (s.find('T') != std::string::npos) return parse_datetime(s).ms;
    if (s.find('-', 1) != std::string::npos) return to_datetime(parse_date(s)).ms;
    return i64(key);
}

std::vector<std::string> ParamView::str_list(const std::string& key) const {
    const std::string& s = raw(key);
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::string cur;
    for (char c : s) {
        if (c == ';') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

// ---------------------------------------------------------------------------
// Graph algorithms
// ---------------------------------------------------------------------------

int shortest_path_length(const GraphSnapshot& g, Id a, Id b) {
    g.person(a);
    g.person(b);
    if (a == b) return 0;
    std::unordered_map<Id, int> dist;
    dist[a] = 0;
    std::deque<Id> queue{a};
    while (!queue.empty()) {
        const Id u = queue.front();
        queue.pop_front();
        const int du = dist[u];
        for (const auto& [v, since] : g.friends_of(u)) {
            (void)since;
            if (dist.count(v)) continue;
            if (v == b) return du + 1;
            dist[v] = du + 1;
            queue.push_back(v);
        }
    }
    return -1;
}

std::map<std::pair<Id, Id>, double> interaction_weights(
    const GraphSnapshot& g, const std::pair<std::int64_t, std::int64_t>* forumWindow) {
    std::map<std::pair<Id, Id>, double> w;
    for (const Message& c : g.messages) {
        if (c.is_post()) continue;
        if (forumWindow) {
            const auto [rootId, forumId] = root_post(g, c.id);
            (void)rootId;
            const std::int64_t created = g.forum(forumId).creationDate.ms;
            if (created < forumWindow->first || created >= forumWindow->second) continue;
        }
        const Message& parent = g.message(c.replyOfMessageId);
        const Id x = std::min(c.creatorPersonId, parent.creatorPersonId);
        const Id y = std::max(c.creatorPersonId, parent.creatorPersonId);
        w[{x, y}] += parent.is_post() ? 1.0 : 0.5;
    }
    return w;
}

std::vector<WeightedPath> all_weighted_shortest_paths(
    const GraphSnapshot& g, Id a, Id b, const std::map<std::pair<Id, Id>, double>& weights) {
    g.person(a);
    g.person(b);
    if (a == b) return {WeightedPath{{a}, 0.0}};

    std::unordered_map<Id, int> dist;
    dist[a] = 0;
    std::deque<Id> queue{a};
    while (!queue.empty()) {
        const Id u = queue.front();
        queue.pop_front();
        if (u == b) continue;  // nothing beyond b matters
        for (const auto& [v, since] : g.friends_of(u)) {
            (void)since;
            if (!dist.count(v)) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    auto it = dist.find(b);
    if (it == dist.end()) return {};
    const int target = it->second;

    std::vector<WeightedPath> out;
    std::vector<Id> path{a};
    auto pairWeight = [&weights](Id x, Id y) {
        auto w = weights.find({std::min(x, y), std::max(x, y)});
        return w == weights.end() ? 0.0 : w->second;
    };
    // Depth-first over the BFS level DAG; every branch ends at depth `target`.
    auto dfs = [&](auto&& self, Id u, int depth) -> void {
        if (u == b) {
            double weight = 0.0;
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                weight += pairWeight(path[i], path[i + 1]);
            }
            out.push_back({path, weight});
            return;
        }
        if (depth == target) return;
        for (const auto& [v, since] : g.friends_of(u)) {
            (void)since;
            auto dv = dist.find(v);
            if (dv == dist.end() || dv->second != depth + 1) continue;
            path.push_back(v);
            self(self, v, depth + 1);
            path.pop_back();
        }
    };
    dfs(dfs, a, 0);

    std::sort(out.begin(), out.end(), [](const WeightedPath& x, const WeightedPath& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        return x.nodes < y.nodes;
    });
    return out;
}

std::vector<Id> persons_on_trails(const GraphSnapshot& g, Id root, int minLen, int maxLen) {
    g.person(root);
    if (maxLen > 4) {
        throw RangeTooLargeError("trail length bound " + std::to_string(maxLen) +
                                 " exceeds the supported maximum of 4");
    }
    std::unordered_set<Id> hits;
    if (maxLen < 1 || minLen > maxLen) return {};
    std::set<std::pair<Id, Id>> used;
    auto dfs = [&](auto&& self, Id u, int depth) -> void {
        if (depth >= minLen && u != root) hits.insert(u);
        if (depth == maxLen) return;
        for (const auto& [v, since] : g.friends_of(u)) {
            (void)since;
            const std::pair<Id, Id> key{std::min(u, v), std::max(u, v)};
            if (used.count(key)) continue;
            used.insert(key);
            self(self, v, depth + 1);
            used.erase(key);
        }
    };
    dfs(dfs, root, 0);
    std::vector<Id> out(hits.begin(), hits.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t count_triangles(const GraphSnapshot& g, Id countryId) {
    std::unordered_set<Id> members;
    for (const Person& p : g.persons) {
        if (g.country_of_person(p.id) == countryId) members.insert(p.id);
    }
    std::int64_t count = 0;
    for (Id u : members) {
        for (const auto& [v, sinceUv] : g.friends_of(u)) {
            (void)sinceUv;
            if (v <= u || !members.count(v)) continue;
            // common neighbors w > v keep each triangle counted once
            for (const auto& [w, sinceVw] : g.friends_of(v)) {
                (void)sinceVw;
                if (w <= v || !members.count(w)) continue;
                if (g.knows_lookup(u, w)) ++count;
            }
        }
    }
    return count;
}

std::int64_t months_inclusive(const Date& from, const Date& to) {
    return (static_cast<std::int64_t>(to.year) * 12 + to.month) -
           (static_cast<std::int64_t>(from.year) * 12 + from.month) + 1;
}

}  // namespace snb
