#include "snb/curation.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "snb/core.hpp"
#include "snb/rng.hpp"

namespace snb {

namespace {

constexpr std::int64_t kMsPerDay = 86'400'000LL;

std::string fmt_day(std::int64_t ms) { return format_date(to_date(DateTime{ms})); }

std::string join_semi(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ';';
        out += parts[i];
    }
    return out;
}

// day (epoch days) holding the median message, or the simulation start day
std::int64_t median_activity_day_ms(const GraphSnapshot& g, const CurationStats& stats) {
    if (stats.messagesByDay.empty() || stats.totalMessages == 0) {
        return g.simulationStartMs / kMsPerDay * kMsPerDay;
    }
    const std::int64_t target = (stats.totalMessages + 1) / 2;
    std::int64_t cum = 0;
    for (const auto& [day, count] : stats.messagesByDay) {
        cum += count;
        if (cum >= target) return day * kMsPerDay;
    }
    return stats.messagesByDay.rbegin()->first * kMsPerDay;
}

}  // namespace

std::string template_name(TemplateId id) {
    return (id.family == TemplateFamily::Interactive ? "interactive_" : "bi_") +
           std::to_string(id.number);
}

std::vector<TemplateId> all_templates() {
    std::vector<TemplateId> out;
    for (int q = 1; q <= 14; ++q) out.push_back({TemplateFamily::Interactive, q});
    for (int q = 1; q <= 25; ++q) out.push_back({TemplateFamily::Bi, q});
    return out;
}

WindowSelection select_similar_costs(std::vector<std::pair<std::uint64_t, std::int64_t>>
                                         candidates,
                                     std::size_t n) {
    WindowSelection sel;
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return std::pair(a.second, a.first) <
                                                        std::pair(b.second, b.first); });
    if (n == 0 || candidates.empty()) return sel;

    std::size_t begin = 0;
    std::size_t width = std::min(n, candidates.size());
    if (n == 1) {
        // a single binding gets the median-cost candidate
        begin = candidates.size() / 2;
    } else if (candidates.size() > width) {
        double bestScore = -1.0;
        for (std::size_t i = 0; i + width <= candidates.size(); ++i) {
            const double lo = static_cast<double>(candidates[i].second);
            const double hi = static_cast<double>(candidates[i + width - 1].second);
            const double median = static_cast<double>(candidates[i + width / 2].second);
            const double score = (hi - lo) / std::max(median, 1.0);
            if (bestScore < 0.0 || score < bestScore) {
                bestScore = score;
                begin = i;
            }
        }
    }
    for (std::size_t i = begin; i < begin + width; ++i) {
        sel.keys.push_back(candidates[i].first);
        sel.costs.push_back(candidates[i].second);
    }
    const double lo = static_cast<double>(sel.costs.front());
    const double hi = static_cast<double>(sel.costs.back());
    sel.achievedBand = hi <= 0.0 ? 1.0 : hi / std::max(lo, 1.0);
    return sel;
}

namespace {

// Builders for the value domains a binding can draw from.

std::vector<std::pair<std::uint64_t, std::int64_t>> person_candidates(
    const CurationStats& stats, const std::vector<std::int64_t>& costs) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    for (std::size_t i = 0; i < stats.personIds.size(); ++i) {
        out.push_back({stats.personIds[i], costs[i]});
    }
    return out;
}

std::vector<std::pair<std::uint64_t, std::int64_t>> map_candidates(
    const std::map<Id, std::int64_t>& m) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    for (const auto& [id, count] : m) out.push_back({id, count});
    return out;
}

struct Synth {
    const GraphSnapshot& g;
    const CurationStats& stats;
    const std::size_t n;
    rng::Stream stream;
    CuratedParameters out;

    Synth(const GraphSnapshot& gg, const CurationStats& st, TemplateId id, std::size_t count,
          std::uint64_t seed)
        : g(gg),
          stats(st),
          n(count),
          stream(seed, rng::Domain::CurationDates,
                 static_cast<std::uint64_t>(id.family == TemplateFamily::Bi ? 100 + id.number
                                                                            : id.number)) {
        out.id = id;
    }

    WindowSelection persons(const std::vector<std::int64_t>& costs) {
        if (stats.personIds.size() < n) {
            const WindowSelection all =
                select_similar_costs(person_candidates(stats, costs), stats.personIds.size());
            throw InsufficientCandidatesError(
                "template " + template_name(out.id) + " needs " + std::to_string(n) +
                    " persons, graph has " + std::to_string(stats.personIds.size()),
                all.achievedBand);
        }
        return select_similar_costs(person_candidates(stats, costs), n);
    }

    // rotation offset so different seeds pick different value alignments
    std::size_t offset(std::size_t domainSize) {
        return domainSize == 0 ? 0 : static_cast<std::size_t>(stream.below(domainSize));
    }

    void row(std::vector<std::string> values, std::int64_t proxyCost) {
        std::map<std::string, std::string> binding;
        for (std::size_t i = 0; i < values.size(); ++i) binding[out.header[i]] = values[i];
        out.rows.push_back(std::move(values));
        out.bindings.push_back(std::move(binding));
        out.proxyCosts.push_back(proxyCost);
    }
};

// messages per 28-day window starting at each candidate day
std::vector<std::pair<std::uint64_t, std::int64_t>> window_day_candidates(
    const CurationStats& stats) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    for (const auto& [day, count] : stats.messagesByDay) {
        (void)count;
        std::int64_t inWindow = 0;
        for (const auto& [d2, c2] : stats.messagesByDay) {
            if (d2 >= day && d2 < day + 28) inWindow += c2;
        }
        out.push_back({static_cast<std::uint64_t>(day), inWindow});
    }
    return out;
}

std::vector<std::pair<std::uint64_t, std::int64_t>> cumulative_day_candidates(
    const CurationStats& stats, bool before) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    std::int64_t cum = 0;
    for (const auto& [day, count] : stats.messagesByDay) {
        out.push_back({static_cast<std::uint64_t>(day),
                       before ? cum : stats.totalMessages - cum - count});
        cum += count;
    }
    return out;
}

std::vector<std::pair<std::uint64_t, std::int64_t>> month_candidates(const CurationStats& stats) {
    std::map<std::int64_t, std::int64_t> perMonth;
    for (const auto& [day, count] : stats.messagesByDay) {
        const Date d = to_date(DateTime{day * kMsPerDay});
        perMonth[d.year * 12 + d.month - 1] += count;
    }
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    for (const auto& [month, count] : perMonth) {
        const auto next = perMonth.find(month + 1);
        out.push_back({static_cast<std::uint64_t>(month),
                       count + (next == perMonth.end() ? 0 : next->second)});
    }
    return out;
}

std::int64_t median_of_sorted(std::vector<std::int64_t> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

CuratedParameters curate_template(const GraphSnapshot& g, const CurationStats& stats,
                                  TemplateId id, std::size_t n, std::uint64_t seed) {
    Synth s(g, stats, id, n, seed);
    const std::int64_t medianMs = median_activity_day_ms(g, stats);
    const std::string medianDay = fmt_day(medianMs);
    const std::string windowStart = fmt_day(medianMs - 14 * kMsPerDay);

    auto tagName = [&](std::uint64_t tid) { return g.tag(tid).name; };
    auto className = [&](std::uint64_t cid) { return g.tag_class(cid).name; };
    auto countryName = [&](std::uint64_t pid) { return g.place(pid).name; };
    auto num = [](std::uint64_t v) { return std::to_string(v); };

    // value domains shared by several templates
    const WindowSelection tagSel =
        select_similar_costs(map_candidates(stats.messagesByTag), std::max<std::size_t>(n, 1));
    const WindowSelection classSel = select_similar_costs(
        map_candidates(stats.messagesByTagClass), std::max<std::size_t>(n, 1));
    const WindowSelection countryByPersons = select_similar_costs(
        map_candidates(stats.personsByCountry), std::max<std::size_t>(n, 1));
    const WindowSelection countryByMessages = select_similar_costs(
        map_candidates(stats.messagesByCountry), std::max<std::size_t>(n, 1));

    auto cycled = [](const WindowSelection& sel, std::size_t k) -> std::uint64_t {
        return sel.keys[k % sel.keys.size()];
    };

    // person-pair synthesis: partner from the opposite half of the window
    auto pair_rows = [&](const WindowSelection& sel,
                         const std::vector<std::string>& extra = {}) {
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t p1 = sel.keys[k];
            std::uint64_t p2 = sel.keys[(k + std::max<std::size_t>(n / 2, 1)) % n];
            if (p2 == p1 && n > 1) p2 = sel.keys[(k + 1) % n];
            std::vector<std::string> values{num(p1), num(p2)};
            values.insert(values.end(), extra.begin(), extra.end());
            s.row(std::move(values), sel.costs[k]);
        }
        s.out.achievedBand = sel.achievedBand;
    };

    const bool interactive = id.family == TemplateFamily::Interactive;
    const int q = id.number;

    if (interactive && q == 1) {
        s.out.header = {"personId", "firstName"};
        const WindowSelection sel = s.persons(stats.friendOfFriendCount);
        for (std::size_t k = 0; k < n; ++k) {
            // the neighbour in proxy order donates the name so the searched
            // first name always exists among similar-cost persons
            const Id donor = sel.keys[(k + 1) % n];
            s.row({num(sel.keys[k]), g.person(donor).firstName}, sel.costs[k]);
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 2) {
        s.out.header = {"personId", "maxDate"};
        const WindowSelection sel = s.persons(stats.friendMessageCount);
        for (std::size_t k = 0; k < n; ++k) s.row({num(sel.keys[k]), medianDay}, sel.costs[k]);
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 3) {
        s.out.header = {"personId", "countryXName", "countryYName", "startDate", "durationDays"};
        const WindowSelection sel = s.persons(stats.twoHopMessageCount);
        if (!countryByMessages.keys.empty()) {
            const std::size_t off = s.offset(countryByMessages.keys.size());
            for (std::size_t k = 0; k < n; ++k) {
                s.row({num(sel.keys[k]), countryName(cycled(countryByMessages, off + k)),
                       countryName(cycled(countryByMessages, off + k + 1)), windowStart, "28"},
                      sel.costs[k]);
            }
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 4) {
        s.out.header = {"personId", "startDate", "durationDays"};
        const WindowSelection sel = s.persons(stats.friendMessageCount);
        for (std::size_t k = 0; k < n; ++k) {
            s.row({num(sel.keys[k]), windowStart, "28"}, sel.costs[k]);
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 5) {
        s.out.header = {"personId", "minDate"};
        const WindowSelection sel = s.persons(stats.friendOfFriendCount);
        for (std::size_t k = 0; k < n; ++k) s.row({num(sel.keys[k]), windowStart}, sel.costs[k]);
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 6) {
        s.out.header = {"personId", "tagName"};
        const WindowSelection sel = s.persons(stats.twoHopMessageCount);
        if (!tagSel.keys.empty()) {
            const std::size_t off = s.offset(tagSel.keys.size());
            for (std::size_t k = 0; k < n; ++k) {
                s.row({num(sel.keys[k]), tagName(cycled(tagSel, off + k))}, sel.costs[k]);
            }
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && (q == 7 || q == 8)) {
        s.out.header = {"personId"};
        const WindowSelection sel = s.persons(stats.friendCount);
        for (std::size_t k = 0; k < n; ++k) s.row({num(sel.keys[k])}, sel.costs[k]);
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 9) {
        s.out.header = {"personId", "maxDate"};
        const WindowSelection sel = s.persons(stats.twoHopMessageCount);
        for (std::size_t k = 0; k < n; ++k) s.row({num(sel.keys[k]), medianDay}, sel.costs[k]);
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 10) {
        s.out.header = {"personId", "month"};
        const WindowSelection sel = s.persons(stats.friendOfFriendCount);
        const std::size_t off = s.offset(12);
        for (std::size_t k = 0; k < n; ++k) {
            s.row({num(sel.keys[k]), std::to_string(1 + (off + k) % 12)}, sel.costs[k]);
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 11) {
        s.out.header = {"personId", "countryName", "workFromYear"};
        const WindowSelection sel = s.persons(stats.friendOfFriendCount);
        const std::string year = std::to_string(to_date(DateTime{medianMs}).year);
        if (!countryByPersons.keys.empty()) {
            const std::size_t off = s.offset(countryByPersons.keys.size());
            for (std::size_t k = 0; k < n; ++k) {
                s.row({num(sel.keys[k]), countryName(cycled(countryByPersons, off + k)), year},
                      sel.costs[k]);
            }
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && q == 12) {
        s.out.header = {"personId", "tagClassName"};
        const WindowSelection sel = s.persons(stats.friendMessageCount);
        if (!classSel.keys.empty()) {
            const std::size_t off = s.offset(classSel.keys.size());
            for (std::size_t k = 0; k < n; ++k) {
                s.row({num(sel.keys[k]), className(cycled(classSel, off + k))}, sel.costs[k]);
            }
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (interactive && (q == 13 || q == 14)) {
        s.out.header = {"person1Id", "person2Id"};
        pair_rows(s.persons(stats.friendOfFriendCount));
    } else if (!interactive && q == 1) {
        s.out.header = {"date"};
        const WindowSelection sel =
            select_similar_costs(cumulative_day_candidates(stats, true), n);
        for (std::size_t k = 0; k < n && !sel.keys.empty(); ++k) {
            s.row({fmt_day(static_cast<std::int64_t>(cycled(sel, k)) * kMsPerDay)},
                  sel.costs[k % sel.costs.size()]);
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (!interactive && (q == 2 || q == 14)) {
        s.out.header = {"startDate", "endDate"};
        if (q == 2) s.out.header = {"startDate", "endDate", "country1", "country2"};
        const WindowSelection sel = select_similar_costs(window_day_candidates(stats), n);
        const std::size_t off = s.offset(countryByMessages.keys.size());
        for (std::size_t k = 0; k < n && !sel.keys.empty(); ++k) {
            const auto day = static_cast<std::int64_t>(cycled(sel, k));
            std::vector<std::string> values{fmt_day(day * kMsPerDay),
                                            fmt_day((day + 27) * kMsPerDay)};
            if (q == 2) {
                if (countryByMessages.keys.empty()) continue;
                values.push_back(countryName(cycled(countryByMessages, off + k)));
                values.push_back(countryName(cycled(countryByMessages, off + k + 1)));
            }
            s.row(std::move(values), sel.costs[k % sel.costs.size()]);
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (!interactive && q == 3) {
        s.out.header = {"year", "month"};
        const WindowSelection sel = select_similar_costs(month_candidates(stats), n);
        for (std::size_t k = 0; k < n && !sel.keys.empty(); ++k) {
            const auto ym = static_cast<std::int64_t>(cycled(sel, k));
            s.row({std::to_string(ym / 12), std::to_string(ym % 12 + 1)},
                  sel.costs[k % sel.costs.size()]);
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (!interactive && q == 4) {
        s.out.header = {"tagClass", "country"};
        const std::size_t off = s.offset(countryByPersons.keys.size());
        for (std::size_t k = 0; k < n && !classSel.keys.empty() && !countryByPersons.keys.empty();
             ++k) {
            s.row({className(cycled(classSel, k)),
                   countryName(cycled(countryByPersons, off + k))},
                  classSel.costs[k % classSel.costs.size()]);
        }
        s.out.achievedBand = classSel.achievedBand;
    } else if (!interactive && (q == 5 || q == 15 || q == 17 || q == 23)) {
        s.out.header = {"country"};
        for (std::size_t k = 0; k < n && !countryByPersons.keys.empty(); ++k) {
            s.row({countryName(cycled(countryByPersons, k))},
                  countryByPersons.costs[k % countryByPersons.costs.size()]);
        }
        s.out.achievedBand = countryByPersons.achievedBand;
    } else if (!interactive && (q == 6 || q == 7 || q == 8)) {
        s.out.header = {"tag"};
        for (std::size_t k = 0; k < n && !tagSel.keys.empty(); ++k) {
            s.row({tagName(cycled(tagSel, k))}, tagSel.costs[k % tagSel.costs.size()]);
        }
        s.out.achievedBand = tagSel.achievedBand;
    } else if (!interactive && q == 9) {
        s.out.header = {"tagClass1", "tagClass2", "threshold"};
        std::vector<std::int64_t> sizes;
        for (const Forum& f : g.forums) sizes.push_back(static_cast<std::int64_t>(f.members.size()));
        const std::string threshold = std::to_string(median_of_sorted(std::move(sizes)));
        for (std::size_t k = 0; k < n && !classSel.keys.empty(); ++k) {
            s.row({className(cycled(classSel, k)), className(cycled(classSel, k + 1)), threshold},
                  classSel.costs[k % classSel.costs.size()]);
        }
        s.out.achievedBand = classSel.achievedBand;
    } else if (!interactive && q == 10) {
        s.out.header = {"tag", "date"};
        for (std::size_t k = 0; k < n && !tagSel.keys.empty(); ++k) {
            s.row({tagName(cycled(tagSel, k)), medianDay}, tagSel.costs[k % tagSel.costs.size()]);
        }
        s.out.achievedBand = tagSel.achievedBand;
    } else if (!interactive && q == 11) {
        s.out.header = {"country", "blacklist"};
        for (std::size_t k = 0; k < n && !countryByMessages.keys.empty(); ++k) {
            s.row({countryName(cycled(countryByMessages, k)), "about;never"},
                  countryByMessages.costs[k % countryByMessages.costs.size()]);
        }
        s.out.achievedBand = countryByMessages.achievedBand;
    } else if (!interactive && q == 12) {
        s.out.header = {"date", "likeThreshold"};
        const std::string threshold = std::to_string(
            g.messages.empty() ? 0 : static_cast<std::int64_t>(g.likes.size() /
                                                               g.messages.size()));
        const WindowSelection sel =
            select_similar_costs(cumulative_day_candidates(stats, false), n);
        for (std::size_t k = 0; k < n && !sel.keys.empty(); ++k) {
            s.row({fmt_day(static_cast<std::int64_t>(cycled(sel, k)) * kMsPerDay), threshold},
                  sel.costs[k % sel.costs.size()]);
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (!interactive && q == 13) {
        s.out.header = {"country"};
        for (std::size_t k = 0; k < n && !countryByMessages.keys.empty(); ++k) {
            s.row({countryName(cycled(countryByMessages, k))},
                  countryByMessages.costs[k % countryByMessages.costs.size()]);
        }
        s.out.achievedBand = countryByMessages.achievedBand;
    } else if (!interactive && q == 16) {
        s.out.header = {"personId", "country", "tagClass", "minPathDistance", "maxPathDistance"};
        const WindowSelection sel = s.persons(stats.friendOfFriendCount);
        if (!countryByMessages.keys.empty() && !classSel.keys.empty()) {
            const std::size_t off = s.offset(countryByMessages.keys.size());
            for (std::size_t k = 0; k < n; ++k) {
                s.row({num(sel.keys[k]), countryName(cycled(countryByMessages, off + k)),
                       className(cycled(classSel, k)), "2", "3"},
                      sel.costs[k]);
            }
        }
        s.out.achievedBand = sel.achievedBand;
    } else if (!interactive && q == 18) {
        s.out.header = {"date", "lengthThreshold", "languages"};
        std::vector<std::int64_t> lengths;
        for (const Message& m : g.messages) lengths.push_back(m.length);
        const std::string threshold = std::to_string(median_of_sorted(std::move(lengths)));
        std::map<std::string, std::int64_t> postLangs;
        for (const Message& m : g.messages) {
            if (m.is_post() && !m.language.empty()) ++postLangs[m.language];
        }
        std::vector<std::pair<std::int64_t, std::string>> ranked;
        for (const auto& [lang, count] : postLangs) ranked.push_back({-count, lang});
        std::sort(ranked.begin(), ranked.end());
        std::vector<std::string> top;
        for (std::size_t i = 0; i < ranked.size() && i < 2; ++i) top.push_back(ranked[i].second);
        if (!top.empty()) {
            const std::string date = fmt_day(medianMs - 28 * kMsPerDay);
            for (std::size_t k = 0; k < n; ++k) {
                s.row({date, threshold, join_semi(top)}, stats.totalMessages);
            }
        }
    } else if (!interactive && q == 19) {
        s.out.header = {"date", "tagClass1", "tagClass2"};
        std::vector<std::int64_t> birthdays;
        for (const Person& person : g.persons) {
            birthdays.push_back(to_datetime(person.birthday).ms);
        }
        const std::string date = fmt_day(median_of_sorted(std::move(birthdays)));
        for (std::size_t k = 0; k < n && !classSel.keys.empty(); ++k) {
            s.row({date, className(cycled(classSel, k)), className(cycled(classSel, k + 1))},
                  classSel.costs[k % classSel.costs.size()]);
        }
        s.out.achievedBand = classSel.achievedBand;
    } else if (!interactive && q == 20) {
        s.out.header = {"tagClasses"};
        for (std::size_t k = 0; k < n && !classSel.keys.empty(); ++k) {
            std::vector<std::string> names;
            for (std::size_t j = 0; j < 3 && j < classSel.keys.size(); ++j) {
                names.push_back(className(cycled(classSel, k + j)));
            }
            std::sort(names.begin(), names.end());
            names.erase(std::unique(names.begin(), names.end()), names.end());
            s.row({join_semi(names)}, classSel.costs[k % classSel.costs.size()]);
        }
        s.out.achievedBand = classSel.achievedBand;
    } else if (!interactive && q == 21) {
        s.out.header = {"country", "endDate"};
        for (std::size_t k = 0; k < n && !countryByPersons.keys.empty(); ++k) {
            s.row({countryName(cycled(countryByPersons, k)), medianDay},
                  countryByPersons.costs[k % countryByPersons.costs.size()]);
        }
        s.out.achievedBand = countryByPersons.achievedBand;
    } else if (!interactive && q == 22) {
        s.out.header = {"country1", "country2"};
        for (std::size_t k = 0; k < n && !countryByPersons.keys.empty(); ++k) {
            s.row({countryName(cycled(countryByPersons, k)),
                   countryName(cycled(countryByPersons, k + 1))},
                  countryByPersons.costs[k % countryByPersons.costs.size()]);
        }
        s.out.achievedBand = countryByPersons.achievedBand;
    } else if (!interactive && q == 24) {
        s.out.header = {"tagClass"};
        for (std::size_t k = 0; k < n && !classSel.keys.empty(); ++k) {
            s.row({className(cycled(classSel, k))}, classSel.costs[k % classSel.costs.size()]);
        }
        s.out.achievedBand = classSel.achievedBand;
    } else if (!interactive && q == 25) {
        s.out.header = {"person1Id", "person2Id", "startDate", "endDate"};
        pair_rows(s.persons(stats.friendOfFriendCount),
                  {windowStart, fmt_day(medianMs + 14 * kMsPerDay)});
    } else {
        throw ConfigError("unknown parameter template " + template_name(id));
    }
    return s.out;
}

std::vector<CuratedParameters> curate_all(const GraphSnapshot& g, const CurationStats& stats,
                                          std::size_t n, std::uint64_t seed) {
    std::vector<CuratedParameters> out;
    for (TemplateId id : all_templates()) out.push_back(curate_template(g, stats, id, n, seed));
    return out;
}

std::string person_binding_json(const GraphSnapshot& g, Id personId) {
    const Person& person = g.person(personId);
    std::string name;
    for (char c : person.firstName) {
        if (c == '"' || c == '\\') name += '\\';
        name += c;
    }
    const std::string id = std::to_string(personId);
    return "{\"PersonID\": " + id + ", \"Name\": \"" + name +
           "\", \"PersonURI\": \"http://www.ldbc.eu/ldbc_socialnet/1.0/data/pers" + id + "\"}";
}

Manifest write_parameter_files(const std::vector<CuratedParameters>& params,
                               const std::filesystem::path& dir, ParamFileStyle style) {
    const std::filesystem::path root = dir / "substitution_parameters";
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());

    Manifest manifest;
    for (const CuratedParameters& p : params) {
        const std::string rel = template_name(p.id) + "_param.txt";
        std::ofstream out(root / rel, std::ios::binary);
        if (!out) throw IoError("cannot open " + (root / rel).string());

        const bool jsonLines = style == ParamFileStyle::JsonPersons &&
                               p.header.size() == 2 && p.header[0] == "personId" &&
                               p.header[1] == "firstName";
        if (jsonLines) {
            for (const auto& row : p.rows) {
                const std::string name = row[1];
                std::string escaped;
                for (char c : name) {
                    if (c == '"' || c == '\\') escaped += '\\';
                    escaped += c;
                }
                out << "{\"PersonID\": " << row[0] << ", \"Name\": \"" << escaped
                    << "\", \"PersonURI\": \"http://www.ldbc.eu/ldbc_socialnet/1.0/data/pers"
                    << row[0] << "\"}\n";
            }
        } else {
            std::string header;
            for (std::size_t i = 0; i < p.header.size(); ++i) {
                if (i) header += '|';
                header += p.header[i];
            }
            out << header << '\n';
            for (const auto& row : p.rows) {
                std::string line;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) line += '|';
                    line += row[i];
                }
                out << line << '\n';
            }
        }
        if (!out) throw IoError("write failed for " + (root / rel).string());
        manifest.push_back({"substitution_parameters/" + rel, p.rows.size()});
    }
    return manifest;
}

std::vector<std::map<std::string, std::string>> read_parameter_file(
    const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(file.string(), 1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '|')) header.push_back(field);
    }
    std::vector<std::map<std::string, std::string>> out;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t next = line.find('|', start);
            fields.push_back(line.substr(start, next - start));
            if (next == std::string::npos) break;
            start = next + 1;
        }
        if (fields.size() != header.size()) {
            throw ParseError(file.string(), lineNo, "expected " +
                                                        std::to_string(header.size()) +
                                                        " fields, got " +
                                                        std::to_string(fields.size()));
        }
        std::map<std::string, std::string> binding;
        for (std::size_t i = 0; i < header.size(); ++i) binding[header[i]] = fields[i];
        out.push_back(std::move(binding));
    }
    return out;
}

}  // namespace snb
