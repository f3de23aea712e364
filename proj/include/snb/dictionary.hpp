#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "snb/graph.hpp"
#include "snb/rng.hpp"

namespace snb {

/// Weighted value dictionary with per-key rankings.
///
/// Entries are (value, correlation key, weight) records. For every key the
/// entries carrying that key are ranked by weight (descending, value name as
/// tiebreak); drawing with that key samples a rank from a truncated geometric
/// distribution and returns the value at that rank, so low ranks dominate but
/// every entry stays reachable.
class PropertyDictionary {
  public:
    struct Entry {
        std::string value;
        std::string key;
        double weight = 1.0;
        std::string aux;
    };

    void add(std::string value, std::string key, double weight, std::string aux = {});
    /// Builds the rankings; call once after the last add().
    void finalize();

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    /// Entry indices ranked best-first for the key. Falls back to the global
    /// ranking when the key has no entries of its own.
    const std::vector<std::size_t>& ranking(const std::string& key) const;

    const std::string& sample(const std::string& key, rng::Stream& rng,
                              double rankGeoP = 0.25) const;
    const std::string& sample_uniform(rng::Stream& rng) const;

  private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::vector<std::size_t>> byKey_;
    std::vector<std::size_t> global_;
};

/// Splits dictionary text into records: one record per line, fields separated
/// by '|', lines starting with '#' and blank lines skipped. Whitespace around
/// fields is preserved (values may legitimately contain spaces).
std::vector<std::vector<std::string>> parse_dictionary_text(std::string_view text,
                                                            const std::string& what);

/// The value dictionaries that drive attribute generation.
struct Dictionaries {
    struct Country {
        std::string name;
        std::string continent;
        std::string ipPrefix;  // first two IPv4 octets, e.g. "77.3"
        double weight = 1.0;
        std::vector<std::string> languages;
        std::vector<std::string> cities;
    };

    std::vector<Country> countries;
    PropertyDictionary firstNames;  // key "<country>|<gender>", aux = gender
    PropertyDictionary lastNames;   // key "<country>"
    PropertyDictionary tags;        // key "<country>", value = tag name
    std::vector<std::pair<std::string, std::string>> tagClasses;  // (name, parent or "")
    std::unordered_map<std::string, std::string> tagClassOfTag;
    std::vector<std::pair<std::string, std::string>> universities;  // (name, city)
    std::vector<std::pair<std::string, std::string>> companies;     // (name, country)
    PropertyDictionary browsers;  // key ""
    std::vector<std::string> emailDomains;
    std::vector<std::string> words;

    /// The corpus compiled into the library.
    static const Dictionaries& builtin();

    /// Throws EmptyDictionaryError when any required dictionary is empty.
    void require_nonempty() const;
};

/// Static entities derived from the dictionaries: places, organisations, tag
/// classes and tags, with dense ids in dictionary order, plus the lookup
/// tables the generator needs.
struct StaticWorld {
    std::vector<Place> places;
    std::vector<Organisation> organisations;
    std::vector<Tag> tags;
    std::vector<TagClass> tagClasses;

    struct CountryInfo {
        Id id = kNoId;
        std::string name;
        std::string ipPrefix;
        double weight = 1.0;
        std::vector<std::string> languages;
        std::vector<Id> cities;
        std::vector<Id> universities;
        std::vector<Id> companies;
    };
    std::vector<CountryInfo> countries;  // dictionary order
    double totalCountryWeight = 0.0;

    std::unordered_map<std::string, Id> placeByName;
    std::unordered_map<std::string, Id> tagByName;
    std::unordered_map<std::string, Id> tagClassByName;

    Id tag_id(const std::string& name) const;
    /// Index into countries for a weighted draw.
    std::size_t sample_country(rng::Stream& rng) const;
};

StaticWorld build_static_world(const Dictionaries& dicts);

}  // namespace snb
