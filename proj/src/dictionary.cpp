#include "snb/dictionary.hpp"

#include <algorithm>
#include <charconv>

namespace snb {

// ---------------------------------------------------------------------------
// PropertyDictionary
// ---------------------------------------------------------------------------

void PropertyDictionary::add(std::string value, std::string key, double weight, std::string aux) {
    entries_.push_back({std::move(value), std::move(key), weight, std::move(aux)});
}

void PropertyDictionary::finalize() {
    byKey_.clear();
    global_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        byKey_[entries_[i].key].push_back(i);
        global_.push_back(i);
    }
    auto rank = [this](std::vector<std::size_t>& idx) {
        std::sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
            if (entries_[a].weight != entries_[b].weight) {
                return entries_[a].weight > entries_[b].weight;
            }
            return entries_[a].value < entries_[b].value;
        });
    };
    for (auto& [k, idx] : byKey_) rank(idx);
    rank(global_);
}

const std::vector<std::size_t>& PropertyDictionary::ranking(const std::string& key) const {
    auto it = byKey_.find(key);
    return it == byKey_.end() ? global_ : it->second;
}

const std::string& PropertyDictionary::sample(const std::string& key, rng::Stream& rng,
                                              double rankGeoP) const {
    if (entries_.empty()) throw EmptyDictionaryError("property dictionary has no entries");
    const auto& idx = ranking(key);
    const int rank = rng.truncated_geometric(rankGeoP, static_cast<int>(idx.size()));
    return entries_[idx[static_cast<std::size_t>(rank - 1)]].value;
}

const std::string& PropertyDictionary::sample_uniform(rng::Stream& rng) const {
    if (entries_.empty()) throw EmptyDictionaryError("property dictionary has no entries");
    return entries_[rng.below(entries_.size())].value;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

std::vector<std::vector<std::string>> parse_dictionary_text(std::string_view text,
                                                            const std::string& what) {
    std::vector<std::vector<std::string>> records;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineNo;
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::size_t f = 0;
        while (true) {
            const std::size_t bar = line.find('|', f);
            if (bar == std::string_view::npos) {
                fields.emplace_back(line.substr(f));
                break;
            }
            fields.emplace_back(line.substr(f, bar - f));
            f = bar + 1;
        }
        if (fields.size() == 1 && fields[0].empty()) {
            throw ParseError(what, lineNo, "empty record");
        }
        records.push_back(std::move(fields));
    }
    return records;
}

namespace {

double parse_weight(const std::string& s, const std::string& what, std::size_t rec) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(what, rec, "malformed weight '" + s + "'");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t semi = s.find(';', pos);
        if (semi == std::string::npos) {
            if (pos < s.size()) out.push_back(s.substr(pos));
            break;
        }
        if (semi > pos) out.push_back(s.substr(pos, semi - pos));
        pos = semi + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Embedded corpus
//
// Format (shared by every dictionary): UTF-8, one record per line, fields
// separated by '|', '#' starts a comment line, blank lines ignored. Multi-
// valued fields use ';' between elements. See the README for the per-
// dictionary field lists.
// ---------------------------------------------------------------------------

// name|continent|ip_prefix|population_weight|languages|cities
constexpr const char* kCountries = R"(
# country dictionary
China|Asia|36.4|1350|zh|Beijing;Shanghai;Guangzhou
India|Asia|59.1|1250|hi;en|Delhi;Mumbai;Bangalore
United States|North America|24.7|310|en|New York;Los Angeles;Chicago
Indonesia|Asia|114.5|240|id|Jakarta;Surabaya;Bandung
Brazil|South America|177.2|195|pt|Sao Paulo;Rio de Janeiro;Salvador
Pakistan|Asia|39.3|175|ur;en|Karachi;Lahore;Islamabad
Germany|Europe|77.8|82|de|Berlin;Munich;Hamburg
Japan|Asia|126.9|128|ja|Tokyo;Osaka;Nagoya
France|Europe|90.6|65|fr|Paris;Lyon;Marseille
United Kingdom|Europe|81.2|62|en|London;Manchester;Birmingham
Italy|Europe|79.4|60|it|Rome;Milan;Naples
Spain|Europe|88.5|46|es|Madrid;Barcelona;Valencia
Canada|North America|70.2|34|en;fr|Toronto;Montreal;Vancouver
Australia|Oceania|101.8|22|en|Sydney;Melbourne;Brisbane
Netherlands|Europe|62.3|17|nl|Amsterdam;Rotterdam;Utrecht
Sweden|Europe|83.9|9|sv|Stockholm;Gothenburg;Malmo
Poland|Europe|91.7|38|pl|Warsaw;Krakow;Wroclaw
Mexico|North America|187.1|112|es|Mexico City;Guadalajara;Monterrey
Argentina|South America|190.4|40|es|Buenos Aires;Cordoba;Rosario
Egypt|Africa|41.6|80|ar|Cairo;Alexandria;Giza
)";

// name|country|gender|weight
constexpr const char* kFirstNames = R"(
Wei|China|male|8
Jun|China|male|7
Hao|China|male|6
Lei|China|male|5
Yan|China|female|8
Li|China|female|7
Na|China|female|6
Xiu|China|female|5
Raj|India|male|8
Amit|India|male|7
Arjun|India|male|6
Vikram|India|male|5
Priya|India|female|8
Anjali|India|female|7
Sita|India|female|6
Lakshmi|India|female|5
James|United States|male|8
John|United States|male|7
Michael|United States|male|6
David|United States|male|5
Mary|United States|female|8
Jennifer|United States|female|7
Linda|United States|female|6
Emily|United States|female|5
Budi|Indonesia|male|8
Agus|Indonesia|male|7
Eko|Indonesia|male|6
Joko|Indonesia|male|5
Siti|Indonesia|female|8
Dewi|Indonesia|female|7
Sri|Indonesia|female|6
Ratna|Indonesia|female|5
Joao|Brazil|male|8
Pedro|Brazil|male|7
Lucas|Brazil|male|6
Gabriel|Brazil|male|5
Maria|Brazil|female|8
Ana|Brazil|female|7
Julia|Brazil|female|6
Beatriz|Brazil|female|5
Ali|Pakistan|male|8
Ahmed|Pakistan|male|7
Hassan|Pakistan|male|6
Usman|Pakistan|male|5
Fatima|Pakistan|female|8
Ayesha|Pakistan|female|7
Zainab|Pakistan|female|6
Sana|Pakistan|female|5
Hans|Germany|male|8
Peter|Germany|male|7
Klaus|Germany|male|6
Stefan|Germany|male|5
Anna|Germany|female|8
Julia|Germany|female|7
Laura|Germany|female|6
Katrin|Germany|female|5
Hiroshi|Japan|male|8
Takashi|Japan|male|7
Kenta|Japan|male|6
Yuki|Japan|male|5
Sakura|Japan|female|8
Yui|Japan|female|7
Hana|Japan|female|6
Aiko|Japan|female|5
Jean|France|male|8
Pierre|France|male|7
Louis|France|male|6
Antoine|France|male|5
Marie|France|female|8
Sophie|France|female|7
Camille|France|female|6
Claire|France|female|5
Oliver|United Kingdom|male|8
Harry|United Kingdom|male|7
George|United Kingdom|male|6
Jack|United Kingdom|male|5
Olivia|United Kingdom|female|8
Amelia|United Kingdom|female|7
Isla|United Kingdom|female|6
Emma|United Kingdom|female|5
Marco|Italy|male|8
Luca|Italy|male|7
Giuseppe|Italy|male|6
Matteo|Italy|male|5
Giulia|Italy|female|8
Sofia|Italy|female|7
Francesca|Italy|female|6
Chiara|Italy|female|5
Carlos|Spain|male|8
Javier|Spain|male|7
Miguel|Spain|male|6
Pablo|Spain|male|5
Lucia|Spain|female|8
Carmen|Spain|female|7
Elena|Spain|female|6
Marta|Spain|female|5
Liam|Canada|male|8
Noah|Canada|male|7
William|Canada|male|6
Ethan|Canada|male|5
Emma|Canada|female|8
Charlotte|Canada|female|7
Ava|Canada|female|6
Chloe|Canada|female|5
Oliver|Australia|male|8
Noah|Australia|male|7
Thomas|Australia|male|6
Lachlan|Australia|male|5
Charlotte|Australia|female|8
Mia|Australia|female|7
Ruby|Australia|female|6
Grace|Australia|female|5
Daan|Netherlands|male|8
Sem|Netherlands|male|7
Lucas|Netherlands|male|6
Bram|Netherlands|male|5
Emma|Netherlands|female|8
Sophie|Netherlands|female|7
Lotte|Netherlands|female|6
Femke|Netherlands|female|5
Erik|Sweden|male|8
Lars|Sweden|male|7
Oscar|Sweden|male|6
Gustav|Sweden|male|5
Astrid|Sweden|female|8
Elsa|Sweden|female|7
Freja|Sweden|female|6
Ingrid|Sweden|female|5
Jan|Poland|male|8
Piotr|Poland|male|7
Andrzej|Poland|male|6
Marek|Poland|male|5
Anna|Poland|female|8
Maria|Poland|female|7
Agnieszka|Poland|female|6
Zofia|Poland|female|5
Jose|Mexico|male|8
Luis|Mexico|male|7
Juan|Mexico|male|6
Diego|Mexico|male|5
Guadalupe|Mexico|female|8
Sofia|Mexico|female|7
Valentina|Mexico|female|6
Regina|Mexico|female|5
Santiago|Argentina|male|8
Mateo|Argentina|male|7
Benjamin|Argentina|male|6
Felipe|Argentina|male|5
Valentina|Argentina|female|8
Martina|Argentina|female|7
Catalina|Argentina|female|6
Agustina|Argentina|female|5
Mohamed|Egypt|male|8
Ahmed|Egypt|male|7
Omar|Egypt|male|6
Youssef|Egypt|male|5
Fatma|Egypt|female|8
Mona|Egypt|female|7
Nour|Egypt|female|6
Salma|Egypt|female|5
)";

// name|country|weight
constexpr const char* kLastNames = R"(
Wang|China|9
Li|China|8
Zhang|China|7
Chen|China|6
Liu|China|5
Sharma|India|9
Patel|India|8
Singh|India|7
Kumar|India|6
Gupta|India|5
Smith|United States|9
Johnson|United States|8
Williams|United States|7
Brown|United States|6
Jones|United States|5
Wijaya|Indonesia|9
Santoso|Indonesia|8
Susanto|Indonesia|7
Halim|Indonesia|6
Gunawan|Indonesia|5
Silva|Brazil|9
Santos|Brazil|8
Oliveira|Brazil|7
Souza|Brazil|6
Costa|Brazil|5
Khan|Pakistan|9
Malik|Pakistan|8
Sheikh|Pakistan|7
Qureshi|Pakistan|6
Butt|Pakistan|5
Muller|Germany|9
Schmidt|Germany|8
Schneider|Germany|7
Fischer|Germany|6
Weber|Germany|5
Sato|Japan|9
Suzuki|Japan|8
Takahashi|Japan|7
Tanaka|Japan|6
Watanabe|Japan|5
Martin|France|9
Bernard|France|8
Dubois|France|7
Thomas|France|6
Robert|France|5
Smith|United Kingdom|9
Jones|United Kingdom|8
Taylor|United Kingdom|7
Brown|United Kingdom|6
Wilson|United Kingdom|5
Rossi|Italy|9
Russo|Italy|8
Ferrari|Italy|7
Esposito|Italy|6
Bianchi|Italy|5
Garcia|Spain|9
Fernandez|Spain|8
Gonzalez|Spain|7
Rodriguez|Spain|6
Lopez|Spain|5
Smith|Canada|9
Brown|Canada|8
Tremblay|Canada|7
Martin|Canada|6
Roy|Canada|5
Smith|Australia|9
Jones|Australia|8
Williams|Australia|7
Brown|Australia|6
Taylor|Australia|5
De Jong|Netherlands|9
Jansen|Netherlands|8
De Vries|Netherlands|7
Van den Berg|Netherlands|6
Bakker|Netherlands|5
Andersson|Sweden|9
Johansson|Sweden|8
Karlsson|Sweden|7
Nilsson|Sweden|6
Eriksson|Sweden|5
Nowak|Poland|9
Kowalski|Poland|8
Wisniewski|Poland|7
Wojcik|Poland|6
Kaminski|Poland|5
Hernandez|Mexico|9
Garcia|Mexico|8
Martinez|Mexico|7
Lopez|Mexico|6
Gonzalez|Mexico|5
Gonzalez|Argentina|9
Rodriguez|Argentina|8
Gomez|Argentina|7
Fernandez|Argentina|6
Lopez|Argentina|5
Hassan|Egypt|9
Mahmoud|Egypt|8
Ibrahim|Egypt|7
Mostafa|Egypt|6
Abdel|Egypt|5
)";

// name|parent (empty parent marks a root)
constexpr const char* kTagClasses = R"(
Thing|
CreativeWork|Thing
Music|CreativeWork
Film|CreativeWork
Book|CreativeWork
Sport|Thing
TeamSport|Sport
Athletics|Sport
Science|Thing
Technology|Science
Mathematics|Science
Politics|Thing
Travel|Thing
)";

// name|tagclass|country|weight
constexpr const char* kTags = R"(
RockMusic|Music|United Kingdom|9
JazzMusic|Music|United States|7
ClassicalMusic|Music|Germany|8
PopMusic|Music|United States|9
FolkMusic|Music|Sweden|5
ActionFilm|Film|United States|9
Documentary|Film|France|6
Animation|Film|Japan|8
FilmNoir|Film|Germany|4
Poetry|Book|France|6
ScienceFiction|Book|United States|8
HistoricalNovel|Book|Italy|5
Biography|Book|United Kingdom|6
Football|TeamSport|Brazil|10
Basketball|TeamSport|United States|8
Cricket|TeamSport|India|10
Volleyball|TeamSport|Brazil|6
Hockey|TeamSport|Canada|8
Marathon|Athletics|Japan|6
Sprinting|Athletics|United States|5
HighJump|Athletics|Sweden|3
Robotics|Technology|Japan|8
WebDevelopment|Technology|United States|8
CryptoCurrency|Technology|Netherlands|5
MachineLearning|Technology|Canada|7
SpaceFlight|Technology|United States|6
NumberTheory|Mathematics|India|5
Geometry|Mathematics|France|4
Statistics|Mathematics|Sweden|5
Astronomy|Science|Australia|6
Chemistry|Science|Germany|6
Genetics|Science|United Kingdom|5
Elections|Politics|India|7
Diplomacy|Politics|France|5
HumanRights|Politics|Argentina|6
Backpacking|Travel|Australia|6
WorldHeritage|Travel|Egypt|7
StreetFood|Travel|Indonesia|8
Photography|CreativeWork|Italy|6
Calligraphy|CreativeWork|China|7
Chess|Sport|Poland|6
)";

// name|city
constexpr const char* kUniversities = R"(
Beijing University of Technology|Beijing
Shanghai Institute of Science|Shanghai
Guangzhou College|Guangzhou
Delhi Technical University|Delhi
University of Mumbai Sciences|Mumbai
Bangalore Institute of Computing|Bangalore
New York Metropolitan University|New York
University of Los Angeles Arts|Los Angeles
Chicago Polytechnic|Chicago
Jakarta State University|Jakarta
Surabaya Institute|Surabaya
Bandung College of Engineering|Bandung
Sao Paulo Federal University|Sao Paulo
Rio de Janeiro Institute|Rio de Janeiro
Salvador Coastal University|Salvador
Karachi University of Commerce|Karachi
Lahore College of Sciences|Lahore
Islamabad National University|Islamabad
Berlin Technical Academy|Berlin
Munich Institute of Physics|Munich
Hamburg Maritime University|Hamburg
Tokyo Metropolitan Institute|Tokyo
Osaka College of Engineering|Osaka
Nagoya University of Design|Nagoya
Paris Central School|Paris
Lyon Academy of Letters|Lyon
Marseille Institute of the Sea|Marseille
London Royal College|London
Manchester Science University|Manchester
Birmingham Institute|Birmingham
Rome Classical University|Rome
Milan Polytechnic Institute|Milan
Naples Academy|Naples
Madrid Complores University|Madrid
Barcelona School of Arts|Barcelona
Valencia Institute of Agriculture|Valencia
Toronto Lakeside University|Toronto
Montreal Bilingual College|Montreal
Vancouver Pacific University|Vancouver
Sydney Harbour University|Sydney
Melbourne Institute of Research|Melbourne
Brisbane College|Brisbane
Amsterdam Canal University|Amsterdam
Rotterdam School of Logistics|Rotterdam
Utrecht Science College|Utrecht
Stockholm Nordic University|Stockholm
Gothenburg Institute|Gothenburg
Malmo Sound College|Malmo
Warsaw Central University|Warsaw
Krakow Historical Academy|Krakow
Wroclaw Institute of Technology|Wroclaw
Mexico City Autonomous University|Mexico City
Guadalajara Institute|Guadalajara
Monterrey School of Industry|Monterrey
Buenos Aires National University|Buenos Aires
Cordoba Old University|Cordoba
Rosario River College|Rosario
Cairo Grand University|Cairo
Alexandria Library University|Alexandria
Giza Plateau Institute|Giza
)";

// name|country
constexpr const char* kCompanies = R"(
Golden Dragon Logistics|China
Redwall Electronics|China
Jade River Foods|China
Lotus Software Services|India
Peacock Textiles|India
Monsoon Motors|India
Liberty Data Systems|United States
Bluegrass Aviation|United States
Sequoia Retail Group|United States
Archipelago Shipping|Indonesia
Komodo Mining|Indonesia
Batik Garments|Indonesia
Amazonia Agro|Brazil
Carioca Media|Brazil
Cerrado Energy|Brazil
Indus Valley Cement|Pakistan
Khyber Telecom|Pakistan
Harbor Textile Mills|Pakistan
Schwarzwald Machinery|Germany
Nordsee Chemicals|Germany
Alpenrad Automotive|Germany
Sakura Precision|Japan
Shinkai Robotics|Japan
Torii Trading|Japan
Lumiere Cosmetics|France
Vigne Atlantique|France
Horloge Aerospace|France
Thames Insurance|United Kingdom
Albion Publishing|United Kingdom
Crown Rail Services|United Kingdom
Vesuvio Ceramics|Italy
Adriatico Fashion|Italy
Toscana Olive Works|Italy
Iberia Solar|Spain
Flamenco Beverages|Spain
Meseta Steel|Spain
Maple Leaf Forestry|Canada
Aurora Softworks|Canada
Hudson Freight|Canada
Outback Minerals|Australia
Coral Sea Tourism|Australia
Southern Cross Dairy|Australia
Tulip Biotech|Netherlands
Polder Wind Energy|Netherlands
Delta Dredging|Netherlands
Norrland Timber|Sweden
Midnight Sun Games|Sweden
Fjord Furniture|Sweden
Vistula Pharma|Poland
Amber Coast IT|Poland
Silesia Coal Trade|Poland
Azteca Foods|Mexico
Sierra Madre Mining|Mexico
Pacifico Breweries|Mexico
Pampa Beef Exporters|Argentina
Tango Media Group|Argentina
Andes Wine Estates|Argentina
Nile Delta Cotton|Egypt
Pharaoh Tourism|Egypt
Suez Marine Services|Egypt
)";

// name|weight
constexpr const char* kBrowsers = R"(
Chrome|40
Firefox|30
Internet Explorer|15
Safari|10
Opera|5
)";

// domain
constexpr const char* kEmailDomains = R"(
gmail.com
yahoo.com
hotmail.com
outlook.com
gmx.com
mail.com
zoho.com
protonmail.com
)";

// word
constexpr const char* kWords = R"(
about
maybe
right
great
photo
trip
yesterday
today
tomorrow
thanks
weather
music
game
match
team
city
travel
plan
idea
book
film
song
friend
party
weekend
morning
evening
coffee
dinner
garden
river
mountain
beach
train
flight
ticket
market
street
museum
concert
festival
winter
summer
spring
autumn
rain
sunny
cold
warm
happy
tired
busy
free
new
old
good
better
best
small
large
quick
slow
early
late
first
last
next
again
never
always
often
sometimes
really
quite
very
totally
honestly
finally
suddenly
together
alone
nearby
far
home
work
school
holiday
picture
video
story
news
update
question
answer
reply
comment
share
like
love
meet
visit
watch
listen
read
write
learn
teach
play
run
walk
swim
cook
bake
build
paint
draw
sing
dance
laugh
smile
think
remember
forget
wonder
hope
wish
start
finish
continue
change
improve
explore
discover
enjoy
relax
)";

Dictionaries build_builtin() {
    Dictionaries d;

    for (const auto& rec : parse_dictionary_text(kCountries, "countries")) {
        if (rec.size() != 6) throw ParseError("countries", 0, "expected 6 fields");
        Dictionaries::Country c;
        c.name = rec[0];
        c.continent = rec[1];
        c.ipPrefix = rec[2];
        c.weight = parse_weight(rec[3], "countries", 0);
        c.languages = split_list(rec[4]);
        c.cities = split_list(rec[5]);
        d.countries.push_back(std::move(c));
    }
    for (const auto& rec : parse_dictionary_text(kFirstNames, "firstnames")) {
        if (rec.size() != 4) throw ParseError("firstnames", 0, "expected 4 fields");
        d.firstNames.add(rec[0], rec[1] + "|" + rec[2], parse_weight(rec[3], "firstnames", 0),
                         rec[2]);
    }
    d.firstNames.finalize();
    for (const auto& rec : parse_dictionary_text(kLastNames, "lastnames")) {
        if (rec.size() != 3) throw ParseError("lastnames", 0, "expected 3 fields");
        d.lastNames.add(rec[0], rec[1], parse_weight(rec[2], "lastnames", 0));
    }
    d.lastNames.finalize();
    for (const auto& rec : parse_dictionary_text(kTagClasses, "tagclasses")) {
        if (rec.size() != 2) throw ParseError("tagclasses", 0, "expected 2 fields");
        d.tagClasses.emplace_back(rec[0], rec[1]);
    }
    for (const auto& rec : parse_dictionary_text(kTags, "tags")) {
        if (rec.size() != 4) throw ParseError("tags", 0, "expected 4 fields");
        d.tags.add(rec[0], rec[2], parse_weight(rec[3], "tags", 0));
        d.tagClassOfTag[rec[0]] = rec[1];
    }
    d.tags.finalize();
    for (const auto& rec : parse_dictionary_text(kUniversities, "universities")) {
        if (rec.size() != 2) throw ParseError("universities", 0, "expected 2 fields");
        d.universities.emplace_back(rec[0], rec[1]);
    }
    for (const auto& rec : parse_dictionary_text(kCompanies, "companies")) {
        if (rec.size() != 2) throw ParseError("companies", 0, "expected 2 fields");
        d.companies.emplace_back(rec[0], rec[1]);
    }
    for (const auto& rec : parse_dictionary_text(kBrowsers, "browsers")) {
        if (rec.size() != 2) throw ParseError("browsers", 0, "expected 2 fields");
        d.browsers.add(rec[0], "", parse_weight(rec[1], "browsers", 0));
    }
    d.browsers.finalize();
    for (const auto& rec : parse_dictionary_text(kEmailDomains, "emaildomains")) {
        d.emailDomains.push_back(rec[0]);
    }
    for (const auto& rec : parse_dictionary_text(kWords, "words")) {
        d.words.push_back(rec[0]);
    }
    return d;
}

}  // namespace

const Dictionaries& Dictionaries::builtin() {
    static const Dictionaries d = build_builtin();
    return d;
}

void Dictionaries::require_nonempty() const {
    if (countries.empty()) throw EmptyDictionaryError("country dictionary is empty");
    if (firstNames.empty()) throw EmptyDictionaryError("first name dictionary is empty");
    if (lastNames.empty()) throw EmptyDictionaryError("last name dictionary is empty");
    if (tags.empty()) throw EmptyDictionaryError("tag dictionary is empty");
    if (tagClasses.empty()) throw EmptyDictionaryError("tag class dictionary is empty");
    if (universities.empty()) throw EmptyDictionaryError("university dictionary is empty");
    if (companies.empty()) throw EmptyDictionaryError("company dictionary is empty");
    if (browsers.empty()) throw EmptyDictionaryError("browser dictionary is empty");
    if (emailDomains.empty()) throw EmptyDictionaryError("email domain dictionary is empty");
    if (words.empty()) throw EmptyDictionaryError("word dictionary is empty");
}

// ---------------------------------------------------------------------------
// StaticWorld
// ---------------------------------------------------------------------------

namespace {

std::string url_for(const std::string& kind, const std::string& name) {
    std::string slug = name;
    for (char& c : slug) {
        if (c == ' ') c = '_';
    }
    return "https://example.org/" + kind + "/" + slug;
}

}  // namespace

Id StaticWorld::tag_id(const std::string& name) const {
    auto it = tagByName.find(name);
    if (it == tagByName.end()) throw SnbError("unknown tag name " + name);
    return it->second;
}

std::size_t StaticWorld::sample_country(rng::Stream& rng) const {
    double u = rng.uniform() * totalCountryWeight;
    for (std::size_t i = 0; i < countries.size(); ++i) {
        u -= countries[i].weight;
        if (u < 0.0) return i;
    }
    return countries.size() - 1;
}

StaticWorld build_static_world(const Dictionaries& dicts) {
    dicts.require_nonempty();
    StaticWorld w;

    // Places: continents, then countries, then cities; ids follow that order.
    Id nextPlace = 0;
    std::vector<std::string> continents;
    for (const auto& c : dicts.countries) {
        if (std::find(continents.begin(), continents.end(), c.continent) == continents.end()) {
            continents.push_back(c.continent);
        }
    }
    for (const auto& name : continents) {
        w.places.push_back({nextPlace, name, url_for("place", name), PlaceKind::Continent, kNoId});
        w.placeByName[name] = nextPlace;
        ++nextPlace;
    }
    for (const auto& c : dicts.countries) {
        const Id id = nextPlace++;
        w.places.push_back({id, c.name, url_for("place", c.name), PlaceKind::Country,
                            w.placeByName.at(c.continent)});
        w.placeByName[c.name] = id;
        StaticWorld::CountryInfo info;
        info.id = id;
        info.name = c.name;
        info.ipPrefix = c.ipPrefix;
        info.weight = c.weight;
        info.languages = c.languages;
        w.countries.push_back(std::move(info));
        w.totalCountryWeight += c.weight;
    }
    for (std::size_t i = 0; i < dicts.countries.size(); ++i) {
        for (const auto& city : dicts.countries[i].cities) {
            const Id id = nextPlace++;
            w.places.push_back(
                {id, city, url_for("place", city), PlaceKind::City, w.countries[i].id});
            w.placeByName[city] = id;
            w.countries[i].cities.push_back(id);
        }
    }

    // Organisations: universities first (dictionary order), then companies.
    std::unordered_map<std::string, std::size_t> countryIndexByCity;
    for (std::size_t i = 0; i < dicts.countries.size(); ++i) {
        for (const auto& city : dicts.countries[i].cities) countryIndexByCity[city] = i;
    }
    Id nextOrg = 0;
    for (const auto& [name, city] : dicts.universities) {
        auto cityIt = w.placeByName.find(city);
        if (cityIt == w.placeByName.end()) {
            throw SnbError("university " + name + " references unknown city " + city);
        }
        w.organisations.push_back(
            {nextOrg, OrgKind::University, name, url_for("organisation", name), cityIt->second});
        w.countries[countryIndexByCity.at(city)].universities.push_back(nextOrg);
        ++nextOrg;
    }
    for (const auto& [name, country] : dicts.companies) {
        auto it = std::find_if(w.countries.begin(), w.countries.end(),
                               [&](const auto& c) { return c.name == country; });
        if (it == w.countries.end()) {
            throw SnbError("company " + name + " references unknown country " + country);
        }
        w.organisations.push_back(
            {nextOrg, OrgKind::Company, name, url_for("organisation", name), it->id});
        it->companies.push_back(nextOrg);
        ++nextOrg;
    }

    // Tag classes, then tags, in dictionary order.
    Id nextClass = 0;
    for (const auto& [name, parent] : dicts.tagClasses) {
        TagClass tc{nextClass, name, url_for("tagclass", name), kNoId};
        if (!parent.empty()) {
            auto it = w.tagClassByName.find(parent);
            if (it == w.tagClassByName.end()) {
                throw SnbError("tag class " + name + " references unknown parent " + parent);
            }
            tc.parentId = it->second;
        }
        w.tagClassByName[name] = nextClass;
        w.tagClasses.push_back(std::move(tc));
        ++nextClass;
    }
    Id nextTag = 0;
    for (const auto& entry : dicts.tags.entries()) {
        if (w.tagByName.count(entry.value) != 0) continue;  // one tag per name
        auto classIt = dicts.tagClassOfTag.find(entry.value);
        if (classIt == dicts.tagClassOfTag.end()) {
            throw SnbError("tag " + entry.value + " has no tag class");
        }
        auto classIdIt = w.tagClassByName.find(classIt->second);
        if (classIdIt == w.tagClassByName.end()) {
            throw SnbError("tag " + entry.value + " references unknown class " + classIt->second);
        }
        w.tags.push_back(
            {nextTag, entry.value, url_for("tag", entry.value), classIdIt->second});
        w.tagByName[entry.value] = nextTag;
        ++nextTag;
    }

    return w;
}

}  // namespace snb
