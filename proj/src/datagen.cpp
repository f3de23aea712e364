#include "snb/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <tuple>
#include <unordered_set>

namespace snb {

namespace {

constexpr std::int64_t kMsPerDay = 86'400'000LL;

std::int64_t year_start_ms(std::int32_t year) {
    return days_from_civil(year, 1, 1) * kMsPerDay;
}

struct PairHash {
    std::size_t operator()(const std::pair<Id, Id>& p) const {
        return std::hash<Id>()(rng::mix64(p.first) ^ p.second);
    }
};

using PairSet = std::unordered_set<std::pair<Id, Id>, PairHash>;

std::pair<Id, Id> ordered(Id a, Id b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

void parallel_ranges(int workers, std::uint64_t n,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (workers <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    const auto w = static_cast<std::uint64_t>(workers);
    std::vector<std::thread> threads;
    threads.reserve(w);
    const std::uint64_t chunk = (n + w - 1) / w;
    for (std::uint64_t t = 0; t < w; ++t) {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : threads) t.join();
}

std::string lowercase_slug(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ' ') {
            out.push_back('.');
        } else {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

std::string make_ip(const std::string& prefix, rng::Stream& rng) {
    return prefix + "." + std::to_string(rng.below(256)) + "." +
           std::to_string(1 + rng.below(254));
}

std::string make_content(const Dictionaries& dicts, rng::Stream& rng) {
    const double u = rng.uniform();
    const int nWords = 3 + static_cast<int>(u * u * 35.0);
    std::string out;
    for (int i = 0; i < nWords; ++i) {
        if (i > 0) out.push_back(' ');
        out += dicts.words[rng.below(dicts.words.size())];
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

std::int64_t GeneratorConfig::simulation_start_ms() const {
    return year_start_ms(startYear);
}

std::int64_t GeneratorConfig::simulation_end_ms() const {
    return year_start_ms(startYear + numYears);
}

void GeneratorConfig::validate() const {
    if (numPersons < 1) throw ConfigError("numPersons must be at least 1");
    if (numYears < 1) throw ConfigError("numYears must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (windowSize < 1) throw ConfigError("windowSize must be at least 1");
    if (degreeMean <= 0.0) throw ConfigError("degreeMean must be positive");
    if (degreeSigma < 0.0) throw ConfigError("degreeSigma must be non-negative");
    double sum = 0.0;
    for (double s : dimensionSplit) {
        if (s < 0.0) throw ConfigError("dimensionSplit entries must be non-negative");
        sum += s;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("dimensionSplit must sum to 1");
    if (geometricP <= 0.0 || geometricP >= 1.0) throw ConfigError("geometricP must be in (0,1)");
    if (bulkFraction <= 0.0 || bulkFraction > 1.0) {
        throw ConfigError("bulkFraction must be in (0,1]");
    }
    for (double p : {flashmobPostFraction, tagUniformMix, albumProbability, groupProbability,
                     abroadProbability}) {
        if (p < 0.0 || p > 1.0) throw ConfigError("probability knobs must be in [0,1]");
    }
    if (flashmobHalfWidthHours <= 0.0) throw ConfigError("flashmobHalfWidthHours must be positive");
    if (wallPostsPerFriend < 0.0 || commentsPerPost < 0.0 || likesPerMessage < 0.0) {
        throw ConfigError("volume knobs must be non-negative");
    }
}

// ---------------------------------------------------------------------------
// Pass 1: persons
// ---------------------------------------------------------------------------

PersonGenResult generate_persons(const GeneratorConfig& cfg, const Dictionaries& dicts,
                                 const StaticWorld& world) {
    cfg.validate();
    dicts.require_nonempty();

    const std::uint64_t n = cfg.numPersons;
    const std::int64_t simStart = cfg.simulation_start_ms();
    const std::int64_t simEnd = cfg.simulation_end_ms();

    PersonGenResult out;
    out.persons.resize(n);
    out.targetDegree.resize(n);
    out.countryIndex.resize(n);

    struct EdgeBuf {
        std::vector<HasInterestEdge> interests;
        std::vector<StudyAtEdge> study;
        std::vector<WorkAtEdge> work;
    };
    const auto w = static_cast<std::uint64_t>(cfg.workers);
    const std::uint64_t chunk = (n + w - 1) / w;
    std::vector<EdgeBuf> bufs(w);

    parallel_ranges(cfg.workers, n, [&](std::uint64_t lo, std::uint64_t hi) {
        EdgeBuf& buf = bufs[lo / chunk];
        for (std::uint64_t i = lo; i < hi; ++i) {
            rng::Stream attr(cfg.seed, rng::Domain::PersonAttr, i);
            Person p;
            p.id = i;

            const std::size_t ci = world.sample_country(attr);
            const auto& country = world.countries[ci];
            out.countryIndex[i] = static_cast<std::uint32_t>(ci);
            p.cityId = country.cities[attr.below(country.cities.size())];

            p.gender = attr.chance(0.5) ? "male" : "female";
            const std::int32_t birthYear =
                cfg.startYear - 18 - static_cast<std::int32_t>(attr.below(28));
            p.birthday = Date{birthYear, 1 + static_cast<std::int32_t>(attr.below(12)),
                              1 + static_cast<std::int32_t>(attr.below(28))};
            p.creationDate =
                DateTime{simStart + static_cast<std::int64_t>(attr.uniform() *
                                                              static_cast<double>(simEnd - simStart))};
            p.firstName = dicts.firstNames.sample(country.name + "|" + p.gender, attr);
            p.lastName = dicts.lastNames.sample(country.name, attr);
            p.browserUsed = dicts.browsers.sample("", attr);
            p.locationIP = make_ip(country.ipPrefix, attr);

            const int nEmails = 1 + static_cast<int>(attr.below(2));
            const std::string local = lowercase_slug(p.firstName) + "." + lowercase_slug(p.lastName);
            for (int e = 0; e < nEmails; ++e) {
                const auto& domain = dicts.emailDomains[attr.below(dicts.emailDomains.size())];
                p.emails.push_back(local + std::to_string(i) + (e > 0 ? "x" + std::to_string(e) : "") +
                                   "@" + domain);
            }
            p.speaks = country.languages;
            if (attr.chance(0.3) &&
                std::find(p.speaks.begin(), p.speaks.end(), "en") == p.speaks.end()) {
                p.speaks.push_back("en");
            }
            std::sort(p.speaks.begin(), p.speaks.end());
            std::sort(p.emails.begin(), p.emails.end());

            // Interests: country-correlated tags with a uniform admixture.
            const int nInterests = 3 + static_cast<int>(attr.below(8));
            std::vector<Id> interests;
            for (int k = 0; k < nInterests; ++k) {
                const std::string& name = attr.chance(cfg.tagUniformMix)
                                              ? dicts.tags.sample_uniform(attr)
                                              : dicts.tags.sample(country.name, attr);
                const Id tid = world.tag_id(name);
                if (std::find(interests.begin(), interests.end(), tid) == interests.end()) {
                    interests.push_back(tid);
                }
            }
            std::sort(interests.begin(), interests.end());
            for (Id t : interests) buf.interests.push_back({i, t});

            if (!country.universities.empty() && attr.chance(0.8)) {
                const Id uni = country.universities[attr.below(country.universities.size())];
                const auto classYear = birthYear + 18 + static_cast<std::int32_t>(attr.below(7));
                buf.study.push_back({i, uni, classYear});
            }
            if (!country.companies.empty()) {
                const int nJobs = static_cast<int>(attr.below(3));
                std::vector<Id> picked;
                for (int k = 0; k < nJobs; ++k) {
                    const Id comp = country.companies[attr.below(country.companies.size())];
                    if (std::find(picked.begin(), picked.end(), comp) != picked.end()) continue;
                    picked.push_back(comp);
                    const auto workFrom = birthYear + 16 + static_cast<std::int32_t>(attr.below(15));
                    buf.work.push_back({i, comp, workFrom});
                }
            }

            rng::Stream deg(cfg.seed, rng::Domain::PersonDegree, i);
            const double mu = std::log(cfg.degreeMean) - cfg.degreeSigma * cfg.degreeSigma / 2.0;
            double target = std::exp(mu + cfg.degreeSigma * deg.gaussian());
            target = std::max(1.0, std::min(target, static_cast<double>(n - 1 > 0 ? n - 1 : 1)));
            out.targetDegree[i] = static_cast<int>(std::lround(target));
            if (out.targetDegree[i] < 1) out.targetDegree[i] = 1;

            out.persons[i] = std::move(p);
        }
    });

    for (auto& buf : bufs) {
        out.interests.insert(out.interests.end(), buf.interests.begin(), buf.interests.end());
        out.studyAt.insert(out.studyAt.end(), buf.study.begin(), buf.study.end());
        out.workAt.insert(out.workAt.end(), buf.work.begin(), buf.work.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pass 2: friendships
// ---------------------------------------------------------------------------

std::vector<int> dimension_budgets(const PersonGenResult& pg, int dimension,
                                   const GeneratorConfig& cfg) {
    std::vector<int> budgets(pg.persons.size());
    for (std::size_t i = 0; i < pg.persons.size(); ++i) {
        const int t = pg.targetDegree[i];
        const int b1 = static_cast<int>(std::floor(t * cfg.dimensionSplit[0]));
        const int b2 = static_cast<int>(std::floor(t * cfg.dimensionSplit[1]));
        switch (dimension) {
            case 1: budgets[i] = b1; break;
            case 2: budgets[i] = b2; break;
            case 3: budgets[i] = t - b1 - b2; break;
            default: throw ConfigError("dimension must be 1, 2 or 3");
        }
    }
    return budgets;
}

namespace {

struct RankKey {
    std::uint64_t primary;
    std::uint64_t secondary;
    std::uint64_t tiebreak;
    Id person;

    bool operator<(const RankKey& o) const {
        return std::tie(primary, secondary, tiebreak, person) <
               std::tie(o.primary, o.secondary, o.tiebreak, o.person);
    }
};

}  // namespace

std::vector<Id> similarity_ranking(const PersonGenResult& pg, int dimension,
                                   const GeneratorConfig& cfg) {
    std::vector<RankKey> keys;
    keys.reserve(pg.persons.size());

    // Dimension 1 clusters by study place and class year, 2 by the dominant
    // interest tag, 3 is a pure hash ordering.
    std::unordered_map<Id, std::pair<Id, std::int32_t>> study;
    if (dimension == 1) {
        for (const auto& e : pg.studyAt) study[e.personId] = {e.universityId, e.classYear};
    }
    std::unordered_map<Id, Id> mainInterest;
    if (dimension == 2) {
        for (const auto& e : pg.interests) {
            auto [it, inserted] = mainInterest.try_emplace(e.personId, e.tagId);
            if (!inserted && e.tagId < it->second) it->second = e.tagId;
        }
    }

    for (std::size_t i = 0; i < pg.persons.size(); ++i) {
        const Person& p = pg.persons[i];
        RankKey k{};
        k.person = p.id;
        k.tiebreak = rng::mix64(cfg.seed ^ rng::mix64(p.id * 3 + static_cast<std::uint64_t>(dimension)));
        switch (dimension) {
            case 1: {
                auto it = study.find(p.id);
                if (it != study.end()) {
                    k.primary = it->second.first;
                    k.secondary = static_cast<std::uint64_t>(it->second.second);
                } else {
                    // Persons without a university cluster by home country.
                    k.primary = (1ULL << 40) + pg.countryIndex[i];
                    k.secondary = static_cast<std::uint64_t>(p.birthday.year + 19);
                }
                break;
            }
            case 2: {
                k.primary = mainInterest.at(p.id);
                k.secondary = k.tiebreak;
                break;
            }
            case 3: {
                k.primary = k.tiebreak;
                break;
            }
            default:
                throw ConfigError("dimension must be 1, 2 or 3");
        }
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Id> order;
    order.reserve(keys.size());
    for (const auto& k : keys) order.push_back(k.person);
    return order;
}

std::vector<KnowsEdge> knows_pass(const PersonGenResult& pg, int dimension,
                                  const GeneratorConfig& cfg,
                                  const std::vector<KnowsEdge>& existing) {
    const std::int64_t simEnd = cfg.simulation_end_ms();
    std::vector<int> budget = dimension_budgets(pg, dimension, cfg);
    const std::vector<Id> order = similarity_ranking(pg, dimension, cfg);

    PairSet taken;
    taken.reserve(existing.size() * 2);
    for (const KnowsEdge& e : existing) taken.insert(ordered(e.person1, e.person2));

    const rng::Domain domain = dimension == 1   ? rng::Domain::KnowsStudy
                               : dimension == 2 ? rng::Domain::KnowsInterest
                                                : rng::Domain::KnowsRandom;

    const std::size_t blockSize = static_cast<std::size_t>(10) * cfg.windowSize;
    std::vector<KnowsEdge> out;

    for (std::size_t blockLo = 0; blockLo < order.size(); blockLo += blockSize) {
        const std::size_t blockHi = std::min(order.size(), blockLo + blockSize);
        for (std::size_t r = blockLo; r < blockHi; ++r) {
            const Id p = order[r];
            if (budget[p] <= 0) continue;
            rng::Stream s(cfg.seed, domain, p);
            const std::size_t reach = blockHi - 1 - r;
            if (reach == 0) continue;
            const int maxDist = static_cast<int>(
                std::min<std::size_t>(static_cast<std::size_t>(cfg.windowSize), reach));
            int attempts = budget[p] * 4 + 8;
            while (budget[p] > 0 && attempts-- > 0) {
                const int d = s.truncated_geometric(cfg.geometricP, maxDist);
                const Id q = order[r + static_cast<std::size_t>(d)];
                if (budget[q] <= 0) continue;
                const auto key = ordered(p, q);
                if (!taken.insert(key).second) continue;
                const std::int64_t base =
                    std::max(pg.persons[p].creationDate.ms, pg.persons[q].creationDate.ms);
                const std::int64_t room = std::max<std::int64_t>(0, simEnd - 1 - base);
                const std::int64_t t =
                    base + static_cast<std::int64_t>(
                               s.uniform() * static_cast<double>(std::min<std::int64_t>(
                                                 room, 90LL * kMsPerDay)));
                out.push_back({key.first, key.second, DateTime{t}, dimension});
                --budget[p];
                --budget[q];
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pass 3: forums, messages, likes
// ---------------------------------------------------------------------------

std::vector<FlashmobEvent> make_flashmobs(const GeneratorConfig& cfg, const StaticWorld& world) {
    const int count = cfg.flashmobCount >= 0
                          ? cfg.flashmobCount
                          : std::max<int>(1, static_cast<int>(cfg.numPersons / 50));
    const std::int64_t simStart = cfg.simulation_start_ms();
    const std::int64_t simEnd = cfg.simulation_end_ms();
    const auto half = static_cast<std::int64_t>(cfg.flashmobHalfWidthHours * 3'600'000.0);

    std::vector<FlashmobEvent> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) {
        rng::Stream s(cfg.seed, rng::Domain::Flashmob, static_cast<std::uint64_t>(m));
        FlashmobEvent e;
        e.tagId = world.tags[s.below(world.tags.size())].id;
        const std::int64_t lo = simStart + half;
        const std::int64_t hi = std::max(lo + 1, simEnd - half);
        e.peakTime = DateTime{lo + static_cast<std::int64_t>(s.uniform() *
                                                             static_cast<double>(hi - lo))};
        e.intensity = 1.0 + s.uniform() * 9.0;
        out.push_back(e);
    }
    return out;
}

namespace {

struct Participant {
    Id person = kNoId;
    std::int64_t avail = 0;  // earliest moment this person may act in the forum
};

// Per-owner buffers with forum/message ids local to the owner; renumbered to
// the global dense id spaces after all owners are generated.
struct OwnerActivity {
    std::vector<Forum> forums;            // Forum.id = local index
    std::vector<Message> messages;        // Message.id = local index
    std::vector<LikeEdge> likes;          // messageId local
    std::vector<MessageTagEdge> msgTags;  // messageId local
};

class ActivityBuilder {
  public:
    ActivityBuilder(const PersonGenResult& pg, const GeneratorConfig& cfg,
                    const std::vector<FlashmobEvent>& flashmobs, const StaticWorld& world,
                    const Dictionaries& dicts,
                    const std::vector<std::vector<std::pair<Id, DateTime>>>& adj)
        : pg_(pg), cfg_(cfg), flashmobs_(flashmobs), world_(world), dicts_(dicts), adj_(adj) {
        simEnd_ = cfg.simulation_end_ms();
        for (const auto& f : flashmobs_) totalIntensity_ += f.intensity;
        for (const auto& e : pg.interests) interests_[e.personId].push_back(e.tagId);
    }

    OwnerActivity build(Id owner) {
        OwnerActivity act;
        rng::Stream forumRng(cfg_.seed, rng::Domain::ForumGen, owner);
        rng::Stream postRng(cfg_.seed, rng::Domain::PostGen, owner);
        rng::Stream commentRng(cfg_.seed, rng::Domain::CommentGen, owner);
        rng::Stream likeRng(cfg_.seed, rng::Domain::LikeGen, owner);
        rng::Stream memberRng(cfg_.seed, rng::Domain::MembershipGen, owner);

        const Person& p = pg_.persons[owner];
        const auto& friends = adj_[owner];

        // Wall: all friends join; posts by owner and members.
        {
            Forum wall;
            wall.id = static_cast<Id>(act.forums.size());
            wall.title = "Wall of " + p.firstName + " " + p.lastName;
            wall.creationDate = DateTime{offset_after(p.creationDate.ms, 7, forumRng)};
            wall.moderatorPersonId = owner;
            wall.tagIds = pick_tags(owner, 2, forumRng);
            std::vector<Participant> parts{{owner, wall.creationDate.ms}};
            for (const auto& [f, since] : friends) {
                const std::int64_t join =
                    offset_after(std::max({wall.creationDate.ms, pg_.persons[f].creationDate.ms,
                                           since.ms}),
                                 30, memberRng);
                wall.members.push_back({f, DateTime{join}});
                parts.push_back({f, join});
            }
            const std::size_t wallLocal = act.forums.size();
            act.forums.push_back(std::move(wall));

            const int base = 1 + static_cast<int>(cfg_.wallPostsPerFriend *
                                                  static_cast<double>(friends.size()));
            const int nPosts =
                std::max(1, static_cast<int>(base * (0.5 + postRng.uniform())));
            for (int k = 0; k < nPosts; ++k) {
                make_post(act, wallLocal, parts, postRng, /*imageAlbum=*/false);
            }
            grow_replies_and_likes(act, wallLocal, parts, commentRng, likeRng);
        }

        // Albums: image posts by the owner; a subset of friends may look on.
        if (forumRng.chance(cfg_.albumProbability)) {
            const int nAlbums = 1 + static_cast<int>(forumRng.below(3));
            for (int a = 0; a < nAlbums; ++a) {
                Forum album;
                album.id = static_cast<Id>(act.forums.size());
                album.title = "Album " + std::to_string(a + 1) + " of " + p.firstName + " " +
                              p.lastName;
                album.creationDate = DateTime{offset_after(p.creationDate.ms, 300, forumRng)};
                album.moderatorPersonId = owner;
                album.tagIds = pick_tags(owner, 1, forumRng);
                std::vector<Participant> parts{{owner, album.creationDate.ms}};
                for (const auto& [f, since] : friends) {
                    if (!memberRng.chance(0.5)) continue;
                    const std::int64_t join = offset_after(
                        std::max({album.creationDate.ms, pg_.persons[f].creationDate.ms, since.ms}),
                        30, memberRng);
                    album.members.push_back({f, DateTime{join}});
                    parts.push_back({f, join});
                }
                const std::size_t local = act.forums.size();
                act.forums.push_back(std::move(album));
                const int nPhotos = 4 + static_cast<int>(postRng.below(9));
                for (int k = 0; k < nPhotos; ++k) {
                    make_post(act, local, parts, postRng, /*imageAlbum=*/true);
                }
                like_messages(act, local, parts, likeRng);
            }
        }

        // Group: friends and friends-of-friends around one of the owner's
        // interests; members post, the owner moderates.
        if (forumRng.chance(cfg_.groupProbability)) {
            Forum group;
            group.id = static_cast<Id>(act.forums.size());
            group.creationDate = DateTime{offset_after(p.creationDate.ms, 200, forumRng)};
            group.moderatorPersonId = owner;
            group.tagIds = pick_tags(owner, 2, forumRng);
            const std::string tagName =
                group.tagIds.empty() ? "Friends" : world_.tags[group.tagIds.front()].name;
            group.title =
                "Group for " + tagName + " in " + world_.places[pg_.persons[owner].cityId].name;

            std::vector<Id> candidates;
            for (const auto& fr : friends) {
                candidates.push_back(fr.first);
                for (const auto& fof : adj_[fr.first]) {
                    if (fof.first != owner) candidates.push_back(fof.first);
                }
            }
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

            std::vector<Participant> parts{{owner, group.creationDate.ms}};
            for (Id c : candidates) {
                if (!memberRng.chance(0.6)) continue;
                const std::int64_t join = offset_after(
                    std::max(group.creationDate.ms, pg_.persons[c].creationDate.ms), 60, memberRng);
                group.members.push_back({c, DateTime{join}});
                parts.push_back({c, join});
            }
            const std::size_t local = act.forums.size();
            act.forums.push_back(std::move(group));

            const int nPosts = static_cast<int>(
                static_cast<double>(parts.size()) * 1.2 * (0.5 + postRng.uniform()));
            for (int k = 0; k < nPosts; ++k) {
                make_post(act, local, parts, postRng, /*imageAlbum=*/false);
            }
            grow_replies_and_likes(act, local, parts, commentRng, likeRng);
        }

        return act;
    }

  private:
    std::int64_t offset_after(std::int64_t from, int maxDays, rng::Stream& rng) const {
        const std::int64_t room =
            std::min<std::int64_t>(maxDays * kMsPerDay, std::max<std::int64_t>(0, simEnd_ - 1 - from));
        return from + static_cast<std::int64_t>(rng.uniform() * static_cast<double>(room));
    }

    std::vector<Id> pick_tags(Id person, int maxCount, rng::Stream& rng) const {
        std::vector<Id> out;
        auto it = interests_.find(person);
        const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(maxCount)));
        for (int k = 0; k < n; ++k) {
            Id tid;
            if (it == interests_.end() || it->second.empty() || rng.chance(cfg_.tagUniformMix)) {
                tid = world_.tags[rng.below(world_.tags.size())].id;
            } else {
                tid = it->second[rng.below(it->second.size())];
            }
            if (std::find(out.begin(), out.end(), tid) == out.end()) out.push_back(tid);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const FlashmobEvent* pick_flashmob(rng::Stream& rng) const {
        if (flashmobs_.empty() || totalIntensity_ <= 0.0) return nullptr;
        double u = rng.uniform() * totalIntensity_;
        for (const auto& f : flashmobs_) {
            u -= f.intensity;
            if (u < 0.0) return &f;
        }
        return &flashmobs_.back();
    }

    void make_post(OwnerActivity& act, std::size_t forumLocal,
                   const std::vector<Participant>& parts, rng::Stream& rng, bool imageAlbum) {
        const Forum& forum = act.forums[forumLocal];
        const Participant& author =
            imageAlbum ? parts.front()
                       : (rng.chance(0.4) ? parts.front() : parts[rng.below(parts.size())]);

        Message m;
        m.id = static_cast<Id>(act.messages.size());
        m.kind = MessageKind::Post;
        m.creatorPersonId = author.person;
        m.forumId = static_cast<Id>(forumLocal);
        m.browserUsed = pg_.persons[author.person].browserUsed;

        std::vector<Id> tags = forum.tagIds;
        const FlashmobEvent* mob = nullptr;
        if (!imageAlbum && rng.chance(cfg_.flashmobPostFraction)) mob = pick_flashmob(rng);
        std::int64_t t;
        if (mob != nullptr) {
            const auto half = static_cast<std::int64_t>(cfg_.flashmobHalfWidthHours * 3'600'000.0);
            const double tri = rng.uniform() + rng.uniform() - 1.0;
            t = mob->peakTime.ms + static_cast<std::int64_t>(tri * static_cast<double>(half));
            t = std::max(author.avail, std::min(t, simEnd_ - 1));
            if (std::find(tags.begin(), tags.end(), mob->tagId) == tags.end()) {
                tags.push_back(mob->tagId);
            }
        } else {
            t = author.avail + static_cast<std::int64_t>(
                                   rng.uniform() * static_cast<double>(
                                                       std::max<std::int64_t>(1, simEnd_ - author.avail)));
            t = std::min(t, simEnd_ - 1);
        }
        m.creationDate = DateTime{t};

        const auto& countryInfo = world_.countries[pg_.countryIndex[author.person]];
        if (rng.chance(cfg_.abroadProbability)) {
            const std::size_t other = world_.sample_country(rng);
            m.countryId = world_.countries[other].id;
            m.locationIP = make_ip(world_.countries[other].ipPrefix, rng);
        } else {
            m.countryId = countryInfo.id;
            m.locationIP = make_ip(countryInfo.ipPrefix, rng);
        }

        if (imageAlbum) {
            m.imageFile = "photo.jpg";  // patched to photo<id>.jpg after renumbering
            m.length = 0;
        } else {
            m.content = make_content(dicts_, rng);
            m.length = static_cast<std::int32_t>(m.content.size());
            const auto& speaks = pg_.persons[author.person].speaks;
            m.language = speaks[rng.below(speaks.size())];
            // An extra interest of the author, sometimes.
            if (rng.chance(0.4)) {
                auto it = interests_.find(author.person);
                if (it != interests_.end() && !it->second.empty()) {
                    const Id extra = it->second[rng.below(it->second.size())];
                    if (std::find(tags.begin(), tags.end(), extra) == tags.end()) {
                        tags.push_back(extra);
                    }
                }
            }
        }
        std::sort(tags.begin(), tags.end());
        for (Id tg : tags) act.msgTags.push_back({m.id, tg});
        act.messages.push_back(std::move(m));
    }

    // Replies and likes for every post currently in the forum.
    void grow_replies_and_likes(OwnerActivity& act, std::size_t forumLocal,
                                const std::vector<Participant>& parts, rng::Stream& commentRng,
                                rng::Stream& likeRng) {
        const std::vector<Id> postIds = [&] {
            std::vector<Id> out;
            for (const Message& m : act.messages) {
                if (m.is_post() && m.forumId == static_cast<Id>(forumLocal)) out.push_back(m.id);
            }
            return out;
        }();

        for (Id postId : postIds) {
            const bool hot = is_flashmob_tagged(act, postId);
            const double mean = cfg_.commentsPerPost * (hot ? 2.5 : 1.0);
            const double pGeo = 1.0 / (1.0 + mean);
            const int nComments = commentRng.truncated_geometric(pGeo, 12) - 1;
            std::vector<std::pair<Id, std::int64_t>> thread{
                {postId, act.messages[postId].creationDate.ms}};
            for (int k = 0; k < nComments; ++k) {
                const Participant& author = parts[commentRng.below(parts.size())];
                const auto& [parentId, parentT] =
                    commentRng.chance(0.5) ? thread.front() : thread[commentRng.below(thread.size())];

                const std::int64_t lower = std::max(parentT, author.avail);
                if (lower + 1 >= simEnd_) continue;  // no room left before the window closes
                const std::int64_t span =
                    std::min<std::int64_t>(14 * kMsPerDay, simEnd_ - 1 - (lower + 1));
                const std::int64_t t =
                    lower + 1 +
                    static_cast<std::int64_t>(commentRng.uniform() * static_cast<double>(span + 1));

                Message c;
                c.id = static_cast<Id>(act.messages.size());
                c.kind = MessageKind::Comment;
                c.creatorPersonId = author.person;
                c.replyOfMessageId = parentId;
                c.browserUsed = pg_.persons[author.person].browserUsed;
                c.creationDate = DateTime{t};
                c.content = make_content(dicts_, commentRng);
                c.length = static_cast<std::int32_t>(c.content.size());
                const auto& info = world_.countries[pg_.countryIndex[author.person]];
                c.countryId = info.id;
                c.locationIP = make_ip(info.ipPrefix, commentRng);

                // Tags: a sparse subset of the parent's tags.
                for (Id tg : tags_of_local(act, parentId)) {
                    if (commentRng.chance(0.3)) act.msgTags.push_back({c.id, tg});
                }

                thread.emplace_back(c.id, t);
                act.messages.push_back(std::move(c));
            }
        }
        like_messages(act, forumLocal, parts, likeRng);
    }

    void like_messages(OwnerActivity& act, std::size_t forumLocal,
                       const std::vector<Participant>& parts, rng::Stream& likeRng) {
        const auto isInForum = [&](const Message& m) {
            if (m.is_post()) return m.forumId == static_cast<Id>(forumLocal);
            // Comments live in the thread of their root post; local walk.
            Id cur = m.replyOfMessageId;
            while (!act.messages[cur].is_post()) cur = act.messages[cur].replyOfMessageId;
            return act.messages[cur].forumId == static_cast<Id>(forumLocal);
        };
        const std::size_t count = act.messages.size();
        for (Id mid = 0; mid < count; ++mid) {
            const Message& m = act.messages[mid];
            if (!isInForum(m)) continue;
            const double mean = cfg_.likesPerMessage * (is_flashmob_tagged(act, mid) ? 2.0 : 1.0);
            const int nLikes = likeRng.truncated_geometric(1.0 / (1.0 + mean), 10) - 1;
            std::vector<Id> likers;
            for (int k = 0; k < nLikes; ++k) {
                const Participant& liker = parts[likeRng.below(parts.size())];
                if (std::find(likers.begin(), likers.end(), liker.person) != likers.end()) continue;
                likers.push_back(liker.person);
                const std::int64_t lower = std::max(m.creationDate.ms, liker.avail);
                if (lower + 1 >= simEnd_) continue;
                const std::int64_t span =
                    std::min<std::int64_t>(7 * kMsPerDay, simEnd_ - 1 - (lower + 1));
                const std::int64_t t =
                    lower + 1 +
                    static_cast<std::int64_t>(likeRng.uniform() * static_cast<double>(span + 1));
                act.likes.push_back({liker.person, mid, DateTime{t}});
            }
        }
    }

    bool is_flashmob_tagged(const OwnerActivity& act, Id localMsg) const {
        if (flashmobs_.empty()) return false;
        for (const auto& mt : act.msgTags) {
            if (mt.messageId != localMsg) continue;
            for (const auto& f : flashmobs_) {
                if (f.tagId == mt.tagId) return true;
            }
        }
        return false;
    }

    std::vector<Id> tags_of_local(const OwnerActivity& act, Id localMsg) const {
        std::vector<Id> out;
        for (const auto& mt : act.msgTags) {
            if (mt.messageId == localMsg) out.push_back(mt.tagId);
        }
        return out;
    }

    const PersonGenResult& pg_;
    const GeneratorConfig& cfg_;
    const std::vector<FlashmobEvent>& flashmobs_;
    const StaticWorld& world_;
    const Dictionaries& dicts_;
    const std::vector<std::vector<std::pair<Id, DateTime>>>& adj_;
    std::int64_t simEnd_ = 0;
    double totalIntensity_ = 0.0;
    std::unordered_map<Id, std::vector<Id>> interests_;
};

}  // namespace

ActivityResult generate_activity(const PersonGenResult& pg, const std::vector<KnowsEdge>& knows,
                                 const GeneratorConfig& cfg,
                                 const std::vector<FlashmobEvent>& flashmobs,
                                 const StaticWorld& world) {
    const Dictionaries& dicts = Dictionaries::builtin();
    const std::uint64_t n = pg.persons.size();

    std::vector<std::vector<std::pair<Id, DateTime>>> adj(n);
    for (const KnowsEdge& e : knows) {
        adj[e.person1].push_back({e.person2, e.creationDate});
        adj[e.person2].push_back({e.person1, e.creationDate});
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    ActivityBuilder builder(pg, cfg, flashmobs, world, dicts, adj);
    std::vector<OwnerActivity> owners(n);
    parallel_ranges(cfg.workers, n, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) owners[i] = builder.build(i);
    });

    // Renumber local ids into dense global spaces, owner-major.
    ActivityResult out;
    Id forumBase = 0;
    Id messageBase = 0;
    for (auto& oa : owners) {
        for (Forum f : oa.forums) {
            f.id += forumBase;
            out.forums.push_back(std::move(f));
        }
        for (Message m : oa.messages) {
            m.id += messageBase;
            if (m.is_post()) {
                m.forumId += forumBase;
                if (!m.imageFile.empty()) {
                    m.imageFile = "photo" + std::to_string(m.id) + ".jpg";
                }
            } else {
                m.replyOfMessageId += messageBase;
            }
            out.messages.push_back(std::move(m));
        }
        for (LikeEdge l : oa.likes) {
            l.messageId += messageBase;
            out.likes.push_back(l);
        }
        for (MessageTagEdge mt : oa.msgTags) {
            mt.messageId += messageBase;
            out.messageTags.push_back(mt);
        }
        forumBase += static_cast<Id>(oa.forums.size());
        messageBase += static_cast<Id>(oa.messages.size());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Split into bulk snapshot + update stream
// ---------------------------------------------------------------------------

namespace {

std::tuple<Id, Id> event_sort_ids(const UpdateEvent& e) {
    switch (e.opId) {
        case 1: return {std::get<InsertPersonPayload>(e.payload).person.id, 0};
        case 2:
        case 3: {
            const auto& p = std::get<InsertLikePayload>(e.payload);
            return {p.personId, p.messageId};
        }
        case 4: return {std::get<InsertForumPayload>(e.payload).forum.id, 0};
        case 5: {
            const auto& p = std::get<InsertMembershipPayload>(e.payload);
            return {p.forumId, p.personId};
        }
        case 6: return {std::get<InsertPostPayload>(e.payload).post.id, 0};
        case 7: return {std::get<InsertCommentPayload>(e.payload).comment.id, 0};
        case 8: {
            const auto& p = std::get<InsertKnowsPayload>(e.payload);
            return {p.person1, p.person2};
        }
        default: return {0, 0};
    }
}

}  // namespace

SplitResult split_dataset(const GraphSnapshot& full, double bulkFraction) {
    if (bulkFraction <= 0.0 || bulkFraction > 1.0) {
        throw ConfigError("bulkFraction must be in (0,1]");
    }
    const std::int64_t span = full.simulationEndMs - full.simulationStartMs;
    const std::int64_t cut =
        full.simulationStartMs + static_cast<std::int64_t>(bulkFraction * static_cast<double>(span));

    SplitResult out;
    GraphSnapshot& snap = out.snapshot;
    snap.simulationStartMs = full.simulationStartMs;
    snap.simulationEndMs = full.simulationEndMs;
    snap.places = full.places;
    snap.organisations = full.organisations;
    snap.tags = full.tags;
    snap.tagClasses = full.tagClasses;

    auto creationOf = [&](Id personId) { return full.person(personId).creationDate.ms; };

    for (const Person& p : full.persons) {
        if (p.creationDate.ms < cut) {
            snap.persons.push_back(p);
            continue;
        }
        InsertPersonPayload pl;
        pl.person = p;
        pl.interestTagIds = full.interests_of(p.id);
        pl.study = full.study_of(p.id);
        pl.work = full.work_of(p.id);
        out.stream.push_back({p.creationDate.ms, 0, 1, std::move(pl)});
    }
    for (const HasInterestEdge& e : full.hasInterest) {
        if (creationOf(e.personId) < cut) snap.hasInterest.push_back(e);
    }
    for (const StudyAtEdge& e : full.studyAt) {
        if (creationOf(e.personId) < cut) snap.studyAt.push_back(e);
    }
    for (const WorkAtEdge& e : full.workAt) {
        if (creationOf(e.personId) < cut) snap.workAt.push_back(e);
    }

    for (const Forum& f : full.forums) {
        const std::int64_t moderatorCreated = creationOf(f.moderatorPersonId);
        if (f.creationDate.ms < cut) {
            Forum bulk = f;
            bulk.members.clear();
            for (const ForumMember& m : f.members) {
                if (m.joinDate.ms < cut) bulk.members.push_back(m);
            }
            snap.forums.push_back(std::move(bulk));
        } else {
            InsertForumPayload pl;
            pl.forum = f;
            pl.forum.members.clear();
            out.stream.push_back({f.creationDate.ms, moderatorCreated, 4, std::move(pl)});
        }
        for (const ForumMember& m : f.members) {
            if (m.joinDate.ms < cut) continue;
            const std::int64_t td = std::max(f.creationDate.ms, creationOf(m.personId));
            out.stream.push_back(
                {m.joinDate.ms, td, 5, InsertMembershipPayload{f.id, m.personId, m.joinDate}});
        }
    }

    for (const Message& m : full.messages) {
        if (m.creationDate.ms < cut) {
            snap.messages.push_back(m);
            continue;
        }
        const std::int64_t authorCreated = creationOf(m.creatorPersonId);
        if (m.is_post()) {
            InsertPostPayload pl;
            pl.post = m;
            pl.tagIds = full.tags_of_message(m.id);
            const std::int64_t td = std::max(authorCreated, full.forum(m.forumId).creationDate.ms);
            out.stream.push_back({m.creationDate.ms, td, 6, std::move(pl)});
        } else {
            InsertCommentPayload pl;
            pl.comment = m;
            pl.tagIds = full.tags_of_message(m.id);
            pl.parentIsPost = full.message(m.replyOfMessageId).is_post();
            const std::int64_t td =
                std::max(authorCreated, full.message(m.replyOfMessageId).creationDate.ms);
            out.stream.push_back({m.creationDate.ms, td, 7, std::move(pl)});
        }
    }
    for (const MessageTagEdge& e : full.messageTags) {
        if (full.message(e.messageId).creationDate.ms < cut) snap.messageTags.push_back(e);
    }

    for (const LikeEdge& e : full.likes) {
        if (e.creationDate.ms < cut) {
            snap.likes.push_back(e);
            continue;
        }
        const Message& m = full.message(e.messageId);
        const std::int64_t td = std::max(creationOf(e.personId), m.creationDate.ms);
        const int op = m.is_post() ? 2 : 3;
        out.stream.push_back(
            {e.creationDate.ms, td, op, InsertLikePayload{e.personId, e.messageId, e.creationDate}});
    }

    for (const KnowsEdge& e : full.knows) {
        if (e.person1 >= e.person2) continue;  // one event per friendship
        if (e.creationDate.ms < cut) {
            snap.knows.push_back(e);
            snap.knows.push_back({e.person2, e.person1, e.creationDate, e.dimension});
            continue;
        }
        const std::int64_t td = std::max(creationOf(e.person1), creationOf(e.person2));
        out.stream.push_back({e.creationDate.ms, td, 8,
                              InsertKnowsPayload{e.person1, e.person2, e.creationDate}});
    }

    std::sort(out.stream.begin(), out.stream.end(), [](const UpdateEvent& a, const UpdateEvent& b) {
        const auto ka = std::tuple_cat(std::tuple{a.t, a.opId}, event_sort_ids(a));
        const auto kb = std::tuple_cat(std::tuple{b.t, b.opId}, event_sort_ids(b));
        return ka < kb;
    });

    snap.build_indexes();
    return out;
}

void apply_update_event(GraphSnapshot& g, const UpdateEvent& e) {
    switch (e.opId) {
        case 1: {
            const auto& pl = std::get<InsertPersonPayload>(e.payload);
            g.add_person(pl.person);
            for (Id t : pl.interestTagIds) g.add_interest(pl.person.id, t);
            for (const auto& s : pl.study) g.add_study_at(s.personId, s.universityId, s.classYear);
            for (const auto& w : pl.work) g.add_work_at(w.personId, w.companyId, w.workFrom);
            break;
        }
        case 2:
        case 3: {
            const auto& pl = std::get<InsertLikePayload>(e.payload);
            g.add_like(pl.personId, pl.messageId, pl.creationDate);
            break;
        }
        case 4: {
            const auto& pl = std::get<InsertForumPayload>(e.payload);
            g.add_forum(pl.forum);
            break;
        }
        case 5: {
            const auto& pl = std::get<InsertMembershipPayload>(e.payload);
            g.add_forum_member(pl.forumId, pl.personId, pl.joinDate);
            break;
        }
        case 6: {
            const auto& pl = std::get<InsertPostPayload>(e.payload);
            g.add_message(pl.post);
            for (Id t : pl.tagIds) g.add_message_tag(pl.post.id, t);
            break;
        }
        case 7: {
            const auto& pl = std::get<InsertCommentPayload>(e.payload);
            g.add_message(pl.comment);
            for (Id t : pl.tagIds) g.add_message_tag(pl.comment.id, t);
            break;
        }
        case 8: {
            const auto& pl = std::get<InsertKnowsPayload>(e.payload);
            g.add_knows(pl.person1, pl.person2, pl.creationDate);
            break;
        }
        default:
            throw SnbError("unknown update operation " + std::to_string(e.opId));
    }
}

// ---------------------------------------------------------------------------
// Curation statistics
// ---------------------------------------------------------------------------

CurationStats compute_curation_stats(const GraphSnapshot& g) {
    CurationStats s;
    s.personIds.reserve(g.persons.size());
    for (const Person& p : g.persons) s.personIds.push_back(p.id);
    std::sort(s.personIds.begin(), s.personIds.end());

    for (Id pid : s.personIds) {
        const auto& friends = g.friends_of(pid);
        s.friendCount.push_back(static_cast<std::int64_t>(friends.size()));

        std::unordered_set<Id> twoHop;
        std::int64_t friendMessages = 0;
        for (const auto& [f, t] : friends) {
            twoHop.insert(f);
            friendMessages += static_cast<std::int64_t>(g.messages_by_creator(f).size());
            for (const auto& [ff, t2] : g.friends_of(f)) {
                if (ff != pid) twoHop.insert(ff);
            }
        }
        s.friendOfFriendCount.push_back(static_cast<std::int64_t>(twoHop.size()));
        s.friendMessageCount.push_back(friendMessages);
        std::int64_t twoHopMessages = 0;
        for (Id q : twoHop) {
            twoHopMessages += static_cast<std::int64_t>(g.messages_by_creator(q).size());
        }
        s.twoHopMessageCount.push_back(twoHopMessages);
    }

    for (const MessageTagEdge& e : g.messageTags) {
        ++s.messagesByTag[e.tagId];
    }
    for (const auto& [tagId, count] : s.messagesByTag) {
        const Tag* t = g.find_tag(tagId);
        if (t != nullptr) s.messagesByTagClass[t->typeTagClassId] += count;
    }
    for (const Person& p : g.persons) {
        const Id c = g.country_of_person(p.id);
        if (c != kNoId) ++s.personsByCountry[c];
    }
    for (const Message& m : g.messages) {
        ++s.messagesByCountry[m.countryId];
        ++s.messagesByDay[m.creationDate.ms / kMsPerDay];
    }
    s.totalMessages = static_cast<std::int64_t>(g.messages.size());
    return s;
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

GenerateResult generate(const GeneratorConfig& cfg, const Dictionaries& dicts) {
    cfg.validate();
    const StaticWorld world = build_static_world(dicts);

    const PersonGenResult pg = generate_persons(cfg, dicts, world);

    std::vector<KnowsEdge> edges = knows_pass(pg, 1, cfg);
    {
        std::vector<KnowsEdge> e2 = knows_pass(pg, 2, cfg, edges);
        edges.insert(edges.end(), e2.begin(), e2.end());
        std::vector<KnowsEdge> e3 = knows_pass(pg, 3, cfg, edges);
        edges.insert(edges.end(), e3.begin(), e3.end());
    }

    const std::vector<FlashmobEvent> flashmobs = make_flashmobs(cfg, world);
    ActivityResult activity = generate_activity(pg, edges, cfg, flashmobs, world);

    GraphSnapshot full;
    full.simulationStartMs = cfg.simulation_start_ms();
    full.simulationEndMs = cfg.simulation_end_ms();
    full.places = world.places;
    full.organisations = world.organisations;
    full.tags = world.tags;
    full.tagClasses = world.tagClasses;
    full.persons = pg.persons;
    full.hasInterest = pg.interests;
    full.studyAt = pg.studyAt;
    full.workAt = pg.workAt;
    for (const KnowsEdge& e : edges) {
        full.knows.push_back(e);
        full.knows.push_back({e.person2, e.person1, e.creationDate, e.dimension});
    }
    full.forums = std::move(activity.forums);
    full.messages = std::move(activity.messages);
    full.likes = std::move(activity.likes);
    full.messageTags = std::move(activity.messageTags);
    full.build_indexes();

    SplitResult split = split_dataset(full, cfg.bulkFraction);
    CurationStats stats = compute_curation_stats(split.snapshot);
    return {std::move(split.snapshot), std::move(split.stream), std::move(stats)};
}

GenerateResult generate(const GeneratorConfig& cfg) {
    return generate(cfg, Dictionaries::builtin());
}

}  // namespace snb
