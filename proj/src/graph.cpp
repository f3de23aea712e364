#include "snb/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "snb/rng.hpp"

namespace snb {

namespace {

template <typename T, typename Cmp>
void insert_sorted(std::vector<T>& v, T value, Cmp cmp) {
    v.insert(std::lower_bound(v.begin(), v.end(), value, cmp), std::move(value));
}

const auto byFirst = [](const auto& a, const auto& b) { return a.first < b.first; };

template <typename Map>
const typename Map::mapped_type& lookup_or_empty(const Map& m, Id key) {
    static const typename Map::mapped_type empty{};
    auto it = m.find(key);
    return it == m.end() ? empty : it->second;
}

std::size_t utf8_length(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lookups
// ---------------------------------------------------------------------------

#define SNB_FIND(Type, fn, idx, vec)                              \
    const Type* GraphSnapshot::fn(Id id) const {                  \
        auto it = idx.find(id);                                   \
        return it == idx.end() ? nullptr : &vec[it->second];      \
    }

SNB_FIND(Person, find_person, personIdx_, persons)
SNB_FIND(Message, find_message, messageIdx_, messages)
SNB_FIND(Forum, find_forum, forumIdx_, forums)
SNB_FIND(Tag, find_tag, tagIdx_, tags)
SNB_FIND(TagClass, find_tag_class, tagClassIdx_, tagClasses)
SNB_FIND(Place, find_place, placeIdx_, places)
SNB_FIND(Organisation, find_organisation, orgIdx_, organisations)
#undef SNB_FIND

#define SNB_GET(Type, fn, finder, name)                                \
    const Type& GraphSnapshot::fn(Id id) const {                       \
        if (const Type* p = finder(id)) return *p;                     \
        throw UnknownIdError(name, id);                                \
    }

SNB_GET(Person, person, find_person, "person")
SNB_GET(Message, message, find_message, "message")
SNB_GET(Forum, forum, find_forum, "forum")
SNB_GET(Tag, tag, find_tag, "tag")
SNB_GET(TagClass, tag_class, find_tag_class, "tagclass")
SNB_GET(Place, place, find_place, "place")
SNB_GET(Organisation, organisation, find_organisation, "organisation")
#undef SNB_GET

Forum* GraphSnapshot::mutable_forum(Id id) {
    auto it = forumIdx_.find(id);
    return it == forumIdx_.end() ? nullptr : &forums[it->second];
}

const std::vector<std::pair<Id, DateTime>>& GraphSnapshot::friends_of(Id personId) const {
    return lookup_or_empty(knowsAdj_, personId);
}

bool GraphSnapshot::knows_lookup(Id a, Id b) const {
    const auto& adj = friends_of(a);
    auto it = std::lower_bound(adj.begin(), adj.end(), std::pair<Id, DateTime>{b, DateTime{}},
                               byFirst);
    return it != adj.end() && it->first == b;
}

const std::vector<Id>& GraphSnapshot::messages_by_creator(Id personId) const {
    return lookup_or_empty(messagesByCreator_, personId);
}
const std::vector<Id>& GraphSnapshot::posts_in_forum(Id forumId) const {
    return lookup_or_empty(postsByForum_, forumId);
}
const std::vector<Id>& GraphSnapshot::replies_of(Id messageId) const {
    return lookup_or_empty(repliesByMessage_, messageId);
}
const std::vector<std::pair<Id, DateTime>>& GraphSnapshot::likes_of_message(Id messageId) const {
    return lookup_or_empty(likesByMessage_, messageId);
}
const std::vector<std::pair<Id, DateTime>>& GraphSnapshot::likes_by_person(Id personId) const {
    return lookup_or_empty(likesByPerson_, personId);
}
const std::vector<Id>& GraphSnapshot::tags_of_message(Id messageId) const {
    return lookup_or_empty(tagsByMessage_, messageId);
}
const std::vector<Id>& GraphSnapshot::messages_with_tag(Id tagId) const {
    return lookup_or_empty(messagesByTag_, tagId);
}
const std::vector<Id>& GraphSnapshot::interests_of(Id personId) const {
    return lookup_or_empty(interestsByPerson_, personId);
}
const std::vector<Id>& GraphSnapshot::persons_with_interest(Id tagId) const {
    return lookup_or_empty(personsByInterest_, tagId);
}
const std::vector<std::pair<Id, DateTime>>& GraphSnapshot::forums_of_member(Id personId) const {
    return lookup_or_empty(forumsByMember_, personId);
}
const std::vector<StudyAtEdge>& GraphSnapshot::study_of(Id personId) const {
    return lookup_or_empty(studyByPerson_, personId);
}
const std::vector<WorkAtEdge>& GraphSnapshot::work_of(Id personId) const {
    return lookup_or_empty(workByPerson_, personId);
}
const std::vector<Id>& GraphSnapshot::forums_moderated_by(Id personId) const {
    return lookup_or_empty(forumsByModerator_, personId);
}

Id GraphSnapshot::country_of_place(Id placeId) const {
    Id cur = placeId;
    for (int hops = 0; hops < 4 && cur != kNoId; ++hops) {
        const Place* p = find_place(cur);
        if (p == nullptr) return kNoId;
        if (p->kind == PlaceKind::Country) return p->id;
        if (p->kind == PlaceKind::Continent) return kNoId;
        cur = p->partOfId;
    }
    return kNoId;
}

Id GraphSnapshot::country_of_person(Id personId) const {
    const Person* p = find_person(personId);
    return p == nullptr ? kNoId : country_of_place(p->cityId);
}

Id GraphSnapshot::continent_of_place(Id placeId) const {
    Id cur = placeId;
    for (int hops = 0; hops < 4 && cur != kNoId; ++hops) {
        const Place* p = find_place(cur);
        if (p == nullptr) return kNoId;
        if (p->kind == PlaceKind::Continent) return p->id;
        cur = p->partOfId;
    }
    return kNoId;
}

Id GraphSnapshot::tag_class_of(Id tagId) const {
    const Tag* t = find_tag(tagId);
    return t == nullptr ? kNoId : t->typeTagClassId;
}

bool GraphSnapshot::tag_class_is_a(Id classId, Id ancestorId) const {
    Id cur = classId;
    for (std::size_t hops = 0; hops <= tagClasses.size() && cur != kNoId; ++hops) {
        if (cur == ancestorId) return true;
        const TagClass* tc = find_tag_class(cur);
        if (tc == nullptr) return false;
        cur = tc->parentId;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Mutation
// ---------------------------------------------------------------------------

void GraphSnapshot::add_person(Person p) {
    std::sort(p.emails.begin(), p.emails.end());
    std::sort(p.speaks.begin(), p.speaks.end());
    personIdx_[p.id] = persons.size();
    persons.push_back(std::move(p));
}

void GraphSnapshot::add_message(Message m) {
    const Id id = m.id;
    messageIdx_[id] = messages.size();
    insert_sorted(messagesByCreator_[m.creatorPersonId], id, std::less<Id>{});
    if (m.is_post()) {
        insert_sorted(postsByForum_[m.forumId], id, std::less<Id>{});
    } else {
        insert_sorted(repliesByMessage_[m.replyOfMessageId], id, std::less<Id>{});
    }
    messages.push_back(std::move(m));
}

void GraphSnapshot::add_forum(Forum f) {
    const Id id = f.id;
    std::sort(f.members.begin(), f.members.end(),
              [](const ForumMember& a, const ForumMember& b) { return a.personId < b.personId; });
    std::sort(f.tagIds.begin(), f.tagIds.end());
    forumIdx_[id] = forums.size();
    insert_sorted(forumsByModerator_[f.moderatorPersonId], id, std::less<Id>{});
    for (const ForumMember& m : f.members) {
        insert_sorted(forumsByMember_[m.personId], {id, m.joinDate}, byFirst);
    }
    forums.push_back(std::move(f));
}

void GraphSnapshot::add_forum_member(Id forumId, Id personId, DateTime joinDate) {
    Forum* f = mutable_forum(forumId);
    if (f == nullptr) throw UnknownIdError("forum", forumId);
    insert_sorted(f->members, ForumMember{personId, joinDate},
                  [](const ForumMember& a, const ForumMember& b) { return a.personId < b.personId; });
    insert_sorted(forumsByMember_[personId], {forumId, joinDate}, byFirst);
}

void GraphSnapshot::add_forum_tag(Id forumId, Id tagId) {
    Forum* f = mutable_forum(forumId);
    if (f == nullptr) throw UnknownIdError("forum", forumId);
    insert_sorted(f->tagIds, tagId, std::less<Id>{});
}

void GraphSnapshot::add_knows(Id a, Id b, DateTime creationDate, int dimension) {
    knows.push_back({a, b, creationDate, dimension});
    knows.push_back({b, a, creationDate, dimension});
    insert_sorted(knowsAdj_[a], {b, creationDate}, byFirst);
    insert_sorted(knowsAdj_[b], {a, creationDate}, byFirst);
}

void GraphSnapshot::add_like(Id personId, Id messageId, DateTime creationDate) {
    likes.push_back({personId, messageId, creationDate});
    insert_sorted(likesByMessage_[messageId], {personId, creationDate}, byFirst);
    insert_sorted(likesByPerson_[personId], {messageId, creationDate}, byFirst);
}

void GraphSnapshot::add_interest(Id personId, Id tagId) {
    hasInterest.push_back({personId, tagId});
    insert_sorted(interestsByPerson_[personId], tagId, std::less<Id>{});
    insert_sorted(personsByInterest_[tagId], personId, std::less<Id>{});
}

void GraphSnapshot::add_study_at(Id personId, Id universityId, std::int32_t classYear) {
    studyAt.push_back({personId, universityId, classYear});
    studyByPerson_[personId].push_back({personId, universityId, classYear});
}

void GraphSnapshot::add_work_at(Id personId, Id companyId, std::int32_t workFrom) {
    workAt.push_back({personId, companyId, workFrom});
    workByPerson_[personId].push_back({personId, companyId, workFrom});
}

void GraphSnapshot::add_message_tag(Id messageId, Id tagId) {
    messageTags.push_back({messageId, tagId});
    insert_sorted(tagsByMessage_[messageId], tagId, std::less<Id>{});
    insert_sorted(messagesByTag_[tagId], messageId, std::less<Id>{});
}

void GraphSnapshot::build_indexes() {
    personIdx_.clear();
    messageIdx_.clear();
    forumIdx_.clear();
    tagIdx_.clear();
    tagClassIdx_.clear();
    placeIdx_.clear();
    orgIdx_.clear();
    knowsAdj_.clear();
    messagesByCreator_.clear();
    postsByForum_.clear();
    repliesByMessage_.clear();
    likesByMessage_.clear();
    likesByPerson_.clear();
    tagsByMessage_.clear();
    messagesByTag_.clear();
    interestsByPerson_.clear();
    personsByInterest_.clear();
    forumsByMember_.clear();
    studyByPerson_.clear();
    workByPerson_.clear();
    forumsByModerator_.clear();

    for (std::size_t i = 0; i < persons.size(); ++i) personIdx_[persons[i].id] = i;
    for (std::size_t i = 0; i < messages.size(); ++i) messageIdx_[messages[i].id] = i;
    for (std::size_t i = 0; i < forums.size(); ++i) forumIdx_[forums[i].id] = i;
    for (std::size_t i = 0; i < tags.size(); ++i) tagIdx_[tags[i].id] = i;
    for (std::size_t i = 0; i < tagClasses.size(); ++i) tagClassIdx_[tagClasses[i].id] = i;
    for (std::size_t i = 0; i < places.size(); ++i) placeIdx_[places[i].id] = i;
    for (std::size_t i = 0; i < organisations.size(); ++i) orgIdx_[organisations[i].id] = i;

    for (const KnowsEdge& e : knows) knowsAdj_[e.person1].push_back({e.person2, e.creationDate});
    for (const Message& m : messages) {
        messagesByCreator_[m.creatorPersonId].push_back(m.id);
        if (m.is_post()) {
            postsByForum_[m.forumId].push_back(m.id);
        } else {
            repliesByMessage_[m.replyOfMessageId].push_back(m.id);
        }
    }
    for (Forum& f : forums) {
        std::sort(f.members.begin(), f.members.end(),
                  [](const ForumMember& a, const ForumMember& b) { return a.personId < b.personId; });
        std::sort(f.tagIds.begin(), f.tagIds.end());
        forumsByModerator_[f.moderatorPersonId].push_back(f.id);
        for (const ForumMember& m : f.members) {
            forumsByMember_[m.personId].push_back({f.id, m.joinDate});
        }
    }
    for (const LikeEdge& e : likes) {
        likesByMessage_[e.messageId].push_back({e.personId, e.creationDate});
        likesByPerson_[e.personId].push_back({e.messageId, e.creationDate});
    }
    for (const MessageTagEdge& e : messageTags) {
        tagsByMessage_[e.messageId].push_back(e.tagId);
        messagesByTag_[e.tagId].push_back(e.messageId);
    }
    for (const HasInterestEdge& e : hasInterest) {
        interestsByPerson_[e.personId].push_back(e.tagId);
        personsByInterest_[e.tagId].push_back(e.personId);
    }
    for (const StudyAtEdge& e : studyAt) studyByPerson_[e.personId].push_back(e);
    for (const WorkAtEdge& e : workAt) workByPerson_[e.personId].push_back(e);

    for (auto* m : {&messagesByCreator_, &postsByForum_, &repliesByMessage_, &tagsByMessage_,
                    &messagesByTag_, &interestsByPerson_, &personsByInterest_,
                    &forumsByModerator_}) {
        for (auto& [k, v] : *m) std::sort(v.begin(), v.end());
    }
    for (auto* m : {&knowsAdj_, &likesByMessage_, &likesByPerson_, &forumsByMember_}) {
        for (auto& [k, v] : *m) std::sort(v.begin(), v.end());
    }
    for (auto& [k, v] : studyByPerson_) {
        std::sort(v.begin(), v.end(), [](const StudyAtEdge& a, const StudyAtEdge& b) {
            return a.universityId < b.universityId;
        });
    }
    for (auto& [k, v] : workByPerson_) {
        std::sort(v.begin(), v.end(), [](const WorkAtEdge& a, const WorkAtEdge& b) {
            return a.companyId < b.companyId;
        });
    }
}

void GraphSnapshot::shuffle_storage(std::uint64_t seed) {
    rng::Stream s(seed, rng::Domain::TestShuffle, 0);
    auto shuffle = [&s](auto& vec) {
        for (std::size_t i = vec.size(); i > 1; --i) {
            std::swap(vec[i - 1], vec[s.below(i)]);
        }
    };
    shuffle(persons);
    shuffle(messages);
    shuffle(forums);
    shuffle(tags);
    shuffle(tagClasses);
    shuffle(places);
    shuffle(organisations);
    shuffle(knows);
    shuffle(likes);
    shuffle(hasInterest);
    shuffle(studyAt);
    shuffle(workAt);
    shuffle(messageTags);
    for (Forum& f : forums) {
        shuffle(f.members);
        shuffle(f.tagIds);
    }
    build_indexes();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

class Auditor {
  public:
    explicit Auditor(const GraphSnapshot& g) : g_(g) {}

    std::vector<Violation> run() {
        check_unique_ids();
        check_places();
        check_organisations();
        check_tag_classes();
        check_tags();
        check_persons();
        check_messages();
        check_forums();
        check_knows();
        check_likes();
        check_simple_edges();
        return std::move(out_);
    }

  private:
    void add(std::string kind, std::string entityType, Id id, std::string detail) {
        out_.push_back({std::move(kind), std::move(entityType), id, std::move(detail)});
    }

    template <typename Vec>
    void unique_ids(const Vec& v, const char* type) {
        std::unordered_set<Id> seen;
        for (const auto& e : v) {
            if (!seen.insert(e.id).second) add("DuplicateId", type, e.id, "id appears twice");
        }
    }

    void check_unique_ids() {
        unique_ids(g_.persons, "person");
        unique_ids(g_.messages, "message");
        unique_ids(g_.forums, "forum");
        unique_ids(g_.tags, "tag");
        unique_ids(g_.tagClasses, "tagclass");
        unique_ids(g_.places, "place");
        unique_ids(g_.organisations, "organisation");
    }

    void check_places() {
        for (const Place& p : g_.places) {
            switch (p.kind) {
                case PlaceKind::City: {
                    const Place* up = g_.find_place(p.partOfId);
                    if (up == nullptr) {
                        add("DanglingReference", "place", p.id, "city partOf unresolved");
                    } else if (up->kind != PlaceKind::Country) {
                        add("PlaceHierarchy", "place", p.id, "city not contained in a country");
                    }
                    break;
                }
                case PlaceKind::Country: {
                    const Place* up = g_.find_place(p.partOfId);
                    if (up == nullptr) {
                        add("DanglingReference", "place", p.id, "country partOf unresolved");
                    } else if (up->kind != PlaceKind::Continent) {
                        add("PlaceHierarchy", "place", p.id, "country not contained in a continent");
                    }
                    break;
                }
                case PlaceKind::Continent:
                    if (p.partOfId != kNoId) {
                        add("PlaceHierarchy", "place", p.id, "continent must not have a container");
                    }
                    break;
            }
        }
    }

    void check_organisations() {
        for (const Organisation& o : g_.organisations) {
            const Place* p = g_.find_place(o.placeId);
            if (p == nullptr) {
                add("DanglingReference", "organisation", o.id, "place unresolved");
                continue;
            }
            if (o.kind == OrgKind::University && p->kind != PlaceKind::City) {
                add("OrganisationPlacement", "organisation", o.id, "university must be in a city");
            }
            if (o.kind == OrgKind::Company && p->kind != PlaceKind::Country) {
                add("OrganisationPlacement", "organisation", o.id, "company must be in a country");
            }
        }
    }

    void check_tag_classes() {
        for (const TagClass& tc : g_.tagClasses) {
            if (tc.parentId == kNoId) continue;
            if (g_.find_tag_class(tc.parentId) == nullptr) {
                add("DanglingReference", "tagclass", tc.id, "parent unresolved");
                continue;
            }
            // Forest check: walk up; a cycle revisits tc.id or runs past size().
            Id cur = tc.parentId;
            std::size_t hops = 0;
            while (cur != kNoId && hops <= g_.tagClasses.size()) {
                if (cur == tc.id) {
                    add("TagClassHierarchy", "tagclass", tc.id, "subclass cycle");
                    break;
                }
                const TagClass* up = g_.find_tag_class(cur);
                if (up == nullptr) break;  // dangling reported on that node
                cur = up->parentId;
                ++hops;
            }
        }
    }

    void check_tags() {
        for (const Tag& t : g_.tags) {
            if (g_.find_tag_class(t.typeTagClassId) == nullptr) {
                add("DanglingReference", "tag", t.id, "tag class unresolved");
            }
        }
    }

    void check_persons() {
        for (const Person& p : g_.persons) {
            const Place* city = g_.find_place(p.cityId);
            if (city == nullptr) {
                add("DanglingReference", "person", p.id, "home city unresolved");
            } else if (city->kind != PlaceKind::City) {
                add("PlaceHierarchy", "person", p.id, "home place is not a city");
            }
            if (p.emails.empty()) {
                add("MissingRequiredAttribute", "person", p.id, "no email addresses");
            }
            if (p.speaks.empty()) {
                add("MissingRequiredAttribute", "person", p.id, "no languages");
            }
        }
    }

    void check_messages() {
        for (const Message& m : g_.messages) {
            if (g_.find_person(m.creatorPersonId) == nullptr) {
                add("DanglingReference", "message", m.id, "creator unresolved");
            }
            const Place* c = g_.find_place(m.countryId);
            if (c == nullptr) {
                add("DanglingReference", "message", m.id, "country unresolved");
            } else if (c->kind != PlaceKind::Country) {
                add("PlaceHierarchy", "message", m.id, "message location is not a country");
            }
            if (m.is_post()) {
                if (g_.find_forum(m.forumId) == nullptr) {
                    add("DanglingReference", "message", m.id, "containing forum unresolved");
                }
                const bool hasContent = !m.content.empty();
                const bool hasImage = !m.imageFile.empty();
                if (hasContent == hasImage) {
                    add("ContentImageExclusivity", "message", m.id,
                        hasContent ? "both content and imageFile set" : "neither content nor imageFile set");
                }
            } else {
                if (g_.find_message(m.replyOfMessageId) == nullptr) {
                    add("DanglingReference", "message", m.id, "replyOf target unresolved");
                }
            }
            if (static_cast<std::size_t>(m.length) != utf8_length(m.content)) {
                add("LengthMismatch", "message", m.id,
                    "length attribute does not match content length");
            }
        }
        // Reply chains must terminate at a post.
        for (const Message& m : g_.messages) {
            if (m.is_post()) continue;
            Id cur = m.replyOfMessageId;
            std::size_t hops = 0;
            bool closed = false;
            while (hops <= g_.messages.size()) {
                const Message* parent = g_.find_message(cur);
                if (parent == nullptr) break;  // dangling reported above
                if (parent->is_post()) {
                    closed = true;
                    break;
                }
                cur = parent->replyOfMessageId;
                ++hops;
            }
            if (!closed && hops > g_.messages.size()) {
                add("CyclicReplyChain", "message", m.id, "replyOf chain never reaches a post");
            }
        }
    }

    void check_forums() {
        for (const Forum& f : g_.forums) {
            if (g_.find_person(f.moderatorPersonId) == nullptr) {
                add("DanglingReference", "forum", f.id, "moderator unresolved");
            }
            std::unordered_set<Id> memberIds;
            for (const ForumMember& m : f.members) {
                if (g_.find_person(m.personId) == nullptr) {
                    add("DanglingReference", "forum", f.id,
                        "member " + std::to_string(m.personId) + " unresolved");
                }
                if (!memberIds.insert(m.personId).second) {
                    add("DuplicateEdge", "forum", f.id,
                        "person " + std::to_string(m.personId) + " is a member twice");
                }
            }
            for (Id t : f.tagIds) {
                if (g_.find_tag(t) == nullptr) {
                    add("DanglingReference", "forum", f.id, "tag " + std::to_string(t) + " unresolved");
                }
            }
            for (Id postId : g_.posts_in_forum(f.id)) {
                const Message* post = g_.find_message(postId);
                if (post == nullptr) continue;
                if (post->creatorPersonId != f.moderatorPersonId &&
                    memberIds.find(post->creatorPersonId) == memberIds.end()) {
                    add("NonMemberPoster", "message", postId,
                        "creator is neither member nor moderator of forum " + std::to_string(f.id));
                }
            }
        }
    }

    void check_knows() {
        struct PairHash {
            std::size_t operator()(const std::pair<Id, Id>& p) const {
                return std::hash<Id>()(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
            }
        };
        std::unordered_map<std::pair<Id, Id>, DateTime, PairHash> seen;
        for (const KnowsEdge& e : g_.knows) {
            if (e.person1 == e.person2) {
                add("SelfKnows", "person", e.person1, "friendship with self");
                continue;
            }
            if (g_.find_person(e.person1) == nullptr) {
                add("DanglingReference", "knows", e.person1, "endpoint unresolved");
            }
            if (g_.find_person(e.person2) == nullptr) {
                add("DanglingReference", "knows", e.person2, "endpoint unresolved");
            }
            if (!seen.emplace(std::pair{e.person1, e.person2}, e.creationDate).second) {
                add("DuplicateEdge", "knows", e.person1,
                    "directed entry to " + std::to_string(e.person2) + " appears twice");
            }
        }
        for (const auto& [pair, t] : seen) {
            auto mirror = seen.find({pair.second, pair.first});
            if (mirror == seen.end()) {
                add("AsymmetricKnows", "person", pair.first,
                    "missing mirror of friendship with " + std::to_string(pair.second));
            } else if (mirror->second != t) {
                if (pair.first < pair.second) {
                    add("AsymmetricKnows", "person", pair.first,
                        "friendship with " + std::to_string(pair.second) +
                            " has direction-dependent creationDate");
                }
            }
        }
    }

    void check_likes() {
        struct PairHash {
            std::size_t operator()(const std::pair<Id, Id>& p) const {
                return std::hash<Id>()(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
            }
        };
        std::unordered_set<std::pair<Id, Id>, PairHash> seen;
        for (const LikeEdge& e : g_.likes) {
            if (g_.find_person(e.personId) == nullptr) {
                add("DanglingReference", "likes", e.personId, "person unresolved");
            }
            if (g_.find_message(e.messageId) == nullptr) {
                add("DanglingReference", "likes", e.messageId, "message unresolved");
            }
            if (!seen.insert({e.personId, e.messageId}).second) {
                add("DuplicateEdge", "likes", e.personId,
                    "duplicate like of message " + std::to_string(e.messageId));
            }
        }
    }

    void check_simple_edges() {
        for (const HasInterestEdge& e : g_.hasInterest) {
            if (g_.find_person(e.personId) == nullptr) {
                add("DanglingReference", "hasInterest", e.personId, "person unresolved");
            }
            if (g_.find_tag(e.tagId) == nullptr) {
                add("DanglingReference", "hasInterest", e.tagId, "tag unresolved");
            }
        }
        for (const StudyAtEdge& e : g_.studyAt) {
            const Organisation* o = g_.find_organisation(e.universityId);
            if (g_.find_person(e.personId) == nullptr) {
                add("DanglingReference", "studyAt", e.personId, "person unresolved");
            }
            if (o == nullptr) {
                add("DanglingReference", "studyAt", e.universityId, "organisation unresolved");
            } else if (o->kind != OrgKind::University) {
                add("OrganisationPlacement", "studyAt", e.personId, "study target is not a university");
            }
        }
        for (const WorkAtEdge& e : g_.workAt) {
            const Organisation* o = g_.find_organisation(e.companyId);
            if (g_.find_person(e.personId) == nullptr) {
                add("DanglingReference", "workAt", e.personId, "person unresolved");
            }
            if (o == nullptr) {
                add("DanglingReference", "workAt", e.companyId, "organisation unresolved");
            } else if (o->kind != OrgKind::Company) {
                add("OrganisationPlacement", "workAt", e.personId, "work target is not a company");
            }
        }
        for (const MessageTagEdge& e : g_.messageTags) {
            if (g_.find_message(e.messageId) == nullptr) {
                add("DanglingReference", "hasTag", e.messageId, "message unresolved");
            }
            if (g_.find_tag(e.tagId) == nullptr) {
                add("DanglingReference", "hasTag", e.tagId, "tag unresolved");
            }
        }
    }

    const GraphSnapshot& g_;
    std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_schema(const GraphSnapshot& g) {
    return Auditor(g).run();
}

std::pair<Id, Id> root_post(const GraphSnapshot& g, Id messageId) {
    const Message* m = &g.message(messageId);
    std::size_t hops = 0;
    while (!m->is_post()) {
        if (++hops > g.messages.size()) {
            throw SnbError("replyOf cycle at message " + std::to_string(messageId));
        }
        m = &g.message(m->replyOfMessageId);
    }
    return {m->id, m->forumId};
}

// ---------------------------------------------------------------------------
// Equality
// ---------------------------------------------------------------------------

namespace {

template <typename T, typename Key>
std::vector<T> sorted_by(const std::vector<T>& v, Key key) {
    std::vector<T> out = v;
    std::sort(out.begin(), out.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
    return out;
}

std::string ndiff(const char* what, std::size_t a, std::size_t b) {
    return std::string(what) + " count differs: " + std::to_string(a) + " vs " + std::to_string(b);
}

}  // namespace

std::string graph_diff(const GraphSnapshot& ga, const GraphSnapshot& gb) {
    auto pid = [](const auto& e) { return e.id; };

    {
        if (ga.persons.size() != gb.persons.size()) {
            return ndiff("person", ga.persons.size(), gb.persons.size());
        }
        auto a = sorted_by(ga.persons, pid);
        auto b = sorted_by(gb.persons, pid);
        for (std::size_t i = 0; i < a.size(); ++i) {
            Person& x = a[i];
            Person& y = b[i];
            std::sort(x.emails.begin(), x.emails.end());
            std::sort(y.emails.begin(), y.emails.end());
            std::sort(x.speaks.begin(), x.speaks.end());
            std::sort(y.speaks.begin(), y.speaks.end());
            if (x.id != y.id || x.firstName != y.firstName || x.lastName != y.lastName ||
                x.gender != y.gender || x.birthday != y.birthday ||
                x.creationDate != y.creationDate || x.locationIP != y.locationIP ||
                x.browserUsed != y.browserUsed || x.cityId != y.cityId || x.emails != y.emails ||
                x.speaks != y.speaks) {
                return "person " + std::to_string(x.id) + " differs";
            }
        }
    }
    {
        if (ga.messages.size() != gb.messages.size()) {
            return ndiff("message", ga.messages.size(), gb.messages.size());
        }
        auto a = sorted_by(ga.messages, pid);
        auto b = sorted_by(gb.messages, pid);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const Message& x = a[i];
            const Message& y = b[i];
            if (x.id != y.id || x.kind != y.kind || x.creationDate != y.creationDate ||
                x.locationIP != y.locationIP || x.browserUsed != y.browserUsed ||
                x.content != y.content || x.length != y.length ||
                x.creatorPersonId != y.creatorPersonId || x.countryId != y.countryId ||
                x.language != y.language || x.imageFile != y.imageFile ||
                x.forumId != y.forumId || x.replyOfMessageId != y.replyOfMessageId) {
                return "message " + std::to_string(x.id) + " differs";
            }
        }
    }
    {
        if (ga.forums.size() != gb.forums.size()) {
            return ndiff("forum", ga.forums.size(), gb.forums.size());
        }
        auto a = sorted_by(ga.forums, pid);
        auto b = sorted_by(gb.forums, pid);
        for (std::size_t i = 0; i < a.size(); ++i) {
            Forum& x = a[i];
            Forum& y = b[i];
            auto mcmp = [](const ForumMember& l, const ForumMember& r) {
                return std::pair{l.personId, l.joinDate.ms} < std::pair{r.personId, r.joinDate.ms};
            };
            std::sort(x.members.begin(), x.members.end(), mcmp);
            std::sort(y.members.begin(), y.members.end(), mcmp);
            std::sort(x.tagIds.begin(), x.tagIds.end());
            std::sort(y.tagIds.begin(), y.tagIds.end());
            bool membersEqual = x.members.size() == y.members.size();
            for (std::size_t j = 0; membersEqual && j < x.members.size(); ++j) {
                membersEqual = x.members[j].personId == y.members[j].personId &&
                               x.members[j].joinDate == y.members[j].joinDate;
            }
            if (x.id != y.id || x.title != y.title || x.creationDate != y.creationDate ||
                x.moderatorPersonId != y.moderatorPersonId || !membersEqual ||
                x.tagIds != y.tagIds) {
                return "forum " + std::to_string(x.id) + " differs";
            }
        }
    }
    {
        if (ga.tags.size() != gb.tags.size()) return ndiff("tag", ga.tags.size(), gb.tags.size());
        auto a = sorted_by(ga.tags, pid);
        auto b = sorted_by(gb.tags, pid);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].id != b[i].id || a[i].name != b[i].name || a[i].url != b[i].url ||
                a[i].typeTagClassId != b[i].typeTagClassId) {
                return "tag " + std::to_string(a[i].id) + " differs";
            }
        }
    }
    {
        if (ga.tagClasses.size() != gb.tagClasses.size()) {
            return ndiff("tagclass", ga.tagClasses.size(), gb.tagClasses.size());
        }
        auto a = sorted_by(ga.tagClasses, pid);
        auto b = sorted_by(gb.tagClasses, pid);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].id != b[i].id || a[i].name != b[i].name || a[i].url != b[i].url ||
                a[i].parentId != b[i].parentId) {
                return "tagclass " + std::to_string(a[i].id) + " differs";
            }
        }
    }
    {
        if (ga.places.size() != gb.places.size()) {
            return ndiff("place", ga.places.size(), gb.places.size());
        }
        auto a = sorted_by(ga.places, pid);
        auto b = sorted_by(gb.places, pid);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].id != b[i].id || a[i].name != b[i].name || a[i].url != b[i].url ||
                a[i].kind != b[i].kind || a[i].partOfId != b[i].partOfId) {
                return "place " + std::to_string(a[i].id) + " differs";
            }
        }
    }
    {
        if (ga.organisations.size() != gb.organisations.size()) {
            return ndiff("organisation", ga.organisations.size(), gb.organisations.size());
        }
        auto a = sorted_by(ga.organisations, pid);
        auto b = sorted_by(gb.organisations, pid);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].id != b[i].id || a[i].kind != b[i].kind || a[i].name != b[i].name ||
                a[i].url != b[i].url || a[i].placeId != b[i].placeId) {
                return "organisation " + std::to_string(a[i].id) + " differs";
            }
        }
    }
    {
        // Canonical friendship set: one (min, max, t) per pair. The dimension
        // tag is generator provenance, not logical content.
        auto canon = [](const GraphSnapshot& g) {
            std::vector<std::tuple<Id, Id, std::int64_t>> v;
            for (const KnowsEdge& e : g.knows) {
                if (e.person1 < e.person2) v.emplace_back(e.person1, e.person2, e.creationDate.ms);
            }
            std::sort(v.begin(), v.end());
            return v;
        };
        if (canon(ga) != canon(gb)) return "knows edge sets differ";
    }
    {
        auto key = [](const LikeEdge& e) { return std::tuple{e.personId, e.messageId, e.creationDate.ms}; };
        auto a = sorted_by(ga.likes, key);
        auto b = sorted_by(gb.likes, key);
        if (a.size() != b.size()) return ndiff("likes", a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (key(a[i]) != key(b[i])) return "likes edge sets differ";
        }
    }
    {
        auto key = [](const HasInterestEdge& e) { return std::pair{e.personId, e.tagId}; };
        auto a = sorted_by(ga.hasInterest, key);
        auto b = sorted_by(gb.hasInterest, key);
        if (a.size() != b.size()) return ndiff("hasInterest", a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (key(a[i]) != key(b[i])) return "hasInterest edge sets differ";
        }
    }
    {
        auto key = [](const StudyAtEdge& e) { return std::tuple{e.personId, e.universityId, e.classYear}; };
        auto a = sorted_by(ga.studyAt, key);
        auto b = sorted_by(gb.studyAt, key);
        if (a.size() != b.size()) return ndiff("studyAt", a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (key(a[i]) != key(b[i])) return "studyAt edge sets differ";
        }
    }
    {
        auto key = [](const WorkAtEdge& e) { return std::tuple{e.personId, e.companyId, e.workFrom}; };
        auto a = sorted_by(ga.workAt, key);
        auto b = sorted_by(gb.workAt, key);
        if (a.size() != b.size()) return ndiff("workAt", a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (key(a[i]) != key(b[i])) return "workAt edge sets differ";
        }
    }
    {
        auto key = [](const MessageTagEdge& e) { return std::pair{e.messageId, e.tagId}; };
        auto a = sorted_by(ga.messageTags, key);
        auto b = sorted_by(gb.messageTags, key);
        if (a.size() != b.size()) return ndiff("hasTag", a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (key(a[i]) != key(b[i])) return "hasTag edge sets differ";
        }
    }
    return {};
}

bool graph_equal(const GraphSnapshot& a, const GraphSnapshot& b) {
    return graph_diff(a, b).empty();
}

}  // namespace snb
