#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "snb/core.hpp"

namespace snb {

struct Person {
    Id id = kNoId;
    std::string firstName;
    std::string lastName;
    std::string gender;
    Date birthday;
    DateTime creationDate;
    std::string locationIP;
    std::string browserUsed;
    Id cityId = kNoId;
    std::vector<std::string> emails;  // kept sorted, at least one
    std::vector<std::string> speaks;  // kept sorted, at least one
};

enum class MessageKind : std::uint8_t { Post, Comment };

/// Post or Comment. Posts carry language/imageFile/forumId; comments carry
/// replyOfMessageId. Posts hold exactly one of content/imageFile; the unused
/// field stays empty.
struct Message {
    Id id = kNoId;
    MessageKind kind = MessageKind::Post;
    DateTime creationDate;
    std::string locationIP;
    std::string browserUsed;
    std::string content;
    std::int32_t length = 0;
    Id creatorPersonId = kNoId;
    Id countryId = kNoId;
    std::string language;   // posts only; may be empty
    std::string imageFile;  // posts only; may be empty
    Id forumId = kNoId;     // posts only
    Id replyOfMessageId = kNoId;  // comments only

    bool is_post() const { return kind == MessageKind::Post; }
};

struct ForumMember {
    Id personId = kNoId;
    DateTime joinDate;
};

struct Forum {
    Id id = kNoId;
    std::string title;
    DateTime creationDate;
    Id moderatorPersonId = kNoId;
    std::vector<ForumMember> members;  // kept sorted by personId
    std::vector<Id> tagIds;            // kept sorted
};

struct Tag {
    Id id = kNoId;
    std::string name;
    std::string url;
    Id typeTagClassId = kNoId;
};

struct TagClass {
    Id id = kNoId;
    std::string name;
    std::string url;
    Id parentId = kNoId;  // kNoId for roots
};

enum class PlaceKind : std::uint8_t { City, Country, Continent };

struct Place {
    Id id = kNoId;
    std::string name;
    std::string url;
    PlaceKind kind = PlaceKind::City;
    Id partOfId = kNoId;  // city -> country -> continent; kNoId for continents
};

enum class OrgKind : std::uint8_t { University, Company };

struct Organisation {
    Id id = kNoId;
    OrgKind kind = OrgKind::University;
    std::string name;
    std::string url;
    Id placeId = kNoId;  // university -> city, company -> country
};

/// Friendship assertions are stored directed; a well-formed graph contains the
/// mirror of every entry with the same creationDate. `dimension` records which
/// similarity pass produced the edge (0 when unknown, e.g. after a CSV load).
struct KnowsEdge {
    Id person1 = kNoId;
    Id person2 = kNoId;
    DateTime creationDate;
    int dimension = 0;
};

struct LikeEdge {
    Id personId = kNoId;
    Id messageId = kNoId;
    DateTime creationDate;
};

struct HasInterestEdge {
    Id personId = kNoId;
    Id tagId = kNoId;
};

struct StudyAtEdge {
    Id personId = kNoId;
    Id universityId = kNoId;
    std::int32_t classYear = 0;
};

struct WorkAtEdge {
    Id personId = kNoId;
    Id companyId = kNoId;
    std::int32_t workFrom = 0;
};

struct MessageTagEdge {
    Id messageId = kNoId;
    Id tagId = kNoId;
};

struct Violation {
    std::string kind;
    std::string entityType;
    Id id = kNoId;
    std::string detail;
};

class GraphSnapshot {
  public:
    // Simulation window metadata (not part of the persisted dataset).
    std::int64_t simulationStartMs = 0;
    std::int64_t simulationEndMs = 0;

    std::vector<Person> persons;
    std::vector<Message> messages;
    std::vector<Forum> forums;
    std::vector<Tag> tags;
    std::vector<TagClass> tagClasses;
    std::vector<Place> places;
    std::vector<Organisation> organisations;

    std::vector<KnowsEdge> knows;  // both directions of every friendship
    std::vector<LikeEdge> likes;
    std::vector<HasInterestEdge> hasInterest;
    std::vector<StudyAtEdge> studyAt;
    std::vector<WorkAtEdge> workAt;
    std::vector<MessageTagEdge> messageTags;

    // ---- lookups (valid after build_indexes or the add_* mutators) ----

    const Person* find_person(Id id) const;
    const Message* find_message(Id id) const;
    const Forum* find_forum(Id id) const;
    const Tag* find_tag(Id id) const;
    const TagClass* find_tag_class(Id id) const;
    const Place* find_place(Id id) const;
    const Organisation* find_organisation(Id id) const;

    const Person& person(Id id) const;
    const Message& message(Id id) const;
    const Forum& forum(Id id) const;
    const Tag& tag(Id id) const;
    const TagClass& tag_class(Id id) const;
    const Place& place(Id id) const;
    const Organisation& organisation(Id id) const;

    Forum* mutable_forum(Id id);

    /// Friends of a person: (friendId, since), sorted by friendId.
    const std::vector<std::pair<Id, DateTime>>& friends_of(Id personId) const;
    bool knows_lookup(Id a, Id b) const;

    const std::vector<Id>& messages_by_creator(Id personId) const;
    const std::vector<Id>& posts_in_forum(Id forumId) const;
    const std::vector<Id>& replies_of(Id messageId) const;
    const std::vector<std::pair<Id, DateTime>>& likes_of_message(Id messageId) const;
    const std::vector<std::pair<Id, DateTime>>& likes_by_person(Id personId) const;
    const std::vector<Id>& tags_of_message(Id messageId) const;
    const std::vector<Id>& messages_with_tag(Id tagId) const;
    const std::vector<Id>& interests_of(Id personId) const;
    const std::vector<Id>& persons_with_interest(Id tagId) const;
    const std::vector<std::pair<Id, DateTime>>& forums_of_member(Id personId) const;
    const std::vector<StudyAtEdge>& study_of(Id personId) const;
    const std::vector<WorkAtEdge>& work_of(Id personId) const;
    const std::vector<Id>& forums_moderated_by(Id personId) const;

    /// Country place id for a person (via home city), or for any place.
    Id country_of_person(Id personId) const;
    Id country_of_place(Id placeId) const;
    Id continent_of_place(Id placeId) const;

    /// Tag class of a tag, walking no hierarchy.
    Id tag_class_of(Id tagId) const;
    /// True when `classId` equals `ancestorId` or is a transitive subclass.
    bool tag_class_is_a(Id classId, Id ancestorId) const;

    // ---- mutation (keeps indexes current) ----

    void add_person(Person p);
    void add_message(Message m);
    void add_forum(Forum f);
    void add_forum_member(Id forumId, Id personId, DateTime joinDate);
    void add_forum_tag(Id forumId, Id tagId);
    /// Inserts both directions.
    void add_knows(Id a, Id b, DateTime creationDate, int dimension = 0);
    void add_like(Id personId, Id messageId, DateTime creationDate);
    void add_interest(Id personId, Id tagId);
    void add_study_at(Id personId, Id universityId, std::int32_t classYear);
    void add_work_at(Id personId, Id companyId, std::int32_t workFrom);
    void add_message_tag(Id messageId, Id tagId);

    /// Rebuilds every derived index from the entity/edge vectors. Use after
    /// bulk-filling the public vectors directly or after removals.
    void build_indexes();

    /// Deterministically permutes the storage order of entities and edges and
    /// rebuilds indexes. Logical content is unchanged; used to check that
    /// query results do not depend on internal iteration order.
    void shuffle_storage(std::uint64_t seed);

  private:
    std::unordered_map<Id, std::size_t> personIdx_, messageIdx_, forumIdx_, tagIdx_,
        tagClassIdx_, placeIdx_, orgIdx_;
    std::unordered_map<Id, std::vector<std::pair<Id, DateTime>>> knowsAdj_;
    std::unordered_map<Id, std::vector<Id>> messagesByCreator_;
    std::unordered_map<Id, std::vector<Id>> postsByForum_;
    std::unordered_map<Id, std::vector<Id>> repliesByMessage_;
    std::unordered_map<Id, std::vector<std::pair<Id, DateTime>>> likesByMessage_;
    std::unordered_map<Id, std::vector<std::pair<Id, DateTime>>> likesByPerson_;
    std::unordered_map<Id, std::vector<Id>> tagsByMessage_;
    std::unordered_map<Id, std::vector<Id>> messagesByTag_;
    std::unordered_map<Id, std::vector<Id>> interestsByPerson_;
    std::unordered_map<Id, std::vector<Id>> personsByInterest_;
    std::unordered_map<Id, std::vector<std::pair<Id, DateTime>>> forumsByMember_;
    std::unordered_map<Id, std::vector<StudyAtEdge>> studyByPerson_;
    std::unordered_map<Id, std::vector<WorkAtEdge>> workByPerson_;
    std::unordered_map<Id, std::vector<Id>> forumsByModerator_;
};

/// Full referential and structural audit. Violations are data, not errors:
/// an invalid graph yields a non-empty list, a valid one an empty list.
std::vector<Violation> validate_schema(const GraphSnapshot& g);

/// Thread root of a message: (postId, forumId). Identity post/forum for a
/// Post; walks replyOf for a Comment. Throws UnknownIdError for unknown ids.
std::pair<Id, Id> root_post(const GraphSnapshot& g, Id messageId);

/// Logical multiset equality of two snapshots (storage order ignored).
bool graph_equal(const GraphSnapshot& a, const GraphSnapshot& b);

/// Empty string when equal, otherwise a description of the first difference.
std::string graph_diff(const GraphSnapshot& a, const GraphSnapshot& b);

}  // namespace snb
