#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "snb/dictionary.hpp"
#include "snb/graph.hpp"

namespace snb {

struct GeneratorConfig {
    std::uint64_t numPersons = 150;
    std::int32_t startYear = 2010;
    std::int32_t numYears = 3;
    std::uint64_t seed = 1;
    int workers = 1;

    // Friendship generation.
    int windowSize = 50;
    double degreeMean = 15.0;
    double degreeSigma = 1.0;
    std::array<double, 3> dimensionSplit{0.45, 0.45, 0.10};
    double geometricP = 0.12;

    // Activity generation.
    int flashmobCount = -1;  // derived from numPersons when negative
    double flashmobHalfWidthHours = 12.0;
    double flashmobPostFraction = 0.15;
    double tagUniformMix = 0.10;
    double wallPostsPerFriend = 1.2;
    double albumProbability = 0.6;
    double groupProbability = 0.35;
    double commentsPerPost = 1.1;
    double likesPerMessage = 0.6;
    double abroadProbability = 0.05;

    double bulkFraction = 0.9;

    std::int64_t simulation_start_ms() const;
    std::int64_t simulation_end_ms() const;

    /// Throws ConfigError when a field is out of its documented domain.
    void validate() const;
};

struct FlashmobEvent {
    Id tagId = kNoId;
    DateTime peakTime;
    double intensity = 1.0;
};

struct PersonGenResult {
    std::vector<Person> persons;  // ids 0..numPersons-1 in order
    std::vector<HasInterestEdge> interests;
    std::vector<StudyAtEdge> studyAt;
    std::vector<WorkAtEdge> workAt;
    std::vector<int> targetDegree;              // parallel to persons
    std::vector<std::uint32_t> countryIndex;    // parallel; index into world.countries
};

PersonGenResult generate_persons(const GeneratorConfig& cfg, const Dictionaries& dicts,
                                 const StaticWorld& world);

/// Persons ordered by the similarity key of the given dimension (1 = study,
/// 2 = interest, 3 = random). Returns person ids in rank order.
std::vector<Id> similarity_ranking(const PersonGenResult& pg, int dimension,
                                   const GeneratorConfig& cfg);

/// One windowed friendship pass. Returns one edge per created friendship
/// (person1 < person2), tagged with the dimension. Edges already present in
/// `existing` (from earlier passes) are never duplicated.
std::vector<KnowsEdge> knows_pass(const PersonGenResult& pg, int dimension,
                                  const GeneratorConfig& cfg,
                                  const std::vector<KnowsEdge>& existing = {});

/// Per-dimension friendship budgets derived from the target degrees.
std::vector<int> dimension_budgets(const PersonGenResult& pg, int dimension,
                                   const GeneratorConfig& cfg);

std::vector<FlashmobEvent> make_flashmobs(const GeneratorConfig& cfg, const StaticWorld& world);

struct ActivityResult {
    std::vector<Forum> forums;      // members and tags populated
    std::vector<Message> messages;  // posts and comments, one id space
    std::vector<LikeEdge> likes;
    std::vector<MessageTagEdge> messageTags;
};

ActivityResult generate_activity(const PersonGenResult& pg, const std::vector<KnowsEdge>& knows,
                                 const GeneratorConfig& cfg,
                                 const std::vector<FlashmobEvent>& flashmobs,
                                 const StaticWorld& world);

// ---------------------------------------------------------------------------
// Update stream events
// ---------------------------------------------------------------------------

struct InsertPersonPayload {
    Person person;
    std::vector<Id> interestTagIds;
    std::vector<StudyAtEdge> study;
    std::vector<WorkAtEdge> work;
};
struct InsertLikePayload {
    Id personId = kNoId;
    Id messageId = kNoId;
    DateTime creationDate;
};
struct InsertForumPayload {
    Forum forum;  // members empty; tags populated
};
struct InsertMembershipPayload {
    Id forumId = kNoId;
    Id personId = kNoId;
    DateTime joinDate;
};
struct InsertPostPayload {
    Message post;
    std::vector<Id> tagIds;
};
struct InsertCommentPayload {
    Message comment;
    std::vector<Id> tagIds;
    bool parentIsPost = false;  // which reply slot replyOfMessageId belongs to
};
struct InsertKnowsPayload {
    Id person1 = kNoId;
    Id person2 = kNoId;
    DateTime creationDate;
};

/// Operation codes: 1 add person, 2 like post, 3 like comment, 4 add forum,
/// 5 add membership, 6 add post, 7 add comment, 8 add friendship.
struct UpdateEvent {
    std::int64_t t = 0;   // simulation time, epoch millis
    std::int64_t td = 0;  // creation time of the latest prerequisite, epoch millis
    int opId = 0;
    std::variant<InsertPersonPayload, InsertLikePayload, InsertForumPayload,
                 InsertMembershipPayload, InsertPostPayload, InsertCommentPayload,
                 InsertKnowsPayload>
        payload;
};

struct SplitResult {
    GraphSnapshot snapshot;
    std::vector<UpdateEvent> stream;  // ordered by (t, opId, entity id)
};

/// Splits a full dataset at the bulkFraction cut point of the simulation
/// window: entities created before the cut form the bulk snapshot, later
/// creations become the timestamp-ordered update stream.
SplitResult split_dataset(const GraphSnapshot& full, double bulkFraction);

/// Applies one update event (used by replay checks and the driver's engine).
void apply_update_event(GraphSnapshot& g, const UpdateEvent& e);

// ---------------------------------------------------------------------------
// Curation statistics
// ---------------------------------------------------------------------------

struct CurationStats {
    std::vector<Id> personIds;  // ascending
    std::vector<std::int64_t> friendCount;
    std::vector<std::int64_t> friendOfFriendCount;  // distinct persons within 2 hops
    std::vector<std::int64_t> friendMessageCount;
    std::vector<std::int64_t> twoHopMessageCount;
    std::map<Id, std::int64_t> messagesByTag;
    std::map<Id, std::int64_t> messagesByTagClass;  // direct type only
    std::map<Id, std::int64_t> personsByCountry;
    std::map<Id, std::int64_t> messagesByCountry;
    std::map<std::int64_t, std::int64_t> messagesByDay;  // epoch day -> count
    std::int64_t totalMessages = 0;
};

CurationStats compute_curation_stats(const GraphSnapshot& g);

struct GenerateResult {
    GraphSnapshot snapshot;
    std::vector<UpdateEvent> stream;
    CurationStats stats;
};

/// Full pipeline: static world, persons, three friendship passes, activity,
/// split, statistics. Pure function of (cfg minus workers, dicts).
GenerateResult generate(const GeneratorConfig& cfg, const Dictionaries& dicts);
GenerateResult generate(const GeneratorConfig& cfg);

}  // namespace snb
