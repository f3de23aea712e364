#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "snb/engine.hpp"

namespace snb {

namespace {

void require_person(const GraphSnapshot& g, Id id) {
    if (!g.find_person(id)) {
        throw DependencyMissingError("person " + std::to_string(id) + " not present");
    }
}

void require_place(const GraphSnapshot& g, Id id) {
    if (!g.find_place(id)) {
        throw DependencyMissingError("place " + std::to_string(id) + " not present");
    }
}

void require_tag(const GraphSnapshot& g, Id id) {
    if (!g.find_tag(id)) {
        throw DependencyMissingError("tag " + std::to_string(id) + " not present");
    }
}

void require_forum(const GraphSnapshot& g, Id id) {
    if (!g.find_forum(id)) {
        throw DependencyMissingError("forum " + std::to_string(id) + " not present");
    }
}

const Message& require_message(const GraphSnapshot& g, Id id, MessageKind kind) {
    const Message* m = g.find_message(id);
    if (!m || m->kind != kind) {
        throw DependencyMissingError(
            std::string(kind == MessageKind::Post ? "post " : "comment ") + std::to_string(id) +
            " not present");
    }
    return *m;
}

void insert_person(GraphSnapshot& g, const InsertPersonPayload& pl) {
    if (g.find_person(pl.person.id)) {
        throw SchemaViolationError("duplicate person " + std::to_string(pl.person.id));
    }
    require_place(g, pl.person.cityId);
    for (Id tag : pl.interestTagIds) require_tag(g, tag);
    for (const StudyAtEdge& edge : pl.study) {
        if (!g.find_organisation(edge.universityId)) {
            throw DependencyMissingError("organisation " + std::to_string(edge.universityId) +
                                         " not present");
        }
    }
    for (const WorkAtEdge& edge : pl.work) {
        if (!g.find_organisation(edge.companyId)) {
            throw DependencyMissingError("organisation " + std::to_string(edge.companyId) +
                                         " not present");
        }
    }
    g.add_person(pl.person);
    for (Id tag : pl.interestTagIds) g.add_interest(pl.person.id, tag);
    for (const StudyAtEdge& edge : pl.study) {
        g.add_study_at(pl.person.id, edge.universityId, edge.classYear);
    }
    for (const WorkAtEdge& edge : pl.work) {
        g.add_work_at(pl.person.id, edge.companyId, edge.workFrom);
    }
}

void insert_forum(GraphSnapshot& g, const InsertForumPayload& pl) {
    if (g.find_forum(pl.forum.id)) {
        throw SchemaViolationError("duplicate forum " + std::to_string(pl.forum.id));
    }
    require_person(g, pl.forum.moderatorPersonId);
    for (Id tag : pl.forum.tagIds) require_tag(g, tag);
    g.add_forum(pl.forum);
}

void insert_post(GraphSnapshot& g, const InsertPostPayload& pl) {
    if (g.find_message(pl.post.id)) {
        throw SchemaViolationError("duplicate message " + std::to_string(pl.post.id));
    }
    require_person(g, pl.post.creatorPersonId);
    require_forum(g, pl.post.forumId);
    require_place(g, pl.post.countryId);
    for (Id tag : pl.tagIds) require_tag(g, tag);
    g.add_message(pl.post);
    for (Id tag : pl.tagIds) g.add_message_tag(pl.post.id, tag);
}

void insert_comment(GraphSnapshot& g, const InsertCommentPayload& pl) {
    if (g.find_message(pl.comment.id)) {
        throw SchemaViolationError("duplicate message " + std::to_string(pl.comment.id));
    }
    require_person(g, pl.comment.creatorPersonId);
    require_place(g, pl.comment.countryId);
    require_message(g, pl.comment.replyOfMessageId,
                    pl.parentIsPost ? MessageKind::Post : MessageKind::Comment);
    for (Id tag : pl.tagIds) require_tag(g, tag);
    g.add_message(pl.comment);
    for (Id tag : pl.tagIds) g.add_message_tag(pl.comment.id, tag);
}

}  // namespace

void apply_insert(GraphSnapshot& g, const UpdateEvent& e) {
    switch (e.opId) {
        case 1:
            insert_person(g, std::get<InsertPersonPayload>(e.payload));
            return;
        case 2: {
            const auto& pl = std::get<InsertLikePayload>(e.payload);
            require_person(g, pl.personId);
            require_message(g, pl.messageId, MessageKind::Post);
            g.add_like(pl.personId, pl.messageId, pl.creationDate);
            return;
        }
        case 3: {
            const auto& pl = std::get<InsertLikePayload>(e.payload);
            require_person(g, pl.personId);
            require_message(g, pl.messageId, MessageKind::Comment);
            g.add_like(pl.personId, pl.messageId, pl.creationDate);
            return;
        }
        case 4:
            insert_forum(g, std::get<InsertForumPayload>(e.payload));
            return;
        case 5: {
            const auto& pl = std::get<InsertMembershipPayload>(e.payload);
            require_forum(g, pl.forumId);
            require_person(g, pl.personId);
            g.add_forum_member(pl.forumId, pl.personId, pl.joinDate);
            return;
        }
        case 6:
            insert_post(g, std::get<InsertPostPayload>(e.payload));
            return;
        case 7:
            insert_comment(g, std::get<InsertCommentPayload>(e.payload));
            return;
        case 8: {
            const auto& pl = std::get<InsertKnowsPayload>(e.payload);
            require_person(g, pl.person1);
            require_person(g, pl.person2);
            g.add_knows(pl.person1, pl.person2, pl.creationDate);
            return;
        }
        default:
            throw SchemaViolationError("unknown update operation " + std::to_string(e.opId));
    }
}

namespace {

// A removal plan: node sets are closed under the cascade rules before any
// vector is touched, then everything is filtered in one pass.
struct RemovalPlan {
    std::unordered_set<Id> persons;
    std::unordered_set<Id> forums;
    std::unordered_set<Id> messages;
    std::unordered_map<Id, Id> newModerators;  // surviving group forums
};

bool is_group_forum(const Forum& f) { return f.title.rfind("Group for ", 0) == 0; }

void collect_message_tree(const GraphSnapshot& g, Id root, std::unordered_set<Id>& out) {
    std::vector<Id> stack{root};
    while (!stack.empty()) {
        const Id cur = stack.back();
        stack.pop_back();
        if (!out.insert(cur).second) continue;
        for (Id reply : g.replies_of(cur)) stack.push_back(reply);
    }
}

void collect_forum_cascade(const GraphSnapshot& g, Id forumId, RemovalPlan& plan) {
    plan.forums.insert(forumId);
    for (Id post : g.posts_in_forum(forumId)) collect_message_tree(g, post, plan.messages);
}

DeletionReport execute_plan(GraphSnapshot& g, const RemovalPlan& plan) {
    DeletionReport report;
    report.persons = plan.persons.size();
    report.forums = plan.forums.size();
    for (Id mid : plan.messages) {
        (g.message(mid).is_post() ? report.posts : report.comments) += 1;
    }
    report.moderatorsReassigned = plan.newModerators.size();

    for (const auto& [forumId, moderator] : plan.newModerators) {
        g.mutable_forum(forumId)->moderatorPersonId = moderator;
    }

    const auto personGone = [&](Id id) { return plan.persons.count(id) != 0; };
    const auto messageGone = [&](Id id) { return plan.messages.count(id) != 0; };

    std::erase_if(g.persons, [&](const Person& p) { return personGone(p.id); });
    std::erase_if(g.messages, [&](const Message& m) { return messageGone(m.id); });

    std::size_t directedKnows = 0;
    std::erase_if(g.knows, [&](const KnowsEdge& e) {
        if (!personGone(e.person1) && !personGone(e.person2)) return false;
        ++directedKnows;
        return true;
    });
    report.knows = directedKnows / 2;

    std::erase_if(g.likes, [&](const LikeEdge& e) {
        if (!personGone(e.personId) && !messageGone(e.messageId)) return false;
        ++report.likes;
        return true;
    });
    std::erase_if(g.hasInterest,
                  [&](const HasInterestEdge& e) { return personGone(e.personId); });
    std::erase_if(g.studyAt, [&](const StudyAtEdge& e) { return personGone(e.personId); });
    std::erase_if(g.workAt, [&](const WorkAtEdge& e) { return personGone(e.personId); });
    std::erase_if(g.messageTags,
                  [&](const MessageTagEdge& e) { return messageGone(e.messageId); });

    std::erase_if(g.forums, [&](const Forum& f) {
        if (plan.forums.count(f.id)) {
            report.memberships += f.members.size();
            return true;
        }
        return false;
    });
    for (Forum& f : g.forums) {
        std::erase_if(f.members, [&](const ForumMember& m) {
            if (!personGone(m.personId)) return false;
            ++report.memberships;
            return true;
        });
    }

    g.build_indexes();
    return report;
}

}  // namespace

DeletionReport delete_person(GraphSnapshot& g, Id personId) {
    const Person& person = g.person(personId);
    RemovalPlan plan;
    plan.persons.insert(person.id);

    for (Id forumId : g.forums_moderated_by(personId)) {
        const Forum& f = g.forum(forumId);
        if (!is_group_forum(f)) {
            collect_forum_cascade(g, forumId, plan);
            continue;
        }
        // group forums survive under a new moderator: the member with the
        // oldest join date (ties broken by smaller person id)
        const ForumMember* best = nullptr;
        for (const ForumMember& m : f.members) {
            if (m.personId == personId) continue;
            if (!best || std::pair(m.joinDate, m.personId) <
                             std::pair(best->joinDate, best->personId)) {
                best = &m;
            }
        }
        if (best) {
            plan.newModerators[forumId] = best->personId;
        } else {
            collect_forum_cascade(g, forumId, plan);
        }
    }
    for (Id mid : g.messages_by_creator(personId)) {
        collect_message_tree(g, mid, plan.messages);
    }
    return execute_plan(g, plan);
}

DeletionReport delete_forum(GraphSnapshot& g, Id forumId) {
    const Forum& f = g.forum(forumId);
    RemovalPlan plan;
    collect_forum_cascade(g, f.id, plan);
    return execute_plan(g, plan);
}

DeletionReport delete_post(GraphSnapshot& g, Id postId) {
    const Message& m = g.message(postId);
    if (!m.is_post()) throw SchemaViolationError("message " + std::to_string(postId) +
                                                 " is not a post");
    RemovalPlan plan;
    collect_message_tree(g, postId, plan.messages);
    return execute_plan(g, plan);
}

DeletionReport delete_comment(GraphSnapshot& g, Id commentId) {
    const Message& m = g.message(commentId);
    if (m.is_post()) throw SchemaViolationError("message " + std::to_string(commentId) +
                                                " is not a comment");
    RemovalPlan plan;
    collect_message_tree(g, commentId, plan.messages);
    return execute_plan(g, plan);
}

}  // namespace snb
