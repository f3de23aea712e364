#include "snb/serializer.hpp"

#include <algorithm>
#include <charconv>
#include <concepts>
#include <cstdio>
#include <limits>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace snb {

namespace fs = std::filesystem;

namespace {

std::string join_semi(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out.push_back(';');
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> split_semi(const std::string& s) {
    if (s.empty()) return {};
    return split(s, ';');
}

template <std::integral T>
std::string num(T v) {
    return std::to_string(v);
}

class CsvWriter {
  public:
    CsvWriter(const fs::path& root, std::string rel, const std::string& header)
        : rel_(std::move(rel)) {
        const fs::path full = root / rel_;
        fs::create_directories(full.parent_path());
        out_.open(full, std::ios::binary | std::ios::trunc);
        if (!out_) throw IoError("cannot open " + full.string() + " for writing");
        out_ << header << '\n';
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) out_.put('|');
            out_ << fields[i];
        }
        out_.put('\n');
        ++rows_;
    }

    FileManifestEntry finish() {
        out_.flush();
        if (!out_) throw IoError("write failed for " + rel_);
        out_.close();
        return {rel_, rows_};
    }

  private:
    std::ofstream out_;
    std::string rel_;
    std::size_t rows_ = 0;
};

template <typename T>
std::vector<const T*> sorted_by_id(const std::vector<T>& v) {
    std::vector<const T*> out;
    out.reserve(v.size());
    for (const T& x : v) out.push_back(&x);
    std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
    return out;
}

const char* place_kind_name(PlaceKind k) {
    switch (k) {
        case PlaceKind::City: return "city";
        case PlaceKind::Country: return "country";
        default: return "continent";
    }
}

const char* org_kind_name(OrgKind k) {
    return k == OrgKind::University ? "university" : "company";
}

PlaceKind parse_place_kind(const std::string& s, const std::string& file, std::size_t line) {
    if (s == "city") return PlaceKind::City;
    if (s == "country") return PlaceKind::Country;
    if (s == "continent") return PlaceKind::Continent;
    throw ParseError(file, line, "unknown place type '" + s + "'");
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

void write_static(const GraphSnapshot& g, const fs::path& root, bool merged, Manifest& man) {
    const std::string d = "social_network/static/";
    {
        CsvWriter w(root, d + "organisation_0_0.csv",
                    merged ? "id|type|name|url|place" : "id|type|name|url");
        for (const auto* o : sorted_by_id(g.organisations)) {
            std::vector<std::string> r{num(o->id), org_kind_name(o->kind), o->name, o->url};
            if (merged) r.push_back(num(o->placeId));
            w.row(r);
        }
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "organisation_isLocatedIn_place_0_0.csv", "Organisation.id|Place.id");
        for (const auto* o : sorted_by_id(g.organisations)) w.row({num(o->id), num(o->placeId)});
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "place_0_0.csv",
                    merged ? "id|name|url|type|isPartOf" : "id|name|url|type");
        for (const auto* p : sorted_by_id(g.places)) {
            std::vector<std::string> r{num(p->id), p->name, p->url, place_kind_name(p->kind)};
            if (merged) r.push_back(p->partOfId == kNoId ? "" : num(p->partOfId));
            w.row(r);
        }
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "place_isPartOf_place_0_0.csv", "Place.id|Place.id");
        for (const auto* p : sorted_by_id(g.places)) {
            if (p->partOfId != kNoId) w.row({num(p->id), num(p->partOfId)});
        }
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "tag_0_0.csv", merged ? "id|name|url|hasType" : "id|name|url");
        for (const auto* t : sorted_by_id(g.tags)) {
            std::vector<std::string> r{num(t->id), t->name, t->url};
            if (merged) r.push_back(num(t->typeTagClassId));
            w.row(r);
        }
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "tag_hasType_tagclass_0_0.csv", "Tag.id|TagClass.id");
        for (const auto* t : sorted_by_id(g.tags)) w.row({num(t->id), num(t->typeTagClassId)});
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "tagclass_0_0.csv",
                    merged ? "id|name|url|isSubclassOf" : "id|name|url");
        for (const auto* t : sorted_by_id(g.tagClasses)) {
            std::vector<std::string> r{num(t->id), t->name, t->url};
            if (merged) r.push_back(t->parentId == kNoId ? "" : num(t->parentId));
            w.row(r);
        }
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "tagclass_isSubclassOf_tagclass_0_0.csv", "TagClass.id|TagClass.id");
        for (const auto* t : sorted_by_id(g.tagClasses)) {
            if (t->parentId != kNoId) w.row({num(t->id), num(t->parentId)});
        }
        man.push_back(w.finish());
    }
}

struct SortedEdges {
    std::vector<std::pair<Id, Id>> interests;      // person, tag
    std::vector<const StudyAtEdge*> study;
    std::vector<const WorkAtEdge*> work;
    std::vector<const KnowsEdge*> knows;           // person1 < person2 only
    std::vector<const LikeEdge*> likesPost;
    std::vector<const LikeEdge*> likesComment;
    std::vector<std::pair<Id, Id>> postTags;       // message, tag
    std::vector<std::pair<Id, Id>> commentTags;
};

SortedEdges collect_edges(const GraphSnapshot& g) {
    SortedEdges e;
    for (const auto& x : g.hasInterest) e.interests.push_back({x.personId, x.tagId});
    std::sort(e.interests.begin(), e.interests.end());
    for (const auto& x : g.studyAt) e.study.push_back(&x);
    std::sort(e.study.begin(), e.study.end(), [](const StudyAtEdge* a, const StudyAtEdge* b) {
        return std::tie(a->personId, a->universityId) < std::tie(b->personId, b->universityId);
    });
    for (const auto& x : g.workAt) e.work.push_back(&x);
    std::sort(e.work.begin(), e.work.end(), [](const WorkAtEdge* a, const WorkAtEdge* b) {
        return std::tie(a->personId, a->companyId) < std::tie(b->personId, b->companyId);
    });
    for (const auto& x : g.knows) {
        if (x.person1 < x.person2) e.knows.push_back(&x);
    }
    std::sort(e.knows.begin(), e.knows.end(), [](const KnowsEdge* a, const KnowsEdge* b) {
        return std::tie(a->person1, a->person2) < std::tie(b->person1, b->person2);
    });
    for (const auto& x : g.likes) {
        (g.message(x.messageId).is_post() ? e.likesPost : e.likesComment).push_back(&x);
    }
    auto likeLess = [](const LikeEdge* a, const LikeEdge* b) {
        return std::tie(a->personId, a->messageId) < std::tie(b->personId, b->messageId);
    };
    std::sort(e.likesPost.begin(), e.likesPost.end(), likeLess);
    std::sort(e.likesComment.begin(), e.likesComment.end(), likeLess);
    for (const auto& x : g.messageTags) {
        (g.message(x.messageId).is_post() ? e.postTags : e.commentTags)
            .push_back({x.messageId, x.tagId});
    }
    std::sort(e.postTags.begin(), e.postTags.end());
    std::sort(e.commentTags.begin(), e.commentTags.end());
    return e;
}

void write_dynamic(const GraphSnapshot& g, const fs::path& root, CsvVariant variant,
                   Manifest& man) {
    const bool merged = variant == CsvVariant::CsvMergeForeign ||
                        variant == CsvVariant::CsvCompositeMergeForeign;
    const bool composite = variant == CsvVariant::CsvComposite ||
                           variant == CsvVariant::CsvCompositeMergeForeign;
    const std::string d = "social_network/dynamic/";
    const SortedEdges e = collect_edges(g);

    std::vector<const Message*> posts;
    std::vector<const Message*> comments;
    for (const Message& m : g.messages) (m.is_post() ? posts : comments).push_back(&m);
    auto byId = [](const Message* a, const Message* b) { return a->id < b->id; };
    std::sort(posts.begin(), posts.end(), byId);
    std::sort(comments.begin(), comments.end(), byId);

    // comment files
    {
        std::string header = "id|creationDate|locationIP|browserUsed|content|length";
        if (merged) header += "|creator|place|replyOfPost|replyOfComment";
        CsvWriter w(root, d + "comment_0_0.csv", header);
        for (const Message* c : comments) {
            std::vector<std::string> r{num(c->id),       format_datetime(c->creationDate),
                                       c->locationIP,    c->browserUsed,
                                       c->content,       num(c->length)};
            if (merged) {
                const bool parentIsPost = g.message(c->replyOfMessageId).is_post();
                r.push_back(num(c->creatorPersonId));
                r.push_back(num(c->countryId));
                r.push_back(parentIsPost ? num(c->replyOfMessageId) : "-1");
                r.push_back(parentIsPost ? "-1" : num(c->replyOfMessageId));
            }
            w.row(r);
        }
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "comment_hasTag_tag_0_0.csv", "Comment.id|Tag.id");
        for (const auto& [m, t] : e.commentTags) w.row({num(m), num(t)});
        man.push_back(w.finish());
    }
    if (!merged) {
        {
            CsvWriter w(root, d + "comment_hasCreator_person_0_0.csv", "Comment.id|Person.id");
            for (const Message* c : comments) w.row({num(c->id), num(c->creatorPersonId)});
            man.push_back(w.finish());
        }
        {
            CsvWriter w(root, d + "comment_isLocatedIn_place_0_0.csv", "Comment.id|Place.id");
            for (const Message* c : comments) w.row({num(c->id), num(c->countryId)});
            man.push_back(w.finish());
        }
        {
            CsvWriter w(root, d + "comment_replyOf_comment_0_0.csv", "Comment.id|Comment.id");
            for (const Message* c : comments) {
                if (!g.message(c->replyOfMessageId).is_post()) {
                    w.row({num(c->id), num(c->replyOfMessageId)});
                }
            }
            man.push_back(w.finish());
        }
        {
            CsvWriter w(root, d + "comment_replyOf_post_0_0.csv", "Comment.id|Post.id");
            for (const Message* c : comments) {
                if (g.message(c->replyOfMessageId).is_post()) {
                    w.row({num(c->id), num(c->replyOfMessageId)});
                }
            }
            man.push_back(w.finish());
        }
    }

    // forum files
    {
        std::string header = "id|title|creationDate";
        if (merged) header += "|moderator";
        CsvWriter w(root, d + "forum_0_0.csv", header);
        for (const Forum* f : sorted_by_id(g.forums)) {
            std::vector<std::string> r{num(f->id), f->title, format_datetime(f->creationDate)};
            if (merged) r.push_back(num(f->moderatorPersonId));
            w.row(r);
        }
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "forum_containerOf_post_0_0.csv", "Forum.id|Post.id");
        std::vector<std::pair<Id, Id>> rows;
        for (const Message* p : posts) rows.push_back({p->forumId, p->id});
        std::sort(rows.begin(), rows.end());
        for (const auto& [f, p] : rows) w.row({num(f), num(p)});
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "forum_hasMember_person_0_0.csv", "Forum.id|Person.id|joinDate");
        for (const Forum* f : sorted_by_id(g.forums)) {
            auto members = f->members;
            std::sort(members.begin(), members.end(),
                      [](const ForumMember& a, const ForumMember& b) {
                          return a.personId < b.personId;
                      });
            for (const ForumMember& m : members) {
                w.row({num(f->id), num(m.personId), format_datetime(m.joinDate)});
            }
        }
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "forum_hasModerator_person_0_0.csv", "Forum.id|Person.id");
        for (const Forum* f : sorted_by_id(g.forums)) w.row({num(f->id), num(f->moderatorPersonId)});
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "forum_hasTag_tag_0_0.csv", "Forum.id|Tag.id");
        for (const Forum* f : sorted_by_id(g.forums)) {
            auto tags = f->tagIds;
            std::sort(tags.begin(), tags.end());
            for (Id t : tags) w.row({num(f->id), num(t)});
        }
        man.push_back(w.finish());
    }

    // person files
    {
        std::string header = "id|firstName|lastName|gender|birthday|creationDate|locationIP|browserUsed";
        if (merged) header += "|place";
        if (composite) header += "|language|emails";
        CsvWriter w(root, d + "person_0_0.csv", header);
        for (const Person* p : sorted_by_id(g.persons)) {
            std::vector<std::string> r{num(p->id),
                                       p->firstName,
                                       p->lastName,
                                       p->gender,
                                       format_date(p->birthday),
                                       format_datetime(p->creationDate),
                                       p->locationIP,
                                       p->browserUsed};
            if (merged) r.push_back(num(p->cityId));
            if (composite) {
                auto speaks = p->speaks;
                auto emails = p->emails;
                std::sort(speaks.begin(), speaks.end());
                std::sort(emails.begin(), emails.end());
                r.push_back(join_semi(speaks));
                r.push_back(join_semi(emails));
            }
            w.row(r);
        }
        man.push_back(w.finish());
    }
    if (!composite) {
        {
            CsvWriter w(root, d + "person_email_emailaddress_0_0.csv", "Person.id|email");
            for (const Person* p : sorted_by_id(g.persons)) {
                auto emails = p->emails;
                std::sort(emails.begin(), emails.end());
                for (const auto& em : emails) w.row({num(p->id), em});
            }
            man.push_back(w.finish());
        }
        {
            CsvWriter w(root, d + "person_speaks_language_0_0.csv", "Person.id|language");
            for (const Person* p : sorted_by_id(g.persons)) {
                auto speaks = p->speaks;
                std::sort(speaks.begin(), speaks.end());
                for (const auto& l : speaks) w.row({num(p->id), l});
            }
            man.push_back(w.finish());
        }
    }
    {
        CsvWriter w(root, d + "person_hasInterest_tag_0_0.csv", "Person.id|Tag.id");
        for (const auto& [p, t] : e.interests) w.row({num(p), num(t)});
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "person_isLocatedIn_place_0_0.csv", "Person.id|Place.id");
        for (const Person* p : sorted_by_id(g.persons)) w.row({num(p->id), num(p->cityId)});
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "person_knows_person_0_0.csv", "Person.id|Person.id|creationDate");
        for (const KnowsEdge* k : e.knows) {
            w.row({num(k->person1), num(k->person2), format_datetime(k->creationDate)});
        }
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "person_likes_comment_0_0.csv", "Person.id|Comment.id|creationDate");
        for (const LikeEdge* l : e.likesComment) {
            w.row({num(l->personId), num(l->messageId), format_datetime(l->creationDate)});
        }
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "person_likes_post_0_0.csv", "Person.id|Post.id|creationDate");
        for (const LikeEdge* l : e.likesPost) {
            w.row({num(l->personId), num(l->messageId), format_datetime(l->creationDate)});
        }
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "person_studyAt_organisation_0_0.csv",
                    "Person.id|Organisation.id|classYear");
        for (const StudyAtEdge* s : e.study) {
            w.row({num(s->personId), num(s->universityId), num(s->classYear)});
        }
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "person_workAt_organisation_0_0.csv",
                    "Person.id|Organisation.id|workFrom");
        for (const WorkAtEdge* x : e.work) {
            w.row({num(x->personId), num(x->companyId), num(x->workFrom)});
        }
        man.push_back(w.finish());
    }

    // post files
    {
        std::string header = "id|imageFile|creationDate|locationIP|browserUsed|language|content|length";
        if (merged) header += "|creator|Forum.id|place";
        CsvWriter w(root, d + "post_0_0.csv", header);
        for (const Message* p : posts) {
            std::vector<std::string> r{num(p->id),    p->imageFile, format_datetime(p->creationDate),
                                       p->locationIP, p->browserUsed, p->language,
                                       p->content,    num(p->length)};
            if (merged) {
                r.push_back(num(p->creatorPersonId));
                r.push_back(num(p->forumId));
                r.push_back(num(p->countryId));
            }
            w.row(r);
        }
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "post_hasCreator_person_0_0.csv", "Post.id|Person.id");
        for (const Message* p : posts) w.row({num(p->id), num(p->creatorPersonId)});
        man.push_back(w.finish());
    }
    {
        CsvWriter w(root, d + "post_hasTag_tag_0_0.csv", "Post.id|Tag.id");
        for (const auto& [m, t] : e.postTags) w.row({num(m), num(t)});
        man.push_back(w.finish());
    }
    if (!merged) {
        CsvWriter w(root, d + "post_isLocatedIn_place_0_0.csv", "Post.id|Place.id");
        for (const Message* p : posts) w.row({num(p->id), num(p->countryId)});
        man.push_back(w.finish());
    }
}

// ---------------------------------------------------------------------------
// Loader
// ---------------------------------------------------------------------------

struct CsvFile {
    std::string name;                            // file name, for errors
    std::vector<std::vector<std::string>> rows;  // data rows, header checked
};

Id to_id(const std::string& s, const std::string& file, std::size_t line) {
    Id v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError(file, line, "expected id, got '" + s + "'");
    }
    return v;
}

std::int64_t to_i64(const std::string& s, const std::string& file, std::size_t line) {
    std::int64_t v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError(file, line, "expected integer, got '" + s + "'");
    }
    return v;
}

std::int32_t to_i32(const std::string& s, const std::string& file, std::size_t line) {
    return static_cast<std::int32_t>(to_i64(s, file, line));
}

DateTime to_dt(const std::string& s, const std::string& file, std::size_t line) {
    try {
        return parse_datetime(s);
    } catch (const SnbError& ex) {
        throw ParseError(file, line, ex.what());
    }
}

Date to_date(const std::string& s, const std::string& file, std::size_t line) {
    try {
        return parse_date(s);
    } catch (const SnbError& ex) {
        throw ParseError(file, line, ex.what());
    }
}

// Reads every part of one logical file (base_<p>_<q>.csv) under dir,
// concatenated in lexicographic part order.
CsvFile read_logical(const fs::path& dir, const std::string& base,
                     const std::string& expectedHeader) {
    const std::regex partRe("^" + base + R"(_\d+_\d+\.csv$)");
    std::vector<fs::path> parts;
    if (fs::exists(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            if (std::regex_match(name, partRe)) parts.push_back(entry.path());
        }
    }
    std::sort(parts.begin(), parts.end());
    if (parts.empty()) throw IoError("missing file " + (dir / (base + "_0_0.csv")).string());

    const std::size_t nCols = split(expectedHeader, '|').size();
    CsvFile out;
    out.name = base;
    for (const fs::path& part : parts) {
        std::ifstream in(part, std::ios::binary);
        if (!in) throw IoError("cannot open " + part.string());
        std::string line;
        std::size_t lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (lineNo == 1) {
                if (line != expectedHeader) {
                    throw ParseError(part.filename().string(), 1,
                                     "unexpected header '" + line + "', expected '" +
                                         expectedHeader + "'");
                }
                continue;
            }
            if (line.empty()) continue;
            auto fields = split(line, '|');
            if (fields.size() != nCols) {
                throw ParseError(part.filename().string(), lineNo,
                                 "expected " + std::to_string(nCols) + " columns, got " +
                                     std::to_string(fields.size()));
            }
            out.rows.push_back(std::move(fields));
        }
    }
    return out;
}

}  // namespace

std::string to_string(CsvVariant v) {
    switch (v) {
        case CsvVariant::CsvBasic: return "CsvBasic";
        case CsvVariant::CsvMergeForeign: return "CsvMergeForeign";
        case CsvVariant::CsvComposite: return "CsvComposite";
        case CsvVariant::CsvCompositeMergeForeign: return "CsvCompositeMergeForeign";
    }
    throw ConfigError("bad CsvVariant");
}

CsvVariant parse_csv_variant(const std::string& name) {
    if (name == "CsvBasic") return CsvVariant::CsvBasic;
    if (name == "CsvMergeForeign") return CsvVariant::CsvMergeForeign;
    if (name == "CsvComposite") return CsvVariant::CsvComposite;
    if (name == "CsvCompositeMergeForeign") return CsvVariant::CsvCompositeMergeForeign;
    throw ConfigError("unknown format '" + name +
                      "' (expected CsvBasic, CsvMergeForeign, CsvComposite or "
                      "CsvCompositeMergeForeign)");
}

Manifest write_dataset(const GraphSnapshot& g, CsvVariant variant, const fs::path& dir) {
    const bool merged = variant == CsvVariant::CsvMergeForeign ||
                        variant == CsvVariant::CsvCompositeMergeForeign;
    Manifest man;
    write_static(g, dir, merged, man);
    write_dynamic(g, dir, variant, man);
    return man;
}

// ---------------------------------------------------------------------------
// Update streams
// ---------------------------------------------------------------------------

namespace {

std::string study_list(const std::vector<StudyAtEdge>& v) {
    std::vector<std::string> parts;
    for (const auto& s : v) parts.push_back(num(s.universityId) + "," + num(s.classYear));
    return join_semi(parts);
}

std::string work_list(const std::vector<WorkAtEdge>& v) {
    std::vector<std::string> parts;
    for (const auto& s : v) parts.push_back(num(s.companyId) + "," + num(s.workFrom));
    return join_semi(parts);
}

std::string id_list(const std::vector<Id>& v) {
    std::vector<std::string> parts;
    for (Id x : v) parts.push_back(num(x));
    return join_semi(parts);
}

std::vector<std::string> event_fields(const UpdateEvent& e) {
    std::vector<std::string> f{num(e.t), num(e.td), std::to_string(e.opId)};
    switch (e.opId) {
        case 1: {
            const auto& pl = std::get<InsertPersonPayload>(e.payload);
            const Person& p = pl.person;
            f.insert(f.end(), {num(p.id), p.firstName, p.lastName, p.gender,
                               format_date(p.birthday), num(p.creationDate.ms), p.locationIP,
                               p.browserUsed, num(p.cityId), join_semi(p.speaks),
                               join_semi(p.emails), id_list(pl.interestTagIds),
                               study_list(pl.study), work_list(pl.work)});
            break;
        }
        case 2:
        case 3: {
            const auto& pl = std::get<InsertLikePayload>(e.payload);
            f.insert(f.end(), {num(pl.personId), num(pl.messageId), num(pl.creationDate.ms)});
            break;
        }
        case 4: {
            const auto& pl = std::get<InsertForumPayload>(e.payload);
            auto tags = pl.forum.tagIds;
            std::sort(tags.begin(), tags.end());
            f.insert(f.end(), {num(pl.forum.id), pl.forum.title, num(pl.forum.creationDate.ms),
                               num(pl.forum.moderatorPersonId), id_list(tags)});
            break;
        }
        case 5: {
            const auto& pl = std::get<InsertMembershipPayload>(e.payload);
            f.insert(f.end(), {num(pl.personId), num(pl.forumId), num(pl.joinDate.ms)});
            break;
        }
        case 6: {
            const auto& pl = std::get<InsertPostPayload>(e.payload);
            const Message& m = pl.post;
            f.insert(f.end(),
                     {num(m.id), m.imageFile, num(m.creationDate.ms), m.locationIP, m.browserUsed,
                      m.language, m.content, num(m.length), num(m.creatorPersonId), num(m.forumId),
                      num(m.countryId), id_list(pl.tagIds)});
            break;
        }
        case 7: {
            const auto& pl = std::get<InsertCommentPayload>(e.payload);
            const Message& m = pl.comment;
            f.insert(f.end(), {num(m.id), num(m.creationDate.ms), m.locationIP, m.browserUsed,
                               m.content, num(m.length), num(m.creatorPersonId), num(m.countryId)});
            // replyToPostId / replyToCommentId: -1 marks the unused slot.
            f.push_back(pl.parentIsPost ? num(m.replyOfMessageId) : "-1");
            f.push_back(pl.parentIsPost ? "-1" : num(m.replyOfMessageId));
            f.push_back(id_list(pl.tagIds));
            break;
        }
        case 8: {
            const auto& pl = std::get<InsertKnowsPayload>(e.payload);
            f.insert(f.end(), {num(pl.person1), num(pl.person2), num(pl.creationDate.ms)});
            break;
        }
        default:
            throw SnbError("unknown update operation " + std::to_string(e.opId));
    }
    return f;
}

}  // namespace

Manifest write_update_streams(const std::vector<UpdateEvent>& events, const fs::path& dir) {
    const fs::path root = dir / "social_network";
    fs::create_directories(root);
    std::ofstream person(root / "updateStream_0_0_person.csv", std::ios::binary | std::ios::trunc);
    std::ofstream forum(root / "updateStream_0_0_forum.csv", std::ios::binary | std::ios::trunc);
    if (!person || !forum) throw IoError("cannot open update stream files in " + root.string());

    std::size_t personRows = 0;
    std::size_t forumRows = 0;
    std::int64_t tMin = 0;
    std::int64_t tMax = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const UpdateEvent& e = events[i];
        if (i == 0) {
            tMin = tMax = e.t;
        } else {
            tMin = std::min(tMin, e.t);
            tMax = std::max(tMax, e.t);
        }
        const auto fields = event_fields(e);
        std::ofstream& out = e.opId == 1 ? person : forum;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k > 0) out.put('|');
            out << fields[k];
        }
        out.put('\n');
        ++(e.opId == 1 ? personRows : forumRows);
    }
    person.flush();
    forum.flush();
    if (!person || !forum) throw IoError("write failed for update streams");

    std::ofstream props(root / "updateStream.properties", std::ios::binary | std::ios::trunc);
    if (!props) throw IoError("cannot open updateStream.properties");
    const double interleave =
        events.empty() ? 0.0
                       : static_cast<double>(tMax - tMin) / static_cast<double>(events.size());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", interleave);
    props << "update_interleave=" << buf << '\n';
    props << "num_events=" << events.size() << '\n';
    props << "start_time=" << (events.empty() ? 0 : tMin) << '\n';
    props << "end_time=" << (events.empty() ? 0 : tMax) << '\n';
    props.flush();
    if (!props) throw IoError("write failed for updateStream.properties");

    return {{"social_network/updateStream_0_0_person.csv", personRows},
            {"social_network/updateStream_0_0_forum.csv", forumRows},
            {"social_network/updateStream.properties", 4}};
}

UpdateStreamProperties read_update_stream_properties(const fs::path& dir) {
    const fs::path file = dir / "social_network" / "updateStream.properties";
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file.string());
    UpdateStreamProperties out;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(file.filename().string(), lineNo, "expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "update_interleave") {
            out.updateInterleave = std::strtod(val.c_str(), nullptr);
        } else if (key == "num_events") {
            out.numEvents = static_cast<std::size_t>(to_i64(val, file.filename().string(), lineNo));
        } else if (key == "start_time") {
            out.startTime = to_i64(val, file.filename().string(), lineNo);
        } else if (key == "end_time") {
            out.endTime = to_i64(val, file.filename().string(), lineNo);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// load_dataset
// ---------------------------------------------------------------------------

GraphSnapshot load_dataset(const fs::path& dir, CsvVariant variant) {
    const bool merged = variant == CsvVariant::CsvMergeForeign ||
                        variant == CsvVariant::CsvCompositeMergeForeign;
    const bool composite = variant == CsvVariant::CsvComposite ||
                           variant == CsvVariant::CsvCompositeMergeForeign;
    const fs::path st = dir / "social_network" / "static";
    const fs::path dyn = dir / "social_network" / "dynamic";

    GraphSnapshot g;

    {
        auto f = read_logical(st, "place",
                              merged ? "id|name|url|type|isPartOf" : "id|name|url|type");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            Place p;
            p.id = to_id(r[0], f.name, line);
            p.name = r[1];
            p.url = r[2];
            p.kind = parse_place_kind(r[3], f.name, line);
            if (merged) p.partOfId = r[4].empty() ? kNoId : to_id(r[4], f.name, line);
            g.places.push_back(std::move(p));
        }
    }
    if (!merged) {
        auto f = read_logical(st, "place_isPartOf_place", "Place.id|Place.id");
        std::map<Id, Id> parent;
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            parent[to_id(r[0], f.name, line)] = to_id(r[1], f.name, line);
        }
        for (Place& p : g.places) {
            auto it = parent.find(p.id);
            if (it != parent.end()) p.partOfId = it->second;
        }
    }
    {
        auto f = read_logical(st, "organisation",
                              merged ? "id|type|name|url|place" : "id|type|name|url");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            Organisation o;
            o.id = to_id(r[0], f.name, line);
            if (r[1] == "university") {
                o.kind = OrgKind::University;
            } else if (r[1] == "company") {
                o.kind = OrgKind::Company;
            } else {
                throw ParseError(f.name, line, "unknown organisation type '" + r[1] + "'");
            }
            o.name = r[2];
            o.url = r[3];
            if (merged) o.placeId = to_id(r[4], f.name, line);
            g.organisations.push_back(std::move(o));
        }
    }
    if (!merged) {
        auto f = read_logical(st, "organisation_isLocatedIn_place", "Organisation.id|Place.id");
        std::map<Id, Id> loc;
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            loc[to_id(r[0], f.name, line)] = to_id(r[1], f.name, line);
        }
        for (Organisation& o : g.organisations) o.placeId = loc.at(o.id);
    }
    {
        auto f = read_logical(st, "tagclass",
                              merged ? "id|name|url|isSubclassOf" : "id|name|url");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            TagClass tc;
            tc.id = to_id(r[0], f.name, line);
            tc.name = r[1];
            tc.url = r[2];
            if (merged) tc.parentId = r[3].empty() ? kNoId : to_id(r[3], f.name, line);
            g.tagClasses.push_back(std::move(tc));
        }
    }
    if (!merged) {
        auto f = read_logical(st, "tagclass_isSubclassOf_tagclass", "TagClass.id|TagClass.id");
        std::map<Id, Id> parent;
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            parent[to_id(r[0], f.name, line)] = to_id(r[1], f.name, line);
        }
        for (TagClass& tc : g.tagClasses) {
            auto it = parent.find(tc.id);
            if (it != parent.end()) tc.parentId = it->second;
        }
    }
    {
        auto f = read_logical(st, "tag", merged ? "id|name|url|hasType" : "id|name|url");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            Tag t;
            t.id = to_id(r[0], f.name, line);
            t.name = r[1];
            t.url = r[2];
            if (merged) t.typeTagClassId = to_id(r[3], f.name, line);
            g.tags.push_back(std::move(t));
        }
    }
    if (!merged) {
        auto f = read_logical(st, "tag_hasType_tagclass", "Tag.id|TagClass.id");
        std::map<Id, Id> type;
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            type[to_id(r[0], f.name, line)] = to_id(r[1], f.name, line);
        }
        for (Tag& t : g.tags) t.typeTagClassId = type.at(t.id);
    }

    // persons
    {
        std::string header = "id|firstName|lastName|gender|birthday|creationDate|locationIP|browserUsed";
        if (merged) header += "|place";
        if (composite) header += "|language|emails";
        auto f = read_logical(dyn, "person", header);
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            Person p;
            p.id = to_id(r[0], f.name, line);
            p.firstName = r[1];
            p.lastName = r[2];
            p.gender = r[3];
            p.birthday = to_date(r[4], f.name, line);
            p.creationDate = to_dt(r[5], f.name, line);
            p.locationIP = r[6];
            p.browserUsed = r[7];
            std::size_t col = 8;
            if (merged) p.cityId = to_id(r[col++], f.name, line);
            if (composite) {
                p.speaks = split_semi(r[col++]);
                p.emails = split_semi(r[col++]);
            }
            g.persons.push_back(std::move(p));
        }
    }
    if (!merged) {
        auto f = read_logical(dyn, "person_isLocatedIn_place", "Person.id|Place.id");
        std::map<Id, Id> city;
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            city[to_id(r[0], f.name, line)] = to_id(r[1], f.name, line);
        }
        for (Person& p : g.persons) p.cityId = city.at(p.id);
    }
    if (!composite) {
        std::map<Id, std::size_t> personIndex;
        for (std::size_t i = 0; i < g.persons.size(); ++i) personIndex[g.persons[i].id] = i;
        {
            auto f = read_logical(dyn, "person_email_emailaddress", "Person.id|email");
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.persons[personIndex.at(to_id(r[0], f.name, line))].emails.push_back(r[1]);
            }
        }
        {
            auto f = read_logical(dyn, "person_speaks_language", "Person.id|language");
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.persons[personIndex.at(to_id(r[0], f.name, line))].speaks.push_back(r[1]);
            }
        }
    }

    // forums
    {
        std::string header = "id|title|creationDate";
        if (merged) header += "|moderator";
        auto f = read_logical(dyn, "forum", header);
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            Forum fo;
            fo.id = to_id(r[0], f.name, line);
            fo.title = r[1];
            fo.creationDate = to_dt(r[2], f.name, line);
            if (merged) fo.moderatorPersonId = to_id(r[3], f.name, line);
            g.forums.push_back(std::move(fo));
        }
    }
    std::map<Id, std::size_t> forumIndex;
    for (std::size_t i = 0; i < g.forums.size(); ++i) forumIndex[g.forums[i].id] = i;
    if (!merged) {
        auto f = read_logical(dyn, "forum_hasModerator_person", "Forum.id|Person.id");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.forums[forumIndex.at(to_id(r[0], f.name, line))].moderatorPersonId =
                to_id(r[1], f.name, line);
        }
    }
    {
        auto f = read_logical(dyn, "forum_hasMember_person", "Forum.id|Person.id|joinDate");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.forums[forumIndex.at(to_id(r[0], f.name, line))].members.push_back(
                {to_id(r[1], f.name, line), to_dt(r[2], f.name, line)});
        }
    }
    {
        auto f = read_logical(dyn, "forum_hasTag_tag", "Forum.id|Tag.id");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.forums[forumIndex.at(to_id(r[0], f.name, line))].tagIds.push_back(
                to_id(r[1], f.name, line));
        }
    }

    // posts
    {
        std::string header = "id|imageFile|creationDate|locationIP|browserUsed|language|content|length";
        if (merged) header += "|creator|Forum.id|place";
        auto f = read_logical(dyn, "post", header);
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            Message m;
            m.kind = MessageKind::Post;
            m.id = to_id(r[0], f.name, line);
            m.imageFile = r[1];
            m.creationDate = to_dt(r[2], f.name, line);
            m.locationIP = r[3];
            m.browserUsed = r[4];
            m.language = r[5];
            m.content = r[6];
            m.length = to_i32(r[7], f.name, line);
            if (merged) {
                m.creatorPersonId = to_id(r[8], f.name, line);
                m.forumId = to_id(r[9], f.name, line);
                m.countryId = to_id(r[10], f.name, line);
            }
            g.messages.push_back(std::move(m));
        }
    }
    std::map<Id, std::size_t> messageIndex;
    for (std::size_t i = 0; i < g.messages.size(); ++i) messageIndex[g.messages[i].id] = i;
    if (!merged) {
        {
            auto f = read_logical(dyn, "post_hasCreator_person", "Post.id|Person.id");
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.messages[messageIndex.at(to_id(r[0], f.name, line))].creatorPersonId =
                    to_id(r[1], f.name, line);
            }
        }
        {
            auto f = read_logical(dyn, "post_isLocatedIn_place", "Post.id|Place.id");
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.messages[messageIndex.at(to_id(r[0], f.name, line))].countryId =
                    to_id(r[1], f.name, line);
            }
        }
        {
            auto f = read_logical(dyn, "forum_containerOf_post", "Forum.id|Post.id");
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.messages[messageIndex.at(to_id(r[1], f.name, line))].forumId =
                    to_id(r[0], f.name, line);
            }
        }
    }

    // comments
    {
        std::string header = "id|creationDate|locationIP|browserUsed|content|length";
        if (merged) header += "|creator|place|replyOfPost|replyOfComment";
        auto f = read_logical(dyn, "comment", header);
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            Message m;
            m.kind = MessageKind::Comment;
            m.id = to_id(r[0], f.name, line);
            m.creationDate = to_dt(r[1], f.name, line);
            m.locationIP = r[2];
            m.browserUsed = r[3];
            m.content = r[4];
            m.length = to_i32(r[5], f.name, line);
            if (merged) {
                m.creatorPersonId = to_id(r[6], f.name, line);
                m.countryId = to_id(r[7], f.name, line);
                const std::int64_t post = to_i64(r[8], f.name, line);
                const std::int64_t comment = to_i64(r[9], f.name, line);
                if ((post < 0) == (comment < 0)) {
                    throw ParseError(f.name, line,
                                     "exactly one of replyOfPost/replyOfComment must be set");
                }
                m.replyOfMessageId = static_cast<Id>(post >= 0 ? post : comment);
            }
            messageIndex[m.id] = g.messages.size();
            g.messages.push_back(std::move(m));
        }
    }
    if (!merged) {
        {
            auto f = read_logical(dyn, "comment_hasCreator_person", "Comment.id|Person.id");
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.messages[messageIndex.at(to_id(r[0], f.name, line))].creatorPersonId =
                    to_id(r[1], f.name, line);
            }
        }
        {
            auto f = read_logical(dyn, "comment_isLocatedIn_place", "Comment.id|Place.id");
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.messages[messageIndex.at(to_id(r[0], f.name, line))].countryId =
                    to_id(r[1], f.name, line);
            }
        }
        for (const char* file : {"comment_replyOf_post", "comment_replyOf_comment"}) {
            auto f = read_logical(dyn, file,
                                  std::string("Comment.id|") +
                                      (std::string(file) == "comment_replyOf_post" ? "Post.id"
                                                                                   : "Comment.id"));
            std::size_t line = 1;
            for (const auto& r : f.rows) {
                ++line;
                g.messages[messageIndex.at(to_id(r[0], f.name, line))].replyOfMessageId =
                    to_id(r[1], f.name, line);
            }
        }
    }

    // plain edge files common to all variants
    {
        auto f = read_logical(dyn, "person_hasInterest_tag", "Person.id|Tag.id");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.hasInterest.push_back({to_id(r[0], f.name, line), to_id(r[1], f.name, line)});
        }
    }
    {
        auto f = read_logical(dyn, "person_knows_person", "Person.id|Person.id|creationDate");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            const Id a = to_id(r[0], f.name, line);
            const Id b = to_id(r[1], f.name, line);
            const DateTime t = to_dt(r[2], f.name, line);
            g.knows.push_back({a, b, t, 0});
            g.knows.push_back({b, a, t, 0});
        }
    }
    {
        auto f = read_logical(dyn, "person_likes_post", "Person.id|Post.id|creationDate");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.likes.push_back(
                {to_id(r[0], f.name, line), to_id(r[1], f.name, line), to_dt(r[2], f.name, line)});
        }
    }
    {
        auto f = read_logical(dyn, "person_likes_comment", "Person.id|Comment.id|creationDate");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.likes.push_back(
                {to_id(r[0], f.name, line), to_id(r[1], f.name, line), to_dt(r[2], f.name, line)});
        }
    }
    {
        auto f = read_logical(dyn, "person_studyAt_organisation",
                              "Person.id|Organisation.id|classYear");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.studyAt.push_back({to_id(r[0], f.name, line), to_id(r[1], f.name, line),
                                 to_i32(r[2], f.name, line)});
        }
    }
    {
        auto f = read_logical(dyn, "person_workAt_organisation",
                              "Person.id|Organisation.id|workFrom");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.workAt.push_back({to_id(r[0], f.name, line), to_id(r[1], f.name, line),
                                to_i32(r[2], f.name, line)});
        }
    }
    {
        auto f = read_logical(dyn, "post_hasTag_tag", "Post.id|Tag.id");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.messageTags.push_back({to_id(r[0], f.name, line), to_id(r[1], f.name, line)});
        }
    }
    {
        auto f = read_logical(dyn, "comment_hasTag_tag", "Comment.id|Tag.id");
        std::size_t line = 1;
        for (const auto& r : f.rows) {
            ++line;
            g.messageTags.push_back({to_id(r[0], f.name, line), to_id(r[1], f.name, line)});
        }
    }

    // The simulation window is not part of the files; derive it from the data
    // so downstream consumers (age groups, schedules) have a usable range.
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const Person& p : g.persons) {
        lo = std::min(lo, p.creationDate.ms);
        hi = std::max(hi, p.creationDate.ms);
    }
    for (const Message& m : g.messages) hi = std::max(hi, m.creationDate.ms);
    for (const LikeEdge& l : g.likes) hi = std::max(hi, l.creationDate.ms);
    if (lo <= hi) {
        g.simulationStartMs = days_from_civil(to_date(DateTime{lo}).year, 1, 1) * 86'400'000LL;
        g.simulationEndMs = days_from_civil(to_date(DateTime{hi}).year + 1, 1, 1) * 86'400'000LL;
    }

    g.build_indexes();
    return g;
}

std::vector<UpdateEvent> load_update_streams(const fs::path& dir) {
    const fs::path root = dir / "social_network";
    std::vector<UpdateEvent> out;

    auto parse_file = [&out](const fs::path& file) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw IoError("cannot open " + file.string());
        const std::string name = file.filename().string();
        std::string line;
        std::size_t lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto f = split(line, '|');
            if (f.size() < 3) throw ParseError(name, lineNo, "expected t|t_d|opId|...");
            UpdateEvent e;
            e.t = to_i64(f[0], name, lineNo);
            e.td = to_i64(f[1], name, lineNo);
            e.opId = static_cast<int>(to_i64(f[2], name, lineNo));
            const auto need = [&](std::size_t n) {
                if (f.size() != n + 3) {
                    throw ParseError(name, lineNo,
                                     "operation " + f[2] + " expects " + std::to_string(n) +
                                         " payload fields, got " + std::to_string(f.size() - 3));
                }
            };
            switch (e.opId) {
                case 1: {
                    need(14);
                    InsertPersonPayload pl;
                    Person& p = pl.person;
                    p.id = to_id(f[3], name, lineNo);
                    p.firstName = f[4];
                    p.lastName = f[5];
                    p.gender = f[6];
                    p.birthday = to_date(f[7], name, lineNo);
                    p.creationDate = DateTime{to_i64(f[8], name, lineNo)};
                    p.locationIP = f[9];
                    p.browserUsed = f[10];
                    p.cityId = to_id(f[11], name, lineNo);
                    p.speaks = split_semi(f[12]);
                    p.emails = split_semi(f[13]);
                    for (const auto& s : split_semi(f[14])) pl.interestTagIds.push_back(to_id(s, name, lineNo));
                    for (const auto& s : split_semi(f[15])) {
                        auto parts = split(s, ',');
                        if (parts.size() != 2) throw ParseError(name, lineNo, "bad studyAt entry");
                        pl.study.push_back({p.id, to_id(parts[0], name, lineNo),
                                            to_i32(parts[1], name, lineNo)});
                    }
                    for (const auto& s : split_semi(f[16])) {
                        auto parts = split(s, ',');
                        if (parts.size() != 2) throw ParseError(name, lineNo, "bad workAt entry");
                        pl.work.push_back({p.id, to_id(parts[0], name, lineNo),
                                           to_i32(parts[1], name, lineNo)});
                    }
                    e.payload = std::move(pl);
                    break;
                }
                case 2:
                case 3: {
                    need(3);
                    e.payload = InsertLikePayload{to_id(f[3], name, lineNo),
                                                  to_id(f[4], name, lineNo),
                                                  DateTime{to_i64(f[5], name, lineNo)}};
                    break;
                }
                case 4: {
                    need(5);
                    InsertForumPayload pl;
                    pl.forum.id = to_id(f[3], name, lineNo);
                    pl.forum.title = f[4];
                    pl.forum.creationDate = DateTime{to_i64(f[5], name, lineNo)};
                    pl.forum.moderatorPersonId = to_id(f[6], name, lineNo);
                    for (const auto& s : split_semi(f[7])) pl.forum.tagIds.push_back(to_id(s, name, lineNo));
                    e.payload = std::move(pl);
                    break;
                }
                case 5: {
                    need(3);
                    e.payload = InsertMembershipPayload{to_id(f[4], name, lineNo),
                                                        to_id(f[3], name, lineNo),
                                                        DateTime{to_i64(f[5], name, lineNo)}};
                    break;
                }
                case 6: {
                    need(12);
                    InsertPostPayload pl;
                    Message& m = pl.post;
                    m.kind = MessageKind::Post;
                    m.id = to_id(f[3], name, lineNo);
                    m.imageFile = f[4];
                    m.creationDate = DateTime{to_i64(f[5], name, lineNo)};
                    m.locationIP = f[6];
                    m.browserUsed = f[7];
                    m.language = f[8];
                    m.content = f[9];
                    m.length = to_i32(f[10], name, lineNo);
                    m.creatorPersonId = to_id(f[11], name, lineNo);
                    m.forumId = to_id(f[12], name, lineNo);
                    m.countryId = to_id(f[13], name, lineNo);
                    for (const auto& s : split_semi(f[14])) pl.tagIds.push_back(to_id(s, name, lineNo));
                    e.payload = std::move(pl);
                    break;
                }
                case 7: {
                    need(11);
                    InsertCommentPayload pl;
                    Message& m = pl.comment;
                    m.kind = MessageKind::Comment;
                    m.id = to_id(f[3], name, lineNo);
                    m.creationDate = DateTime{to_i64(f[4], name, lineNo)};
                    m.locationIP = f[5];
                    m.browserUsed = f[6];
                    m.content = f[7];
                    m.length = to_i32(f[8], name, lineNo);
                    m.creatorPersonId = to_id(f[9], name, lineNo);
                    m.countryId = to_id(f[10], name, lineNo);
                    const std::int64_t post = to_i64(f[11], name, lineNo);
                    const std::int64_t comment = to_i64(f[12], name, lineNo);
                    if ((post < 0) == (comment < 0)) {
                        throw ParseError(name, lineNo,
                                         "exactly one of replyToPostId/replyToCommentId");
                    }
                    pl.parentIsPost = post >= 0;
                    m.replyOfMessageId = static_cast<Id>(post >= 0 ? post : comment);
                    for (const auto& s : split_semi(f[13])) pl.tagIds.push_back(to_id(s, name, lineNo));
                    e.payload = std::move(pl);
                    break;
                }
                case 8: {
                    need(3);
                    e.payload = InsertKnowsPayload{to_id(f[3], name, lineNo),
                                                   to_id(f[4], name, lineNo),
                                                   DateTime{to_i64(f[5], name, lineNo)}};
                    break;
                }
                default:
                    throw ParseError(name, lineNo, "unknown operation id " + f[2]);
            }
            out.push_back(std::move(e));
        }
    };

    parse_file(root / "updateStream_0_0_person.csv");
    parse_file(root / "updateStream_0_0_forum.csv");
    std::stable_sort(out.begin(), out.end(),
                     [](const UpdateEvent& a, const UpdateEvent& b) { return a.t < b.t; });
    return out;
}

}  // namespace snb
