#include "vismc/parser.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "vismc/canonical.hpp"
#include "vismc/json_io.hpp"
#include "vismc/text.hpp"

namespace vismc::parse {

namespace {

// ---------------------------------------------------------------------------
// Token stream

struct Tok {
    enum Kind { Word, Comma, Quoted } kind = Word;
    std::string lower;
    std::string original;
};

std::vector<Tok> tokenize(const std::string& raw) {
    std::vector<Tok> toks;
    size_t i = 0;
    auto flush_word = [&](std::string& w) {
        if (!w.empty()) {
            toks.push_back({Tok::Word, text::to_lower(w), w});
            w.clear();
        }
    };
    std::string current;
    while (i < raw.size()) {
        char c = raw[i];
        if (c == '"' || c == '\'') {
            // apostrophes inside words stay ("man's"); quotes open literals
            if (c == '\'' && !current.empty()) {
                current.push_back(c);
                ++i;
                continue;
            }
            flush_word(current);
            char quote = c;
            size_t end = raw.find(quote, i + 1);
            if (end == std::string::npos) throw ParseError("unterminated quote");
            std::string inner = raw.substr(i + 1, end - i - 1);
            toks.push_back({Tok::Quoted, text::to_lower(inner), inner});
            i = end + 1;
        } else if (c == ',' || c == ';') {
            flush_word(current);
            toks.push_back({Tok::Comma, ",", ","});
            ++i;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '-') {
            current.push_back(c);
            ++i;
        } else {
            flush_word(current);
            ++i;
        }
    }
    flush_word(current);
    return toks;
}

// ---------------------------------------------------------------------------
// Word classes

bool is_article(const std::string& w) {
    return w == "a" || w == "an" || w == "the";
}

bool is_relativizer(const std::string& w) {
    return w == "that" || w == "which" || w == "who";
}

bool is_negation(const std::string& w) {
    static const std::unordered_set<std::string> neg = {"no", "not", "without", "never", "none"};
    return neg.count(w) > 0;
}

bool is_copula(const std::string& w) {
    return w == "is" || w == "are" || w == "was" || w == "were";
}

bool is_reading_verb(const std::string& w) {
    static const std::unordered_set<std::string> rv = {
        "read", "reads", "reading", "say", "says", "saying",
        "labeled", "labelled", "display", "displays", "displaying"};
    return rv.count(w) > 0;
}

bool is_particle(const std::string& w) {
    static const std::unordered_set<std::string> p = {"around", "up", "down", "out", "away", "along"};
    return p.count(w) > 0;
}

// -ing nouns that must not terminate a noun phrase
bool is_ing_noun(const std::string& w) {
    static const std::unordered_set<std::string> nouns = {
        "building", "painting", "ceiling",  "railing", "awning",
        "clothing", "lighting", "crossing", "landing", "drawing",
        "wedding",  "ring",     "king",     "thing",   "swing"};
    return nouns.count(w) > 0;
}

bool is_plain_verb(const std::string& w) {
    static const std::unordered_set<std::string> verbs = {
        "sit",   "sits",   "stand", "stands", "walk",  "walks",  "run",   "runs",
        "eat",   "eats",   "drink", "drinks", "ride",  "rides",  "hold",  "holds",
        "wear",  "wears",  "has",   "have",   "contain", "contains", "play", "plays",
        "feed",  "feeds",  "make",  "makes",  "jump",  "jumps",  "fly",   "flies",
        "sleep", "sleeps", "hang",  "hangs",  "lean",  "leans",  "pose",  "poses",
        "cut",   "cuts",   "graze", "grazes", "look",  "looks",  "watch", "watches"};
    return verbs.count(w) > 0;
}

bool is_verb_token(const std::string& w) {
    if (is_copula(w) || is_reading_verb(w) || is_plain_verb(w)) return true;
    if (w.size() > 4 && w.substr(w.size() - 3) == "ing" && !is_ing_noun(w)) return true;
    return false;
}

// Multi-word prepositions first (longest match); the mapped string is the
// triplet predicate. Possessive "of" maps to "with".
struct PrepMatch {
    size_t tokens = 0;
    std::string predicate;
};

std::optional<PrepMatch> match_preposition(const std::vector<Tok>& toks, size_t i) {
    static const std::vector<std::pair<std::vector<std::string>, std::string>> multi = {
        {{"in", "front", "of"}, "in front of"},
        {{"on", "top", "of"}, "on"},
        {{"next", "to"}, "near"},
        {{"close", "to"}, "near"},
        {{"located", "by"}, "located by"},
        {{"left", "of"}, "left of"},
        {{"right", "of"}, "right of"},
    };
    static const std::unordered_map<std::string, std::string> single = {
        {"on", "on"},       {"in", "in"},         {"under", "under"},
        {"above", "above"}, {"below", "below"},   {"near", "near"},
        {"by", "by"},       {"behind", "behind"}, {"inside", "inside"},
        {"at", "near"},     {"beside", "near"},   {"over", "above"},
        {"beneath", "below"}, {"with", "with"},   {"of", "with"},
        {"from", "from"},
    };
    if (i >= toks.size() || toks[i].kind != Tok::Word) return std::nullopt;
    for (const auto& [words, pred] : multi) {
        if (i + words.size() > toks.size()) continue;
        bool ok = true;
        for (size_t k = 0; k < words.size(); ++k) {
            if (toks[i + k].kind != Tok::Word || toks[i + k].lower != words[k]) { ok = false; break; }
        }
        if (ok) return PrepMatch{words.size(), pred};
    }
    auto it = single.find(toks[i].lower);
    if (it != single.end()) return PrepMatch{1, it->second};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser

class Parser {
public:
    explicit Parser(std::vector<Tok> toks) : toks_(std::move(toks)) {}

    std::vector<Triplet> parse() {
        while (!at_end()) {
            parse_clause();
            while (!at_end() && (peek_is_comma() || peek_word("and"))) ++pos_;
        }
        if (triplets_.empty()) throw ParseError("query yields no triplets");
        for (size_t i = 0; i < triplets_.size(); ++i) triplets_[i].id = static_cast<int>(i);
        return std::move(triplets_);
    }

private:
    bool at_end() const { return pos_ >= toks_.size(); }
    const Tok& peek() const { return toks_[pos_]; }
    bool peek_is_comma() const { return !at_end() && peek().kind == Tok::Comma; }
    bool peek_word(const std::string& w) const {
        return !at_end() && peek().kind == Tok::Word && peek().lower == w;
    }

    bool at_np_boundary() const {
        if (at_end()) return true;
        const Tok& t = peek();
        if (t.kind != Tok::Word) return true;
        if (t.lower == "and" || is_relativizer(t.lower)) return true;
        if (is_verb_token(t.lower)) return true;
        if (match_preposition(toks_, pos_)) return true;
        return false;
    }

    // article* numeral? word+ ; last word is the head
    NounPhrase parse_np() {
        NounPhrase np;
        while (!at_end() && peek().kind == Tok::Word && is_article(peek().lower)) ++pos_;
        if (!at_end() && peek().kind == Tok::Word) {
            if (auto n = text::numeral_value(peek().lower)) {
                np.count = *n;
                ++pos_;
            }
        }
        std::vector<std::string> parts;
        while (!at_np_boundary()) {
            parts.push_back(peek().lower);
            ++pos_;
        }
        if (parts.empty()) throw ParseError("expected a noun phrase at token " + std::to_string(pos_));
        for (size_t i = 0; i + 1 < parts.size(); ++i) np.attributes.push_back(parts[i]);
        np.head = text::singularize(parts.back());
        return np;
    }

    // NP ((,|and) NP)* with the clause-boundary lookahead: in object
    // position a conjunct followed by a verb starts a new clause.
    std::vector<NounPhrase> parse_np_group(bool subject_position) {
        std::vector<NounPhrase> group;
        group.push_back(parse_np());
        while (true) {
            size_t save = pos_;
            bool sep = false;
            while (!at_end() && (peek_is_comma() || peek_word("and"))) { ++pos_; sep = true; }
            if (!sep || at_end()) {
                pos_ = save;
                break;
            }
            NounPhrase next;
            try {
                next = parse_np();
            } catch (const ParseError&) {
                pos_ = save;
                break;
            }
            bool verb_follows = !at_end() && peek().kind == Tok::Word && is_verb_token(peek().lower);
            if (!subject_position && verb_follows) {
                // a conjunct followed by a verb starts a new clause
                pos_ = save;
                break;
            }
            group.push_back(std::move(next));
        }
        return group;
    }

    void emit(const NounPhrase& s, std::string predicate, NounPhrase o) {
        Triplet t;
        t.subject = s;
        t.predicate = std::move(predicate);
        t.object = std::move(o);
        triplets_.push_back(std::move(t));
    }

    void emit_group(const std::vector<NounPhrase>& subjects, const std::string& predicate,
                    const std::vector<NounPhrase>& objects) {
        for (const auto& s : subjects)
            for (const auto& o : objects) emit(s, predicate, o);
    }

    // Reading complement: quoted token, or original-case words until a
    // boundary (preposition, comma, "and", end).
    NounPhrase parse_literal_complement() {
        NounPhrase np;
        if (!at_end() && peek().kind == Tok::Quoted) {
            np.literal = peek().original;
            ++pos_;
            return np;
        }
        std::vector<std::string> parts;
        while (!at_end() && peek().kind == Tok::Word && peek().lower != "and" &&
               !match_preposition(toks_, pos_)) {
            parts.push_back(peek().original);
            ++pos_;
        }
        if (parts.empty()) throw ParseError("reading predicate with no target text");
        np.literal = text::join(parts);
        return np;
    }

    // verb phrase for the given subjects; returns false when the next
    // tokens do not start a verb
    bool parse_vp(const std::vector<NounPhrase>& subjects, std::vector<NounPhrase>* direct_objects) {
        if (at_end() || peek().kind != Tok::Word || !is_verb_token(peek().lower)) return false;
        std::string verb = peek().lower;
        ++pos_;

        if (is_copula(verb)) {
            // auxiliary before a participle: "is riding a horse"
            if (!at_end() && peek().kind == Tok::Word && is_verb_token(peek().lower) &&
                !is_copula(peek().lower)) {
                return parse_vp(subjects, direct_objects);
            }
            if (auto prep = match_preposition(toks_, pos_)) {
                pos_ += prep->tokens;
                auto objs = parse_np_group(false);
                emit_group(subjects, prep->predicate, objs);
                for (auto& o : objs) direct_objects->push_back(o);
                return true;
            }
            auto objs = parse_np_group(false);
            emit_group(subjects, "is", objs);
            // copular complements are attribute-like, not attachment sites
            return true;
        }

        if (is_reading_verb(verb)) {
            NounPhrase lit = parse_literal_complement();
            emit_group(subjects, "reads", {lit});
            return true;
        }

        while (!at_end() && peek().kind == Tok::Word && is_particle(peek().lower)) ++pos_;

        if (auto prep = match_preposition(toks_, pos_)) {
            // no direct object: fuse verb with the preposition
            pos_ += prep->tokens;
            auto objs = parse_np_group(false);
            emit_group(subjects, verb + " " + prep->predicate, objs);
            return true;
        }
        if (at_end() || at_clause_end()) throw ParseError("verb '" + verb + "' has no complement");

        auto objs = parse_np_group(false);
        emit_group(subjects, verb, objs);
        for (auto& o : objs) {
            parse_relative_clause({o});
            direct_objects->push_back(o);
        }
        return true;
    }

    bool at_clause_end() const {
        return at_end() || peek().kind == Tok::Comma || peek_word("and");
    }

    void parse_relative_clause(const std::vector<NounPhrase>& heads) {
        if (at_end() || peek().kind != Tok::Word || !is_relativizer(peek().lower)) return;
        ++pos_;
        std::vector<NounPhrase> ignored;
        if (!parse_vp(heads, &ignored)) throw ParseError("relative clause without a verb");
    }

    void parse_clause() {
        if (!at_end() && peek().kind == Tok::Word && is_negation(peek().lower))
            throw ParseError("negation is not supported: '" + peek().lower + "'");

        auto subjects = parse_np_group(true);
        size_t emitted_before = triplets_.size();

        // attachment-eligible groups, textual order: subject then direct objects
        std::vector<std::vector<NounPhrase>> eligible = {subjects};

        parse_relative_clause(subjects);

        std::vector<NounPhrase> direct_objects;
        bool had_vp = parse_vp(subjects, &direct_objects);
        if (!direct_objects.empty()) eligible.push_back(direct_objects);

        // prepositional adjuncts attach to the nearest preceding eligible group
        bool had_pp = false;
        while (!at_end()) {
            if (!at_end() && peek().kind == Tok::Word && is_negation(peek().lower))
                throw ParseError("negation is not supported: '" + peek().lower + "'");
            auto prep = match_preposition(toks_, pos_);
            if (!prep) break;
            pos_ += prep->tokens;
            auto objs = parse_np_group(false);
            emit_group(eligible.back(), prep->predicate, objs);
            for (auto& o : objs) parse_relative_clause({o});
            had_pp = true;
        }

        if (triplets_.size() == emitted_before) {
            // bare NP: unfold attributes into copular triplets
            bool unfolded = false;
            for (const auto& s : subjects) {
                for (const auto& attr : s.attributes) {
                    NounPhrase bare;
                    bare.head = s.head;
                    bare.count = s.count;
                    NounPhrase attr_np;
                    attr_np.head = attr;
                    emit(bare, "is", attr_np);
                    unfolded = true;
                }
            }
            if (!unfolded)
                throw ParseError("clause has no predicate (verb, adjunct, or attribute)");
        }
        (void)had_vp;
        (void)had_pp;
    }

    std::vector<Tok> toks_;
    size_t pos_ = 0;
    std::vector<Triplet> triplets_;
};

}  // namespace

Specification parse_query(const QueryText& q) {
    if (!q.valid()) throw ParseError("empty or oversized query");
    std::vector<Tok> toks = tokenize(q.raw);
    if (toks.empty()) throw ParseError("query has no tokens");
    for (const auto& t : toks) {
        if (t.kind == Tok::Word && is_negation(t.lower))
            throw ParseError("negation is not supported: '" + t.lower + "'");
    }
    Parser parser(std::move(toks));
    Specification spec;
    spec.query = q;
    spec.triplets = parser.parse();
    spec.source = SpecSource::Grammar;
    auto errors = validate_specification(spec);
    if (!errors.empty()) throw ParseError("parse produced invalid triplets: " + errors.front());
    return spec;
}

Specification composite_fallback(const QueryText& q) {
    if (!q.valid()) throw ParseError("empty or oversized query");
    Specification spec;
    spec.query = q;
    Triplet t;
    t.id = 0;
    t.subject.head = text::normalize_for_match(q.raw);
    t.predicate = "depicts";
    t.object.literal = text::trim(q.raw);
    spec.triplets.push_back(std::move(t));
    spec.source = SpecSource::Grammar;
    return spec;
}

Specification ingest_triplets(const std::string& json_bytes) {
    json j = parse_json(json_bytes, "triplet document");
    Specification spec = specification_from_json(j);
    auto errors = validate_specification(spec);
    if (!errors.empty()) throw InvalidSpecification(std::move(errors));
    return spec;
}

}  // namespace vismc::parse
