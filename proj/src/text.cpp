#include "vismc/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace vismc::text {

namespace {

const std::unordered_map<std::string, std::string>& irregular_plurals() {
    static const std::unordered_map<std::string, std::string> table = {
        {"people", "person"}, {"men", "man"},     {"women", "woman"},
        {"children", "child"}, {"feet", "foot"},  {"teeth", "tooth"},
        {"geese", "goose"},   {"mice", "mouse"},
    };
    return table;
}

const std::unordered_set<std::string>& invariant_nouns() {
    static const std::unordered_set<std::string> table = {"sheep", "fish", "deer"};
    return table;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::string current;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-') {
            current.push_back(c);
        } else if (!current.empty()) {
            out.push_back(current);
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string singularize(std::string_view word) {
    std::string w(word);
    auto it = irregular_plurals().find(w);
    if (it != irregular_plurals().end()) return it->second;
    if (invariant_nouns().count(w)) return w;
    if (w.size() <= 3) return w;
    if (ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
    // Strip "es" only after sibilants; "horses" loses just the "s".
    if (ends_with(w, "sses") || ends_with(w, "shes") || ends_with(w, "ches") ||
        ends_with(w, "xes") || ends_with(w, "zes")) {
        return w.substr(0, w.size() - 2);
    }
    if (ends_with(w, "ss")) return w;
    if (ends_with(w, "s")) return w.substr(0, w.size() - 1);
    return w;
}

std::optional<int> numeral_value(std::string_view word) {
    static const std::unordered_map<std::string, int> names = {
        {"one", 1},   {"two", 2},   {"three", 3}, {"four", 4},
        {"five", 5},  {"six", 6},   {"seven", 7}, {"eight", 8},
        {"nine", 9},  {"ten", 10},  {"eleven", 11}, {"twelve", 12},
    };
    std::string w = to_lower(word);
    auto it = names.find(w);
    if (it != names.end()) return it->second;
    if (!w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); })) {
        int v = std::stoi(w);
        if (v >= 1) return v;
    }
    return std::nullopt;
}

bool is_auxiliary(std::string_view word) {
    static const std::unordered_set<std::string> aux = {"is", "are", "was", "were", "being", "been", "be"};
    return aux.count(std::string(word)) > 0;
}

std::vector<std::string> fold_verb(std::string_view word) {
    std::string w = to_lower(word);
    std::vector<std::string> forms = {w};
    auto push = [&forms](std::string f) {
        if (f.size() >= 2 && std::find(forms.begin(), forms.end(), f) == forms.end())
            forms.push_back(std::move(f));
    };
    if (ends_with(w, "ing") && w.size() > 4) {
        std::string base = w.substr(0, w.size() - 3);
        push(base);
        push(base + "e");
        if (base.size() >= 2 && base[base.size() - 1] == base[base.size() - 2])
            push(base.substr(0, base.size() - 1));  // sitting -> sit
    }
    if (ends_with(w, "ies") && w.size() > 4) push(w.substr(0, w.size() - 3) + "y");  // carries -> carry
    if (ends_with(w, "es") && w.size() > 3) push(w.substr(0, w.size() - 2));
    if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 2) push(w.substr(0, w.size() - 1));
    if (ends_with(w, "ed") && w.size() > 3) {
        std::string base = w.substr(0, w.size() - 2);
        push(base);
        push(base + "e");
        if (base.size() >= 2 && base[base.size() - 1] == base[base.size() - 2])
            push(base.substr(0, base.size() - 1));
    }
    return forms;
}

bool verbs_match(std::string_view a, std::string_view b) {
    auto fa = fold_verb(a);
    auto fb = fold_verb(b);
    for (const auto& x : fa)
        for (const auto& y : fb)
            if (x == y) return true;
    return false;
}

std::string normalize_for_match(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else {
            pending_space = true;
        }
    }
    return out;
}

}  // namespace vismc::text
