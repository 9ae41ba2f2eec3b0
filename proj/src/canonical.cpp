#include "vismc/canonical.hpp"

#include <unordered_set>

#include "vismc/text.hpp"

namespace vismc {

namespace {

bool is_article(const std::string& w) {
    static const std::unordered_set<std::string> articles = {"a", "an", "the"};
    return articles.count(w) > 0;
}

}  // namespace

NounPhrase canonicalize(std::string_view raw) {
    NounPhrase np;
    std::vector<std::string> tokens = text::words(text::to_lower(raw));

    size_t i = 0;
    while (i < tokens.size() && is_article(tokens[i])) ++i;
    if (i < tokens.size()) {
        if (auto n = text::numeral_value(tokens[i])) {
            np.count = *n;
            ++i;
        }
    }
    if (i >= tokens.size()) return np;  // nothing left: head stays empty

    for (size_t j = i; j + 1 < tokens.size(); ++j) np.attributes.push_back(tokens[j]);
    np.head = text::singularize(tokens.back());
    return np;
}

}  // namespace vismc
