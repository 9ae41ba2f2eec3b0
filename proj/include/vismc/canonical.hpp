#pragma once
// Canonical decomposition of raw noun text. Lives with the core types so
// every module agrees on phrase equality.

#include <string_view>

#include "vismc/types.hpp"

namespace vismc {

// "two boats" -> {head:"boat", count:2}; "a man" -> {head:"man"};
// leading articles stripped, leading numerals extracted, premodifiers
// kept as attributes, plural heads singularized.
NounPhrase canonicalize(std::string_view raw);

}  // namespace vismc
