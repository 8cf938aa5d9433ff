#pragma once

#include <string_view>

namespace sentiment::resources {

// Contents of data/stopwords_en.txt and data/lemma_exceptions.txt, embedded
// at configure time.
std::string_view stopwords_en();
std::string_view lemma_exceptions();

}  // namespace sentiment::resources
