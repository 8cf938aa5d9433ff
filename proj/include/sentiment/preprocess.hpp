#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sentiment {

using TokenList = std::vector<std::string>;

/// Lowercases letters (ASCII and the common alphabetic blocks, UTF-8 in and
/// out), turns every other character into a space, then collapses space runs
/// and trims. Digits, punctuation, '#', '@', emoji and invalid UTF-8 all
/// become separators. Idempotent.
std::string clean_text(std::string_view raw);

/// Splits on runs of ASCII whitespace; never yields empty tokens.
TokenList tokenize(std::string_view cleaned);

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  /// One lowercase word per line; blank lines and '#' comments ignored.
  static StopWordList parse(std::string_view text);
  static StopWordList load(const std::filesystem::path& path);
  /// The bundled English list (data/stopwords_en.txt, compiled in).
  static const StopWordList& english();

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

TokenList remove_stopwords(std::span<const std::string> tokens, const StopWordList& stoplist);

/// One suffix rewrite. `replacement == suffix` makes the rule a guard that
/// keeps the word as-is and stops the search.
struct SuffixRule {
  enum class Condition {
    none,
    stem_has_vowel,     // Porter *v*, and the stem is at least min_stem long
    stem_measure_pos,   // Porter m() > 0
  };
  std::string suffix;
  std::string replacement;
  std::size_t min_stem = 1;
  Condition condition = Condition::none;
  bool repair_stem = false;  // undo doubling / restore silent e after -ing, -ed
};

/// Rule-based English lemmatizer: an exception dictionary followed by an
/// ordered suffix table (plural -s/-es/-ies, -ing, -ed, -eed). The first rule
/// whose suffix and condition match is applied. Application repeats until
/// the word stops changing, which makes lemmatize idempotent.
class Lemmatizer {
 public:
  /// Default suffix rules and the bundled exception list.
  Lemmatizer();
  Lemmatizer(std::vector<SuffixRule> rules, std::map<std::string, std::string, std::less<>> exceptions);

  /// Two whitespace-separated columns `word lemma` per line; '#' comments.
  /// Both columns must already be clean single tokens.
  static std::map<std::string, std::string, std::less<>> parse_exceptions(std::string_view text);
  static Lemmatizer with_exceptions_file(const std::filesystem::path& path);

  static std::vector<SuffixRule> default_rules();
  static std::map<std::string, std::string, std::less<>> default_exceptions();

  std::string lemmatize(std::string_view token) const;

  const std::vector<SuffixRule>& rules() const noexcept { return rules_; }
  const std::map<std::string, std::string, std::less<>>& exceptions() const noexcept {
    return exceptions_;
  }

 private:
  std::optional<std::string> apply_once(std::string_view token) const;

  std::vector<SuffixRule> rules_;
  std::map<std::string, std::string, std::less<>> exceptions_;
};

/// Stop-word list plus lemmatizer; the full tweet-to-lemmas pipeline.
class Preprocessor {
 public:
  Preprocessor() : stoplist_(StopWordList::english()) {}
  Preprocessor(StopWordList stoplist, Lemmatizer lemmatizer)
      : stoplist_(std::move(stoplist)), lemmatizer_(std::move(lemmatizer)) {}

  TokenList operator()(std::string_view raw) const;

  const StopWordList& stoplist() const noexcept { return stoplist_; }
  const Lemmatizer& lemmatizer() const noexcept { return lemmatizer_; }

 private:
  StopWordList stoplist_;
  Lemmatizer lemmatizer_;
};

/// clean_text -> tokenize -> remove_stopwords -> lemmatize. Lemmas that land
/// on a stop-word are dropped as well. Order and duplicates are kept; the
/// result may be empty.
TokenList preprocess_tweet(std::string_view raw, const StopWordList& stoplist,
                           const Lemmatizer& lemmatizer);

/// Ordered set of unique terms with a term -> dimension map.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws std::invalid_argument on duplicate terms.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::string& term(std::size_t index) const { return terms_.at(index); }
  std::optional<std::size_t> index_of(std::string_view term) const;

  /// Appends `term` unless present; returns its index either way.
  std::size_t insert(std::string_view term);

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Unique terms in first-occurrence order across docs taken in sequence.
Vocabulary build_vocabulary(std::span<const TokenList> docs);

}  // namespace sentiment
