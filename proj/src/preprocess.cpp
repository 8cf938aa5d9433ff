#include "sentiment/preprocess.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "resources.hpp"
#include "sentiment/error.hpp"

namespace sentiment {

namespace {

std::string read_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCategory::io, "cannot open " + std::string(what) + " '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

// Calls fn(line_number, tokens) for every non-empty, non-comment line.
template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (!tokens.empty()) fn(line_no, tokens);
    if (end == text.size()) break;
  }
}

bool is_vowel_at(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return true;
    case 'y': return i > 0 && !is_vowel_at(w, i - 1);
    default: return false;
  }
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_at(w, i)) return true;
  }
  return false;
}

// Porter's m(): number of vowel-consonant sequences.
std::size_t measure(std::string_view w) {
  std::size_t m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool v = is_vowel_at(w, i);
    if (prev_vowel && !v) ++m;
    prev_vowel = v;
  }
  return m;
}

// Ends consonant-vowel-consonant with the final consonant not w, x or y.
bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  if (is_vowel_at(w, n - 1) || !is_vowel_at(w, n - 2) || is_vowel_at(w, n - 3)) return false;
  const char last = w[n - 1];
  return last != 'w' && last != 'x' && last != 'y';
}

bool is_vowel_char(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Restores the base form of a stem left by removing -ing or -ed.
void repair_stem(std::string& stem) {
  const std::size_t n = stem.size();
  if (n == 0) return;
  if (stem.ends_with("at") || stem.ends_with("bl") || stem.ends_with("iz")) {
    stem.push_back('e');
    return;
  }
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel_char(stem[n - 1])) {
    const char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z') stem.pop_back();
    return;
  }
  const char last = stem.back();
  if (last == 'v' || last == 'c' ||
      (n >= 2 && (last == 's' || last == 'z') && is_vowel_char(stem[n - 2]))) {
    stem.push_back('e');
    return;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) stem.push_back('e');
}

bool is_clean_token(std::string_view word) {
  const auto tokens = tokenize(clean_text(word));
  return tokens.size() == 1 && tokens.front() == word;
}

}  // namespace

// ---------------------------------------------------------------------------
// Stop words

StopWordList StopWordList::parse(std::string_view text) {
  std::unordered_set<std::string> words;
  for_each_data_line(text, [&](std::size_t, const TokenList& tokens) {
    for (const auto& t : tokens) words.insert(clean_text(t));
  });
  words.erase("");
  return StopWordList(std::move(words));
}

StopWordList StopWordList::load(const std::filesystem::path& path) {
  return parse(read_file(path, "stop-word list"));
}

const StopWordList& StopWordList::english() {
  static const StopWordList list = parse(resources::stopwords_en());
  return list;
}

TokenList remove_stopwords(std::span<const std::string> tokens, const StopWordList& stoplist) {
  TokenList out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stoplist.contains(t)) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemmatizer

std::vector<SuffixRule> Lemmatizer::default_rules() {
  using C = SuffixRule::Condition;
  return {
      {"sses", "ss", 1, C::none, false},
      {"ies", "y", 2, C::none, false},
      {"ies", "ie", 1, C::none, false},
      {"ied", "y", 2, C::none, false},
      {"ied", "ie", 1, C::none, false},
      {"xes", "x", 1, C::none, false},
      {"ches", "ch", 1, C::none, false},
      {"shes", "sh", 1, C::none, false},
      {"eed", "ee", 1, C::stem_measure_pos, false},
      {"eed", "eed", 1, C::none, false},
      {"ing", "", 3, C::stem_has_vowel, true},
      {"ed", "", 3, C::stem_has_vowel, true},
      {"ss", "ss", 1, C::none, false},
      {"us", "us", 1, C::none, false},
      {"is", "is", 1, C::none, false},
      {"s", "", 3, C::none, false},
  };
}

std::map<std::string, std::string, std::less<>> Lemmatizer::default_exceptions() {
  return parse_exceptions(resources::lemma_exceptions());
}

Lemmatizer::Lemmatizer() : Lemmatizer(default_rules(), default_exceptions()) {}

Lemmatizer::Lemmatizer(std::vector<SuffixRule> rules,
                       std::map<std::string, std::string, std::less<>> exceptions)
    : rules_(std::move(rules)), exceptions_(std::move(exceptions)) {}

std::map<std::string, std::string, std::less<>> Lemmatizer::parse_exceptions(std::string_view text) {
  std::map<std::string, std::string, std::less<>> out;
  for_each_data_line(text, [&](std::size_t line, const TokenList& tokens) {
    if (tokens.size() != 2 || !is_clean_token(tokens[0]) || !is_clean_token(tokens[1])) {
      throw Error(ErrorCategory::config, "lemma exceptions line " + std::to_string(line) +
                                             ": expected two lowercase words");
    }
    out[tokens[0]] = tokens[1];
  });
  return out;
}

Lemmatizer Lemmatizer::with_exceptions_file(const std::filesystem::path& path) {
  return Lemmatizer(default_rules(), parse_exceptions(read_file(path, "lemma exceptions")));
}

std::optional<std::string> Lemmatizer::apply_once(std::string_view token) const {
  if (auto it = exceptions_.find(token); it != exceptions_.end()) return it->second;

  for (const auto& rule : rules_) {
    if (!token.ends_with(rule.suffix)) continue;
    const std::string_view stem = token.substr(0, token.size() - rule.suffix.size());
    if (stem.size() < rule.min_stem) continue;
    if (rule.condition == SuffixRule::Condition::stem_has_vowel && !has_vowel(stem)) continue;
    if (rule.condition == SuffixRule::Condition::stem_measure_pos && measure(stem) == 0) continue;
    if (rule.replacement == rule.suffix) return std::nullopt;

    std::string out(stem);
    if (rule.repair_stem) {
      repair_stem(out);
    } else {
      out += rule.replacement;
    }
    return out;
  }
  return std::nullopt;
}

std::string Lemmatizer::lemmatize(std::string_view token) const {
  std::string current(token);
  // Every rule shortens the word, so this terminates; the bound guards
  // against cyclic exception entries.
  for (int round = 0; round < 16; ++round) {
    auto next = apply_once(current);
    if (!next || *next == current) break;
    current = std::move(*next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Pipeline

TokenList preprocess_tweet(std::string_view raw, const StopWordList& stoplist,
                           const Lemmatizer& lemmatizer) {
  const TokenList tokens = remove_stopwords(tokenize(clean_text(raw)), stoplist);
  TokenList lemmas;
  lemmas.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto lemma = lemmatizer.lemmatize(t);
    if (!lemma.empty() && !stoplist.contains(lemma)) lemmas.push_back(std::move(lemma));
  }
  return lemmas;
}

TokenList Preprocessor::operator()(std::string_view raw) const {
  return preprocess_tweet(raw, stoplist_, lemmatizer_);
}

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<std::string> terms) {
  for (auto& t : terms) {
    if (index_.contains(t)) throw std::invalid_argument("duplicate vocabulary term '" + t + "'");
    insert(t);
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  if (auto it = index_.find(std::string(term)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t Vocabulary::insert(std::string_view term) {
  auto [it, inserted] = index_.try_emplace(std::string(term), terms_.size());
  if (inserted) terms_.emplace_back(term);
  return it->second;
}

Vocabulary build_vocabulary(std::span<const TokenList> docs) {
  Vocabulary vocab;
  for (const auto& doc : docs) {
    for (const auto& t : doc) vocab.insert(t);
  }
  return vocab;
}

}  // namespace sentiment
