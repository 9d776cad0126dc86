#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crs/error.hpp"

namespace crs {

/// Index of a symbol within its Alphabet. The index order is the alphabet's
/// total order and is used for all deterministic tie-breaking.
using Letter = std::size_t;

class Alphabet;
class Word;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// A finite sequence of letters of one alphabet. Immutable after
/// construction; all operations on words are pure.
class Word {
 public:
  Word() = default;
  inline Word(AlphabetPtr alphabet, std::vector<Letter> letters);

  /// Builds a word from one token per character. Requires every token of the
  /// alphabet to be a single character.
  static inline Word parse(const AlphabetPtr& alphabet, std::string_view text);
  static inline Word from_tokens(const AlphabetPtr& alphabet,
                                 const std::vector<std::string>& tokens);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter at(std::size_t i) const { return letters_[i]; }

  inline Word subword_range(std::size_t begin, std::size_t count) const;
  inline std::string str() const;  // concatenated tokens; empty word -> ""

  inline bool operator==(const Word& other) const;
  bool operator!=(const Word& other) const { return !(*this == other); }

  std::size_t hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter a : letters_) h = (h ^ a) * 0x100000001b3ULL;
    return h;
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

/// An ordered set of distinct symbol tokens. An alphabet may be *derived*:
/// each of its letters then expands to a nonempty word over a base alphabet
/// (expansion chains are finite and acyclic by construction).
class Alphabet {
 public:
  static AlphabetPtr make(std::vector<std::string> tokens) {
    return finish(std::make_shared<Alphabet>(Private{}, std::move(tokens)));
  }

  /// One single-character token per character of `chars`.
  static AlphabetPtr make_chars(std::string_view chars) {
    std::vector<std::string> tokens;
    tokens.reserve(chars.size());
    for (char c : chars) tokens.emplace_back(1, c);
    return make(std::move(tokens));
  }

  std::size_t size() const noexcept { return tokens_.size(); }

  const std::string& token(Letter a) const {
    if (a >= tokens_.size()) throw input_error("letter index out of range");
    return tokens_[a];
  }

  std::optional<Letter> find(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_base() const noexcept { return base_ != nullptr; }
  const AlphabetPtr& base() const noexcept { return base_; }

  const Word& expansion(Letter a) const {
    if (!has_base()) throw input_error("alphabet has no base to expand into");
    if (a >= expansions_.size()) throw input_error("letter index out of range");
    return expansions_[a];
  }

  /// The alphabet with letter `a` removed; remaining letters keep their
  /// relative order (and their expansions, for derived alphabets).
  AlphabetPtr without(Letter a) const {
    if (a >= tokens_.size()) throw input_error("letter index out of range");
    std::vector<std::string> tokens;
    tokens.reserve(tokens_.size() - 1);
    for (std::size_t i = 0; i < tokens_.size(); ++i)
      if (i != a) tokens.push_back(tokens_[i]);
    auto out = std::make_shared<Alphabet>(Private{}, std::move(tokens));
    if (has_base()) {
      out->base_ = base_;
      for (std::size_t i = 0; i < tokens_.size(); ++i)
        if (i != a) out->expansions_.push_back(expansions_[i]);
    }
    return finish(std::move(out));
  }

  bool operator==(const Alphabet& other) const {
    if (this == &other) return true;
    if (tokens_ != other.tokens_) return false;
    if (has_base() != other.has_base()) return false;
    if (!has_base()) return true;
    if (!(*base_ == *other.base_)) return false;
    if (expansions_.size() != other.expansions_.size()) return false;
    for (std::size_t i = 0; i < expansions_.size(); ++i)
      if (expansions_[i].letters() != other.expansions_[i].letters()) return false;
    return true;
  }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

  // Construction goes through the factories above; Private blocks other uses
  // while keeping make_shared available.
  struct Private {};
  explicit Alphabet(Private, std::vector<std::string> tokens)
      : tokens_(std::move(tokens)) {}

 private:
  static AlphabetPtr finish(std::shared_ptr<Alphabet> a) {
    for (std::size_t i = 0; i < a->tokens_.size(); ++i) {
      if (a->tokens_[i].empty()) throw input_error("empty symbol token");
      if (!a->index_.emplace(a->tokens_[i], i).second)
        throw input_error("duplicate symbol token '" + a->tokens_[i] + "'");
    }
    return a;
  }

  std::vector<std::string> tokens_;
  std::map<std::string, Letter, std::less<>> index_;
  AlphabetPtr base_;
  std::vector<Word> expansions_;

  friend AlphabetPtr derive_code_alphabet(const AlphabetPtr&,
                                          const std::vector<Word>&);
};

/// Structural equality, with a pointer fast path.
inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

inline void require_same_alphabet(const Word& u, const Word& v) {
  if (!same_alphabet(u.alphabet(), v.alphabet()))
    throw input_error("words are over different alphabets");
}

// ---------------------------------------------------------------------------
// Word inline definitions.

inline Word::Word(AlphabetPtr alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  if (!alphabet_) throw input_error("word requires an alphabet");
  for (Letter a : letters_)
    if (a >= alphabet_->size()) throw input_error("letter index out of range");
}

inline Word Word::parse(const AlphabetPtr& alphabet, std::string_view text) {
  if (!alphabet) throw input_error("word requires an alphabet");
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    auto a = alphabet->find(std::string_view(&c, 1));
    if (!a) throw input_error(std::string("symbol '") + c + "' is not in the alphabet");
    letters.push_back(*a);
  }
  return Word(alphabet, std::move(letters));
}

inline Word Word::from_tokens(const AlphabetPtr& alphabet,
                              const std::vector<std::string>& tokens) {
  if (!alphabet) throw input_error("word requires an alphabet");
  std::vector<Letter> letters;
  letters.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto a = alphabet->find(t);
    if (!a) throw input_error("symbol '" + t + "' is not in the alphabet");
    letters.push_back(*a);
  }
  return Word(alphabet, std::move(letters));
}

inline Word Word::subword_range(std::size_t begin, std::size_t count) const {
  std::vector<Letter> out(letters_.begin() + begin, letters_.begin() + begin + count);
  return Word(alphabet_, std::move(out));
}

inline std::string Word::str() const {
  std::string out;
  for (Letter a : letters_) out += alphabet_->token(a);
  return out;
}

inline bool Word::operator==(const Word& other) const {
  return letters_ == other.letters_ && same_alphabet(alphabet_, other.alphabet_);
}

inline Word concat(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  std::vector<Letter> letters;
  letters.reserve(u.size() + v.size());
  letters.insert(letters.end(), u.letters().begin(), u.letters().end());
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet() ? u.alphabet() : v.alphabet(), std::move(letters));
}

/// Length first, then lexicographic by letter order.
inline bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u.letters() < v.letters();
}

// ---------------------------------------------------------------------------
// Factor and subword predicates.

/// Position of the first occurrence of `u` as a factor of `v`, at or after
/// `from`. The empty word occurs at every position up to |v|.
inline std::optional<std::size_t> find_factor(const Word& u, const Word& v,
                                              std::size_t from = 0) {
  require_same_alphabet(u, v);
  if (u.size() > v.size()) return std::nullopt;
  if (from + u.size() > v.size()) return std::nullopt;
  auto it = std::search(v.letters().begin() + from, v.letters().end(),
                        u.letters().begin(), u.letters().end());
  if (it == v.letters().end() && !u.empty()) return std::nullopt;
  return static_cast<std::size_t>(it - v.letters().begin());
}

/// True iff v = x u y for some x, y.
inline bool is_factor(const Word& u, const Word& v) {
  return find_factor(u, v).has_value();
}

/// True iff u embeds into v as a scattered subsequence.
inline bool is_subword(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  std::size_t i = 0;
  for (std::size_t j = 0; j < v.size() && i < u.size(); ++j)
    if (u.at(i) == v.at(j)) ++i;
  return i == u.size();
}

// ---------------------------------------------------------------------------
// Derived (code) alphabets.

/// A fresh alphabet with one letter per codeword, expanding to it. Letter
/// order follows the codeword order; tokens are generated as "k<i>".
inline AlphabetPtr derive_code_alphabet(const AlphabetPtr& base,
                                        const std::vector<Word>& codewords) {
  if (!base) throw input_error("code alphabet requires a base");
  std::vector<std::string> tokens;
  tokens.reserve(codewords.size());
  for (std::size_t i = 0; i < codewords.size(); ++i)
    tokens.push_back("k" + std::to_string(i));
  auto out = std::make_shared<Alphabet>(Alphabet::Private{}, std::move(tokens));
  out->base_ = base;
  std::vector<std::vector<Letter>> seen;
  for (const auto& w : codewords) {
    if (w.empty()) throw input_error("codewords must be nonempty");
    if (!same_alphabet(w.alphabet(), base))
      throw input_error("codeword is not over the base alphabet");
    if (std::find(seen.begin(), seen.end(), w.letters()) != seen.end())
      throw input_error("duplicate codeword '" + w.str() + "'");
    seen.push_back(w.letters());
    out->expansions_.push_back(w);
  }
  for (std::size_t i = 0; i < out->size(); ++i)
    out->index_.emplace(out->tokens_[i], i);
  return out;
}

/// One expansion level: the concatenation of the letters' codewords, as a
/// word over the immediate base.
inline Word expand_once(const Word& w) {
  const auto& alpha = w.alphabet();
  if (!alpha || !alpha->has_base())
    throw input_error("word's alphabet has no base to expand into");
  std::vector<Letter> letters;
  for (Letter a : w.letters()) {
    const Word& e = alpha->expansion(a);
    letters.insert(letters.end(), e.letters().begin(), e.letters().end());
  }
  return Word(alpha->base(), std::move(letters));
}

/// Full expansion, flattened to the bottom alphabet of the derivation chain.
inline Word expand(const Word& w) {
  Word out = expand_once(w);
  while (out.alphabet()->has_base()) out = expand_once(out);
  return out;
}

/// The unique factorization of `w` over the code alphabet `code`, or absent
/// when w is not in the code's submonoid. Requires the code shape produced
/// by the synthesis: every codeword contains exactly one occurrence of a
/// shared marker letter, at its end, so decoding splits after each marker.
inline std::optional<Word> decode_over_code(const Word& w, const AlphabetPtr& code) {
  if (!code || !code->has_base())
    throw input_error("decode requires a derived code alphabet");
  if (!same_alphabet(w.alphabet(), code->base()))
    throw input_error("word is not over the code's base alphabet");
  if (code->size() == 0) {
    if (w.empty()) return Word(code, {});
    return std::nullopt;
  }
  const Word& first = code->expansion(0);
  Letter marker = first.letters().back();
  std::map<std::vector<Letter>, Letter> by_expansion;
  for (Letter k = 0; k < code->size(); ++k) {
    const auto& e = code->expansion(k).letters();
    if (e.back() != marker ||
        std::count(e.begin(), e.end(), marker) != 1)
      throw input_error("code alphabet letters do not share a single terminal marker");
    by_expansion.emplace(e, k);
  }
  std::vector<Letter> decoded;
  std::vector<Letter> chunk;
  for (Letter a : w.letters()) {
    chunk.push_back(a);
    if (a == marker) {
      auto it = by_expansion.find(chunk);
      if (it == by_expansion.end()) return std::nullopt;
      decoded.push_back(it->second);
      chunk.clear();
    }
  }
  if (!chunk.empty()) return std::nullopt;  // does not end on a marker
  return Word(code, std::move(decoded));
}

/// Re-reads `w` over `target`, matching letters by token. Used to move words
/// between an alphabet and a sub-alphabet of it.
inline Word embed(const Word& w, const AlphabetPtr& target) {
  if (!target) throw input_error("embed requires a target alphabet");
  std::vector<Letter> letters;
  letters.reserve(w.size());
  for (Letter a : w.letters()) {
    auto b = target->find(w.alphabet()->token(a));
    if (!b)
      throw input_error("symbol '" + w.alphabet()->token(a) +
                        "' is not in the target alphabet");
    letters.push_back(*b);
  }
  return Word(target, std::move(letters));
}

}  // namespace crs
