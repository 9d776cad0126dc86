#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crs/error.hpp"
#include "crs/words.hpp"

namespace crs {

class FiniteMonoid;
using MonoidPtr = std::shared_ptr<const FiniteMonoid>;

/// A finite monoid given by its full multiplication table. Immutable.
///
/// Construction validates the two-sided identity and associativity:
/// exhaustively up to 64 elements, by seeded random sampling above.
class FiniteMonoid {
 public:
  static constexpr std::size_t kExhaustiveAssociativityLimit = 64;
  static constexpr std::size_t kAssociativitySamples = 10'000;
  static constexpr std::uint64_t kDefaultSeed = 12345;

  static MonoidPtr make(std::vector<std::string> names, std::size_t neutral,
                        const std::vector<std::vector<std::size_t>>& table,
                        std::uint64_t seed = kDefaultSeed) {
    auto m = std::make_shared<FiniteMonoid>(Private{});
    const std::size_t n = names.size();
    if (n == 0) throw input_error("a monoid needs at least a neutral element");
    if (neutral >= n) throw input_error("neutral index out of range");
    if (table.size() != n) throw input_error("multiplication table has wrong shape");
    m->names_ = std::move(names);
    m->neutral_ = neutral;
    m->size_ = n;
    m->table_.reserve(n * n);
    for (const auto& row : table) {
      if (row.size() != n) throw input_error("multiplication table has wrong shape");
      for (std::size_t e : row) {
        if (e >= n) throw input_error("multiplication table entry out of range");
        m->table_.push_back(e);
      }
    }
    for (std::size_t x = 0; x < n; ++x)
      if (m->product(neutral, x) != x || m->product(x, neutral) != x)
        throw input_error("neutral element is not a two-sided identity");
    if (n <= kExhaustiveAssociativityLimit) {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            if (m->product(m->product(x, y), z) != m->product(x, m->product(y, z)))
              throw input_error("multiplication table is not associative");
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t i = 0; i < kAssociativitySamples; ++i) {
        std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
        if (m->product(m->product(x, y), z) != m->product(x, m->product(y, z)))
          throw input_error("multiplication table is not associative");
      }
    }
    return m;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t neutral() const noexcept { return neutral_; }

  std::size_t product(std::size_t x, std::size_t y) const {
    return table_[x * size_ + y];
  }

  /// x^n with x^0 = neutral.
  std::size_t power(std::size_t x, std::size_t n) const {
    std::size_t acc = neutral_;
    for (std::size_t i = 0; i < n; ++i) acc = product(acc, x);
    return acc;
  }

  const std::string& name(std::size_t x) const { return names_[x]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < size_; ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  std::vector<std::vector<std::size_t>> rows() const {
    std::vector<std::vector<std::size_t>> out(size_);
    for (std::size_t x = 0; x < size_; ++x)
      out[x].assign(table_.begin() + x * size_, table_.begin() + (x + 1) * size_);
    return out;
  }

  bool operator==(const FiniteMonoid& other) const {
    return names_ == other.names_ && neutral_ == other.neutral_ &&
           table_ == other.table_;
  }
  bool operator!=(const FiniteMonoid& other) const { return !(*this == other); }

  struct Private {};
  explicit FiniteMonoid(Private) {}

 private:
  std::vector<std::string> names_;
  std::size_t neutral_ = 0;
  std::size_t size_ = 0;
  std::vector<std::size_t> table_;  // row-major
};

inline bool same_monoid(const MonoidPtr& a, const MonoidPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

/// A homomorphism from a free monoid into a finite monoid, determined by the
/// images of the letters. Optionally carries an accepting subset, making it
/// recognize a language.
class Morphism {
 public:
  Morphism() = default;
  Morphism(AlphabetPtr source, MonoidPtr target, std::vector<std::size_t> images,
           std::optional<std::vector<bool>> accepting = std::nullopt)
      : source_(std::move(source)),
        target_(std::move(target)),
        images_(std::move(images)),
        accepting_(std::move(accepting)) {
    if (!source_ || !target_) throw input_error("morphism requires source and target");
    if (images_.size() != source_->size())
      throw input_error("morphism must map every letter");
    for (std::size_t e : images_)
      if (e >= target_->size()) throw input_error("letter image out of range");
    if (accepting_ && accepting_->size() != target_->size())
      throw input_error("accepting subset has wrong size");
  }

  const AlphabetPtr& source() const noexcept { return source_; }
  const MonoidPtr& target() const noexcept { return target_; }
  std::size_t image(Letter a) const { return images_.at(a); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  bool has_accepting() const noexcept { return accepting_.has_value(); }
  const std::optional<std::vector<bool>>& accepting() const noexcept {
    return accepting_;
  }
  bool accepts(std::size_t element) const {
    if (!accepting_) throw input_error("morphism has no accepting subset");
    return (*accepting_)[element];
  }

  /// The same map on a sub-alphabet (letters matched by token). The accepting
  /// subset is dropped; restrictions are used as plain homomorphisms.
  Morphism restricted(const AlphabetPtr& sub) const {
    std::vector<std::size_t> images;
    images.reserve(sub->size());
    for (Letter a = 0; a < sub->size(); ++a) {
      auto orig = source_->find(sub->token(a));
      if (!orig) throw input_error("sub-alphabet letter not found in source");
      images.push_back(images_[*orig]);
    }
    return Morphism(sub, target_, std::move(images));
  }

  bool operator==(const Morphism& other) const {
    return same_alphabet(source_, other.source_) &&
           same_monoid(target_, other.target_) && images_ == other.images_ &&
           accepting_ == other.accepting_;
  }

 private:
  AlphabetPtr source_;
  MonoidPtr target_;
  std::vector<std::size_t> images_;
  std::optional<std::vector<bool>> accepting_;
};

/// Image of a word: the product of its letters' images; neutral for the
/// empty word.
inline std::size_t evaluate(const Morphism& phi, const Word& w) {
  if (!same_alphabet(phi.source(), w.alphabet()))
    throw input_error("word is not over the morphism's source alphabet");
  std::size_t acc = phi.target()->neutral();
  for (Letter a : w.letters()) acc = phi.target()->product(acc, phi.image(a));
  return acc;
}

// ---------------------------------------------------------------------------
// Aperiodicity and units.

struct AperiodicityResult {
  bool aperiodic = false;
  /// Least n with x^n = x^(n+1) for all x, when aperiodic.
  std::size_t exponent = 0;
  /// An element with no stabilizing power, when not aperiodic.
  std::optional<std::size_t> witness;
};

inline AperiodicityResult is_aperiodic(const FiniteMonoid& m) {
  AperiodicityResult out;
  out.aperiodic = true;
  for (std::size_t x = 0; x < m.size(); ++x) {
    std::optional<std::size_t> stab;
    std::size_t pow = m.neutral();
    for (std::size_t n = 0; n <= m.size(); ++n) {
      std::size_t next = m.product(pow, x);
      if (next == pow) {
        stab = n;
        break;
      }
      pow = next;
    }
    if (!stab) {
      out.aperiodic = false;
      out.exponent = 0;
      out.witness = x;
      return out;
    }
    out.exponent = std::max(out.exponent, *stab);
  }
  return out;
}

/// All elements with a two-sided inverse.
inline std::vector<std::size_t> units(const FiniteMonoid& m) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m.product(x, y) == m.neutral() && m.product(y, x) == m.neutral()) {
        out.push_back(x);
        break;
      }
  return out;
}

// ---------------------------------------------------------------------------
// Local divisors.

/// The monoid on cM ∩ Mc with product xc ∘ cy = xcy and neutral element c,
/// together with the carrier's correspondence into the ambient monoid.
struct LocalDivisor {
  MonoidPtr monoid;
  std::vector<std::size_t> carrier;  // local index -> ambient index, ascending
  std::size_t ambient_c = 0;

  std::optional<std::size_t> find_ambient(std::size_t ambient) const {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), ambient);
    if (it == carrier.end() || *it != ambient) return std::nullopt;
    return static_cast<std::size_t>(it - carrier.begin());
  }
};

inline LocalDivisor local_divisor(const FiniteMonoid& m, std::size_t c) {
  if (c >= m.size()) throw input_error("localization element out of range");
  std::vector<bool> in_cm(m.size(), false), in_mc(m.size(), false);
  for (std::size_t x = 0; x < m.size(); ++x) {
    in_cm[m.product(c, x)] = true;
    in_mc[m.product(x, c)] = true;
  }
  LocalDivisor out;
  out.ambient_c = c;
  for (std::size_t x = 0; x < m.size(); ++x)
    if (in_cm[x] && in_mc[x]) out.carrier.push_back(x);

  const std::size_t n = out.carrier.size();
  std::vector<std::vector<std::size_t>> left_parts(n);  // all x with x·c = carrier[i]
  std::vector<std::vector<std::size_t>> right_parts(n);  // all y with c·y = carrier[j]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (m.product(x, c) == out.carrier[i]) left_parts[i].push_back(x);
      if (m.product(c, x) == out.carrier[i]) right_parts[i].push_back(x);
    }

  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // xc ∘ cy = xcy, checked over every decomposition of both operands.
      std::optional<std::size_t> value;
      for (std::size_t x : left_parts[i]) {
        std::size_t v = m.product(x, out.carrier[j]);
        if (value && *value != v)
          throw input_error("local product is not well-defined");
        value = v;
      }
      for (std::size_t y : right_parts[j]) {
        std::size_t v = m.product(out.carrier[i], y);
        if (value && *value != v)
          throw input_error("local product is not well-defined");
        value = v;
      }
      auto local = out.find_ambient(*value);
      if (!local) throw input_error("local product leaves the carrier");
      table[i][j] = *local;
    }

  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t a : out.carrier) names.push_back(m.name(a));
  auto neutral = out.find_ambient(c);
  if (!neutral) throw input_error("localization element not in carrier");
  out.monoid = FiniteMonoid::make(std::move(names), *neutral, table);
  return out;
}

// ---------------------------------------------------------------------------
// Transition monoids.

/// Result of closing a complete DFA's letter actions under composition.
struct TransitionMonoid {
  MonoidPtr monoid;
  Morphism morphism;  // letters to their state transformations
  std::vector<std::vector<std::size_t>> transformations;
};

/// The monoid of state transformations generated by the letters of a
/// complete DFA, with each element named by its shortlex-least word.
/// The morphism's accepting subset holds the transformations sending the
/// initial state into a final state.
template <typename DfaLike>
TransitionMonoid transition_monoid(const DfaLike& dfa) {
  const AlphabetPtr& alpha = dfa.alphabet();
  const std::size_t q = dfa.num_states();
  if (q == 0) throw input_error("transition monoid requires at least one state");

  std::vector<std::vector<std::size_t>> letter_action(alpha->size());
  for (Letter a = 0; a < alpha->size(); ++a) {
    letter_action[a].resize(q);
    for (std::size_t s = 0; s < q; ++s) {
      std::size_t t = dfa.next(s, a);
      if (t >= q) throw input_error("transition leaves the state set");
      letter_action[a][s] = t;
    }
  }

  std::vector<std::vector<std::size_t>> elements;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::string> names;

  std::vector<std::size_t> identity(q);
  for (std::size_t s = 0; s < q; ++s) identity[s] = s;
  elements.push_back(identity);
  index.emplace(identity, 0);
  names.push_back("1");

  // Breadth-first closure in shortlex order of representative words.
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (Letter a = 0; a < alpha->size(); ++a) {
      std::vector<std::size_t> composed(q);
      for (std::size_t s = 0; s < q; ++s)
        composed[s] = letter_action[a][elements[i][s]];
      if (index.emplace(composed, elements.size()).second) {
        elements.push_back(composed);
        names.push_back((i == 0 ? "" : names[i]) + alpha->token(a));
      }
    }
  }

  const std::size_t n = elements.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> composed(q);
      for (std::size_t s = 0; s < q; ++s) composed[s] = elements[j][elements[i][s]];
      table[i][j] = index.at(composed);
    }

  TransitionMonoid out;
  out.monoid = FiniteMonoid::make(std::move(names), 0, table);

  std::vector<std::size_t> images;
  images.reserve(alpha->size());
  for (Letter a = 0; a < alpha->size(); ++a) images.push_back(index.at(letter_action[a]));

  std::vector<bool> accepting(n, false);
  for (std::size_t i = 0; i < n; ++i)
    accepting[i] = dfa.is_final(elements[i][dfa.initial()]);

  out.morphism = Morphism(alpha, out.monoid, std::move(images), std::move(accepting));
  out.transformations = std::move(elements);
  return out;
}

}  // namespace crs
