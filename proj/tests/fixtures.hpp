#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// work straight from definitions (exhaustive reduction graphs, naive factor
// scans) so they stay independent of the library's algorithms.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crs/monoid.hpp"
#include "crs/rewrite.hpp"
#include "crs/words.hpp"

namespace fixtures {

using namespace crs;

inline Word w(const AlphabetPtr& alpha, std::string_view text) {
  return Word::parse(alpha, text);
}

inline Rule rule(const AlphabetPtr& alpha, std::string_view lhs, std::string_view rhs) {
  return Rule(w(alpha, lhs), w(alpha, rhs));
}

inline AlphabetPtr alphabet_bc() { return Alphabet::make_chars("bc"); }

/// One-rule system { cbc -> c } over {b, c}.
inline RewriteSystem system_cbc(const AlphabetPtr& bc) {
  return RewriteSystem(bc, {rule(bc, "cbc", "c")});
}

/// The eight-rule system with the seven-element quotient.
inline RewriteSystem system_eight(const AlphabetPtr& bc) {
  return RewriteSystem(bc, {
                               rule(bc, "bbb", "bb"),
                               rule(bc, "bbc", "bb"),
                               rule(bc, "cbb", "bb"),
                               rule(bc, "ccc", "bb"),
                               rule(bc, "ccb", "bb"),
                               rule(bc, "bcc", "bb"),
                               rule(bc, "bcb", "b"),
                               rule(bc, "cbc", "c"),
                           });
}

/// The five-rule subword-reducing system synthesized for (bc)+.
inline RewriteSystem system_synthesized_bc(const AlphabetPtr& bc) {
  return RewriteSystem(bc, {
                               rule(bc, "bbb", "bb"),
                               rule(bc, "cbc", "c"),
                               rule(bc, "cbbcbbc", "cbbc"),
                               rule(bc, "ccc", "cc"),
                               rule(bc, "ccbbcc", "cc"),
                           });
}

/// The six-element syntactic monoid of (bc)+, built from its relations:
/// bb = cc = 0, bcb = b, cbc = c, bc and cb idempotent. Elements are
/// indexed 1, b, c, bc, cb, 0.
inline MonoidPtr hand_monoid_bc() {
  enum : std::size_t { One, B, C, BC, CB, Zero };
  std::vector<std::vector<std::size_t>> table{
      {One, B, C, BC, CB, Zero},     {B, Zero, BC, Zero, B, Zero},
      {C, CB, Zero, C, Zero, Zero},  {BC, B, Zero, BC, Zero, Zero},
      {CB, Zero, C, Zero, CB, Zero}, {Zero, Zero, Zero, Zero, Zero, Zero},
  };
  return FiniteMonoid::make({"1", "b", "c", "bc", "cb", "0"}, One, table);
}

/// The syntactic map of (bc)+ onto hand_monoid_bc, accepting exactly [bc].
inline Morphism hand_morphism_bc(const AlphabetPtr& bc) {
  auto m = hand_monoid_bc();
  std::vector<bool> accepting(m->size(), false);
  accepting[*m->find("bc")] = true;
  return Morphism(bc, m, {*m->find("b"), *m->find("c")}, accepting);
}

/// All words over `alpha` of length <= max_len, in shortlex order.
inline std::vector<Word> words_up_to(const AlphabetPtr& alpha, std::size_t max_len) {
  std::vector<Word> out{Word(alpha, {})};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (Letter a = 0; a < alpha->size(); ++a) {
        auto letters = out[i].letters();
        letters.push_back(a);
        out.emplace_back(alpha, std::move(letters));
      }
    level_begin = level_end;
  }
  return out;
}

/// Oracle: every one-step reduct of `u`, by scanning all positions and rules
/// directly against the rewriting relation's definition.
inline std::vector<Word> one_step_reducts(const Word& u, const RewriteSystem& s) {
  std::vector<Word> out;
  for (const auto& r : s.rules()) {
    const auto& lhs = r.lhs().letters();
    const auto& rhs = r.rhs().letters();
    for (std::size_t p = 0; p + lhs.size() <= u.size(); ++p) {
      if (!std::equal(lhs.begin(), lhs.end(), u.letters().begin() + p)) continue;
      std::vector<Letter> v(u.letters().begin(), u.letters().begin() + p);
      v.insert(v.end(), rhs.begin(), rhs.end());
      v.insert(v.end(), u.letters().begin() + p + lhs.size(), u.letters().end());
      out.emplace_back(u.alphabet(), std::move(v));
    }
  }
  return out;
}

/// Oracle: the set of all irreducible descendants of `u`, via the full
/// reduction graph.
inline std::set<std::vector<Letter>> all_normal_forms(const Word& u,
                                                      const RewriteSystem& s) {
  std::set<std::vector<Letter>> seen{u.letters()};
  std::vector<Word> queue{u};
  std::set<std::vector<Letter>> normal;
  while (!queue.empty()) {
    Word current = queue.back();
    queue.pop_back();
    auto reducts = one_step_reducts(current, s);
    if (reducts.empty()) {
      normal.insert(current.letters());
      continue;
    }
    for (auto& v : reducts)
      if (seen.insert(v.letters()).second) queue.push_back(v);
  }
  return normal;
}

/// Oracle: irreducibility by naive factor scan.
inline bool naive_irreducible(const Word& u, const RewriteSystem& s) {
  for (const auto& r : s.rules())
    if (is_factor(r.lhs(), u)) return false;
  return true;
}

}  // namespace fixtures
