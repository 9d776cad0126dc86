#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crs/error.hpp"
#include "crs/monoid.hpp"
#include "crs/words.hpp"

namespace crs {

/// One rewriting rule lhs -> rhs. Both sides are over the same alphabet,
/// the left side is nonempty and differs from the right side.
class Rule {
 public:
  Rule(Word lhs, Word rhs) : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
    require_same_alphabet(lhs_, rhs_);
    if (lhs_.empty()) throw input_error("rule left side must be nonempty");
    if (lhs_ == rhs_) throw input_error("rule sides must differ");
  }

  const Word& lhs() const noexcept { return lhs_; }
  const Word& rhs() const noexcept { return rhs_; }

  bool operator==(const Rule& other) const {
    return lhs_ == other.lhs_ && rhs_ == other.rhs_;
  }
  bool operator!=(const Rule& other) const { return !(*this == other); }

 private:
  Word lhs_, rhs_;
};

/// A finite semi-Thue system. The rule order is part of the value: it fixes
/// tie-breaking in the reduction strategy.
class RewriteSystem {
 public:
  RewriteSystem(AlphabetPtr alphabet, std::vector<Rule> rules)
      : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
    if (!alphabet_) throw input_error("rewrite system requires an alphabet");
    std::map<std::pair<std::vector<Letter>, std::vector<Letter>>, bool> seen;
    for (const auto& r : rules_) {
      if (!same_alphabet(r.lhs().alphabet(), alphabet_))
        throw input_error("rule is not over the system's alphabet");
      if (!seen.emplace(std::pair{r.lhs().letters(), r.rhs().letters()}, true).second)
        throw input_error("duplicate rule " + r.lhs().str());
    }
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }

  bool operator==(const RewriteSystem& other) const {
    return same_alphabet(alphabet_, other.alphabet_) && rules_ == other.rules_;
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<Rule> rules_;
};

// ---------------------------------------------------------------------------
// Classification.

struct Classification {
  bool length_reducing = true;
  bool subword_reducing = true;
  std::optional<std::size_t> length_witness;   // first rule with |lhs| <= |rhs|
  std::optional<std::size_t> subword_witness;  // first rule whose rhs does not embed
};

inline Classification classify_system(const RewriteSystem& s) {
  Classification out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rule& r = s.rules()[i];
    if (r.lhs().size() <= r.rhs().size() && !out.length_witness) {
      out.length_reducing = false;
      out.length_witness = i;
    }
    if (!is_subword(r.rhs(), r.lhs()) && !out.subword_witness) {
      out.subword_reducing = false;
      out.subword_witness = i;
    }
  }
  return out;
}

inline void require_length_reducing(const RewriteSystem& s) {
  auto c = classify_system(s);
  if (!c.length_reducing)
    throw input_error("system is not length-reducing (rule " +
                      std::to_string(*c.length_witness) +
                      "); termination is not guaranteed");
}

// ---------------------------------------------------------------------------
// Normal forms.

struct ReductionStep {
  std::size_t position;
  std::size_t rule;
  Word result;  // the word after this step
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

namespace detail {

// Deterministic strategy: leftmost redex; there, longest lhs; ties by rule
// index. Requires a length-reducing system.
inline Word normal_form_impl(const Word& w, const RewriteSystem& s,
                             ReductionTrace* trace) {
  if (!same_alphabet(w.alphabet(), s.alphabet()))
    throw input_error("word is not over the system's alphabet");
  require_length_reducing(s);

  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.rules()[a].lhs().size() > s.rules()[b].lhs().size();
  });
  std::size_t max_lhs = 0;
  for (const auto& r : s.rules()) max_lhs = std::max(max_lhs, r.lhs().size());

  std::vector<Letter> buf = w.letters();
  std::size_t pos = 0;
  while (pos < buf.size()) {
    bool rewrote = false;
    for (std::size_t idx : order) {
      const auto& lhs = s.rules()[idx].lhs().letters();
      if (pos + lhs.size() > buf.size()) continue;
      if (!std::equal(lhs.begin(), lhs.end(), buf.begin() + pos)) continue;
      const auto& rhs = s.rules()[idx].rhs().letters();
      buf.erase(buf.begin() + pos, buf.begin() + pos + lhs.size());
      buf.insert(buf.begin() + pos, rhs.begin(), rhs.end());
      if (trace)
        trace->steps.push_back({pos, idx, Word(s.alphabet(), buf)});
      pos = pos > max_lhs - 1 ? pos - (max_lhs - 1) : 0;
      rewrote = true;
      break;
    }
    if (!rewrote) ++pos;
  }
  return Word(s.alphabet(), std::move(buf));
}

}  // namespace detail

inline Word normal_form(const Word& w, const RewriteSystem& s) {
  return detail::normal_form_impl(w, s, nullptr);
}

inline Word normal_form(const Word& w, const RewriteSystem& s,
                        ReductionTrace& trace) {
  return detail::normal_form_impl(w, s, &trace);
}

inline bool is_irreducible(const Word& w, const RewriteSystem& s) {
  for (const auto& r : s.rules())
    if (is_factor(r.lhs(), w)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Critical pairs and confluence.

struct CriticalPair {
  Word superposition;
  Word left;   // one-step reduct by rule_i at position 0
  Word right;  // one-step reduct by rule_j at `offset`
  std::size_t rule_i = 0;
  std::size_t rule_j = 0;
  std::size_t offset = 0;
  enum class Kind { Overlap, Containment } kind = Kind::Overlap;

  std::string describe() const {
    std::string k = kind == Kind::Overlap ? "overlap" : "containment";
    return k + " of rule " + std::to_string(rule_i) + " and rule " +
           std::to_string(rule_j) + " at offset " + std::to_string(offset) +
           " in '" + superposition.str() + "'";
  }
};

/// All critical pairs: suffix/prefix overlaps of two left sides and
/// containments of one left side in another. Each pair holds the two
/// one-step descendants of the superposition word.
inline std::vector<CriticalPair> critical_pairs(const RewriteSystem& s) {
  std::vector<CriticalPair> out;
  const auto& alpha = s.alphabet();
  auto splice = [&](const std::vector<Letter>& base, std::size_t at,
                    std::size_t drop, const std::vector<Letter>& insert) {
    std::vector<Letter> v(base.begin(), base.begin() + at);
    v.insert(v.end(), insert.begin(), insert.end());
    v.insert(v.end(), base.begin() + at + drop, base.end());
    return Word(alpha, std::move(v));
  };

  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& li = s.rules()[i].lhs().letters();
    const auto& ri = s.rules()[i].rhs().letters();
    for (std::size_t j = 0; j < s.size(); ++j) {
      const auto& lj = s.rules()[j].lhs().letters();
      const auto& rj = s.rules()[j].rhs().letters();

      // Proper overlap: a nonempty proper suffix of lhs_i equals a proper
      // prefix of lhs_j; the superposition glues them on that border.
      for (std::size_t k = 1; k < std::min(li.size(), lj.size()); ++k) {
        if (!std::equal(li.end() - k, li.end(), lj.begin())) continue;
        std::vector<Letter> sup(li.begin(), li.end());
        sup.insert(sup.end(), lj.begin() + k, lj.end());
        CriticalPair cp;
        cp.superposition = Word(alpha, sup);
        cp.left = splice(sup, 0, li.size(), ri);
        cp.right = splice(sup, li.size() - k, lj.size(), rj);
        cp.rule_i = i;
        cp.rule_j = j;
        cp.offset = li.size() - k;
        cp.kind = CriticalPair::Kind::Overlap;
        out.push_back(std::move(cp));
      }

      // Containment of lhs_j inside lhs_i (distinct rules only; a rule
      // trivially contains itself).
      if (i == j) continue;
      for (std::size_t p = 0; p + lj.size() <= li.size(); ++p) {
        if (!std::equal(lj.begin(), lj.end(), li.begin() + p)) continue;
        CriticalPair cp;
        cp.superposition = s.rules()[i].lhs();
        cp.left = s.rules()[i].rhs();
        cp.right = splice(li, p, lj.size(), rj);
        cp.rule_i = i;
        cp.rule_j = j;
        cp.offset = p;
        cp.kind = CriticalPair::Kind::Containment;
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

struct ConfluenceResult {
  bool confluent = true;
  std::optional<CriticalPair> pair;       // the non-joinable pair
  std::optional<Word> left_normal_form;   // distinct normal forms reached
  std::optional<Word> right_normal_form;  // from pair->superposition
};

/// Critical-pair joinability. Termination comes from length reduction, so
/// local confluence decides confluence; non-length-reducing systems are
/// rejected.
inline ConfluenceResult is_confluent(const RewriteSystem& s) {
  require_length_reducing(s);
  ConfluenceResult out;
  for (auto& cp : critical_pairs(s)) {
    Word nl = normal_form(cp.left, s);
    Word nr = normal_form(cp.right, s);
    if (nl != nr) {
      out.confluent = false;
      out.left_normal_form = std::move(nl);
      out.right_normal_form = std::move(nr);
      out.pair = std::move(cp);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Irreducible words.

struct IrreducibleSet {
  enum class Kind { Finite, Infinite, BudgetExceeded };
  Kind kind = Kind::Finite;
  std::vector<Word> words;  // shortlex order; filled only when Finite
};

namespace detail {

// Dictionary-matching automaton over the left-hand sides: trie states with
// failure links, transitions completed through the failures. A state is dead
// when some left side ends at it (directly or through the failure chain);
// IRR(S) is the set of label words of root paths avoiding dead states.
struct AvoidanceAutomaton {
  std::size_t alphabet_size = 0;
  std::vector<std::vector<std::size_t>> next;  // state x letter -> state
  std::vector<bool> dead;

  explicit AvoidanceAutomaton(const RewriteSystem& s)
      : alphabet_size(s.alphabet()->size()) {
    const std::size_t k = alphabet_size;
    std::vector<std::vector<long>> child{std::vector<long>(k, -1)};
    std::vector<bool> terminal{false};
    for (const auto& r : s.rules()) {
      std::size_t state = 0;
      for (Letter a : r.lhs().letters()) {
        if (child[state][a] < 0) {
          child[state][a] = static_cast<long>(child.size());
          child.emplace_back(k, -1);
          terminal.push_back(false);
        }
        state = static_cast<std::size_t>(child[state][a]);
      }
      terminal[state] = true;
    }

    const std::size_t n = child.size();
    next.assign(n, std::vector<std::size_t>(k, 0));
    std::vector<std::size_t> fail(n, 0);
    dead.assign(n, false);
    dead[0] = terminal[0];
    std::deque<std::size_t> queue;
    for (Letter a = 0; a < k; ++a) {
      if (child[0][a] < 0) {
        next[0][a] = 0;
        continue;
      }
      auto c = static_cast<std::size_t>(child[0][a]);
      next[0][a] = c;
      fail[c] = 0;
      queue.push_back(c);
    }
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      dead[u] = terminal[u] || dead[fail[u]];
      for (Letter a = 0; a < k; ++a) {
        if (child[u][a] < 0) {
          next[u][a] = next[fail[u]][a];
          continue;
        }
        auto c = static_cast<std::size_t>(child[u][a]);
        next[u][a] = c;
        fail[c] = next[fail[u]][a];
        queue.push_back(c);
      }
    }
  }

  /// True iff some cycle of live states is reachable from the root through
  /// live states; equivalently, IRR(S) is infinite.
  bool has_live_cycle() const {
    enum : unsigned char { White, Grey, Black };
    if (dead[0]) return false;
    std::vector<unsigned char> color(next.size(), White);
    std::vector<std::pair<std::size_t, Letter>> stack{{0, 0}};
    color[0] = Grey;
    while (!stack.empty()) {
      auto& [u, a] = stack.back();
      if (a == alphabet_size) {
        color[u] = Black;
        stack.pop_back();
        continue;
      }
      std::size_t v = next[u][a];
      ++a;
      if (dead[v]) continue;
      if (color[v] == Grey) return true;
      if (color[v] == White) {
        color[v] = Grey;
        stack.emplace_back(v, 0);
      }
    }
    return false;
  }
};

}  // namespace detail

/// Enumerates IRR(S). Returns Infinite when the avoidance automaton has a
/// live cycle, BudgetExceeded when the set is finite but larger than
/// `budget`, and otherwise the full set in shortlex order.
inline IrreducibleSet irreducibles(const RewriteSystem& s,
                                   std::size_t budget = 1'000'000) {
  detail::AvoidanceAutomaton automaton(s);
  IrreducibleSet out;
  if (automaton.has_live_cycle()) {
    out.kind = IrreducibleSet::Kind::Infinite;
    return out;
  }
  if (automaton.dead[0]) {  // unreachable with nonempty left sides
    out.kind = IrreducibleSet::Kind::Finite;
    return out;
  }

  // Level-order walk emits shortlex order: frontiers are lexicographically
  // sorted and letters are tried in alphabet order.
  std::vector<std::pair<std::size_t, std::vector<Letter>>> frontier{{0, {}}};
  while (!frontier.empty()) {
    std::vector<std::pair<std::size_t, std::vector<Letter>>> next_frontier;
    for (auto& [state, letters] : frontier) {
      if (out.words.size() >= budget) {
        out.kind = IrreducibleSet::Kind::BudgetExceeded;
        out.words.clear();
        return out;
      }
      out.words.emplace_back(s.alphabet(), letters);
      for (Letter a = 0; a < automaton.alphabet_size; ++a) {
        std::size_t v = automaton.next[state][a];
        if (automaton.dead[v]) continue;
        auto extended = letters;
        extended.push_back(a);
        next_frontier.emplace_back(v, std::move(extended));
      }
    }
    frontier = std::move(next_frontier);
  }
  out.kind = IrreducibleSet::Kind::Finite;
  return out;
}

// ---------------------------------------------------------------------------
// Quotient monoid.

/// The quotient monoid of a confluent length-reducing system with finitely
/// many irreducible words, together with the canonical projection.
struct Quotient {
  MonoidPtr monoid;
  Morphism projection;                // letters to their classes
  std::vector<Word> representatives;  // IRR(S), shortlex; indexes the monoid
};

inline Quotient quotient(const RewriteSystem& s, std::size_t budget = 1'000'000,
                         std::uint64_t seed = FiniteMonoid::kDefaultSeed) {
  require_length_reducing(s);
  if (auto conf = is_confluent(s); !conf.confluent)
    throw input_error("quotient requires a confluent system; " +
                      conf.pair->describe() + " is not joinable");
  auto irr = irreducibles(s, budget);
  if (irr.kind == IrreducibleSet::Kind::Infinite)
    throw input_error("quotient requires finitely many irreducible words");
  if (irr.kind == IrreducibleSet::Kind::BudgetExceeded)
    throw budget_error("irreducible enumeration exceeded budget", {});

  const std::size_t n = irr.words.size();
  std::map<std::vector<Letter>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(irr.words[i].letters(), i);
  auto class_of = [&](const Word& w) {
    auto it = index.find(normal_form(w, s).letters());
    if (it == index.end()) throw input_error("normal form escaped the enumeration");
    return it->second;
  };

  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table[i][j] = class_of(concat(irr.words[i], irr.words[j]));

  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& w : irr.words) names.push_back(w.empty() ? "1" : w.str());

  Quotient out;
  out.monoid = FiniteMonoid::make(std::move(names), index.at({}), table, seed);
  std::vector<std::size_t> images;
  images.reserve(s.alphabet()->size());
  for (Letter a = 0; a < s.alphabet()->size(); ++a)
    images.push_back(class_of(Word(s.alphabet(), {a})));
  out.projection = Morphism(s.alphabet(), out.monoid, std::move(images));
  out.representatives = std::move(irr.words);
  return out;
}

}  // namespace crs
