#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "crs/words.hpp"

using namespace crs;

namespace {

// All words over `alpha` of length <= max_len, in shortlex order.
std::vector<Word> words_up_to(const AlphabetPtr& alpha, std::size_t max_len) {
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

}  // namespace

TEST_CASE("factor predicate", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto w = [&](std::string_view s) { return Word::parse(bc, s); };

  CHECK(is_factor(w("cbc"), w("bcbcbc")));
  CHECK_FALSE(is_factor(w("bb"), w("bcb")));
  CHECK(is_factor(w(""), w("bcb")));
  CHECK(is_factor(w(""), w("")));
  CHECK(find_factor(w("cbc"), w("bcbcbc")) == 1);

  auto other = Alphabet::make_chars("ab");
  CHECK_THROWS_AS(is_factor(Word::parse(other, "a"), w("bc")), input_error);
}

TEST_CASE("subword predicate", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto w = [&](std::string_view s) { return Word::parse(bc, s); };

  CHECK(is_subword(w("bb"), w("bcb")));
  CHECK_FALSE(is_subword(w("cb"), w("bc")));
  CHECK(is_subword(w(""), w("bcbcb")));
  CHECK(is_subword(w(""), w("")));
}

TEST_CASE("factor implies subword; subword is a partial order", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto small = words_up_to(bc, 4);
  auto big = words_up_to(bc, 6);

  for (const auto& u : small)
    for (const auto& v : big) {
      if (is_factor(u, v)) CHECK(is_subword(u, v));
      if (is_subword(u, v) && u.size() == v.size()) CHECK(u == v);
    }
  for (const auto& u : small) CHECK(is_subword(u, u));

  // Transitivity on a modest triple space.
  auto tiny = words_up_to(bc, 3);
  for (const auto& u : tiny)
    for (const auto& v : tiny)
      for (const auto& x : small)
        if (is_subword(u, v) && is_subword(v, x)) CHECK(is_subword(u, x));
}

TEST_CASE("alphabet construction and restriction", "[words]") {
  CHECK_THROWS_AS(Alphabet::make({"b", "b"}), input_error);
  auto bc = Alphabet::make_chars("bc");
  CHECK(bc->size() == 2);
  CHECK(bc->find("c") == 1);
  CHECK_FALSE(bc->find("d").has_value());

  auto b = bc->without(1);
  CHECK(b->size() == 1);
  CHECK(b->token(0) == "b");
  CHECK_FALSE(b->has_base());

  // Restriction keeps expansions on derived alphabets.
  auto code = derive_code_alphabet(
      bc, {Word::parse(bc, "c"), Word::parse(bc, "bc"), Word::parse(bc, "bbc")});
  auto restricted = code->without(0);
  REQUIRE(restricted->size() == 2);
  CHECK(restricted->token(0) == "k1");
  CHECK(restricted->expansion(0) == Word::parse(bc, "bc"));
  CHECK(restricted->expansion(1) == Word::parse(bc, "bbc"));
}

TEST_CASE("derive_code_alphabet", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto code = derive_code_alphabet(
      bc, {Word::parse(bc, "c"), Word::parse(bc, "bc"), Word::parse(bc, "bbc")});
  REQUIRE(code->size() == 3);
  CHECK(code->has_base());
  CHECK(code->expansion(0) == Word::parse(bc, "c"));
  CHECK(code->expansion(1) == Word::parse(bc, "bc"));
  CHECK(code->expansion(2) == Word::parse(bc, "bbc"));
  CHECK(code->token(0) == "k0");

  auto c_only = Alphabet::make_chars("c");
  auto one = derive_code_alphabet(c_only, {Word::parse(c_only, "c")});
  CHECK(one->size() == 1);

  CHECK_THROWS_AS(
      derive_code_alphabet(bc, {Word::parse(bc, "c"), Word::parse(bc, "c")}),
      input_error);
  CHECK_THROWS_AS(derive_code_alphabet(bc, {Word(bc, {})}), input_error);
}

TEST_CASE("expand", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto code = derive_code_alphabet(
      bc, {Word::parse(bc, "c"), Word::parse(bc, "bc"), Word::parse(bc, "bbc")});

  CHECK(expand(Word(code, {2, 2})) == Word::parse(bc, "bbcbbc"));
  CHECK(expand(Word(code, {})) == Word(bc, {}));
  CHECK_THROWS_AS(expand(Word::parse(bc, "b")), input_error);
}

TEST_CASE("expand flattens nested derivations", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto k1 = derive_code_alphabet(
      bc, {Word::parse(bc, "c"), Word::parse(bc, "bc"), Word::parse(bc, "bbc")});
  // A second-level code whose letters are words over k1.
  auto k2 = derive_code_alphabet(k1, {Word(k1, {1}), Word(k1, {2, 0}), Word(k1, {0})});

  // Flattening in one call agrees with expanding level by level, for every
  // word over k2 up to length 4.
  for (const auto& w : words_up_to(k2, 4)) {
    Word two_step = expand_once(expand_once(w));
    CHECK(expand(w) == two_step);
    CHECK(two_step.alphabet() == bc);
  }
  CHECK(expand(Word(k2, {1})) == Word::parse(bc, "bbcc"));
}

TEST_CASE("decode_over_code", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto code = derive_code_alphabet(
      bc, {Word::parse(bc, "c"), Word::parse(bc, "bc"), Word::parse(bc, "bbc")});

  auto decoded = decode_over_code(Word::parse(bc, "bcc"), code);
  REQUIRE(decoded.has_value());
  CHECK(*decoded == Word(code, {1, 0}));

  CHECK_FALSE(decode_over_code(Word::parse(bc, "b"), code).has_value());
  auto empty = decode_over_code(Word(bc, {}), code);
  REQUIRE(empty.has_value());
  CHECK(empty->empty());

  // Words with a segment that is not a codeword are rejected.
  CHECK_FALSE(decode_over_code(Word::parse(bc, "bbbc"), code).has_value());

  // Shape violations: mismatched terminal letters, repeated marker.
  auto bad = derive_code_alphabet(bc, {Word::parse(bc, "c"), Word::parse(bc, "cb")});
  CHECK_THROWS_AS(decode_over_code(Word::parse(bc, "b"), bad), input_error);
  auto doubled = derive_code_alphabet(bc, {Word::parse(bc, "cc")});
  CHECK_THROWS_AS(decode_over_code(Word::parse(bc, "cc"), doubled), input_error);
}

TEST_CASE("decode and expand are mutually inverse", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto code = derive_code_alphabet(
      bc, {Word::parse(bc, "c"), Word::parse(bc, "bc"), Word::parse(bc, "bbc")});

  for (const auto& x : words_up_to(code, 4)) {
    auto back = decode_over_code(expand(x), code);
    REQUIRE(back.has_value());
    CHECK(*back == x);
  }
  for (const auto& w : words_up_to(bc, 7)) {
    auto d = decode_over_code(w, code);
    if (d) CHECK(expand(*d) == w);
  }
}

TEST_CASE("embed moves words between sub-alphabets", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto b = bc->without(1);
  CHECK(embed(Word::parse(b, "bb"), bc) == Word::parse(bc, "bb"));
  CHECK(embed(Word::parse(bc, "bb"), b) == Word::parse(b, "bb"));
  CHECK_THROWS_AS(embed(Word::parse(bc, "bc"), b), input_error);
}

TEST_CASE("shortlex order", "[words]") {
  auto bc = Alphabet::make_chars("bc");
  auto w = [&](std::string_view s) { return Word::parse(bc, s); };
  CHECK(shortlex_less(w(""), w("b")));
  CHECK(shortlex_less(w("c"), w("bb")));
  CHECK(shortlex_less(w("bb"), w("bc")));
  CHECK_FALSE(shortlex_less(w("bc"), w("bc")));
}
