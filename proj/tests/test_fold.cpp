#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "sepcay/fold.hpp"
#include "sepcay/word.hpp"

using namespace sepcay;

namespace {

std::vector<Word> words(int rank, const std::vector<const char*>& texts) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(parse_word(rank, t));
  return out;
}

}  // namespace

TEST_CASE("standard generators span the whole group") {
  const SubgroupGraph g(2, words(2, {"a", "b"}));
  CHECK(g.generates_whole());
  CHECK(is_basis(2, words(2, {"a", "b"})));
}

TEST_CASE("free substitutions of a basis stay a basis") {
  CHECK(is_basis(2, words(2, {"ab", "b"})));
  CHECK(is_basis(2, words(2, {"aba", "ab"})));
  CHECK(is_basis(3, words(3, {"a", "ab", "abc"})));
}

TEST_CASE("proper subgroups are detected") {
  CHECK_FALSE(is_basis(2, words(2, {"aa", "b"})));
  CHECK_FALSE(is_basis(2, words(2, {"a"})));
  CHECK_FALSE(is_basis(2, words(2, {"a", "b", "ab"})));  // wrong count
  const SubgroupGraph g(2, words(2, {"aa", "b"}));
  CHECK_FALSE(g.generates_whole());
}

TEST_CASE("membership follows folded edges") {
  const SubgroupGraph g(2, words(2, {"aa", "b"}));
  CHECK(g.contains(parse_word(2, "aa")));
  CHECK(g.contains(parse_word(2, "aabaa")));
  CHECK(g.contains(parse_word(2, "AA")));
  CHECK(g.contains(identity_word(2)));
  CHECK_FALSE(g.contains(parse_word(2, "a")));
  CHECK_FALSE(g.contains(parse_word(2, "ab")));
}

TEST_CASE("identity generators collapse to the trivial subgroup") {
  const SubgroupGraph g(2, words(2, {"", ""}));
  CHECK(g.contains(identity_word(2)));
  CHECK_FALSE(g.contains(parse_word(2, "a")));
  CHECK_FALSE(g.generates_whole());
}

TEST_CASE("membership is closed under products and inverses") {
  Rng rng(55);
  const std::vector<Word> gens = words(2, {"abA", "bb"});
  const SubgroupGraph g(2, gens);
  Word acc = identity_word(2);
  for (int step = 0; step < 200; ++step) {
    const Word& pick = gens[rng.below(gens.size())];
    acc = rng.below(2) ? multiply(acc, pick) : multiply(acc, invert(pick));
    CHECK(g.contains(acc));
  }
}
