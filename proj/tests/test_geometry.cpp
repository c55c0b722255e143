#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <vector>

#include "sepcay/geometry.hpp"
#include "sepcay/quasimorphism.hpp"
#include "sepcay/whitehead.hpp"
#include "sepcay/word.hpp"

using namespace sepcay;

namespace {

bool factorization_valid(const Word& g, const std::vector<Word>& factors) {
  Word acc = identity_word(g.rank);
  for (const Word& f : factors) {
    if (f.empty() || !is_separable(f).separable) return false;
    acc = multiply(acc, f);
  }
  return acc.letters == g.letters;
}

}  // namespace

TEST_CASE("greedy upper bound on known words") {
  CHECK(sep_norm_upper(identity_word(2)).value == 0);
  CHECK(sep_norm_upper(parse_word(2, "a")).value == 1);
  CHECK(sep_norm_upper(parse_word(2, "abab")).value == 1);

  const SepNormUpper up = sep_norm_upper(parse_word(2, "aabba"));
  CHECK(up.value == 2);
  CHECK(factorization_valid(parse_word(2, "aabba"), up.factors));
}

TEST_CASE("greedy factors are always separable and rebuild the word") {
  Rng rng(61);
  SeparabilityCache cache;
  for (int trial = 0; trial < 30; ++trial) {
    const Word g = random_reduced_word(2, static_cast<int>(rng.below(9)), rng);
    const SepNormUpper up = sep_norm_upper(g, cache);
    CHECK(up.value == static_cast<long long>(up.factors.size()));
    CHECK(up.value <= static_cast<long long>(g.size()));
    CHECK(factorization_valid(g, up.factors));
  }
}

TEST_CASE("default witness defect for rank two") {
  const DefectBound d = default_sep_defect(2, {1, 2});
  CHECK(d.bound == Rational(1));
  CHECK(d.method == DefectBound::Method::exhaustive);
  CHECK(d.scope == 4);
  CHECK_THROWS_AS(default_sep_defect(2, {}), std::invalid_argument);
}

TEST_CASE("witness lower bound on known words") {
  const DefectBound d = default_sep_defect(2, {1, 2});

  const SepNormLower lo = sep_norm_lower(parse_word(2, "aabba"), {1, 2}, d);
  CHECK(lo.value == 2);
  CHECK(lo.witness_k == 1);

  // All witnesses vanish on this separable word.
  const SepNormLower zero = sep_norm_lower(parse_word(2, "abab"), {1, 2}, d);
  CHECK(zero.value == 0);
  CHECK(zero.witness_k == 0);

  CHECK(sep_norm_lower(identity_word(2), {1}, d).value == 0);

  // Powers of the witness pattern push the bound up linearly.
  for (long long r : {2, 5, 9}) {
    const SepNormLower lr = sep_norm_lower(power(make_pk(2, 1), r), {1}, d);
    CHECK(lr.value == r);
    CHECK(lr.witness_k == 1);
  }
}

TEST_CASE("lower bound needs a usable defect when a witness fires") {
  DefectBound zero;
  zero.bound = Rational(0);
  CHECK_THROWS_AS(sep_norm_lower(parse_word(2, "aabba"), {1}, zero),
                  precondition_error);
  // No witness fires, so the degenerate defect is never consulted.
  CHECK(sep_norm_lower(parse_word(2, "abab"), {1}, zero).value == 0);
  CHECK_THROWS_AS(
      sep_norm_lower(parse_word(2, "a"), {}, default_sep_defect(2, {1})),
      std::invalid_argument);
}

TEST_CASE("combined bounds sandwich the pinned example") {
  SeparabilityCache cache;
  const DefectBound d = default_sep_defect(2, {1, 2});
  const SepNormBounds b =
      sep_norm_bounds(parse_word(2, "aabba"), {1, 2}, d, cache);
  CHECK(b.lower == 2);
  CHECK(b.upper == 2);
  CHECK(b.witness_k == 1);
  CHECK(b.factorization.size() == 2);
  CHECK(b.defect_used.bound == Rational(1));
}

TEST_CASE("bfs oracle distances on known words") {
  SeparabilityCache cache;
  CHECK(sep_norm_bfs(identity_word(2), 3, 2, cache).distance == 0);
  CHECK(sep_norm_bfs(parse_word(2, "abab"), 4, 3, cache).distance == 1);

  const BfsResult r = sep_norm_bfs(parse_word(2, "aabba"), 5, 3, cache);
  REQUIRE(r.distance.has_value());
  CHECK(*r.distance == 2);
  CHECK(r.explored > 0);

  // Radius too small to reach a non-separable word: honest miss, no throw.
  const BfsResult miss = sep_norm_bfs(parse_word(2, "aabba"), 5, 1, cache);
  CHECK_FALSE(miss.distance.has_value());
  CHECK(miss.explored > 0);

  CHECK_THROWS_AS(sep_norm_bfs(parse_word(2, "a"), 0, 1, cache),
                  std::invalid_argument);
}

TEST_CASE("bfs distances respect the bound sandwich") {
  SeparabilityCache cache;
  const DefectBound d = default_sep_defect(2, {1, 2});
  Rng rng(67);
  for (int trial = 0; trial < 15; ++trial) {
    const Word g = random_reduced_word(2, 1 + static_cast<int>(rng.below(5)), rng);
    const SepNormBounds b = sep_norm_bounds(g, {1, 2}, d, cache);
    const BfsResult r = sep_norm_bfs(g, 5, 4, cache);
    REQUIRE(r.distance.has_value());
    CHECK(b.lower <= *r.distance);
    CHECK(*r.distance <= b.upper);
  }
}

TEST_CASE("distance field agrees with the single-target oracle") {
  SeparabilityCache cache;
  const BfsField field = bfs_distance_field(2, 4, 3, 6, cache);
  CHECK_FALSE(field.budget_hit);
  CHECK(field.dist.at(word_key(identity_word(2))) == 0);
  CHECK(field.dist.at(word_key(parse_word(2, "abab"))) == 1);
  CHECK(field.dist.at(word_key(parse_word(2, "aabba"))) == 2);

  // The generating set is symmetric, so distances are inversion invariant.
  for (const char* text : {"aabba", "abab", "aabb", "ba"}) {
    const Word w = parse_word(2, text);
    CHECK(field.dist.at(word_key(w)) == field.dist.at(word_key(invert(w))));
  }

  // A tiny node budget is reported, not thrown.
  SeparabilityCache cache2;
  const BfsField tiny = bfs_distance_field(2, 3, 2, 5, cache2, 10);
  CHECK(tiny.budget_hit);
}

TEST_CASE("default flat spec pairs witnesses with basepoints diagonally") {
  const FlatSpec spec = make_flat_spec(2, 2);
  CHECK(spec.m == 2);
  CHECK(print_word(spec.basepoints[0]) == "aabba");
  CHECK(print_word(spec.basepoints[1]) == "aaabbba");
  CHECK(spec.pairing == std::vector<std::vector<long long>>{{1, 0}, {0, 1}});
  CHECK(print_word(flat_point(spec, {1, 1})) == "aabbaaaabbba");
  CHECK(flat_point(spec, {0, 0}).empty());
  CHECK_THROWS_AS(flat_point(spec, {1}), std::invalid_argument);
}

TEST_CASE("flat spec construction rejects bad direction data") {
  CHECK_THROWS_AS(make_flat_spec(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_flat_spec(9, 2), precondition_error);
  // Repeated basepoints give a singular pairing.
  const Word p1 = make_pk(2, 1);
  CHECK_THROWS_AS(make_flat_spec(std::vector<Word>{p1, p1}, 2),
                  precondition_error);
  CHECK_THROWS_AS(make_flat_spec(std::vector<Word>{identity_word(2)}, 2),
                  std::invalid_argument);
}

TEST_CASE("step factorization rebuilds the difference from separable pieces") {
  const FlatSpec spec = make_flat_spec(2, 2);
  Rng rng(71);
  SeparabilityCache cache;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<long long> i = {rng.in_range(-3, 3), rng.in_range(-3, 3)};
    std::vector<long long> ip = {rng.in_range(-3, 3), rng.in_range(-3, 3)};
    const std::vector<Word> factors = flat_step_factorization(spec, i, ip);
    const long long l1 = std::llabs(i[0] - ip[0]) + std::llabs(i[1] - ip[1]);
    CHECK(static_cast<long long>(factors.size()) == 2 * l1);
    Word acc = identity_word(2);
    for (const Word& f : factors) {
      CHECK(is_separable_cached(f, cache));
      acc = multiply(acc, f);
    }
    const Word expected =
        multiply(flat_point(spec, i), invert(flat_point(spec, ip)));
    CHECK(acc.letters == expected.letters);
  }
}

TEST_CASE("flat certificate summary is frozen for small parameters") {
  const FlatSpec spec = make_flat_spec(2, 2);
  const FlatCertificate cert = flat_certificate(spec, 3, 25, 7);
  CHECK(cert.lipschitz_upper_verified);
  CHECK(cert.rows_consistent);
  CHECK(cert.max_additive_error == 2);
  CHECK(cert.lower_slope == Rational(1, 2));
  CHECK(cert.measured_c == Rational(3, 2));
  CHECK(cert.defect_used.bound == Rational(1));
  CHECK(cert.rows.size() == 25);
  for (const FlatRow& row : cert.rows) {
    CHECK(row.lower <= row.upper);
    CHECK(row.upper <= 2 * 2 * cert.range * 2);  // 2 l1 <= 2 * m * 2 range
  }

  // Same seed, same certificate.
  const FlatCertificate again = flat_certificate(spec, 3, 25, 7);
  CHECK(again.max_additive_error == cert.max_additive_error);
  CHECK(again.measured_c == cert.measured_c);
  REQUIRE(again.rows.size() == cert.rows.size());
  for (size_t t = 0; t < cert.rows.size(); ++t) {
    CHECK(again.rows[t].i == cert.rows[t].i);
    CHECK(again.rows[t].upper == cert.rows[t].upper);
    CHECK(again.rows[t].lower == cert.rows[t].lower);
  }

  CHECK_THROWS_AS(flat_certificate(spec, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(flat_certificate(spec, 3, 0, 1), std::invalid_argument);
}

TEST_CASE("quotient lower bound is the pure witness formula") {
  const DefectBound d = default_sep_defect(2, {1});
  const Word p1 = make_pk(2, 1);
  const Word id = identity_word(2);
  for (long long r : {1, 3, 7, 20}) {
    CHECK(quotient_dist_lower(power(p1, r), id, {1}, d) == r);
  }
  // No non-separability floor on the quotient: a unit witness stays at 1.
  CHECK(quotient_dist_lower(p1, id, {1}, d) == 1);
  CHECK(quotient_dist_lower(parse_word(2, "abab"), id, {1, 2}, d) == 0);
  CHECK_THROWS_AS(quotient_dist_lower(p1, id, {}, d), std::invalid_argument);
}

TEST_CASE("quotient upper bound minimizes over conjugators") {
  // baB is conjugate to a, so the class distance collapses to zero.
  const Word g = parse_word(2, "baB");
  const Word h = parse_word(2, "a");
  CHECK(quotient_dist_upper(g, h, 0) == 2);
  CHECK(quotient_dist_upper(g, h, 1) == 0);
  CHECK(quotient_dist_upper(make_pk(2, 1), identity_word(2), 0) == 2);
  CHECK_THROWS_AS(quotient_dist_upper(g, h, -1), std::invalid_argument);
}
