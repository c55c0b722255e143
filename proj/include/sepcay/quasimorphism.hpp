#pragma once

// Counting quasimorphisms on F_n built from occurrence counts of a fixed
// pattern word, the generator family p_k, exact homogenization by cyclic
// counting, and empirical defect bounds.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "sepcay/word.hpp"

namespace sepcay {

using Rational = boost::rational<long long>;

struct CountingQuasimorphism {
  Word pattern;
  int rank = 2;
};

inline CountingQuasimorphism make_counting_qm(const Word& pattern) {
  if (pattern.empty())
    throw std::invalid_argument("counting quasimorphism needs a nonempty pattern");
  return CountingQuasimorphism{pattern, pattern.rank};
}

namespace detail {

// Standard failure function; patterns are short, texts can be long.
inline std::vector<int> kmp_failure(const std::vector<Letter>& p) {
  std::vector<int> fail(p.size(), 0);
  for (size_t i = 1; i < p.size(); ++i) {
    int k = fail[i - 1];
    while (k > 0 && p[i] != p[k]) k = fail[k - 1];
    if (p[i] == p[k]) ++k;
    fail[i] = k;
  }
  return fail;
}

// Number of match END positions in text, overlaps allowed. start_limit, when
// nonnegative, only counts matches whose START position is below it.
inline long long kmp_count(const std::vector<Letter>& pattern,
                           const std::vector<Letter>& text,
                           long long start_limit = -1) {
  const auto fail = kmp_failure(pattern);
  const int m = static_cast<int>(pattern.size());
  long long count = 0;
  int k = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    while (k > 0 && text[i] != pattern[k]) k = fail[k - 1];
    if (text[i] == pattern[k]) ++k;
    if (k == m) {
      const long long start = static_cast<long long>(i) - m + 1;
      if (start_limit < 0 || start < start_limit) ++count;
      k = fail[k - 1];
    }
  }
  return count;
}

}  // namespace detail

// Occurrences of pattern in text, overlaps allowed.
inline long long count_occurrences(const Word& pattern, const Word& text) {
  check_same_rank(pattern, text);
  if (pattern.empty())
    throw std::invalid_argument("occurrence counting needs a nonempty pattern");
  return detail::kmp_count(pattern.letters, text.letters);
}

// q_w(x): occurrences of the pattern minus occurrences of its inverse.
inline long long brooks_eval(const CountingQuasimorphism& q, const Word& x) {
  if (q.rank != x.rank) throw std::invalid_argument("rank mismatch");
  return count_occurrences(q.pattern, x) -
         count_occurrences(invert(q.pattern), x);
}

// p_k = a_1^{k+1} a_2^{k+1} ... a_n^{k+1} a_1, reduced and cyclically
// reduced, of length n(k+1)+1.
inline Word make_pk(int n, int k) {
  check_rank(n);
  if (k < 1) throw std::invalid_argument("p_k needs k >= 1");
  std::vector<Letter> letters;
  letters.reserve(static_cast<size_t>(n) * (k + 1) + 1);
  for (int i = 1; i <= n; ++i)
    for (int t = 0; t <= k; ++t) letters.push_back(i);
  letters.push_back(1);
  return Word{n, std::move(letters)};
}

struct HomogenizedValue {
  Rational value;
};

namespace detail {

// Match starts in [0, |core|) of the pattern against the periodic word
// core^infinity; zero when core is empty.
inline long long cyclic_count(const std::vector<Letter>& pattern,
                              const std::vector<Letter>& core) {
  if (core.empty()) return 0;
  std::vector<Letter> text;
  const size_t need = core.size() + pattern.size() - 1;
  text.reserve(need);
  while (text.size() < need)
    text.insert(text.end(), core.begin(),
                core.begin() + static_cast<long long>(
                                   std::min(core.size(), need - text.size())));
  return kmp_count(pattern, text, static_cast<long long>(core.size()));
}

}  // namespace detail

// Exact value of lim q(s^r)/r. The limit slope is the per-period count of
// pattern starts in the periodic word built from the cyclic reduction of s,
// minus the same count for the inverted pattern; the conjugator only shifts
// boundary terms that vanish in the limit.
inline HomogenizedValue homogenized_eval(const CountingQuasimorphism& q,
                                         const Word& s) {
  if (q.rank != s.rank) throw std::invalid_argument("rank mismatch");
  if (q.pattern.empty())
    throw std::invalid_argument("counting quasimorphism needs a nonempty pattern");
  const auto core = cyclic_reduce_raw(s).second.letters;
  const long long forward = detail::cyclic_count(q.pattern.letters, core);
  const long long backward =
      detail::cyclic_count(invert(q.pattern).letters, core);
  return HomogenizedValue{Rational(forward - backward)};
}

// Brute-force finite-r estimate q(s^r)/r, the oracle the closed form is
// validated against.
inline Rational homogenized_limit_estimate(const CountingQuasimorphism& q,
                                           const Word& s, long long r,
                                           long long letter_cap = 1000000) {
  if (r < 1) throw std::invalid_argument("limit estimate needs r >= 1");
  if (static_cast<long long>(s.letters.size()) * r > letter_cap)
    throw budget_error("limit estimate word length exceeds the letter cap");
  return Rational(brooks_eval(q, power(s, r)), r);
}

struct DefectBound {
  enum class Method { exhaustive, sampled };
  Rational bound = Rational(0);
  Method method = Method::exhaustive;
  long long scope = 0;  // max length for exhaustive, sample count otherwise
};

// Largest |q(xy) - q(x) - q(y)| over all reduced x, y of length <= max_len.
// The pair count grows like (2n-1)^(2L); the budget guard refuses runs that
// would not finish rather than returning a silently weak bound.
inline DefectBound defect_search(const CountingQuasimorphism& q, int max_len,
                                 unsigned long long pair_budget = 100000000ull) {
  if (max_len < 1) throw std::invalid_argument("defect search needs length >= 1");
  const unsigned long long words = count_reduced_words(q.rank, max_len);
  if (words > pair_budget / words)
    throw budget_error("defect search pair count exceeds the budget");
  std::vector<Word> all;
  all.reserve(words);
  for_each_reduced_word(q.rank, max_len, [&](const Word& w) { all.push_back(w); });
  std::vector<long long> value(all.size());
  for (size_t i = 0; i < all.size(); ++i) value[i] = brooks_eval(q, all[i]);
  long long best = 0;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = 0; j < all.size(); ++j) {
      const long long v =
          brooks_eval(q, multiply(all[i], all[j])) - value[i] - value[j];
      best = std::max(best, v < 0 ? -v : v);
    }
  return DefectBound{Rational(best), DefectBound::Method::exhaustive, max_len};
}

// Sampled variant for lengths where exhaustion is hopeless. The bound is
// only a floor on the true defect; the method tag travels with it.
inline DefectBound defect_search_sampled(const CountingQuasimorphism& q,
                                         int max_len, long long samples,
                                         std::uint64_t seed) {
  if (max_len < 1) throw std::invalid_argument("defect search needs length >= 1");
  if (samples < 1) throw std::invalid_argument("defect search needs samples >= 1");
  Rng rng(seed);
  long long best = 0;
  for (long long t = 0; t < samples; ++t) {
    const Word x = random_reduced_word(
        q.rank, static_cast<int>(rng.in_range(1, max_len)), rng);
    const Word y = random_reduced_word(
        q.rank, static_cast<int>(rng.in_range(1, max_len)), rng);
    const long long v =
        brooks_eval(q, multiply(x, y)) - brooks_eval(q, x) - brooks_eval(q, y);
    best = std::max(best, v < 0 ? -v : v);
  }
  return DefectBound{Rational(best), DefectBound::Method::sampled, samples};
}

// Ceiling of a nonnegative rational.
inline long long rational_ceil(const Rational& r) {
  if (r < Rational(0)) throw std::invalid_argument("rational_ceil needs r >= 0");
  return (r.numerator() + r.denominator() - 1) / r.denominator();
}

}  // namespace sepcay
