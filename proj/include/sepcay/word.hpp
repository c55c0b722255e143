#pragma once

// Exact arithmetic in the free group F_n: freely reduced words, cyclic
// reduction, canonical conjugacy representatives, and the text grammar used
// by the command line tools.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sepcay {

// A letter is a nonzero integer: +i is the i-th generator, -i its inverse.
using Letter = int;

// Thrown when an operation's domain precondition is violated (maps to CLI
// exit code 3).
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a configured search budget is exhausted; the result is
// "undecided" rather than wrong (maps to CLI exit code 4).
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Letter inverse_letter(Letter l) { return -l; }

// Fixed total order a_1 < A_1 < a_2 < A_2 < ...; also numbers the 2n
// Whitehead graph vertices.
inline int order_key(Letter l) {
  const int idx = l > 0 ? l : -l;
  return 2 * (idx - 1) + (l < 0 ? 1 : 0);
}

inline Letter letter_from_key(int key) {
  const int idx = key / 2 + 1;
  return (key % 2 == 0) ? idx : -idx;
}

// A freely reduced word. The rank travels with the word so that mixing
// groups of different rank is a checked error. The empty sequence is the
// identity. Values are immutable by convention: every operation returns a
// fresh word.
struct Word {
  int rank = 2;
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  int size() const { return static_cast<int>(letters.size()); }
  friend bool operator==(const Word&, const Word&) = default;
};

// A cyclically reduced word, read up to rotation. canonical_conjugacy_rep
// returns the minimal rotation, so equality of canonical reps is conjugacy.
struct CyclicWord {
  int rank = 2;
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  int size() const { return static_cast<int>(letters.size()); }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
};

inline void check_rank(int rank) {
  if (rank < 2) throw std::invalid_argument("rank must be at least 2");
}

inline void check_letters(int rank, const std::vector<Letter>& letters) {
  for (Letter l : letters) {
    if (l == 0 || l > rank || l < -rank)
      throw std::invalid_argument("letter index out of range for rank");
  }
}

inline void check_same_rank(const Word& u, const Word& v) {
  if (u.rank != v.rank) throw std::invalid_argument("rank mismatch");
}

// Free reduction; idempotent on already reduced input.
inline Word reduce(int rank, const std::vector<Letter>& raw) {
  check_rank(rank);
  check_letters(rank, raw);
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word{rank, std::move(out)};
}

inline Word identity_word(int rank) {
  check_rank(rank);
  return Word{rank, {}};
}

inline Word single_letter(int rank, Letter l) {
  return reduce(rank, std::vector<Letter>{l});
}

inline Word multiply(const Word& u, const Word& v) {
  check_same_rank(u, v);
  std::vector<Letter> out = u.letters;
  out.reserve(u.letters.size() + v.letters.size());
  for (Letter l : v.letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word{u.rank, std::move(out)};
}

inline Word invert(const Word& u) {
  std::vector<Letter> out(u.letters.rbegin(), u.letters.rend());
  for (Letter& l : out) l = -l;
  return Word{u.rank, std::move(out)};
}

// k u k^-1, reduced.
inline Word conjugate(const Word& u, const Word& k) {
  check_same_rank(u, k);
  return multiply(multiply(k, u), invert(k));
}

// u = conjugator * core * conjugator^-1 with core cyclically reduced. The
// identity maps to (identity, empty core).
inline std::pair<Word, Word> cyclic_reduce_raw(const Word& u) {
  int lo = 0, hi = u.size();
  while (hi - lo >= 2 && u.letters[lo] == -u.letters[hi - 1]) {
    ++lo;
    --hi;
  }
  Word conj{u.rank, std::vector<Letter>(u.letters.begin(), u.letters.begin() + lo)};
  Word core{u.rank, std::vector<Letter>(u.letters.begin() + lo, u.letters.begin() + hi)};
  return {std::move(conj), std::move(core)};
}

inline bool is_cyclically_reduced(const Word& u) {
  return u.size() < 2 || u.letters.front() != -u.letters.back();
}

// Reduced u^r. Uses the cyclic decomposition so that powers of cyclically
// reduced cores are plain repetition.
inline Word power(const Word& u, long long r) {
  if (r == 0) return identity_word(u.rank);
  if (r < 0) return invert(power(u, -r));
  auto [conj, core] = cyclic_reduce_raw(u);
  std::vector<Letter> out = conj.letters;
  out.reserve(conj.letters.size() * 2 + core.letters.size() * static_cast<size_t>(r));
  for (long long i = 0; i < r; ++i)
    out.insert(out.end(), core.letters.begin(), core.letters.end());
  const Word conj_inv = invert(conj);
  out.insert(out.end(), conj_inv.letters.begin(), conj_inv.letters.end());
  return Word{u.rank, std::move(out)};  // no cancellation by construction
}

// Lexicographic comparison of rotations under the fixed letter order; ties
// between equal rotations resolve to the earliest start.
inline std::vector<Letter> minimal_rotation(const std::vector<Letter>& v) {
  const int n = static_cast<int>(v.size());
  if (n == 0) return {};
  int best = 0;
  for (int cand = 1; cand < n; ++cand) {
    for (int t = 0; t < n; ++t) {
      const int a = order_key(v[(best + t) % n]);
      const int b = order_key(v[(cand + t) % n]);
      if (b < a) {
        best = cand;
        break;
      }
      if (b > a) break;
    }
  }
  std::vector<Letter> out;
  out.reserve(n);
  for (int t = 0; t < n; ++t) out.push_back(v[(best + t) % n]);
  return out;
}

struct CyclicDecomposition {
  Word conjugator;
  CyclicWord core;
};

inline CyclicDecomposition cyclic_reduce(const Word& u) {
  auto [conj, core] = cyclic_reduce_raw(u);
  return CyclicDecomposition{std::move(conj), CyclicWord{u.rank, std::move(core.letters)}};
}

// Canonical conjugacy representative: cyclic reduction in its minimal
// rotation. Equal outputs iff the inputs are conjugate.
inline CyclicWord canonical_conjugacy_rep(const Word& u) {
  auto [conj, core] = cyclic_reduce_raw(u);
  return CyclicWord{u.rank, minimal_rotation(core.letters)};
}

inline Word as_word(const CyclicWord& c) { return Word{c.rank, c.letters}; }

inline CyclicWord canonical_of_cyclic(const CyclicWord& c) {
  return CyclicWord{c.rank, minimal_rotation(c.letters)};
}

// Compact string key for hash maps; stable for ranks up to 46.
inline std::string word_key(const std::vector<Letter>& letters) {
  std::string k;
  k.reserve(letters.size());
  for (Letter l : letters) k.push_back(static_cast<char>(33 + order_key(l)));
  return k;
}

inline std::string word_key(const Word& w) { return word_key(w.letters); }
inline std::string word_key(const CyclicWord& w) { return word_key(w.letters); }

// ---------------------------------------------------------------------------
// Text grammar. For rank <= 26 a word is a string of letters a-z with A-Z for
// inverses ("aabbA" = a a b b a^-1). For larger ranks, tokens "x3" and "X3".
// Parse and print round-trip exactly.

inline Word parse_word(int rank, std::string_view text) {
  check_rank(rank);
  std::vector<Letter> raw;
  if (rank <= 26) {
    for (char c : text) {
      if (c >= 'a' && c <= 'z')
        raw.push_back(c - 'a' + 1);
      else if (c >= 'A' && c <= 'Z')
        raw.push_back(-(c - 'A' + 1));
      else
        throw std::invalid_argument(std::string("bad character in word: ") + c);
    }
  } else {
    size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c != 'x' && c != 'X') throw std::invalid_argument("expected x<k> or X<k> token");
      ++i;
      size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i) throw std::invalid_argument("missing generator index after x/X");
      const int idx = std::stoi(std::string(text.substr(i, j - i)));
      if (idx < 1) throw std::invalid_argument("generator index must be positive");
      raw.push_back(c == 'x' ? idx : -idx);
      i = j;
    }
  }
  return reduce(rank, raw);
}

inline std::string print_word(const Word& w) {
  std::string out;
  if (w.rank <= 26) {
    for (Letter l : w.letters)
      out.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  } else {
    for (Letter l : w.letters) {
      out.push_back(l > 0 ? 'x' : 'X');
      out += std::to_string(l > 0 ? l : -l);
    }
  }
  return out;
}

inline std::string print_word(const CyclicWord& w) { return print_word(as_word(w)); }

// Reinterpret a word using only the first `rank` generators as a word of that
// smaller rank.
inline Word restrict_rank(const Word& w, int rank) {
  check_rank(rank);
  check_letters(rank, w.letters);
  return Word{rank, w.letters};
}

inline Word extend_rank(const Word& w, int rank) {
  if (rank < w.rank) throw std::invalid_argument("extend_rank cannot shrink");
  return Word{rank, w.letters};
}

// ---------------------------------------------------------------------------
// Deterministic seeded randomness. std::mt19937_64 output is pinned by the
// standard; we avoid std::uniform_int_distribution because its mapping is
// implementation defined.

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : eng() % bound; }

  long long in_range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

inline Word random_reduced_word(int rank, int len, Rng& rng) {
  check_rank(rank);
  std::vector<Letter> out;
  out.reserve(static_cast<size_t>(std::max(len, 0)));
  for (int i = 0; i < len; ++i) {
    if (out.empty()) {
      const int key = static_cast<int>(rng.below(2ull * rank));
      out.push_back(letter_from_key(key));
    } else {
      // 2n-1 choices excluding the inverse of the previous letter.
      const int forbidden = order_key(-out.back());
      int key = static_cast<int>(rng.below(2ull * rank - 1));
      if (key >= forbidden) ++key;
      out.push_back(letter_from_key(key));
    }
  }
  return Word{rank, std::move(out)};
}

// ---------------------------------------------------------------------------
// Enumeration of reduced words, in depth-first prefix order.

inline unsigned long long count_reduced_words(int rank, int max_len) {
  unsigned long long total = 0, level = 2ull * rank;
  for (int l = 1; l <= max_len; ++l) {
    total += level;
    level *= 2ull * rank - 1;
  }
  return total;
}

template <class F>
void for_each_reduced_word(int rank, int max_len, F&& f) {
  std::vector<Letter> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) >= max_len) return;
    for (int key = 0; key < 2 * rank; ++key) {
      const Letter l = letter_from_key(key);
      if (!cur.empty() && cur.back() == -l) continue;
      cur.push_back(l);
      f(Word{rank, cur});
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

}  // namespace sepcay
