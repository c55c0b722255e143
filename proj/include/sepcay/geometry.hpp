#pragma once

// Word norms with respect to the separable elements of F_n: a greedy upper
// bound by factoring into separable pieces, a lower bound from homogenized
// counting quasimorphisms, a breadth-first oracle on the Cayley graph of the
// separable generating set, quasi-flat certificates for maps Z^m -> F_n, and
// the induced distance bounds on the conjugacy-class quotient.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sepcay/quasimorphism.hpp"
#include "sepcay/whitehead.hpp"
#include "sepcay/word.hpp"

namespace sepcay {

// ---------------------------------------------------------------------------
// Upper bound: greedy factorization into longest separable prefixes.

struct SepNormUpper {
  long long value = 0;
  std::vector<Word> factors;
};

// Every single letter is primitive, so the greedy scan always makes progress
// and the bound is at most |g|. Separability of a prefix only depends on its
// conjugacy class, so the cache absorbs repeated classes across calls.
inline SepNormUpper sep_norm_upper(const Word& g, SeparabilityCache& cache,
                                   std::size_t node_cap = 1000000) {
  check_rank(g.rank);
  SepNormUpper out;
  size_t pos = 0;
  while (pos < g.letters.size()) {
    for (size_t len = g.letters.size() - pos; len >= 1; --len) {
      Word prefix{g.rank,
                  std::vector<Letter>(g.letters.begin() + pos,
                                      g.letters.begin() + pos + len)};
      // Separable words have cut vertices, so the graph test is a cheap
      // filter before the orbit search.
      if (len > 1 && !in_cut(prefix)) continue;
      if (len == 1 || is_separable_cached(prefix, cache, node_cap)) {
        out.factors.push_back(std::move(prefix));
        pos += len;
        break;
      }
    }
  }
  out.value = static_cast<long long>(out.factors.size());
  return out;
}

inline SepNormUpper sep_norm_upper(const Word& g) {
  SeparabilityCache cache;
  return sep_norm_upper(g, cache);
}

// ---------------------------------------------------------------------------
// Lower bound from the homogenized quasimorphisms of the patterns p_k.

struct SepNormLower {
  long long value = 0;
  int witness_k = 0;  // 0 when every witness vanishes on g
};

// Each homogenized witness vanishes on separable elements and moves by at
// most the defect bound per factor, giving |value| / defect as a lower
// bound. A nonzero witness additionally certifies that g itself is not
// separable, so the norm is then at least 2.
inline SepNormLower sep_norm_lower(const Word& g, const std::vector<int>& ks,
                                   const DefectBound& defect) {
  check_rank(g.rank);
  if (ks.empty()) throw std::invalid_argument("sep_norm_lower needs witnesses");
  SepNormLower out;
  if (g.empty()) return out;
  for (int k : ks) {
    const auto q = make_counting_qm(make_pk(g.rank, k));
    const Rational v = homogenized_eval(q, g).value;
    if (v == Rational(0)) continue;
    if (defect.bound <= Rational(0))
      throw precondition_error(
          "sep_norm_lower needs a positive defect bound for a nonzero witness");
    const long long bound = rational_ceil(boost::abs(v) / defect.bound);
    if (out.witness_k == 0) out.value = 2;  // nonzero witness rules out one factor
    if (bound > out.value) {
      out.value = bound;
      out.witness_k = k;
    } else if (out.witness_k == 0) {
      out.witness_k = k;
    }
  }
  return out;
}

// Defect bound shared by the witnesses p_k, searched exhaustively up to half
// the longest pattern length. The half-pattern split of each p_k already
// realizes defect 1, so the bound is positive.
inline DefectBound default_sep_defect(int rank, const std::vector<int>& ks) {
  check_rank(rank);
  if (ks.empty()) throw std::invalid_argument("default_sep_defect needs witnesses");
  DefectBound out;
  out.method = DefectBound::Method::exhaustive;
  for (int k : ks) {
    const auto q = make_counting_qm(make_pk(rank, k));
    const int len = (q.pattern.size() + 1) / 2;
    const DefectBound d = defect_search(q, len);
    out.bound = std::max(out.bound, d.bound);
    out.scope = std::max(out.scope, d.scope);
  }
  return out;
}

struct SepNormBounds {
  long long lower = 0;
  long long upper = 0;
  int witness_k = 0;
  std::vector<Word> factorization;
  DefectBound defect_used;
};

inline SepNormBounds sep_norm_bounds(const Word& g, const std::vector<int>& ks,
                                     const DefectBound& defect,
                                     SeparabilityCache& cache) {
  SepNormBounds out;
  const SepNormLower lo = sep_norm_lower(g, ks, defect);
  const SepNormUpper hi = sep_norm_upper(g, cache);
  out.lower = lo.value;
  out.witness_k = lo.witness_k;
  out.upper = hi.value;
  out.factorization = hi.factors;
  out.defect_used = defect;
  return out;
}

// ---------------------------------------------------------------------------
// Breadth-first oracle on the Cayley graph of the separable generating set.

// All separable words of reduced length <= max_len.
inline std::vector<Word> separable_generators(int rank, int max_len,
                                              SeparabilityCache& cache,
                                              std::size_t node_cap = 1000000) {
  check_rank(rank);
  if (max_len < 1)
    throw std::invalid_argument("generator enumeration needs max_len >= 1");
  std::vector<Word> gens;
  for_each_reduced_word(rank, max_len, [&](const Word& w) {
    if (w.size() == 1 || is_separable_cached(w, cache, node_cap))
      gens.push_back(w);
  });
  return gens;
}

struct BfsResult {
  std::optional<long long> distance;  // empty when the search ran out
  long long explored = 0;             // vertices assigned a distance
};

struct BfsField {
  int generator_len = 0;
  int vertex_cap = 0;
  bool budget_hit = false;
  std::unordered_map<std::string, long long> dist;  // word_key -> distance
};

// Distances from the identity to every vertex of reduced length <= vertex_cap
// reachable within `radius` steps. The generating set is symmetric because
// separability is inversion invariant, so levels are true graph distances.
inline BfsField bfs_distance_field(int rank, int gen_len, int radius,
                                   int vertex_cap, SeparabilityCache& cache,
                                   long long node_budget = 4000000) {
  if (radius < 1) throw std::invalid_argument("bfs needs radius >= 1");
  if (vertex_cap < gen_len)
    throw std::invalid_argument("bfs vertex cap below generator length");
  BfsField field;
  field.generator_len = gen_len;
  field.vertex_cap = vertex_cap;
  const std::vector<Word> gens = separable_generators(rank, gen_len, cache);
  std::vector<Word> frontier{identity_word(rank)};
  field.dist.emplace(word_key(frontier.front()), 0);
  for (int d = 1; d <= radius && !frontier.empty(); ++d) {
    std::vector<Word> next;
    for (const Word& u : frontier) {
      for (const Word& s : gens) {
        Word v = multiply(u, s);
        if (static_cast<int>(v.size()) > vertex_cap) continue;
        std::string key = word_key(v);
        if (field.dist.count(key)) continue;
        if (static_cast<long long>(field.dist.size()) >= node_budget) {
          field.budget_hit = true;
          return field;
        }
        field.dist.emplace(std::move(key), d);
        next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  return field;
}

// Distance oracle for one target. Generators of length up to max(gen_len,
// |g|) keep the one-factor case reachable; intermediate products are capped
// at two letters beyond that, which covers greedy prefix paths. Running out
// of radius or budget reports "not found" rather than failing.
inline BfsResult sep_norm_bfs(const Word& g, int gen_len, int radius,
                              SeparabilityCache& cache,
                              long long node_budget = 2000000) {
  check_rank(g.rank);
  if (gen_len < 1 || radius < 1)
    throw std::invalid_argument("bfs needs gen_len >= 1 and radius >= 1");
  BfsResult out;
  if (g.empty()) {
    out.distance = 0;
    return out;
  }
  const int eff_len = std::max(gen_len, static_cast<int>(g.size()));
  const int vertex_cap = eff_len + 2;
  const std::vector<Word> gens = separable_generators(g.rank, eff_len, cache);
  const std::string target = word_key(g);
  std::unordered_map<std::string, long long> dist;
  std::vector<Word> frontier{identity_word(g.rank)};
  dist.emplace(word_key(frontier.front()), 0);
  for (int d = 1; d <= radius && !frontier.empty(); ++d) {
    std::vector<Word> next;
    for (const Word& u : frontier) {
      for (const Word& s : gens) {
        Word v = multiply(u, s);
        if (static_cast<int>(v.size()) > vertex_cap) continue;
        std::string key = word_key(v);
        if (dist.count(key)) continue;
        if (key == target) {
          out.distance = d;
          out.explored = static_cast<long long>(dist.size()) + 1;
          return out;
        }
        if (static_cast<long long>(dist.size()) >= node_budget) {
          out.explored = static_cast<long long>(dist.size());
          return out;
        }
        dist.emplace(std::move(key), d);
        next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  out.explored = static_cast<long long>(dist.size());
  return out;
}

// ---------------------------------------------------------------------------
// Quasi-flat certificates for Z^m -> F_n along commuting-direction basepoints.

struct FlatSpec {
  int m = 0;
  int rank = 2;
  std::vector<Word> basepoints;
  // pairing[k][j] = homogenized value of the p_{k+1} witness at basepoint j.
  std::vector<std::vector<long long>> pairing;
};

namespace detail {

inline long long pairing_det(const std::vector<std::vector<long long>>& a,
                             std::vector<int> cols) {
  // Laplace expansion; the construction guard keeps m <= 8.
  const size_t row = a.size() - cols.size();
  if (cols.empty()) return 1;
  long long det = 0;
  for (size_t t = 0; t < cols.size(); ++t) {
    std::vector<int> rest = cols;
    rest.erase(rest.begin() + t);
    const long long minor = pairing_det(a, rest);
    const long long term = a[row][cols[t]] * minor;
    det += (t % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace detail

inline FlatSpec make_flat_spec(std::vector<Word> basepoints, int rank) {
  check_rank(rank);
  const int m = static_cast<int>(basepoints.size());
  if (m < 1) throw std::invalid_argument("flat spec needs at least one basepoint");
  if (m > 8) throw precondition_error("flat spec limited to m <= 8 directions");
  FlatSpec spec;
  spec.m = m;
  spec.rank = rank;
  for (const Word& b : basepoints) {
    if (b.rank != rank) throw std::invalid_argument("basepoint rank mismatch");
    if (b.empty()) throw std::invalid_argument("basepoints must be nontrivial");
  }
  spec.basepoints = std::move(basepoints);
  spec.pairing.assign(m, std::vector<long long>(m, 0));
  for (int k = 1; k <= m; ++k) {
    const auto q = make_counting_qm(make_pk(rank, k));
    for (int j = 0; j < m; ++j) {
      const Rational v = homogenized_eval(q, spec.basepoints[j]).value;
      spec.pairing[k - 1][j] = v.numerator();  // homogenized values are integers
    }
  }
  std::vector<int> cols(m);
  for (int j = 0; j < m; ++j) cols[j] = j;
  if (detail::pairing_det(spec.pairing, cols) == 0)
    throw precondition_error("flat spec pairing matrix is singular");
  return spec;
}

// Default directions: basepoint j is the pattern p_j itself, whose pairing
// matrix is the identity.
inline FlatSpec make_flat_spec(int m, int rank) {
  check_rank(rank);
  if (m < 1) throw std::invalid_argument("flat spec needs at least one direction");
  if (m > 8) throw precondition_error("flat spec limited to m <= 8 directions");
  std::vector<Word> basepoints;
  basepoints.reserve(m);
  for (int j = 1; j <= m; ++j) basepoints.push_back(make_pk(rank, j));
  FlatSpec spec = make_flat_spec(std::move(basepoints), rank);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      if (spec.pairing[k][j] != (k == j ? 1 : 0))
        throw std::logic_error("default flat pairing is not the identity");
  return spec;
}

// Image of the lattice point: basepoints raised to the coordinates, in order.
inline Word flat_point(const FlatSpec& spec,
                       const std::vector<long long>& exponents) {
  if (static_cast<int>(exponents.size()) != spec.m)
    throw std::invalid_argument("flat point needs one exponent per direction");
  Word out = identity_word(spec.rank);
  for (int j = 0; j < spec.m; ++j)
    out = multiply(out, power(spec.basepoints[j], exponents[j]));
  return out;
}

namespace detail {

// Splits one basepoint step into separable conjugates. p_k factors as
// u_k v_k with u_k a power of the first generator and v_k primitive, so
// C(p_k^s) contributes 2|s| separable factors after telescoping. A
// basepoint short enough to leave no second piece contributes one.
inline void append_step_factors(const Word& prefix, const Word& u, const Word& v,
                                long long s, std::vector<Word>& factors) {
  std::vector<Word> pieces;
  if (!u.empty()) pieces.push_back(conjugate(u, prefix));
  if (!v.empty()) pieces.push_back(conjugate(v, prefix));
  if (s > 0) {
    for (long long t = 0; t < s; ++t)
      for (const Word& p : pieces) factors.push_back(p);
  } else {
    for (long long t = 0; t < -s; ++t)
      for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
        factors.push_back(invert(*it));
  }
}

}  // namespace detail

// Factorization of flat_point(i) * flat_point(iprime)^-1 into separable
// pieces, two per unit of l1 distance. Telescoping through the shared
// prefixes P_{k-1} = b_1^{i_1} ... b_{k-1}^{i_{k-1}} turns the difference
// into conjugated basepoint powers, and each unit power splits in two.
inline std::vector<Word> flat_step_factorization(
    const FlatSpec& spec, const std::vector<long long>& i,
    const std::vector<long long>& iprime) {
  if (static_cast<int>(i.size()) != spec.m ||
      static_cast<int>(iprime.size()) != spec.m)
    throw std::invalid_argument("flat factorization needs m coordinates");
  std::vector<Word> factors;
  for (int k = spec.m; k >= 1; --k) {
    const long long d = i[k - 1] - iprime[k - 1];
    if (d == 0) continue;
    std::vector<long long> prefix_exps(i.begin(), i.begin() + (k - 1));
    prefix_exps.resize(spec.m, 0);
    Word prefix = flat_point(spec, prefix_exps);
    const Word& b = spec.basepoints[k - 1];
    // Split after the leading run of the first generator.
    size_t cut = 0;
    while (cut < b.letters.size() && b.letters[cut] == b.letters[0]) ++cut;
    if (cut == b.letters.size()) cut = (b.letters.size() + 1) / 2;
    const Word u{spec.rank,
                 std::vector<Letter>(b.letters.begin(), b.letters.begin() + cut)};
    const Word v{spec.rank,
                 std::vector<Letter>(b.letters.begin() + cut, b.letters.end())};
    detail::append_step_factors(prefix, u, v, d, factors);
  }
  return factors;
}

struct FlatRow {
  std::vector<long long> i, iprime;
  long long upper = 0;
  long long lower = 0;
};

struct FlatCertificate {
  std::uint64_t seed = 0;
  long long samples = 0;
  long long range = 0;
  bool lipschitz_upper_verified = false;  // factors separable, products exact
  bool rows_consistent = false;           // lower <= upper on every row
  long long max_additive_error = 0;       // worst |witness - linear prediction|
  Rational lower_slope;                   // 1/m
  Rational measured_c;                    // smallest C with lower >= l1/m - C
  DefectBound defect_used;
  std::vector<FlatRow> rows;
};

// Samples lattice pairs, certifies the upper bound by explicit separable
// factorizations, evaluates the witness family exactly, and reports how far
// the witnesses drift from the linear prediction pairing * (i - iprime).
inline FlatCertificate flat_certificate(const FlatSpec& spec, long long range,
                                        long long samples, std::uint64_t seed) {
  if (range < 1) throw std::invalid_argument("flat certificate needs range >= 1");
  if (samples < 1)
    throw std::invalid_argument("flat certificate needs samples >= 1");
  std::vector<int> ks(spec.m);
  for (int k = 0; k < spec.m; ++k) ks[k] = k + 1;
  FlatCertificate cert;
  cert.seed = seed;
  cert.samples = samples;
  cert.range = range;
  cert.lower_slope = Rational(1, spec.m);
  cert.defect_used = default_sep_defect(spec.rank, ks);
  cert.lipschitz_upper_verified = true;
  cert.rows_consistent = true;
  cert.measured_c = Rational(0);
  SeparabilityCache cache;
  Rng rng(seed);
  std::vector<CountingQuasimorphism> qs;
  for (int k = 1; k <= spec.m; ++k)
    qs.push_back(make_counting_qm(make_pk(spec.rank, k)));
  for (long long t = 0; t < samples; ++t) {
    FlatRow row;
    for (int j = 0; j < spec.m; ++j) row.i.push_back(rng.in_range(-range, range));
    for (int j = 0; j < spec.m; ++j)
      row.iprime.push_back(rng.in_range(-range, range));
    const Word w =
        multiply(flat_point(spec, row.i), invert(flat_point(spec, row.iprime)));
    long long l1 = 0;
    for (int j = 0; j < spec.m; ++j) l1 += std::llabs(row.i[j] - row.iprime[j]);

    const std::vector<Word> factors =
        flat_step_factorization(spec, row.i, row.iprime);
    Word product = identity_word(spec.rank);
    for (const Word& f : factors) {
      product = multiply(product, f);
      if (!is_separable_cached(f, cache)) cert.lipschitz_upper_verified = false;
    }
    if (!(product == w)) cert.lipschitz_upper_verified = false;
    row.upper = static_cast<long long>(factors.size());

    long long worst_err = 0;
    for (int k = 0; k < spec.m; ++k) {
      const Rational v = homogenized_eval(qs[k], w).value;
      long long expected = 0;
      for (int j = 0; j < spec.m; ++j)
        expected += spec.pairing[k][j] * (row.i[j] - row.iprime[j]);
      const long long err = std::llabs(v.numerator() - expected);
      worst_err = std::max(worst_err, err);
    }
    cert.max_additive_error = std::max(cert.max_additive_error, worst_err);

    row.lower = sep_norm_lower(w, ks, cert.defect_used).value;
    if (row.lower > row.upper) cert.rows_consistent = false;
    cert.measured_c =
        std::max(cert.measured_c, Rational(l1, spec.m) - Rational(row.lower));
    cert.rows.push_back(std::move(row));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Distance bounds on the conjugacy-class quotient.

// The homogenized witnesses are conjugation invariant, so they descend to
// the quotient and bound the distance from below. The non-separability
// floor does not descend (a class can meet the separable set even when its
// representative is not separable), so only the defect formula is used.
inline long long quotient_dist_lower(const Word& g, const Word& h,
                                     const std::vector<int>& ks,
                                     const DefectBound& defect) {
  check_same_rank(g, h);
  if (ks.empty()) throw std::invalid_argument("quotient_dist_lower needs witnesses");
  const Word w = multiply(g, invert(h));
  long long best = 0;
  for (int k : ks) {
    const auto q = make_counting_qm(make_pk(g.rank, k));
    const Rational v = homogenized_eval(q, w).value;
    if (v == Rational(0)) continue;
    if (defect.bound <= Rational(0))
      throw precondition_error(
          "quotient_dist_lower needs a positive defect bound for a nonzero witness");
    best = std::max(best, rational_ceil(boost::abs(v) / defect.bound));
  }
  return best;
}

// Upper bound: the quotient distance is at most the norm of g h'^-1 for any
// conjugate h' of h, minimized over conjugators up to the given length.
inline long long quotient_dist_upper(const Word& g, const Word& h, int conj_len,
                                     SeparabilityCache& cache) {
  check_same_rank(g, h);
  if (conj_len < 0)
    throw std::invalid_argument("quotient_dist_upper needs conj_len >= 0");
  long long best =
      sep_norm_upper(multiply(g, invert(h)), cache).value;
  for_each_reduced_word(g.rank, conj_len, [&](const Word& c) {
    const long long v =
        sep_norm_upper(multiply(g, invert(conjugate(h, c))), cache).value;
    best = std::min(best, v);
  });
  return best;
}

inline long long quotient_dist_upper(const Word& g, const Word& h,
                                     int conj_len) {
  SeparabilityCache cache;
  return quotient_dist_upper(g, h, conj_len, cache);
}

}  // namespace sepcay
