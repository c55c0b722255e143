#pragma once

// One-edge free splittings F_n = H * B with H spanned by the first n-1
// generators and B generated by w * a_n: normal forms over the adapted
// basis, geodesics in the associated tree of cosets, the retraction onto H
// read off the axis of a_n, and vertices of the edge-splitting graph with
// certified common neighbors.

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sepcay/fold.hpp"
#include "sepcay/whitehead.hpp"
#include "sepcay/word.hpp"

namespace sepcay {

struct SplittingTHw {
  int rank = 3;
  Word w;  // element of H, stored at full rank
  Word b;  // w * a_n, the generator of the cyclic factor
};

namespace detail {

inline void check_in_subfactor(const Word& w, int rank, const char* what) {
  for (Letter l : w.letters)
    if (l == rank || l == -rank)
      throw std::invalid_argument(std::string(what) +
                                  " must avoid the last generator");
}

}  // namespace detail

inline SplittingTHw make_splitting(int rank, const Word& w) {
  if (rank < 3) throw precondition_error("splitting needs rank >= 3");
  if (w.rank != rank) throw std::invalid_argument("rank mismatch");
  detail::check_in_subfactor(w, rank, "w");
  SplittingTHw T;
  T.rank = rank;
  T.w = w;
  T.b = multiply(w, single_letter(rank, rank));
  // {a_1, ..., a_{n-1}, w a_n} differs from the standard basis by one
  // Nielsen move; the fold check guards the construction end to end.
  std::vector<Word> gens;
  for (int i = 1; i < rank; ++i) gens.push_back(single_letter(rank, i));
  gens.push_back(T.b);
  if (!is_basis(rank, gens))
    throw std::logic_error("splitting basis failed the fold check");
  return T;
}

// ---------------------------------------------------------------------------
// Normal form over the adapted basis.

struct Syllable {
  long long exp = 0;  // power of b, never zero
  Word h;             // trailing H-part, empty only in the last syllable
};

struct SyllableForm {
  Word h0;
  std::vector<Syllable> syllables;
};

// Writes g over the basis {a_1, ..., a_{n-1}, b}. Substituting
// a_n -> w^-1 b and freely reducing gives the reduced word of g in the new
// coordinates; chunking its b-runs yields the normal form
// g = h_0 b^{e_1} h_1 ... b^{e_m} h_m with nonempty interior h_i.
inline SyllableForm basis_rewrite(const SplittingTHw& T, const Word& g) {
  if (g.rank != T.rank) throw std::invalid_argument("rank mismatch");
  const Word winv = invert(T.w);
  std::vector<Letter> raw;
  raw.reserve(g.letters.size() * (T.w.letters.size() + 1));
  for (Letter l : g.letters) {
    if (l == T.rank) {
      raw.insert(raw.end(), winv.letters.begin(), winv.letters.end());
      raw.push_back(T.rank);
    } else if (l == -T.rank) {
      raw.push_back(-T.rank);
      raw.insert(raw.end(), T.w.letters.begin(), T.w.letters.end());
    } else {
      raw.push_back(l);
    }
  }
  const Word rewritten = reduce(T.rank, raw);
  SyllableForm form;
  form.h0 = identity_word(T.rank);
  size_t i = 0;
  const auto& ls = rewritten.letters;
  while (i < ls.size() && std::abs(ls[i]) != T.rank) form.h0.letters.push_back(ls[i++]);
  while (i < ls.size()) {
    Syllable syl;
    while (i < ls.size() && std::abs(ls[i]) == T.rank) {
      syl.exp += ls[i] > 0 ? 1 : -1;
      ++i;
    }
    syl.h = identity_word(T.rank);
    while (i < ls.size() && std::abs(ls[i]) != T.rank) syl.h.letters.push_back(ls[i++]);
    form.syllables.push_back(std::move(syl));
  }
  return form;
}

// Inverse of basis_rewrite; substituting b = w a_n back must return g.
inline Word reassemble(const SplittingTHw& T, const SyllableForm& form) {
  Word out = form.h0;
  for (const Syllable& syl : form.syllables) {
    out = multiply(out, power(T.b, syl.exp));
    out = multiply(out, syl.h);
  }
  return out;
}

// Membership in the vertex group H is visible in the normal form: no
// b-syllable survives.
inline bool in_vertex_group(const SplittingTHw& T, const Word& g) {
  return basis_rewrite(T, g).syllables.empty();
}

inline bool same_h_coset(const SplittingTHw& T, const Word& g, const Word& g2) {
  return in_vertex_group(T, multiply(invert(g), g2));
}

// ---------------------------------------------------------------------------
// Tree geodesics. Edges of the tree of cosets are translates of the base
// edge E by group elements; the edge stabilizer is trivial, so the
// translate word is a faithful name for the edge.

struct TreeEdge {
  Word translate;
  friend bool operator==(const TreeEdge& a, const TreeEdge& b) {
    return a.translate == b.translate;
  }
};

// Geodesic from the base vertex H to the vertex gH. Each b-syllable of the
// normal form crosses the star of one B-vertex, contributing the two edges
// Q E and Q b^{e} E where Q is the walked prefix. Elements of H give the
// empty path.
inline std::vector<TreeEdge> coset_path(const SplittingTHw& T, const Word& g) {
  const SyllableForm form = basis_rewrite(T, g);
  std::vector<TreeEdge> edges;
  edges.reserve(form.syllables.size() * 2);
  Word q = form.h0;
  for (const Syllable& syl : form.syllables) {
    edges.push_back(TreeEdge{q});
    Word q2 = multiply(q, power(T.b, syl.exp));
    edges.push_back(TreeEdge{q2});
    q = multiply(q2, syl.h);
  }
  return edges;
}

// ---------------------------------------------------------------------------
// The retraction r. For w != identity the element a_n is hyperbolic and its
// axis passes through the base vertex; the two axis edges at that vertex
// determine the unique h in H carrying the outgoing edge to the incoming
// one, and that h is w itself.

struct AxisEdges {
  TreeEdge entry;  // axis edge arriving at the base vertex
  TreeEdge exit;   // axis edge leaving toward a_n's direction
};

// Empty when a_n is elliptic, which happens exactly for w = identity.
inline std::optional<AxisEdges> axis_entry_exit(const SplittingTHw& T) {
  if (T.w.empty()) return std::nullopt;
  const Word an = single_letter(T.rank, T.rank);
  AxisEdges ax;
  ax.entry = coset_path(T, invert(an)).front();
  ax.exit = coset_path(T, an).front();
  // The base vertex lies on the axis exactly when a_n^2 is twice as far
  // from it as a_n; both paths are two edges per syllable.
  if (coset_path(T, multiply(an, an)).size() != 4)
    throw std::logic_error("base vertex left the axis");
  return ax;
}

inline Word project_r(const SplittingTHw& T) {
  if (T.w.empty()) return identity_word(T.rank);
  const AxisEdges ax = *axis_entry_exit(T);
  const Word r = multiply(ax.entry.translate, invert(ax.exit.translate));
  for (Letter l : r.letters)
    if (std::abs(l) == T.rank)
      throw std::logic_error("retraction value left the vertex group");
  return r;
}

inline bool verify_section(int rank, const Word& w) {
  return project_r(make_splitting(rank, w)) == w;
}

// ---------------------------------------------------------------------------
// Edge-splitting graph vertices. A vertex is the splitting itself, recorded
// by bases of its two factors; two splittings at distance two share a
// common refinement vertex obtained by splitting H along a separable
// element.

struct ESVertex {
  std::vector<Word> a_basis;
  std::vector<Word> b_basis;
};

inline ESVertex es_vertex(int rank, const Word& w) {
  const SplittingTHw T = make_splitting(rank, w);
  ESVertex out;
  for (int i = 1; i < rank; ++i) out.a_basis.push_back(single_letter(rank, i));
  out.b_basis.push_back(T.b);
  return out;
}

// Common neighbor of the splittings for w and for u w: separating u inside
// H yields a basis splitting H as H_1 * H_2 with u in H_2, and the vertex
// (H_1, H_2 * <w a_n>) is adjacent to both. Every claim is re-checked by
// folding before the vertex is returned.
inline ESVertex es_common_neighbor(int rank, const Word& w, const Word& u) {
  const SplittingTHw T = make_splitting(rank, w);
  detail::check_in_subfactor(u, rank, "u");
  if (u.rank != rank) throw std::invalid_argument("rank mismatch");
  if (u.empty())
    throw precondition_error("u must be a nontrivial element of the vertex group");
  const Word uh = restrict_rank(u, rank - 1);
  const SeparabilityResult res = is_separable(uh);
  if (!res.separable)
    throw precondition_error("u is not separable in the vertex group");
  const std::vector<Word> basis = basis_from_certificate(uh, *res.certificate);
  const int gmiss = res.certificate->missing_generator;

  ESVertex out;
  out.a_basis.push_back(extend_rank(basis[gmiss - 1], rank));
  for (int j = 1; j < rank; ++j)
    if (j != gmiss) out.b_basis.push_back(extend_rank(basis[j - 1], rank));
  out.b_basis.push_back(T.b);

  std::vector<Word> sub;  // the H_2 factor inside H
  for (int j = 1; j < rank; ++j)
    if (j != gmiss) sub.push_back(basis[j - 1]);
  if (!SubgroupGraph(rank - 1, sub).contains(uh))
    throw std::logic_error("certificate basis does not contain u");
  std::vector<Word> all = out.a_basis;
  all.insert(all.end(), out.b_basis.begin(), out.b_basis.end());
  if (!is_basis(rank, all))
    throw std::logic_error("common neighbor bases do not span");
  if (!SubgroupGraph(rank, out.b_basis).contains(multiply(u, T.b)))
    throw std::logic_error("common neighbor misses the translated splitting");
  return out;
}

}  // namespace sepcay
