#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmiso/graph.hpp"
#include "pmiso/weights.hpp"

namespace pmiso {

// A face of the perfect matching polytope, stored as the set of perfect
// matchings it contains (faces are integral, so this determines the face).
struct Face {
  std::vector<Matching> matchings;  // sorted, unique, nonempty
  std::vector<WeightFunction> defining_weights;

  std::size_t size() const { return matchings.size(); }
  bool is_singleton() const { return matchings.size() == 1; }
  bool same_matchings(const Face& o) const { return matchings == o.matchings; }
};

// Sorts and deduplicates; throws PreconditionError if empty.
Face make_face(std::vector<Matching> matchings);

// PM(G). Throws DomainError if G has no perfect matching.
Face perfect_matching_face(const Graph& g, int limit = kDefaultOracleLimit);

// F|w: the matchings of F of minimum w-weight.
Face face_min(const Face& f, const WeightFunction& w);

std::vector<EdgeId> support_of(const Face& f);

// Number of edges of m in delta(S).
int cut_count(const Graph& g, const Matching& m, VertexSet s);

bool is_tight(const Graph& g, const Face& f, VertexSet s);

// All odd S with |delta(S) cap M| = 1 for every M in F, ordered by size then
// lexicographically. Throws SizeGuardError above the limit.
std::vector<VertexSet> tight_odd_sets(const Graph& g, const Face& f,
                                      int limit = kDefaultOracleLimit);

// Odd vertex sets in laminar-family order (size, then lexicographic).
using LaminarFamily = std::vector<VertexSet>;

LaminarFamily singleton_family(int n);
void sort_family(LaminarFamily& l);

// Greedily adds candidates (size ascending, then lexicographic) that cross no
// member. base must be laminar and contain every singleton of {0..n-1}.
LaminarFamily extend_maximal_laminar(const LaminarFamily& base,
                                     std::span<const VertexSet> candidates, int n);

bool is_maximal_laminar(const LaminarFamily& l, std::span<const VertexSet> tight);

// Rank over the rationals of integer row vectors.
std::size_t exact_rank(std::vector<std::vector<std::int64_t>> rows);

struct SpanCheck {
  bool equal = false;
  std::size_t laminar_rank = 0;
  std::size_t tight_rank = 0;
};

// Compares rank{1_delta(S) : S in l} with rank{1_delta(S) : S in tight(f)},
// on the coordinates of supp(f). Throws PreconditionError unless l is a
// maximal laminar subset of tight(f).
SpanCheck span_equality_check(const Graph& g, const Face& f, const LaminarFamily& l,
                              int limit = kDefaultOracleLimit);

struct UncrossResult {
  VertexSet first;
  VertexSet second;
  bool odd_intersection = false;
  bool identity_holds = false;  // on supp(f)
  bool results_tight = false;
};

// Tight crossing S, T -> (S cap T, S cup T) when |S cap T| is odd, else
// (S \ T, T \ S). Throws PreconditionError if S, T are not tight or do not
// cross.
UncrossResult uncross_pair(const Graph& g, const Face& f, VertexSet s, VertexSet t);

// For every e in delta(S), all matchings of f containing e agree on E(S).
// Throws PreconditionError if S is not tight.
bool is_contractible(const Graph& g, const Face& f, VertexSet s);

// Layer form on a chain S_1 < ... < S_k (1-based p, r, 1 <= p <= r <= k):
// for every pair (e_{p-1}, e_r) in delta(S_{p-1}) x delta(S_r), the matchings
// of f containing both agree on E(S_r \ S_{p-1}). p = 1 means S_0 = {}.
bool is_layer_contractible(const Graph& g, const Face& f, std::span<const VertexSet> chain,
                           int p, int r);

// Edges of m with both endpoints in s, ascending.
std::vector<EdgeId> interior_part(const Graph& g, const Matching& m, VertexSet s);

}  // namespace pmiso
