#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pmiso/face.hpp"
#include "pmiso/graph.hpp"
#include "pmiso/weights.hpp"

namespace pmiso {

// The (F, L, lambda)-contraction of G. Nodes are the maximal members of L of
// size at most lambda; edges are the support edges between different nodes
// that leave no member of L larger than lambda.
struct ContractionMultigraph {
  struct MultiEdge {
    int a;  // node of the original edge's smaller endpoint
    int b;
    EdgeId original;
  };

  int lambda = 0;
  int num_graph_edges = 0;
  std::vector<VertexSet> nodes;   // ordered by smallest vertex
  std::vector<int> node_of_vertex;
  std::vector<MultiEdge> edges;   // ascending original edge id

  int node_weight(int node) const { return nodes[node].size(); }
};

// Throws PreconditionError if a member of l is not tight for f, if l does not
// cover every vertex with a set of size <= lambda, or if lambda is outside
// [1, 2n].
ContractionMultigraph contraction_of(const Graph& g, const Face& f, const LaminarFamily& l,
                                     int lambda);

struct AlternatingCircuit {
  std::vector<int> nodes;  // v_0 .. v_{k-1}; step i goes from v_i along edges[i]
  std::vector<int> edges;  // multigraph edge indices e_0 .. e_{k-1}
  int node_weight = 0;     // sum of node weights of v_0 .. v_{k-1}
  ObligationVector indicator;  // sum (-1)^i 1_{e_i} on E(G), first nonzero entry positive
};

// Alternating circuits (closed walks of even length with nonzero alternating
// indicator) of node-weight <= bound, one per distinct canonical indicator,
// in discovery order. With stop_at_first, returns after the first one.
std::vector<AlternatingCircuit> enumerate_alternating_circuits(const ContractionMultigraph& h,
                                                               int bound,
                                                               bool stop_at_first = false);

// Flips the sign so that the first nonzero entry is positive.
void canonicalize_sign(ObligationVector& y);

// supp(y) within supp(f), and <y, 1_delta(S)> = 0 for every S in tight(f).
bool respects_face(const Graph& g, const Face& f, const ObligationVector& y,
                   int limit = kDefaultOracleLimit);

// Contraction form: y is the zero-extension of a vector on E(H); only tight
// sets of f that are unions of H's nodes are checked.
bool respects_face_in_contraction(const Graph& g, const Face& f, const ContractionMultigraph& h,
                                  const ObligationVector& z, int limit = kDefaultOracleLimit);

// Extends z (zero-extended to E) by the forced interior matchings of each
// node: y = z + sum_i (1_{M_i^+} - 1_{M_i^-}). Throws PreconditionError if z
// is unbalanced at a node, leaves supp(f), or an interior matching is not
// unique. Throws VerificationError if ||y||_1 > n ||z||_1.
ObligationVector lift_circuit_vector(const Graph& g, const Face& f,
                                     const ContractionMultigraph& h, const ObligationVector& z);

struct GoodnessReport {
  enum class Clause { kNone, kNotMaximalLaminar, kNotContractible, kShortCircuit };

  bool good = false;
  Clause failed = Clause::kNone;
  std::optional<VertexSet> set_witness;
  std::optional<AlternatingCircuit> circuit_witness;
  std::string detail;
};

const char* clause_name(GoodnessReport::Clause c);

// (a) l is a maximal laminar subset of tight(f); (b) members of size <= lambda
// are f-contractible; (c) the (f, l, lambda)-contraction has no alternating
// circuit of node-weight <= lambda.
GoodnessReport is_lambda_good(const Graph& g, const Face& f, const LaminarFamily& l, int lambda,
                              int limit = kDefaultOracleLimit);

}  // namespace pmiso
