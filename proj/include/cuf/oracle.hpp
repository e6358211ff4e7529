// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_ORACLE_HPP
#define CUF_ORACLE_HPP

#include "cuf/factorization.hpp"
#include "cuf/order_oracle.hpp"

namespace cuf {

/// A map given as an explicit graph on finitely many canonical elements,
/// checked without any reliance on the morphism catalog's closed forms.
struct MorphismGraph {
  SemigroupModel dom = SemigroupModel::z();
  SemigroupModel cod = SemigroupModel::z();
  std::vector<std::pair<Element, Element>> entries;  // sorted by canonical order

  std::optional<Element> lookup(const Element& key) const;
  void insert(Element key, Element value);
  void finalize();  // sort and deduplicate
};

/// The graph of a catalog morphism over the depth grid, its pairwise sums,
/// and the oracle approximant terms of every grid element (so the sup checks
/// have their chains available).
MorphismGraph graph_of(const Morphism& f, unsigned depth);

/// The glued map Z -> T determined by gamma_c on compacts and gamma_s on the
/// soft part, tabulated over the extended depth grid.
MorphismGraph glue_graph(const Morphism& gamma_c, const Morphism& gamma_s, unsigned depth);

/// Exhaustive monotone / additive / zero / sup checks on the graph.
CheckReport brute_morphism_check(const MorphismGraph& g, unsigned depth);

/// Configuration of the aggregated lemma suite. Empty filter lists select
/// nothing (the vacuous suite); absent filters select the whole built-in
/// catalog. Sampling is deterministic in the seed.
struct LemmaSuiteConfig {
  unsigned depth = 6;
  unsigned frac_bound = 6;
  std::optional<std::vector<std::string>> models;
  std::optional<std::vector<std::string>> morphisms;
  std::uint64_t seed = 1;
};

/// Built-in catalog: the concrete models, the morphisms between them, and the
/// validated factorization pairs used across the suites.
std::vector<SemigroupModel> standard_models();
std::vector<Morphism> standard_morphisms();
std::vector<FactorPair> standard_pairs();

/// Runs the aggregated sweeps: identity correspondence, composition
/// permanence, the mu-comparison lemma, the ceiling bound on alpha, mu-set
/// nesting, the anchor identity, and the negative controls (which must fail
/// in exactly the expected way).
CheckReport lemma_suite(const LemmaSuiteConfig& cfg);

}  // namespace cuf

#endif
