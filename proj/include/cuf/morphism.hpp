// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_MORPHISM_HPP
#define CUF_MORPHISM_HPP

#include "cuf/chain.hpp"

namespace cuf {

enum class MorphismKind : std::uint8_t {
  Identity,
  Zero,
  MultiplyBy,
  Infinite,   // x -> inf * x
  Sigma,      // soft retraction on Z or Kq, optionally landing in the half-line
  NatToSoft,  // Nbar -> Z, n -> soft n
  NatEmbed,   // Nbar -> Z, n -> compact n
  SoftIncl,   // HalfLine -> Z or Kq, t -> soft t
  Scale,      // payload scaling by a positive rational
  Proj,       // product -> factor
  Inj,        // factor -> product, zero elsewhere
  TableMap,   // explicit graph on a finite carrier
  Compose,    // factors in application order
};

/// A member of the closed morphism catalog. Closed forms per kind keep
/// suprema of mapped chains computable; arbitrary user functions are
/// representable only as TableMap graphs.
class Morphism {
public:
  MorphismKind kind = MorphismKind::Identity;
  SemigroupModel dom = SemigroupModel::z();
  SemigroupModel cod = SemigroupModel::z();
  unsigned long mult = 1;                           // MultiplyBy
  mpq_class ratio = 1;                              // Scale
  std::size_t index = 0;                            // Proj / Inj
  std::vector<std::pair<Element, Element>> graph;   // TableMap
  std::vector<Morphism> factors;                    // Compose
  bool declared_cu = false;
  std::string name;

  static Morphism identity(SemigroupModel S);
  static Morphism zero(SemigroupModel dom, SemigroupModel cod);
  static Morphism multiply_by(SemigroupModel S, unsigned long m);
  static Morphism infinite(SemigroupModel S);
  static Morphism sigma(SemigroupModel dom, bool to_half_line = false);
  static Morphism nat_to_soft();
  static Morphism nat_embed();
  static Morphism soft_incl(SemigroupModel cod);
  static Morphism scale(SemigroupModel dom, SemigroupModel cod, mpq_class r);
  static Morphism proj(SemigroupModel dom, std::size_t i);
  static Morphism inj(SemigroupModel cod, std::size_t i);
  static Morphism table_map(SemigroupModel dom, SemigroupModel cod,
                            std::vector<std::pair<Element, Element>> graph,
                            bool declared_cu = false);

  std::string describe() const;
};

Element apply(const Morphism& f, const Element& a);

/// g after f; f.cod must equal g.dom. The composite declares the Cu property
/// only if both factors do.
Morphism compose(const Morphism& g, const Morphism& f);

/// Image of a closed-form chain under a catalog morphism, when the form is
/// preserved (TableMap graphs on infinite grids are not).
std::optional<Chain> map_chain(const Morphism& f, const Chain& c);

}  // namespace cuf

#endif
