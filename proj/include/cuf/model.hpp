// SPDX-License-Identifier: Apache-2.0

#ifndef CUF_MODEL_HPP
#define CUF_MODEL_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cuf/element.hpp"
#include "cuf/errors.hpp"

namespace cuf {

/// Finite poset given as a DAG of cover edges. The carrier of the Lsc model
/// is the set of order-preserving maps from this poset into N u {inf}.
struct LscPoset {
  std::vector<std::string> points;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (lower, upper)
  std::vector<std::vector<bool>> leq;                          // reflexive-transitive closure

  static LscPoset from_edges(std::vector<std::string> points,
                             std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);
};

/// Finite Cayley data: element names, full addition table, order relation.
struct TableData {
  std::vector<std::string> names;
  std::vector<std::vector<std::uint32_t>> add;
  std::vector<std::vector<bool>> leq;
  std::uint32_t zero = 0;

  std::uint32_t size() const { return static_cast<std::uint32_t>(names.size()); }
  std::optional<std::uint32_t> index_of(const std::string& name) const;
};

/// The witness-failure table from the order checks: carrier {0, x, y, top}
/// with x + x = x + y = y + y = top, top absorbing, x and y incomparable.
TableData table_t4();
/// table_t4 with one addition entry broken (top + x = x), a seeded fault that
/// the axiom checker must catch.
TableData table_t4_bad();

enum class ModelKind : std::uint8_t { Nbar, Z, HalfLine, Kq, Product, Lsc, Table };

/// A concrete Cu-semigroup model with decidable add / leq / way-below,
/// canonical forms, grid enumeration and chain suprema. Immutable value type;
/// every operation on it is a pure function, safe to share across threads.
class SemigroupModel {
public:
  static SemigroupModel nbar();
  static SemigroupModel z();
  static SemigroupModel half_line();
  static SemigroupModel kq(std::set<unsigned long> primes);
  static SemigroupModel product(std::vector<SemigroupModel> parts);
  static SemigroupModel lsc(LscPoset poset);
  static SemigroupModel table(TableData data);

  ModelKind kind() const { return kind_; }
  const std::set<unsigned long>& primes() const { return primes_; }
  const std::vector<SemigroupModel>& parts() const { return parts_; }
  const LscPoset& poset() const { return *poset_; }
  const TableData& table_data() const { return *table_; }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool operator==(const SemigroupModel& o) const;
  bool operator!=(const SemigroupModel& o) const { return !(*this == o); }
  std::string describe() const;

private:
  SemigroupModel() = default;

  ModelKind kind_ = ModelKind::Z;
  std::set<unsigned long> primes_;
  std::vector<SemigroupModel> parts_;
  std::shared_ptr<const LscPoset> poset_;
  std::shared_ptr<const TableData> table_;
  std::string name_;
};

/// True when the denominator's prime factors all lie in `primes`.
bool supported_denominator(const mpz_class& den, const std::set<unsigned long>& primes);

bool belongs(const SemigroupModel& S, const Element& e);

/// Canonical form: lowest-terms payloads, soft zero collapsed to the compact
/// zero, Lsc monotonicity validated. Throws ModelMismatch for foreign elements.
Element canonical(const SemigroupModel& S, const Element& e);

Element zero_of(const SemigroupModel& S);

Element add(const SemigroupModel& S, const Element& a, const Element& b);
Element scalar_mul(const SemigroupModel& S, const mpz_class& k, const Element& a);
/// inf * a, the supremum of the multiples of a.
Element mult_inf(const SemigroupModel& S, const Element& a);

bool leq(const SemigroupModel& S, const Element& a, const Element& b);
bool way_below(const SemigroupModel& S, const Element& a, const Element& b);
bool is_compact(const SemigroupModel& S, const Element& a);

/// Bounded decision for strong softness: every grid a' with a' << a must
/// admit t with a' + t <= a <= inf * t. The half-line and the soft/zero part
/// of Z and K_q short-circuit; elsewhere the witness search runs over the
/// depth grid.
bool is_strongly_soft(const SemigroupModel& S, const Element& a, unsigned depth);

/// Deterministic, duplicate-free, inclusion-monotone-in-depth grid: integer
/// payloads <= depth, rational payloads with numerator and denominator
/// <= depth, plus 0 and inf. Sorted in canonical order.
std::vector<Element> enumerate_grid(const SemigroupModel& S, unsigned depth);

/// True when the depth grid provably contains the whole downset of x, in
/// which case an exhausted witness search below x certifies failure instead
/// of hitting a bound.
bool downset_grid_complete(const SemigroupModel& S, const Element& x, unsigned depth);

/// Least element of `universe` dominating every term, if one exists.
std::optional<Element> least_upper_bound_in(const SemigroupModel& S,
                                            const std::vector<Element>& universe,
                                            const std::vector<Element>& terms);

/// Model-aware rendering (half-line and Nbar payloads print bare; table
/// elements print their names).
std::string print_element(const SemigroupModel& S, const Element& e);
/// Inverse of print_element on canonical spellings; nullopt on garbage.
std::optional<Element> parse_element(const SemigroupModel& S, const std::string& text);

}  // namespace cuf

#endif
