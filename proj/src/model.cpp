// SPDX-License-Identifier: Apache-2.0

#include "cuf/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cuf {

LscPoset LscPoset::from_edges(std::vector<std::string> points,
                              std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  LscPoset p;
  p.points = std::move(points);
  p.edges = std::move(edges);
  const size_t n = p.points.size();
  p.leq.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) p.leq[i][i] = true;
  for (auto& [lo, hi] : p.edges) {
    if (lo >= n || hi >= n) throw std::invalid_argument("LscPoset: edge out of range");
    p.leq[lo][hi] = true;
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (p.leq[i][k] && p.leq[k][j]) p.leq[i][j] = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && p.leq[i][j] && p.leq[j][i])
        throw std::invalid_argument("LscPoset: cycle in cover edges");
  return p;
}

std::optional<std::uint32_t> TableData::index_of(const std::string& name) const {
  for (std::uint32_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

TableData table_t4() {
  TableData t;
  t.names = {"0", "x", "y", "top"};
  t.zero = 0;
  // 0 neutral, top absorbing, x+x = x+y = y+y = top.
  t.add = {{0, 1, 2, 3}, {1, 3, 3, 3}, {2, 3, 3, 3}, {3, 3, 3, 3}};
  t.leq.assign(4, std::vector<bool>(4, false));
  for (int i = 0; i < 4; ++i) {
    t.leq[i][i] = true;
    t.leq[0][i] = true;
    t.leq[i][3] = true;
  }
  return t;
}

TableData table_t4_bad() {
  TableData t = table_t4();
  t.add[3][1] = 1;  // top + x = x: breaks monotonicity of addition
  t.add[1][3] = 1;
  return t;
}

SemigroupModel SemigroupModel::nbar() {
  SemigroupModel m;
  m.kind_ = ModelKind::Nbar;
  m.name_ = "Nbar";
  return m;
}

SemigroupModel SemigroupModel::z() {
  SemigroupModel m;
  m.kind_ = ModelKind::Z;
  m.name_ = "Z";
  return m;
}

SemigroupModel SemigroupModel::half_line() {
  SemigroupModel m;
  m.kind_ = ModelKind::HalfLine;
  m.name_ = "HalfLine";
  return m;
}

SemigroupModel SemigroupModel::kq(std::set<unsigned long> primes) {
  if (primes.empty()) throw std::invalid_argument("Kq model needs a nonempty prime set");
  SemigroupModel m;
  m.kind_ = ModelKind::Kq;
  m.primes_ = std::move(primes);
  m.name_ = "Kq";
  return m;
}

SemigroupModel SemigroupModel::product(std::vector<SemigroupModel> parts) {
  if (parts.empty()) throw std::invalid_argument("Product model needs at least one part");
  SemigroupModel m;
  m.kind_ = ModelKind::Product;
  m.parts_ = std::move(parts);
  m.name_ = "Product";
  return m;
}

SemigroupModel SemigroupModel::lsc(LscPoset poset) {
  if (poset.points.empty()) throw std::invalid_argument("Lsc model needs a nonempty poset");
  SemigroupModel m;
  m.kind_ = ModelKind::Lsc;
  m.poset_ = std::make_shared<const LscPoset>(std::move(poset));
  m.name_ = "Lsc";
  return m;
}

SemigroupModel SemigroupModel::table(TableData data) {
  if (data.names.empty()) throw std::invalid_argument("Table model needs a nonempty carrier");
  SemigroupModel m;
  m.kind_ = ModelKind::Table;
  m.table_ = std::make_shared<const TableData>(std::move(data));
  m.name_ = "Table";
  return m;
}

bool SemigroupModel::operator==(const SemigroupModel& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case ModelKind::Kq:
      return primes_ == o.primes_;
    case ModelKind::Product:
      return parts_ == o.parts_;
    case ModelKind::Lsc:
      return poset_->points == o.poset_->points && poset_->leq == o.poset_->leq;
    case ModelKind::Table:
      return table_->names == o.table_->names && table_->add == o.table_->add &&
             table_->leq == o.table_->leq && table_->zero == o.table_->zero;
    default:
      return true;
  }
}

std::string SemigroupModel::describe() const {
  switch (kind_) {
    case ModelKind::Nbar:
      return "Nbar";
    case ModelKind::Z:
      return "Z";
    case ModelKind::HalfLine:
      return "HalfLine";
    case ModelKind::Kq: {
      std::string out = "Kq({";
      bool first = true;
      for (auto p : primes_) {
        if (!first) out += ",";
        out += std::to_string(p);
        first = false;
      }
      return out + "})";
    }
    case ModelKind::Product: {
      std::string out = "Product(";
      for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ",";
        out += parts_[i].describe();
      }
      return out + ")";
    }
    case ModelKind::Lsc:
      return "Lsc(" + std::to_string(poset_->points.size()) + " points)";
    case ModelKind::Table:
      return "Table(" + std::to_string(table_->size()) + " elements)";
  }
  return "?";
}

bool supported_denominator(const mpz_class& den, const std::set<unsigned long>& primes) {
  mpz_class d = den;
  for (auto p : primes) {
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) d /= static_cast<unsigned long>(p);
  }
  return d == 1;
}

namespace {

bool leaf_belongs(const SemigroupModel& S, const Element& e) {
  switch (S.kind()) {
    case ModelKind::Nbar:
      if (e.tag == Tag::Compact) return e.payload.is_integer();
      if (e.tag == Tag::Soft) return e.payload.is_inf();
      return false;
    case ModelKind::Z:
      if (e.tag == Tag::Compact) return e.payload.is_integer();
      if (e.tag == Tag::Soft) return e.payload.is_inf() || !e.payload.is_zero();
      return false;
    case ModelKind::Kq:
      if (e.tag == Tag::Compact)
        return !e.payload.is_inf() && supported_denominator(e.payload.den(), S.primes());
      if (e.tag == Tag::Soft) return e.payload.is_inf() || !e.payload.is_zero();
      return false;
    case ModelKind::HalfLine:
      return e.tag == Tag::Scalar;
    default:
      return false;
  }
}

}  // namespace

bool belongs(const SemigroupModel& S, const Element& e) {
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq:
    case ModelKind::HalfLine:
      return leaf_belongs(S, e);
    case ModelKind::Product: {
      if (e.tag != Tag::Tuple || e.parts.size() != S.parts().size()) return false;
      for (size_t i = 0; i < e.parts.size(); ++i)
        if (!belongs(S.parts()[i], e.parts[i])) return false;
      return true;
    }
    case ModelKind::Lsc: {
      if (e.tag != Tag::Lsc || e.values.size() != S.poset().points.size()) return false;
      const auto& po = S.poset();
      for (const auto& v : e.values)
        if (!v.is_inf() && !v.is_integer()) return false;
      for (size_t i = 0; i < e.values.size(); ++i)
        for (size_t j = 0; j < e.values.size(); ++j)
          if (po.leq[i][j] && !(e.values[i] <= e.values[j])) return false;
      return true;
    }
    case ModelKind::Table:
      return e.tag == Tag::Table && e.index < S.table_data().size();
  }
  return false;
}

Element canonical(const SemigroupModel& S, const Element& e) {
  Element out = e;
  if ((S.kind() == ModelKind::Z || S.kind() == ModelKind::Kq || S.kind() == ModelKind::Nbar) &&
      out.tag == Tag::Soft && out.payload.is_zero()) {
    out = Element::compact(Ext());
  }
  if (S.kind() == ModelKind::Product && out.tag == Tag::Tuple &&
      out.parts.size() == S.parts().size()) {
    for (size_t i = 0; i < out.parts.size(); ++i)
      out.parts[i] = canonical(S.parts()[i], out.parts[i]);
    return out;
  }
  if (!belongs(S, out))
    throw ModelMismatch(out.str() + " is not an element of " + S.describe());
  return out;
}

namespace {

/// Validation without the normalizing copy; the operations below require
/// canonical inputs and only need the membership check.
void require_member(const SemigroupModel& S, const Element& e) {
  if (!belongs(S, e))
    throw ModelMismatch(e.str() + " is not an element of " + S.describe());
}

}  // namespace

Element zero_of(const SemigroupModel& S) {
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq:
      return Element::compact(Ext());
    case ModelKind::HalfLine:
      return Element::scalar(Ext());
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (const auto& p : S.parts()) parts.push_back(zero_of(p));
      return Element::tuple(std::move(parts));
    }
    case ModelKind::Lsc:
      return Element::lsc(std::vector<Ext>(S.poset().points.size(), Ext()));
    case ModelKind::Table:
      return Element::table(S.table_data().zero);
  }
  throw std::logic_error("zero_of: bad kind");
}

Element add(const SemigroupModel& S, const Element& a, const Element& b) {
  require_member(S, a);
  require_member(S, b);
  const Element& x = a;
  const Element& y = b;
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq: {
      Ext sum = x.payload + y.payload;
      // A soft summand keeps the result in the soft part; this is the
      // compact-plus-soft rule n + t = sigma(n) + t.
      if (x.tag == Tag::Soft || y.tag == Tag::Soft)
        return canonical(S, Element::soft(sum));
      return Element::compact(sum);
    }
    case ModelKind::HalfLine:
      return Element::scalar(x.payload + y.payload);
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (size_t i = 0; i < x.parts.size(); ++i)
        parts.push_back(add(S.parts()[i], x.parts[i], y.parts[i]));
      return Element::tuple(std::move(parts));
    }
    case ModelKind::Lsc: {
      std::vector<Ext> vals;
      for (size_t i = 0; i < x.values.size(); ++i) vals.push_back(x.values[i] + y.values[i]);
      return Element::lsc(std::move(vals));
    }
    case ModelKind::Table:
      return Element::table(S.table_data().add[x.index][y.index]);
  }
  throw std::logic_error("add: bad kind");
}

Element scalar_mul(const SemigroupModel& S, const mpz_class& k, const Element& a) {
  if (k < 0) throw std::invalid_argument("scalar_mul: negative multiplier");
  require_member(S, a);
  const Element& x = a;
  if (k == 0) return zero_of(S);
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq: {
      Ext p = x.payload.times(k);
      return x.tag == Tag::Soft ? canonical(S, Element::soft(p)) : Element::compact(p);
    }
    case ModelKind::HalfLine:
      return Element::scalar(x.payload.times(k));
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (size_t i = 0; i < x.parts.size(); ++i)
        parts.push_back(scalar_mul(S.parts()[i], k, x.parts[i]));
      return Element::tuple(std::move(parts));
    }
    case ModelKind::Lsc: {
      std::vector<Ext> vals;
      for (const auto& v : x.values) vals.push_back(v.times(k));
      return Element::lsc(std::move(vals));
    }
    case ModelKind::Table: {
      // Iterated sums in a finite monoid are eventually periodic; walk with
      // cycle detection so arbitrary k stays exact.
      std::vector<std::uint32_t> seen;  // seen[i] = index of (i+1) * x
      std::uint32_t cur = x.index;
      seen.push_back(cur);
      mpz_class steps = 1;
      while (steps < k) {
        cur = S.table_data().add[cur][x.index];
        for (size_t i = 0; i < seen.size(); ++i) {
          if (seen[i] == cur) {
            // (i+1)*x == (seen.size()+1)*x: cycle of length seen.size()-i.
            mpz_class rem = (k - (i + 1)) % static_cast<unsigned long>(seen.size() - i);
            return Element::table(seen[i + rem.get_ui()]);
          }
        }
        seen.push_back(cur);
        ++steps;
      }
      return Element::table(cur);
    }
  }
  throw std::logic_error("scalar_mul: bad kind");
}

Element mult_inf(const SemigroupModel& S, const Element& a) {
  require_member(S, a);
  const Element& x = a;
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq:
      return x.payload.is_zero() ? zero_of(S) : Element::soft(Ext::inf());
    case ModelKind::HalfLine:
      return x.payload.is_zero() ? zero_of(S) : Element::scalar(Ext::inf());
    case ModelKind::Product: {
      std::vector<Element> parts;
      for (size_t i = 0; i < x.parts.size(); ++i)
        parts.push_back(mult_inf(S.parts()[i], x.parts[i]));
      return Element::tuple(std::move(parts));
    }
    case ModelKind::Lsc: {
      std::vector<Ext> vals;
      for (const auto& v : x.values) vals.push_back(v.is_zero() ? Ext() : Ext::inf());
      return Element::lsc(std::move(vals));
    }
    case ModelKind::Table: {
      // sup of n*x; the multiples stabilize in a valid finite model.
      Element cur = x;
      for (std::uint32_t i = 0; i <= S.table_data().size(); ++i) {
        Element next = add(S, cur, x);
        if (next == cur) return cur;
        cur = next;
      }
      throw UnsupportedChainForm("multiples of " + x.str() + " do not stabilize");
    }
  }
  throw std::logic_error("mult_inf: bad kind");
}

bool leq(const SemigroupModel& S, const Element& a, const Element& b) {
  require_member(S, a);
  require_member(S, b);
  const Element& x = a;
  const Element& y = b;
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq: {
      if (x.tag == y.tag) return x.payload <= y.payload;
      // Mixed comparison: a compact sits below a soft element only strictly,
      // a soft element sits below its own compact counterpart.
      if (x.tag == Tag::Compact) return x.payload < y.payload;
      return x.payload <= y.payload;
    }
    case ModelKind::HalfLine:
      return x.payload <= y.payload;
    case ModelKind::Product: {
      for (size_t i = 0; i < x.parts.size(); ++i)
        if (!leq(S.parts()[i], x.parts[i], y.parts[i])) return false;
      return true;
    }
    case ModelKind::Lsc: {
      for (size_t i = 0; i < x.values.size(); ++i)
        if (!(x.values[i] <= y.values[i])) return false;
      return true;
    }
    case ModelKind::Table:
      return S.table_data().leq[x.index][y.index];
  }
  throw std::logic_error("leq: bad kind");
}

bool way_below(const SemigroupModel& S, const Element& a, const Element& b) {
  require_member(S, a);
  require_member(S, b);
  const Element& x = a;
  const Element& y = b;
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::Z:
    case ModelKind::Kq: {
      if (y.tag == Tag::Compact) return leq(S, x, y);
      return x.payload < y.payload;  // covers the zero, which has payload 0 < soft payload
    }
    case ModelKind::HalfLine:
      return x.payload.is_zero() || x.payload < y.payload;
    case ModelKind::Product: {
      for (size_t i = 0; i < x.parts.size(); ++i)
        if (!way_below(S.parts()[i], x.parts[i], y.parts[i])) return false;
      return true;
    }
    case ModelKind::Lsc: {
      // Pointwise way-below in N u {inf}: dominated and finite.
      for (size_t i = 0; i < x.values.size(); ++i)
        if (x.values[i].is_inf() || !(x.values[i] <= y.values[i])) return false;
      return true;
    }
    case ModelKind::Table:
      // Increasing sequences in a finite model stabilize at their supremum.
      return leq(S, x, y);
  }
  throw std::logic_error("way_below: bad kind");
}

bool is_compact(const SemigroupModel& S, const Element& a) { return way_below(S, a, a); }

std::vector<Element> enumerate_grid(const SemigroupModel& S, unsigned depth) {
  if (depth < 1) throw std::invalid_argument("enumerate_grid: depth must be >= 1");
  std::vector<Element> out;
  auto fractions = [&](bool include_zero) {
    std::vector<Ext> fr;
    if (include_zero) fr.push_back(Ext());
    for (unsigned long q = 1; q <= depth; ++q)
      for (unsigned long p = 1; p <= depth; ++p) {
        if (std::gcd(p, q) != 1) continue;
        fr.push_back(Ext(static_cast<long>(p), static_cast<long>(q)));
      }
    return fr;
  };
  switch (S.kind()) {
    case ModelKind::Nbar: {
      for (unsigned long n = 0; n <= depth; ++n) out.push_back(Element::compact(Ext(n)));
      out.push_back(Element::soft(Ext::inf()));
      break;
    }
    case ModelKind::Z: {
      for (unsigned long n = 0; n <= depth; ++n) out.push_back(Element::compact(Ext(n)));
      for (const auto& f : fractions(false)) out.push_back(Element::soft(f));
      out.push_back(Element::soft(Ext::inf()));
      break;
    }
    case ModelKind::Kq: {
      out.push_back(Element::compact(Ext()));
      for (const auto& f : fractions(false)) {
        if (supported_denominator(f.den(), S.primes())) out.push_back(Element::compact(f));
        out.push_back(Element::soft(f));
      }
      out.push_back(Element::soft(Ext::inf()));
      break;
    }
    case ModelKind::HalfLine: {
      for (const auto& f : fractions(true)) out.push_back(Element::scalar(f));
      out.push_back(Element::scalar(Ext::inf()));
      break;
    }
    case ModelKind::Product: {
      std::vector<std::vector<Element>> grids;
      for (const auto& p : S.parts()) grids.push_back(enumerate_grid(p, depth));
      std::vector<Element> acc{Element::tuple({})};
      for (const auto& g : grids) {
        std::vector<Element> next;
        for (const auto& prefix : acc)
          for (const auto& e : g) {
            Element t = prefix;
            t.parts.push_back(e);
            next.push_back(std::move(t));
          }
        acc = std::move(next);
      }
      out = std::move(acc);
      break;
    }
    case ModelKind::Lsc: {
      const auto& po = S.poset();
      const size_t n = po.points.size();
      std::vector<Ext> values;
      for (unsigned long v = 0; v <= depth; ++v) values.push_back(Ext(v));
      values.push_back(Ext::inf());
      std::vector<Ext> cur(n, Ext());
      auto rec = [&](auto&& self, size_t i) -> void {
        if (i == n) {
          out.push_back(Element::lsc(cur));
          return;
        }
        for (const auto& v : values) {
          cur[i] = v;
          bool ok = true;
          for (size_t j = 0; j < i && ok; ++j) {
            if (po.leq[j][i] && !(cur[j] <= v)) ok = false;
            if (po.leq[i][j] && !(v <= cur[j])) ok = false;
          }
          if (ok) self(self, i + 1);
        }
        cur[i] = Ext();
      };
      rec(rec, 0);
      break;
    }
    case ModelKind::Table: {
      for (std::uint32_t i = 0; i < S.table_data().size(); ++i) out.push_back(Element::table(i));
      break;
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool is_strongly_soft(const SemigroupModel& S, const Element& a, unsigned depth) {
  require_member(S, a);
  const Element& x = a;
  switch (S.kind()) {
    case ModelKind::HalfLine:
      return true;  // every element of [0, inf] is strongly soft
    case ModelKind::Z:
    case ModelKind::Kq:
      // The soft part and the zero are strongly soft; a nonzero compact c has
      // c << c, and c + t <= c forces t = 0, which fails c <= inf * 0.
      return x.tag == Tag::Soft || x.payload.is_zero();
    case ModelKind::Product: {
      for (size_t i = 0; i < x.parts.size(); ++i)
        if (!is_strongly_soft(S.parts()[i], x.parts[i], depth)) return false;
      return true;
    }
    default: {
      const auto grid = enumerate_grid(S, depth);
      for (const auto& ap : grid) {
        if (!way_below(S, ap, x)) continue;
        bool found = false;
        for (const auto& t : grid) {
          if (leq(S, add(S, ap, t), x) && leq(S, x, mult_inf(S, t))) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      return true;
    }
  }
}

bool downset_grid_complete(const SemigroupModel& S, const Element& x, unsigned depth) {
  const Ext bound(static_cast<unsigned long>(depth));
  switch (S.kind()) {
    case ModelKind::Table:
      return true;
    case ModelKind::Nbar:
      return !x.payload.is_inf() && x.payload <= bound;
    case ModelKind::Z:
    case ModelKind::Kq:
    case ModelKind::HalfLine:
      return x.payload.is_zero();  // only the zero has a finite downset
    case ModelKind::Lsc: {
      for (const auto& v : x.values)
        if (v.is_inf() || !(v <= bound)) return false;
      return true;
    }
    case ModelKind::Product: {
      for (size_t i = 0; i < x.parts.size(); ++i)
        if (!downset_grid_complete(S.parts()[i], x.parts[i], depth)) return false;
      return true;
    }
  }
  return false;
}

std::optional<Element> least_upper_bound_in(const SemigroupModel& S,
                                            const std::vector<Element>& universe,
                                            const std::vector<Element>& terms) {
  auto dominates = [&](const Element& u) {
    for (const auto& t : terms)
      if (!leq(S, t, u)) return false;
    return true;
  };
  bool found = false;
  Element best;
  for (const auto& u : universe) {
    if (!dominates(u)) continue;
    if (!found || leq(S, u, best)) {
      best = u;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  for (const auto& u : universe)
    if (dominates(u) && !leq(S, best, u)) return std::nullopt;  // no least bound
  return best;
}

std::string print_element(const SemigroupModel& S, const Element& e) {
  switch (S.kind()) {
    case ModelKind::Nbar:
    case ModelKind::HalfLine:
      return e.payload.str();
    case ModelKind::Z:
    case ModelKind::Kq:
      return (e.tag == Tag::Compact ? "compact:" : "soft:") + e.payload.str();
    case ModelKind::Product: {
      std::string out = "(";
      for (size_t i = 0; i < e.parts.size(); ++i) {
        if (i) out += ",";
        out += print_element(S.parts()[i], e.parts[i]);
      }
      return out + ")";
    }
    case ModelKind::Lsc:
      return e.str();
    case ModelKind::Table:
      return e.index < S.table_data().size() ? S.table_data().names[e.index] : e.str();
  }
  return e.str();
}

namespace {

std::optional<std::vector<std::string>> split_top_level(const std::string& body) {
  std::vector<std::string> parts;
  int nest = 0;
  std::string cur;
  for (char c : body) {
    if (c == '(' || c == '[') ++nest;
    if (c == ')' || c == ']') --nest;
    if (nest < 0) return std::nullopt;
    if (c == ',' && nest == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (nest != 0) return std::nullopt;
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::optional<Element> parse_element(const SemigroupModel& S, const std::string& text) {
  auto canon = [&](Element e) -> std::optional<Element> {
    try {
      return canonical(S, e);
    } catch (const ModelMismatch&) {
      return std::nullopt;
    }
  };
  switch (S.kind()) {
    case ModelKind::Nbar: {
      auto v = Ext::parse(text);
      if (!v) return std::nullopt;
      return canon(v->is_inf() ? Element::soft(*v) : Element::compact(*v));
    }
    case ModelKind::HalfLine: {
      auto v = Ext::parse(text);
      if (!v) return std::nullopt;
      return canon(Element::scalar(*v));
    }
    case ModelKind::Z:
    case ModelKind::Kq: {
      if (text.rfind("compact:", 0) == 0) {
        auto v = Ext::parse(text.substr(8));
        if (!v) return std::nullopt;
        return canon(Element::compact(*v));
      }
      if (text.rfind("soft:", 0) == 0) {
        auto v = Ext::parse(text.substr(5));
        if (!v) return std::nullopt;
        return canon(Element::soft(*v));
      }
      if (text == "inf") return canon(Element::soft(Ext::inf()));
      return std::nullopt;
    }
    case ModelKind::Product: {
      if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
      auto parts = split_top_level(text.substr(1, text.size() - 2));
      if (!parts || parts->size() != S.parts().size()) return std::nullopt;
      std::vector<Element> es;
      for (size_t i = 0; i < parts->size(); ++i) {
        auto e = parse_element(S.parts()[i], (*parts)[i]);
        if (!e) return std::nullopt;
        es.push_back(*e);
      }
      return canon(Element::tuple(std::move(es)));
    }
    case ModelKind::Lsc: {
      if (text.size() < 2 || text.front() != '[' || text.back() != ']') return std::nullopt;
      auto parts = split_top_level(text.substr(1, text.size() - 2));
      if (!parts) return std::nullopt;
      std::vector<Ext> vals;
      for (const auto& p : *parts) {
        auto v = Ext::parse(p);
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      return canon(Element::lsc(std::move(vals)));
    }
    case ModelKind::Table: {
      auto idx = S.table_data().index_of(text);
      if (!idx) return std::nullopt;
      return Element::table(*idx);
    }
  }
  return std::nullopt;
}

}  // namespace cuf
