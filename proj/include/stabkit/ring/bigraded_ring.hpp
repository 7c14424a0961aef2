#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabkit/error.hpp"
#include "stabkit/exact/rational.hpp"

namespace stabkit {

/// Bidegree of a class on X x S, counted in real cohomological degree on each
/// factor. A class of complex bidegree (a, b) sits at (2a, 2b); odd Kunneth
/// classes such as H^1(X) (x) H^1(S) sit at (1, 1).
struct Bidegree {
  int x = 0;
  int s = 0;

  static constexpr Bidegree complex(int a, int b) { return {2 * a, 2 * b}; }

  [[nodiscard]] constexpr int total() const { return x + s; }
  [[nodiscard]] constexpr Bidegree swapped() const { return {s, x}; }

  friend constexpr Bidegree operator+(Bidegree l, Bidegree r) { return {l.x + r.x, l.s + r.s}; }
  friend constexpr auto operator<=>(const Bidegree&, const Bidegree&) = default;

  /// Complex units, e.g. "(1,0)" or "(1/2,1/2)".
  [[nodiscard]] std::string str() const {
    return "(" + Rational(x, 2).str() + "," + Rational(s, 2).str() + ")";
  }
};

struct BasisClass {
  std::string name;
  Bidegree degree;
};

/// Sparse linear combination of named basis classes.
using Terms = std::vector<std::pair<std::string, Rational>>;

/// Plain description of a ring, as read from JSON or produced by a preset.
struct RingSpec {
  int dim_x = 0;
  int dim_s = 0;
  std::vector<BasisClass> basis;
  struct Product {
    std::string x;
    std::string y;
    Terms result;
  };
  /// Missing products are zero, except that a pair listed in one order only is
  /// mirrored, and products with the unit default to the other factor.
  std::vector<Product> products;
  Terms integrals;
  Terms h1;
  Terms h2;
  Rational vol_s;
};

class RingElement;

/// Finite-dimensional bigraded numerical intersection ring of X x S with an
/// integration functional. Immutable after construction; always held through
/// shared_ptr so elements can refer back to it.
class BigradedRing : public std::enable_shared_from_this<BigradedRing> {
  struct Token {};

 public:
  using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

  /// Resolves names and fills the structure-constant table. Checks referential
  /// integrity only; use validate_ring() for the algebraic axioms.
  static std::shared_ptr<const BigradedRing> build(RingSpec spec);

  BigradedRing(Token, RingSpec spec) : spec_(std::move(spec)) {}

  [[nodiscard]] int dim_x() const { return spec_.dim_x; }
  [[nodiscard]] int dim_s() const { return spec_.dim_s; }
  [[nodiscard]] std::size_t size() const { return spec_.basis.size(); }
  [[nodiscard]] const std::vector<BasisClass>& basis() const { return spec_.basis; }
  [[nodiscard]] const RingSpec& spec() const { return spec_; }
  [[nodiscard]] const Rational& vol_s() const { return spec_.vol_s; }
  [[nodiscard]] std::size_t unit_index() const { return unit_; }
  [[nodiscard]] Bidegree top_degree() const { return Bidegree::complex(dim_x(), dim_s()); }

  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::size_t require_index(std::string_view name, const std::string& path = {}) const {
    if (auto idx = index_of(name)) return *idx;
    throw InputError(path, "unknown basis class \"" + std::string(name) + "\"");
  }

  [[nodiscard]] const SparseVector& product(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  [[nodiscard]] const Rational& top_value(std::size_t i) const { return top_[i]; }

  [[nodiscard]] RingElement zero() const;
  [[nodiscard]] RingElement one() const;
  [[nodiscard]] RingElement basis_element(std::size_t index) const;
  [[nodiscard]] RingElement basis_element(std::string_view name) const;
  [[nodiscard]] RingElement element(const Terms& terms, const std::string& path = {}) const;
  [[nodiscard]] RingElement h1() const;
  [[nodiscard]] RingElement h2() const;

 private:
  RingSpec spec_;
  std::map<std::string, std::size_t> index_;
  std::vector<SparseVector> table_;
  std::vector<Rational> top_;
  std::size_t unit_ = 0;
};

using RingPtr = std::shared_ptr<const BigradedRing>;

/// Value-type element of a BigradedRing: dense coefficients over the basis.
class RingElement {
 public:
  RingElement(RingPtr ring, std::vector<Rational> coefficients)
      : ring_(std::move(ring)), coeffs_(std::move(coefficients)) {
    if (!ring_) throw Error("ring element without a ring");
    coeffs_.resize(ring_->size());
  }

  [[nodiscard]] const BigradedRing& ring() const { return *ring_; }
  [[nodiscard]] const RingPtr& ring_ptr() const { return ring_; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coeffs_; }
  [[nodiscard]] const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  [[nodiscard]] Rational coefficient(std::string_view name) const { return coeffs_[ring_->require_index(name)]; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Projection onto the classes of one bidegree.
  [[nodiscard]] RingElement component(Bidegree degree) const {
    std::vector<Rational> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (ring_->basis()[i].degree == degree) out[i] = coeffs_[i];
    return {ring_, std::move(out)};
  }

  /// Projection onto classes of total complex degree `degree`.
  [[nodiscard]] RingElement component_of_total_degree(int degree) const {
    std::vector<Rational> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (ring_->basis()[i].degree.total() == 2 * degree) out[i] = coeffs_[i];
    return {ring_, std::move(out)};
  }

  /// True when every nonzero coefficient sits on a class of total complex degree `degree`.
  [[nodiscard]] bool has_total_degree(int degree) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero() && ring_->basis()[i].degree.total() != 2 * degree) return false;
    return true;
  }

  [[nodiscard]] bool has_bidegree(Bidegree degree) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero() && ring_->basis()[i].degree != degree) return false;
    return true;
  }

  [[nodiscard]] Terms terms() const {
    Terms out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) out.emplace_back(ring_->basis()[i].name, coeffs_[i]);
    return out;
  }

  [[nodiscard]] std::string str() const {
    std::string out;
    for (const auto& [name, c] : terms()) {
      if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
      else if (c.sign() < 0) out += "-";
      const Rational mag = c.abs();
      out += mag == Rational(1) ? name : mag.str() + "*" + name;
    }
    return out.empty() ? "0" : out;
  }

  friend RingElement operator+(const RingElement& x, const RingElement& y) {
    check_same_ring(x, y);
    std::vector<Rational> out(x.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.coeffs_[i] + y.coeffs_[i];
    return {x.ring_, std::move(out)};
  }

  friend RingElement operator-(const RingElement& x) {
    std::vector<Rational> out(x.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -x.coeffs_[i];
    return {x.ring_, std::move(out)};
  }

  friend RingElement operator-(const RingElement& x, const RingElement& y) { return x + (-y); }

  friend RingElement operator*(const Rational& s, const RingElement& x) {
    std::vector<Rational> out(x.coeffs_.size());
    if (!s.is_zero())
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * x.coeffs_[i];
    return {x.ring_, std::move(out)};
  }

  friend RingElement operator*(const RingElement& x, const RingElement& y) {
    check_same_ring(x, y);
    const BigradedRing& ring = *x.ring_;
    std::vector<Rational> out(x.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (x.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (y.coeffs_[j].is_zero()) continue;
        const Rational c = x.coeffs_[i] * y.coeffs_[j];
        for (const auto& [k, structure] : ring.product(i, j)) out[k] += c * structure;
      }
    }
    return {x.ring_, std::move(out)};
  }

  RingElement& operator+=(const RingElement& y) { return *this = *this + y; }
  RingElement& operator*=(const RingElement& y) { return *this = *this * y; }

  friend bool operator==(const RingElement& x, const RingElement& y) {
    return x.ring_ == y.ring_ && x.coeffs_ == y.coeffs_;
  }

  static void check_same_ring(const RingElement& x, const RingElement& y) {
    if (x.ring_ != y.ring_) throw Error("ring mismatch: elements belong to different rings");
  }

 private:
  RingPtr ring_;
  std::vector<Rational> coeffs_;
};

inline RingElement multiply(const RingElement& x, const RingElement& y) { return x * y; }

inline RingElement power(const RingElement& x, int exponent) {
  RingElement out = x.ring().one();
  for (int k = 0; k < exponent; ++k) out = out * x;
  return out;
}

/// Integration over X x S: the functional applied to the top-bidegree part.
inline Rational integrate(const RingElement& x) {
  const BigradedRing& ring = x.ring();
  Rational total;
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (!x[i].is_zero() && ring.basis()[i].degree == ring.top_degree()) total += x[i] * ring.top_value(i);
  return total;
}

// ---------------------------------------------------------------------------

inline std::shared_ptr<const BigradedRing> BigradedRing::build(RingSpec spec) {
  if (spec.dim_x <= 0 || spec.dim_s <= 0)
    throw InputError("n/r", "both factors must have positive dimension (got n=" + std::to_string(spec.dim_x) +
                                ", r=" + std::to_string(spec.dim_s) + ")");
  if (spec.basis.empty()) throw InputError("basis", "empty basis");

  auto ring = std::make_shared<BigradedRing>(Token{}, std::move(spec));
  const RingSpec& s = ring->spec_;
  const std::size_t n = s.basis.size();

  std::optional<std::size_t> unit;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string path = "basis[" + std::to_string(i) + "]";
    if (s.basis[i].name.empty()) throw InputError(path + ".name", "empty basis name");
    if (!ring->index_.emplace(s.basis[i].name, i).second)
      throw InputError(path + ".name", "duplicate basis class \"" + s.basis[i].name + "\"");
    if (s.basis[i].degree == Bidegree{0, 0}) {
      if (unit) throw InputError(path, "more than one class of bidegree (0,0)");
      unit = i;
    }
  }
  if (!unit) throw InputError("basis", "no class of bidegree (0,0) to serve as the unit");
  ring->unit_ = *unit;

  auto resolve = [&](const Terms& terms, const std::string& path) {
    SparseVector out;
    std::vector<Rational> dense(n);
    for (std::size_t t = 0; t < terms.size(); ++t)
      dense[ring->require_index(terms[t].first, path + "[" + std::to_string(t) + "].basis")] += terms[t].second;
    for (std::size_t k = 0; k < n; ++k)
      if (!dense[k].is_zero()) out.emplace_back(k, dense[k]);
    return out;
  };

  ring->table_.assign(n * n, {});
  std::vector<char> given(n * n, 0);
  for (std::size_t p = 0; p < s.products.size(); ++p) {
    const std::string path = "mult[" + std::to_string(p) + "]";
    const std::size_t i = ring->require_index(s.products[p].x, path + ".x");
    const std::size_t j = ring->require_index(s.products[p].y, path + ".y");
    if (given[i * n + j])
      throw InputError(path, "duplicate product entry for " + s.products[p].x + "*" + s.products[p].y);
    given[i * n + j] = 1;
    ring->table_[i * n + j] = resolve(s.products[p].result, path + ".result");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!given[i * n + j] && given[j * n + i]) ring->table_[i * n + j] = ring->table_[j * n + i];
  for (std::size_t i = 0; i < n; ++i) {
    if (!given[*unit * n + i] && !given[i * n + *unit]) {
      ring->table_[*unit * n + i] = {{i, Rational(1)}};
      ring->table_[i * n + *unit] = {{i, Rational(1)}};
    }
  }

  ring->top_.assign(n, Rational());
  for (const auto& [k, v] : resolve(s.integrals, "integral")) ring->top_[k] = v;
  resolve(s.h1, "h1");
  resolve(s.h2, "h2");
  return ring;
}

inline RingElement BigradedRing::zero() const { return {shared_from_this(), std::vector<Rational>(size())}; }

inline RingElement BigradedRing::one() const { return basis_element(unit_); }

inline RingElement BigradedRing::basis_element(std::size_t index) const {
  std::vector<Rational> coeffs(size());
  coeffs.at(index) = Rational(1);
  return {shared_from_this(), std::move(coeffs)};
}

inline RingElement BigradedRing::basis_element(std::string_view name) const {
  return basis_element(require_index(name));
}

inline RingElement BigradedRing::element(const Terms& terms, const std::string& path) const {
  std::vector<Rational> coeffs(size());
  for (std::size_t t = 0; t < terms.size(); ++t)
    coeffs[require_index(terms[t].first, path + "[" + std::to_string(t) + "].basis")] += terms[t].second;
  return {shared_from_this(), std::move(coeffs)};
}

inline RingElement BigradedRing::h1() const { return element(spec_.h1, "h1"); }
inline RingElement BigradedRing::h2() const { return element(spec_.h2, "h2"); }

// ---------------------------------------------------------------------------

struct RingViolation {
  std::string kind;
  std::vector<std::string> classes;
  std::string detail;
};

struct RingValidation {
  std::vector<RingViolation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks grading bounds, the unit law, commutativity and associativity on
/// all basis pairs/triples, bidegree additivity of the table, support of the
/// integration functional, the designated H1/H2 classes and vol_s > 0.
inline RingValidation validate_ring(const BigradedRing& ring) {
  RingValidation report;
  const auto& basis = ring.basis();
  const std::size_t n = ring.size();
  const int max_x = 2 * ring.dim_x();
  const int max_s = 2 * ring.dim_s();
  auto name = [&](std::size_t i) { return basis[i].name; };
  auto add = [&](std::string kind, std::vector<std::string> classes, std::string detail) {
    report.violations.push_back({std::move(kind), std::move(classes), std::move(detail)});
  };
  auto in_range = [&](Bidegree d) { return d.x >= 0 && d.s >= 0 && d.x <= max_x && d.s <= max_s; };

  for (std::size_t i = 0; i < n; ++i) {
    const Bidegree d = basis[i].degree;
    if (!in_range(d)) add("bidegree_range", {name(i)}, "bidegree " + d.str() + " outside the ring's grading");
    if (d.total() % 2 != 0) add("odd_total_degree", {name(i)}, "total degree of " + d.str() + " is not an integer");
  }

  const RingElement unit = ring.one();
  for (std::size_t i = 0; i < n; ++i) {
    const RingElement e = ring.basis_element(i);
    if (unit * e != e || e * unit != e) add("unit", {name(ring.unit_index()), name(i)}, "unit law fails");
  }

  std::vector<RingElement> basis_elems;
  basis_elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) basis_elems.push_back(ring.basis_element(i));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (basis_elems[i] * basis_elems[j] != basis_elems[j] * basis_elems[i])
        add("commutativity", {name(i), name(j)}, name(i) + "*" + name(j) + " != " + name(j) + "*" + name(i));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Bidegree target = basis[i].degree + basis[j].degree;
      for (const auto& [k, c] : ring.product(i, j)) {
        if (!in_range(target)) {
          add("grading", {name(i), name(j)}, "product exceeds the grading but is nonzero");
          break;
        }
        if (basis[k].degree != target) {
          add("grading", {name(i), name(j)},
              "product has a component on " + name(k) + " of bidegree " + basis[k].degree.str() + ", expected " +
                  target.str());
          break;
        }
      }
    }

  std::vector<RingElement> pair_products;
  pair_products.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pair_products.push_back(basis_elems[i] * basis_elems[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (pair_products[i * n + j] * basis_elems[k] != basis_elems[i] * pair_products[j * n + k])
          add("associativity", {name(i), name(j), name(k)},
              "(" + name(i) + "*" + name(j) + ")*" + name(k) + " != " + name(i) + "*(" + name(j) + "*" + name(k) + ")");

  for (std::size_t i = 0; i < n; ++i)
    if (!ring.top_value(i).is_zero() && basis[i].degree != ring.top_degree())
      add("integral_support", {name(i)}, "integration functional is nonzero on a class of bidegree " +
                                             basis[i].degree.str());

  const RingElement h1 = ring.h1();
  const RingElement h2 = ring.h2();
  if (h1.is_zero() || !h1.has_bidegree(Bidegree::complex(1, 0)))
    add("h1", {}, "H1 must be a nonzero class of bidegree (1,0)");
  if (h2.is_zero() || !h2.has_bidegree(Bidegree::complex(0, 1)))
    add("h2", {}, "H2 must be a nonzero class of bidegree (0,1)");
  if (ring.vol_s().sign() <= 0) add("vol_s", {}, "vol_s must be positive, got " + ring.vol_s().str());
  return report;
}

/// Builds a ring and throws unless validate_ring passes.
inline RingPtr build_validated_ring(RingSpec spec) {
  RingPtr ring = BigradedRing::build(std::move(spec));
  const RingValidation report = validate_ring(*ring);
  if (!report.ok()) {
    const RingViolation& first = report.violations.front();
    std::string classes;
    for (const auto& c : first.classes) classes += (classes.empty() ? "" : ",") + c;
    throw InputError("ring", "ring validation failed (" + first.kind + " [" + classes + "]: " + first.detail + ")");
  }
  return ring;
}

/// The same ring with the roles of X and S exchanged. `vol_x` becomes the new
/// vol_s, since the volume of the old first factor is not recoverable.
inline RingPtr swap_factors(const BigradedRing& ring, const Rational& vol_x) {
  RingSpec spec = ring.spec();
  std::swap(spec.dim_x, spec.dim_s);
  for (auto& b : spec.basis) b.degree = b.degree.swapped();
  std::swap(spec.h1, spec.h2);
  spec.vol_s = vol_x;
  return BigradedRing::build(std::move(spec));
}

/// Moves an element into an isomorphic ring with the same basis names.
inline RingElement transport(const RingElement& x, const RingPtr& target) {
  return target->element(x.terms());
}

}  // namespace stabkit
