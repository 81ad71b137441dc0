/// @file  feature_algebra.hpp
/// @brief Boolean feature expressions, feature models and their product-set semantics
///
/// A FeatureModel fixes the feature names N and the valid products px. Every
/// FeatureExpr denotes a ProductSet: the valid products satisfying it. Product
/// sets are explicit bitsets indexed by the canonical enumeration of px, so two
/// logically equivalent expressions always denote equal sets.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace wfts {

/// Immutable boolean formula over feature names.
class FeatureExpr {
public:
  enum class Kind { True, False, Var, Not, And, Or };

  /// Default-constructed expression is `true`.
  FeatureExpr();

  static FeatureExpr top();
  static FeatureExpr bottom();
  static FeatureExpr var(std::string name);

  Kind kind() const noexcept;
  /// Feature name of a Var node.
  const std::string& name() const;
  /// Operand of Not, left operand of And/Or.
  const FeatureExpr& lhs() const;
  /// Right operand of And/Or.
  const FeatureExpr& rhs() const;

  bool isTrue() const noexcept { return kind() == Kind::True; }

  /// Structural equality; use ProductSet equality for semantic comparison.
  friend bool operator==(const FeatureExpr& a, const FeatureExpr& b);

  /// Renders with minimal parentheses using `!`, `&&`, `||`.
  std::string toString() const;

private:
  struct Node;
  explicit FeatureExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;

  friend FeatureExpr exprNot(FeatureExpr e);
  friend FeatureExpr exprAnd(FeatureExpr a, FeatureExpr b);
  friend FeatureExpr exprOr(FeatureExpr a, FeatureExpr b);
};

FeatureExpr exprNot(FeatureExpr e);
FeatureExpr exprAnd(FeatureExpr a, FeatureExpr b);
FeatureExpr exprOr(FeatureExpr a, FeatureExpr b);

/// A set of features; bit i is set iff the i-th declared feature is selected.
struct Product {
  std::uint32_t bits = 0;

  bool has(std::size_t feature) const noexcept { return (bits >> feature) & 1U; }
  friend bool operator==(Product, Product) = default;
};

/// Subset of the valid products of one feature model.
class ProductSet {
public:
  ProductSet() = default;
  explicit ProductSet(std::size_t universe, bool full = false);

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t count() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool full() const noexcept { return bits_.all(); }
  bool contains(std::size_t product) const { return bits_.test(product); }
  void insert(std::size_t product) { bits_.set(product); }

  bool isSubsetOf(const ProductSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const ProductSet& other) const { return bits_.intersects(other.bits_); }

  /// Complement relative to the valid products.
  ProductSet complement() const;

  ProductSet& operator&=(const ProductSet& o) { bits_ &= o.bits_; return *this; }
  ProductSet& operator|=(const ProductSet& o) { bits_ |= o.bits_; return *this; }
  ProductSet& operator-=(const ProductSet& o) { bits_ -= o.bits_; return *this; }
  friend ProductSet operator&(ProductSet a, const ProductSet& b) { return a &= b; }
  friend ProductSet operator|(ProductSet a, const ProductSet& b) { return a |= b; }
  friend ProductSet operator-(ProductSet a, const ProductSet& b) { return a -= b; }
  friend bool operator==(const ProductSet& a, const ProductSet& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const ProductSet& a, const ProductSet& b) { return a.bits_ < b.bits_; }

  static constexpr std::size_t npos = boost::dynamic_bitset<std::uint64_t>::npos;
  /// Smallest member index, or npos.
  std::size_t first() const { return bits_.find_first(); }
  /// Smallest member index greater than `i`, or npos.
  std::size_t next(std::size_t i) const { return bits_.find_next(i); }

  /// Member indices in increasing order.
  std::vector<std::size_t> members() const;

private:
  boost::dynamic_bitset<std::uint64_t> bits_;
};

/// Feature names plus a constraint restricting the valid products.
///
/// Construction enumerates px eagerly; the model is immutable afterwards and
/// cheap to copy.
class FeatureModel {
public:
  static constexpr std::size_t kMaxFeatures = 20;

  /// A model without features: exactly one (empty) product.
  FeatureModel();
  /// Throws ModelError on duplicate/empty names, unknown constraint features,
  /// more than kMaxFeatures features, or an unsatisfiable constraint.
  FeatureModel(std::vector<std::string> features, FeatureExpr constraint = FeatureExpr::top());

  const std::vector<std::string>& features() const noexcept;
  const FeatureExpr& constraint() const noexcept;
  std::optional<std::size_t> findFeature(std::string_view name) const;

  /// Valid products in canonical order (lexicographic on the feature
  /// bit-vector read in declaration order).
  const std::vector<Product>& products() const noexcept;
  std::size_t productCount() const noexcept { return products().size(); }
  std::optional<std::size_t> productIndex(Product p) const;

  ProductSet all() const { return ProductSet(productCount(), true); }
  ProductSet none() const { return ProductSet(productCount()); }
  ProductSet singleton(std::size_t product) const;
  /// Valid products selecting the given feature.
  const ProductSet& withFeature(std::size_t feature) const;

  /// Feature names of the product in declaration order.
  std::vector<std::string> featureNames(Product p) const;
  /// `{S,T}` style rendering; the empty product renders as `{}`.
  std::string formatProduct(Product p) const;

  friend bool operator==(const FeatureModel& a, const FeatureModel& b);

private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Truth value of `e` for an arbitrary feature assignment (validity is not checked).
bool evaluate(const FeatureExpr& e, Product p, const FeatureModel& fm);

/// The valid products satisfying `e`. Throws ModelError for unknown features.
ProductSet denote(const FeatureExpr& e, const FeatureModel& fm);

bool isSatisfiable(const FeatureExpr& e, const FeatureModel& fm);

/// True iff every valid product satisfying `a` satisfies `b`.
bool entails(const FeatureExpr& a, const FeatureExpr& b, const FeatureModel& fm);

std::vector<Product> enumerateProducts(const FeatureModel& fm);

/// A compact DNF whose denotation equals `set`. Cubes are grown greedily,
/// treating invalid products as don't-cares.
FeatureExpr describe(const ProductSet& set, const FeatureModel& fm);

} // namespace wfts
