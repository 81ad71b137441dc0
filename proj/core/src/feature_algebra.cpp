#include "wfts/feature_algebra.hpp"

#include <algorithm>
#include <unordered_map>

#include "wfts/errors.hpp"

namespace wfts {

// ---------------------------------------------------------------------------
// FeatureExpr
// ---------------------------------------------------------------------------

struct FeatureExpr::Node {
  Kind kind;
  std::string name;
  FeatureExpr lhs;
  FeatureExpr rhs;
};

FeatureExpr::FeatureExpr() : FeatureExpr(top()) {}

FeatureExpr::FeatureExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

FeatureExpr FeatureExpr::top() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True, {}, FeatureExpr(nullptr), FeatureExpr(nullptr)});
  return FeatureExpr(node);
}

FeatureExpr FeatureExpr::bottom() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False, {}, FeatureExpr(nullptr), FeatureExpr(nullptr)});
  return FeatureExpr(node);
}

FeatureExpr FeatureExpr::var(std::string name) {
  return FeatureExpr(std::make_shared<const Node>(Node{Kind::Var, std::move(name), FeatureExpr(nullptr), FeatureExpr(nullptr)}));
}

FeatureExpr exprNot(FeatureExpr e) {
  using Node = FeatureExpr::Node;
  return FeatureExpr(std::make_shared<const Node>(Node{FeatureExpr::Kind::Not, {}, std::move(e), FeatureExpr(nullptr)}));
}

FeatureExpr exprAnd(FeatureExpr a, FeatureExpr b) {
  using Node = FeatureExpr::Node;
  return FeatureExpr(std::make_shared<const Node>(Node{FeatureExpr::Kind::And, {}, std::move(a), std::move(b)}));
}

FeatureExpr exprOr(FeatureExpr a, FeatureExpr b) {
  using Node = FeatureExpr::Node;
  return FeatureExpr(std::make_shared<const Node>(Node{FeatureExpr::Kind::Or, {}, std::move(a), std::move(b)}));
}

FeatureExpr::Kind FeatureExpr::kind() const noexcept { return node_->kind; }
const std::string& FeatureExpr::name() const { return node_->name; }
const FeatureExpr& FeatureExpr::lhs() const { return node_->lhs; }
const FeatureExpr& FeatureExpr::rhs() const { return node_->rhs; }

bool operator==(const FeatureExpr& a, const FeatureExpr& b) {
  if (a.node_ == b.node_)
    return true;
  if (!a.node_ || !b.node_ || a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case FeatureExpr::Kind::True:
  case FeatureExpr::Kind::False:
    return true;
  case FeatureExpr::Kind::Var:
    return a.name() == b.name();
  case FeatureExpr::Kind::Not:
    return a.lhs() == b.lhs();
  case FeatureExpr::Kind::And:
  case FeatureExpr::Kind::Or:
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

// Binding strength: || = 1, && = 2, ! and atoms = 3.
int precedence(const FeatureExpr& e) {
  switch (e.kind()) {
  case FeatureExpr::Kind::Or:
    return 1;
  case FeatureExpr::Kind::And:
    return 2;
  default:
    return 3;
  }
}

void render(const FeatureExpr& e, std::string& out);

void renderOperand(const FeatureExpr& e, int minPrecedence, std::string& out) {
  if (precedence(e) < minPrecedence) {
    out += '(';
    render(e, out);
    out += ')';
  } else {
    render(e, out);
  }
}

void render(const FeatureExpr& e, std::string& out) {
  switch (e.kind()) {
  case FeatureExpr::Kind::True:
    out += "true";
    break;
  case FeatureExpr::Kind::False:
    out += "false";
    break;
  case FeatureExpr::Kind::Var:
    out += e.name();
    break;
  case FeatureExpr::Kind::Not:
    out += '!';
    renderOperand(e.lhs(), 3, out);
    break;
  case FeatureExpr::Kind::And:
  case FeatureExpr::Kind::Or: {
    // Operators parse left-associatively, so a right operand of equal
    // precedence needs parentheses to survive a round trip.
    const int p = precedence(e);
    renderOperand(e.lhs(), p, out);
    out += p == 1 ? " || " : " && ";
    renderOperand(e.rhs(), p + 1, out);
    break;
  }
  }
}

} // namespace

std::string FeatureExpr::toString() const {
  std::string out;
  render(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// ProductSet
// ---------------------------------------------------------------------------

ProductSet::ProductSet(std::size_t universe, bool full) : bits_(universe) {
  if (full)
    bits_.set();
}

ProductSet ProductSet::complement() const {
  ProductSet out = *this;
  out.bits_.flip();
  return out;
}

std::vector<std::size_t> ProductSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (auto i = first(); i != npos; i = next(i))
    out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// FeatureModel
// ---------------------------------------------------------------------------

struct FeatureModel::Data {
  std::vector<std::string> features;
  FeatureExpr constraint;
  std::vector<Product> products;
  std::unordered_map<std::uint32_t, std::size_t> index;
  /// Per feature: the valid products selecting it.
  std::vector<ProductSet> withFeature;
};

namespace {

void collectVars(const FeatureExpr& e, std::vector<std::string>& out) {
  switch (e.kind()) {
  case FeatureExpr::Kind::Var:
    out.push_back(e.name());
    break;
  case FeatureExpr::Kind::Not:
    collectVars(e.lhs(), out);
    break;
  case FeatureExpr::Kind::And:
  case FeatureExpr::Kind::Or:
    collectVars(e.lhs(), out);
    collectVars(e.rhs(), out);
    break;
  default:
    break;
  }
}

bool evaluateIndexed(const FeatureExpr& e, Product p,
                     const std::unordered_map<std::string, std::size_t>& names) {
  switch (e.kind()) {
  case FeatureExpr::Kind::True:
    return true;
  case FeatureExpr::Kind::False:
    return false;
  case FeatureExpr::Kind::Var: {
    auto it = names.find(e.name());
    if (it == names.end())
      throw ModelError("unknown feature '" + e.name() + "'");
    return p.has(it->second);
  }
  case FeatureExpr::Kind::Not:
    return !evaluateIndexed(e.lhs(), p, names);
  case FeatureExpr::Kind::And:
    return evaluateIndexed(e.lhs(), p, names) && evaluateIndexed(e.rhs(), p, names);
  case FeatureExpr::Kind::Or:
    return evaluateIndexed(e.lhs(), p, names) || evaluateIndexed(e.rhs(), p, names);
  }
  return false;
}

} // namespace

FeatureModel::FeatureModel() : FeatureModel(std::vector<std::string>{}) {}

FeatureModel::FeatureModel(std::vector<std::string> features, FeatureExpr constraint) {
  if (features.size() > kMaxFeatures)
    throw ModelError("too many features (" + std::to_string(features.size()) + " > " +
                     std::to_string(kMaxFeatures) + ")");

  std::unordered_map<std::string, std::size_t> names;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].empty())
      throw ModelError("empty feature name");
    if (!names.emplace(features[i], i).second)
      throw ModelError("duplicate feature '" + features[i] + "'");
  }
  std::vector<std::string> used;
  collectVars(constraint, used);
  for (const auto& name : used)
    if (!names.contains(name))
      throw ModelError("constraint refers to unknown feature '" + name + "'");

  auto data = std::make_shared<Data>();
  const std::size_t n = features.size();
  for (std::uint32_t key = 0; key < (1U << n); ++key) {
    // The first declared feature is the most significant position.
    Product p;
    for (std::size_t i = 0; i < n; ++i)
      if ((key >> (n - 1 - i)) & 1U)
        p.bits |= 1U << i;
    if (evaluateIndexed(constraint, p, names)) {
      data->index.emplace(p.bits, data->products.size());
      data->products.push_back(p);
    }
  }
  if (data->products.empty())
    throw ModelError("feature model admits no valid product");

  data->withFeature.assign(n, ProductSet(data->products.size()));
  for (std::size_t idx = 0; idx < data->products.size(); ++idx)
    for (std::size_t i = 0; i < n; ++i)
      if (data->products[idx].has(i))
        data->withFeature[i].insert(idx);

  data->features = std::move(features);
  data->constraint = std::move(constraint);
  data_ = std::move(data);
}

const std::vector<std::string>& FeatureModel::features() const noexcept { return data_->features; }
const FeatureExpr& FeatureModel::constraint() const noexcept { return data_->constraint; }
const std::vector<Product>& FeatureModel::products() const noexcept { return data_->products; }

std::optional<std::size_t> FeatureModel::findFeature(std::string_view name) const {
  const auto& fs = data_->features;
  auto it = std::find(fs.begin(), fs.end(), name);
  if (it == fs.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - fs.begin());
}

std::optional<std::size_t> FeatureModel::productIndex(Product p) const {
  auto it = data_->index.find(p.bits);
  if (it == data_->index.end())
    return std::nullopt;
  return it->second;
}

const ProductSet& FeatureModel::withFeature(std::size_t feature) const {
  return data_->withFeature.at(feature);
}

ProductSet FeatureModel::singleton(std::size_t product) const {
  ProductSet s(productCount());
  s.insert(product);
  return s;
}

std::vector<std::string> FeatureModel::featureNames(Product p) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < data_->features.size(); ++i)
    if (p.has(i))
      out.push_back(data_->features[i]);
  return out;
}

std::string FeatureModel::formatProduct(Product p) const {
  std::string out = "{";
  bool first = true;
  for (const auto& name : featureNames(p)) {
    if (!first)
      out += ',';
    out += name;
    first = false;
  }
  return out + "}";
}

bool operator==(const FeatureModel& a, const FeatureModel& b) {
  return a.data_ == b.data_ ||
         (a.features() == b.features() && a.constraint() == b.constraint());
}

// ---------------------------------------------------------------------------
// Semantics
// ---------------------------------------------------------------------------

bool evaluate(const FeatureExpr& e, Product p, const FeatureModel& fm) {
  switch (e.kind()) {
  case FeatureExpr::Kind::True:
    return true;
  case FeatureExpr::Kind::False:
    return false;
  case FeatureExpr::Kind::Var: {
    auto idx = fm.findFeature(e.name());
    if (!idx)
      throw ModelError("unknown feature '" + e.name() + "'");
    return p.has(*idx);
  }
  case FeatureExpr::Kind::Not:
    return !evaluate(e.lhs(), p, fm);
  case FeatureExpr::Kind::And:
    return evaluate(e.lhs(), p, fm) && evaluate(e.rhs(), p, fm);
  case FeatureExpr::Kind::Or:
    return evaluate(e.lhs(), p, fm) || evaluate(e.rhs(), p, fm);
  }
  return false;
}

ProductSet denote(const FeatureExpr& e, const FeatureModel& fm) {
  switch (e.kind()) {
  case FeatureExpr::Kind::True:
    return fm.all();
  case FeatureExpr::Kind::False:
    return fm.none();
  case FeatureExpr::Kind::Var: {
    auto idx = fm.findFeature(e.name());
    if (!idx)
      throw ModelError("unknown feature '" + e.name() + "'");
    return fm.withFeature(*idx);
  }
  case FeatureExpr::Kind::Not:
    return denote(e.lhs(), fm).complement();
  case FeatureExpr::Kind::And:
    return denote(e.lhs(), fm) & denote(e.rhs(), fm);
  case FeatureExpr::Kind::Or:
    return denote(e.lhs(), fm) | denote(e.rhs(), fm);
  }
  return fm.none();
}

bool isSatisfiable(const FeatureExpr& e, const FeatureModel& fm) {
  // Short-circuit search over px; independent of the bitset route in denote().
  for (const auto& p : fm.products())
    if (evaluate(e, p, fm))
      return true;
  return false;
}

bool entails(const FeatureExpr& a, const FeatureExpr& b, const FeatureModel& fm) {
  return denote(a, fm).isSubsetOf(denote(b, fm));
}

std::vector<Product> enumerateProducts(const FeatureModel& fm) { return fm.products(); }

FeatureExpr describe(const ProductSet& set, const FeatureModel& fm) {
  if (set.empty())
    return FeatureExpr::bottom();
  if (set.full())
    return FeatureExpr::top();

  const auto& products = fm.products();
  const std::size_t n = fm.features().size();
  const std::uint32_t allMask = n == 32 ? ~0U : ((1U << n) - 1U);

  auto cubeProducts = [&](std::uint32_t mask, std::uint32_t values) {
    ProductSet s = fm.none();
    for (std::size_t i = 0; i < products.size(); ++i)
      if ((products[i].bits & mask) == values)
        s.insert(i);
    return s;
  };

  ProductSet covered = fm.none();
  FeatureExpr result;
  bool haveResult = false;
  for (auto idx = set.first(); idx != ProductSet::npos; idx = set.next(idx)) {
    if (covered.contains(idx))
      continue;
    std::uint32_t mask = allMask;
    const std::uint32_t bits = products[idx].bits;
    for (std::size_t f = 0; f < n; ++f) {
      const std::uint32_t trial = mask & ~(1U << f);
      if (cubeProducts(trial, bits & trial).isSubsetOf(set))
        mask = trial;
    }
    covered |= cubeProducts(mask, bits & mask);

    FeatureExpr cube;
    bool haveCube = false;
    for (std::size_t f = 0; f < n; ++f) {
      if (!((mask >> f) & 1U))
        continue;
      FeatureExpr lit = FeatureExpr::var(fm.features()[f]);
      if (!((bits >> f) & 1U))
        lit = exprNot(std::move(lit));
      cube = haveCube ? exprAnd(std::move(cube), std::move(lit)) : std::move(lit);
      haveCube = true;
    }
    result = haveResult ? exprOr(std::move(result), std::move(cube)) : std::move(cube);
    haveResult = true;
  }
  return result;
}

} // namespace wfts
