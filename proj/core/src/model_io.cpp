#include "wfts/model_io.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "wfts/errors.hpp"

namespace wfts {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Ident, Keyword, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

constexpr std::array kKeywords = {"features", "constraint", "states", "init", "trans",
                                  "action",   "weight",     "length", "true", "false"};

bool isKeyword(std::string_view word) {
  for (auto k : kKeywords)
    if (word == k)
      return true;
  return false;
}

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identBody(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipSpaceAndComments();
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(tok);
        return out;
      }
      const char c = text_[pos_];
      if (identStart(c)) {
        std::size_t end = pos_ + 1;
        while (end < text_.size() && identBody(text_[end]) &&
               !(text_[end] == '-' && end + 1 < text_.size() && text_[end + 1] == '>'))
          ++end;
        tok.text = std::string(text_.substr(pos_, end - pos_));
        tok.kind = isKeyword(tok.text) ? Tok::Keyword : Tok::Ident;
        advance(end - pos_);
      } else if (digit(c) || ((c == '-' || c == '+') && pos_ + 1 < text_.size() && digit(text_[pos_ + 1]))) {
        std::size_t end = pos_ + 1;
        while (end < text_.size() && (digit(text_[end]) || text_[end] == '.' || text_[end] == '/'))
          ++end;
        tok.kind = Tok::Number;
        tok.text = std::string(text_.substr(pos_, end - pos_));
        advance(end - pos_);
      } else {
        static constexpr std::array<std::string_view, 11> symbols = {"->", "||", "&&", "{", "}", ",",
                                                                     "[",  "]",  "(",  ")", "="};
        bool matched = false;
        for (auto sym : symbols) {
          if (text_.substr(pos_, sym.size()) == sym) {
            tok.kind = Tok::Symbol;
            tok.text = std::string(sym);
            advance(sym.size());
            matched = true;
            break;
          }
        }
        if (!matched && c == '!') {
          tok.kind = Tok::Symbol;
          tok.text = "!";
          advance(1);
          matched = true;
        }
        if (!matched)
          throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(tok));
    }
  }

private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skipSpaceAndComments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  Wfts model() {
    expectKeyword("features");
    std::vector<std::string> features;
    expectSymbol("{");
    if (!peekSymbol("}"))
      features = idList();
    expectSymbol("}");

    FeatureExpr constraint = FeatureExpr::top();
    if (acceptKeyword("constraint"))
      constraint = expr();

    FeatureModel fm = [&] {
      const Token& at = peek();
      try {
        return FeatureModel(features, constraint);
      } catch (const ModelError& e) {
        throw ModelError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + e.what());
      }
    }();

    expectKeyword("states");
    expectSymbol("{");
    const std::vector<std::string> states = idList();
    expectSymbol("}");
    std::unordered_map<std::string, StateId> stateIds;
    for (std::size_t i = 0; i < states.size(); ++i)
      if (!stateIds.emplace(states[i], i).second)
        throw ModelError("duplicate state '" + states[i] + "'");

    auto lookup = [&](const Token& tok) {
      auto it = stateIds.find(tok.text);
      if (it == stateIds.end())
        throw ModelError(std::to_string(tok.line) + ":" + std::to_string(tok.column) +
                         ": undeclared state '" + tok.text + "'");
      return it->second;
    };

    expectKeyword("init");
    expectSymbol("{");
    std::vector<StateId> initial;
    for (;;) {
      initial.push_back(lookup(expectIdent()));
      if (!acceptSymbol(","))
        break;
    }
    expectSymbol("}");

    std::vector<Transition> transitions;
    while (acceptKeyword("trans")) {
      Transition t;
      t.source = lookup(expectIdent());
      expectSymbol("->");
      t.target = lookup(expectIdent());
      if (acceptSymbol("[")) {
        const Token& at = peek();
        t.guard = expr();
        checkFeatures(t.guard, fm, at);
        expectSymbol("]");
      }
      if (acceptKeyword("action")) {
        expectSymbol("=");
        t.action = expectIdent().text;
      }
      expectKeyword("weight");
      expectSymbol("=");
      const Token& w = expect(Tok::Number, "number");
      try {
        t.weight = parseRational(w.text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(w.line, w.column, e.what());
      }
      if (acceptKeyword("length")) {
        expectSymbol("=");
        const Token& len = expect(Tok::Number, "integer");
        if (len.text.find_first_not_of("0123456789") != std::string::npos || len.text.size() > 9)
          throw ParseError(len.line, len.column, "length must be a positive integer");
        t.length = static_cast<std::uint32_t>(std::stoul(len.text));
        if (t.length == 0)
          throw ParseError(len.line, len.column, "length must be a positive integer");
      }
      transitions.push_back(std::move(t));
    }
    if (peek().kind != Tok::End)
      fail("expected 'trans' or end of input");
    return Wfts(std::move(fm), states, std::move(initial), std::move(transitions));
  }

  FeatureExpr standaloneExpr() {
    FeatureExpr e = expr();
    if (peek().kind != Tok::End)
      fail("unexpected trailing input");
    return e;
  }

private:
  FeatureExpr expr() {
    FeatureExpr lhs = conjunction();
    while (acceptSymbol("||"))
      lhs = exprOr(std::move(lhs), conjunction());
    return lhs;
  }

  FeatureExpr conjunction() {
    FeatureExpr lhs = unary();
    while (acceptSymbol("&&"))
      lhs = exprAnd(std::move(lhs), unary());
    return lhs;
  }

  FeatureExpr unary() {
    if (acceptSymbol("!"))
      return exprNot(unary());
    if (acceptSymbol("(")) {
      FeatureExpr e = expr();
      expectSymbol(")");
      return e;
    }
    if (acceptKeyword("true"))
      return FeatureExpr::top();
    if (acceptKeyword("false"))
      return FeatureExpr::bottom();
    return FeatureExpr::var(expectIdent().text);
  }

  static void checkFeatures(const FeatureExpr& e, const FeatureModel& fm, const Token& at) {
    switch (e.kind()) {
    case FeatureExpr::Kind::Var:
      if (!fm.findFeature(e.name()))
        throw ModelError(std::to_string(at.line) + ":" + std::to_string(at.column) +
                         ": undeclared feature '" + e.name() + "'");
      break;
    case FeatureExpr::Kind::Not:
      checkFeatures(e.lhs(), fm, at);
      break;
    case FeatureExpr::Kind::And:
    case FeatureExpr::Kind::Or:
      checkFeatures(e.lhs(), fm, at);
      checkFeatures(e.rhs(), fm, at);
      break;
    default:
      break;
    }
  }

  std::vector<std::string> idList() {
    std::vector<std::string> out;
    for (;;) {
      out.push_back(expectIdent().text);
      if (!acceptSymbol(","))
        return out;
    }
  }

  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, message + ", found " + found);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  const Token& expectIdent() { return expect(Tok::Ident, "identifier"); }

  bool peekSymbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }

  bool acceptSymbol(std::string_view s) {
    if (!peekSymbol(s))
      return false;
    ++pos_;
    return true;
  }

  void expectSymbol(std::string_view s) {
    if (!acceptSymbol(s))
      fail("expected '" + std::string(s) + "'");
  }

  bool acceptKeyword(std::string_view k) {
    if (peek().kind != Tok::Keyword || peek().text != k)
      return false;
    ++pos_;
    return true;
  }

  void expectKeyword(std::string_view k) {
    if (!acceptKeyword(k))
      fail("expected '" + std::string(k) + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

} // namespace

Wfts parseModel(std::string_view text) { return Parser(text).model(); }

Wfts loadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ModelError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parseModel(buf.str());
  } catch (const ModelError& e) {
    throw ModelError(path + ":" + e.what());
  }
}

FeatureExpr parseFeatureExpr(std::string_view text) { return Parser(text).standaloneExpr(); }

std::string serializeModel(const Wfts& w) {
  std::ostringstream out;
  const auto& fm = w.featureModel();

  auto list = [&](const std::vector<std::string>& names) {
    out << "{";
    for (std::size_t i = 0; i < names.size(); ++i)
      out << (i ? ", " : " ") << names[i];
    out << (names.empty() ? "}" : " }");
  };

  out << "features ";
  list(fm.features());
  out << "\n";
  if (!fm.constraint().isTrue())
    out << "constraint " << fm.constraint().toString() << "\n";
  out << "states ";
  list(w.states());
  out << "\ninit ";
  std::vector<std::string> init;
  for (StateId s : w.initial())
    init.push_back(w.stateName(s));
  list(init);
  out << "\n";

  for (const auto& t : w.transitions()) {
    out << "trans " << w.stateName(t.source) << " -> " << w.stateName(t.target);
    if (!t.guard.isTrue())
      out << " [" << t.guard.toString() << "]";
    if (t.action != "tau")
      out << " action=" << t.action;
    out << " weight=" << toSourceString(t.weight);
    if (t.length != 1)
      out << " length=" << t.length;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

class Builder {
public:
  explicit Builder(FeatureModel fm) : fm_(std::move(fm)) {}

  StateId state(std::string name) {
    ids_.emplace(name, states_.size());
    states_.push_back(std::move(name));
    return states_.size() - 1;
  }

  void trans(std::string_view from, std::string_view to, std::string_view guard, std::string action,
             std::int64_t weight, std::uint32_t length = 1) {
    Transition t;
    t.source = ids_.at(std::string(from));
    t.target = ids_.at(std::string(to));
    t.guard = guard.empty() ? FeatureExpr::top() : parseFeatureExpr(guard);
    t.action = std::move(action);
    t.weight = Rational(weight);
    t.length = length;
    trans_.push_back(std::move(t));
  }

  Wfts build(std::vector<std::string_view> initial) && {
    std::vector<StateId> init;
    for (auto name : initial)
      init.push_back(ids_.at(std::string(name)));
    return Wfts(std::move(fm_), std::move(states_), std::move(init), std::move(trans_));
  }

private:
  FeatureModel fm_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, StateId> ids_;
  std::vector<Transition> trans_;
};

} // namespace

Wfts generateTaxi(unsigned licenses) {
  std::vector<std::string> features = {"S", "T"};
  for (unsigned i = 1; i <= licenses; ++i)
    features.push_back("L" + std::to_string(i));
  Builder b{FeatureModel(features)};

  for (const char* s : {"Pickup-1", "Pickup-2", "Release-1", "Release-2", "Airport-P", "Airport-R"})
    b.state(s);
  for (unsigned i = 1; i <= licenses; ++i) {
    b.state("Pickup-ext" + std::to_string(i));
    b.state("Release-ext" + std::to_string(i));
  }

  // Airport legs, returns to pickup, shuttle, then taxi rows.
  b.trans("Pickup-1", "Airport-R", "", "toAirport", 40, 3);
  b.trans("Airport-P", "Release-1", "", "fromAirport", 50, 3);
  b.trans("Pickup-2", "Airport-R", "", "toAirport", 35, 2);
  b.trans("Airport-P", "Release-2", "", "fromAirport", 45, 2);
  b.trans("Release-1", "Pickup-1", "", "reposition", -2);
  b.trans("Release-2", "Pickup-2", "", "reposition", -2);
  b.trans("Airport-R", "Airport-P", "", "reposition", -5);
  b.trans("Pickup-1", "Pickup-2", "S", "shuttle", 15);
  b.trans("Release-2", "Release-1", "S", "shuttle", 15);
  b.trans("Pickup-1", "Release-2", "T", "taxi", 30);
  b.trans("Pickup-2", "Release-1", "T", "taxi", 30);

  for (unsigned i = 1; i <= licenses; ++i) {
    const std::string l = "L" + std::to_string(i);
    const std::string pe = "Pickup-ext" + std::to_string(i);
    const std::string re = "Release-ext" + std::to_string(i);
    b.trans(pe, "Airport-R", l, "toAirport", 50, 4);
    b.trans("Airport-P", re, l, "fromAirport", 60, 4);
    b.trans(re, pe, l, "reposition", -2);
    b.trans(pe, "Pickup-1", "S && " + l, "shuttle", 15);
    b.trans("Release-1", re, "S && " + l, "shuttle", 15);
    b.trans(pe, "Release-1", "T && " + l, "taxi", 30);
    b.trans(pe, "Release-2", "T && " + l, "taxi", 30);
    b.trans("Pickup-1", re, "T && " + l, "taxi", 30);
    b.trans("Pickup-2", re, "T && " + l, "taxi", 30);
  }
  return std::move(b).build({"Airport-P"});
}

Wfts generateGrantRequest() {
  Builder b{FeatureModel({"G", "A"})};
  for (const char* s : {"s0", "s1", "s2", "s3"})
    b.state(s);
  // s0's request edge precedes its grant edge; the DFS order depends on it.
  b.trans("s0", "s1", "", "request", 0);
  b.trans("s0", "s2", "G || A", "grant", -1);
  b.trans("s1", "s3", "", "grant", 0);
  b.trans("s2", "s2", "G", "grant", -1);
  b.trans("s2", "s0", "A", "clean", 0);
  b.trans("s2", "s3", "G || A", "request", 0);
  b.trans("s3", "s0", "", "serve", 0);
  return std::move(b).build({"s0"});
}

Wfts generateMinepumpLite() {
  // Weights approximate energy drawn per controller step.
  Builder b{FeatureModel({"C", "M"})};
  for (const char* s : {"Idle", "ReadWater", "WaterLow", "WaterNormal", "WaterHigh", "MethaneCheck",
                        "MethaneAlarm", "PumpStart", "PumpOn", "PumpStop", "PumpOff", "CmdWait",
                        "CmdStart", "CmdStop"})
    b.state(s);

  b.trans("Idle", "ReadWater", "", "sense", 1);
  b.trans("ReadWater", "WaterLow", "", "low", 0);
  b.trans("ReadWater", "WaterNormal", "", "normal", 0);
  b.trans("ReadWater", "WaterHigh", "", "high", 0);
  b.trans("WaterLow", "PumpOff", "", "settle", 0);
  b.trans("WaterNormal", "Idle", "", "settle", 0);
  b.trans("WaterHigh", "MethaneCheck", "M", "probe", 2);
  b.trans("WaterHigh", "PumpStart", "!M", "start", 0);
  b.trans("MethaneCheck", "PumpStart", "M", "safe", 0);
  b.trans("MethaneCheck", "MethaneAlarm", "M", "alarm", 1);
  b.trans("MethaneAlarm", "PumpOff", "M", "cutoff", 0);
  b.trans("MethaneAlarm", "Idle", "M", "ventilate", 3, 2);
  b.trans("PumpStart", "PumpOn", "", "spinup", 10, 2);
  b.trans("PumpOn", "ReadWater", "", "sense", 8);
  b.trans("PumpOn", "PumpStop", "", "stop", 0);
  b.trans("PumpStop", "PumpOff", "", "spindown", 2);
  b.trans("PumpOff", "Idle", "", "idle", 0);
  b.trans("Idle", "CmdWait", "C", "poll", 0);
  b.trans("CmdWait", "CmdStart", "C", "cmdStart", 1);
  b.trans("CmdWait", "CmdStop", "C", "cmdStop", 1);
  b.trans("CmdWait", "Idle", "C", "timeout", 0, 3);
  b.trans("CmdStart", "PumpStart", "C", "start", 0);
  b.trans("CmdStop", "PumpStop", "C", "stop", 0);
  b.trans("PumpOn", "CmdWait", "C", "poll", 5);
  return std::move(b).build({"Idle"});
}

namespace {

FeatureExpr randomGuard(std::mt19937_64& rng, const std::vector<std::string>& features, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int r = pick(rng);
  if (features.empty() || depth == 0 || r < 3) {
    if (features.empty() || r == 0)
      return FeatureExpr::top();
    std::uniform_int_distribution<std::size_t> f(0, features.size() - 1);
    return FeatureExpr::var(features[f(rng)]);
  }
  if (r < 5)
    return exprNot(randomGuard(rng, features, depth - 1));
  if (r < 8)
    return exprAnd(randomGuard(rng, features, depth - 1), randomGuard(rng, features, depth - 1));
  return exprOr(randomGuard(rng, features, depth - 1), randomGuard(rng, features, depth - 1));
}

} // namespace

Wfts generateRandom(std::uint64_t seed, const RandomModelParams& params) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int featureCount = uniform(1, static_cast<int>(std::max(1U, params.maxFeatures)));
  std::vector<std::string> features;
  for (int i = 0; i < featureCount; ++i)
    features.push_back(std::string(1, static_cast<char>('A' + i)));

  // One in four models carries a constraint; fall back to none if it is unsatisfiable.
  FeatureModel fm(features);
  if (uniform(0, 3) == 0) {
    FeatureExpr constraint = randomGuard(rng, features, 2);
    try {
      fm = FeatureModel(features, constraint);
    } catch (const ModelError&) {
    }
  }

  const int stateCount = uniform(1, static_cast<int>(std::max(1U, params.maxStates)));
  std::vector<std::string> states;
  for (int i = 0; i < stateCount; ++i)
    states.push_back("q" + std::to_string(i));

  std::vector<StateId> initial = {0};
  if (stateCount > 1 && uniform(0, 4) == 0)
    initial.push_back(static_cast<StateId>(uniform(1, stateCount - 1)));

  std::vector<Transition> trans;
  for (int s = 0; s < stateCount; ++s) {
    const int degree = uniform(0, static_cast<int>(params.maxOutDegree));
    for (int d = 0; d < degree; ++d) {
      Transition t;
      t.source = static_cast<StateId>(s);
      t.target = static_cast<StateId>(uniform(0, stateCount - 1));
      t.guard = randomGuard(rng, features, 2);
      t.action = "a" + std::to_string(uniform(0, 2));
      t.weight = Rational(uniform(params.minWeight, params.maxWeight));
      t.length = static_cast<std::uint32_t>(uniform(1, static_cast<int>(std::max(1U, params.maxLength))));
      trans.push_back(std::move(t));
    }
  }
  return Wfts(std::move(fm), std::move(states), std::move(initial), std::move(trans));
}

std::string GeneratorSpec::label() const {
  if (name == "taxi" || name == "random")
    return name + ":" + std::to_string(param);
  return name;
}

std::vector<GeneratorSpec> parseGeneratorSpec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  auto number = [&](std::string_view s) -> unsigned {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos || s.size() > 9)
      throw std::invalid_argument("malformed generator parameter in '" + std::string(spec) + "'");
    return static_cast<unsigned>(std::stoul(std::string(s)));
  };

  if (name == "grantrequest" || name == "minepump") {
    if (!arg.empty())
      throw std::invalid_argument("generator '" + name + "' takes no parameter");
    return {{name, 0}};
  }
  if (name == "taxi" || name == "random") {
    if (arg.empty())
      throw std::invalid_argument("generator '" + name + "' needs a parameter, e.g. " + name + ":1");
    unsigned lo = 0;
    unsigned hi = 0;
    if (auto dots = arg.find(".."); dots != std::string_view::npos) {
      lo = number(arg.substr(0, dots));
      hi = number(arg.substr(dots + 2));
    } else {
      lo = hi = number(arg);
    }
    if (lo > hi)
      throw std::invalid_argument("empty range in '" + std::string(spec) + "'");
    std::vector<GeneratorSpec> out;
    for (unsigned i = lo; i <= hi; ++i)
      out.push_back({name, i});
    return out;
  }
  throw std::invalid_argument("unknown generator '" + name + "' (taxi:N, grantrequest, minepump, random:SEED)");
}

Wfts generate(const GeneratorSpec& spec) {
  if (spec.name == "taxi")
    return generateTaxi(spec.param);
  if (spec.name == "grantrequest")
    return generateGrantRequest();
  if (spec.name == "minepump")
    return generateMinepumpLite();
  if (spec.name == "random")
    return generateRandom(spec.param);
  throw std::invalid_argument("unknown generator '" + spec.name + "'");
}

} // namespace wfts
