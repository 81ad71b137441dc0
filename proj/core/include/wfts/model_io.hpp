/// @file  model_io.hpp
/// @brief The `.wfts` text format and built-in example models
///
/// Grammar (whitespace-insensitive, `#` starts a line comment):
///
///     model      := "features" "{" [id ("," id)*] "}" ["constraint" expr]
///                   "states" "{" id ("," id)* "}" "init" "{" id ("," id)* "}" trans*
///     trans      := "trans" id "->" id ["[" expr "]"] ["action" "=" id]
///                   "weight" "=" rational ["length" "=" int]
///     expr       := expr "||" expr | expr "&&" expr | "!" expr | "(" expr ")"
///                 | id | "true" | "false"
///     rational   := ["-"|"+"] digits ["." digits] ["/" digits]
///
/// Identifiers are `[A-Za-z_][A-Za-z0-9_-]*` (a `-` directly followed by `>`
/// ends the identifier). Keywords are reserved.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wfts/wfts.hpp"

namespace wfts {

/// Throws ParseError (syntax, with line:col) or ModelError (semantics).
Wfts parseModel(std::string_view text);

/// Reads and parses a file. Throws ModelError if it cannot be read.
Wfts loadModel(const std::string& path);

/// Canonical text; parseModel(serializeModel(w)) == w.
std::string serializeModel(const Wfts& w);

/// Parses a standalone feature expression.
FeatureExpr parseFeatureExpr(std::string_view text);

/// The taxi-shuttle family with `licenses` extra-license features L1..Ln.
/// Features S, T, L1..Ln; 6 + 2n states before length expansion.
Wfts generateTaxi(unsigned licenses);

/// The four-state grant/request arbiter with optional features G and A.
Wfts generateGrantRequest();

/// Abstracted mine pump controller: optional command module C and methane
/// sensor M, four products.
Wfts generateMinepumpLite();

struct RandomModelParams {
  unsigned maxStates = 8;
  unsigned maxFeatures = 4;
  int minWeight = -10;
  int maxWeight = 10;
  unsigned maxLength = 3;
  unsigned maxOutDegree = 3;
};

/// Deterministic pseudo-random model for property suites.
Wfts generateRandom(std::uint64_t seed, const RandomModelParams& params = {});

struct GeneratorSpec {
  std::string name;
  unsigned param = 0;
  std::string label() const;
};

/// Expands `taxi:3`, `taxi:1..6`, `grantrequest`, `minepump`, `random:<seed>`.
/// Throws std::invalid_argument on malformed specs.
std::vector<GeneratorSpec> parseGeneratorSpec(std::string_view spec);

/// Instantiates one generator (without length expansion).
Wfts generate(const GeneratorSpec& spec);

} // namespace wfts
