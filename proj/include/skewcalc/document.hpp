#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skewcalc/algebra.hpp"
#include "skewcalc/cancel.hpp"
#include "skewcalc/fdalgebra.hpp"

namespace skewcalc {

/// Provenance attached to flags declared in a file without an explicit string.
inline constexpr const char* kFileProvenance = "user: declared in file";

/// base[var; sigma, delta] as written in an `ore` stanza. Unlisted generators
/// have sigma = identity and delta = 0.
struct OreDecl {
  std::string base;
  std::string var;
  bool invertible = false;
  std::vector<Element> sigma;
  std::vector<Element> delta;
  std::vector<FlagEntry> flags;
};

enum class StanzaKind { Algebra, Family, Ore, Morphism, FdAlgebra };

struct Stanza {
  StanzaKind kind = StanzaKind::Algebra;
  std::string name;
};

/// A parsed presentation file. Every stanza is resolved to a checked object
/// while parsing; names are unique across stanzas.
struct Document {
  std::vector<Stanza> stanzas;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, FamilySpec> families;
  std::map<std::string, OreDecl> ores;
  std::map<std::string, Morphism> morphisms;
  std::map<std::string, FiniteDimAlgebra> fdalgebras;

  /// The named algebra, or the last algebra-like stanza when `name` is empty.
  /// VALIDATION_ERROR when absent.
  AlgebraPtr algebra(const std::string& name = "") const;
  const Morphism& morphism(const std::string& name = "") const;
  const FiniteDimAlgebra& fdalgebra(const std::string& name = "") const;
};

/// Parses the line-oriented presentation grammar:
///   algebra NAME { field F; gens G1 [inv], ...; rule Gj*Gi = EXPR; flag FLAG ["prov"]; }
///   family FAMILYID key=value ...;
///   ore NAME { base B; var t [inv]; sigma g -> EXPR; delta g -> EXPR; flag ...; }
///   morphism NAME SRC -> TGT { g -> EXPR; inverse g -> EXPR; }
///   fdalgebra NAME { field F; basis b1, ...; unit EXPR; product bi*bj = EXPR; }
/// SYNTAX_ERROR carries line and column; semantic errors are forwarded.
Document parse_document(const std::string& text);

/// Canonical text; parse_document(print_document(d)) reproduces d.
std::string print_document(const Document& d);

/// Structural equality of presentations: field, generators, rules, reductions,
/// tower and flags (with provenance).
bool same_presentation(const Presentation& a, const Presentation& b);

/// Structural equality of two documents, stanza by stanza.
bool same_document(const Document& a, const Document& b);

}  // namespace skewcalc
