#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewcalc/algebra.hpp"

namespace skewcalc {

enum class Property {
  Cancellative,
  StronglyCancellative,
  UniversallyCancellative,
  MoritaCancellative,
  StronglyMoritaCancellative,
  UniversallyMoritaCancellative,
  DerivedCancellativeStrong,
  SkewCancellative,
  StronglySkewCancellativeStratiformScope,
  SigmaCancellative,
  SigmaCancellativeStrong,
  SigmaAlgCancellative,
  SigmaAlgCancellativeStrong,
  DeltaCancellative,
  DeltaCancellativeStrongOpen,
  RetractableStrong,
};

std::string property_name(Property p);
const std::vector<Property>& all_properties();

enum class VerdictStatus { Proved, Asserted, Inconclusive, RefutedByExample };
std::string verdict_status_name(VerdictStatus s);

/// One re-runnable computation backing a verdict; `result` is its digest.
struct EvidenceItem {
  std::string kind;
  std::string result;
};

struct Verdict {
  Property property = Property::Cancellative;
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::string rule;
  std::string paper_ref;
  std::vector<EvidenceItem> evidence;
  /// Further rules that reached the same conclusion.
  std::vector<std::string> also;
};

struct DagEdge {
  Property from;
  Property to;
  /// Counterexample fixture id for a non-implication.
  std::string fixture;
};

struct ImplicationDAG {
  std::vector<Property> nodes;
  std::vector<DagEdge> solid;
  std::vector<DagEdge> dotted;
  /// Strength edges between variants (universally => strongly => plain), used with `solid`.
  std::vector<DagEdge> variants;
};

const ImplicationDAG& implication_dag();

struct FixtureCheck {
  bool pass = false;
  std::vector<std::string> lines;
};

struct Fixture {
  std::string id;
  std::string description;
  std::string paper_ref;
  /// Properties the fixture refutes directly.
  std::vector<Property> refutes;
  bool applies_to(const Presentation& p) const;
  /// Rebuilds and re-verifies the fixture over a characteristic-0 field.
  FixtureCheck verify(const FieldDescriptor& field = FieldDescriptor::rational(), int degree_cap = 4) const;
};

const std::vector<Fixture>& counterexample_registry();

struct CertifyConfig {
  int center_degree = 4;
  int degree_cap = 4;
  int max_rounds = 4;
  int growth_N = 12;
};

struct RuleOutcome {
  std::string rule;
  bool fired = false;
  /// MISSING_EVIDENCE or unmet hypothesis, when not fired.
  std::string reason;
};

struct CertifyReport {
  std::vector<Verdict> verdicts;
  std::vector<RuleOutcome> rules;
};

/// Fires rules R1..R11 on computed evidence, applies registry refutations, then closes
/// under the implication DAG. Every property appears once, INCONCLUSIVE by default.
CertifyReport certify(const AlgebraPtr& alg, const CertifyConfig& cfg = {});

struct ReplayResult {
  bool ok = true;
  std::vector<std::string> lines;
};

/// Recomputes every evidence item from scratch and compares digests.
ReplayResult audit_replay(const AlgebraPtr& alg, const CertifyReport& rep, const CertifyConfig& cfg = {});

/// True when every solid and variant implication is respected by the verdict set.
bool is_dag_closed(const CertifyReport& rep);

}  // namespace skewcalc
