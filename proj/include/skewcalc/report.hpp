#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "skewcalc/divisor.hpp"
#include "skewcalc/fdalgebra.hpp"
#include "skewcalc/invariants.hpp"
#include "skewcalc/registry.hpp"

namespace skewcalc {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Text, Json };

struct ProvenanceEntry {
  std::string claim;
  std::string status;
  std::string paper_ref;
};

/// Top-level report: {format_version, command, algebra, caps, result, provenance}.
struct Report {
  std::string command;
  Json algebra;
  Json caps;
  Json result;
  std::vector<ProvenanceEntry> provenance;
};

inline constexpr int kFormatVersion = 1;

/// A JSON number rendered with exactly six decimals.
Json fixed6(double v);

std::string emit_report(const Report& r, OutputFormat format);

Json algebra_json(const Algebra& alg);
Json elements_json(const std::vector<Element>& es);
Json closure_json(const ClosureReport& r);
Json verdict_json(const Verdict& v);
Json gk_json(const GkEstimate& g);
Json fd_vector_json(const FiniteDimAlgebra& a, const std::vector<Vec>& vs);

}  // namespace skewcalc
