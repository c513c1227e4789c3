#include "skewcalc/presentation.hpp"

namespace skewcalc {

namespace {

const std::vector<std::pair<Flag, std::string>>& flag_table() {
  static const std::vector<std::pair<Flag, std::string>> t = {
      {Flag::Domain, "DOMAIN"},   {Flag::Noetherian, "NOETHERIAN"},      {Flag::Affine, "AFFINE"},
      {Flag::Simple, "SIMPLE"},   {Flag::Azumaya, "AZUMAYA"},            {Flag::MlFull, "ML_FULL"},
      {Flag::UnitsTrivial, "UNITS_TRIVIAL"}, {Flag::Stratiform, "STRATIFORM"},
  };
  return t;
}

const std::vector<std::pair<FamilyId, std::string>>& family_table() {
  static const std::vector<std::pair<FamilyId, std::string>> t = {
      {FamilyId::Poly, "poly"},
      {FamilyId::Laurent, "laurent"},
      {FamilyId::SkewPoly, "skew_poly"},
      {FamilyId::QuantumTorus, "quantum_torus"},
      {FamilyId::Weyl1, "weyl1"},
      {FamilyId::QuantumWeyl1, "quantum_weyl1"},
      {FamilyId::LocalizedQWeyl1, "localized_qweyl1"},
      {FamilyId::MinusOnePlane, "minus_one_plane"},
      {FamilyId::Gwa, "gwa"},
      {FamilyId::FiniteRankQWeyl, "quantum_weyl"},
  };
  return t;
}

}  // namespace

std::string flag_name(Flag f) {
  for (const auto& [k, v] : flag_table())
    if (k == f) return v;
  return "?";
}

std::optional<Flag> flag_from_name(const std::string& name) {
  for (const auto& [k, v] : flag_table())
    if (v == name) return k;
  return std::nullopt;
}

std::string family_keyword(FamilyId id) {
  for (const auto& [k, v] : family_table())
    if (k == id) return v;
  return "?";
}

std::optional<FamilyId> family_from_keyword(const std::string& kw) {
  for (const auto& [k, v] : family_table())
    if (v == kw) return k;
  return std::nullopt;
}

std::vector<std::string> Presentation::names() const {
  std::vector<std::string> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.name);
  return out;
}

int Presentation::index_of(const std::string& n) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == n) return static_cast<int>(i);
  return -1;
}

bool Presentation::has_flag(Flag f) const { return find_flag(f) != nullptr; }

const FlagEntry* Presentation::find_flag(Flag f) const {
  for (const auto& e : flags)
    if (e.flag == f) return &e;
  return nullptr;
}

void Presentation::set_flag(Flag f, const std::string& provenance, int length) {
  for (auto& e : flags) {
    if (e.flag == f) {
      e.provenance = provenance;
      e.length = length;
      return;
    }
  }
  flags.push_back(FlagEntry{f, length, provenance});
}

}  // namespace skewcalc
