#include "signal.hpp"

#include <algorithm>
#include <cctype>

namespace ecgkit {

const char* superclass_name(Superclass c) {
  switch (c) {
    case Superclass::NORM: return "NORM";
    case Superclass::MI: return "MI";
    case Superclass::STTC: return "STTC";
    case Superclass::CD: return "CD";
    case Superclass::HYP: return "HYP";
  }
  return "?";
}

std::optional<Superclass> superclass_from_name(const std::string& name) {
  if (name == "NORM") return Superclass::NORM;
  if (name == "MI") return Superclass::MI;
  if (name == "STTC") return Superclass::STTC;
  if (name == "CD") return Superclass::CD;
  if (name == "HYP") return Superclass::HYP;
  return std::nullopt;
}

const std::vector<double>* EcgRecord::find_lead(const std::string& name) const {
  auto upper = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
  };
  const std::string want = upper(name);
  for (size_t i = 0; i < lead_names.size(); ++i)
    if (upper(lead_names[i]) == want) return &leads[i];
  return nullptr;
}

}  // namespace ecgkit
