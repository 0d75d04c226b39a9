#ifndef PARAD_PRESETS_HPP
#define PARAD_PRESETS_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "parad/consistency.hpp"
#include "parad/system.hpp"
#include "parad/valuation.hpp"

namespace parad {

struct Preset {
  std::string name;
  FormalSystem system;
  // Memoized default oracle.
  std::shared_ptr<const ConsistencyOracle> oracle;
  // Null when the preset ships no valuation structure.
  std::shared_ptr<const ValuationStructure> structure;
  std::string documentation;
};

std::vector<std::string> preset_names();

// "toy": finite negation-only system; enumerative oracle; adequate structure
// built from its consistent theories.
// "classical-pl": three-axiom calculus with modus ponens, decided by truth
// tables; semantic oracle on classical valuations.
// Throws kUnknownPreset.
Preset load_preset(std::string_view name);

// System-definition text of a preset.
std::string preset_system_text(std::string_view name);

// Reattaches the classical decision procedure to a system that is
// structurally the classical preset (for instance one loaded back from its
// exported file). Other systems are returned unchanged.
FormalSystem attach_known_delegate(const FormalSystem& sys);

}  // namespace parad

#endif  // PARAD_PRESETS_HPP
