#ifndef PANELFUSION_SYNTH_H_
#define PANELFUSION_SYNTH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "panelfusion/panel.h"

namespace panelfusion {

struct CategoricalSpec {
  std::string name;
  std::vector<std::string> values;
  std::vector<double> probabilities;  // relative; need not sum to 1
};

// Lognormal "minutes" feature. The log-mean is log_mean plus, for every
// categorical feature c, effects[c][value index of c] (effects may be empty
// or shorter than the categorical list).
struct RealSpec {
  std::string name;
  double log_mean = 3.0;
  double log_sigma = 1.0;
  std::vector<std::vector<double>> effects;
};

struct SynthSpec {
  size_t n1 = 100;
  size_t n2 = 10;
  std::vector<CategoricalSpec> categorical;
  std::vector<RealSpec> real;
  // Each panel's weights sum to exactly this, in thousandths of a person.
  double universe_total = 1e6;
  double weight_sigma = 0.5;  // log-sd of raw weights before scaling

  // Throws ValidationError.
  void Validate() const;
};

// Seven demographic features (age, gender, ethnicity, income, race, hhsize,
// children) and eight minutes features with demographic effects drawn from
// a fixed internal seed.
SynthSpec DefaultSynthSpec(size_t n1, size_t n2, double universe_total);

// Deterministic for a fixed spec and seed. Left ids are "L000001"... and
// right ids "R000001"...
std::pair<Panel, Panel> SynthPanels(const SynthSpec& spec, uint64_t seed);

// JSON spec: {"n1", "n2", "universe_total", "weight_sigma",
//   "categorical": [{"name","values","probabilities"}],
//   "real": [{"name","log_mean","log_sigma","effects"}]}.
// Missing feature lists fall back to DefaultSynthSpec.
SynthSpec ParseSynthSpec(const std::string& json_text);

}  // namespace panelfusion

#endif  // PANELFUSION_SYNTH_H_
