#include "panelfusion/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

constexpr int64_t kThousandths = 1000;

std::vector<std::string> Labels(const std::string& prefix, int count) {
  std::vector<std::string> labels;
  for (int i = 0; i < count; ++i) labels.push_back(prefix + std::to_string(i + 1));
  return labels;
}

std::string MakeId(char side, size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%c%06zu", side, index + 1);
  return buffer;
}

// Weights in thousandths summing exactly to the universe; drift goes to the
// largest weight (first on ties).
std::vector<double> DrawWeights(size_t n, const SynthSpec& spec,
                                std::mt19937_64& rng) {
  std::lognormal_distribution<double> raw(0.0, spec.weight_sigma);
  std::vector<double> draws(n);
  double sum = 0;
  for (double& d : draws) sum += (d = raw(rng));
  const int64_t target = std::llround(spec.universe_total * kThousandths);
  std::vector<int64_t> parts(n);
  int64_t total = 0;
  for (size_t i = 0; i < n; ++i) {
    parts[i] = std::max<int64_t>(
        1, std::llround(draws[i] / sum * static_cast<double>(target)));
    total += parts[i];
  }
  const size_t largest =
      std::max_element(parts.begin(), parts.end()) - parts.begin();
  parts[largest] += target - total;
  if (parts[largest] < 1) {
    throw ValidationError("synth: universe_total too small for panel size");
  }
  std::vector<double> weights(n);
  for (size_t i = 0; i < n; ++i) {
    weights[i] = static_cast<double>(parts[i]) / kThousandths;
  }
  return weights;
}

Panel DrawPanel(size_t n, char side, const SynthSpec& spec,
                std::mt19937_64& rng) {
  Panel panel;
  for (const CategoricalSpec& c : spec.categorical) {
    panel.schema.categorical_names.push_back(c.name);
  }
  for (const RealSpec& r : spec.real) panel.schema.real_names.push_back(r.name);

  std::vector<std::discrete_distribution<int>> pick;
  for (const CategoricalSpec& c : spec.categorical) {
    pick.emplace_back(c.probabilities.begin(), c.probabilities.end());
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::vector<double> weights = DrawWeights(n, spec, rng);
  panel.panelists.resize(n);
  std::vector<int> value_index(spec.categorical.size());
  for (size_t i = 0; i < n; ++i) {
    Panelist& p = panel.panelists[i];
    p.id = MakeId(side, i);
    p.weight = weights[i];
    for (size_t c = 0; c < spec.categorical.size(); ++c) {
      value_index[c] = pick[c](rng);
      p.categorical.push_back(spec.categorical[c].values[value_index[c]]);
    }
    for (const RealSpec& r : spec.real) {
      double mu = r.log_mean;
      for (size_t c = 0; c < r.effects.size() && c < value_index.size(); ++c) {
        if (static_cast<size_t>(value_index[c]) < r.effects[c].size()) {
          mu += r.effects[c][value_index[c]];
        }
      }
      p.real.push_back(std::exp(mu + r.log_sigma * normal(rng)));
    }
  }
  return panel;
}

}  // namespace

void SynthSpec::Validate() const {
  if (n1 < 1 || n2 < 1) throw ValidationError("synth: n1 and n2 must be >= 1");
  if (!(universe_total > 0) || !std::isfinite(universe_total)) {
    throw ValidationError("synth: universe_total must be positive");
  }
  if (universe_total * kThousandths > 1e15) {
    throw ValidationError("synth: universe_total too large");
  }
  if (!(weight_sigma >= 0)) {
    throw ValidationError("synth: weight_sigma must be >= 0");
  }
  for (const CategoricalSpec& c : categorical) {
    if (c.name.empty() || c.values.empty() ||
        c.values.size() != c.probabilities.size()) {
      throw ValidationError("synth: categorical \"" + c.name +
                            "\" needs one probability per value");
    }
    double total = 0;
    for (double p : c.probabilities) {
      if (!(p >= 0)) {
        throw ValidationError("synth: negative probability in \"" + c.name +
                              "\"");
      }
      total += p;
    }
    if (!(total > 0)) {
      throw ValidationError("synth: probabilities of \"" + c.name +
                            "\" sum to zero");
    }
  }
  for (const RealSpec& r : real) {
    if (r.name.empty() || !(r.log_sigma >= 0)) {
      throw ValidationError("synth: real feature \"" + r.name +
                            "\" needs a name and log_sigma >= 0");
    }
  }
}

SynthSpec DefaultSynthSpec(size_t n1, size_t n2, double universe_total) {
  SynthSpec spec;
  spec.n1 = n1;
  spec.n2 = n2;
  spec.universe_total = universe_total;
  spec.categorical = {
      {"age",
       {"18-24", "25-34", "35-44", "45-54", "55-64", "65+", "12-17", "2-11"},
       {11, 16, 15, 15, 14, 16, 7, 6}},
      {"gender", {"female", "male"}, {51, 49}},
      {"ethnicity", {"hispanic", "non-hispanic"}, {18, 82}},
      {"income", Labels("inc", 6), {12, 16, 18, 20, 18, 16}},
      {"race", {"asian", "black", "other", "white"}, {6, 13, 5, 76}},
      {"hhsize", Labels("hh", 5), {28, 34, 16, 14, 8}},
      {"children", {"no", "yes"}, {60, 40}},
  };
  const char* names[] = {"m_news",   "m_social", "m_video", "m_search",
                         "m_retail", "m_email",  "m_games", "m_sports"};
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> effect(0.0, 0.35);
  std::uniform_real_distribution<double> base(2.0, 4.5);
  for (const char* name : names) {
    RealSpec r;
    r.name = name;
    r.log_mean = base(rng);
    r.log_sigma = 0.9;
    for (const CategoricalSpec& c : spec.categorical) {
      std::vector<double> per_value;
      for (size_t v = 0; v < c.values.size(); ++v) per_value.push_back(effect(rng));
      r.effects.push_back(std::move(per_value));
    }
    spec.real.push_back(std::move(r));
  }
  return spec;
}

std::pair<Panel, Panel> SynthPanels(const SynthSpec& spec, uint64_t seed) {
  spec.Validate();
  std::mt19937_64 left_rng(seed);
  std::mt19937_64 right_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Panel left = DrawPanel(spec.n1, 'L', spec, left_rng);
  Panel right = DrawPanel(spec.n2, 'R', spec, right_rng);
  return {std::move(left), std::move(right)};
}

SynthSpec ParseSynthSpec(const std::string& json_text) {
  using nlohmann::json;
  SynthSpec spec;
  try {
    const json doc = json::parse(json_text);
    const size_t n1 = doc.value("n1", size_t{100});
    const size_t n2 = doc.value("n2", size_t{10});
    const double universe = doc.value("universe_total", 1e6);
    spec = DefaultSynthSpec(n1, n2, universe);
    spec.weight_sigma = doc.value("weight_sigma", spec.weight_sigma);
    if (doc.contains("categorical")) {
      spec.categorical.clear();
      for (const json& c : doc.at("categorical")) {
        spec.categorical.push_back(
            {c.at("name").get<std::string>(),
             c.at("values").get<std::vector<std::string>>(),
             c.at("probabilities").get<std::vector<double>>()});
      }
      if (!doc.contains("real")) {
        for (RealSpec& r : spec.real) r.effects.clear();
      }
    }
    if (doc.contains("real")) {
      spec.real.clear();
      for (const json& r : doc.at("real")) {
        RealSpec real;
        real.name = r.at("name").get<std::string>();
        real.log_mean = r.value("log_mean", real.log_mean);
        real.log_sigma = r.value("log_sigma", real.log_sigma);
        if (r.contains("effects")) {
          real.effects = r.at("effects").get<std::vector<std::vector<double>>>();
        }
        spec.real.push_back(std::move(real));
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("synth spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

}  // namespace panelfusion
