#include "cli.h"

#include <CLI11.hpp>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "panelfusion/assignment.h"
#include "panelfusion/config.h"
#include "panelfusion/csv.h"
#include "panelfusion/errors.h"
#include "panelfusion/features.h"
#include "panelfusion/fusion_engine.h"
#include "panelfusion/panel.h"
#include "panelfusion/report.h"
#include "panelfusion/synth.h"

namespace panelfusion {
namespace {

struct Args {
  std::string left;
  std::string right;
  std::string config;
  std::string mode = "iterative";
  std::string out;
  std::string report_json;
  std::string trace_csv;
  std::string assignments;
  std::string panel;
  std::string spec;
  std::string left_out;
  std::string right_out;
  int workers = 0;
  size_t n1 = 100;
  size_t n2 = 10;
  double universe = 1e6;
  uint64_t seed = 1;
};

EngineConfig LoadConfig(const Args& args) {
  EngineConfig config;
  if (!args.config.empty()) config = LoadEngineConfig(args.config);
  if (args.workers > 0) config.workers = args.workers;
  return config;
}

std::string StageLine(const StageTrace& s) {
  std::ostringstream line;
  line << "stage " << s.stage << ": clusters=" << s.clusters
       << " matched=" << s.matched_left << "/" << s.matched_right
       << " residual=" << s.residual_left << "/" << s.residual_right
       << " deferred=" << s.deferred_left << "/" << s.deferred_right
       << " fallbacks=" << s.pruned_fallbacks << " time=" << std::fixed
       << std::setprecision(2) << s.elapsed_seconds << "s";
  return line.str();
}

std::pair<Panel, Panel> LoadPair(const Args& args, int64_t unit_scale) {
  Panel left = LoadPanel(args.left);
  Panel right = LoadPanel(args.right);
  NormalizeFeatures(left, right);  // schema check only
  QuantizeWeights(left, right, unit_scale);
  return {std::move(left), std::move(right)};
}

int Fuse(const Args& args, std::ostream& out, std::ostream& err) {
  const EngineConfig config = LoadConfig(args);
  auto [left, right] = LoadPair(args, config.unit_scale);
  FusionOptions options = config.Options();
  options.on_stage = [&err](const StageTrace& s) {
    err << StageLine(s) << std::endl;
  };
  FusionResult result;
  if (args.mode == "single") {
    const CostMode mode = config.mode_per_stage.size() == 1
                              ? config.mode_per_stage[0]
                              : CostMode::kSoft;
    result = FuseSingle(left, right, config.BaseModel(mode), options);
  } else {
    result = FuseIterative(left, right, config.Schedule(), config.BaseModel(),
                           options);
  }
  WriteAssignments(result.assignments, args.out);
  const FusionReport report = MakeFusionReport(result, left, right);
  if (!args.report_json.empty()) WriteFile(args.report_json, ReportToJson(report));
  if (!args.trace_csv.empty()) WriteFile(args.trace_csv, TraceToCsv(result.trace));
  out << ReportToText(report);
  return kExitOk;
}

int Validate(const Args& args, std::ostream& out) {
  const EngineConfig config = LoadConfig(args);
  Panel left = LoadPanel(args.left);
  Panel right = LoadPanel(args.right);
  out << std::setprecision(17);
  out << "left:  " << left.size() << " panelists, total weight "
      << left.TotalWeight() << "\n";
  out << "right: " << right.size() << " panelists, total weight "
      << right.TotalWeight() << "\n";
  auto [norm_left, norm_right, schema] = NormalizeFeatures(left, right);
  out << "features: " << schema.categorical_names.size() << " categorical, "
      << schema.real_names.size() << " real\n";
  config.Schedule().Validate(norm_left.schema);
  QuantizeWeights(left, right, config.unit_scale);
  out << "units: " << left.TotalUnits() << " = " << right.TotalUnits()
      << " at unit_scale " << config.unit_scale << "\n";
  out << "valid\n";
  return kExitOk;
}

int Report(const Args& args, std::ostream& out, std::ostream& err) {
  const EngineConfig config = LoadConfig(args);
  auto [left, right] = LoadPair(args, config.unit_scale);
  const AssignmentSet assignments = ReadAssignments(args.assignments);
  const FusionReport report = MakeFusionReport(assignments, left, right);
  if (!args.report_json.empty()) WriteFile(args.report_json, ReportToJson(report));
  out << ReportToText(report);

  std::map<std::string, FlowQuantity> left_sum, right_sum;
  for (const AssignedPair& pair : assignments.pairs) {
    left_sum[pair.left_id] += pair.units;
    right_sum[pair.right_id] += pair.units;
  }
  size_t violations = 0;
  for (const auto& [panel, sums] :
       {std::pair{&left, &left_sum}, std::pair{&right, &right_sum}}) {
    for (const Panelist& p : panel->panelists) {
      if ((*sums)[p.id] != p.units) {
        if (violations < 10) {
          err << "mass balance: \"" << p.id << "\" assigned " << (*sums)[p.id]
              << " of " << p.units << " units\n";
        }
        ++violations;
      }
    }
  }
  out << std::left << std::setw(44) << "Mass balance"
      << (violations == 0 ? std::string("exact")
                          : std::to_string(violations) + " violations")
      << "\n";
  return violations == 0 ? kExitOk : kExitValidation;
}

int SelfTest(const Args& args, std::ostream& out) {
  const EngineConfig config = LoadConfig(args);
  const Panel panel = LoadPanel(args.panel);
  const SelfFusionReport report = SelfFusionQuality(panel, config);
  if (!args.report_json.empty()) {
    WriteFile(args.report_json, SelfFusionToJson(report));
  }
  out << SelfFusionToText(report);
  return kExitOk;
}

int Synth(const Args& args, std::ostream& out) {
  SynthSpec spec = args.spec.empty()
                       ? DefaultSynthSpec(args.n1, args.n2, args.universe)
                       : ParseSynthSpec(ReadFile(args.spec));
  const auto [left, right] = SynthPanels(spec, args.seed);
  WritePanel(left, args.left_out);
  WritePanel(right, args.right_out);
  out << "wrote " << left.size() << " left and " << right.size()
      << " right panelists\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Panel fusion by min-cost transportation", "panelfusion"};
  app.require_subcommand(1);
  Args args;

  auto* fuse = app.add_subcommand("fuse", "Fuse two panels");
  fuse->add_option("--left", args.left, "Left panel CSV")->required();
  fuse->add_option("--right", args.right, "Right panel CSV")->required();
  fuse->add_option("--config", args.config, "Engine config JSON");
  fuse->add_option("--mode", args.mode, "single or iterative")
      ->check(CLI::IsMember({"single", "iterative"}));
  fuse->add_option("--out", args.out, "Assignment CSV to write")->required();
  fuse->add_option("--report", args.report_json, "Report JSON to write");
  fuse->add_option("--trace", args.trace_csv, "Stage trace CSV to write");
  fuse->add_option("--workers", args.workers, "Override config workers")
      ->check(CLI::Range(1, 1024));

  auto* validate = app.add_subcommand("validate", "Check two panels");
  validate->add_option("--left", args.left, "Left panel CSV")->required();
  validate->add_option("--right", args.right, "Right panel CSV")->required();
  validate->add_option("--config", args.config, "Engine config JSON");

  auto* report = app.add_subcommand("report", "Report on an assignment file");
  report->add_option("--left", args.left, "Left panel CSV")->required();
  report->add_option("--right", args.right, "Right panel CSV")->required();
  report->add_option("--assignments", args.assignments, "Assignment CSV")
      ->required();
  report->add_option("--config", args.config, "Engine config JSON");
  report->add_option("--json", args.report_json, "Report JSON to write");

  auto* selftest = app.add_subcommand("selftest", "Fuse a panel with itself");
  selftest->add_option("--panel", args.panel, "Panel CSV")->required();
  selftest->add_option("--config", args.config, "Engine config JSON");
  selftest->add_option("--json", args.report_json, "Report JSON to write");
  selftest->add_option("--workers", args.workers, "Override config workers")
      ->check(CLI::Range(1, 1024));

  auto* synth = app.add_subcommand("synth", "Generate synthetic panels");
  synth->add_option("--n1", args.n1, "Left panelists");
  synth->add_option("--n2", args.n2, "Right panelists");
  synth->add_option("--universe", args.universe, "Universe total");
  synth->add_option("--seed", args.seed, "Random seed");
  synth->add_option("--spec", args.spec, "Synthetic spec JSON");
  synth->add_option("--left-out", args.left_out, "Left panel CSV")->required();
  synth->add_option("--right-out", args.right_out, "Right panel CSV")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fuse) return Fuse(args, out, err);
    if (*validate) return Validate(args, out);
    if (*report) return Report(args, out, err);
    if (*selftest) return SelfTest(args, out);
    if (*synth) return Synth(args, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace panelfusion
