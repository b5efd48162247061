// Copyright (c) 2026 The swarmloc Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "swarmloc/cli/app.hpp"
#include "swarmloc/cli/bench.hpp"
#include "swarmloc/cli/commands.hpp"
#include "swarmloc/compose/spec_io.hpp"
#include "swarmloc/dataset/atomic_file.hpp"
#include "swarmloc/errors.hpp"
#include "swarmloc/parallel.hpp"

namespace swarmloc::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kEnvPrefix = "SWARMLOC_";

std::string env_name(const std::string& scope, const std::string& option) {
  std::string name = kEnvPrefix;
  for (const std::string& part : {scope, option}) {
    if (part.empty()) continue;
    if (name.size() > std::char_traits<char>::length(kEnvPrefix)) name += '_';
    for (const char c : part) {
      name += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  return name;
}

// Every long option of `app` gets an environment fallback.
void attach_env(CLI::App& app, const std::string& scope) {
  for (CLI::Option* opt : app.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help") continue;
    opt->envname(env_name(scope, names.front()));
  }
}

// --config is needed before the options are declared, since the file supplies
// their defaults.
std::optional<fs::path> find_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return fs::path(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return fs::path(arg.substr(9));
  }
  if (const char* env = std::getenv(env_name("", "config").c_str()); env && *env) {
    return fs::path(env);
  }
  return std::nullopt;
}

json load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw ConfigError("config file " + path.string() + " must hold a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed config file " + path.string() + ": " + e.what());
  }
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) out += (out.empty() ? "" : ",") + scalar_text(item);
    return out;
  }
  return v.dump();
}

// Config values become option defaults: the command line and the environment
// still override them.
void apply_section(CLI::App& app, const json& section, const std::string& name) {
  if (!section.is_object()) throw ConfigError("config section '" + name + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = app.get_option_no_throw(flag);
    if (opt == nullptr) {
      throw ConfigError("unknown key '" + key + "' in config section '" + name + "'");
    }
    try {
      opt->run_callback_for_default()->default_val(scalar_text(value));
    } catch (const CLI::Error& e) {
      throw ConfigError("config key '" + name + "." + key + "': " + e.what());
    }
  }
}

pipeline::PipelineSettings pipeline_settings(const std::optional<json>& config,
                                             const std::optional<fs::path>& path,
                                             const char* command) {
  if (!config) {
    throw ConfigError(std::string(command) + " needs --config naming the pipeline settings");
  }
  const json& section = config->contains("pipeline") ? (*config)["pipeline"] : *config;
  return pipeline::pipeline_settings_from_json(section.dump(), path->parent_path());
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
}

std::pair<int, int> parse_robot_range(const std::string& text) {
  int lo = 0;
  int hi = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d..%d%c", &lo, &hi, &tail) == 2) return {lo, hi};
  if (std::sscanf(text.c_str(), "%d%c", &lo, &tail) == 1) return {lo, lo};
  throw ConfigError("robot range '" + text + "' is not of the form MIN..MAX");
}

struct Globals {
  std::string config;
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto config_path = find_config(argc, argv);
    std::optional<json> config;
    if (config_path) config = load_config(*config_path);

    CLI::App app{"Dataset generation, two-stage inference and evaluation for robot swarms",
                 "swarmloc"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "JSON config file (pipeline settings and defaults)");
    app.add_option("--threads", g.threads, "Worker threads, 0 for all cores")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Random seed");
    attach_env(app, "");

    // extract-crops
    ExtractOptions ex;
    std::string ex_frames, ex_out, ex_background, ex_mask;
    std::optional<double> ex_align;
    auto* extract = app.add_subcommand("extract-crops", "Cut robot crops out of recorded frames");
    extract->add_option("--frames", ex_frames, "Directory of frames showing one robot");
    extract->add_option("--background", ex_background, "Empty-scene image (automatic mode)");
    extract->add_option("--mask", ex_mask, "Hand-drawn mask (manual mode)");
    extract->add_option("--out", ex_out, "Crop library root");
    extract->add_option("--type", ex.robot_type, "Robot type");
    extract->add_option("--id", ex.instance_id, "Instance id");
    extract->add_option("--threshold", ex.params.threshold, "Background difference threshold");
    extract->add_option("--open-radius", ex.params.open_radius, "Opening radius");
    extract->add_option("--close-radius", ex.params.close_radius, "Closing radius");
    extract->add_option("--align", ex_align, "Orientation shown in the frames, degrees");
    attach_env(*extract, "extract-crops");

    // compose
    ComposeOptions co;
    std::string co_spec, co_out;
    std::optional<int> co_frames, co_decoys;
    auto* compose_cmd = app.add_subcommand("compose", "Synthesize a labelled dataset");
    compose_cmd->add_option("--spec", co_spec, "Composition spec (JSON)");
    compose_cmd->add_option("--out", co_out, "Output directory");
    compose_cmd->add_option("--frames", co_frames, "Override the frame count");
    compose_cmd->add_option("--eval-decoys", co_decoys, "Decoys per frame (evaluation sets)");
    compose_cmd->add_flag("--timestamp", co.timestamp, "Record the creation time");
    attach_env(*compose_cmd, "compose");

    // augment
    AugmentOptions au;
    std::string au_manifest, au_out, au_stage2;
    std::vector<std::string> au_flips;
    bool au_no_original = false;
    auto* augment = app.add_subcommand("augment", "Flip and crop an existing dataset");
    augment->add_option("--manifest", au_manifest, "Source manifest");
    augment->add_option("--out", au_out, "Output directory");
    augment->add_option("--flip", au_flips, "horizontal and/or vertical")
        ->delimiter(',')
        ->check(CLI::IsMember({"horizontal", "vertical"}));
    augment->add_option("--ssd-crops", au.ssd_crops, "Random crops per frame");
    augment->add_flag("--no-original", au_no_original, "Leave the source frames out");
    augment->add_option("--stage2-out", au_stage2, "Directory for per-robot training crops");
    augment->add_option("--variance-low", au.variance_low, "Smallest relative side move");
    augment->add_option("--variance-high", au.variance_high, "Largest relative side move");
    attach_env(*augment, "augment");

    // run-pipeline
    RunPipelineOptions rp;
    std::string rp_input, rp_results;
    auto* run = app.add_subcommand("run-pipeline", "Detect, identify and orient robots");
    run->add_option("--input", rp_input, "Manifest or directory of frames");
    run->add_option("--results", rp_results, "Results file (JSON Lines)");
    run->add_option("--backend", rp.backend, "Inference backend");
    attach_env(*run, "run-pipeline");

    // evaluate
    EvaluateOptions ev;
    std::string ev_gt, ev_results, ev_report;
    auto* eval = app.add_subcommand("evaluate", "Score results against ground truth");
    eval->add_option("--gt", ev_gt, "Ground-truth manifest");
    eval->add_option("--results", ev_results, "Results file");
    eval->add_option("--iou", ev.iou, "IoU threshold");
    eval->add_option("--report", ev_report, "JSON report path");
    attach_env(*eval, "evaluate");

    // bench
    BenchOptions be;
    std::vector<std::string> be_resolutions{"200x150", "400x300", "800x600"};
    std::string be_robots = "1..10";
    std::string be_output;
    bool be_json = false;
    auto* bench = app.add_subcommand("bench", "Measure stage latencies");
    bench->add_option("--resolutions", be_resolutions, "Stage-1 resolutions, WxH")
        ->delimiter(',');
    bench->add_option("--robots", be_robots, "Robot counts, MIN..MAX");
    bench->add_option("--runs", be.runs, "Timed runs per measurement");
    bench->add_option("--output", be_output, "JSON report path");
    bench->add_flag("--json", be_json, "Print JSON instead of the table");
    attach_env(*bench, "bench");

    if (config) {
      for (const auto& [key, value] : config->items()) {
        if (key == "seed" || key == "threads") {
          apply_section(app, json{{key, value}}, "top level");
        } else if (CLI::App* sub = app.get_subcommand_no_throw(key)) {
          apply_section(*sub, value, key);
        }
      }
    }

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
    const int threads = resolve_threads(g.threads);

    if (extract->parsed()) {
      require(ex_frames, "--frames");
      require(ex_out, "--out");
      ex.frames = ex_frames;
      ex.out = ex_out;
      if (!ex_background.empty()) ex.background = ex_background;
      if (!ex_mask.empty()) ex.mask = ex_mask;
      ex.align_deg = ex_align;
      const auto summary = extract_crops(ex);
      for (const auto& f : summary.failures) err << "extraction failed: " << f << '\n';
      out << "wrote " << summary.written.size() << " crops, " << summary.failures.size()
          << " failures\n";
      return summary.failures.empty() ? 0 : 1;
    }

    if (compose_cmd->parsed()) {
      require(co_out, "--out");
      if (!co_spec.empty()) {
        co.spec = compose::read_composition_spec(co_spec);
      } else if (config && config->contains("composition")) {
        co.spec = compose::composition_spec_from_json((*config)["composition"].dump(),
                                                      config_path->parent_path());
      } else {
        throw ConfigError("compose needs --spec or a 'composition' section in the config");
      }
      if (co_frames) co.spec.frame_count = *co_frames;
      if (co_decoys) co.spec.decoys_per_frame = *co_decoys;
      if (g.seed) co.spec.seed = *g.seed;
      co.out = co_out;
      co.threads = threads;
      const auto manifest = compose_dataset(co);
      out << "wrote " << manifest.frames.size() << " frames to " << co.out.string() << "\n\n"
          << balance_report(manifest.meta.counts);
      return 0;
    }

    if (augment->parsed()) {
      require(au_manifest, "--manifest");
      require(au_out, "--out");
      au.manifest = au_manifest;
      au.out = au_out;
      au.keep_original = !au_no_original;
      for (const auto& f : au_flips) {
        au.flips.push_back(f == "horizontal" ? compose::FlipAxis::kHorizontal
                                             : compose::FlipAxis::kVertical);
      }
      if (!au_stage2.empty()) au.stage2_out = au_stage2;
      au.seed = g.seed.value_or(0);
      au.threads = threads;
      const auto manifest = augment_dataset(au);
      out << "wrote " << manifest.frames.size() << " frames to " << au.out.string() << '\n';
      return 0;
    }

    if (run->parsed()) {
      require(rp_input, "--input");
      require(rp_results, "--results");
      rp.input = rp_input;
      rp.results = rp_results;
      rp.settings = pipeline_settings(config, config_path, "run-pipeline");
      rp.threads = threads;
      const auto results = run_pipeline(rp);
      std::size_t robots = 0;
      for (const auto& r : results) robots += r.robots.size();
      out << "processed " << results.size() << " frames, " << robots << " robots\n";
      return 0;
    }

    if (eval->parsed()) {
      require(ev_gt, "--gt");
      require(ev_results, "--results");
      ev.ground_truth = ev_gt;
      ev.results = ev_results;
      if (!ev_report.empty()) ev.report = ev_report;
      out << metrics::report_table(evaluate_files(ev));
      return 0;
    }

    if (bench->parsed()) {
      be.settings = pipeline_settings(config, config_path, "bench");
      be.resolutions.clear();
      for (const auto& r : be_resolutions) be.resolutions.push_back(parse_resolution(r));
      std::tie(be.robots_min, be.robots_max) = parse_robot_range(be_robots);
      be.seed = g.seed.value_or(0);
      be.threads = threads;
      const auto report = run_bench(be);
      if (!be_output.empty()) dataset::write_file_atomic(be_output, bench_to_json(report));
      out << (be_json ? bench_to_json(report) : bench_table(report));
      return 0;
    }
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace swarmloc::cli
