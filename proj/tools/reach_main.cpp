// Copyright 2026 The Reach Authors
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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "reach/analysis.hpp"
#include "reach/bench.hpp"
#include "reach/compare.hpp"
#include "reach/generator.hpp"
#include "reach/oracle.hpp"
#include "reach/parser.hpp"
#include "reach/pta.hpp"
#include "reach/summary_store.hpp"
#include "reach/validate.hpp"

namespace {

using nlohmann::json;

constexpr const char* kSchema = "reach-report/1";
constexpr int kExitOk = 0;
constexpr int kExitModelViolation = 1;
constexpr int kExitInternal = 2;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << content;
}

// --threads beats REACH_THREADS beats hardware concurrency.
unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("REACH_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

json result_counts(const reach::AnalysisResult& r) {
  return json{{"reachable_methods", r.reachable_methods.size()},
              {"instantiated_types", r.instantiated_types.size()},
              {"virtual_invoked_methods", r.virtual_invoked_methods.size()},
              {"special_invoked_methods", r.special_invoked_methods.size()},
              {"read_fields", r.read_fields.size()},
              {"written_fields", r.written_fields.size()},
              {"image_heap_objects", r.image_heap_objects.size()}};
}

json result_body(const reach::ProgramModel& model,
                 const reach::AnalysisResult& r) {
  json j;
  j["counts"] = result_counts(r);
  auto methods = [&](const std::vector<reach::MethodId>& ids) {
    json arr = json::array();
    for (reach::MethodId id : ids) arr.push_back(model.method_token(id));
    return arr;
  };
  auto fields = [&](const std::vector<reach::FieldId>& ids) {
    json arr = json::array();
    for (reach::FieldId id : ids) arr.push_back(model.field_token(id));
    return arr;
  };
  j["reachable_methods"] = methods(r.reachable_methods);
  j["virtual_invoked_methods"] = methods(r.virtual_invoked_methods);
  j["special_invoked_methods"] = methods(r.special_invoked_methods);
  json types = json::array();
  for (reach::TypeId t : r.instantiated_types) {
    types.push_back(model.type(t).name);
  }
  j["instantiated_types"] = types;
  j["read_fields"] = fields(r.read_fields);
  j["written_fields"] = fields(r.written_fields);
  json heap = json::array();
  for (reach::ObjectId o : r.image_heap_objects) {
    heap.push_back(model.object(o).name);
  }
  j["image_heap_objects"] = heap;

  json prov_methods = json::object();
  for (reach::MethodId m : r.reachable_methods) {
    prov_methods[model.method_token(m)] = r.method_provenance[m.index()];
  }
  json prov_types = json::object();
  for (reach::TypeId t : r.instantiated_types) {
    prov_types[model.type(t).name] = r.type_provenance[t.index()];
  }
  j["provenance"] = json{{"methods", prov_methods}, {"types", prov_types}};
  j["diagnostics"] = json{{"no_target_resolutions", r.no_target_resolutions},
                          {"ambiguous_resolutions", r.ambiguous_resolutions},
                          {"summaries_reused", r.summaries_reused},
                          {"summaries_extracted", r.summaries_extracted}};
  return j;
}

void print_analysis_text(const reach::ProgramModel& model,
                         const reach::AnalysisResult& r,
                         const std::string& engine, double parse_seconds,
                         double total_seconds, bool verbose) {
  std::cout << "engine: " << engine << "\n"
            << "reachable methods:       " << r.reachable_methods.size() << "\n"
            << "instantiated types:      " << r.instantiated_types.size() << "\n"
            << "virtual invoked methods: " << r.virtual_invoked_methods.size()
            << "\n"
            << "special invoked methods: " << r.special_invoked_methods.size()
            << "\n"
            << "read fields:             " << r.read_fields.size() << "\n"
            << "written fields:          " << r.written_fields.size() << "\n"
            << "image heap objects:      " << r.image_heap_objects.size()
            << "\n"
            << "summaries reused/extracted: " << r.summaries_reused << "/"
            << r.summaries_extracted << "\n"
            << "skipped resolutions (no target/ambiguous): "
            << r.no_target_resolutions << "/" << r.ambiguous_resolutions
            << "\n";
  if (verbose) {
    for (reach::MethodId m : r.reachable_methods) {
      std::cout << "  method " << model.method_token(m) << "  <- "
                << r.method_provenance[m.index()] << "\n";
    }
    for (reach::TypeId t : r.instantiated_types) {
      std::cout << "  type " << model.type(t).name << "  <- "
                << r.type_provenance[t.index()] << "\n";
    }
  }
  std::printf("timings: parse=%.3fs analysis=%.3fs total=%.3fs\n",
              parse_seconds, r.analysis_seconds, total_seconds);
}

struct CommonArgs {
  std::string model_path;
  std::string report = "text";
  unsigned threads = 0;
};

int run_analyze(const CommonArgs& common, const std::string& engine,
                const std::string& summaries_path,
                const std::string& emit_summaries_path,
                bool collapse_special, const std::string& dump_graph_path,
                bool verbose) {
  auto t0 = std::chrono::steady_clock::now();
  reach::ProgramModel model = reach::parse_model(read_file(common.model_path));
  double parse_seconds = seconds_since(t0);

  reach::AnalysisConfig config;
  config.threads = resolve_threads(common.threads);
  config.distinguish_special_invokes = !collapse_special;
  if (!summaries_path.empty()) config.summary_store_path = summaries_path;
  if (!emit_summaries_path.empty()) {
    config.emit_summaries_path = emit_summaries_path;
  }

  reach::AnalysisResult result;
  if (engine == "rta") {
    result = reach::analyze(model, config);
  } else {
    reach::PtaOutput out = reach::analyze_pta_with_graph(model, config);
    result = std::move(out.result);
    if (!dump_graph_path.empty()) {
      write_file(dump_graph_path,
                 reach::dump_type_flow_graph(model, out.graph));
    }
  }
  double total_seconds = seconds_since(t0);

  if (common.report == "json") {
    json j = result_body(model, result);
    j["schema"] = kSchema;
    j["command"] = "analyze";
    j["engine"] = engine;
    j["model"] = common.model_path;
    j["threads"] = config.threads;
    j["timings"] = json{{"parse_seconds", parse_seconds},
                        {"analysis_seconds", result.analysis_seconds},
                        {"total_seconds", total_seconds}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_analysis_text(model, result, engine, parse_seconds, total_seconds,
                        verbose);
  }
  return kExitOk;
}

int run_compare(const CommonArgs& common) {
  auto t0 = std::chrono::steady_clock::now();
  reach::ProgramModel model = reach::parse_model(read_file(common.model_path));
  double parse_seconds = seconds_since(t0);

  reach::AnalysisConfig config;
  config.threads = resolve_threads(common.threads);
  reach::AnalysisResult pta = reach::analyze_pta(model, config);
  reach::AnalysisResult rta = reach::analyze(model, config);

  reach::DiffReport report = reach::compare_results(model, pta, rta);
  report.engine_a = "pta";
  report.engine_b = "rta";
  report.parse_seconds = parse_seconds;
  report.total_seconds = seconds_since(t0);

  if (common.report == "json") {
    auto diff = [](const reach::ElementDiff& d) {
      json j{{"count_a", d.count_a},
             {"count_b", d.count_b},
             {"only_in_a", d.only_in_a},
             {"only_in_b", d.only_in_b}};
      if (auto p = d.pct_delta()) {
        j["pct_delta"] = *p;
      } else {
        j["pct_delta"] = nullptr;
      }
      return j;
    };
    json j{{"schema", kSchema},
           {"command", "compare"},
           {"model", common.model_path},
           {"engine_a", report.engine_a},
           {"engine_b", report.engine_b},
           {"methods", diff(report.methods)},
           {"types", diff(report.types)},
           {"fields", diff(report.fields)},
           {"timings",
            json{{"parse_seconds", report.parse_seconds},
                 {"analysis_a_seconds", report.analysis_a_seconds},
                 {"analysis_b_seconds", report.analysis_b_seconds},
                 {"total_seconds", report.total_seconds}}}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << reach::render_diff_text(report);
  }
  return kExitOk;
}

int run_oracle(const CommonArgs& common) {
  auto t0 = std::chrono::steady_clock::now();
  reach::ProgramModel model = reach::parse_model(read_file(common.model_path));
  double parse_seconds = seconds_since(t0);

  reach::AnalysisResult result = reach::naive_least_fixpoint(model);
  double total_seconds = seconds_since(t0);

  if (common.report == "json") {
    json j = result_body(model, result);
    j["schema"] = kSchema;
    j["command"] = "oracle";
    j["model"] = common.model_path;
    j["timings"] = json{{"parse_seconds", parse_seconds},
                        {"analysis_seconds", result.analysis_seconds},
                        {"total_seconds", total_seconds}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_analysis_text(model, result, "oracle", parse_seconds, total_seconds,
                        false);
  }
  return kExitOk;
}

int run_gen(const reach::CorpusSpec& spec, const std::string& out_path) {
  reach::ProgramModel model = reach::generate_model(spec);
  write_file(out_path, reach::serialize_model(model));
  std::cout << "wrote " << out_path << ": " << model.types.size() << " types, "
            << model.methods.size() << " methods, " << model.fields.size()
            << " fields, " << model.heap.size() << " heap objects\n";
  return kExitOk;
}

int run_bench_cmd(const CommonArgs& common, const std::string& engines,
                  const std::string& threads_list, int reps) {
  reach::ProgramModel model = reach::parse_model(read_file(common.model_path));

  reach::BenchSpec spec;
  spec.engines.clear();
  std::istringstream es(engines);
  for (std::string item; std::getline(es, item, ',');) {
    if (!item.empty()) spec.engines.push_back(item);
  }
  spec.thread_counts.clear();
  std::istringstream ts(threads_list);
  for (std::string item; std::getline(ts, item, ',');) {
    int n = std::atoi(item.c_str());
    if (n > 0) spec.thread_counts.push_back(static_cast<unsigned>(n));
  }
  if (spec.engines.empty() || spec.thread_counts.empty()) {
    throw std::invalid_argument("bench needs at least one engine and thread count");
  }
  spec.repetitions = reps;

  reach::BenchReport report = reach::run_bench(model, spec);
  if (common.report == "json") {
    json rows = json::array();
    for (const reach::BenchRow& row : report.rows) {
      rows.push_back(json{{"engine", row.engine},
                          {"threads", row.threads},
                          {"runs_seconds", row.runs_seconds},
                          {"mean_seconds", row.mean_seconds},
                          {"reachable_methods", row.reachable_methods}});
    }
    json j{{"schema", kSchema},
           {"command", "bench"},
           {"model", common.model_path},
           {"rows", rows}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << reach::render_bench_text(report);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reach - whole-program reachability analysis toolkit"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string engine = "rta";
  std::string summaries_path, emit_summaries_path, dump_graph_path;
  bool collapse_special = false;
  bool verbose = false;

  auto add_common = [&](CLI::App* cmd, bool with_threads) {
    cmd->add_option("--model", common.model_path, "model file")->required();
    cmd->add_option("--report", common.report, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_threads) {
      cmd->add_option("--threads", common.threads,
                      "analysis threads (default: REACH_THREADS or hardware)");
    }
  };

  CLI::App* analyze = app.add_subcommand("analyze", "run one engine");
  add_common(analyze, true);
  analyze->add_option("--engine", engine, "analysis engine")
      ->check(CLI::IsMember({"rta", "pta"}));
  analyze->add_option("--summaries", summaries_path,
                      "consume a summary store from a previous run");
  analyze->add_option("--emit-summaries", emit_summaries_path,
                      "write a summary store after the run");
  analyze->add_flag("--collapse-special", collapse_special,
                    "treat special invokes as direct invokes");
  analyze->add_option("--dump-graph", dump_graph_path,
                      "write the type-flow graph listing (pta only)");
  analyze->add_flag("--verbose", verbose, "list elements with provenance");

  CLI::App* compare = app.add_subcommand("compare", "run pta and rta, diff");
  add_common(compare, true);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "run the naive reference fixpoint");
  add_common(oracle, false);

  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic model");
  reach::CorpusSpec spec;
  std::string out_path;
  gen->add_option("--seed", spec.seed, "rng seed");
  gen->add_option("--types", spec.type_count, "type count");
  gen->add_option("--methods", spec.method_count, "method count");
  gen->add_option("--max-depth", spec.max_hierarchy_depth, "hierarchy depth");
  gen->add_option("--interface-density", spec.interface_density,
                  "fraction of interface types");
  gen->add_option("--call-density", spec.call_density, "invokes per body");
  gen->add_option("--field-density", spec.field_density, "fields per class");
  gen->add_option("--heap-objects", spec.heap_object_count, "heap objects");
  gen->add_option("--out", out_path, "output model file")->required();

  CLI::App* bench = app.add_subcommand("bench", "time engines on a model");
  add_common(bench, false);
  std::string engines = "rta,pta";
  std::string threads_list = "1";
  int reps = 3;
  bench->add_option("--engines", engines, "comma list: rta,pta");
  bench->add_option("--threads", threads_list, "comma list of thread counts");
  bench->add_option("--reps", reps, "repetitions per configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInternal;
  }

  try {
    if (*analyze) {
      return run_analyze(common, engine, summaries_path, emit_summaries_path,
                         collapse_special, dump_graph_path, verbose);
    }
    if (*compare) return run_compare(common);
    if (*oracle) return run_oracle(common);
    if (*gen) return run_gen(spec, out_path);
    if (*bench) return run_bench_cmd(common, engines, threads_list, reps);
  } catch (const reach::ParseError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModelViolation;
  } catch (const reach::ModelViolationError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModelViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
