#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "psmbv/model_file.hpp"
#include "psmbv/psm.hpp"

namespace {

using psmbv::CheckReport;

CheckReport run_command(const std::string& command, const psmbv::PSMModel& model,
                        int stage_mask) {
  if (command == "check-jacobi") {
    CheckReport r;
    auto j = model.jacobi_check();
    std::string note;
    if (!j.holds)
      note = "fails at triple (" + std::to_string(j.witness_triple[0]) + ',' +
             std::to_string(j.witness_triple[1]) + ',' + std::to_string(j.witness_triple[2]) + ")";
    r.add("jacobi", j.holds, j.holds ? "" : model.render(j.witness), note);
    return r;
  }
  if (command == "euler-forms") {
    CheckReport r;
    auto forms = model.euler_forms();
    for (int i = 1; i <= model.k(); ++i) {
      r.add("E_X[" + std::to_string(i) + "]", true,
            model.render(forms.E_X_direct[static_cast<size_t>(i - 1)]));
      r.add("E_eta[" + std::to_string(i) + "]", true,
            model.render(forms.E_eta_direct[static_cast<size_t>(i - 1)]));
    }
    r.add("euler-forms-agree", forms.sign_X == 1 && forms.sign_eta == 1, "",
          "recorded global signs: X " + std::to_string(forms.sign_X) + ", eta " +
              std::to_string(forms.sign_eta));
    return r;
  }
  if (command == "noether") return model.noether_identity_check();
  if (command == "kt") return model.kt_check();
  if (command == "ce") return model.ce_check();
  if (command == "master") return model.master_check(stage_mask);
  if (command == "differential") return model.differential_check(stage_mask);
  if (command == "all") return model.run_all();
  throw std::logic_error("unreachable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bigraded variational calculus checks for Poisson sigma models"};
  app.require_subcommand(1);

  std::string model_path;
  std::string format = "text";
  std::string verbosity = "summary";
  std::string stage = "SBV";
  bool timings = false;

  const std::vector<std::string> commands = {"check-jacobi", "euler-forms", "noether", "kt",
                                             "ce",           "master",      "differential", "all"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("model", model_path, "model file")->required();
    sub->add_option("--format", format)->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--verbosity", verbosity)->check(CLI::IsMember({"summary", "full-witness"}));
    sub->add_flag("--timings", timings, "report wall-clock time instead of 0");
    if (name == "master" || name == "differential")
      sub->add_option("--stage", stage)->check(CLI::IsMember({"S0", "S0+S1", "SBV"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const int stage_mask = (stage == "S0") ? 1 : (stage == "S0+S1") ? 3 : 7;

  psmbv::ModelFile file;
  try {
    file = psmbv::parse_model_metadata(model_path);
  } catch (const std::exception& e) {
    std::cerr << model_path << ": " << e.what() << '\n';
    return 2;
  }

  CheckReport report;
  const auto start = std::chrono::steady_clock::now();
  try {
    psmbv::PSMModel model(psmbv::to_poisson_tensor(file));
    report = run_command(command, model, stage_mask);
  } catch (const std::invalid_argument& e) {
    // violated operation precondition (e.g. non-Poisson input to a gated check)
    report.add("precondition", false, "", e.what());
  } catch (const std::exception& e) {
    std::cerr << model_path << ": " << e.what() << '\n';
    return 2;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  const long runtime_ms = timings ? static_cast<long>(elapsed) : 0;

  if (format == "structured") {
    nlohmann::ordered_json doc;
    doc["model"] = {{"name", file.name}, {"dim", file.dim}};
    auto& entries = doc["model"]["entries"] = nlohmann::ordered_json::array();
    for (const auto& [i, j, poly] : file.entries)
      entries.push_back({{"i", i}, {"j", j}, {"poly", poly}});
    doc["command"] = command;
    auto& checks = doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks)
      checks.push_back(
          {{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}, {"note", c.note}});
    doc["deviations"] = report.deviations;
    doc["runtime_ms"] = runtime_ms;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "model: " << (file.name.empty() ? "(unnamed)" : file.name) << " (dim "
              << file.dim << ")\n";
    std::cout << "command: " << command << '\n';
    std::cout << psmbv::render_text(report, verbosity == "full-witness");
    std::cout << (report.all_pass() ? "result: PASS" : "result: FAIL") << '\n';
    if (timings) std::cout << "runtime_ms: " << runtime_ms << '\n';
  }
  return report.all_pass() ? 0 : 1;
}
