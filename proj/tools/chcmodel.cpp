#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chcmodel/cli.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturate constrained Horn clauses over linear arithmetic and build their least model"};
  app.require_subcommand(1);

  chc::RunConfig cfg;
  std::string order, format = "text", query;
  std::vector<long long> window;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input_path, "Problem file")->required();
    sub->add_option("--order", order, "Predicate precedence, ascending, comma separated");
    sub->add_option("--max-derived", cfg.limits.max_derived, "Stop after deriving this many clauses");
    sub->add_option("--max-seconds", cfg.limits.max_seconds, "Stop saturating after this many seconds");
    sub->add_option("--window", window, "Integer window LO HI")->expected(2);
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--force", cfg.force, "Emit a model even if saturation was cut short");
  };

  auto* saturate = app.add_subcommand("saturate", "Run the saturation loop and print its trace");
  auto* model = app.add_subcommand("model", "Saturate, then print the constructed model");
  auto* eval = app.add_subcommand("eval", "Check a query clause against the constructed model");
  auto* explain = app.add_subcommand("explain", "Find an inference showing the input is not saturated");
  auto* check = app.add_subcommand("check-least", "Compare the model with the window least fixpoint (LIA)");
  for (auto* sub : {saturate, model, eval, explain, check}) add_common(sub);
  eval->add_option("query", query, "Query clause, e.g. \"(clause (>= x 0) (P x))\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return chc::exit_code::usage;
  }

  if (saturate->parsed()) cfg.command = chc::Command::Saturate;
  if (model->parsed()) cfg.command = chc::Command::Model;
  if (eval->parsed()) {
    cfg.command = chc::Command::Eval;
    cfg.query = query;
  }
  if (explain->parsed()) cfg.command = chc::Command::Explain;
  if (check->parsed()) cfg.command = chc::Command::CheckLeast;
  if (!order.empty()) cfg.order = split_commas(order);
  if (window.size() == 2) cfg.window = chc::Window{window[0], window[1]};
  cfg.format = format == "json" ? chc::Format::Json : chc::Format::Text;

  return chc::run(cfg, std::cout, std::cerr);
}
