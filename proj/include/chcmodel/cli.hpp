#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chcmodel/saturation.hpp"

namespace chc {

enum class Command { Saturate, Model, Eval, Explain, CheckLeast };
enum class Format { Text, Json };

namespace exit_code {
constexpr int ok = 0;
constexpr int refuted = 1;
constexpr int resource_out = 2;
constexpr int explanation = 3;
constexpr int disagree = 4;
constexpr int violated = 5;
constexpr int parse = 10;
constexpr int usage = 11;
constexpr int internal = 12;
constexpr int io = 13;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::Saturate;
  std::string input_path;
  std::optional<std::vector<Predicate>> order;
  Limits limits;
  std::optional<Window> window;
  Format format = Format::Text;
  bool force = false;
  std::optional<std::string> query;  // eval only
};

/// Runs one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace chc
