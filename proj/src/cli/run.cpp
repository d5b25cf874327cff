#include "chcmodel/cli.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "chcmodel/frontend.hpp"
#include "chcmodel/la.hpp"

namespace chc {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Session {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
  Problem problem;
  Precedence ord;
  std::vector<Clause> input;

  void emit(const Json& j) { out << j.dump(2) << "\n"; }
  bool json() const { return cfg.format == Format::Json; }

  // Saturates and returns the clause set the model is built from, or an
  // exit code when the run must stop.
  std::variant<std::vector<Clause>, int> saturated_set() {
    SaturationState st = saturate(input, ord, problem.theory, cfg.limits);
    if (st.status == Status::Refuted) {
      err << "clause set is unsatisfiable (refuted by " << clause_name(*st.refutation) << "); no model\n";
      return exit_code::refuted;
    }
    std::vector<Clause> n = st.worked_off;
    if (st.status == Status::ResourceOut) {
      if (!cfg.force) {
        err << "saturation stopped at the resource limit; rerun with --force for an unsaturated model\n";
        return exit_code::resource_out;
      }
      n.insert(n.end(), st.usable.begin(), st.usable.end());
      std::sort(n.begin(), n.end(), [](const Clause& a, const Clause& b) { return a.id < b.id; });
      unsaturated = true;
    }
    return n;
  }
  bool unsaturated = false;

  int cmd_saturate() {
    SaturationState st = saturate(input, ord, problem.theory, cfg.limits);
    if (json())
      emit(trace_json(st));
    else
      out << print_trace(st);
    switch (st.status) {
      case Status::Refuted: return exit_code::refuted;
      case Status::ResourceOut: return exit_code::resource_out;
      default: return exit_code::ok;
    }
  }

  int cmd_model() {
    auto n = saturated_set();
    if (auto* code = std::get_if<int>(&n)) return *code;
    auto m = construct_model(std::get<0>(n), ord, problem.signature(), problem.theory);
    if (json()) {
      Json j = model_json(m.model, m.order);
      j["saturated"] = !unsaturated;
      emit(j);
    } else {
      if (unsaturated) out << "; UNSATURATED: saturation hit the resource limit, the model may violate the input\n";
      out << print_model(m.model, m.order);
    }
    return exit_code::ok;
  }

  int cmd_eval() {
    if (!cfg.query) throw UsageError("eval requires a query clause");
    Clause q = to_clause(abstract_clause(parse_clause(*cfg.query, problem)), 0);
    auto n = saturated_set();
    if (auto* code = std::get_if<int>(&n)) return *code;
    auto m = construct_model(std::get<0>(n), ord, problem.signature(), problem.theory);
    EvalReport r = check_clause(q, m.model, problem.theory);
    if (json()) {
      Json j = eval_json(r);
      j["saturated"] = !unsaturated;
      emit(j);
    } else {
      if (unsaturated) out << "; UNSATURATED\n";
      out << print_eval(r);
    }
    return r.valid ? exit_code::ok : exit_code::violated;
  }

  int cmd_explain() {
    for (const auto& c : input)
      if (c.fo_empty() && is_satisfiable(c.constraint_formula(), problem.theory).sat) {
        err << "clause set contains the empty clause " << clause_name(c.id) << "\n";
        return exit_code::refuted;
      }
    auto m = construct_model(input, ord, problem.signature(), problem.theory);
    auto e = explain(input, m, ord, problem.theory);
    if (json())
      emit(explanation_json(e));
    else
      out << print_explanation(e);
    return e ? exit_code::explanation : exit_code::ok;
  }

  int cmd_check_least() {
    if (problem.theory != Theory::LIA) throw UsageError("check-least requires an LIA problem");
    std::optional<Window> w = cfg.window ? cfg.window : problem.window;
    if (!w) throw UsageError("check-least requires a window (--window LO HI or a window directive)");
    if (w->lo > w->hi) throw UsageError("empty window");
    auto n = saturated_set();
    if (auto* code = std::get_if<int>(&n)) return *code;
    auto m = construct_model(std::get<0>(n), ord, problem.signature(), problem.theory);
    LeastCheck r = check_least(input, m.model, *w, problem.theory);
    if (json())
      emit(least_check_json(r, *w));
    else
      out << print_least_check(r, *w);
    return r.agree ? exit_code::ok : exit_code::disagree;
  }
};

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Problem p;
  try {
    p = load_problem(cfg.input_path);
  } catch (const ParseError& e) {
    err << cfg.input_path << ": " << e.what() << "\n";
    return exit_code::parse;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code::io;
  }
  try {
    if (cfg.order) {
      std::set<Predicate> given(cfg.order->begin(), cfg.order->end());
      std::set<Predicate> declared;
      for (const auto& [name, n] : p.declarations) declared.insert(name);
      if (given != declared || given.size() != cfg.order->size())
        throw UsageError("--order must list every declared predicate exactly once");
      p.order = cfg.order;
    }
    Session s{cfg, out, err, p, p.precedence(), p.to_clauses()};
    switch (cfg.command) {
      case Command::Saturate: return s.cmd_saturate();
      case Command::Model: return s.cmd_model();
      case Command::Eval: return s.cmd_eval();
      case Command::Explain: return s.cmd_explain();
      case Command::CheckLeast: return s.cmd_check_least();
    }
  } catch (const ParseError& e) {
    err << "query: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
  return exit_code::internal;
}

}  // namespace chc
