#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chcmodel/eval.hpp"
#include "chcmodel/model.hpp"
#include "chcmodel/oracle.hpp"
#include "chcmodel/saturation.hpp"

namespace chc {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// First-order atom as written: arguments may be arbitrary linear terms.
struct SurfaceAtom {
  Predicate predicate;
  std::vector<LinTerm> args;

  friend bool operator==(const SurfaceAtom&, const SurfaceAtom&) = default;
};

struct SurfaceLiteral {
  bool positive = true;
  SurfaceAtom atom;

  friend bool operator==(const SurfaceLiteral&, const SurfaceLiteral&) = default;
};

/// Clause as written. Negative literals precede the positive one.
struct SurfaceClause {
  std::vector<Formula> constraint;
  std::vector<SurfaceLiteral> literals;
  int line = 0;

  friend bool operator==(const SurfaceClause& a, const SurfaceClause& b) {
    return a.constraint == b.constraint && a.literals == b.literals;
  }
};

struct Problem {
  Theory theory = Theory::LRA;
  std::vector<std::pair<Predicate, std::size_t>> declarations;
  std::optional<std::vector<Predicate>> order;
  std::optional<Window> window;
  std::vector<SurfaceClause> clauses;

  Signature signature() const;
  /// Explicit order if given, else declaration order.
  Precedence precedence() const;
  bool is_abstracted() const;
  /// Abstracted clauses numbered C1..Cn in file order.
  std::vector<Clause> to_clauses() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

Problem parse_problem(std::string_view text);
Problem load_problem(const std::string& path);

/// A single `(clause ...)` form checked against the declarations of p.
SurfaceClause parse_clause(std::string_view text, const Problem& p);

/// A quantifier-free formula in the printed syntax.
Formula parse_formula(std::string_view text, Theory th);

/// Parses the text produced by print_model.
std::map<Predicate, Formula> parse_model(std::string_view text, Theory th);

/// Replace every non-variable argument t by a fresh variable v and add
/// v = t to the constraint. Idempotent.
SurfaceClause abstract_clause(const SurfaceClause& c);
Problem abstract(const Problem& p);

Clause to_clause(const SurfaceClause& c, ClauseId id);

std::string format_term(const LinTerm& t);
std::string format_atom(const Atom& a);
std::string format_formula(const Formula& f);
std::string format_clause(const Clause& c);
std::string format_surface_clause(const SurfaceClause& c);
std::string format_assignment(const Assignment& a);

std::string print_problem(const Problem& p);
std::string print_model(const SymbolicInterpretation& s, const std::vector<Predicate>& order);
std::string print_trace(const SaturationState& st);
std::string print_eval(const EvalReport& r);
std::string print_explanation(const std::optional<Explanation>& e);
std::string print_least_check(const LeastCheck& r, const Window& w);

using Json = nlohmann::ordered_json;

Json term_json(const LinTerm& t);
Json formula_json(const Formula& f);
Json clause_json(const Clause& c);
Json model_json(const SymbolicInterpretation& s, const std::vector<Predicate>& order);
Json trace_json(const SaturationState& st);
Json eval_json(const EvalReport& r);
Json explanation_json(const std::optional<Explanation>& e);
Json least_check_json(const LeastCheck& r, const Window& w);

}  // namespace chc
