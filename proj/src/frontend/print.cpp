#include <algorithm>
#include <sstream>

#include "chcmodel/frontend.hpp"

namespace chc {

namespace {

std::string format_number(const Rational& q) {
  if (is_integer(q)) return to_string(q);
  return "(/ " + q.get_num().get_str() + " " + q.get_den().get_str() + ")";
}

struct SplitAtom {
  std::string op;
  LinTerm lhs, rhs;
};

// lhs OP rhs with positive coefficients on both sides where possible.
SplitAtom split(const Atom& a) {
  LinTerm pos, neg;
  for (const auto& v : a.term().vars()) {
    Rational c = a.term().coeff(v);
    if (c > 0)
      pos = pos + LinTerm::variable(v) * c;
    else
      neg = neg + LinTerm::variable(v) * Rational(-c);
  }
  Rational k = a.term().constant_term();
  std::string op;
  bool flip = pos.vars().empty();
  switch (a.rel()) {
    case Rel::Le: op = flip ? ">=" : "<="; break;
    case Rel::Lt: op = flip ? ">" : "<"; break;
    case Rel::Eq: op = "="; break;
    case Rel::Ne: op = "distinct"; break;
    default: break;
  }
  if (flip) return {op, neg, LinTerm::constant(k)};
  return {op, pos, neg - LinTerm::constant(k)};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string format_fo_atom(const Predicate& p, const std::vector<std::string>& args) {
  return "(" + join([&] {
    std::vector<std::string> v{p};
    v.insert(v.end(), args.begin(), args.end());
    return v;
  }(), " ") + ")";
}

std::string format_constraint(const std::vector<Formula>& cs) {
  if (cs.empty()) return "true";
  if (cs.size() == 1) return format_formula(cs[0]);
  std::vector<std::string> parts;
  for (const auto& f : cs) parts.push_back(format_formula(f));
  return "(and " + join(parts, " ") + ")";
}

// Body atoms and optional head, already formatted.
std::string format_fo(const std::vector<std::string>& body, const std::optional<std::string>& head) {
  if (body.empty()) return head ? *head : "false";
  std::string b = body.size() == 1 ? body[0] : "(and " + join(body, " ") + ")";
  return "(=> " + b + " " + (head ? *head : "false") + ")";
}

std::string format_ground_atom(const GroundAtom& a) {
  std::vector<std::string> args;
  for (const auto& q : a.args) args.push_back(format_number(q));
  return a.predicate + "(" + join(args, ", ") + ")";
}

std::string tuple_text(const Predicate& p, const Tuple& t) {
  std::vector<std::string> args;
  for (auto v : t) args.push_back(std::to_string(v));
  return p + "(" + join(args, ", ") + ")";
}

Json assignment_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [v, q] : a) j[v] = to_string(q);
  return j;
}

Json literal_json(const Literal& l) {
  return Json{{"positive", l.positive}, {"predicate", l.atom.predicate}, {"args", l.atom.args}};
}

}  // namespace

std::string format_term(const LinTerm& t) {
  std::vector<std::string> items;
  for (const auto& v : t.vars()) {
    Rational c = t.coeff(v);
    if (c == 1)
      items.push_back(v);
    else if (c == -1)
      items.push_back("(- " + v + ")");
    else
      items.push_back("(* " + format_number(c) + " " + v + ")");
  }
  if (t.constant_term() != 0 || items.empty()) items.push_back(format_number(t.constant_term()));
  if (items.size() == 1) return items[0];
  return "(+ " + join(items, " ") + ")";
}

std::string format_atom(const Atom& a) {
  if (a.rel() == Rel::Div) return "(div " + a.modulus().get_str() + " " + format_term(a.term()) + ")";
  if (a.rel() == Rel::NDiv) return "(not (div " + a.modulus().get_str() + " " + format_term(a.term()) + "))";
  auto s = split(a);
  return "(" + s.op + " " + format_term(s.lhs) + " " + format_term(s.rhs) + ")";
}

std::string format_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Atom: return format_atom(f.as_atom());
    default: {
      std::vector<std::string> parts;
      for (const auto& c : f.children()) parts.push_back(format_formula(c));
      return std::string(f.kind() == Formula::Kind::And ? "(and " : "(or ") + join(parts, " ") + ")";
    }
  }
}

std::string format_clause(const Clause& c) {
  std::vector<std::string> body;
  std::optional<std::string> head;
  for (const auto& l : c.literals) {
    std::string a = format_fo_atom(l.atom.predicate, l.atom.args);
    if (l.positive)
      head = a;
    else
      body.push_back(a);
  }
  return "(clause " + format_constraint(c.constraint) + " " + format_fo(body, head) + ")";
}

std::string format_surface_clause(const SurfaceClause& c) {
  std::vector<std::string> body;
  std::optional<std::string> head;
  for (const auto& l : c.literals) {
    std::vector<std::string> args;
    for (const auto& t : l.atom.args) args.push_back(format_term(t));
    std::string a = format_fo_atom(l.atom.predicate, args);
    if (l.positive)
      head = a;
    else
      body.push_back(a);
  }
  return "(clause " + format_constraint(c.constraint) + " " + format_fo(body, head) + ")";
}

std::string format_assignment(const Assignment& a) {
  std::vector<std::string> parts;
  for (const auto& [v, q] : a) parts.push_back(v + " = " + format_number(q));
  return join(parts, ", ");
}

std::string print_problem(const Problem& p) {
  std::ostringstream out;
  out << "(theory " << theory_name(p.theory) << ")\n";
  for (const auto& [name, n] : p.declarations) out << "(pred " << name << " " << n << ")\n";
  if (p.order) out << "(order " << join(*p.order, " ") << ")\n";
  if (p.window) out << "(window " << p.window->lo << " " << p.window->hi << ")\n";
  for (const auto& c : p.clauses) out << format_surface_clause(c) << "\n";
  return out.str();
}

std::string print_model(const SymbolicInterpretation& s, const std::vector<Predicate>& order) {
  std::ostringstream out;
  for (const auto& p : order)
    out << "model " << p << "/" << s.arity(p) << " := " << format_formula(s.get(p)) << "\n";
  return out.str();
}

std::string print_trace(const SaturationState& st) {
  std::ostringstream out;
  auto reason = [](ClauseId by) { return by ? "subsumed by " + clause_name(by) : std::string("tautology"); };
  for (const auto& e : st.trace) {
    switch (e.kind) {
      case TraceEvent::Kind::Input:
        out << "input " << clause_name(e.clause) << " " << format_clause(*e.text) << "\n";
        break;
      case TraceEvent::Kind::Given: out << "given " << clause_name(e.clause) << "\n"; break;
      case TraceEvent::Kind::Derived:
        out << "derived " << clause_name(e.clause) << " from " << clause_name(e.left) << " "
            << clause_name(e.right) << " " << format_clause(*e.text) << "\n";
        break;
      case TraceEvent::Kind::Discarded:
        out << "discarded resolvent of " << clause_name(e.left) << " " << clause_name(e.right) << ": "
            << reason(e.by) << "\n";
        break;
      case TraceEvent::Kind::Removed: out << "removed " << clause_name(e.clause) << ": " << reason(e.by) << "\n"; break;
      case TraceEvent::Kind::Refuted: out << "refuted " << clause_name(e.clause) << "\n"; break;
    }
  }
  std::vector<Clause> fin = st.worked_off;
  std::sort(fin.begin(), fin.end(), [](const Clause& a, const Clause& b) { return a.id < b.id; });
  for (const auto& c : fin) out << "clause " << clause_name(c.id) << " " << format_clause(c) << "\n";
  out << "status " << status_name(st.status) << " derived " << st.derived_count << "\n";
  return out.str();
}

std::string print_eval(const EvalReport& r) {
  std::ostringstream out;
  out << "verdict " << (r.valid ? "valid" : "violated") << "\n";
  if (r.witness) out << "witness " << format_assignment(*r.witness) << "\n";
  return out.str();
}

std::string print_explanation(const std::optional<Explanation>& e) {
  if (!e) return "explanation none\n";
  std::ostringstream out;
  out << "violated " << clause_name(e->violated) << "\n";
  out << "witness " << format_assignment(e->witness) << "\n";
  out << "atom " << format_ground_atom(e->atom) << "\n";
  out << "producer " << clause_name(e->producer) << "\n";
  out << "resolvent " << clause_name(e->producer) << " x " << clause_name(e->violated) << " "
      << format_clause(e->resolvent) << "\n";
  return out.str();
}

std::string print_least_check(const LeastCheck& r, const Window& w) {
  std::ostringstream out;
  out << "window " << w.lo << " " << w.hi << "\n";
  out << "lfp steps " << r.lfp.steps << "\n";
  for (const auto& d : r.differences)
    out << "differs " << tuple_text(d.predicate, d.tuple) << (d.in_model ? " model-only" : " lfp-only") << "\n";
  out << "verdict " << (r.agree ? "agree" : "disagree") << " within window\n";
  return out.str();
}

Json term_json(const LinTerm& t) {
  Json coeffs = Json::object();
  for (const auto& v : t.vars()) coeffs[v] = to_string(t.coeff(v));
  return Json{{"coeffs", coeffs}, {"const", to_string(t.constant_term())}};
}

Json formula_json(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return Json{{"op", "true"}};
    case Formula::Kind::False: return Json{{"op", "false"}};
    case Formula::Kind::Atom: {
      const Atom& a = f.as_atom();
      if (a.is_divisibility()) {
        Json d{{"op", "div"}, {"modulus", a.modulus().get_str()}, {"arg", term_json(a.term())}};
        if (a.rel() == Rel::Div) return d;
        return Json{{"op", "not"}, {"args", Json::array({d})}};
      }
      auto s = split(a);
      return Json{{"op", s.op}, {"lhs", term_json(s.lhs)}, {"rhs", term_json(s.rhs)}};
    }
    default: {
      Json args = Json::array();
      for (const auto& c : f.children()) args.push_back(formula_json(c));
      return Json{{"op", f.kind() == Formula::Kind::And ? "and" : "or"}, {"args", args}};
    }
  }
}

Json clause_json(const Clause& c) {
  Json cs = Json::array();
  for (const auto& f : c.constraint) cs.push_back(formula_json(f));
  Json lits = Json::array();
  for (const auto& l : c.literals) lits.push_back(literal_json(l));
  Json prov{{"kind", c.provenance.kind == Provenance::Kind::Input ? "input" : "resolvent"}};
  if (c.provenance.kind == Provenance::Kind::Resolvent) {
    prov["left"] = clause_name(c.provenance.left);
    prov["right"] = clause_name(c.provenance.right);
  }
  return Json{{"id", clause_name(c.id)}, {"constraint", cs}, {"literals", lits}, {"provenance", prov}};
}

Json model_json(const SymbolicInterpretation& s, const std::vector<Predicate>& order) {
  Json preds = Json::array();
  for (const auto& p : order)
    preds.push_back(Json{{"predicate", p}, {"arity", s.arity(p)}, {"formula", formula_json(s.get(p))}});
  return Json{{"model", preds}};
}

Json trace_json(const SaturationState& st) {
  Json events = Json::array();
  for (const auto& e : st.trace) {
    Json j;
    switch (e.kind) {
      case TraceEvent::Kind::Input: j = {{"event", "input"}, {"clause", clause_json(*e.text)}}; break;
      case TraceEvent::Kind::Given: j = {{"event", "given"}, {"id", clause_name(e.clause)}}; break;
      case TraceEvent::Kind::Derived:
        j = {{"event", "derived"},
             {"from", {clause_name(e.left), clause_name(e.right)}},
             {"clause", clause_json(*e.text)}};
        break;
      case TraceEvent::Kind::Discarded:
        j = {{"event", "discarded"}, {"from", {clause_name(e.left), clause_name(e.right)}}};
        j["reason"] = e.by ? "subsumed" : "tautology";
        if (e.by) j["by"] = clause_name(e.by);
        break;
      case TraceEvent::Kind::Removed:
        j = {{"event", "removed"}, {"id", clause_name(e.clause)}};
        j["reason"] = e.by ? "subsumed" : "tautology";
        if (e.by) j["by"] = clause_name(e.by);
        break;
      case TraceEvent::Kind::Refuted: j = {{"event", "refuted"}, {"id", clause_name(e.clause)}}; break;
    }
    events.push_back(j);
  }
  std::vector<Clause> fin = st.worked_off;
  std::sort(fin.begin(), fin.end(), [](const Clause& a, const Clause& b) { return a.id < b.id; });
  Json clauses = Json::array();
  for (const auto& c : fin) clauses.push_back(clause_json(c));
  return Json{{"events", events},
              {"clauses", clauses},
              {"status", std::string(status_name(st.status))},
              {"derived", st.derived_count}};
}

Json eval_json(const EvalReport& r) {
  Json j{{"verdict", r.valid ? "valid" : "violated"}};
  if (r.witness) j["witness"] = assignment_json(*r.witness);
  return j;
}

Json explanation_json(const std::optional<Explanation>& e) {
  if (!e) return Json{{"explanation", nullptr}};
  Json args = Json::array();
  for (const auto& q : e->atom.args) args.push_back(to_string(q));
  return Json{{"explanation",
               {{"violated", clause_name(e->violated)},
                {"witness", assignment_json(e->witness)},
                {"atom", {{"predicate", e->atom.predicate}, {"args", args}}},
                {"producer", clause_name(e->producer)},
                {"resolvent", clause_json(e->resolvent)}}}};
}

Json least_check_json(const LeastCheck& r, const Window& w) {
  Json diffs = Json::array();
  for (const auto& d : r.differences)
    diffs.push_back({{"predicate", d.predicate}, {"tuple", d.tuple}, {"side", d.in_model ? "model" : "lfp"}});
  return Json{{"window", {w.lo, w.hi}},
              {"lfp_steps", r.lfp.steps},
              {"differences", diffs},
              {"verdict", r.agree ? "agree" : "disagree"}};
}

}  // namespace chc
