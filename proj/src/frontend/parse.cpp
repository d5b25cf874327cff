#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "chcmodel/frontend.hpp"

namespace chc {

ParseError::ParseError(int line, int column, const std::string& msg)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }
  bool is(std::string_view s) const { return !is_list && atom == s; }
  std::string head() const { return is_list && !items.empty() && !items[0].is_list ? items[0].atom : ""; }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = text_[pos_];
    if (c == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (c == '(') {
      advance();
      e.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw ParseError(e.line, e.col, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      advance();
    }
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }
};

bool is_numeral(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.')) return false;
  return true;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> r{"and", "or", "not", "=>", "true", "false", "div", "distinct",
                                       "clause", "pred", "theory", "order", "window"};
  return r;
}

class Context {
 public:
  Theory theory = Theory::LRA;
  std::map<Predicate, std::size_t> arity;

  LinTerm term(const SExpr& e) const {
    if (!e.is_list) {
      if (is_numeral(e.atom)) return LinTerm::constant(Rational(Integer(e.atom.front() == '+' ? e.atom.substr(1) : e.atom)));
      if (is_identifier(e.atom) && !reserved().count(e.atom) && !arity.count(e.atom)) return LinTerm::variable(e.atom);
      e.fail("invalid term '" + e.atom + "'");
    }
    const std::string h = e.head();
    std::size_t n = e.items.size() - 1;
    if (h == "+") {
      if (n == 0) e.fail("'+' needs arguments");
      LinTerm t;
      for (std::size_t i = 1; i <= n; ++i) t = t + term(e.items[i]);
      return t;
    }
    if (h == "-") {
      if (n == 0) e.fail("'-' needs arguments");
      LinTerm t = term(e.items[1]);
      if (n == 1) return -t;
      for (std::size_t i = 2; i <= n; ++i) t = t - term(e.items[i]);
      return t;
    }
    if (h == "*") {
      if (n == 0) e.fail("'*' needs arguments");
      LinTerm t = LinTerm::constant(Rational(1));
      for (std::size_t i = 1; i <= n; ++i) {
        LinTerm f = term(e.items[i]);
        if (f.vars().empty())
          t = t * f.constant_term();
        else if (t.vars().empty())
          t = f * t.constant_term();
        else
          e.fail("nonlinear product");
      }
      return t;
    }
    if (h == "/") {
      if (n != 2) e.fail("'/' takes two arguments");
      LinTerm num = term(e.items[1]);
      LinTerm den = term(e.items[2]);
      if (!den.vars().empty()) e.fail("division by a non-constant");
      if (den.constant_term() == 0) e.fail("division by zero");
      LinTerm q = num * (Rational(1) / den.constant_term());
      if (theory == Theory::LIA && !integral(q)) e.fail("fractions are not allowed under LIA");
      return q;
    }
    e.fail("unknown term operator '" + h + "'");
  }

  static bool integral(const LinTerm& t) {
    if (!is_integer(t.constant_term())) return false;
    for (const auto& v : t.vars())
      if (!is_integer(t.coeff(v))) return false;
    return true;
  }

  Formula atom(const SExpr& e) const {
    if (e.is("true")) return Formula::top();
    if (e.is("false")) return Formula::bottom();
    if (!e.is_list || e.items.empty()) e.fail("expected an arithmetic atom");
    const std::string h = e.head();
    if (h == "not") {
      if (e.items.size() != 2 || e.items[1].head() != "div") e.fail("'not' applies to divisibility atoms only");
      Formula d = divides(e.items[1]);
      return negate(d);
    }
    if (h == "div") return divides(e);
    static const std::map<std::string, RelOp> ops{{"<=", RelOp::Le}, {"<", RelOp::Lt},       {">=", RelOp::Ge},
                                                   {">", RelOp::Gt},  {"=", RelOp::Eq},       {"distinct", RelOp::Ne},
                                                   {"!=", RelOp::Ne}};
    auto it = ops.find(h);
    if (it == ops.end()) e.fail("unknown relation '" + h + "'");
    if (e.items.size() != 3) e.fail("'" + h + "' takes two arguments");
    return make_atom(term(e.items[1]), it->second, term(e.items[2]));
  }

  Formula divides(const SExpr& e) const {
    if (e.items.size() != 3 || e.items[1].is_list || !is_numeral(e.items[1].atom)) e.fail("malformed 'div' atom");
    Integer m(e.items[1].atom);
    if (m <= 0) e.fail("divisibility modulus must be positive");
    return make_divides(m, term(e.items[2]));
  }

  Formula formula(const SExpr& e) const {
    const std::string h = e.head();
    if (h == "and" || h == "or") {
      std::vector<Formula> kids;
      for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(formula(e.items[i]));
      return h == "and" ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    return atom(e);
  }

  std::vector<Formula> constraint(const SExpr& e) const {
    std::vector<Formula> out;
    auto add = [&](const SExpr& a) {
      Formula f = atom(a);
      if (!f.is_true()) out.push_back(f);
    };
    if (e.head() == "and") {
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        if (e.items[i].head() == "and" || e.items[i].head() == "or")
          e.items[i].fail("constraints are conjunctions of atoms");
        add(e.items[i]);
      }
    } else if (e.head() == "or") {
      e.fail("constraints are conjunctions of atoms");
    } else {
      add(e);
    }
    return out;
  }

  SurfaceAtom fo_atom(const SExpr& e) const {
    std::string name = e.is_list ? e.head() : e.atom;
    if (name.empty()) e.fail("expected a predicate atom");
    auto it = arity.find(name);
    if (it == arity.end()) e.fail("undeclared predicate '" + name + "'");
    SurfaceAtom a{name, {}};
    if (e.is_list)
      for (std::size_t i = 1; i < e.items.size(); ++i) a.args.push_back(term(e.items[i]));
    if (a.args.size() != it->second)
      e.fail("predicate '" + name + "' expects " + std::to_string(it->second) + " arguments");
    return a;
  }

  SurfaceLiteral literal(const SExpr& e) const {
    if (e.head() == "not") {
      if (e.items.size() != 2) e.fail("'not' takes one argument");
      return {false, fo_atom(e.items[1])};
    }
    return {true, fo_atom(e)};
  }

  std::vector<SurfaceLiteral> fo_part(const SExpr& e) const {
    std::vector<SurfaceLiteral> lits;
    if (e.is("false")) return lits;
    const std::string h = e.head();
    if (h == "=>") {
      if (e.items.size() != 3) e.fail("'=>' takes a body and a head");
      const SExpr& body = e.items[1];
      if (body.head() == "and") {
        for (std::size_t i = 1; i < body.items.size(); ++i) lits.push_back({false, fo_atom(body.items[i])});
      } else if (!body.is("true")) {
        lits.push_back({false, fo_atom(body)});
      }
      if (!e.items[2].is("false")) lits.push_back({true, fo_atom(e.items[2])});
    } else if (h == "or") {
      for (std::size_t i = 1; i < e.items.size(); ++i) lits.push_back(literal(e.items[i]));
    } else {
      lits.push_back(literal(e));
    }
    std::stable_partition(lits.begin(), lits.end(), [](const SurfaceLiteral& l) { return !l.positive; });
    std::size_t positives = 0;
    for (const auto& l : lits) positives += l.positive;
    if (positives > 1) e.fail("non-Horn clause");
    return lits;
  }

  SurfaceClause clause(const SExpr& e) const {
    if (e.items.size() != 3) e.fail("'clause' takes a constraint and a first-order part");
    SurfaceClause c;
    c.constraint = constraint(e.items[1]);
    c.literals = fo_part(e.items[2]);
    c.line = e.line;
    return c;
  }
};

Context context_of(const Problem& p) {
  Context ctx;
  ctx.theory = p.theory;
  for (const auto& [name, n] : p.declarations) ctx.arity.emplace(name, n);
  return ctx;
}

long long window_bound(const SExpr& e) {
  if (e.is_list || !is_numeral(e.atom)) e.fail("window bounds must be integers");
  try {
    return std::stoll(e.atom);
  } catch (const std::exception&) {
    e.fail("window bound out of range");
  }
}

}  // namespace

Signature Problem::signature() const {
  Signature s;
  for (const auto& [p, n] : declarations) s.emplace(p, n);
  return s;
}

Precedence Problem::precedence() const {
  if (order) return Precedence(*order);
  std::vector<Predicate> ps;
  for (const auto& [p, n] : declarations) ps.push_back(p);
  return Precedence(ps);
}

bool Problem::is_abstracted() const {
  for (const auto& c : clauses)
    for (const auto& l : c.literals)
      for (const auto& t : l.atom.args)
        if (!(t.constant_term() == 0 && t.vars().size() == 1 && t.coeff(*t.vars().begin()) == 1)) return false;
  return true;
}

std::vector<Clause> Problem::to_clauses() const {
  std::vector<Clause> out;
  ClauseId id = 1;
  for (const auto& c : clauses) out.push_back(to_clause(abstract_clause(c), id++));
  return out;
}

Problem parse_problem(std::string_view text) {
  auto forms = Reader(text).read_all();
  Problem p;
  Context ctx;
  bool seen_theory = false;
  // Directives first so clause parsing knows the theory and signature.
  for (const auto& f : forms) {
    if (!f.is_list || f.items.empty()) f.fail("expected a directive");
    const std::string h = f.head();
    if (h == "theory") {
      if (seen_theory) f.fail("duplicate theory directive");
      if (f.items.size() != 2 || f.items[1].is_list) f.fail("malformed theory directive");
      try {
        p.theory = theory_from_name(f.items[1].atom);
      } catch (const Error& e) {
        f.items[1].fail(e.what());
      }
      seen_theory = true;
    } else if (h == "pred") {
      if (f.items.size() != 3 || f.items[1].is_list || f.items[2].is_list || !is_numeral(f.items[2].atom))
        f.fail("malformed pred directive");
      const std::string& name = f.items[1].atom;
      if (!is_identifier(name) || reserved().count(name)) f.items[1].fail("invalid predicate name '" + name + "'");
      if (ctx.arity.count(name)) f.items[1].fail("predicate '" + name + "' re-declared");
      long n = std::stol(f.items[2].atom);
      if (n < 0) f.items[2].fail("negative arity");
      ctx.arity.emplace(name, static_cast<std::size_t>(n));
      p.declarations.emplace_back(name, static_cast<std::size_t>(n));
    } else if (h == "order") {
      if (p.order) f.fail("duplicate order directive");
      p.order.emplace();
      for (std::size_t i = 1; i < f.items.size(); ++i) {
        if (f.items[i].is_list) f.items[i].fail("expected a predicate name");
        p.order->push_back(f.items[i].atom);
      }
    } else if (h == "window") {
      if (p.window) f.fail("duplicate window directive");
      if (f.items.size() != 3) f.fail("malformed window directive");
      Window w{window_bound(f.items[1]), window_bound(f.items[2])};
      if (w.lo > w.hi) f.fail("empty window");
      p.window = w;
    } else if (h != "clause") {
      f.fail("unknown directive '" + h + "'");
    }
  }
  if (p.order) {
    std::set<Predicate> listed;
    for (const auto& f : forms) {
      if (f.head() != "order") continue;
      for (std::size_t i = 1; i < f.items.size(); ++i) {
        const std::string& name = f.items[i].atom;
        if (!ctx.arity.count(name)) f.items[i].fail("undeclared predicate '" + name + "' in order");
        if (!listed.insert(name).second) f.items[i].fail("predicate '" + name + "' listed twice in order");
      }
      if (listed.size() != ctx.arity.size()) f.fail("order must list every declared predicate");
    }
  }
  ctx.theory = p.theory;
  for (const auto& f : forms)
    if (f.head() == "clause") p.clauses.push_back(ctx.clause(f));
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

SurfaceClause parse_clause(std::string_view text, const Problem& p) {
  auto forms = Reader(text).read_all();
  if (forms.size() != 1 || forms[0].head() != "clause") throw ParseError(1, 1, "expected a single clause form");
  return context_of(p).clause(forms[0]);
}

Formula parse_formula(std::string_view text, Theory th) {
  auto forms = Reader(text).read_all();
  if (forms.size() != 1) throw ParseError(1, 1, "expected a single formula");
  Context ctx;
  ctx.theory = th;
  return ctx.formula(forms[0]);
}

std::map<Predicate, Formula> parse_model(std::string_view text, Theory th) {
  std::map<Predicate, Formula> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == ';') continue;
    const std::string prefix = "model ";
    auto assign = line.find(" := ");
    auto slash = line.find('/');
    if (line.rfind(prefix, 0) != 0 || assign == std::string::npos || slash == std::string::npos || slash > assign)
      throw ParseError(n, 1, "expected 'model P/n := formula'");
    Predicate p = line.substr(prefix.size(), slash - prefix.size());
    out[p] = parse_formula(line.substr(assign + 4), th);
  }
  return out;
}

SurfaceClause abstract_clause(const SurfaceClause& c) {
  std::set<Var> used;
  for (const auto& f : c.constraint) used.insert(f.free_vars().begin(), f.free_vars().end());
  for (const auto& l : c.literals)
    for (const auto& t : l.atom.args) {
      auto vs = t.vars();
      used.insert(vs.begin(), vs.end());
    }
  static const char* base[] = {"x", "y", "z", "u", "v", "w"};
  std::size_t next = 0;
  auto fresh = [&] {
    while (true) {
      std::size_t round = next / 6;
      Var v = std::string(base[next % 6]) + (round ? std::to_string(round) : "");
      ++next;
      if (used.insert(v).second) return v;
    }
  };
  SurfaceClause out = c;
  for (auto& l : out.literals)
    for (auto& t : l.atom.args) {
      auto vs = t.vars();
      if (t.constant_term() == 0 && vs.size() == 1 && t.coeff(*vs.begin()) == 1) continue;
      Var v = fresh();
      Formula eq = make_atom(LinTerm::variable(v), RelOp::Eq, t);
      out.constraint.push_back(eq);
      t = LinTerm::variable(v);
    }
  return out;
}

Problem abstract(const Problem& p) {
  Problem out = p;
  for (auto& c : out.clauses) c = abstract_clause(c);
  return out;
}

Clause to_clause(const SurfaceClause& c, ClauseId id) {
  Clause out;
  out.id = id;
  for (const auto& f : c.constraint)
    if (!f.is_true()) out.constraint.push_back(f);
  for (const auto& l : c.literals) {
    Literal lit{l.positive, {l.atom.predicate, {}}};
    for (const auto& t : l.atom.args) {
      auto vs = t.vars();
      if (!(t.constant_term() == 0 && vs.size() == 1 && t.coeff(*vs.begin()) == 1))
        throw Error("clause is not abstracted");
      lit.atom.args.push_back(*vs.begin());
    }
    out.literals.push_back(std::move(lit));
  }
  return out;
}

}  // namespace chc
