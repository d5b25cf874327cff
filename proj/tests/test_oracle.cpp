#include <doctest.h>

#include "chcmodel/la.hpp"
#include "support.hpp"

using namespace chc;
using namespace chc::testing;

namespace {

const std::vector<std::string> kWindowFixtures{
    "ex3-lia.chc",    "lia-ex4.chc",  "lia-chain.chc", "lia-tc.chc",      "lia-diagonal.chc", "lia-even.chc",
    "lia-facts.chc",  "lia-goal.chc", "lia-order.chc", "lia-strict.chc",  "lia-nullary.chc",  "lia-counter.chc"};

std::set<Tuple> ints(std::initializer_list<long long> xs) {
  std::set<Tuple> out;
  for (auto x : xs) out.insert(Tuple{x});
  return out;
}

// One operator step computed by enumerating every clause variable.
FiniteInterpretation grid_step(const std::vector<Clause>& n, const FiniteInterpretation& in, const Window& w) {
  FiniteInterpretation out;
  for (const auto& c : n) {
    auto head = c.positive_index();
    if (!head) continue;
    auto vs = c.vars();
    std::vector<Var> vars(vs.begin(), vs.end());
    for (const auto& a : grid(vars, static_cast<long>(w.lo), static_cast<long>(w.hi))) {
      if (!eval_formula(c.constraint_formula(), a, Theory::LIA)) continue;
      auto tuple = [&](const Literal& l) {
        Tuple t;
        for (const auto& v : l.atom.args) t.push_back(a.at(v).get_num().get_si());
        return t;
      };
      bool body = true;
      for (const auto& l : c.literals)
        if (!l.positive && !in.contains(l.atom.predicate, tuple(l))) body = false;
      if (body) out.insert(c.literals[*head].atom.predicate, tuple(c.literals[*head]));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("tn_step agrees with full enumeration") {
  auto p = load("lia-ex4.chc");
  auto n = p.to_clauses();
  Window w{-2, 2};
  FiniteInterpretation empty;
  auto s1 = tn_step(n, empty, w, p.theory);
  CHECK(s1 == grid_step(n, empty, w));
  CHECK(s1.get("P") == ints({-2, -1, 1, 2}));
  CHECK(s1.get("Q") == ints({-2, -1, 0}));
  auto s2 = tn_step(n, s1, w, p.theory);
  CHECK(s2 == grid_step(n, s1, w));
  CHECK(s2.get("P") == ints({-2, -1, 0, 1, 2}));
  CHECK_THROWS(tn_step(load("ex3.chc").to_clauses(), empty, w, Theory::LRA));
}

TEST_CASE("tn_lfp on the integer punctured fixture") {
  auto p = load("lia-ex4.chc");
  auto r = tn_lfp(p.to_clauses(), *p.window, p.theory);
  CHECK(r.reached);
  CHECK(r.steps == 3);
  CHECK(r.interp.get("Q") == ints({-2, -1, 0}));
  CHECK(r.interp.get("P") == ints({-2, -1, 0, 1, 2}));
  CHECK(r.interp == surface_lfp(p, *p.window));
}

TEST_CASE("tn_lfp of the empty set") {
  auto r = tn_lfp({}, Window{0, 3}, Theory::LIA);
  CHECK(r.reached);
  CHECK(r.steps == 1);
  CHECK(r.interp.size() == 0);
}

TEST_CASE("restrict_model and check_least") {
  auto p = load("lia-ex4.chc");
  auto st = saturate(p.to_clauses(), p.precedence(), p.theory);
  REQUIRE(st.status == Status::Saturated);
  auto m = construct_model(st.worked_off, p.precedence(), p.signature(), p.theory);
  auto r = restrict_model(m.model, *p.window, p.theory);
  CHECK(r.get("Q") == ints({-2, -1, 0}));
  CHECK(r.get("P") == ints({-2, -1, 0, 1, 2}));
  auto lc = check_least(p.to_clauses(), m.model, *p.window, p.theory);
  CHECK(lc.agree);
  CHECK(lc.differences.empty());

  // The unsaturated model misses P(0).
  auto bad = construct_model(p.to_clauses(), p.precedence(), p.signature(), p.theory);
  auto lb = check_least(p.to_clauses(), bad.model, *p.window, p.theory);
  CHECK_FALSE(lb.agree);
  REQUIRE(lb.differences.size() == 1);
  CHECK(lb.differences[0].predicate == "P");
  CHECK(lb.differences[0].tuple == Tuple{0});
  CHECK_FALSE(lb.differences[0].in_model);
}

TEST_CASE("restrict_interp") {
  FiniteInterpretation f;
  f.insert("P", {-5});
  f.insert("P", {1});
  f.insert("R", {1, 9});
  auto r = restrict_interp(f, Window{0, 3});
  CHECK(r.get("P") == ints({1}));
  CHECK(r.get("R").empty());
  FiniteInterpretation g;
  g.insert("P", {1});
  CHECK(r == g);
}

TEST_CASE("property: window fixtures agree with the unabstracted oracle") {
  for (const auto& name : kWindowFixtures) {
    CAPTURE(name);
    auto p = load(name);
    REQUIRE(p.window);
    auto lfp = tn_lfp(p.to_clauses(), *p.window, p.theory);
    REQUIRE(lfp.reached);
    CHECK(lfp.interp == surface_lfp(p, *p.window));
    CHECK(lfp.interp == surface_lfp(abstract(p), *p.window));
    CHECK(is_window_closed(p.to_clauses(), *p.window, p.theory));
  }
}

TEST_CASE("property: the operator is monotone and the lfp is a fixpoint") {
  Rng rng(51);
  Window w{-1, 2};
  for (int i = 0; i < 40; ++i) {
    auto rs = random_clause_set(rng, Theory::LIA);
    bool small = true;
    for (const auto& c : rs.clauses) small = small && c.vars().size() <= 4;
    if (!small) continue;
    auto lfp = tn_lfp(rs.clauses, w, Theory::LIA);
    REQUIRE(lfp.reached);
    CHECK(tn_step(rs.clauses, lfp.interp, w, Theory::LIA) == lfp.interp);
    CHECK(grid_step(rs.clauses, lfp.interp, w) == lfp.interp);
    FiniteInterpretation half;
    for (const auto& [pred, set] : lfp.interp.sets())
      for (const auto& t : set)
        if (rng.chance(0.5)) half.insert(pred, t);
    auto a = tn_step(rs.clauses, half, w, Theory::LIA);
    auto b = tn_step(rs.clauses, lfp.interp, w, Theory::LIA);
    for (const auto& [pred, set] : a.sets())
      for (const auto& t : set) CHECK(b.contains(pred, t));
  }
}

TEST_CASE("property: a model of the clauses contains the window lfp") {
  Rng rng(52);
  Window w{-1, 2};
  int models = 0;
  for (int i = 0; i < 200 && models < 15; ++i) {
    auto rs = random_clause_set(rng, Theory::LIA);
    auto st = saturate(rs.clauses, rs.ord, Theory::LIA, Limits{40, 2.0});
    if (st.status != Status::Saturated) continue;
    auto m = construct_model(st.worked_off, rs.ord, rs.sig, Theory::LIA);
    bool is_model = true;
    for (const auto& c : rs.clauses) is_model = is_model && check_clause(c, m.model, Theory::LIA).valid;
    CHECK(is_model);
    auto r = restrict_model(m.model, w, Theory::LIA);
    // Pre-fixpoint: the operator adds nothing inside the window.
    auto t = tn_step(rs.clauses, r, w, Theory::LIA);
    for (const auto& [pred, set] : t.sets())
      for (const auto& tp : set) CHECK(r.contains(pred, tp));
    auto lfp = tn_lfp(rs.clauses, w, Theory::LIA);
    for (const auto& [pred, set] : lfp.interp.sets())
      for (const auto& tp : set) CHECK(r.contains(pred, tp));
    ++models;
  }
  CHECK(models >= 10);
}
