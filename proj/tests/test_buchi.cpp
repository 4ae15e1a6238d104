#include <catch_amalgamated.hpp>

#include <queue>

#include "oracles.hpp"
#include "srrg/buchi.hpp"

using namespace srrg;

namespace {

// Hand-built automaton for F a: s0 loops on anything and moves to s1 on a; s1 accepting, loops on anything.
BuchiAutomaton eventually_a()
{
  BuchiAutomaton b({"a"});
  const auto s0 = b.add_state();
  const auto s1 = b.add_state(true);
  b.add_initial(s0);
  b.add_transition(s0, {}, s0);
  b.add_transition(s0, b.make_guard({"a"}, {}), s1);
  b.add_transition(s1, {}, s1);
  return b;
}

std::size_t reachable(const BuchiAutomaton& b)
{
  std::vector<char> seen(b.size(), 0);
  std::queue<BuchiState> q;
  for (auto s : b.initial()) seen[s] = 1, q.push(s);
  std::size_t n = 0;
  while (!q.empty()) {
    auto s = q.front();
    q.pop();
    ++n;
    for (const auto& t : b.transitions(s))
      if (!seen[t.target]) seen[t.target] = 1, q.push(t.target);
  }
  return n;
}

}  // namespace

TEST_CASE("guard satisfaction")
{
  BuchiAutomaton b({"a", "b"});
  const Guard a_not_b = b.make_guard({"a"}, {"b"});
  CHECK(guard_sat(a_not_b, b.encode({"a"})));
  CHECK_FALSE(guard_sat(a_not_b, b.encode({"a", "b"})));
  CHECK_FALSE(guard_sat(a_not_b, b.encode({})));
  CHECK(guard_sat(Guard{}, b.encode({"a", "b"})));
  CHECK(guard_sat(Guard{}, 0));
  CHECK(b.encode({"b", "zzz"}) == 2);
  CHECK_THROWS_AS(b.make_guard({"a"}, {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(b.make_guard({"c"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(BuchiAutomaton({"a", "a"}), std::invalid_argument);
}

TEST_CASE("successor sets of a hand-built automaton")
{
  const BuchiAutomaton b = eventually_a();
  const Label a = b.encode({"a"});
  CHECK(b.successors(0, a) == std::vector<BuchiState>{0, 1});
  CHECK(b.successors(0, 0) == std::vector<BuchiState>{0});
  CHECK(b.successors(1, 0) == std::vector<BuchiState>{1});
  CHECK_THROWS_AS(b.successors(7, a), std::out_of_range);

  BuchiAutomaton c({"a"});
  c.add_state();
  CHECK(c.successors(0, a).empty());
  CHECK_FALSE(c.is_nonblocking(0));
  CHECK(b.is_nonblocking(0));
  CHECK(b.is_nonblocking(1));
  CHECK_THROWS_AS(b.is_nonblocking(2), std::out_of_range);
}

TEST_CASE("a guard that is always false does not make a state nonblocking")
{
  BuchiAutomaton b({"a"});
  b.add_state();
  b.add_transition(0, Guard{1, 1}, 0);
  CHECK_FALSE(b.is_nonblocking(0));
  CHECK(b.successors(0, 1).empty());
}

TEST_CASE("lasso acceptance of the hand-built automaton")
{
  const BuchiAutomaton b = eventually_a();
  CHECK(accepts_lasso(b, {{}, {{"a"}}}));
  CHECK(accepts_lasso(b, {{{}, {"a"}}, {{}}}));
  CHECK_FALSE(accepts_lasso(b, {{}, {{}}}));
  CHECK_THROWS_AS(accepts_lasso(b, {{{"a"}}, {}}), std::invalid_argument);
}

TEST_CASE("translation of small formulas")
{
  const BuchiAutomaton fa = translate(parse("F a"));
  CHECK(accepts_lasso(fa, {{}, {{"a"}}}));
  CHECK_FALSE(accepts_lasso(fa, {{}, {{}}}));

  const BuchiAutomaton t = translate(parse("true"));
  CHECK(t.size() >= 1);
  CHECK(accepts_lasso(t, {{}, {{}}}));
  CHECK(accepts_lasso(t, {{{"x"}}, {{"y"}}}));

  const BuchiAutomaton gfa = translate(parse("G F a"));
  CHECK(accepts_lasso(gfa, {{}, {{"a"}, {}}}));
  CHECK_FALSE(accepts_lasso(gfa, {{{"a"}}, {{}}}));

  const BuchiAutomaton ga = translate(parse("G a"));
  CHECK_FALSE(accepts_lasso(ga, {{{"a"}}, {{}}}));
  CHECK(accepts_lasso(ga, {{{"a"}}, {{"a"}}}));

  const BuchiAutomaton f = translate(parse("false"));
  CHECK_FALSE(accepts_lasso(f, {{}, {{}}}));
}

TEST_CASE("translated automata have every state reachable")
{
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 10), 3);
    const BuchiAutomaton b = translate(f);
    CAPTURE(to_string(f));
    CHECK(reachable(b) == b.size());
  }
  for (const char* s : {oracle::phi1(), oracle::phi2(), oracle::phi3(), oracle::fig1_spec()}) {
    const BuchiAutomaton b = translate(parse(s));
    CAPTURE(s);
    CHECK(reachable(b) == b.size());
    for (BuchiState q = 0; q < b.size(); ++q) CHECK(b.is_nonblocking(q));
  }
}

TEST_CASE("translation agrees with lasso semantics on a random corpus")
{
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 10), 3);
    const BuchiAutomaton b = translate(f);
    for (int k = 0; k < 5; ++k) {
      const LassoWord w = oracle::random_lasso(rng, 3);
      CAPTURE(to_string(f));
      CHECK(accepts_lasso(b, w) == oracle::holds(f, w));
    }
  }
}

TEST_CASE("translation agrees with lasso semantics for the case-study formulas")
{
  std::mt19937_64 rng(4);
  const std::vector<std::string> names{"r1", "r2", "r3", "r4", "o1", "o2", "o3", "o4"};
  for (const char* s : {oracle::phi1(), oracle::phi2(), oracle::phi3()}) {
    const Formula f = parse(s);
    const BuchiAutomaton b = translate(f);
    auto letter = [&] {
      LabelSet l;
      // Mostly free space so that visits are not drowned by obstacles.
      const auto r = rng() % 10;
      if (r < names.size()) l.insert(names[r]);
      return l;
    };
    int accepted = 0;
    for (int i = 0; i < 400; ++i) {
      LassoWord w;
      for (auto n = rng() % 4; n > 0; --n) w.prefix.push_back(letter());
      for (auto n = 1 + rng() % 12; n > 0; --n) w.suffix.push_back(letter());
      const bool expect = oracle::holds(f, w);
      accepted += expect;
      CAPTURE(s);
      CHECK(accepts_lasso(b, w) == expect);
    }
    // Directed words: tour the goals in free space.
    LassoWord tour{{{}}, {{"r1"}, {}, {"r2"}, {}, {"r3"}, {}, {"r4"}, {}}};
    CHECK(accepts_lasso(b, tour) == oracle::holds(f, tour));
    CHECK(accepts_lasso(b, tour));
  }
}

TEST_CASE("automaton sizes for the case-study formulas")
{
  for (const char* s : {oracle::phi1(), oracle::phi2(), oracle::phi3(), oracle::fig1_spec()}) {
    const BuchiAutomaton b = translate(parse(s));
    INFO(s << ": " << b.size() << " states, " << b.num_transitions() << " transitions");
    CHECK(b.size() >= 1);
    CHECK(b.initial().size() >= 1);
  }
  const BuchiAutomaton fig = translate(parse(oracle::fig1_spec()));
  CHECK(fig.size() == 3);
  CHECK(fig.num_transitions() == 8);
}
