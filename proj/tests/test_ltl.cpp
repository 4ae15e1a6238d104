#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "srrg/ltl.hpp"

using namespace srrg;

TEST_CASE("parse builds the expected trees")
{
  CHECK(parse("G (F r1)") == f_always(f_eventually(f_atom("r1"))));
  CHECK(parse("true") == f_true());
  CHECK(parse("!false") == f_not(f_false()));
  CHECK(parse("X a") == f_next(f_atom("a")));
  CHECK(parse("a R b") == f_release(f_atom("a"), f_atom("b")));

  const auto r = [](int i) { return f_atom("r" + std::to_string(i)); };
  const auto o = [](int i) { return f_atom("o" + std::to_string(i)); };
  const Formula visits =
      f_and(f_eventually(r(1)), f_and(f_eventually(r(2)), f_and(f_eventually(r(3)), f_eventually(r(4)))));
  const Formula avoid = f_not(f_or(f_or(f_or(o(1), o(2)), o(3)), o(4)));
  CHECK(parse("G( F r1 && ( F r2 && ( F r3 && ( F r4 ) ) ) && !(o1 || o2 || o3 || o4))") ==
        f_always(f_and(visits, avoid)));
}

TEST_CASE("operator precedence and associativity")
{
  const auto a = f_atom("a"), b = f_atom("b"), c = f_atom("c");
  CHECK(parse("a || b && c") == f_or(a, f_and(b, c)));
  CHECK(parse("a && b || c") == f_or(f_and(a, b), c));
  CHECK(parse("a U b U c") == f_until(a, f_until(b, c)));
  CHECK(parse("a R b U c") == f_release(a, f_until(b, c)));
  CHECK(parse("!a U b") == f_until(f_not(a), b));
  CHECK(parse("a && b U c") == f_and(a, f_until(b, c)));
  CHECK(parse("G F a && b") == f_and(f_always(f_eventually(a)), b));
  CHECK(parse("a && b && c") == f_and(f_and(a, b), c));
}

TEST_CASE("syntax errors report a position")
{
  CHECK_THROWS_AS(parse("r1 U"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("(a && b"), ParseError);
  CHECK_THROWS_AS(parse("a b"), ParseError);
  CHECK_THROWS_AS(parse("a & b"), ParseError);
  CHECK_THROWS_AS(parse("a ^ b"), ParseError);
  try {
    parse("a && ^");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("printing then parsing gives the same tree")
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 15), 4);
    CAPTURE(to_string(f));
    CHECK(parse(to_string(f)) == f);
  }
}

TEST_CASE("negation normal form")
{
  const auto a = f_atom("a"), b = f_atom("b");
  CHECK(to_nnf(f_not(f_always(a))) == f_until(f_true(), f_not(a)));
  CHECK(to_nnf(a) == a);
  CHECK(to_nnf(f_not(f_until(a, b))) == f_release(f_not(a), f_not(b)));
  CHECK(to_nnf(f_always(a)) == f_release(f_false(), a));
  CHECK(to_nnf(f_not(f_not(a))) == a);
  CHECK(to_nnf(f_not(f_next(a))) == f_next(f_not(a)));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 12), 3);
    const Formula g = to_nnf(f);
    CAPTURE(to_string(f), to_string(g));
    CHECK(is_nnf(g));
  }
}

TEST_CASE("NNF preserves meaning on 1000 random formula/lasso pairs")
{
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 12), 3);
    const LassoWord w = oracle::random_lasso(rng, 3);
    CAPTURE(to_string(f));
    CHECK(eval_lasso(f, w) == eval_lasso(to_nnf(f), w));
  }
}

TEST_CASE("eval_lasso on small words")
{
  const Formula gfa = parse("G F a");
  CHECK(eval_lasso(gfa, {{}, {{"a"}}}));
  CHECK_FALSE(eval_lasso(gfa, {{{"a"}}, {{}}}));
  CHECK(eval_lasso(parse("F G !a"), {{{"a"}}, {{}}}));
  CHECK(eval_lasso(parse("a U b"), {{{"a"}, {"a"}}, {{"b"}}}));
  CHECK_FALSE(eval_lasso(parse("a U b"), {{{"a"}, {}}, {{"b"}}}));
  CHECK(eval_lasso(parse("X X b"), {{{}, {}}, {{"b"}}}));
  CHECK(eval_lasso(parse("false R a"), {{}, {{"a"}}}));
  CHECK_THROWS_AS(eval_lasso(gfa, {{{"a"}}, {}}), std::invalid_argument);
}

TEST_CASE("eval_lasso on a surveillance run for the four-region formula")
{
  const Formula phi = parse(oracle::phi1());
  // Labels along prefix [0, 1, 4, 3] and a suffix touring r1..r4 in free space.
  LassoWord w;
  w.prefix = {{}, {}, {}, {}};
  w.suffix = {{}, {"r1"}, {}, {}, {"r2"}, {}, {"r3"}, {}, {}, {"r4"}, {}};
  CHECK(oracle::holds(phi, w));
  CHECK(eval_lasso(phi, w));

  LassoWord touches = w;
  touches.suffix[2] = {"o3"};
  CHECK_FALSE(oracle::holds(phi, touches));
  CHECK_FALSE(eval_lasso(phi, touches));

  LassoWord misses = w;
  misses.suffix[9] = {};
  CHECK_FALSE(eval_lasso(phi, misses));
}

TEST_CASE("eval_lasso agrees with the unrolling oracle")
{
  std::mt19937_64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 12), 3);
    const LassoWord w = oracle::random_lasso(rng, 3, 5, 5);
    CAPTURE(to_string(f));
    CHECK(eval_lasso(f, w) == oracle::holds(f, w));
  }
}

TEST_CASE("repeating the suffix does not change the verdict")
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Formula f = oracle::random_formula(rng, 1 + static_cast<int>(rng() % 12), 3);
    const LassoWord w = oracle::random_lasso(rng, 3);
    const bool base = eval_lasso(f, w);
    for (int k : {2, 3}) {
      LassoWord r = w;
      r.suffix.clear();
      for (int j = 0; j < k; ++j) r.suffix.insert(r.suffix.end(), w.suffix.begin(), w.suffix.end());
      CHECK(eval_lasso(f, r) == base);
    }
  }
}

TEST_CASE("atoms lists each proposition once")
{
  const auto names = atoms(parse("a U (b && !a) || G c"));
  CHECK(names == std::vector<std::string>{"a", "b", "c"});
}
