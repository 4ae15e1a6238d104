#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "srrg/tsys.hpp"

using namespace srrg;

namespace {

PlannerBounds unit_square_bounds(double c = 2.0) { return PlannerBounds::for_domain({{0, 0}, {1, 1}}, c, 0.5); }

}  // namespace

TEST_CASE("adding states")
{
  TransitionSystem t({0.1, 0.1}, {}, unit_square_bounds());
  CHECK(t.size() == 1);
  CHECK(t.initial() == 0);
  CHECK(t.insertion_size(0) == 0);

  CHECK(t.add_state({0.9, 0.9}, {"R"}) == 1);
  CHECK(t.insertion_size(1) == 1);
  CHECK(t.labels(1) == LabelSet{"R"});
  CHECK(t.find({0.9, 0.9}) == StateId{1});
  CHECK_FALSE(t.find({0.9, 0.8}).has_value());

  const double r = t.bounds().eta1(t.size());
  CHECK_FALSE(t.admissible({0.1 + r / 2, 0.1}));
  CHECK_THROWS_AS(t.add_state({0.1 + r / 2, 0.1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_state({0.9, 0.9}, {}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_state({0.5}, {}), std::invalid_argument);
  CHECK(t.size() == 2);
}

TEST_CASE("adding transitions")
{
  TransitionSystem t({0.1, 0.1}, {}, unit_square_bounds());
  t.add_state({0.9, 0.9}, {});
  CHECK(t.add_transition(0, 1));
  CHECK_FALSE(t.add_transition(0, 1));
  CHECK(t.add_transition(1, 0));
  CHECK(t.num_transitions() == 2);
  CHECK(t.has_transition(0, 1));
  CHECK(t.successors(0) == std::vector<StateId>{1});
  CHECK_THROWS_AS(t.add_transition(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(t.add_transition(0, 5), std::out_of_range);
  CHECK(t.num_transitions() == 2);
}

TEST_CASE("greedy growth keeps the sparsity radius and a bounded out-degree")
{
  // Grow T the way the planner does: admit a sample when nothing lies within
  // eta1, then connect it both ways to everything within eta2.
  for (std::size_t n : {2u, 3u}) {
    Box dom;
    for (std::size_t i = 0; i < n; ++i) dom.lo.push_back(0), dom.hi.push_back(1);
    TransitionSystem t(Point(n, 0.5), {}, PlannerBounds::for_domain(dom, 2.0, 0.5));
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<std::size_t> degree_at;
    std::vector<std::size_t> size_at;
    for (int it = 1; it <= 20000; ++it) {
      Point x(n);
      for (auto& v : x) v = u(rng);
      const auto [e1, e2] = t.bounds().eta(t.size());
      const auto nb = far(t.points(), x, e1, e2);
      if (!nb.empty()) {
        const StateId id = t.add_state(x, {});
        for (auto k : nb) t.add_transition(k, id), t.add_transition(id, k);
      }
      if (it % 5000 == 0) degree_at.push_back(t.max_out_degree()), size_at.push_back(t.size());
    }
    CAPTURE(n, size_at, degree_at);
    CHECK(t.min_pairwise_distance() >= t.bounds().eta1(t.size()));
    std::size_t too_close = 0;
    for (StateId a = 0; a < t.size(); ++a)
      for (StateId b = a + 1; b < t.size(); ++b)
        too_close += distance(t.point(a), t.point(b)) < t.bounds().eta1(std::max(t.insertion_size(a), t.insertion_size(b)));
    CHECK(too_close == 0);
    // |T| keeps growing while the out-degree stays put.
    CHECK(size_at.back() > size_at.front());
    CHECK(degree_at.back() <= degree_at.front() + degree_at.front() / 4 + 2);
  }
}
