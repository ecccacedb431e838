#include <doctest.h>

#include <cmath>
#include <limits>

#include "capregion/errors.hpp"
#include "capregion/traffic.hpp"
#include "support.hpp"

using namespace capregion;

namespace {

UnicastTraffic permutation_traffic(const std::vector<NodeIndex>& p) {
  DenseMatrix<double> r(p.size(), p.size(), 0.0);
  for (NodeIndex u = 0; u < p.size(); ++u) r(u, p[u]) = 1.0;
  return UnicastTraffic(std::move(r));
}

}  // namespace

TEST_CASE("unicast traffic validation") {
  DenseMatrix<double> bad(3, 3, 0.0);
  bad(0, 1) = -0.1;
  CHECK_THROWS_AS(UnicastTraffic{bad}, InvalidInput);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(UnicastTraffic{bad}, InvalidInput);
  DenseMatrix<double> diag(3, 3, 0.0);
  diag(1, 1) = 5.0;
  CHECK(UnicastTraffic(diag).rate(1, 1) == 0.0);
  CHECK(UnicastTraffic(diag).is_zero());
}

TEST_CASE("entry-list construction matches dense construction") {
  auto rng = testing::test_rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 2, 12);
    DenseMatrix<double> dense(n, n, 0.0);
    std::vector<UnicastEntry> list;
    const std::size_t k = testing::uniform_size(rng, 0, 3 * n);
    for (std::size_t i = 0; i < k; ++i) {
      const NodeIndex u = testing::uniform_size(rng, 0, n - 1);
      const NodeIndex w = testing::uniform_size(rng, 0, n - 1);
      const double r = testing::uniform_real(rng, 0.0, 1.0);
      list.push_back({u, w, r});
      if (u != w) dense(u, w) += r;
    }
    const UnicastTraffic a(dense);
    const UnicastTraffic b(n, list);
    CHECK(testing::max_abs_diff(a.rates(), b.rates()) < 1e-12);
    for (NodeIndex u = 0; u < n; ++u)
      for (NodeIndex w = 0; w < n; ++w) CHECK(b.rate(u, w) == doctest::Approx(dense(u, w)));
    for (std::size_t i = 1; i < b.entries().size(); ++i) {
      const auto& p = b.entries()[i - 1];
      const auto& q = b.entries()[i];
      CHECK(std::pair(p.source, p.destination) < std::pair(q.source, q.destination));
    }
  }
  CHECK_THROWS_AS(UnicastTraffic(3, {{0, 3, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(UnicastTraffic(3, {{0, 1, -1.0}}), InvalidInput);
}

TEST_CASE("unicast loads") {
  const auto perm = permutation_traffic({1, 2, 0, 4, 3});
  const auto loads = unicast_loads(perm);
  for (double x : loads.source) CHECK(x == 1.0);
  for (double x : loads.destination) CHECK(x == 1.0);

  const auto common = common_destination_traffic(5, 2);
  const auto cl = unicast_loads(common);
  for (NodeIndex u = 0; u < 5; ++u) {
    CHECK(cl.source[u] == doctest::Approx(u == 2 ? 0.0 : 0.25));
    CHECK(cl.destination[u] == doctest::Approx(u == 2 ? 1.0 : 0.0));
  }
  const auto zero = unicast_loads(UnicastTraffic(4));
  for (double x : zero.source) CHECK(x == 0.0);
}

TEST_CASE("unicast membership") {
  const auto m = membership_uc(permutation_traffic({1, 0, 3, 2}));
  CHECK(m.member);
  CHECK(m.rho_hat_star == 1.0);

  const auto e3 = membership_uc(common_destination_traffic(7, 4));
  CHECK(e3.member);
  CHECK(e3.rho_hat_star == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(e3.binding_cut.has_value());
  CHECK(*e3.binding_cut == Cut{CutKind::Destination, 4});

  const auto z = membership_uc(UnicastTraffic(3));
  CHECK(z.member);
  CHECK(std::isinf(z.rho_hat_star));
  CHECK_FALSE(z.binding_cut.has_value());
}

TEST_CASE("binding cut ties go to the lowest node, source first") {
  // Node 0 sends 1 and node 1 receives 1: the source cut at node 0 wins.
  DenseMatrix<double> r(3, 3, 0.0);
  r(0, 1) = 1.0;
  const auto m = membership_uc(UnicastTraffic(r));
  REQUIRE(m.binding_cut.has_value());
  CHECK(*m.binding_cut == Cut{CutKind::Source, 0});
  // Only destination load ties at node 0 and source load at node 1.
  DenseMatrix<double> s(3, 3, 0.0);
  s(1, 0) = 1.0;
  const auto m2 = membership_uc(UnicastTraffic(s));
  CHECK(*m2.binding_cut == Cut{CutKind::Destination, 0});
}

TEST_CASE("multicast membership examples") {
  const MulticastTraffic single(3, {{0, {2}, 1.0}});
  CHECK(membership_mc(single).member);
  CHECK(membership_mc(single).rho_hat_star == 1.0);

  // Four nodes v1..v4 as indices 0..3.
  const MulticastTraffic ex(4, {{0, {2, 3}, 1.0}, {0, {2}, 2.0}, {1, {2, 3}, 3.0}});
  const auto loads = multicast_loads(ex);
  CHECK(loads.source[0] == 3.0);
  CHECK(loads.source[1] == 3.0);
  CHECK(loads.destination[2] == 6.0);
  CHECK(loads.destination[3] == 4.0);
  const auto m = membership_mc(ex);
  CHECK_FALSE(m.member);
  CHECK(m.rho_hat_star == doctest::Approx(1.0 / 6.0));
  CHECK(*m.binding_cut == Cut{CutKind::Destination, 2});

  const MulticastTraffic broadcast(5, {{1, {0, 2, 3, 4}, 1.0}});
  const auto bl = multicast_loads(broadcast);
  CHECK(bl.source[1] == 1.0);
  for (NodeIndex w : {0u, 2u, 3u, 4u}) CHECK(bl.destination[w] == 1.0);
  CHECK(membership_mc(broadcast).rho_hat_star == 1.0);
}

TEST_CASE("multicast canonicalization and validation") {
  const MulticastTraffic t(4, {{0, {3, 1, 3}, 0.5}, {0, {1, 3}, 0.25}});
  REQUIRE(t.entries().size() == 1);
  CHECK(t.entries()[0].destinations == std::vector<NodeIndex>{1, 3});
  CHECK(t.entries()[0].rate == 0.75);
  CHECK_THROWS_AS(MulticastTraffic(3, {{0, {0}, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(MulticastTraffic(3, {{0, {}, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(MulticastTraffic(3, {{0, {5}, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(MulticastTraffic(3, {{0, {1}, -1.0}}), InvalidInput);
}

TEST_CASE("rho_hat_star matches the brute-force load oracle") {
  auto rng = testing::test_rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 2, 30);
    const auto t = testing::random_unicast(rng, n, 0.4);
    CHECK(membership_uc(t).rho_hat_star == doctest::Approx(1.0 / testing::brute_max_load_uc(t)).epsilon(1e-13));
    const auto mt = testing::random_multicast(rng, std::max<std::size_t>(n, 3), 6, 1.0);
    CHECK(membership_mc(mt).rho_hat_star == doctest::Approx(1.0 / testing::brute_max_load_mc(mt)).epsilon(1e-13));
  }
}

TEST_CASE("rho_hat_star properties") {
  auto rng = testing::test_rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 2, 25);
    const auto t = testing::random_unicast(rng, n, 0.5);
    const double rho = membership_uc(t).rho_hat_star;
    const double c = testing::uniform_real(rng, 0.1, 10.0);
    CHECK(membership_uc(t.scaled(c)).rho_hat_star == doctest::Approx(rho / c).epsilon(1e-12));
    CHECK(membership_uc(t.scaled(rho)).max_load == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(membership_uc(t.scaled(rho)).member);
    // A unicast matrix is the singleton-set slice of the multicast region.
    CHECK(membership_mc(as_multicast(t)).rho_hat_star == rho);
    CHECK(membership(unicast_loads(t)).member == (rho >= 1.0 - 1e-12));
  }
}

TEST_CASE("random source-destination pairing") {
  const auto t = random_sd_pairing(50, 4);
  const auto loads = unicast_loads(t);
  for (double s : loads.source) CHECK(s == 1.0);
  for (NodeIndex u = 0; u < 50; ++u) CHECK(t.rate(u, u) == 0.0);
  const auto two = random_sd_pairing(2, 9);
  CHECK(two.rate(0, 1) == 1.0);
  CHECK(two.rate(1, 0) == 1.0);
  // Column sums average to one across seeds.
  double mean = 0.0;
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) mean += unicast_loads(random_sd_pairing(20, s)).destination[7];
  CHECK(mean / seeds == doctest::Approx(1.0).epsilon(0.1));
  CHECK(random_sd_pairing(30, 5).rates() == random_sd_pairing(30, 5).rates());
}

TEST_CASE("node relabeling") {
  auto rng = testing::test_rng(21);
  const auto t = testing::random_unicast(rng, 6, 0.6);
  std::vector<NodeIndex> id = {0, 1, 2, 3, 4, 5};
  CHECK(permute_traffic(t, id).rates() == t.rates());
  const auto pi = testing::random_permutation(rng, 6);
  const auto tp = permute_traffic(t, pi);
  for (NodeIndex u = 0; u < 6; ++u)
    for (NodeIndex w = 0; w < 6; ++w) CHECK(tp.rate(u, w) == t.rate(pi[u], pi[w]));
  CHECK(membership_uc(tp).rho_hat_star == membership_uc(t).rho_hat_star);

  // Multicast: the value at (u, W) is read from (pi(u), pi(W)).
  const MulticastTraffic mt(4, {{1, {2, 3}, 0.5}});
  const std::vector<NodeIndex> shift = {1, 2, 3, 0};
  const auto mp = permute_traffic(mt, shift);
  REQUIRE(mp.entries().size() == 1);
  CHECK(mp.entries()[0].source == 0);
  CHECK(mp.entries()[0].destinations == std::vector<NodeIndex>{1, 2});

  CHECK_THROWS_AS(permute_traffic(t, std::vector<NodeIndex>{0, 0, 1, 2, 3, 4}), InvalidInput);
  CHECK_THROWS_AS(permute_traffic(t, std::vector<NodeIndex>{0, 1, 2}), InvalidInput);
}
