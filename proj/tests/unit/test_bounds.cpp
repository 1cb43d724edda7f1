#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "blockrec/bounds.hpp"
#include "blockrec/decoder.hpp"

using namespace blockrec;

TEST_CASE("p1 examples and range") {
  CHECK(p1(ChannelParams{0.0, 0.0}) == 0.0);
  CHECK(p1(ChannelParams{0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(p1(ChannelParams{0.5, 0.1}) == doctest::Approx(0.8));
  for (int ei = 0; ei <= 20; ++ei) {
    for (int pi = 0; pi <= 20; ++pi) {
      const ChannelParams ch{0.05 * ei, 0.025 * pi};
      const double value = p1(ch);
      CHECK(value >= ch.epsilon);
      CHECK(value <= 1.0);
      CHECK((value == ch.epsilon) == (ch.p == 0.0 || ch.epsilon == 1.0));
    }
  }
}

TEST_CASE("G examples") {
  CHECK(G(0.0, ClusterSizeHistogram::equal_clusters(3, 2)) == 0.0);
  CHECK(G(0.5, ClusterSizeHistogram::equal_clusters(1, 1)) == doctest::Approx(0.5));
  CHECK(G(0.5, ClusterSizeHistogram::equal_clusters(4, 2)) == doctest::Approx(0.68359375));
  CHECK(G(1.0, ClusterSizeHistogram::equal_clusters(4, 2)) == 1.0);
}

TEST_CASE("G is monotone in u and in counts") {
  ClusterSizeHistogram hist;
  hist.add(2, 3);
  hist.add(5, 1);
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double value = G(0.01 * i, hist);
    CHECK(value >= prev);
    prev = value;
  }
  for (int i = 1; i < 10; ++i) {
    ClusterSizeHistogram more = hist;
    more.add(5, 1);
    CHECK(G(0.1 * i, more) >= G(0.1 * i, hist));
  }
}

TEST_CASE("theorem1_bounds examples") {
  const auto four_pairs = ClusterSizeHistogram::equal_clusters(4, 2);
  const auto b = theorem1_bounds(four_pairs, ChannelParams{0.5, 0.1});
  CHECK(b.lower == doctest::Approx(0.68359375));
  CHECK(b.upper == doctest::Approx(1 - std::pow(1 - 0.64, 4)));
  CHECK(b.upper == doctest::Approx(0.98320).epsilon(1e-5));

  const auto collapsed = theorem1_bounds(four_pairs, ChannelParams{0.3, 0.0});
  CHECK(collapsed.lower == collapsed.upper);

  const auto erased = theorem1_bounds(four_pairs, ChannelParams{1.0, 0.2});
  CHECK(erased.lower == 1.0);
  CHECK(erased.upper == 1.0);
}

TEST_CASE("corollary1_bounds") {
  const auto four_pairs = ClusterSizeHistogram::equal_clusters(4, 2);
  CHECK(corollary1_bounds(four_pairs, ChannelParams{0.0, 0.1}).lower == 0.0);

  const auto b = corollary1_bounds(four_pairs, ChannelParams{0.5, 0.1});
  CHECK(b.lower == doctest::Approx(1 - std::exp(-1.0)));
  CHECK(b.lower == doctest::Approx(0.63212).epsilon(1e-5));
  CHECK_FALSE(b.upper_valid);

  const auto need = corollary1_size_requirement(ChannelParams{0.5, 0.1});
  REQUIRE(need.has_value());
  CHECK(*need == doctest::Approx(std::log(2.0) / std::log(1.25)));
  CHECK(*need == doctest::Approx(3.106).epsilon(1e-3));
  CHECK_FALSE(corollary1_size_requirement(ChannelParams{0.5, 0.5}).has_value());
  CHECK_FALSE(corollary1_bounds(four_pairs, ChannelParams{0.5, 0.5}).upper_valid);

  CHECK(corollary1_bounds(ClusterSizeHistogram::equal_clusters(4, 4), ChannelParams{0.5, 0.1})
            .upper_valid);
}

TEST_CASE("corollary1_simple_bounds") {
  CHECK(corollary1_simple_bounds(4, 16, 100, 100, ChannelParams{0.0, 0.1}).lower == 0.0);
  const auto b = corollary1_simple_bounds(4, 16, 100, 100, ChannelParams{0.5, 0.1});
  CHECK(b.lower == doctest::Approx(1 - std::exp(-1e4 * std::pow(2.0, -16) / 16)));
  CHECK(b.lower == doctest::Approx(0.009492).epsilon(1e-3));
}

TEST_CASE("corollary1_bounds sandwich the exact error when valid") {
  for (const std::uint64_t size : {4, 9, 16, 25}) {
    for (const std::uint64_t count : {1, 9, 64}) {
      for (int ei = 0; ei <= 8; ++ei) {
        for (int pi = 0; pi <= 8; ++pi) {
          const ChannelParams ch{0.1 * ei, 0.05 * pi};
          const auto hist = ClusterSizeHistogram::equal_clusters(count, size);
          const std::vector<std::uint64_t> sizes(count, size);
          const double exact = exact_pe_known_clusters(sizes, ch, TiePolicy::CountAsError);
          const auto cor = corollary1_bounds(hist, ch);
          CHECK(cor.lower <= exact + 1e-12);
          if (cor.upper_valid) {
            CHECK(exact <= cor.upper + 1e-12);
            CHECK(cor.lower <= cor.upper + 1e-12);
          }
          // The per-cluster-size form is at least as tight as the simple one.
          const std::uint64_t side = static_cast<std::uint64_t>(std::sqrt(double(count * size)));
          if (side * side == count * size) {
            const auto simple = corollary1_simple_bounds(size, size, side, side, ch);
            CHECK(cor.lower >= simple.lower - 1e-12);
            CHECK(cor.upper <= simple.upper + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("corollary2_thresholds") {
  const auto t = corollary2_thresholds(1000, 1000, ChannelParams{0.5, 0.1}, 0.5);
  REQUIRE(t.decodable_min_size.has_value());
  CHECK(*t.decodable_min_size == doctest::Approx(61.92).epsilon(1e-3));
  REQUIRE(t.undecodable_max_size.has_value());
  CHECK(*t.undecodable_max_size == doctest::Approx(9.966).epsilon(1e-3));

  const auto sharp = corollary2_thresholds(1000, 1000, ChannelParams{0.4, 0.0}, 1e-12);
  CHECK(*sharp.decodable_min_size == doctest::Approx(*sharp.undecodable_max_size));

  const auto undefined = corollary2_thresholds(10, 10, ChannelParams{0.0, 0.0}, 0.5);
  CHECK_FALSE(undefined.decodable_min_size.has_value());
  CHECK_FALSE(undefined.undecodable_max_size.has_value());

  CHECK_THROWS_AS(corollary2_thresholds(10, 10, ChannelParams{0.5, 0.1}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(corollary2_thresholds(10, 10, ChannelParams{0.5, 0.1}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("mu, delta and d0") {
  const auto clean = mu_delta_d0(ChannelParams{0.0, 0.0});
  CHECK(clean.mu == 0.0);
  CHECK(clean.delta == 1.0);
  CHECK(clean.d0 == doctest::Approx(1.0 / 3.0));

  const auto s = mu_delta_d0(ChannelParams{0.5, 0.1});
  CHECK(s.mu == doctest::Approx(0.045));
  CHECK(s.delta == doctest::Approx(0.16));
  CHECK(s.d0 == doctest::Approx(0.045 + 0.16 / 3));

  const auto flat = mu_delta_d0(ChannelParams{0.2, 0.5});
  CHECK(flat.delta == 0.0);
  CHECK(flat.d0 == flat.mu);

  // Cross-cluster mean minus same-cluster mean equals delta.
  const ChannelParams ch{0.3, 0.2};
  CHECK(cross_cluster_disagreement_mean(ch) - mu_delta_d0(ch).mu ==
        doctest::Approx(mu_delta_d0(ch).delta));
}

TEST_CASE("same-cluster Chernoff bound") {
  const ChannelParams ch{0.5, 0.1};
  CHECK(same_cluster_error_bound(1000, ch) ==
        doctest::Approx(std::exp(-0.0256 * 1000 / (9 * 0.045))).epsilon(1e-9));
  CHECK(same_cluster_error_bound(1000, ch) == doctest::Approx(3.5e-28).epsilon(0.02));
  CHECK(same_cluster_error_bound(9, ch) == doctest::Approx(0.566).epsilon(1e-3));
  CHECK(same_cluster_error_bound(100, ChannelParams{0.2, 0.5}) == 1.0);
  CHECK(same_cluster_error_bound(100, ChannelParams{0.2, 0.0}) == 0.0);
}

TEST_CASE("different-cluster Chernoff bound") {
  const ChannelParams ch{0.5, 0.1};
  CHECK(diff_cluster_error_bound(1200, 400, ch) == doctest::Approx(1.0));
  CHECK(diff_cluster_error_bound(1200, 399, ch) == 1.0);
  // Denominator 6 (1200 * 0.045 + 0.16 * 400) = 708.
  CHECK(diff_cluster_error_bound(1200, 600, ch) == doctest::Approx(std::exp(-1024.0 / 708.0)));
  CHECK(diff_cluster_error_bound(1200, 600, ch) == doctest::Approx(0.235433).epsilon(1e-5));
  // Explicit alpha.
  CHECK(diff_cluster_error_bound(1200, 600, ch, 600.0) == doctest::Approx(1.0));
}

TEST_CASE("t1 bound") {
  CHECK(t1_bound(54) == doctest::Approx(2 / std::exp(1.0)));
  CHECK(t1_bound(1) == 1.0);
  CHECK(t1_bound(100000) < 1e-300);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(4.0 / 9.0) == doctest::Approx(0.991076).epsilon(1e-6));
}

TEST_CASE("fixed-matrix cluster threshold") {
  for (const std::uint64_t n : {2, 10, 1000}) {
    CHECK(fixed_matrix_cluster_threshold(n, n, 1.0) ==
          doctest::Approx(double(n) * std::log(double(n))));
  }
  CHECK(fixed_matrix_cluster_threshold(1024, 1024, 1.0) == doctest::Approx(7097.8).epsilon(1e-4));
  CHECK(fixed_matrix_cluster_threshold(50, 70, 0.0) == 0.0);
  CHECK_THROWS_AS(fixed_matrix_cluster_threshold(1, 70, 1.0), std::invalid_argument);
}

TEST_CASE("histogram bookkeeping") {
  const auto rows = validate_partition({0, 0, 1});
  const auto cols = validate_partition({0, 1, 1, 1});
  const auto hist = ClusterSizeHistogram::from_partitions(rows, cols);
  CHECK(hist.total_entries() == 12);
  CHECK(hist.cluster_count() == 4);
  CHECK(hist.s_min() == 1);
  CHECK(hist.s_max() == 6);
  CHECK(hist.counts().at(3) == 1);
  CHECK(hist.counts().at(2) == 1);
  CHECK_THROWS_AS(ClusterSizeHistogram().add(0), std::invalid_argument);
}

TEST_CASE("bounds report is ordered") {
  for (const double eps : {0.1, 0.4, 0.7}) {
    for (const double p : {0.0, 0.05, 0.2}) {
      const auto report = make_bounds_report(ClusterSizeHistogram::equal_clusters(64, 16),
                                             ChannelParams{eps, p}, 32, 32, 0.5);
      CHECK(report.G_eps.value <= report.G_p1.value);
      if (report.cor1_lower.valid && report.cor1_upper.valid) {
        CHECK(report.cor1_lower.value <= report.cor1_upper.value);
      }
      CHECK(report.p1.valid);
    }
  }
}
