#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "phonfreq/bootstrap.hpp"
#include "phonfreq/errors.hpp"
#include "phonfreq/generators.hpp"

using namespace phonfreq;

TEST_SUITE("gen_process") {

TEST_CASE("urn edge cases") {
  const auto one = simulate_preferential_attachment({1, 500, 3, "u"});
  CHECK(one.entries == std::vector<FrequencyEntry>{{"s1", 500}});
  const auto flat = simulate_preferential_attachment({12, 12, 3, "u"});
  CHECK(flat.n_types() == 12);
  for (const auto& e : flat.entries) CHECK(e.count == 1);
  CHECK(flat.entries.front().segment == "s1");
  CHECK(flat.entries.back().segment == "s12");
  CHECK_THROWS_AS(simulate_preferential_attachment({0, 10, 1, "u"}), DomainError);
  CHECK_THROWS_AS(simulate_preferential_attachment({5, 4, 1, "u"}), DomainError);
}

TEST_CASE("urn conservation and determinism") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t = simulate_preferential_attachment({25, 10000, seed, "u"});
    CHECK(t.n_tokens() == 10000);
    CHECK(t.n_types() == 25);
    CHECK(t.language_id == "u");
    for (const auto& e : t.entries) CHECK(e.count >= 1);
    CHECK(simulate_preferential_attachment({25, 10000, seed, "u"}) == t);
  }
  CHECK(simulate_preferential_attachment({25, 10000, 1, "u"}) != simulate_preferential_attachment({25, 10000, 2, "u"}));
}

TEST_CASE("urn counts are heavy tailed enough for a power-law tail") {
  // Regression: with an xmin scan and 200 replicates the power law is
  // plausible in 19 of the 20 runs.
  int plausible = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto counts = simulate_preferential_attachment({25, 10000, seed, "u"}).counts();
    const auto fit = fit_with_xmin_scan(ModelKind::PowerLaw, counts);
    if (bootstrap_p(counts, fit, 200, derive_seed(seed, 1)).plausible()) ++plausible;
  }
  CHECK(plausible > 10);
  CHECK(plausible == 19);
}

TEST_CASE("birth-death with no deaths conserves tokens") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto t = simulate_birth_death({1.5, 0.0, 10, 777, seed, "b"});
    CHECK(t.n_types() == 10);
    CHECK(t.n_tokens() == 10 + 777);
  }
  const auto still = simulate_birth_death({2.0, 1.0, 7, 0, 1, "b"});
  CHECK(still.n_tokens() == 7);
  for (const auto& e : still.entries) CHECK(e.count == 1);
}

TEST_CASE("birth-death never drops a type below one token") {
  const auto t = simulate_birth_death({1e-6, 1.0, 9, 5000, 4, "b"});
  CHECK(t.n_types() == 9);
  for (const auto& e : t.entries) CHECK(e.count >= 1);
  CHECK(t.n_tokens() <= 9 + 2);
  const auto mixed = simulate_birth_death({1.0, 1.0, 25, 20000, 5, "b"});
  for (const auto& e : mixed.entries) CHECK(e.count >= 1);
  CHECK(simulate_birth_death({1.0, 1.0, 25, 20000, 5, "b"}) == mixed);
}

TEST_CASE("birth-death validation") {
  CHECK_THROWS_AS(simulate_birth_death({0.0, 1.0, 5, 10, 1, "b"}), DomainError);
  CHECK_THROWS_AS(simulate_birth_death({1.0, -0.1, 5, 10, 1, "b"}), DomainError);
  CHECK_THROWS_AS(simulate_birth_death({1.0, 1.0, 0, 10, 1, "b"}), DomainError);
}

TEST_CASE("birth-death counts are plausibly exponential in the tail") {
  // Regression: the scanned exponential is plausible in all 20 runs. Over the
  // full range (xmin = 1) it is rejected in all 20, since uniform births pile
  // the counts up around their mean.
  int scanned = 0;
  int full = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto counts = simulate_birth_death({2.0, 1.0, 25, 100000, seed, "b"}).counts();
    const auto a = fit_with_xmin_scan(ModelKind::Exponential, counts);
    const auto b = fit_fixed_xmin(ModelKind::Exponential, counts, 1);
    if (bootstrap_p(counts, a, 200, derive_seed(seed, 1)).plausible()) ++scanned;
    if (bootstrap_p(counts, b, 200, derive_seed(seed, 2)).plausible()) ++full;
  }
  CHECK(scanned > 10);
  CHECK(scanned == 20);
  CHECK(full == 0);
}

TEST_CASE("stick breaking basics") {
  const auto one = simulate_stick_breaking(1, 5, 1);
  REQUIRE(one.size() == 5);
  for (const auto& s : one) CHECK(s.rel_freqs == std::vector<double>{1.0});
  CHECK_THROWS_AS(simulate_stick_breaking(0, 5, 1), DomainError);
  CHECK_THROWS_AS(simulate_stick_breaking(3, 0, 1), DomainError);
  for (const auto& s : simulate_stick_breaking(17, 200, 9)) {
    REQUIRE(s.size() == 17);
    double total = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(s.rel_freqs[k] >= 0.0);
      if (k > 0) CHECK(s.rel_freqs[k] <= s.rel_freqs[k - 1]);
      total += s.rel_freqs[k];
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("smaller of two pieces averages one quarter") {
  const auto runs = simulate_stick_breaking(2, 1000000, 7);
  double smaller = 0.0;
  for (const auto& s : runs) smaller += s.rel_freqs[1];
  CHECK(std::abs(smaller / runs.size() - 0.25) < 1e-3);
}

TEST_CASE("stick breaking converges to the whitworth spectrum") {
  const std::size_t n = 5;
  const auto expected = expected_spectrum(n, WhitworthParams{});
  double prev_err = 1.0;
  for (std::size_t runs : {1000, 100000}) {
    const auto sims = simulate_stick_breaking(n, runs, 11);
    std::vector<double> mean(n, 0.0);
    for (const auto& s : sims)
      for (std::size_t k = 0; k < n; ++k) mean[k] += s.rel_freqs[k] / static_cast<double>(runs);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(mean[k] - expected.rel_freqs[k]));
    CHECK(err < 3.0 / std::sqrt(static_cast<double>(runs)));
    CHECK(err < prev_err);
    prev_err = err;
  }
}

}
