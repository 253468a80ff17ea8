#include <doctest.h>

#include <cmath>
#include <vector>

#include "phonfreq/bootstrap.hpp"
#include "phonfreq/errors.hpp"
#include "phonfreq/ks.hpp"

using namespace phonfreq;

namespace {

// pmf(1) = pmf(2) = 1/2.
double coin_cdf(Count x) { return x >= 2 ? 1.0 : 0.5; }

}  // namespace

TEST_SUITE("gof_bootstrap") {

TEST_CASE("ks distance examples") {
  CHECK(ks_distance(std::vector<Count>{1, 2}, coin_cdf) == 0.0);
  CHECK(ks_distance(std::vector<Count>{1, 1, 2}, coin_cdf) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(ks_distance(std::vector<Count>{2, 1, 1}, coin_cdf) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(ks_distance(std::vector<Count>{}, coin_cdf), DomainError);
  CHECK_THROWS_AS(ks_distance(std::vector<Count>{1, 2}, ExponentialParams{0.5}, 2), DomainError);
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    const auto s = sample(LognormalParams{1.0, 2.0}, 1, 15, seed).values;
    const double d = ks_distance(s, PowerLawParams{1.5}, 1);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("p value is the exceeding fraction") {
  std::vector<double> ks(100);
  for (int i = 0; i < 100; ++i) ks[i] = i < 37 ? 0.5 + 0.001 * i : 0.1;
  CHECK(bootstrap_p_value(0.5, ks) == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(bootstrap_p_value(0.0, ks) == 1.0);
  CHECK(bootstrap_p_value(2.0, ks) == 0.0);
  CHECK_THROWS_AS(bootstrap_p_value(0.5, std::vector<double>{}), DomainError);
}

TEST_CASE("p values are multiples of 1/B and reproducible") {
  const auto data = sample(ExponentialParams{0.05}, 1, 30, 4).values;
  const auto fit = fit_with_xmin_scan(ModelKind::Exponential, data);
  const std::size_t B = 40;
  const auto a = bootstrap_p(data, fit, B, 77, {}, 1);
  const auto b = bootstrap_p(data, fit, B, 77, {}, 3);
  const auto c = bootstrap_p(data, fit, B, 77, {}, 0);
  CHECK(a.iterations == B);
  CHECK(a.refit_xmin);
  CHECK(a.seed == 77);
  CHECK(a.observed_ks == fit.ks);
  CHECK(a.p_value * B == doctest::Approx(std::round(a.p_value * B)).epsilon(1e-12));
  CHECK(a.p_value == static_cast<double>(a.exceeding) / B);
  for (const auto& other : {b, c}) {
    CHECK(other.p_value == a.p_value);
    CHECK(other.exceeding == a.exceeding);
    CHECK(other.failed_replicates == a.failed_replicates);
  }
  CHECK(bootstrap_p(data, fit, B, 78).p_value >= 0.0);
}

TEST_CASE("iterations must be positive") {
  const auto data = sample(ExponentialParams{0.05}, 1, 30, 4).values;
  const auto fit = fit_fixed_xmin(ModelKind::Exponential, data, 1);
  CHECK_THROWS_AS(bootstrap_p(data, fit, 0, 1), DomainError);
}

TEST_CASE("unscanned fits are refit at the original xmin") {
  const auto data = sample(PowerLawParams{2.2}, 3, 60, 12).values;
  const auto fit = fit_fixed_xmin(ModelKind::PowerLaw, data, 3);
  const auto r = bootstrap_p(data, fit, 30, 5);
  CHECK_FALSE(r.refit_xmin);
  CHECK(r.converged());
}

TEST_CASE("replicates that cannot be fitted count against plausibility") {
  // Every draw from this Poisson is 1, so each replicate tail is constant.
  const std::vector<Count> data = {1, 1, 1, 1, 2, 1, 1};
  FittedModel fit;
  fit.params = PoissonParams{1e-9};
  fit.xmin = 1;
  fit.n_tail = data.size();
  fit.ks = 0.2;
  const auto r = bootstrap_p(data, fit, 25, 3);
  CHECK(r.failed_replicates == 25);
  CHECK(r.exceeding == 25);
  CHECK(r.p_value == 1.0);
  CHECK_FALSE(r.converged());

  // Same accounting when the tail is always too small.
  const auto d2 = sample(ExponentialParams{0.1}, 1, 12, 9).values;
  const auto f2 = fit_fixed_xmin(ModelKind::Exponential, d2, 1);
  FitConfig strict;
  strict.min_tail = 13;
  const auto r2 = bootstrap_p(d2, f2, 10, 1, strict);
  CHECK(r2.failed_replicates == 10);
  CHECK(r2.p_value == 1.0);
}

TEST_CASE("semi-parametric replicate draws") {
  const std::vector<Count> below = {1, 2, 3};
  const Sampler sampler(DiscreteModel(ExponentialParams{0.5}, 10));
  Rng rng(4);
  const auto rep = draw_replicate(below, 20000, 5000, sampler, rng);
  REQUIRE(rep.size() == 20000);
  const auto from_model = std::count_if(rep.begin(), rep.end(), [](Count x) { return x >= 10; });
  CHECK(std::abs(static_cast<double>(from_model) / 20000.0 - 0.25) < 0.02);
  for (Count x : rep) CHECK((x >= 10 || x == 1 || x == 2 || x == 3));
  // With nothing below xmin every draw comes from the model.
  Rng rng2(4);
  const auto all_model = draw_replicate({}, 100, 40, sampler, rng2);
  CHECK(std::all_of(all_model.begin(), all_model.end(), [](Count x) { return x >= 10; }));
}

TEST_CASE("plausibility boundary rejects at the threshold") {
  BootstrapResult r;
  r.p_value = 0.1;
  CHECK_FALSE(r.plausible());
  r.p_value = 0.1001;
  CHECK(r.plausible());
  CHECK_FALSE(r.plausible(0.2));
}

TEST_CASE("null-model data are usually plausible") {
  int plausible = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = sample(PowerLawParams{2.5}, 1, 500, seed).values;
    const auto fit = fit_fixed_xmin(ModelKind::PowerLaw, data, 1);
    if (bootstrap_p(data, fit, 500, derive_seed(seed, 1)).plausible()) ++plausible;
  }
  CHECK(plausible >= 8);
}

}
