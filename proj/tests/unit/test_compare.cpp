#include <doctest.h>

#include <cmath>
#include <vector>

#include "phonfreq/compare.hpp"
#include "phonfreq/errors.hpp"

using namespace phonfreq;

namespace {

FittedModel model_at(ModelParams p, Count xmin) {
  FittedModel f;
  f.params = p;
  f.xmin = xmin;
  return f;
}

}  // namespace

TEST_SUITE("model_compare") {

TEST_CASE("identical models give no evidence") {
  const auto data = sample(LognormalParams{2.0, 1.0}, 1, 200, 5).values;
  const auto fit = fit_fixed_xmin(ModelKind::Lognormal, data, 1);
  const auto r = vuong_test(data, fit, fit);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_two_sided == 1.0);
  CHECK(r.favored == Favored::None);
  CHECK(r.n == data.size());
}

TEST_CASE("swapping the models negates the statistic exactly") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto data = sample(PowerLawParams{2.0}, 2, 300, seed).values;
    const auto a = fit_fixed_xmin(ModelKind::PowerLaw, data, 2);
    const auto b = fit_fixed_xmin(ModelKind::Exponential, data, 2);
    const auto ab = vuong_test(data, a, b);
    const auto ba = vuong_test(data, b, a);
    CHECK(ab.statistic == -ba.statistic);
    CHECK(ab.p_two_sided == ba.p_two_sided);
    CHECK(ab.log_ratio_sum == -ba.log_ratio_sum);
    CHECK((ab.favored == Favored::A) == (ba.favored == Favored::B));
  }
}

TEST_CASE("statistic against a direct computation") {
  const std::vector<Count> tail = {1, 1, 2, 3, 5, 8, 13};
  const auto a = model_at(PowerLawParams{2.0}, 1);
  const auto b = model_at(ExponentialParams{0.3}, 1);
  std::vector<double> l;
  for (Count x : tail) l.push_back(std::log(pmf(a.params, 1, x)) - std::log(pmf(b.params, 1, x)));
  double mean = 0.0;
  for (double v : l) mean += v / 7.0;
  double var = 0.0;
  for (double v : l) var += (v - mean) * (v - mean) / 7.0;
  const double z = 7.0 * mean / (std::sqrt(var) * std::sqrt(7.0));
  const auto r = vuong_test(tail, a, b);
  CHECK(r.statistic == doctest::Approx(z).epsilon(1e-12));
  CHECK(r.p_two_sided == doctest::Approx(std::erfc(std::abs(z) / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(r.favored == (z > 0 ? Favored::A : Favored::B));
}

TEST_CASE("duplicating the data scales the sum by 2 and the statistic by sqrt 2") {
  const auto data = sample(LognormalParams{1.5, 0.9}, 1, 150, 21).values;
  const auto a = fit_fixed_xmin(ModelKind::Lognormal, data, 1);
  const auto b = fit_fixed_xmin(ModelKind::Exponential, data, 1);
  auto twice = data;
  twice.insert(twice.end(), data.begin(), data.end());
  const auto r1 = vuong_test(data, a, b);
  const auto r2 = vuong_test(twice, a, b);
  CHECK(r2.log_ratio_sum == doctest::Approx(2.0 * r1.log_ratio_sum).epsilon(1e-12));
  CHECK(r2.statistic == doctest::Approx(std::sqrt(2.0) * r1.statistic).epsilon(1e-12));
}

TEST_CASE("lognormal data favour the lognormal over the power law") {
  const auto data = sample(LognormalParams{1.0, 1.0}, 1, 2000, 3).values;
  const auto pl = fit_fixed_xmin(ModelKind::PowerLaw, data, 1);
  const auto ln = fit_fixed_xmin(ModelKind::Lognormal, data, 1);
  const auto r = vuong_test(data, pl, ln);
  CHECK(r.favored == Favored::B);
  CHECK(r.p_two_sided < 0.05);
  CHECK(r.statistic == doctest::Approx(-18.0504057991).epsilon(1e-6));
}

TEST_CASE("protocol and degenerate errors") {
  const std::vector<Count> tail = {5, 6, 7};
  CHECK_THROWS_AS(vuong_test(tail, model_at(PowerLawParams{2.0}, 5), model_at(PowerLawParams{2.0}, 4)),
                  ProtocolError);
  const std::vector<Count> flat = {5, 5, 5, 5};
  CHECK_THROWS_AS(vuong_test(flat, model_at(PowerLawParams{2.0}, 5), model_at(ExponentialParams{0.4}, 5)),
                  DegenerateDataError);
  const auto same = vuong_test(flat, model_at(PowerLawParams{2.0}, 5), model_at(PowerLawParams{2.0}, 5));
  CHECK(same.favored == Favored::None);
  CHECK(same.p_two_sided == 1.0);
  CHECK_THROWS_AS(vuong_test(std::vector<Count>{5}, model_at(PowerLawParams{2.0}, 5), model_at(PowerLawParams{3.0}, 5)),
                  DomainError);
}

TEST_CASE("shared xmin with the same kind on both sides") {
  const auto data = sample(ExponentialParams{0.1}, 1, 60, 8).values;
  const auto [first, second] = pairwise_with_shared_xmin(data, ModelKind::Exponential, ModelKind::Exponential);
  CHECK(first.result.favored == Favored::None);
  CHECK(second.result.favored == Favored::None);
}

TEST_CASE("shared xmin comparison on geometric data") {
  const auto data = sample(ExponentialParams{0.35}, 1, 1000, 1).values;
  const auto [first, second] = pairwise_with_shared_xmin(data, ModelKind::PowerLaw, ModelKind::Exponential);
  const auto pl = fit_with_xmin_scan(ModelKind::PowerLaw, data);
  const auto ex = fit_with_xmin_scan(ModelKind::Exponential, data);
  CHECK(first.xmin_from == XminSource::A);
  CHECK(first.xmin == pl.xmin);
  CHECK(first.fit_a.xmin == pl.xmin);
  CHECK(first.fit_b.xmin == pl.xmin);
  CHECK(second.xmin_from == XminSource::B);
  CHECK(second.xmin == ex.xmin);
  CHECK(second.fit_a.xmin == ex.xmin);
  CHECK(second.result.favored == Favored::B);
  CHECK(second.result.statistic == doctest::Approx(-3.02913690427).epsilon(1e-6));
}

TEST_CASE("bonferroni examples") {
  CHECK(bonferroni_adjust(std::vector<double>{0.0001}, 166)[0] == doctest::Approx(0.0166).epsilon(1e-12));
  CHECK(bonferroni_adjust(std::vector<double>{0.01}, 166)[0] == 1.0);
  for (double p : {0.0, 0.03, 0.2, 1.0}) CHECK(bonferroni_adjust(std::vector<double>{p}, 1)[0] == p);
}

TEST_CASE("bonferroni errors and monotonicity") {
  CHECK_THROWS_AS(bonferroni_adjust(std::vector<double>{0.1}, 0), DomainError);
  CHECK_THROWS_AS(bonferroni_adjust(std::vector<double>{0.1, 0.2}, 1), DomainError);
  CHECK_THROWS_AS(bonferroni_adjust(std::vector<double>{1.5}, 3), DomainError);
  std::vector<double> ps;
  for (int i = 0; i <= 100; ++i) ps.push_back(i / 100.0);
  const auto adj = bonferroni_adjust(ps, 150);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    CHECK(adj[i] <= 1.0);
    CHECK(adj[i] >= ps[i]);
    if (i > 0) CHECK(adj[i] >= adj[i - 1]);
  }
}

}
