#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "app/presets.hpp"
#include "korteweg/errors.hpp"
#include "korteweg/lp_besov.hpp"

using namespace korteweg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const BumpPair& bumps() {
  static const BumpPair b = build_bumps();
  return b;
}

RealField mode(const Grid& g, double k) {
  return sample(g, std::function<double(double)>([k](double x) { return std::cos(k * x); }));
}

}  // namespace

TEST_CASE("bump profiles", "[lp]") {
  const BumpPair& b = bumps();
  CHECK(b.chi(0.5) == 1.0);
  CHECK(b.chi(0.0) == 1.0);
  CHECK(b.chi(1.5) == 0.0);
  CHECK(b.phi(0.5) == 0.0);
  CHECK(b.phi(3.0) == 0.0);
  for (double r = 0.0; r < 3.0; r += 0.01) {
    CHECK(b.chi(r + 0.01) <= b.chi(r));
    CHECK(b.phi(r) >= 0.0);
  }
  CHECK_THROWS_AS(build_bumps(16), ConfigError);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double xi = std::exp2(u(rng));
    double s = 0.0;
    for (int l = -30; l <= 30; ++l) s += b.phi(std::ldexp(xi, -l));
    worst = std::max(worst, std::abs(s - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("decomposition of simple fields", "[lp]") {
  const Grid g(1, 256);
  const DyadicDecomposition c = decompose(RealField(g, 2.5), bumps());
  CHECK(c.mean == Catch::Approx(2.5));
  for (const auto& blk : c.blocks) CHECK(max_abs(blk) < 1e-14);

  const DyadicDecomposition d = decompose(mode(g, 8.0), bumps());
  int nonzero = 0;
  for (int l = d.l_min; l <= d.l_max; ++l) {
    const bool on = max_abs(d.block(l)) > 1e-12;
    nonzero += on ? 1 : 0;
    if (on) CHECK((l == 2 || l == 3));
  }
  CHECK(nonzero >= 1);
  CHECK(nonzero <= 2);

  std::mt19937_64 rng(4);
  const RealField f = app::random_field(g, 127, rng);
  const DyadicDecomposition r = decompose(f, bumps());
  RealField sum(g, r.mean);
  for (const auto& blk : r.blocks) sum += blk;
  CHECK(max_abs_diff(sum, f) < 1e-10);

  const auto range = block_range(g, bumps());
  CHECK(range.first == r.l_min);
  CHECK(range.second == r.l_max);
  CHECK(is_boundary_block(g, r.l_max));
  CHECK_FALSE(is_boundary_block(g, 3));
}

TEST_CASE("single block agrees with the decomposition", "[lp]") {
  const Grid g(2, 64);
  std::mt19937_64 rng(8);
  const RealField f = app::random_field(g, 30, rng);
  const DyadicDecomposition d = decompose(f, bumps());
  for (int l = d.l_min; l <= d.l_max; ++l) CHECK(max_abs_diff(block(f, bumps(), l), d.block(l)) < 1e-14);
}

TEST_CASE("Besov norms", "[lp]") {
  const Grid g(1, 256);
  const RealField f = mode(g, 12.0);  // only block 3 has weight at |k| = 12 (annulus [6, 21.33])
  const DyadicDecomposition d = decompose(f, bumps());
  const double A = lp_norm(d.block(3), 3.0);
  for (double r : {1.0, 2.0, kInf}) CHECK_THAT(besov_norm(f, {0.7, 3.0, r}, bumps()), WithinRel(std::pow(8.0, 0.7) * A, 1e-12));
  CHECK(besov_norm(RealField(g), {0.5, 2.0, 1.0}, bumps()) == 0.0);
  CHECK_THAT(lr_sum({3.0, 4.0}, 2.0), WithinRel(5.0, 1e-15));
  CHECK(lr_sum({3.0, 4.0}, kInf) == 4.0);
  CHECK_THROWS_AS(BesovSpec({0.0, 0.5, 1.0}).validate(), ConfigError);

  const auto norms = block_norms(d, {0.7, 3.0, 1.0});
  const std::string js = block_report_json(norms);
  CHECK(js.front() == '[');
  CHECK(js.find("\"weighted\"") != std::string::npos);
}

TEST_CASE("time-integrated norms", "[lp]") {
  const Grid g(1, 128);
  const RealField f = mode(g, 12.0);
  const double A = lp_norm(decompose(f, bumps()).block(3), 2.0);
  std::vector<double> times;
  std::vector<RealField> series;
  for (int i = 0; i <= 20; ++i) {
    times.push_back(0.05 * i);
    series.push_back(f);
  }
  const BesovSpec spec{0.5, 2.0, 1.0};
  CHECK_THAT(tilde_norm(series, times, 2.0, spec, bumps()), WithinRel(std::sqrt(1.0) * std::pow(8.0, 0.5) * A, 1e-12));
  CHECK_THAT(tilde_norm(series, times, 1.0, spec, bumps()), WithinRel(std::pow(8.0, 0.5) * A, 1e-12));
  CHECK_THAT(tilde_norm(series, times, kInf, spec, bumps()), WithinRel(std::pow(8.0, 0.5) * A, 1e-12));

  // Minkowski: for r >= sigma the time integral may be taken last.
  std::mt19937_64 rng(12);
  std::vector<RealField> rs;
  for (std::size_t i = 0; i < times.size(); ++i) rs.push_back(app::random_field(g, 50, rng));
  for (double sigma : {1.0, 2.0}) {
    const BesovSpec s{0.3, 2.0, 2.0};
    std::vector<double> per_time;
    for (const auto& h : rs) per_time.push_back(besov_norm(h, s, bumps()));
    double outer = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
      outer += 0.5 * (std::pow(per_time[i], sigma) + std::pow(per_time[i - 1], sigma)) * (times[i] - times[i - 1]);
    outer = std::pow(outer, 1.0 / sigma);
    CHECK(tilde_norm(rs, times, sigma, s, bumps()) <= outer * (1.0 + 1e-12));
  }
}

TEST_CASE("paraproduct decomposition", "[lp]") {
  const Grid g(2, 64);
  std::mt19937_64 rng(21);
  const RealField u = dealias(app::random_field(g, 20, rng));
  const RealField v = dealias(app::random_field(g, 20, rng));
  const BonyParts parts = bony_decompose(u, v, bumps());
  RealField sum = parts.Tuv + parts.Tvu + parts.R;
  sum += parts.mean_product;
  CHECK(max_abs_diff(sum, u * v) < 1e-12);

  const Grid g1(1, 128);
  const RealField c(g1, 2.0);
  const RealField w = mode(g1, 20.0);
  const BonyParts cp = bony_decompose(c, w, bumps());
  CHECK(max_abs_diff(cp.Tuv, 2.0 * w) < 1e-12);
  CHECK(max_abs(cp.R) < 1e-12);
}

TEST_CASE("heat semigroup on blocks", "[lp]") {
  const Grid g(1, 128);
  const RealField m = mode(g, 6.0);
  const HeatBlockReport single = heat_block_decay_check(m, 0.2, {0.0, 0.3}, bumps());
  CHECK(single.all_ok);
  for (const auto& e : single.entries) CHECK_THAT(e.ratio, WithinAbs(std::exp(-0.2 * 36.0 * e.t), 1e-12));
  CHECK_THROWS_AS(heat_block_decay_check(m, 0.0, {0.1}, bumps()), ConfigError);
  CHECK_THROWS_AS(heat_block_decay_check(m, 0.1, {0.2, 0.1}, bumps()), ConfigError);
}

TEST_CASE("Bernstein, embedding and dilation", "[lp]") {
  const Grid g(2, 64);
  std::mt19937_64 rng(2);
  const RealField f = app::random_field(g, 31, rng);
  const DyadicDecomposition d = decompose(f, bumps());
  for (int l = d.l_min; l <= d.l_max; ++l) CHECK(bernstein_ratio(f, bumps(), l) <= 8.0 / 3.0);

  const Grid g1(1, 128);
  std::vector<RealField> fields;
  for (int i = 0; i < 10; ++i) fields.push_back(app::random_field(g1, 40, rng));
  const double C = embedding_constant(fields, 2.0, kInf, bumps());
  CHECK(C > 0.0);
  for (const auto& h : fields)
    CHECK(besov_norm(h, {0.0, kInf, 1.0}, bumps()) <= C * besov_norm(h, {0.5, 2.0, 1.0}, bumps()) * (1.0 + 1e-12));

  const RealField h = mode(g1, 3.0);
  const RealField d2 = dilate_by_two(h);
  CHECK(d2.grid().length() == Catch::Approx(kTwoPi / 2));
  CHECK(max_abs_diff(RealField(g1, std::vector<double>(d2.values().begin(), d2.values().end())), h) == 0.0);
}
