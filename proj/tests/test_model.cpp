#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fran/model.hpp"

using namespace fran;

namespace {
SystemParams params(int m, int k, const std::string& mu, const std::string& r) {
  return SystemParams(m, k, k, parse_rational(mu), parse_rational(r));
}
}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SystemParams(0, 1, 1, Rational(0), Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(SystemParams(1, 2, 1, Rational(0), Rational(0)), std::invalid_argument);  // N < K
  CHECK_THROWS_AS(SystemParams(1, 1, 1, Rational(2), Rational(0)), std::invalid_argument);  // mu > 1
  CHECK_THROWS_AS(SystemParams(1, 1, 1, Rational(0), Rational(-1)), std::invalid_argument);
  CHECK_NOTHROW(SystemParams(3, 2, 5, Rational(1, 2), Rational(3)));
}

TEST_CASE("delivery-time points add serially and max out pipelined") {
  const NdtPoint serial = NdtPoint::serial(Rational(1), Rational(5, 4));
  CHECK(serial.delta == Rational(9, 4));
  const NdtPoint pipe = NdtPoint::pipelined(Rational(8, 5), Rational(11, 10));
  CHECK(pipe.delta == Rational(8, 5));
  CHECK_THROWS_AS(NdtPoint::serial(Rational(-1), Rational(2)), std::logic_error);
  CHECK_THROWS_AS(NdtPoint::serial(Rational(0), Rational(1, 2)), std::logic_error);
}

TEST_CASE("fronthaul threshold") {
  CHECK(*thresholds(params(2, 2, "0", "0")).r_th == 1);
  CHECK(*thresholds(params(3, 3, "0", "0")).r_th == 1);
  CHECK(*thresholds(params(3, 2, "0", "0")).r_th == Rational(4, 3));
  // min(M, K) = 1 leaves the threshold unbounded: a single node (or user)
  // never benefits from the cooperative high-fronthaul composition.
  CHECK_FALSE(thresholds(params(1, 4, "0", "0")).r_th.has_value());
  CHECK_FALSE(thresholds(params(4, 1, "0", "0")).r_th.has_value());
}

TEST_CASE("cache thresholds for pipelined bands") {
  const Thresholds t = thresholds(params(2, 2, "0", "1/2"));
  CHECK(t.mu1 == Rational(1, 5));
  CHECK(t.mu2 == Rational(1, 2));
  // 2x2 closed forms (1-r)/(2+r) and 1-r.
  for (const char* r : {"1/4", "1/3", "3/4", "1", "3/2"}) {
    const Thresholds tr = thresholds(params(2, 2, "0", r));
    const Rational rr = parse_rational(r);
    CHECK(tr.mu1 == positive_part((1 - rr) / (2 + rr)));
    CHECK(tr.mu2 == positive_part(1 - rr));
  }
}

TEST_CASE("threshold ordering holds across random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> mk(1, 8), num(0, 40), den(1, 10);
  for (int i = 0; i < 3000; ++i) {
    SystemParams p(mk(rng), mk(rng), 8, Rational(num(rng) % 11, 10), Rational(num(rng), den(rng)));
    const Thresholds t = thresholds(p);
    CHECK(t.mu1 <= t.mu2);
    CHECK(t.mu2 <= 1);
    // mu1 vanishes exactly when mu2 does: both thresholds hit zero at
    // r = K/max(M,K) = min(M,K)/M.
    CHECK((t.mu1 == 0) == (t.mu2 == 0));
  }
}

TEST_CASE("serial regime classification") {
  const RegimeLabel low = classify_regime(params(2, 2, "1/4", "1/2"), Mode::Serial);
  CHECK(low.cache_regime == CacheRegime::LowCache);
  CHECK(low.fronthaul_regime == FronthaulRegime::LowFronthaul);

  const RegimeLabel high = classify_regime(params(2, 2, "1/2", "2"), Mode::Serial);
  CHECK(high.fronthaul_regime == FronthaulRegime::HighFronthaul);

  const RegimeLabel cache_only = classify_regime(params(2, 2, "3/4", "0"), Mode::Serial);
  CHECK(cache_only.fronthaul_regime == FronthaulRegime::CacheOnly);
  CHECK(cache_only.cache_regime == CacheRegime::HighCache);
}

TEST_CASE("boundary points classify onto the closed side") {
  CHECK(classify_regime(params(2, 2, "1/2", "1/2"), Mode::Serial).cache_regime == CacheRegime::HighCache);
  CHECK(classify_regime(params(2, 2, "1/4", "1"), Mode::Serial).fronthaul_regime ==
        FronthaulRegime::HighFronthaul);  // r = r_th
  // min(M,K) = 1: every positive rate is low-fronthaul.
  CHECK(classify_regime(params(1, 3, "1/2", "100"), Mode::Serial).fronthaul_regime ==
        FronthaulRegime::LowFronthaul);

  const RegimeLabel at_mu1 = classify_regime(params(2, 2, "1/5", "1/2"), Mode::Pipelined);
  CHECK(at_mu1.band == PipelinedBand::Coordination);
  const RegimeLabel at_mu2 = classify_regime(params(2, 2, "1/2", "1/2"), Mode::Pipelined);
  CHECK(at_mu2.band == PipelinedBand::Cooperation);
}

TEST_CASE("pipelined bands") {
  const RegimeLabel mid = classify_regime(params(2, 2, "3/10", "1/2"), Mode::Pipelined);
  CHECK(mid.band == PipelinedBand::FileSplit);
  CHECK(mid.fronthaul_regime == FronthaulRegime::LowFronthaul);

  // Large rate collapses both thresholds to zero: everything is cooperation.
  const RegimeLabel fast = classify_regime(params(2, 2, "0", "3/2"), Mode::Pipelined);
  CHECK(fast.band == PipelinedBand::Cooperation);
  CHECK(fast.fronthaul_regime == FronthaulRegime::HighFronthaul);
}

TEST_CASE("classification is total over the valid domain") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> mk(1, 6), mu_num(0, 12), r_num(0, 30);
  for (int i = 0; i < 2000; ++i) {
    SystemParams p(mk(rng), mk(rng), 6, Rational(mu_num(rng), 12), Rational(r_num(rng), 7));
    for (Mode mode : {Mode::Serial, Mode::Pipelined}) {
      const RegimeLabel label = classify_regime(p, mode);
      if (p.r == 0) CHECK(label.fronthaul_regime == FronthaulRegime::CacheOnly);
      if (mode == Mode::Pipelined && p.r > 0) CHECK(label.band != PipelinedBand::None);
    }
  }
}
