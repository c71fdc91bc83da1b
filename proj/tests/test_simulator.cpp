#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "bbm/observables.hpp"
#include "bbm/parallel.hpp"
#include "bbm/simulator.hpp"
#include "bbm/stats.hpp"
#include "oracle_helpers.hpp"

using namespace bbm;
using sim::SimParams;

namespace {

SimParams base_params(double alpha, double t, int types = 2) {
  SimParams p;
  p.alpha = alpha;
  p.t_max = t;
  p.num_types = types;
  p.observation_times = {t};
  return p;
}

}  // namespace

TEST_CASE("initial condition: one type-1 particle near the origin") {
  SimParams p = base_params(0.0, 1e-9, 1);
  const auto snaps = sim::simulate(p);
  REQUIRE(snaps.size() == 1);
  REQUIRE(snaps[0].particles.size() == 1);
  CHECK(snaps[0].particles[0].type == 1);
  CHECK(std::abs(snaps[0].particles[0].position) < 1e-3);
  CHECK(!snaps[0].particles[0].mutation_time.has_value());
  CHECK(snaps[0].counts_by_type[0] == 1);
}

TEST_CASE("type-1 population is Yule: mean e^t and geometric law") {
  const int replicas = 100000;
  std::vector<double> counts(replicas);
  SimParams p = base_params(0.0, 1.0, 1);
  parallel_for(replicas, default_threads(), [&](std::size_t r) {
    struct Count : sim::NullVisitor {
      long long n = 0;
      void on_observation(std::size_t, const sim::Particle&, const Lineage&) { ++n; }
    } vis;
    RngStream rng(11, r);
    sim::run_replica(p, rng, vis);
    counts[r] = static_cast<double>(vis.n);
  });
  const auto ms = stats::mean_stderr(counts);
  CHECK(std::abs(ms.mean - std::exp(1.0)) < 3.0 * ms.stderr_);

  // Chi-square goodness of fit against P(N = n) = e^-t (1-e^-t)^(n-1), t = 2.
  SimParams p2 = base_params(0.0, 2.0, 1);
  std::map<long long, long long> hist;
  std::vector<double> counts2(replicas);
  parallel_for(replicas, default_threads(), [&](std::size_t r) {
    struct Count : sim::NullVisitor {
      long long n = 0;
      void on_observation(std::size_t, const sim::Particle&, const Lineage&) { ++n; }
    } vis;
    RngStream rng(12, r);
    sim::run_replica(p2, rng, vis);
    counts2[r] = static_cast<double>(vis.n);
  });
  for (double c : counts2) hist[static_cast<long long>(c)]++;
  const double q = std::exp(-2.0);
  // Merge the tail so every expected cell count stays above 5.
  double chi2 = 0.0;
  int cells = 0;
  long long seen = 0;
  double tail_expected = replicas;
  for (long long n = 1; seen < replicas; ++n) {
    const double expected = replicas * q * std::pow(1.0 - q, n - 1.0);
    if (expected < 5.0 || tail_expected - expected < 5.0) break;
    const long long got = hist.count(n) ? hist[n] : 0;
    chi2 += (got - expected) * (got - expected) / expected;
    ++cells;
    seen += got;
    tail_expected -= expected;
  }
  const long long tail_got = replicas - seen;
  chi2 += (tail_got - tail_expected) * (tail_got - tail_expected) / tail_expected;
  ++cells;
  CHECK(stats::chi2_pvalue(chi2, cells - 1) > 0.01);
}

TEST_CASE("mutation intensity: founder counts match alpha int e^s ds") {
  // Oracle: alpha * int_0^t e^s ds, evaluated numerically.
  const double a1 = 0.5 * oracle::simpson([](double s) { return std::exp(s); }, 0.0, 1.0);
  CHECK(a1 == doctest::Approx(0.859140914).epsilon(1e-8));
  const double a2 = 0.5 * oracle::simpson([](double s) { return std::exp(s); }, 0.0, 2.0);
  CHECK(a2 == doctest::Approx(3.194528049).epsilon(1e-8));

  for (const auto& [alpha, t, expected] : {std::tuple{0.5, 1.0, a1}, std::tuple{0.5, 2.0, a2}}) {
    const int replicas = 20000;
    SimParams p = base_params(alpha, t);
    std::vector<double> founders(replicas);
    parallel_for(replicas, default_threads(), [&](std::size_t r) {
      RngStream rng(13, 1000000 + r);
      sim::AggregateSink sink(p);
      sim::run_replica(p, rng, sink);
      founders[r] = static_cast<double>(sink.agg.rows[0].founders);
    });
    const auto ms = stats::mean_stderr(founders);
    CHECK(std::abs(ms.mean - expected) < 3.0 * ms.stderr_);
  }
}

TEST_CASE("lineage founders: bookkeeping and deduplication") {
  SimParams p = base_params(0.0, 1.0);
  auto snaps = sim::simulate(p);
  CHECK(sim::lineage_founders(snaps[0]).empty());

  // A seed whose realization contains at least one mutation by t = 2.
  SimParams p2 = base_params(1.0, 2.0);
  p2.seed = 5;
  const auto snap = sim::simulate(p2)[0];
  const auto founders = sim::lineage_founders(snap);
  REQUIRE(!founders.empty());
  long long living_with_founder = 0;
  for (const auto& q : snap.particles)
    if (q.type == 2) ++living_with_founder;
  CHECK(living_with_founder >= static_cast<long long>(founders.size()));
  for (const auto& f : founders) {
    CHECK(f.mutation_time.has_value());
    CHECK(*f.mutation_time == f.birth_time);
    CHECK(*f.mutation_time <= snap.time);
    CHECK(f.founder_id == f.id);
  }
  // Founder count equals the aggregate sink's streaming count.
  RngStream rng(p2.seed, 0);
  sim::AggregateSink sink(p2);
  sim::run_replica(p2, rng, sink);
  CHECK(sink.agg.rows[0].founders == static_cast<long long>(founders.size()));
}

TEST_CASE("counts by type are consistent") {
  SimParams p = base_params(1.0, 3.0);
  p.seed = 17;
  const auto snap = sim::simulate(p)[0];
  long long total = 0;
  for (auto c : snap.counts_by_type) total += c;
  CHECK(total == static_cast<long long>(snap.particles.size()));
  CHECK(snap.counts_by_type.size() == 2);
  for (const auto& q : snap.particles) {
    CHECK(q.birth_time <= snap.time);
    CHECK((q.type >= 2) == q.mutation_time.has_value());
  }
}

TEST_CASE("increments between samplings are exactly Gaussian") {
  struct Increments : sim::NullVisitor {
    std::vector<double> zs;
    void extend(Lineage&, double t0, double x0, double t1, double x1, RngStream&) {
      if (t1 > t0) zs.push_back((x1 - x0) / std::sqrt(t1 - t0));
    }
  } vis;
  SimParams p = base_params(0.5, 4.0);
  p.observation_times = {1.0, 2.5, 4.0};
  RngStream rng(21, 0);
  for (int r = 0; r < 400; ++r) sim::run_replica(p, rng, vis);
  REQUIRE(vis.zs.size() > 20000);
  const double d = stats::ks_statistic(vis.zs, oracle::phi_cdf);
  CHECK(d < 1.628 / std::sqrt(static_cast<double>(vis.zs.size())));
}

TEST_CASE("identical parameters reproduce identical snapshots") {
  SimParams p = base_params(1.0, 3.0);
  p.observation_times = {1.0, 3.0};
  p.seed = 99;
  p.stream_index = 4;
  const auto a = sim::simulate(p);
  const auto b = sim::simulate(p);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].particles.size() == b[i].particles.size());
    for (std::size_t j = 0; j < a[i].particles.size(); ++j) {
      CHECK(a[i].particles[j].id == b[i].particles[j].id);
      CHECK(a[i].particles[j].position == b[i].particles[j].position);
      CHECK(a[i].particles[j].birth_time == b[i].particles[j].birth_time);
    }
  }
}

TEST_CASE("event cap raises a resource error") {
  SimParams p = base_params(0.0, 6.0, 1);
  p.event_cap = 10;
  CHECK_THROWS_AS(sim::simulate(p), ResourceLimitError);
}

TEST_CASE("barrier prunes and flags the snapshot") {
  SimParams p = base_params(1.0, 6.0);
  p.seed = 3;
  const auto full = sim::simulate(p)[0];
  SimParams pb = p;
  pb.barrier_offset = 2.0;
  const auto cut = sim::simulate(pb)[0];
  CHECK(cut.truncated);
  CHECK(cut.particles.size() < full.particles.size());
  CHECK_THROWS_AS([&] {
    SimParams bad = p;
    bad.barrier_offset = -1.0;
    bad.validate();
  }(), std::invalid_argument);
}

TEST_CASE("type-2 subtree conditioned on its founder is a standard BBM" *
          doctest::timeout(120)) {
  // Collect subtrees whose founder was born near s = 1, observed at t = 3,
  // and compare against a direct standard BBM run for time 2.
  const double t = 3.0, s_lo = 0.95, s_hi = 1.05;
  std::vector<double> sub_sizes, sub_max;
  int replica = 0;
  RngStream rng(31, 0);
  SimParams p = base_params(1.0, t);
  while (sub_sizes.size() < 1500 && replica < 60000) {
    RngStream r(31, replica++);
    struct Collect : sim::NullVisitor {
      double s_lo, s_hi;
      std::map<std::uint64_t, std::pair<long long, double>> by_founder;
      void on_observation(std::size_t, const sim::Particle& q, const Lineage&) {
        if (q.type != 2 || !q.mutation_time) return;
        if (*q.mutation_time < s_lo || *q.mutation_time > s_hi) return;
        auto& [n, m] = by_founder[*q.founder_id];
        ++n;
        m = n == 1 ? q.position - q.founder_position
                   : std::max(m, q.position - q.founder_position);
      }
    } vis;
    vis.s_lo = s_lo;
    vis.s_hi = s_hi;
    sim::run_replica(p, r, vis);
    for (const auto& [id, sm] : vis.by_founder) {
      sub_sizes.push_back(static_cast<double>(sm.first));
      sub_max.push_back(sm.second);
    }
  }
  REQUIRE(sub_sizes.size() >= 1500);

  std::vector<double> ref_sizes, ref_max;
  SimParams ref = base_params(0.0, 2.0, 1);
  for (int r = 0; r < 4000; ++r) {
    RngStream rr(32, r);
    struct Ref : sim::NullVisitor {
      long long n = 0;
      double m = -1e300;
      void on_observation(std::size_t, const sim::Particle& q, const Lineage&) {
        ++n;
        m = std::max(m, q.position);
      }
    } vis;
    sim::run_replica(ref, rr, vis);
    ref_sizes.push_back(static_cast<double>(vis.n));
    ref_max.push_back(vis.m);
  }

  // Subtree maxima: two-sample KS at the 1% level.
  const double d = stats::ks_two_sample(sub_max, ref_max);
  const double n1 = sub_sizes.size(), n2 = ref_sizes.size();
  CHECK(d < 1.628 * std::sqrt((n1 + n2) / (n1 * n2)));

  // Subtree sizes: binned two-sample chi-square at the 1% level.
  const auto binof = [](double v) { return std::min<long long>(static_cast<long long>(v), 15); };
  std::map<long long, std::pair<double, double>> bins;
  for (double v : sub_sizes) bins[binof(v)].first += 1.0;
  for (double v : ref_sizes) bins[binof(v)].second += 1.0;
  double chi2 = 0.0;
  int cells = 0;
  for (const auto& [bin, ab] : bins) {
    const auto [a, b] = ab;
    if (a + b < 10) continue;
    // Standard two-sample cell statistic.
    const double ea = (a + b) * n1 / (n1 + n2);
    const double eb = (a + b) * n2 / (n1 + n2);
    chi2 += (a - ea) * (a - ea) / ea + (b - eb) * (b - eb) / eb;
    ++cells;
  }
  CHECK(stats::chi2_pvalue(chi2, cells - 1) > 0.01);
}

TEST_CASE("barrier bias: loose versus looser kill line" * doctest::timeout(300)) {
  // P(max type-2 >= m_t) at t = 8, alpha = 1, L = 6 vs L = 10.
  const double t = 8.0;
  const double m_t = obs::median_type2(t);
  const int replicas = 10000;
  std::vector<double> hit6(replicas), hit10(replicas);
  for (const auto& [barrier, out] :
       {std::pair<double, std::vector<double>*>{6.0, &hit6}, {10.0, &hit10}}) {
    SimParams p = base_params(1.0, t);
    p.barrier_offset = barrier;
    auto* dest = out;
    parallel_for(replicas, default_threads(), [&, dest](std::size_t r) {
      RngStream rng(41, r);
      struct Max2 : sim::NullVisitor {
        double m = -1e300;
        void on_observation(std::size_t, const sim::Particle& q, const Lineage&) {
          if (q.type == 2) m = std::max(m, q.position);
        }
      } vis;
      sim::run_replica(p, rng, vis);
      (*dest)[r] = vis.m >= m_t ? 1.0 : 0.0;
    });
  }
  const auto a = stats::mean_stderr(hit6);
  const auto b = stats::mean_stderr(hit10);
  const double se = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
  CHECK(std::abs(a.mean - b.mean) < 3.0 * se);
}

TEST_CASE("snapshot CSV dump") {
  SimParams p = base_params(1.0, 1.5);
  p.seed = 55;
  const auto snap = sim::simulate(p)[0];
  std::stringstream ss;
  sim::write_snapshot_csv(ss, snap);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "id,type,position,birth_time,parent,mutation_time");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == snap.particles.size());
}
