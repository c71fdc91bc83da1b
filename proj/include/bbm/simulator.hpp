#ifndef BBM_SIMULATOR_HPP
#define BBM_SIMULATOR_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "bbm/errors.hpp"
#include "bbm/rng.hpp"

namespace bbm::sim {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

/// Parameters of one multitype branching Brownian motion replica.
///
/// Every particle branches at rate 1 into two children of its own type;
/// particles of type j < num_types additionally emit one child of type j+1
/// at rate alpha (the parent survives). Positions are independent standard
/// Brownian motions sampled exactly at event and observation times.
struct SimParams {
  double alpha = 0.0;
  double t_max = 1.0;
  int num_types = 2;
  /// If set, particles are killed at event times when
  /// position < sqrt(2) * time - barrier_offset.
  std::optional<double> barrier_offset;
  std::vector<double> observation_times;  // sorted, in (0, t_max]
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
  std::uint64_t event_cap = 50'000'000;

  void validate() const;
};

struct Particle {
  std::uint64_t id = 0;
  int type = 1;
  double position = 0.0;
  double birth_time = 0.0;
  std::optional<std::uint64_t> parent;
  /// Time at which the lineage entered its current type (the paper's T(u)
  /// for type 2); present iff type >= 2.
  std::optional<double> mutation_time;
  /// Oldest same-type ancestor and its position at mutation_time.
  std::optional<std::uint64_t> founder_id;
  double founder_position = 0.0;
};

struct PopulationSnapshot {
  double time = 0.0;
  std::vector<Particle> particles;  // sorted by id
  bool truncated = false;           // a barrier kill happened at or before `time`
  std::vector<long long> counts_by_type;  // index j-1 = count of type j
};

/// One exact realization; one snapshot per observation time.
std::vector<PopulationSnapshot> simulate(const SimParams& params);

/// Deduplicated founder records (id, T(u), position at T(u)) of the living
/// type >= 2 particles of a snapshot, sorted by id.
std::vector<Particle> lineage_founders(const PopulationSnapshot& snapshot);

/// CSV columns: id,type,position,birth_time,parent,mutation_time.
void write_snapshot_csv(std::ostream& os, const PopulationSnapshot& snapshot);

// ---------------------------------------------------------------------------
// Generic replica driver.
//
// The visitor observes the exact dynamics without forcing a particular
// storage policy. It must provide:
//
//   struct Lineage;                          // copyable per-particle state
//   Lineage root_lineage();
//   void extend(Lineage&, double t0, double x0, double t1, double x1,
//               RngStream&);                 // every sampled path segment
//   void on_observation(std::size_t obs_idx, const Particle&, const Lineage&);
//   void on_founder(const Particle& child, const Lineage& parent_path);
//
// Children copy the parent's lineage state at the branch event, so the
// state always describes the ancestral path of the particle carrying it.
// Calls happen in a fixed depth-first order: a replica is deterministic
// given (seed, stream_index).
// ---------------------------------------------------------------------------

struct ReplicaOutcome {
  std::uint64_t events = 0;
  double first_kill_time = std::numeric_limits<double>::infinity();
  bool truncated() const { return std::isfinite(first_kill_time); }
};

template <class Visitor>
ReplicaOutcome run_replica(const SimParams& params, RngStream& rng, Visitor& vis) {
  params.validate();
  const double alpha = params.alpha;
  const int top_type = params.num_types;
  const auto& obs = params.observation_times;
  const double barrier = params.barrier_offset ? *params.barrier_offset
                                               : std::numeric_limits<double>::infinity();

  struct Pending {
    Particle meta;
    double t;  // current time of the particle's trajectory
    std::size_t next_obs;
    typename Visitor::Lineage lineage;
  };

  std::vector<Pending> stack;
  std::uint64_t next_id = 1;
  ReplicaOutcome out;

  stack.push_back({Particle{}, 0.0, 0, vis.root_lineage()});

  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();

    for (;;) {
      double rate = 1.0;
      const bool can_mutate = cur.meta.type < top_type && alpha > 0.0;
      if (can_mutate) rate += alpha;
      const double t_event = cur.t + rng.exponential(rate);

      // Observation crossings strictly before the next event.
      const double stop = std::min(t_event, params.t_max);
      while (cur.next_obs < obs.size() && obs[cur.next_obs] <= stop) {
        const double to = obs[cur.next_obs];
        const double dt = to - cur.t;
        const double x1 = dt > 0.0 ? cur.meta.position + rng.normal() * std::sqrt(dt)
                                   : cur.meta.position;
        vis.extend(cur.lineage, cur.t, cur.meta.position, to, x1, rng);
        cur.t = to;
        cur.meta.position = x1;
        vis.on_observation(cur.next_obs, cur.meta, cur.lineage);
        ++cur.next_obs;
      }
      if (t_event > params.t_max) break;  // survives past the horizon

      {
        const double dt = t_event - cur.t;
        const double x1 = dt > 0.0 ? cur.meta.position + rng.normal() * std::sqrt(dt)
                                   : cur.meta.position;
        vis.extend(cur.lineage, cur.t, cur.meta.position, t_event, x1, rng);
        cur.t = t_event;
        cur.meta.position = x1;
      }

      if (++out.events > params.event_cap)
        throw ResourceLimitError("simulate: event cap exceeded (" +
                                 std::to_string(params.event_cap) +
                                 "); horizon/barrier settings are infeasible");

      if (cur.meta.position < kSqrt2 * t_event - barrier) {
        out.first_kill_time = std::min(out.first_kill_time, t_event);
        break;  // killed: no descendants
      }

      const bool is_branch = !can_mutate || rng.uniform() * rate < 1.0;
      if (is_branch) {
        // Binary split: the current record becomes the first child, the
        // second child is deferred.
        Pending sib = cur;
        cur.meta.parent = cur.meta.id;
        cur.meta.id = next_id++;
        cur.meta.birth_time = t_event;
        sib.meta.parent = sib.meta.id;
        sib.meta.id = next_id++;
        sib.meta.birth_time = t_event;
        stack.push_back(std::move(sib));
      } else {
        // Mutation: one child of the next type; the parent continues.
        Pending child = cur;
        child.meta.parent = cur.meta.id;
        child.meta.id = next_id++;
        child.meta.birth_time = t_event;
        child.meta.type = cur.meta.type + 1;
        child.meta.mutation_time = t_event;
        child.meta.founder_id = child.meta.id;
        child.meta.founder_position = child.meta.position;
        vis.on_founder(child.meta, cur.lineage);
        stack.push_back(std::move(child));
      }
    }
  }
  return out;
}

/// Visitor that tracks nothing; useful as a base for sinks. The no-op
/// callbacks are templates so a derived visitor may swap in its own Lineage
/// type and override only what it needs.
struct NullVisitor {
  struct Lineage {};
  Lineage root_lineage() { return {}; }
  template <class L>
  void extend(L&, double, double, double, double, RngStream&) {}
  template <class L>
  void on_observation(std::size_t, const Particle&, const L&) {}
  template <class L>
  void on_founder(const Particle&, const L&) {}
};

/// Streaming per-observation aggregates used by the CLI: type-restricted
/// maxima, the derivative and additive martingale sums over type-1
/// particles, and the number of distinct founders with a living type-2
/// descendant. Founder subtrees are contiguous in visit order, so distinct
/// founders can be counted by watching for id changes.
struct ReplicaAggregates {
  struct ObsRow {
    double t = 0.0;
    double max_type1 = -std::numeric_limits<double>::infinity();
    double max_type2 = -std::numeric_limits<double>::infinity();
    long long count_type1 = 0;
    long long count_type2 = 0;
    double martingale_z = 0.0;
    double martingale_w = 0.0;
    long long founders = 0;
    std::uint64_t last_founder = std::numeric_limits<std::uint64_t>::max();
  };
  std::vector<ObsRow> rows;
};

struct AggregateSink : NullVisitor {
  explicit AggregateSink(const SimParams& params) {
    agg.rows.resize(params.observation_times.size());
    for (std::size_t i = 0; i < agg.rows.size(); ++i)
      agg.rows[i].t = params.observation_times[i];
  }

  void on_observation(std::size_t idx, const Particle& p, const Lineage&) {
    auto& row = agg.rows[idx];
    if (p.type == 1) {
      row.max_type1 = std::max(row.max_type1, p.position);
      ++row.count_type1;
      const double dep = kSqrt2 * row.t - p.position;
      const double w = std::exp(kSqrt2 * p.position - 2.0 * row.t);
      row.martingale_w += w;
      row.martingale_z += dep * w;
    } else if (p.type == 2) {
      row.max_type2 = std::max(row.max_type2, p.position);
      ++row.count_type2;
      if (p.founder_id && *p.founder_id != row.last_founder) {
        row.last_founder = *p.founder_id;
        ++row.founders;
      }
    }
  }

  ReplicaAggregates agg;
};

}  // namespace bbm::sim

#endif
