#include "bbm/simulator.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "bbm/io.hpp"

namespace bbm::sim {

void SimParams::validate() const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("SimParams: alpha must be >= 0");
  if (!(t_max > 0.0)) throw std::invalid_argument("SimParams: t_max must be > 0");
  if (num_types < 1) throw std::invalid_argument("SimParams: num_types must be >= 1");
  if (barrier_offset && !(*barrier_offset > 0.0))
    throw std::invalid_argument("SimParams: barrier_offset must be > 0");
  double prev = 0.0;
  for (double t : observation_times) {
    if (!(t > prev)) throw std::invalid_argument("SimParams: observation times must be sorted and > 0");
    if (t > t_max) throw std::invalid_argument("SimParams: observation times must be <= t_max");
    prev = t;
  }
  if (event_cap == 0) throw std::invalid_argument("SimParams: event_cap must be positive");
}

namespace {

struct SnapshotSink : NullVisitor {
  explicit SnapshotSink(std::size_t n_obs) : per_obs(n_obs) {}
  void on_observation(std::size_t idx, const Particle& p, const Lineage&) {
    per_obs[idx].push_back(p);
  }
  std::vector<std::vector<Particle>> per_obs;
};

}  // namespace

std::vector<PopulationSnapshot> simulate(const SimParams& params) {
  params.validate();
  RngStream rng(params.seed, params.stream_index);
  SnapshotSink sink(params.observation_times.size());
  const ReplicaOutcome outcome = run_replica(params, rng, sink);

  std::vector<PopulationSnapshot> snaps(params.observation_times.size());
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    auto& s = snaps[i];
    s.time = params.observation_times[i];
    s.particles = std::move(sink.per_obs[i]);
    std::sort(s.particles.begin(), s.particles.end(),
              [](const Particle& a, const Particle& b) { return a.id < b.id; });
    s.truncated = outcome.first_kill_time <= s.time;
    s.counts_by_type.assign(params.num_types, 0);
    for (const auto& p : s.particles) s.counts_by_type[p.type - 1]++;
  }
  return snaps;
}

std::vector<Particle> lineage_founders(const PopulationSnapshot& snapshot) {
  std::unordered_map<std::uint64_t, Particle> founders;
  for (const auto& p : snapshot.particles) {
    if (p.type < 2 || !p.founder_id) continue;
    auto [it, inserted] = founders.try_emplace(*p.founder_id);
    if (!inserted) continue;
    Particle& f = it->second;
    f.id = *p.founder_id;
    f.type = p.type;
    f.position = p.founder_position;
    f.birth_time = *p.mutation_time;
    f.mutation_time = p.mutation_time;
    f.founder_id = f.id;
    f.founder_position = p.founder_position;
  }
  std::vector<Particle> out;
  out.reserve(founders.size());
  for (auto& [id, f] : founders) out.push_back(f);
  std::sort(out.begin(), out.end(),
            [](const Particle& a, const Particle& b) { return a.id < b.id; });
  return out;
}

void write_snapshot_csv(std::ostream& os, const PopulationSnapshot& snapshot) {
  os << "id,type,position,birth_time,parent,mutation_time\n";
  for (const auto& p : snapshot.particles) {
    os << p.id << ',' << p.type << ',' << io::fmt(p.position) << ','
       << io::fmt(p.birth_time) << ',';
    if (p.parent) os << *p.parent;
    os << ',';
    if (p.mutation_time) os << io::fmt(*p.mutation_time);
    os << '\n';
  }
}

}  // namespace bbm::sim
