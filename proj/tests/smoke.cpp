#include "bbm/simulator.hpp"
int main(){ bbm::sim::SimParams p; p.observation_times={1.0}; auto s = bbm::sim::simulate(p); return s.size()==1?0:1; }
