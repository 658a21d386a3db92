#ifndef TMO_MEMETIC_H_
#define TMO_MEMETIC_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "tmo/dataset.h"
#include "tmo/encoding.h"
#include "tmo/random.h"
#include "tmo/tree.h"

namespace tmo {

struct TmoConfig {
  std::size_t population_size = 100;
  int max_depth = 2;
  double cross_rate = 0.75;
  int generations = 5;
  double time_limit_seconds = 600.0;
  std::uint64_t seed = 0;
  int tao_max_passes = 10;

  // Throws std::invalid_argument on k < 2, d < 1, CR outside [0,1],
  // negative generations or a non-positive time limit or pass budget.
  void Validate() const;
};

// k trees with their full-train accuracies, kept in sync.
struct Population {
  std::vector<Tree> members;
  std::vector<double> fitness;
  std::size_t best_index = 0;

  std::size_t size() const { return members.size(); }
  double best_fitness() const { return fitness[best_index]; }
  const Tree& best_tree() const { return members[best_index]; }
  double mean_fitness() const;
};

// Random-forest style initial population: member i is grown with its own
// stream Rng(seed ^ i), on a bootstrap sample with ceil(sqrt(p)) features per
// node, then TAO-optimized on the full training set.
Population InitPopulation(const Dataset& train, std::size_t population_size,
                          int max_depth, std::uint64_t seed, int tao_max_passes = 10);

// Uniform over {0..k-1} \ {i}. Throws std::invalid_argument when k < 2.
std::size_t SamplePartner(std::size_t i, std::size_t k, Rng& rng);

// Slot z is taken from `partner` when a fresh U[0,1) draw is < cross_rate,
// otherwise from `current`. One draw per slot, in slot order.
EncodedTree Crossover(const EncodedTree& current, const EncodedTree& partner,
                      double cross_rate, Rng& rng);

struct GenerationRecord {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double elapsed_seconds = 0.0;  // since the start of the run
};

// One JSON object per line: generation, best_fitness, mean_fitness,
// elapsed_seconds. Generation 0 describes the initial population.
void WriteGenerationRecords(const std::vector<GenerationRecord>& records,
                            std::ostream& out);
std::vector<GenerationRecord> ReadGenerationRecords(std::istream& in);

struct TmoResult {
  Tree best_tree;
  double best_fitness = 0.0;
  Population population;
  std::vector<GenerationRecord> generations;
  bool timed_out = false;
};

struct TmoHooks {
  // Called with the initial population (generation 0) and after each
  // completed generation.
  std::function<void(int generation, const Population&)> on_generation;
  // Called once per candidate after local optimization and scoring.
  std::function<void(std::size_t member, const Tree& candidate, double fitness,
                     bool replaced)>
      on_candidate;
};

// The generational loop. Per generation one bootstrap sample of `train` is
// drawn; every member i in order gets a partner j != i, their genomes are
// crossed over, the child is repaired against `train`, TAO-optimized on the
// bootstrap sample and scored on the full `train`. The child replaces member
// i, and the best tree, only on strictly higher fitness. The time limit is
// checked between members.
TmoResult TmoRun(const Dataset& train, const TmoConfig& config, Population initial,
                 const TmoHooks& hooks = {});

}  // namespace tmo

#endif  // TMO_MEMETIC_H_
