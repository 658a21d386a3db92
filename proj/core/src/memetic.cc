#include "tmo/memetic.h"

#include <chrono>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"
#include "tmo/greedy.h"
#include "tmo/tao.h"

namespace tmo {

namespace {

// Offset for the generational stream so it never coincides with the stream
// of population member 0 (seed ^ 0).
constexpr std::uint64_t kRunStreamOffset = 0x9E3779B97F4A7C15ULL;

std::size_t ArgMax(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace

void TmoConfig::Validate() const {
  if (population_size < 2) throw std::invalid_argument("population size must be >= 2");
  if (max_depth < 1) throw std::invalid_argument("max depth must be >= 1");
  if (!(cross_rate >= 0.0 && cross_rate <= 1.0)) {
    throw std::invalid_argument("cross rate must be in [0, 1]");
  }
  if (generations < 0) throw std::invalid_argument("generations must be >= 0");
  if (!(time_limit_seconds > 0.0)) throw std::invalid_argument("time limit must be positive");
  if (tao_max_passes < 1) throw std::invalid_argument("TAO passes must be >= 1");
}

double Population::mean_fitness() const {
  return std::accumulate(fitness.begin(), fitness.end(), 0.0) /
         static_cast<double>(fitness.size());
}

Population InitPopulation(const Dataset& train, std::size_t population_size,
                          int max_depth, std::uint64_t seed, int tao_max_passes) {
  if (population_size < 2) throw std::invalid_argument("population size must be >= 2");
  GreedyOptions options;
  options.max_depth = max_depth;
  options.subspace_size = DefaultSubspaceSize(train.feature_count());
  options.bootstrap = true;

  Population population;
  population.members.reserve(population_size);
  population.fitness.reserve(population_size);
  for (std::size_t i = 0; i < population_size; ++i) {
    Rng rng(seed ^ static_cast<std::uint64_t>(i));
    Tree tree = GrowGreedyTree(train, options, rng);
    tree = TaoOptimize(std::move(tree), train, tao_max_passes);
    population.fitness.push_back(EvaluateAccuracy(tree, train));
    population.members.push_back(std::move(tree));
  }
  population.best_index = ArgMax(population.fitness);
  return population;
}

std::size_t SamplePartner(std::size_t i, std::size_t k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("partner sampling needs k >= 2");
  const std::size_t j = rng.UniformIndex(k - 1);
  return j >= i ? j + 1 : j;
}

EncodedTree Crossover(const EncodedTree& current, const EncodedTree& partner,
                      double cross_rate, Rng& rng) {
  if (current.depth != partner.depth || current.slots.size() != partner.slots.size()) {
    throw std::invalid_argument("crossover of genomes with different depths");
  }
  EncodedTree child = current;
  for (std::size_t z = 0; z < child.slots.size(); ++z) {
    if (rng.UniformReal() < cross_rate) child.slots[z] = partner.slots[z];
  }
  return child;
}

void WriteGenerationRecords(const std::vector<GenerationRecord>& records,
                            std::ostream& out) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["generation"] = r.generation;
    j["best_fitness"] = r.best_fitness;
    j["mean_fitness"] = r.mean_fitness;
    j["elapsed_seconds"] = r.elapsed_seconds;
    out << j.dump() << '\n';
  }
}

std::vector<GenerationRecord> ReadGenerationRecords(std::istream& in) {
  std::vector<GenerationRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    records.push_back(GenerationRecord{j.at("generation").get<int>(),
                                       j.at("best_fitness").get<double>(),
                                       j.at("mean_fitness").get<double>(),
                                       j.at("elapsed_seconds").get<double>()});
  }
  return records;
}

TmoResult TmoRun(const Dataset& train, const TmoConfig& config, Population initial,
                 const TmoHooks& hooks) {
  config.Validate();
  if (initial.members.empty()) throw std::invalid_argument("empty initial population");
  if (initial.members.size() != initial.fitness.size()) {
    throw std::invalid_argument("population fitness cache out of sync");
  }
  if (initial.members.size() < 2) throw std::invalid_argument("population needs >= 2 members");
  for (const Tree& t : initial.members) {
    if (t.max_depth() != config.max_depth) {
      throw std::invalid_argument("population member depth differs from config");
    }
  }

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  TmoResult result{initial.best_tree(), initial.best_fitness(), std::move(initial), {}, false};
  Population& population = result.population;
  population.best_index = ArgMax(population.fitness);
  result.best_tree = population.best_tree();
  result.best_fitness = population.best_fitness();

  const std::size_t k = population.size();
  Rng rng(config.seed + kRunStreamOffset);

  auto record = [&](int g) {
    result.generations.push_back(GenerationRecord{g, result.best_fitness,
                                                  population.mean_fitness(), elapsed()});
    if (hooks.on_generation) hooks.on_generation(g, population);
  };
  record(0);

  for (int g = 1; g <= config.generations && !result.timed_out; ++g) {
    const Dataset sample = BootstrapSample(train, rng.NextU64());
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = SamplePartner(i, k, rng);
      const EncodedTree genome = Crossover(Encode(population.members[i]),
                                           Encode(population.members[j]),
                                           config.cross_rate, rng);
      Tree child = DecodeAndRepair(genome, train, rng);
      child = TaoOptimize(std::move(child), sample, config.tao_max_passes);
      const double fitness = EvaluateAccuracy(child, train);

      const bool replaced = fitness > population.fitness[i];
      if (hooks.on_candidate) hooks.on_candidate(i, child, fitness, replaced);
      if (fitness > result.best_fitness) {
        result.best_fitness = fitness;
        result.best_tree = child;
        population.best_index = i;
      }
      if (replaced) {
        population.members[i] = std::move(child);
        population.fitness[i] = fitness;
      }
      if (elapsed() > config.time_limit_seconds) {
        result.timed_out = true;
        break;
      }
    }
    record(g);
  }
  return result;
}

}  // namespace tmo
