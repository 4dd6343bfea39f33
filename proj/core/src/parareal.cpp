#include "stpa/parareal.hpp"

#include <optional>
#include <string>

#include "stpa/assembly.hpp"
#include "stpa/error.hpp"
#include "stpa/parallel.hpp"

namespace stpa {
namespace {

Trajectory run_with_context(const Propagator& solver, const char* which, int k, int p,
                            const NodalField& initial) {
  try {
    return solver(p, initial);
  } catch (const Error& e) {
    throw Error(e.category(), std::string(which) + " solve failed (iteration " +
                                  std::to_string(k) + ", subdomain " + std::to_string(p) +
                                  "): " + e.what());
  }
}

void check_inputs(int iterations, const Propagator& fine, const Propagator& coarse) {
  if (iterations < 1) throw ConfigError("Parareal needs at least one iteration");
  if (!fine || !coarse) throw ConfigError("Parareal needs both a fine and a coarse solver");
}

NodalField handoff(const NodalField& value, const PararealOptions& options) {
  if (!options.handoff_space || value.space == *options.handoff_space) return value;
  return project_field(value, *options.handoff_space, ProjectionMode::nodal_interpolation);
}

}  // namespace

PararealState::PararealState(TimePartition partition, NodalField initial)
    : partition_(std::move(partition)), initial_(std::move(initial)) {}

const PararealIterate& PararealState::iterate(int k) const {
  if (k < 1 || k > iteration_count()) {
    throw ConfigError("Parareal iteration " + std::to_string(k) + " out of range");
  }
  return iterations_[k - 1];
}

NodalField PararealState::correction(int k, int p) const {
  if (k == 0) return NodalField::zero(iterate(1).corrections.at(p - 1).space);
  return iterate(k).corrections.at(p - 1);
}

NodalField PararealState::solution() const {
  return iterations_.back().fine.back().final_value();
}

PararealState vpar(const TimePartition& partition, int iterations, const NodalField& initial,
                   const Propagator& fine, const Propagator& coarse,
                   const PararealOptions& options) {
  check_inputs(iterations, fine, coarse);
  const int P = partition.subdomain_count();
  PararealState state(partition, initial);
  for (int k = 1; k <= iterations; ++k) {
    PararealIterate it;
    it.coarse.reserve(P);
    for (int p = 1; p <= P; ++p) {
      if (p == 1) {
        it.coarse.push_back(run_with_context(coarse, "coarse", k, p, initial));
        continue;
      }
      const NodalField end = it.coarse.back().final_value();
      const NodalField start =
          handoff(k == 1 ? end : add_fields(end, state.correction(k - 1, p - 1)), options);
      it.coarse.push_back(run_with_context(coarse, "coarse", k, p, start));
    }
    std::vector<std::optional<Trajectory>> fine_out(P);
    parallel_for(P, options.threads, [&](int i) {
      fine_out[i] = run_with_context(fine, "fine", k, i + 1, it.coarse[i].incoming());
    });
    it.fine.reserve(P);
    it.corrections.reserve(P);
    for (int i = 0; i < P; ++i) {
      it.fine.push_back(std::move(*fine_out[i]));
      it.corrections.push_back(
          add_fields(it.fine[i].final_value(), it.coarse[i].final_value(), -1.0));
    }
    state.push(std::move(it));
  }
  return state;
}

StandardParareal par_standard(const TimePartition& partition, int iterations,
                              const NodalField& initial, const Propagator& fine,
                              const Propagator& coarse, const PararealOptions& options) {
  check_inputs(iterations, fine, coarse);
  const int P = partition.subdomain_count();
  StandardParareal out;
  for (int k = 1; k <= iterations; ++k) {
    std::vector<NodalField> tilde;
    std::vector<NodalField> bar;
    std::vector<NodalField> corr;
    for (int p = 1; p <= P; ++p) {
      const NodalField& previous = p == 1 ? initial : tilde.back();
      const NodalField g = run_with_context(coarse, "coarse", k, p, previous).final_value();
      const NodalField f = run_with_context(fine, "fine", k, p, previous).final_value();
      tilde.push_back(handoff(k == 1 ? g : add_fields(g, out.corrections[k - 2][p - 1]), options));
      corr.push_back(add_fields(f, g, -1.0));
      bar.push_back(f);
    }
    out.coarse.push_back(std::move(tilde));
    out.fine.push_back(std::move(bar));
    out.corrections.push_back(std::move(corr));
  }
  return out;
}

}  // namespace stpa
