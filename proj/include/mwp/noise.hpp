#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwp/pipeline.hpp"

namespace mwp {

enum class NoiseKind { NewSubject, NewEntity, NewModifier };

const std::string& to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& s);

// Word pools for injected noise. Pools are filtered per problem so the
// injected word is never one of the problem's own subjects, entities or
// modifiers; values come from a fixed seeded generator.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::NewSubject;
  std::vector<std::string> subjects;
  std::vector<std::string> entities;
  std::vector<std::string> modifiers;
  uint64_t seed = 1;
  int count = 1;  // variants per problem
};

// Pools drawn from the dataset vocabulary first (word reuse), extended
// with the bundled name/modifier lists.
NoiseSpec default_noise_spec(const Dataset& ds, const Pipeline& pipe, NoiseKind kind, uint64_t seed);

// Appends one noisy sentence per variant: an irrelevant quantity bound
// to a new subject, a new entity, or a new subject with a new modifier.
// Body and question are otherwise unchanged and the gold answer is
// byte-identical to the source problem's.
std::vector<MWProblem> make_noisy_variants(const MWProblem& problem, const NoiseSpec& spec,
                                           const Pipeline& pipe);

// One variant per problem, ids suffixed by noise kind.
Dataset noisify_dataset(const Dataset& ds, const Pipeline& pipe, NoiseKind kind, uint64_t seed);

}  // namespace mwp
