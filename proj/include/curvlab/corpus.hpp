#pragma once

// The built-in example corpus: small input documents whose spectra and
// verdicts are known in closed form.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace curvlab {

struct CorpusEntry {
  std::string name;
  nlohmann::json document;
};

/// Deterministic in `seed` (used for the random Bianchi tensors).
std::vector<CorpusEntry> builtin_corpus(std::uint64_t seed);

struct CorpusOutcome {
  std::string name;
  nlohmann::json report;
  bool identities_pass = true;
};

std::vector<CorpusOutcome> run_corpus(std::uint64_t seed);

}  // namespace curvlab
