#pragma once

#include <string>
#include <vector>

#include "decon/bounds.hpp"
#include "decon/generator.hpp"
#include "decon/sampled_function.hpp"
#include "decon/sequence.hpp"
#include "decon/symbol.hpp"

#include <nlohmann/json_fwd.hpp>

namespace decon {

// Sequence file format:
//   { "dim": d, "offset": [..], "shape": [..],
//     "re": [row-major floats], "im": [row-major floats] }
nlohmann::json sequence_to_json(const WeightedSequence& a);
WeightedSequence sequence_from_json(const nlohmann::json& j);

WeightedSequence load_sequence(const std::string& path);
void save_sequence(const WeightedSequence& a, const std::string& path);

// Generator spec:
//   { "kind": "bspline"|"exp"|"sampled", "order"/"rate"/grid fields, "alpha": x }
Generator generator_from_json(const nlohmann::json& j);
Generator load_generator(const std::string& path);

nlohmann::json report_to_json(const BoundReport& r);

// CSV exports
void write_abs_profile_csv(const WeightedSequence& a, const std::string& path);
void write_symbol_csv(const SymbolGrid& grid, const std::string& path);
void write_samples_csv(const SampledFunction& f, const std::string& path);
void write_series_csv(const std::vector<double>& values, const std::string& header,
                      const std::string& path);

std::vector<double> load_points_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json load_json(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

}  // namespace decon
