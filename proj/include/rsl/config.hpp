#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rsl/asymptotics.hpp"
#include "rsl/problem.hpp"
#include "rsl/spectrum.hpp"

namespace rsl {

enum class ExperimentKind { Spectrum, Trace, Nodal, Verify };

std::string_view to_string(ExperimentKind kind);
/// Throws ConfigError for an unknown name.
ExperimentKind parse_experiment_kind(std::string_view name);

/// One run of the harness. Text form:
///
///   [problem]
///   p1 = 1
///   ...
///   q_left = "cos(x)"
///
///   [experiment]
///   kind = verify
///   n_max = 60
///
///   [integrator]
///   step_count = 2048
///
///   [quadrature]
///   min_panels = 8
///
/// '#' starts a comment. Every [problem] key is required; the other sections
/// fall back to the defaults below.
struct ExperimentConfig {
  double p1 = 1.0, p2 = 1.0;
  double a1 = 0.0, a2 = 1.0;
  double d = 0.0;
  double gamma1 = 1.0, gamma2 = 1.0, delta1 = 1.0, delta2 = 1.0;
  std::string q_left = "0", q_right = "0";
  std::string delta_left = "0", delta_right = "0";

  ExperimentKind kind = ExperimentKind::Spectrum;
  int n_max = 40;
  std::string output = "out";
  std::vector<int> nodal_n{8, 16, 32};
  std::vector<int> trace_sizes{25, 50, 100, 200};
  std::uint64_t seed = 42;

  int step_count = 2048;
  int corrector_iterations = 2;
  int interpolation_order = 3;
  double scaling_threshold = 64.0;
  int richardson_levels = 4;

  int min_panels = 8;
  int panels_per_half_wave = 4;
  int refinement = 1;

  /// Parses the four expressions. Throws SyntaxError or UnknownIdentifier.
  ProblemSpec problem_spec() const;
  SpectrumConfig spectrum_config() const;
  QuadratureConfig quadrature_config() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError (with the line number) on malformed input, unknown or
/// duplicate keys and missing [problem] keys; expressions are syntax-checked.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text: fixed section and key order, shortest round-trip numbers.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace rsl
