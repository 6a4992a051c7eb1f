#pragma once

// Design optimisation: minimise <D^2> * N over the free angles of a design.

#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gsc/linear_model.hpp"
#include "gsc/local_search.hpp"
#include "gsc/setting.hpp"
#include "gsc/statistics.hpp"

namespace gsc {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class NoFiniteMinimumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// <D^2> * N of the design at `angles` (imperfect variant with a channel),
/// or kSingularSentinel when L is singular. Reference path through
/// build_model.
double objective(const Design& design, const AngleTable& angles,
                 const std::optional<ReadoutChannel>& channel = std::nullopt);

/// Fast path from a model whose conditioning fields have not been filled in,
/// with the channel applied. Skips the SVD whenever ||L||_F ||L^-1||_F
/// already certifies cond(L) below the singularity threshold, so its
/// classification matches build_model's.
double objective_from_model(const ResponseModel& raw, const std::optional<ReadoutChannel>& channel);

/// Objective as a function of the design's free angles, for the optimiser.
class DesignObjective {
 public:
  DesignObjective(Design design, std::optional<ReadoutChannel> channel);
  double operator()(const Eigen::VectorXd& free_angles) const;
  const Design& design() const { return design_; }
  int dimension() const { return design_.free_count(); }

 private:
  Design design_;
  std::optional<ReadoutChannel> channel_;
};

struct OptimizeConfig {
  double lower_bound = 0.0;
  double upper_bound = kTwoPi;
  double stop_tolerance = 1e-10;  // on the angle step
  long max_evaluations = 200000;  // per start
  int multistart_count = 200;
  std::uint64_t rng_seed = 1;
  std::optional<ReadoutChannel> channel;
  double initial_step = 0.5;
  int threads = 0;  // 0: GSC_THREADS or hardware concurrency
};

struct StartSummary {
  int start_index = 0;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct OptimizeResult {
  Eigen::VectorXd best_free_angles;  // free_positions() order
  AngleTable best_angles;            // full table including fixed values
  double best_value = kSingularSentinel;
  int best_start = -1;
  int starts_within_factor = 0;  // final value within (1 + 1e-5) of best
  int finite_starts = 0;
  long evaluation_count = 0;
  std::vector<StartSummary> trace;
};

/// Uniformly distributed start point for start `index` (deterministic in
/// (seed, index)).
Eigen::VectorXd start_point(std::uint64_t seed, int index, int dimension, double lo, double hi);

/// Multistart local minimisation. Throws NoFiniteMinimumError when every
/// start ends at the singular sentinel.
OptimizeResult minimize(const Design& design, const OptimizeConfig& config);

/// Thread count used when OptimizeConfig::threads is 0; reads GSC_THREADS.
int default_thread_count();

/// theta -> 2pi - theta for every theta > pi.
Eigen::VectorXd fold(const Eigen::VectorXd& angles);
AngleTable fold(const AngleTable& angles);

/// Global reflection theta -> 2pi - theta.
Eigen::VectorXd reflect(const Eigen::VectorXd& angles);
AngleTable reflect(const AngleTable& angles);
/// Local reflection of a single parameter id.
AngleTable reflect(const AngleTable& angles, int id);

struct DegeneracyReport {
  double base_value = 0.0;
  double max_relative_deviation = 0.0;  // over finite samples
  int samples = 0;
  int singular_hits = 0;
  double half_pi_value = 0.0;  // objective with the listed angles set to pi/2
  double zero_value = 0.0;     // objective with the listed angles set to 0
};

/// Resamples the listed parameter ids uniformly in [0, 2pi] and reports the
/// largest relative change of the objective.
DegeneracyReport verify_degeneracy(const Design& design, const AngleTable& base,
                                   const std::vector<int>& resampled_ids, int samples, std::uint64_t seed,
                                   const std::optional<ReadoutChannel>& channel = std::nullopt);

/// The eight angle ids that do not affect the optimal perfect-readout value
/// of the parameterised 25-angle design.
inline const std::vector<int>& degeneracy_ids() {
  static const std::vector<int> ids{1, 2, 6, 9, 15, 16, 17, 18};
  return ids;
}

}  // namespace gsc
