#include "gsc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "gsc/response.hpp"
#include "gsc/rng.hpp"

namespace gsc {

double objective(const Design& design, const AngleTable& angles, const std::optional<ReadoutChannel>& channel) {
  const ResponseModel model = build_model(design, angles);
  return msd_times_n(channel ? apply_channel_model(model, *channel) : model);
}

double objective_from_model(const ResponseModel& raw, const std::optional<ReadoutChannel>& channel) {
  if (raw.rows() != kNumPaulis || raw.L.cols() != kNumPaulis) return kSingularSentinel;
  const double contrast = channel ? channel->contrast() : 1.0;
  if (contrast == 0.0) return kSingularSentinel;
  const Eigen::Matrix<double, kNumPaulis, kNumPaulis> Lc = contrast * raw.L;
  Eigen::VectorXd plus = raw.prob_plus, minus = raw.prob_minus;
  if (channel) {
    plus = channel->f_plus * raw.prob_plus + (1.0 - channel->f_minus) * raw.prob_minus;
    minus = channel->f_minus * raw.prob_minus + (1.0 - channel->f_plus) * raw.prob_plus;
  }

  const Eigen::Matrix<double, kNumPaulis, kNumPaulis> inv = Lc.partialPivLu().inverse();
  // cond_2(L) <= ||L||_F ||L^-1||_F; only a large bound needs the SVD.
  const bool certified = inv.allFinite() && Lc.norm() * inv.norm() < 1.0 / kSingularityThreshold;
  if (!certified && analyse_singularity(Lc).singular) return kSingularSentinel;

  double value = 0.0;
  for (int s = 0; s < kNumPaulis; ++s) value += 4.0 * plus[s] * minus[s] * inv.col(s).squaredNorm();
  return std::isfinite(value) ? value : kSingularSentinel;
}

DesignObjective::DesignObjective(Design design, std::optional<ReadoutChannel> channel)
    : design_(std::move(design)), channel_(channel) {}

double DesignObjective::operator()(const Eigen::VectorXd& free_angles) const {
  const AngleTable angles = design_.with_free(free_angles);
  const int m = design_.size();
  ResponseModel raw;
  raw.r0.resize(m);
  raw.prob_plus.resize(m);
  raw.prob_minus.resize(m);
  raw.L.resize(m, kNumPaulis);
  for (int s = 0; s < m; ++s) {
    const LinearResponse lr = linear_response(design_.settings()[s], angles);
    raw.r0[s] = lr.value;
    raw.prob_plus[s] = lr.prob_plus;
    raw.prob_minus[s] = lr.prob_minus;
    raw.L.row(s) = lr.gradient.transpose();
  }
  return objective_from_model(raw, channel_);
}

Eigen::VectorXd start_point(std::uint64_t seed, int index, int dimension, double lo, double hi) {
  auto g = make_stream(seed, {0x5354415254ull, static_cast<std::uint64_t>(index)});
  Eigen::VectorXd x(dimension);
  for (int i = 0; i < dimension; ++i) x[i] = lo + (hi - lo) * uniform01(g);
  return x;
}

int default_thread_count() {
  if (const char* env = std::getenv("GSC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

OptimizeResult minimize(const Design& design, const OptimizeConfig& config) {
  if (!(config.stop_tolerance > 0.0)) throw std::invalid_argument("stop_tolerance must be positive");
  if (config.multistart_count < 1) throw std::invalid_argument("multistart_count must be >= 1");
  if (design.free_count() == 0) throw std::invalid_argument("design has no free parameters");

  const DesignObjective f(design, config.channel);
  const int n = design.free_count();
  const BoxBounds box = BoxBounds::uniform(n, config.lower_bound, config.upper_bound);
  LocalSearchOptions opts;
  opts.x_tolerance = config.stop_tolerance;
  opts.max_evaluations = config.max_evaluations;
  opts.initial_step = config.initial_step;

  const int starts = config.multistart_count;
  std::vector<LocalSearchResult> results(starts);
  auto run_start = [&](int k) {
    const Eigen::VectorXd x0 = start_point(config.rng_seed, k, n, config.lower_bound, config.upper_bound);
    results[k] = minimize_in_box(std::cref(f), x0, box, opts);
  };

  const int threads = std::min(starts, config.threads > 0 ? config.threads : default_thread_count());
  if (threads <= 1) {
    for (int k = 0; k < starts; ++k) run_start(k);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int k = t; k < starts; k += threads) run_start(k);
      });
    for (auto& th : pool) th.join();
  }

  OptimizeResult out;
  for (int k = 0; k < starts; ++k) {
    const LocalSearchResult& r = results[k];
    out.trace.push_back({k, r.value, r.evaluations, r.converged});
    out.evaluation_count += r.evaluations;
    if (std::isfinite(r.value)) ++out.finite_starts;
    if (r.value < out.best_value) {  // strict: ties keep the lowest index
      out.best_value = r.value;
      out.best_start = k;
    }
  }
  if (out.best_start < 0) throw NoFiniteMinimumError("no start reached a non-singular design");
  out.best_free_angles = results[out.best_start].x;
  out.best_angles = design.with_free(out.best_free_angles);
  for (const auto& r : results)
    if (r.value <= out.best_value * (1.0 + 1e-5)) ++out.starts_within_factor;
  return out;
}

Eigen::VectorXd fold(const Eigen::VectorXd& angles) {
  return angles.unaryExpr([](double t) { return t > std::numbers::pi ? kTwoPi - t : t; });
}

Eigen::VectorXd reflect(const Eigen::VectorXd& angles) {
  return angles.unaryExpr([](double t) { return kTwoPi - t; });
}

namespace {
template <typename Map>
AngleTable transform(const AngleTable& angles, Map map) {
  AngleTable out;
  for (int id = 0; id < angles.capacity(); ++id)
    if (angles.has(id)) out.set(id, map(id, angles.at(id)));
  return out;
}
}  // namespace

AngleTable fold(const AngleTable& angles) {
  return transform(angles, [](int, double t) { return t > std::numbers::pi ? kTwoPi - t : t; });
}

AngleTable reflect(const AngleTable& angles) {
  return transform(angles, [](int, double t) { return kTwoPi - t; });
}

AngleTable reflect(const AngleTable& angles, int id) {
  if (!angles.has(id)) throw ConfigurationError("cannot reflect unset parameter theta" + std::to_string(id));
  return transform(angles, [id](int i, double t) { return i == id ? kTwoPi - t : t; });
}

DegeneracyReport verify_degeneracy(const Design& design, const AngleTable& base,
                                   const std::vector<int>& resampled_ids, int samples, std::uint64_t seed,
                                   const std::optional<ReadoutChannel>& channel) {
  DegeneracyReport rep;
  rep.base_value = objective(design, base, channel);
  rep.samples = samples;
  auto with_value = [&](double v) {
    AngleTable t = base;
    for (int id : resampled_ids) t.set(id, v);
    return objective(design, t, channel);
  };
  rep.half_pi_value = with_value(std::numbers::pi / 2);
  rep.zero_value = with_value(0.0);
  if (resampled_ids.empty()) return rep;

  for (int k = 0; k < samples; ++k) {
    auto g = make_stream(seed, {0x444547ull, static_cast<std::uint64_t>(k)});
    AngleTable t = base;
    for (int id : resampled_ids) t.set(id, kTwoPi * uniform01(g));
    const double v = objective(design, t, channel);
    if (!std::isfinite(v)) {
      ++rep.singular_hits;
      continue;
    }
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(v - rep.base_value) / rep.base_value);
  }
  return rep;
}

}  // namespace gsc
