// Copyright 2026 The GoodVibes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails. Optional argv[1]: path to the goodvibes CLI, used for the
// determinism check; without it the library entry points are used.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "goodvibes/agents.h"
#include "goodvibes/metrics.h"
#include "goodvibes/pattern.h"
#include "goodvibes/perceiver.h"
#include "goodvibes/rng.h"
#include "goodvibes/run_config.h"
#include "goodvibes/scenario.h"
#include "goodvibes/secure_link.h"
#include "goodvibes/simulate.h"

namespace goodvibes {
namespace {

namespace fs = std::filesystem;

// Pinned tolerances and budgets.
constexpr int64_t kTimingToleranceMs = 0;
constexpr double kTimingBudgetMs = 1.0;
constexpr double kDurationBudgetMs = 1000.0;
constexpr int kScheduleSeeds = 1000;
constexpr double kScheduleBudgetMs = 1000.0;
constexpr int kReplayPings = 10'000;
constexpr int kPhishingWakes = 10'000;
constexpr double kSecurityBudgetMs = 5000.0;
constexpr uint64_t kStudySeed = kDefaultSeed;
constexpr int kConvergenceTrials = 100'000;
constexpr double kConvergenceTolerance = 0.005;
constexpr double kRateBudgetMs = 10'000.0;
constexpr double kCalibrationTolerance = 1e-9;
constexpr double kCalibrationBudgetMs = 1000.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Millis(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome TimingExactness() {
  const auto t0 = std::chrono::steady_clock::now();
  const int64_t two = TotalDuration(RenderTimeline(PatternSpec::Parse("2")));
  const int64_t one_three = TotalDuration(RenderTimeline(PatternSpec::Parse("1 3")));
  const double ms = Millis(std::chrono::steady_clock::now() - t0);
  const bool ok = std::llabs(two - 180) <= kTimingToleranceMs &&
                  std::llabs(one_three - 560) <= kTimingToleranceMs &&
                  ms < kTimingBudgetMs;
  return {ok, Fmt("\"2\"=%lld ms (180), \"1 3\"=%lld ms (560), tol %lld ms, %.3f ms",
                  static_cast<long long>(two), static_cast<long long>(one_three),
                  static_cast<long long>(kTimingToleranceMs), ms)};
}

Outcome DurationFormula() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<PatternSpec> all = EnumeratePatterns(PatternSpec::kMaxGroups,
                                                         PatternSpec::kMaxBurstsPerGroup);
  // Independent count: sum over g of 9^g.
  size_t expected_count = 0;
  for (int g = 1, p = 9; g <= PatternSpec::kMaxGroups; ++g, p *= 9) expected_count += p;
  const TimingParams timing;
  size_t mismatches = 0;
  for (const PatternSpec& spec : all) {
    const int64_t b = spec.total_bursts();
    const int64_t g = spec.group_count();
    const int64_t closed = b * timing.burst_ms + (b - g) * timing.intra_gap_ms +
                           (g - 1) * timing.inter_gap_ms;
    if (TotalDuration(RenderTimeline(spec, timing)) != closed) ++mismatches;
  }
  const double ms = Millis(std::chrono::steady_clock::now() - t0);
  const bool ok = mismatches == 0 && all.size() == expected_count && ms < kDurationBudgetMs;
  return {ok, Fmt("%zu specs (expected %zu), %zu mismatches, %.1f ms", all.size(),
                  expected_count, mismatches, ms)};
}

Outcome ScheduleFidelity() {
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (uint64_t seed = 0; seed < kScheduleSeeds; ++seed) {
    const SessionSchedule s = BuildSchedule(seed);
    ScenarioCounts counts{};
    for (ScenarioId id : s.trials) ++counts[ScenarioIndex(id)];
    if (s.trials.size() != 24 || counts != kStudyCounts) ++bad;
  }
  const double ms = Millis(std::chrono::steady_clock::now() - t0);
  return {bad == 0 && ms < kScheduleBudgetMs,
          Fmt("%d seeds, %d off-multiset, %.1f ms", kScheduleSeeds, bad, ms)};
}

Outcome SecurityInvariants() {
  const auto t0 = std::chrono::steady_clock::now();

  // (a) Replays and duplicates, delivered shuffled.
  Rng rng(kStudySeed);
  World world = MakeWorld(WorldOptions{{}, {}, 0, {}}, PatternSpec::Parse("1 3"), true, rng);
  std::vector<AuthPing> wire;
  for (int i = 0; i < kReplayPings / 2; ++i) {
    if (auto ping = world.phone.OnScreenWake(i, rng)) {
      wire.push_back(*ping);
      wire.push_back(*ping);
    }
  }
  for (size_t i = wire.size(); i > 1; --i) {
    std::swap(wire[i - 1], wire[static_cast<size_t>(rng.UniformInt(0, i - 1))]);
  }
  std::map<uint64_t, int> accepted;
  for (const AuthPing& ping : wire) {
    if (world.watch.OnPingReceived(ping, 0)) ++accepted[ping.counter];
  }
  int double_accepts = 0;
  for (const auto& [counter, n] : accepted) double_accepts += n > 1 ? 1 : 0;

  // (b) Phishing phone wakes.
  World target = MakeWorld(WorldOptions{{}, {}, 0, {}}, PatternSpec::Parse("2"), false, rng);
  int phishing_vibrations = 0;
  for (int i = 0; i < kPhishingWakes; ++i) {
    if (auto ping = target.phishing_phone.OnScreenWake(i, rng)) {
      for (int64_t at : Transmit(*ping, target.link, rng, i).arrivals_ms) {
        auto event = target.watch.OnPingReceived(*ping, at);
        if (event && event->source == VibrationSource::kAuthPing) ++phishing_vibrations;
      }
    }
  }

  // (c) Phone state never reveals the enrolled pattern, for every pattern in
  // the enrollment pool and the full pattern space.
  std::vector<PatternSpec> patterns = RunConfig{}.pattern_pool;
  for (const PatternSpec& p : EnumeratePatterns(4, 9)) patterns.push_back(p);
  int leaks = 0;
  std::set<std::string> phone_states;
  for (const PatternSpec& p : patterns) {
    Rng world_rng(17);
    World w = MakeWorld(WorldOptions{}, p, true, world_rng);
    if (auto ping = w.phone.OnScreenWake(0, world_rng)) w.watch.OnPingReceived(*ping, 40);
    const std::string state = w.phone.Snapshot();
    const std::string canonical = p.ToString();
    const bool quoted = state.find('"' + canonical + '"') != std::string::npos;
    const bool bare = p.group_count() > 1 && state.find(canonical) != std::string::npos;
    const bool timeline = state.find(RenderTimeline(p).ToString()) != std::string::npos;
    if (quoted || bare || timeline) ++leaks;
    phone_states.insert(state);
  }
  const bool independent = phone_states.size() == 1;

  const double ms = Millis(std::chrono::steady_clock::now() - t0);
  const bool ok = double_accepts == 0 && !accepted.empty() && phishing_vibrations == 0 &&
                  leaks == 0 && independent && ms < kSecurityBudgetMs;
  return {ok, Fmt("(a) %zu pings, %d accepted twice; (b) %d wakes, %d auth vibrations; "
                  "(c) %zu patterns, %d leaks, phone state %s; %.1f ms",
                  wire.size(), double_accepts, kPhishingWakes, phishing_vibrations,
                  patterns.size(), leaks, independent ? "pattern-independent" : "VARIES",
                  ms)};
}

Outcome ReferenceRates() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig study;
  study.seed = kStudySeed;
  const SimulationResult result = RunSimulation(study);
  std::string detail = Fmt("seed %llu:", static_cast<unsigned long long>(kStudySeed));
  bool study_ok = result.record_count() == 720;
  for (const ComparisonRow& row : result.comparison.rows) {
    detail += Fmt(" %s %.4f/%.2f±%.4f(n=%d)%s", row.name.c_str(), row.rate, row.target,
                  row.tolerance, row.n, row.pass ? "" : "!");
    study_ok = study_ok && row.pass && !row.excluded;
  }

  // Long run through the same pipeline: 1000 participants x 100 per scenario.
  RunConfig large;
  large.seed = kStudySeed + 1;
  large.participants = 1000;
  large.counts = {100, 100, 100, 100, 100};
  const SimulationResult big = RunSimulation(large);
  bool converge_ok = true;
  detail += "; 100k/scenario:";
  for (ScenarioId id : kAllScenarios) {
    const RateCell& cell = big.report.scenarios[ScenarioIndex(id)];
    const double target = kStudyRecognitionRates[ScenarioIndex(id)];
    const bool ok = cell.total == kConvergenceTrials &&
                    std::fabs(cell.rate() - target) <= kConvergenceTolerance;
    converge_ok = converge_ok && ok;
    detail += Fmt(" %.4f%s", cell.rate(), ok ? "" : "!");
  }
  const double ms = Millis(std::chrono::steady_clock::now() - t0);
  detail += Fmt(" (tol %.3f); %.0f ms", kConvergenceTolerance, ms);
  return {study_ok && converge_ok && ms < kRateBudgetMs, detail};
}

Outcome GroupCalibration() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    std::optional<ExperienceLevel> experience;
    std::optional<bool> chosen;
    double target;
  };
  const Case cases[] = {
      {"daily", ExperienceLevel::kDaily, std::nullopt, 0.97},
      {"sometimes", ExperienceLevel::kSometimes, std::nullopt, 0.99},
      {"none", ExperienceLevel::kNone, std::nullopt, 0.89},
      {"chosen", std::nullopt, true, 0.98},
      {"assigned", std::nullopt, false, 0.95},
  };
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (const Case& c : cases) {
    const PerceiverProfile p = ProfileFor(c.experience, c.chosen);
    const double err = std::fabs(MixWeightedRate(p, kStudyCounts) - c.target);
    for (double q : p.correct_probability) ok = ok && q >= 0.0 && q <= 1.0;
    ok = ok && err <= kCalibrationTolerance;
    worst = std::max(worst, err);
    detail += Fmt("%s %.2f ", c.name, c.target);
  }
  const double ms = Millis(std::chrono::steady_clock::now() - t0);
  return {ok && ms < kCalibrationBudgetMs,
          detail + Fmt("max |err| %.1e (tol %.0e), %.2f ms", worst, kCalibrationTolerance, ms)};
}

std::map<std::string, std::string> ReadTree(const fs::path& root) {
  std::map<std::string, std::string> files;
  if (!fs::exists(root)) return files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = s.str();
  }
  return files;
}

Outcome Determinism(const char* cli) {
  const fs::path base = fs::temp_directory_path() /
                        ("goodvibes_accept_" + std::to_string(::getpid()));
  fs::remove_all(base);
  const fs::path a = base / "a";
  const fs::path b = base / "b";
  std::string how;
  if (cli != nullptr) {
    how = "cli";
    for (const fs::path& dir : {a, b}) {
      const std::string cmd = std::string("\"") + cli + "\" simulate --quiet --out \"" +
                              dir.string() + "\"";
      if (std::system(cmd.c_str()) != 0) {
        fs::remove_all(base);
        return {false, "cli simulate failed: " + cmd};
      }
    }
  } else {
    how = "library";
    WriteSimulationOutputs(RunSimulation(RunConfig{}), a);
    WriteSimulationOutputs(RunSimulation(RunConfig{}), b);
  }
  const auto tree_a = ReadTree(a);
  const auto tree_b = ReadTree(b);
  fs::remove_all(base);
  const bool ok = tree_a.size() == 33 && tree_a == tree_b;
  return {ok, Fmt("%s runs, %zu files each, %s", how.c_str(), tree_a.size(),
                  tree_a == tree_b ? "byte-identical" : "DIFFER")};
}

}  // namespace
}  // namespace goodvibes

int main(int argc, char** argv) {
  using goodvibes::Outcome;
  const char* cli = argc > 1 ? argv[1] : nullptr;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"pattern timing exactness", goodvibes::TimingExactness},
      {"duration formula property", goodvibes::DurationFormula},
      {"schedule fidelity", goodvibes::ScheduleFidelity},
      {"security invariants", goodvibes::SecurityInvariants},
      {"reference-rate reproduction", goodvibes::ReferenceRates},
      {"group calibration", goodvibes::GroupCalibration},
      {"determinism", [cli] { return goodvibes::Determinism(cli); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-28s %s\n", outcome.pass ? "PASS" : "FAIL", name,
                outcome.detail.c_str());
    failed += outcome.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
