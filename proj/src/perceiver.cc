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

#include "goodvibes/perceiver.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

double Logit(double p) { return std::log(p / (1.0 - p)); }
double Logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// p with its odds multiplied by exp(log_factor).
double ShiftOdds(double p, double log_factor) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  return Logistic(Logit(p) + log_factor);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string_view ExperienceLevelName(ExperienceLevel level) {
  switch (level) {
    case ExperienceLevel::kNone: return "none";
    case ExperienceLevel::kSometimes: return "sometimes";
    case ExperienceLevel::kDaily: return "daily";
  }
  return "unknown";
}

ExperienceLevel ParseExperienceLevel(std::string_view name) {
  if (name == "none") return ExperienceLevel::kNone;
  if (name == "sometimes") return ExperienceLevel::kSometimes;
  if (name == "daily") return ExperienceLevel::kDaily;
  Throw(ErrorCode::kParse, "unknown experience level '" + std::string(name) + "'");
}

double ExperienceTarget(ExperienceLevel level) {
  switch (level) {
    case ExperienceLevel::kNone: return 0.89;
    case ExperienceLevel::kSometimes: return 0.99;
    case ExperienceLevel::kDaily: return 0.97;
  }
  return 0.0;
}

double ChoiceTarget(bool chosen_by_user) {
  return chosen_by_user ? 0.98 : 0.95;
}

void PerceiverProfile::Validate() const {
  for (double p : correct_probability) {
    if (!(p >= 0.0 && p <= 1.0)) {
      Throw(ErrorCode::kInvalidArgument, "probabilities must be in [0, 1]");
    }
  }
}

double MixWeightedRate(const PerceiverProfile& profile,
                       const ScenarioCounts& mix) {
  double weighted = 0.0;
  double total = 0.0;
  for (ScenarioId id : kAllScenarios) {
    weighted += mix[ScenarioIndex(id)] * profile.probability(id);
    total += mix[ScenarioIndex(id)];
  }
  if (total <= 0.0) Throw(ErrorCode::kInvalidArgument, "empty scenario mix");
  return weighted / total;
}

std::optional<ScenarioId> ClassifySituation(
    const StimulusView& view, const VibrationTimeline& enrolled_timeline) {
  if (!view.timeline) {
    if (view.user_woke) return ScenarioId::kS4;
    return std::nullopt;
  }
  const bool own = TimelinesMatch(*view.timeline, enrolled_timeline, 0);
  if (view.user_woke) return own ? ScenarioId::kS1 : ScenarioId::kS5;
  return own ? ScenarioId::kS3 : ScenarioId::kS2;
}

ParticipantResponse Perceive(const StimulusView& view,
                             const VibrationTimeline& enrolled_timeline,
                             const PerceiverProfile& profile, Rng& rng) {
  std::optional<ScenarioId> situation =
      ClassifySituation(view, enrolled_timeline);
  if (!situation) return ParticipantResponse::kNoReport;
  return rng.Bernoulli(profile.probability(*situation))
             ? ExpectedResponse(*situation)
             : LapseResponse(*situation);
}

PerceiverProfile RescaleToTarget(const PerceiverProfile& base, double target,
                                 const ScenarioCounts& mix) {
  base.Validate();
  if (!(target >= 0.0 && target <= 1.0)) {
    Throw(ErrorCode::kUnreachableTarget, "target must be in [0, 1]");
  }
  const double base_rate = MixWeightedRate(base, mix);
  if (std::fabs(base_rate - target) <= 1e-15) return base;

  // Limits as the common factor goes to 0 and to infinity: only entries
  // pinned at 1 (resp. not pinned at 0) keep their weight.
  PerceiverProfile low = base, high = base;
  for (double& p : low.correct_probability) p = p >= 1.0 ? 1.0 : 0.0;
  for (double& p : high.correct_probability) p = p <= 0.0 ? 0.0 : 1.0;
  const double low_rate = MixWeightedRate(low, mix);
  const double high_rate = MixWeightedRate(high, mix);
  if (target < low_rate - 1e-12 || target > high_rate + 1e-12) {
    Throw(ErrorCode::kUnreachableTarget,
          "overall rate " + std::to_string(target) + " outside reachable [" +
              std::to_string(low_rate) + ", " + std::to_string(high_rate) +
              "]");
  }
  if (std::fabs(target - high_rate) <= 1e-12) return high;
  if (std::fabs(target - low_rate) <= 1e-12) return low;

  auto rate_at = [&](double log_factor) {
    PerceiverProfile shifted = base;
    for (double& p : shifted.correct_probability) p = ShiftOdds(p, log_factor);
    return std::pair(MixWeightedRate(shifted, mix), shifted);
  };
  // The rate is strictly increasing in the log factor; bisect.
  double lo = -1.0, hi = 1.0;
  while (rate_at(lo).first > target) lo *= 2.0;
  while (rate_at(hi).first < target) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rate_at(mid).first < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return rate_at(0.5 * (lo + hi)).second;
}

PerceiverProfile ProfileFor(std::optional<ExperienceLevel> experience,
                            std::optional<bool> chosen_by_user,
                            const PerceiverProfile& base) {
  PerceiverProfile out = base;
  if (experience || chosen_by_user) {
    const double base_rate = MixWeightedRate(base);
    double target;
    if (experience && chosen_by_user) {
      target = Logistic(Logit(ExperienceTarget(*experience)) +
                        Logit(ChoiceTarget(*chosen_by_user)) -
                        Logit(base_rate));
    } else if (experience) {
      target = ExperienceTarget(*experience);
    } else {
      target = ChoiceTarget(*chosen_by_user);
    }
    out = RescaleToTarget(base, target);
  }
  out.experience = experience;
  out.pattern_chosen_by_user = chosen_by_user;
  return out;
}

PerceiverProfile ParseProfile(std::string_view text) {
  PerceiverProfile profile;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    const size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      Throw(ErrorCode::kParse, "profile line " + std::to_string(line_no) +
                                   ": expected key = value");
    }
    const std::string_view key = Trim(view.substr(0, eq));
    const std::string_view value = Trim(view.substr(eq + 1));
    if (key.size() == 4 && key.substr(0, 3) == "p_s" && key[3] >= '1' &&
        key[3] <= '5') {
      double p = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), p);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        Throw(ErrorCode::kParse, "profile line " + std::to_string(line_no) +
                                     ": bad probability '" +
                                     std::string(value) + "'");
      }
      profile.correct_probability[static_cast<size_t>(key[3] - '1')] = p;
    } else if (key == "experience") {
      if (value == "unspecified") {
        profile.experience.reset();
      } else {
        profile.experience = ParseExperienceLevel(value);
      }
    } else if (key == "chosen") {
      if (value == "true") {
        profile.pattern_chosen_by_user = true;
      } else if (value == "false") {
        profile.pattern_chosen_by_user = false;
      } else if (value == "unspecified") {
        profile.pattern_chosen_by_user.reset();
      } else {
        Throw(ErrorCode::kParse, "chosen must be true, false or unspecified");
      }
    } else {
      Throw(ErrorCode::kParse, "unknown profile key '" + std::string(key) + "'");
    }
  }
  try {
    profile.Validate();
  } catch (const Error& e) {
    Throw(ErrorCode::kParse, e.what());
  }
  return profile;
}

std::string FormatProfile(const PerceiverProfile& profile) {
  std::ostringstream out;
  out.precision(17);
  for (size_t i = 0; i < profile.correct_probability.size(); ++i) {
    out << "p_s" << (i + 1) << " = " << profile.correct_probability[i] << "\n";
  }
  out << "experience = "
      << (profile.experience ? ExperienceLevelName(*profile.experience)
                             : "unspecified")
      << "\n";
  out << "chosen = "
      << (profile.pattern_chosen_by_user
              ? (*profile.pattern_chosen_by_user ? "true" : "false")
              : "unspecified")
      << "\n";
  return out.str();
}

PerceiverProfile LoadProfileFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Throw(ErrorCode::kIo, "cannot open profile '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseProfile(buffer.str());
}

}  // namespace goodvibes
