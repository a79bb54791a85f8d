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

#include "goodvibes/run_config.h"

#include <charconv>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

[[noreturn]] void Invalid(const std::string& message) {
  Throw(ErrorCode::kInvalidConfig, message);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t end = text.find(sep, start);
    parts.push_back(Trim(text.substr(start, end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  text = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Invalid("option '" + std::string(key) + "': cannot parse '" +
            std::string(text) + "'");
  }
  return value;
}

std::vector<PatternSpec> ParsePatternList(std::string_view key,
                                          std::string_view text) {
  std::vector<PatternSpec> out;
  for (std::string_view part : Split(text, ';')) {
    try {
      out.push_back(PatternSpec::Parse(part));
    } catch (const Error& e) {
      Invalid("option '" + std::string(key) + "': " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string_view PatternPolicyName(PatternPolicy policy) {
  switch (policy) {
    case PatternPolicy::kMixed: return "mixed";
    case PatternPolicy::kChosen: return "chosen";
    case PatternPolicy::kAssigned: return "assigned";
    case PatternPolicy::kExplicit: return "explicit";
  }
  return "unknown";
}

std::string_view ProfileModeName(ProfileMode mode) {
  return mode == ProfileMode::kStudy ? "study" : "by_group";
}

std::string_view SeedPolicyName(SeedPolicy policy) {
  return policy == SeedPolicy::kPerParticipant ? "per_participant" : "global";
}

ScenarioCounts ParseCounts(std::string_view text) {
  ScenarioCounts counts{};
  const bool named = text.find(':') != std::string_view::npos ||
                     text.find('=') != std::string_view::npos;
  std::vector<std::string_view> parts = Split(text, ',');
  if (!named) {
    if (parts.size() != counts.size()) {
      Invalid("counts need five comma-separated values (S1..S5)");
    }
    for (size_t i = 0; i < parts.size(); ++i) {
      counts[i] = ParseNumber<int>("counts", parts[i]);
    }
  } else {
    for (std::string_view part : parts) {
      size_t sep = part.find_first_of(":=");
      if (sep == std::string_view::npos) {
        Invalid("counts entry '" + std::string(part) + "' needs S<n>:<count>");
      }
      ScenarioId id;
      try {
        id = ParseScenario(Trim(part.substr(0, sep)));
      } catch (const Error& e) {
        Invalid(std::string("counts: ") + e.what());
      }
      counts[ScenarioIndex(id)] = ParseNumber<int>("counts", part.substr(sep + 1));
    }
  }
  for (int c : counts) {
    if (c < 0) Invalid("counts must be non-negative");
  }
  return counts;
}

std::string FormatCounts(const ScenarioCounts& counts) {
  std::string out;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(counts[i]);
  }
  return out;
}

void RunConfig::Validate() const {
  if (participants < 1) Invalid("participants must be at least 1");
  int total = 0;
  for (int c : counts) {
    if (c < 0) Invalid("counts must be non-negative");
    total += c;
  }
  if (total == 0) Invalid("schedule would be empty");
  try {
    timing.Validate();
    link.Validate();
    base_profile.Validate();
  } catch (const Error& e) {
    Invalid(e.what());
  }
  if (debounce_ms < 0) Invalid("debounce_ms must be non-negative");
  if (pattern_policy == PatternPolicy::kExplicit) {
    if (!explicit_pattern) Invalid("explicit pattern policy needs a pattern");
  } else if (pattern_pool.empty()) {
    Invalid("pattern pool is empty");
  }
  if (distractor_pool.empty()) Invalid("distractor pool is empty");
  if (live_participant < 0 || live_participant >= participants) {
    Invalid("live_participant out of range");
  }
}

void RunConfig::Set(std::string_view key, std::string_view value) {
  value = Trim(value);
  auto parse_pattern = [&](std::string_view text) {
    try {
      return PatternSpec::Parse(text);
    } catch (const Error& e) {
      Invalid("option '" + std::string(key) + "': " + e.what());
    }
  };
  auto parse_enum = [&](auto parser) {
    try {
      return parser(value);
    } catch (const Error& e) {
      Invalid("option '" + std::string(key) + "': " + e.what());
    }
  };

  if (key == "seed") {
    seed = ParseNumber<uint64_t>(key, value);
  } else if (key == "participants") {
    participants = ParseNumber<int>(key, value);
  } else if (key == "counts") {
    counts = ParseCounts(value);
  } else if (key == "timing") {
    std::vector<std::string_view> parts = Split(value, ',');
    if (parts.size() != 3) Invalid("timing needs burst,intra_gap,inter_gap");
    timing.burst_ms = ParseNumber<int64_t>(key, parts[0]);
    timing.intra_gap_ms = ParseNumber<int64_t>(key, parts[1]);
    timing.inter_gap_ms = ParseNumber<int64_t>(key, parts[2]);
  } else if (key == "burst_ms") {
    timing.burst_ms = ParseNumber<int64_t>(key, value);
  } else if (key == "intra_gap_ms") {
    timing.intra_gap_ms = ParseNumber<int64_t>(key, value);
  } else if (key == "inter_gap_ms") {
    timing.inter_gap_ms = ParseNumber<int64_t>(key, value);
  } else if (key == "pattern") {
    explicit_pattern = parse_pattern(value);
    pattern_policy = PatternPolicy::kExplicit;
  } else if (key == "pattern_policy") {
    if (value == "mixed") {
      pattern_policy = PatternPolicy::kMixed;
    } else if (value == "chosen") {
      pattern_policy = PatternPolicy::kChosen;
    } else if (value == "assigned") {
      pattern_policy = PatternPolicy::kAssigned;
    } else if (value == "explicit") {
      pattern_policy = PatternPolicy::kExplicit;
    } else {
      Invalid("pattern_policy must be mixed, chosen, assigned or explicit");
    }
  } else if (key == "pattern_pool") {
    pattern_pool = ParsePatternList(key, value);
  } else if (key == "distractor_pool") {
    distractor_pool = ParsePatternList(key, value);
  } else if (key == "profile") {
    if (value.empty() || value == "default") {
      base_profile = PerceiverProfile();
      profile_source = "default";
    } else {
      try {
        base_profile = LoadProfileFile(std::string(value));
      } catch (const Error& e) {
        Invalid(std::string("profile: ") + e.what());
      }
      profile_source = std::string(value);
    }
  } else if (key == "profile_mode") {
    if (value == "study") {
      profile_mode = ProfileMode::kStudy;
    } else if (value == "by_group") {
      profile_mode = ProfileMode::kByGroup;
    } else {
      Invalid("profile_mode must be study or by_group");
    }
  } else if (key == "seed_policy") {
    if (value == "per_participant") {
      seed_policy = SeedPolicy::kPerParticipant;
    } else if (value == "global") {
      seed_policy = SeedPolicy::kGlobal;
    } else {
      Invalid("seed_policy must be per_participant or global");
    }
  } else if (key == "absence_mode") {
    absence_mode = parse_enum(ParseAbsenceMode);
  } else if (key == "link_latency") {
    std::vector<std::string_view> parts = Split(value, ',');
    if (parts.size() != 2) Invalid("link_latency needs min,max");
    link.latency_min_ms = ParseNumber<int64_t>(key, parts[0]);
    link.latency_max_ms = ParseNumber<int64_t>(key, parts[1]);
  } else if (key == "link_loss") {
    link.loss_probability = ParseNumber<double>(key, value);
  } else if (key == "link_duplicate") {
    link.duplicate_probability = ParseNumber<double>(key, value);
  } else if (key == "debounce_ms") {
    debounce_ms = ParseNumber<int64_t>(key, value);
  } else if (key == "live_participant") {
    live_participant = ParseNumber<int>(key, value);
  } else if (key == "output_dir") {
    output_dir = std::filesystem::path(std::string(value));
  } else {
    Invalid("unknown option '" + std::string(key) + "'");
  }
}

nlohmann::json RunConfig::ToJson() const {
  auto patterns = [](const std::vector<PatternSpec>& pool) {
    std::vector<std::string> out;
    for (const PatternSpec& p : pool) out.push_back(p.ToString());
    return out;
  };
  nlohmann::json j;
  j["seed"] = seed;
  j["participants"] = participants;
  j["counts"] = counts;
  j["timing"] = {{"burst_ms", timing.burst_ms},
                 {"intra_gap_ms", timing.intra_gap_ms},
                 {"inter_gap_ms", timing.inter_gap_ms}};
  j["base_profile"] = base_profile.correct_probability;
  j["profile_source"] = profile_source;
  j["pattern_policy"] = PatternPolicyName(pattern_policy);
  j["explicit_pattern"] = explicit_pattern
                              ? nlohmann::json(explicit_pattern->ToString())
                              : nlohmann::json(nullptr);
  j["pattern_pool"] = patterns(pattern_pool);
  j["distractor_pool"] = patterns(distractor_pool);
  j["link"] = {{"latency_min_ms", link.latency_min_ms},
               {"latency_max_ms", link.latency_max_ms},
               {"loss_probability", link.loss_probability},
               {"duplicate_probability", link.duplicate_probability}};
  j["debounce_ms"] = debounce_ms;
  j["profile_mode"] = ProfileModeName(profile_mode);
  j["seed_policy"] = SeedPolicyName(seed_policy);
  j["absence_mode"] = AbsenceModeName(absence_mode);
  j["live_participant"] = live_participant;
  return j;
}

}  // namespace goodvibes
