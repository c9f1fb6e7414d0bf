/*
 * Copyright (C) 2026 The CenterGuard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "centerguard/scenario_script.h"

#include <fmt/format.h>

#include <charconv>

#include "centerguard/device_state.h"
#include "centerguard/errors.h"
#include "centerguard/json_io.h"
#include "centerguard/permission.h"
#include "centerguard/policy.h"

namespace centerguard {
namespace {

constexpr std::pair<ScenarioAction, std::string_view> kActionNames[] = {
    {ScenarioAction::kDevice, "device"},
    {ScenarioAction::kInstall, "install"},
    {ScenarioAction::kSetMode, "set-mode"},
    {ScenarioAction::kSetPermission, "set-permission"},
    {ScenarioAction::kSetPseudo, "set-pseudo"},
    {ScenarioAction::kNetworkChange, "network-change"},
    {ScenarioAction::kWifiOnly, "wifi-only"},
    {ScenarioAction::kMove, "move"},
    {ScenarioAction::kTick, "tick"},
    {ScenarioAction::kSync, "sync"},
    {ScenarioAction::kRunApp, "run-app"},
    {ScenarioAction::kPoll, "poll"},
};

struct Token {
  std::string text;
  size_t column;  // 1-based
};

class LineParser {
 public:
  LineParser(std::string_view origin, size_t line_no) : origin_(origin), line_no_(line_no) {}

  [[noreturn]] void Fail(size_t column, std::string_view what) const {
    throw Error(ErrorCode::kParseError, fmt::format("{}:{}:{}: {}", origin_, line_no_, column, what));
  }

  std::vector<Token> Tokenize(std::string_view line) const {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      Token t{"", i + 1};
      if (line[i] == '"') {
        size_t close = line.find('"', i + 1);
        if (close == std::string_view::npos) Fail(i + 1, "unterminated quoted argument");
        t.text = std::string(line.substr(i + 1, close - i - 1));
        i = close + 1;
      } else {
        size_t end = i;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
        t.text = std::string(line.substr(i, end - i));
        i = end;
      }
      tokens.push_back(std::move(t));
    }
    return tokens;
  }

 private:
  std::string_view origin_;
  size_t line_no_;
};

bool IsNumber(std::string_view s) {
  double v;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool IsCount(std::string_view s) {
  unsigned v;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && v > 0;
}

bool IsResource(std::string_view s) {
  try {
    ParseResourceKey(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void CheckArgs(const LineParser& p, ScenarioAction action, const Token& action_token,
               const std::vector<Token>& args) {
  auto arity = [&](size_t min, size_t max) {
    if (args.size() < min || args.size() > max) {
      size_t column = args.size() > max ? args[max].column : action_token.column;
      p.Fail(column, fmt::format("'{}' takes {} argument(s), got {}", action_token.text,
                                 min == max ? fmt::format("{}", min) : fmt::format("{}-{}", min, max),
                                 args.size()));
    }
  };
  auto one_of = [&](const Token& t, std::initializer_list<std::string_view> allowed) {
    for (auto a : allowed) {
      if (t.text == a) return;
    }
    p.Fail(t.column, fmt::format("unexpected '{}'", t.text));
  };
  constexpr size_t kMany = 64;
  switch (action) {
    case ScenarioAction::kDevice:
    case ScenarioAction::kInstall:
      arity(1, 1);
      break;
    case ScenarioAction::kSetMode:
      arity(1, 1);
      if (!DeviceModeFromName(args[0].text)) p.Fail(args[0].column, "unknown mode '" + args[0].text + "'");
      break;
    case ScenarioAction::kSetPermission:
      arity(3, kMany);
      if (!IsResource(args[1].text)) p.Fail(args[1].column, "unknown permission '" + args[1].text + "'");
      if (!ModeTagFromName(args[2].text)) p.Fail(args[2].column, "unknown mode '" + args[2].text + "'");
      if (*ModeTagFromName(args[2].text) != ModeTag::kPseudo && args.size() > 3) {
        p.Fail(args[3].column, "only pseudo takes a value");
      }
      break;
    case ScenarioAction::kSetPseudo:
      arity(2, kMany);
      if (!IsResource(args[0].text)) p.Fail(args[0].column, "unknown permission '" + args[0].text + "'");
      break;
    case ScenarioAction::kNetworkChange:
      arity(1, 1);
      if (!ConnectionTypeFromName(args[0].text)) {
        p.Fail(args[0].column, "unknown connection '" + args[0].text + "'");
      }
      break;
    case ScenarioAction::kWifiOnly:
      arity(1, 1);
      one_of(args[0], {"on", "off"});
      break;
    case ScenarioAction::kMove:
      arity(2, 2);
      for (const auto& a : args) {
        if (!IsNumber(a.text)) p.Fail(a.column, "expected a coordinate, got '" + a.text + "'");
      }
      break;
    case ScenarioAction::kTick:
    case ScenarioAction::kSync:
    case ScenarioAction::kPoll:
      arity(0, 0);
      break;
    case ScenarioAction::kRunApp:
      arity(1, 2);
      if (args.size() == 2 && !IsCount(args[1].text)) p.Fail(args[1].column, "expected a positive count");
      break;
  }
}

}  // namespace

std::string_view ScenarioActionName(ScenarioAction a) {
  for (const auto& [action, name] : kActionNames) {
    if (action == a) return name;
  }
  return "";
}

std::optional<ScenarioAction> ScenarioActionFromName(std::string_view name) {
  for (const auto& [action, n] : kActionNames) {
    if (n == name) return action;
  }
  return std::nullopt;
}

bool ScenarioScript::NeedsCloud() const {
  for (const auto& e : events) {
    if (e.action == ScenarioAction::kSync || e.action == ScenarioAction::kTick ||
        e.action == ScenarioAction::kPoll) {
      return true;
    }
  }
  return false;
}

ScenarioScript ParseScenario(std::string_view text, std::string_view origin) {
  ScenarioScript script;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    LineParser parser(origin, line_no);
    std::vector<Token> tokens = parser.Tokenize(line);
    if (tokens.empty() || tokens[0].text.starts_with('#')) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.size() < 3) parser.Fail(tokens[0].column, "expected '<YYYY-MM-DD HH:MM:SS> <action>'");
    auto at = ParseTimestamp(tokens[0].text + " " + tokens[1].text);
    if (!at) parser.Fail(tokens[0].column, "bad timestamp '" + tokens[0].text + " " + tokens[1].text + "'");
    auto action = ScenarioActionFromName(tokens[2].text);
    if (!action) parser.Fail(tokens[2].column, "unknown action '" + tokens[2].text + "'");
    if (!script.events.empty() && *at < script.events.back().at) {
      parser.Fail(tokens[0].column, "event time goes backwards");
    }
    if (*action == ScenarioAction::kDevice && !script.events.empty()) {
      parser.Fail(tokens[2].column, "'device' must be the first event");
    }
    std::vector<Token> args(tokens.begin() + 3, tokens.end());
    CheckArgs(parser, *action, tokens[2], args);

    ScenarioEvent event{*at, *action, {}, line_no};
    for (auto& a : args) event.args.push_back(std::move(a.text));
    script.events.push_back(std::move(event));
    if (end == text.size()) break;
  }
  return script;
}

ScenarioScript LoadScenario(const std::filesystem::path& path) {
  return ParseScenario(ReadTextFile(path), path.string());
}

}  // namespace centerguard
