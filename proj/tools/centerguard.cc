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

// centerguard: operator entry point for the cloud service, device
// simulations, headless moderation and the reproduction scenarios.

#include <fmt/format.h>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "centerguard/admin.h"
#include "centerguard/cloud_service.h"
#include "centerguard/collector.h"
#include "centerguard/errors.h"
#include "centerguard/http_cloud_client.h"
#include "centerguard/http_server.h"
#include "centerguard/json_io.h"
#include "centerguard/policy_config.h"
#include "centerguard/repro.h"
#include "centerguard/scenario_runner.h"

namespace cg = centerguard;

namespace {

struct GlobalFlags {
  std::string cloud_url = "http://127.0.0.1:8080";
  std::string store = "centerguard-store";
  std::string clock = "virtual";
  std::string apply_delay = "4s";
  std::string backup_time = "09:00";
  std::string admin_token;
  std::string fixtures = CENTERGUARD_FIXTURE_DIR;
  std::string config;
};

cg::Seconds ParseDuration(const std::string& text) {
  size_t used = 0;
  long long value = -1;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
  }
  std::string unit = text.substr(used);
  if (value < 0 || !(unit.empty() || unit == "s" || unit == "m" || unit == "h")) {
    throw cg::Error(cg::ErrorCode::kValidationError, "bad duration '" + text + "' (e.g. 4s, 2m)");
  }
  if (unit == "m") value *= 60;
  if (unit == "h") value *= 3600;
  return cg::Seconds{value};
}

cg::DeviceOptions DeviceOptionsFrom(const GlobalFlags& g) {
  cg::DeviceOptions o;
  o.apply_delay = ParseDuration(g.apply_delay);
  auto tod = cg::ParseTimeOfDay(g.backup_time);
  if (!tod) throw cg::Error(cg::ErrorCode::kValidationError, "bad --backup-time '" + g.backup_time + "' (HH:MM)");
  o.backup_time = *tod;
  return o;
}

cg::PolicyConfig LoadConfig(const GlobalFlags& g) {
  if (!g.config.empty()) return cg::PolicyConfig::Load(g.config);
  auto fallback = std::filesystem::path(g.fixtures) / "config" / "policy_config.json";
  if (std::filesystem::exists(fallback)) return cg::PolicyConfig::Load(fallback);
  return cg::PolicyConfig{};
}

std::optional<std::string> Token(const GlobalFlags& g) {
  if (g.admin_token.empty()) return std::nullopt;
  return g.admin_token;
}

// Loads every policy file in |dir| whose package the knowledge base lacks.
void SeedPolicies(cg::CloudService& cloud, const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    cg::AppPolicy policy = cg::PolicyFromJson(cg::ReadJsonFile(path));
    if (!cloud.GetPolicy(policy.package, std::nullopt)) {
      cloud.PutPolicy(policy);
      std::cout << "seeded policy for " << policy.package << "\n";
    }
  }
}

int CloudServe(const GlobalFlags& g, const std::string& host, int port, const std::string& seed_dir) {
  // Signals are handled by a dedicated thread so shutdown can flush the store.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  // The long-running service stamps records with wall time; --clock only
  // selects how device simulations advance.
  auto clock = std::make_shared<cg::WallClock>(std::chrono::floor<cg::Seconds>(std::chrono::system_clock::now()));
  cg::CloudService cloud(clock, std::filesystem::path(g.store), LoadConfig(g).weights);
  if (!seed_dir.empty()) SeedPolicies(cloud, seed_dir);
  auto server = cg::MakeCloudServer(cloud, Token(g));
  int bound = server->Bind(host, port);
  if (!Token(g)) std::cerr << "warning: no admin token configured; admin endpoints are open\n";
  std::cout << fmt::format("listening on http://{}:{}", host, bound) << std::endl;

  std::thread([&signals, &server] {
    int sig = 0;
    sigwait(&signals, &sig);
    server->Stop();
  }).detach();
  server->Serve();
  cloud.Flush();
  std::cout << "stopped; store flushed" << std::endl;
  return 0;
}

int DeviceRun(const GlobalFlags& g, const std::string& scenario_path, const std::string& report_path,
              const std::string& audit_path, const std::string& collector_url, bool use_cloud) {
  cg::ScenarioScript script = cg::LoadScenario(scenario_path);
  auto kind = cg::ClockKindFromName(g.clock);
  if (!kind) throw cg::Error(cg::ErrorCode::kValidationError, "--clock is virtual or wall");

  cg::PolicyConfig config = LoadConfig(g);
  cg::RunnerOptions options;
  options.clock = *kind;
  options.device = DeviceOptionsFrom(g);
  options.base_dir = std::filesystem::path(scenario_path).parent_path();
  if (options.base_dir.empty()) options.base_dir = ".";
  options.fixture_dir = g.fixtures;
  options.default_device = std::filesystem::path(g.fixtures) / "devices" / "default_device.json";
  options.weights = config.weights;
  options.pseudo_defaults = config.pseudo_defaults;

  std::unique_ptr<cg::HttpCloudClient> cloud;
  if (use_cloud && script.NeedsCloud()) cloud = std::make_unique<cg::HttpCloudClient>(g.cloud_url);
  std::unique_ptr<cg::HttpCollectorClient> collector;
  if (!collector_url.empty()) collector = std::make_unique<cg::HttpCollectorClient>(collector_url);

  nlohmann::json report = cg::RunScenario(script, options, cloud.get(), collector.get());
  if (!audit_path.empty()) {
    std::string lines;
    for (const auto& record : report["audit"]) lines += record.dump() + "\n";
    cg::WriteTextFile(audit_path, lines);
  }
  std::string text = report.dump(2) + "\n";
  if (!report_path.empty()) {
    cg::WriteTextFile(report_path, text);
    std::cout << fmt::format("{} events, {} collector rows, final score {} ({})\n", report["events"].size(),
                             report["collector_rows"].size(), report["final_score"]["value"].get<int>(),
                             report["final_score"]["band"].get<std::string>());
  } else {
    std::cout << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CenterGuard: privacy mediation for simulated devices, with a cloud decision service"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--cloud-url", g.cloud_url, "Cloud service base URL")->envname("CENTERGUARD_CLOUD_URL");
  app.add_option("--store", g.store, "Cloud store directory")->envname("CENTERGUARD_STORE");
  app.add_option("--clock", g.clock, "virtual or wall")
      ->envname("CENTERGUARD_CLOCK")
      ->check(CLI::IsMember({"virtual", "wall"}));
  app.add_option("--apply-delay", g.apply_delay, "Per-app policy apply delay (e.g. 4s)")
      ->envname("CENTERGUARD_APPLY_DELAY");
  app.add_option("--backup-time", g.backup_time, "Daily backup time HH:MM")->envname("CENTERGUARD_BACKUP_TIME");
  app.add_option("--admin-token", g.admin_token, "Admin token for moderation endpoints")
      ->envname("CENTERGUARD_ADMIN_TOKEN");
  app.add_option("--fixtures", g.fixtures, "Fixture directory")->envname("CENTERGUARD_FIXTURES");
  app.add_option("--config", g.config, "Policy config JSON (permissions, risk weights, pseudo defaults)")
      ->envname("CENTERGUARD_CONFIG");

  int exit_code = 0;

  // cloud serve
  auto* cloud_cmd = app.add_subcommand("cloud", "Cloud decision service")->require_subcommand(1);
  auto* serve = cloud_cmd->add_subcommand("serve", "Serve the HTTP/JSON API");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "Bind address");
  std::string seed_dir;
  serve->add_option("--port", port, "Port (0 picks a free one)")->envname("CENTERGUARD_PORT");
  serve->add_option("--seed-policies", seed_dir, "Load policy files for packages not yet known")
      ->check(CLI::ExistingDirectory);
  serve->callback([&] { exit_code = CloudServe(g, host, port, seed_dir); });

  // device run
  auto* device_cmd = app.add_subcommand("device", "Device simulation")->require_subcommand(1);
  auto* run = device_cmd->add_subcommand("run", "Run a scenario script");
  std::string scenario_path, report_path, audit_path, collector_url;
  bool offline = false;
  run->add_option("scenario", scenario_path, "Scenario script")->required()->check(CLI::ExistingFile);
  run->add_option("--report", report_path, "Write the JSON report here instead of stdout");
  run->add_option("--audit-out", audit_path, "Write the audit log as JSONL");
  run->add_option("--collector-url", collector_url, "Remote collector for exfiltrated rows");
  run->add_flag("--offline", offline, "Run without a cloud (sync/tick/poll fail as unreachable)");
  run->callback([&] { exit_code = DeviceRun(g, scenario_path, report_path, audit_path, collector_url, !offline); });

  // admin
  auto* admin = app.add_subcommand("admin", "Headless moderation")->require_subcommand(1);
  auto* list = admin->add_subcommand("list", "List consultations (Fig. 8 columns)");
  std::string status_filter;
  list->add_option("--status", status_filter, "Only this status (e.g. NotSent)");
  list->callback([&] {
    std::optional<cg::ConsultationStatus> status;
    if (!status_filter.empty()) {
      status = cg::StatusFromName(status_filter);
      if (!status) throw cg::Error(cg::ErrorCode::kValidationError, "unknown status '" + status_filter + "'");
    }
    cg::HttpCloudClient cloud(g.cloud_url, Token(g));
    std::cout << cg::RenderConsultationTable(cloud.ListConsultations(status), g.cloud_url);
  });

  auto* decide = admin->add_subcommand("decide", "Decide a consultation from a policy file");
  std::string decide_id, policy_file, manifest_file;
  decide->add_option("id", decide_id, "Consultation id")->required();
  decide->add_option("policy_file", policy_file, "Policy JSON")->required()->check(CLI::ExistingFile);
  decide->add_option("--manifest", manifest_file, "Manifest to validate against")->check(CLI::ExistingFile);
  decide->callback([&] {
    cg::AppPolicy policy = cg::PolicyFromJson(cg::ReadJsonFile(policy_file));
    std::optional<cg::AppManifest> manifest;
    if (!manifest_file.empty()) {
      manifest = cg::LoadManifest(manifest_file);
    } else {
      manifest = cg::FindManifestForPackage(std::filesystem::path(g.fixtures) / "manifests", policy.package);
    }
    cg::HttpCloudClient cloud(g.cloud_url, Token(g));
    cg::Consultation c = cg::DecideChecked(cloud, decide_id, policy, manifest);
    std::cout << fmt::format("{} {} {}\n", c.id, c.package, cg::StatusName(c.status));
  });

  auto* review = admin->add_subcommand("review", "Mark a consultation Under Review");
  std::string review_id;
  review->add_option("id", review_id, "Consultation id")->required();
  review->callback([&] {
    cg::HttpCloudClient cloud(g.cloud_url, Token(g));
    cg::Consultation c = cloud.MarkUnderReview(review_id);
    std::cout << fmt::format("{} {} {}\n", c.id, c.package, cg::StatusName(c.status));
  });

  auto* push = admin->add_subcommand("push-message", "Send a message to a device");
  std::string push_imei, push_text;
  push->add_option("imei", push_imei, "Target device IMEI")->required();
  push->add_option("text", push_text, "Message text")->required();
  push->callback([&] {
    cg::HttpCloudClient cloud(g.cloud_url, Token(g));
    cg::Notification n = cloud.PushMessage(push_imei, push_text);
    std::cout << fmt::format("queued message #{} for {}\n", n.sequence, n.target_imei);
  });

  // repro
  auto* repro = app.add_subcommand("repro", "Run a reproduction and diff against its fixture");
  std::string figure;
  std::optional<size_t> runs, calls;
  bool as_json = false;
  repro->add_option("figure", figure, "9, 11, 12, 13, 14 or table3")
      ->required()
      ->check(CLI::IsMember({"9", "11", "12", "13", "14", "table3"}));
  repro->add_option("--runs", runs, "table3: override the run count");
  repro->add_option("--calls", calls, "table3: override the workload size");
  repro->add_flag("--json", as_json, "Print the report as JSON");
  repro->callback([&] {
    cg::ReproReport report = cg::RunRepro(figure, {g.fixtures, runs, calls});
    if (as_json) {
      std::cout << cg::ReproReportToJson(report).dump(2) << "\n";
    } else {
      std::cout << report.Render();
    }
    exit_code = report.pass() ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const cg::Error& e) {
    std::cerr << fmt::format("error: {}: {}\n", cg::ErrorCodeName(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
