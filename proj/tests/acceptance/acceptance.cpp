// One line per acceptance criterion. 1..10 run in-process through the suite,
// 11 runs the installed CLI end to end and times it.
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sys/wait.h>

#include "toolkit/suite.hpp"

using namespace toolkit;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void line(int id, bool pass, const std::string& title, double secs, const std::string& note = {}) {
  std::printf("%s  criterion %2d  %-28s %8.2fs%s%s\n", pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              note.empty() ? "" : "  ", note.c_str());
  std::fflush(stdout);
}

bool end_to_end() {
  const std::string report = "acceptance_verify_all.json";
  const std::string cmd = std::string("\"") + TOOLKIT_BINARY + "\" verify-all --seed 0 --output " + report +
                          " 2>acceptance_verify_all.log";
  auto t0 = Clock::now();
  int status = std::system(cmd.c_str());
  double secs = since(t0);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  size_t checks = 0, failed = 0;
  try {
    std::ifstream f(report);
    auto j = nlohmann::json::parse(f);
    for (auto& c : j["checks"]) {
      ++checks;
      failed += c["status"] != "pass";
    }
  } catch (const std::exception& e) {
    line(11, false, "verify-all end to end", secs, std::string("unreadable report: ") + e.what());
    return false;
  }
  bool pass = code == 0 && failed == 0 && checks > 0 && secs <= 600;
  line(11, pass, "verify-all end to end", secs,
       "exit " + std::to_string(code) + ", " + std::to_string(checks - failed) + "/" + std::to_string(checks) +
           " checks, limit 600s");
  return pass;
}

}  // namespace

int main() {
  SuiteOptions opts;
  if (const char* t = std::getenv("TOOLKIT_THREADS")) opts.threads = std::max(1, std::atoi(t));
  bool all = true;
  for (int id = 1; id <= kSuiteCriteria; ++id) {
    auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = run_criterion(id, opts);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), {{"exception", false, e.what()}}};
    }
    size_t ok = 0;
    for (auto& c : r.checks) ok += c.pass;
    line(id, r.pass(), r.title, since(t0), std::to_string(ok) + "/" + std::to_string(r.checks.size()) + " checks");
    for (auto& c : r.checks)
      if (!c.pass) std::printf("        failed %s: %s\n", c.name.c_str(), c.detail.c_str());
    all = all && r.pass();
  }
  all = end_to_end() && all;
  return all ? 0 : 1;
}
