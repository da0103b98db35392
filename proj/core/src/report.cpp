#include "ptower/report.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "ptower/ring.hpp"

namespace ptower {

void RunConfig::validate() const {
  check(is_prime(p), "BadArgument", "p must be prime");
  check(N >= 1 && N % p != 0, "BadArgument", "N must be coprime to p");
  check(s >= 1, "BadArgument", "s >= 1");
  RingCtx probe(p, s);  // enforces p^s < 2^63
  (void)probe;
  check(r_max >= 1, "BadArgument", "r_max >= 1");
}

int Report::fails() const {
  int n = 0;
  for (auto& c : checks)
    if (c.status == "FAIL" || c.status == "ERROR") ++n;
  return n;
}

namespace {

std::string jesc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string Report::json(bool with_timings) const {
  std::ostringstream os;
  os << "{\n  \"format_version\": " << kFormatVersion << ",\n";
  os << "  \"config\": {\"N\": " << config.N << ", \"p\": " << config.p << ", \"s\": " << config.s
     << ", \"r_max\": " << config.r_max << ", \"weights\": [";
  for (size_t i = 0; i < config.weight_sweep.size(); ++i)
    os << (i ? ", " : "") << config.weight_sweep[i];
  os << "]},\n  \"checks\": [\n";
  for (size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    os << "    {\"name\": \"" << jesc(c.name) << "\", \"suite\": \"" << jesc(c.suite)
       << "\", \"status\": \"" << c.status << "\"";
    if (!c.detail.empty()) os << ", \"detail\": \"" << jesc(c.detail) << "\"";
    for (auto& [k, v] : c.data) os << ", \"" << jesc(k) << "\": \"" << jesc(v) << "\"";
    if (with_timings) os << ", \"ms\": " << (long long)c.ms;
    os << "}" << (i + 1 < checks.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"fails\": " << fails() << "\n}\n";
  return os.str();
}

void Report::write_atomic(const std::string& path) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    check(f.good(), "IoError", "cannot open " + tmp);
    f << json();
  }
  check(std::rename(tmp.c_str(), path.c_str()) == 0, "IoError", "atomic rename to " + path);
}

std::vector<std::string> suite_names() {
  return {"lattice", "ordinary", "hecke", "branching", "control", "twist", "euler"};
}

Report run_suite(const std::string& suite, const RunConfig& config) {
  config.validate();
  Report rep;
  rep.config = config;
  std::vector<const CheckSpec*> todo;
  for (auto& spec : check_registry())
    if (suite == "all" || spec.suite == suite) todo.push_back(&spec);
  check(suite == "all" || !todo.empty(), "BadArgument", "unknown suite: " + suite);
  rep.checks.resize(todo.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= todo.size()) break;
      auto t0 = std::chrono::steady_clock::now();
      CheckResult res;
      try {
        res = todo[i]->run(config);
      } catch (const Error& e) {
        res.status = "ERROR";
        res.detail = e.what();
      } catch (const std::exception& e) {
        res.status = "ERROR";
        res.detail = e.what();
      }
      res.name = todo[i]->name;
      res.suite = todo[i]->suite;
      res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
      rep.checks[i] = std::move(res);
    }
  };
  int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rep;
}

}  // namespace ptower
