#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace permpqc {

struct BenchReport {
  std::string operation;
  std::size_t iterations = 0;
  double mean_us = 0, p50_us = 0, p99_us = 0, min_us = 0, max_us = 0;
  std::string hardware_note;
};

inline std::string cpu_model_note() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find("model name");
    if (pos != std::string::npos) {
      const auto colon = line.find(':');
      if (colon != std::string::npos && colon + 2 <= line.size())
        return line.substr(colon + 2);
    }
  }
  return "unknown cpu";
}

// Times fn once per iteration on one thread and reports latency percentiles.
template <typename Fn>
BenchReport run_bench(std::string operation, std::size_t iterations, Fn&& fn) {
  if (iterations == 0) throw std::invalid_argument("run_bench: iterations must be >= 1");
  std::vector<double> samples;
  samples.reserve(iterations);
  for (std::size_t i = 0; i < iterations; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
  }
  BenchReport report;
  report.operation = std::move(operation);
  report.iterations = iterations;
  report.mean_us = std::accumulate(samples.begin(), samples.end(), 0.0) / double(iterations);
  std::sort(samples.begin(), samples.end());
  report.min_us = samples.front();
  report.max_us = samples.back();
  report.p50_us = samples[(samples.size() - 1) / 2];
  report.p99_us = samples[std::min(samples.size() - 1, (samples.size() * 99) / 100)];
  report.hardware_note = cpu_model_note();
  return report;
}

inline std::string to_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "operation,iterations,mean_us,p50_us,p99_us,min_us,max_us,hardware\n";
  out << r.operation << "," << r.iterations << "," << r.mean_us << "," << r.p50_us << ","
      << r.p99_us << "," << r.min_us << "," << r.max_us << ",\"" << r.hardware_note << "\"\n";
  return out.str();
}

inline std::string to_text(const BenchReport& r) {
  std::ostringstream out;
  out << r.operation << ": " << r.iterations << " iterations on " << r.hardware_note << "\n"
      << "  mean " << r.mean_us << " us, p50 " << r.p50_us << " us, p99 " << r.p99_us
      << " us, min " << r.min_us << " us, max " << r.max_us << " us\n";
  return out.str();
}

}  // namespace permpqc
