#include "hilltongue/sweeps.hpp"

#include <omp.h>

#include <exception>
#include <optional>

namespace hilltongue {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int thread_count(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Every cell of a grid needs the per-q problem; build those first.
std::vector<std::optional<NumericProblem>> problems_serial(
    const Polynomial& f, const Polynomial& g, const std::vector<double>& qs,
    const IntegratorSettings& settings) {
  std::vector<std::optional<NumericProblem>> out(qs.size());
  for (std::size_t j = 0; j < qs.size(); ++j) out[j].emplace(f, g, qs[j], settings);
  return out;
}

std::vector<std::optional<NumericProblem>> problems_parallel(
    const Polynomial& f, const Polynomial& g, const std::vector<double>& qs,
    const IntegratorSettings& settings, int threads) {
  std::vector<std::optional<NumericProblem>> out(qs.size());
  std::vector<std::exception_ptr> errors(qs.size());
  const long n = static_cast<long>(qs.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(threads))
  for (long j = 0; j < n; ++j) {
    try {
      out[j].emplace(f, g, qs[j], settings);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

}  // namespace

TongueGrid tongue_grid_serial(const Polynomial& f, const Polynomial& g,
                              const std::vector<unsigned>& Ns,
                              const std::vector<double>& qs,
                              const IntegratorSettings& settings) {
  const auto problems = problems_serial(f, g, qs, settings);
  TongueGrid grid{Ns, qs, std::vector<TongueRecord>(Ns.size() * qs.size())};
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    for (std::size_t j = 0; j < qs.size(); ++j) {
      grid.records[i * qs.size() + j] = tongue_boundaries(*problems[j], Ns[i]);
    }
  }
  return grid;
}

TongueGrid tongue_grid_parallel(const Polynomial& f, const Polynomial& g,
                                const std::vector<unsigned>& Ns,
                                const std::vector<double>& qs,
                                const IntegratorSettings& settings, int threads) {
  const auto problems = problems_parallel(f, g, qs, settings, threads);
  const std::size_t nq = qs.size();
  const long cells = static_cast<long>(Ns.size() * nq);
  TongueGrid grid{Ns, qs, std::vector<TongueRecord>(cells)};
  std::vector<std::exception_ptr> errors(cells);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(threads))
  for (long c = 0; c < cells; ++c) {
    try {
      grid.records[c] = tongue_boundaries(*problems[c % nq], Ns[c / nq]);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return grid;
}

StabilityChart stability_chart_serial(const Polynomial& f, const Polynomial& g,
                                      const std::vector<double>& qs,
                                      const std::vector<double>& betas,
                                      const IntegratorSettings& settings) {
  const auto problems = problems_serial(f, g, qs, settings);
  StabilityChart chart{qs, betas, std::vector<double>(qs.size() * betas.size())};
  for (std::size_t j = 0; j < qs.size(); ++j) {
    for (std::size_t i = 0; i < betas.size(); ++i) {
      chart.delta[j * betas.size() + i] = discriminant(*problems[j], betas[i]);
    }
  }
  return chart;
}

StabilityChart stability_chart_parallel(const Polynomial& f, const Polynomial& g,
                                        const std::vector<double>& qs,
                                        const std::vector<double>& betas,
                                        const IntegratorSettings& settings, int threads) {
  const auto problems = problems_parallel(f, g, qs, settings, threads);
  const std::size_t nb = betas.size();
  const long cells = static_cast<long>(qs.size() * nb);
  StabilityChart chart{qs, betas, std::vector<double>(cells)};
  std::vector<std::exception_ptr> errors(cells);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(threads))
  for (long c = 0; c < cells; ++c) {
    try {
      chart.delta[c] = discriminant(*problems[c / nb], betas[c % nb]);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return chart;
}

}  // namespace hilltongue
