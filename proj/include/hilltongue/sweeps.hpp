#pragma once

#include <vector>

#include "hilltongue/floquet.hpp"

namespace hilltongue {

/// Oracle tongue endpoints over an (N, q) grid, stored N-major, q-minor:
/// records[i * q.size() + j] belongs to (Ns[i], qs[j]).
struct TongueGrid {
  std::vector<unsigned> Ns;
  std::vector<double> qs;
  std::vector<TongueRecord> records;

  const TongueRecord& at(std::size_t i, std::size_t j) const {
    return records[i * qs.size() + j];
  }
};

TongueGrid tongue_grid_serial(const Polynomial& f, const Polynomial& g,
                              const std::vector<unsigned>& Ns,
                              const std::vector<double>& qs,
                              const IntegratorSettings& settings = {});

/// Same cells as the serial sweep, one OpenMP task per (N, q). threads <= 0
/// keeps the OpenMP default. The first failing cell in N-major order is
/// rethrown after the loop, so errors match the serial sweep too.
TongueGrid tongue_grid_parallel(const Polynomial& f, const Polynomial& g,
                                const std::vector<unsigned>& Ns,
                                const std::vector<double>& qs,
                                const IntegratorSettings& settings = {},
                                int threads = 0);

/// Discriminant Delta(beta, q) on a rectangular grid, q-major:
/// delta[j * betas.size() + i] is at (qs[j], betas[i]).
struct StabilityChart {
  std::vector<double> qs;
  std::vector<double> betas;
  std::vector<double> delta;
};

StabilityChart stability_chart_serial(const Polynomial& f, const Polynomial& g,
                                      const std::vector<double>& qs,
                                      const std::vector<double>& betas,
                                      const IntegratorSettings& settings = {});

StabilityChart stability_chart_parallel(const Polynomial& f, const Polynomial& g,
                                        const std::vector<double>& qs,
                                        const std::vector<double>& betas,
                                        const IntegratorSettings& settings = {},
                                        int threads = 0);

}  // namespace hilltongue
