#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <omp.h>

#include <cstring>

#include "doctest.h"
#include "hilltongue/errors.hpp"
#include "hilltongue/sweeps.hpp"
#include "hilltongue/tongues.hpp"

using namespace hilltongue;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same(const TongueRecord& a, const TongueRecord& b) {
  return a.N == b.N && same_bits(a.q, b.q) && same_bits(a.beta_minus, b.beta_minus) &&
         same_bits(a.beta_plus, b.beta_plus) && same_bits(a.beta_even, b.beta_even) &&
         same_bits(a.beta_odd, b.beta_odd) && same_bits(a.det_error, b.det_error) &&
         a.half_steps == b.half_steps;
}

const Polynomial f{{0, 0, 1, 1.0 / 18}};
const Polynomial g{{0, 2.0 / 3, 1.0 / 18}};

}  // namespace

TEST_CASE("tongue grid is identical for any thread count") {
  const std::vector<unsigned> Ns = {1, 2, 3};
  const std::vector<double> qs = {0.03, 0.07, 0.12};
  const TongueGrid ref = tongue_grid_serial(f, g, Ns, qs);
  REQUIRE(ref.records.size() == 9);
  CHECK(ref.at(2, 1).N == 3);
  CHECK(ref.at(2, 1).q == 0.07);
  for (int threads : {1, 2, 3, 4}) {
    CAPTURE(threads);
    const TongueGrid par = tongue_grid_parallel(f, g, Ns, qs, {}, threads);
    REQUIRE(par.records.size() == ref.records.size());
    for (std::size_t i = 0; i < ref.records.size(); ++i) CHECK(same(par.records[i], ref.records[i]));
  }
}

TEST_CASE("stability chart is identical for any thread count") {
  const std::vector<double> qs = {0.05, 0.2};
  std::vector<double> betas;
  for (int i = 0; i < 12; ++i) betas.push_back(-0.5 + 0.6 * i);
  const StabilityChart ref = stability_chart_serial(f, g, qs, betas);
  for (int threads : {1, 2, 4}) {
    const StabilityChart par = stability_chart_parallel(f, g, qs, betas, {}, threads);
    REQUIRE(par.delta.size() == ref.delta.size());
    for (std::size_t i = 0; i < ref.delta.size(); ++i) CHECK(same_bits(par.delta[i], ref.delta[i]));
  }
}

TEST_CASE("parallel sweeps report the same first error") {
  IntegratorSettings s;
  s.window_scale = 1e-6;
  std::string serial_msg, parallel_msg;
  try {
    tongue_grid_serial(f, g, {1, 2}, {0.05, 0.1}, s);
  } catch (const BracketNotFound& e) {
    serial_msg = e.what();
  }
  for (int threads : {1, 2, 4}) {
    try {
      tongue_grid_parallel(f, g, {1, 2}, {0.05, 0.1}, s, threads);
    } catch (const BracketNotFound& e) {
      parallel_msg = e.what();
    }
    CHECK_FALSE(serial_msg.empty());
    CHECK(parallel_msg == serial_msg);
  }
}

TEST_CASE("series tables do not depend on the thread count") {
  const auto spec = example4_spec(1, 2, 6);
  omp_set_num_threads(1);
  const auto a = compute_series(spec, 5);
  omp_set_num_threads(4);
  const auto b = compute_series(spec, 5);
  CHECK(a.C == b.C);
  for (unsigned N = 0; N <= 5; ++N) CHECK(a.plus[N].B == b.plus[N].B);
}
