#include "hilltongue/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "hilltongue/errors.hpp"
#include "hilltongue/hillseries.hpp"
#include "hilltongue/lindstedt.hpp"
#include "hilltongue/tongues.hpp"

namespace hilltongue {

Rational RationalSampler::any() {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return ratio(num(rng_), den(rng_));
}

Rational RationalSampler::nonzero() {
  for (;;) {
    Rational r = any();
    if (r != 0) return r;
  }
}

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  // Records a failure with its explanation; later failures are appended.
  void fail(const std::string& what) {
    if (!passed) detail << "; ";
    if (passed) detail.str("");
    passed = false;
    detail << what;
  }
  void note(const std::string& what) {
    if (passed) detail << (detail.tellp() > 0 ? "; " : "") << what;
  }
};

CheckResult run_check(const std::string& id, const std::string& name,
                      const std::string& anchor, double budget,
                      const std::function<void(Outcome&)>& body) {
  CheckResult r{id, name, anchor, false, "", 0.0, budget};
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = out.passed;
  r.detail = out.detail.str();
  if (budget > 0 && r.seconds > budget) {
    r.passed = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("over the time budget");
  }
  return r;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string str(const Rational& r) { return to_string(r); }

std::vector<unsigned> range(unsigned lo, unsigned hi) {
  std::vector<unsigned> v;
  for (unsigned n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

std::vector<double> geometric(double a, double b, int count) {
  std::vector<double> q;
  for (int i = 0; i < count; ++i) q.push_back(a * std::pow(b / a, double(i) / (count - 1)));
  q.back() = b;
  return q;
}

TongueGrid oracle_grid(const ProblemSpec& spec, const std::vector<unsigned>& Ns,
                       const std::vector<double>& qs, const IntegratorSettings& settings,
                       int threads) {
  return tongue_grid_parallel(Polynomial::from_taylor(spec.osc.alpha),
                              Polynomial::from_taylor(spec.coupling.gamma), Ns, qs,
                              settings, threads);
}

// First n >= 1 where the two branches differ: the order of L_N.
std::optional<unsigned> splitting_order(const EigenBranch& plus, const EigenBranch& minus) {
  for (unsigned n = 1; n < plus.B.size(); ++n) {
    if (plus.B[n] != minus.B[n]) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Structural checks shared by the config suite and the acceptance criteria.

void expect_branch_structure(Outcome& out, const EigenBranch& plus, const EigenBranch& minus,
                             bool generalized, const std::string& tag) {
  const unsigned N = plus.N();
  const int n0 = static_cast<int>(N);
  for (const EigenBranch* b : {&plus, &minus}) {
    const bool is_plus = b->parity() == Parity::Plus;
    const Rational sgn = is_plus ? 1 : -1;
    if (N > 0 && (b->z(n0, 0) != 1 || b->z(-n0, 0) != sgn)) {
      out.fail(tag + ": bad normalization");
    }
    for (unsigned n = 0; n <= b->order(); ++n) {
      for (int k = -b->kmax(); k <= b->kmax(); ++k) {
        const Rational& z = b->z(k, n);
        if (n >= 1 && (k == n0 || k == -n0) && z != 0) {
          out.fail(tag + ": z(+-N, " + std::to_string(n) + ") != 0");
        }
        if (N > 0 && b->z(-k, n) != sgn * z) {
          out.fail(tag + ": mirror symmetry broken at k = " + std::to_string(k));
          return;
        }
        if (z == 0) continue;
        if (N > 0 && (k - n0) % 2 != 0) {
          out.fail(tag + ": odd k - N entry at (" + std::to_string(k) + ", " +
                   std::to_string(n) + ")");
          return;
        }
        if (generalized && !in_support_cone(k, n, N)) {
          out.fail(tag + ": entry outside the support cones at (" + std::to_string(k) +
                   ", " + std::to_string(n) + ")");
          return;
        }
      }
    }
  }
  if (!generalized || N == 0) return;
  for (unsigned n = 0; n <= plus.order(); ++n) {
    for (int k = 2 * static_cast<int>(n) - n0 + 1; k <= plus.kmax(); ++k) {
      if (plus.z(k, n) != minus.z(k, n)) {
        out.fail(tag + ": branches differ below the splitting line at (" +
                 std::to_string(k) + ", " + std::to_string(n) + ")");
        return;
      }
    }
    if (n < N && plus.Lambda[n] != minus.Lambda[n]) {
      out.fail(tag + ": Lambda_" + std::to_string(n) + " differs before order N");
    }
  }
}

void expect_lindstedt(Outcome& out, const LindstedtExpansion& lin, const OscillatorSpec& osc) {
  const unsigned M = lin.order;
  if (lin.u[1] != CosPoly::harmonic(1)) out.fail("u_1 != cos 2tau");
  for (unsigned n = 1; n <= M; ++n) {
    const CosPoly lhs = second_derivative(lin.u[n]) + Rational(4) * lin.u[n];
    if (lhs != source_term(lin, n)) out.fail("u_" + std::to_string(n) + " residual");
    if (lin.u[n].degree() > n) out.fail("deg u_" + std::to_string(n) + " > 2n");
    if (n >= 2 && lin.u[n].at_zero() != 0) out.fail("u_" + std::to_string(n) + "(0) != 0");
  }
  const RationalSeries unit = series_mul(lin.omega2, lin.kappa, M);
  for (unsigned n = 0; n <= M; ++n) {
    if (unit[n] != (n == 0 ? 1 : 0)) out.fail("Omega * kappa is not the unit series");
  }
  const RationalSeries A = diagonal_A(osc);
  for (unsigned n = 1; n <= M; ++n) {
    if (A[n] != project(lin.u[n], n) / 2) out.fail("A_" + std::to_string(n) + " mismatch");
  }
}

// ---------------------------------------------------------------------------
// Oracle helpers.

struct GapFit {
  double K = 0.0;
  bool ok = true;
  std::string detail;
};

// |beta_oracle - series| <= K q^{M+1} + noise, K fitted on the two largest q.
GapFit series_gap(const TongueGrid& grid, const SeriesTables& t) {
  GapFit fit;
  const unsigned M = t.spec.order();
  const std::size_t nq = grid.qs.size();
  for (std::size_t i = 0; i < grid.Ns.size(); ++i) {
    const unsigned N = grid.Ns[i];
    std::vector<double> gaps(nq), noise(nq);
    for (std::size_t j = 0; j < nq; ++j) {
      const auto& r = grid.at(i, j);
      const double q = grid.qs[j];
      const double ge = std::abs(r.beta_even - evaluate_branch(t.plus[N], q));
      const double go = std::abs(r.beta_odd - evaluate_branch(t.minus[N], q));
      gaps[j] = std::max(ge, go);
      noise[j] = 1e-12 * std::max(1.0, std::abs(r.beta_plus));
    }
    double K = 0.0;
    for (std::size_t j = nq >= 2 ? nq - 2 : 0; j < nq; ++j) {
      K = std::max(K, gaps[j] / std::pow(grid.qs[j], M + 1.0));
    }
    fit.K = std::max(fit.K, K);
    if (!std::isfinite(K)) {
      fit.ok = false;
      fit.detail = "N = " + std::to_string(N) + ": remainder constant diverges";
      continue;
    }
    for (std::size_t j = 0; j < nq; ++j) {
      const double bound = 2.0 * K * std::pow(grid.qs[j], M + 1.0) + noise[j];
      if (gaps[j] > bound) {
        fit.ok = false;
        fit.detail = "N = " + std::to_string(N) + ", q = " + fmt(grid.qs[j]) + ": gap " +
                     fmt(gaps[j]) + " > " + fmt(bound);
      }
    }
  }
  return fit;
}

std::vector<TongueRecord> column(const TongueGrid& grid, std::size_t i) {
  std::vector<TongueRecord> v;
  for (std::size_t j = 0; j < grid.qs.size(); ++j) v.push_back(grid.at(i, j));
  return v;
}

// Tongues left open by a Lame structure of index n: with A = 4 h^2 the
// potential has period pi/h in tau, so only N = h, 2h, ..., n h survive.
bool lame_open(unsigned N, unsigned n, unsigned h) {
  return N % h == 0 && N / h >= 1 && N / h <= n;
}

unsigned lame_harmonic(const Rational& A) {
  const double h = std::sqrt(to_double(A) / 4.0);
  return static_cast<unsigned>(std::lround(h));
}

}  // namespace

OracleAudit audit_records(const ProblemSpec& spec, const std::vector<TongueRecord>& records,
                          const IntegratorSettings& settings) {
  OracleAudit audit;
  std::map<double, NumericProblem> problems;
  for (const auto& r : records) {
    auto it = problems.find(r.q);
    if (it == problems.end()) it = problems.emplace(r.q, numeric_problem(spec, r.q, settings)).first;
    const NumericProblem& p = it->second;
    IntegratorSettings doubled = settings;
    doubled.forced_steps = 2 * r.half_steps;
    const TongueRecord fine = tongue_boundaries(p.with_settings(doubled), r.N);
    audit.max_endpoint_change =
        std::max({audit.max_endpoint_change, std::abs(fine.beta_even - r.beta_even),
                  std::abs(fine.beta_odd - r.beta_odd)});
    for (double beta : {r.beta_even, r.beta_odd}) {
      const Mat2 m = monodromy(p, beta, r.half_steps);
      audit.max_det_error = std::max(audit.max_det_error, std::abs(m.det() - 1.0));
    }
    audit.max_det_error = std::max(audit.max_det_error, r.det_error);
    ++audit.records;
  }
  return audit;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_config(const RunConfig& config, int threads) {
  std::vector<CheckResult> out;
  const ProblemSpec& spec = config.spec;
  const unsigned M = spec.order();
  const unsigned Nmax = config.n_max;
  std::optional<SeriesTables> tables;
  std::string series_error;
  try {
    tables = compute_series(spec, Nmax);
  } catch (const std::exception& e) {
    series_error = e.what();
  }
  auto with_tables = [&](Outcome& o) -> const SeriesTables* {
    if (!tables) o.fail("series failed: " + series_error);
    return tables ? &*tables : nullptr;
  };

  out.push_back(run_check("INV-L1", "Lindstedt recursion closes", "secular-term removal", 0,
                          [&](Outcome& o) {
                            if (const auto* t = with_tables(o)) {
                              expect_lindstedt(o, t->lin, spec.osc);
                              o.note("u_1..u_" + std::to_string(M) + " re-substituted");
                            }
                          }));

  out.push_back(run_check(
      "INV-H1", "composed coefficients are generalized Mathieu", "degree of G_n", 0,
      [&](Outcome& o) {
        if (const auto* t = with_tables(o)) {
          const auto chk = check_generalized_mathieu(t->G);
          if (!chk.generalized_mathieu) {
            o.fail("G_" + std::to_string(chk.n) + " carries cos(2*" + std::to_string(chk.k) +
                   " tau)");
          }
          const RationalSeries d = diagonal_G(spec.osc, spec.coupling);
          if (d != diagonal_of(t->G)) o.fail("diagonal recursion differs from composition");
        }
        // Handcrafted G_1 = cos 4tau: the checker must flag (1, 2) and the
        // second tongue must then split at first order.
        std::vector<CosPoly> raw(3);
        raw[1] = CosPoly::harmonic(2);
        const auto demo = HillCoefficientSeries::from_coefficients(raw);
        const auto chk = check_generalized_mathieu(demo);
        const Rational split = eigen_series(demo, 2, Parity::Plus).B[1] -
                               eigen_series(demo, 2, Parity::Minus).B[1];
        if (chk.generalized_mathieu || chk.n != 1 || chk.k != 2 || chk.predicted_order != 1u ||
            split == 0) {
          o.fail("handcrafted cos 4tau series not flagged");
        } else {
          o.note("cos 4tau demo flagged at (1, 2), tongue 2 splits by " + str(split) + " q");
        }
      }));

  out.push_back(run_check("INV-H2", "eigenvector tables respect support and symmetry",
                          "support cones and region of coincidence", 0, [&](Outcome& o) {
                            if (const auto* t = with_tables(o)) {
                              for (unsigned N = 0; N <= Nmax; ++N) {
                                expect_branch_structure(o, t->plus[N], t->minus[N], true,
                                                        "N = " + std::to_string(N));
                              }
                            }
                          }));

  out.push_back(run_check(
      "INV-H3", "leading coefficient by two routes", "C_N recursion on the diagonal", 0,
      [&](Outcome& o) {
        if (const auto* t = with_tables(o)) {
          const RationalSeries d = diagonal_G(spec.osc, spec.coupling);
          for (unsigned N = 1; N <= Nmax; ++N) {
            const Rational fast = leading_coefficient_fast(d, N);
            const Rational full = t->plus[N].B[N] - t->minus[N].B[N];
            if (fast != t->C[N] || full != t->C[N]) {
              o.fail("N = " + std::to_string(N) + ": fast " + str(fast) + " vs " +
                     str(t->C[N]));
            }
          }
        }
      }));

  out.push_back(run_check(
      "INV-H4", "first-order coefficients", "first nonzero coupling order", 0,
      [&](Outcome& o) {
        const auto* t = with_tables(o);
        if (!t) return;
        unsigned K = 0;
        for (const auto& [k, v] : spec.coupling.gamma) {
          if (v != 0) {
            K = k;
            break;
          }
        }
        if (K == 0) {
          for (unsigned N = 1; N <= Nmax; ++N) {
            if (t->C[N] != 0) o.fail("g = 0 but C_" + std::to_string(N) + " != 0");
          }
          o.note("g = 0: every C_N vanishes");
          return;
        }
        const Rational gK = coefficient(spec.coupling.gamma, K);
        for (unsigned N = 0; N <= Nmax; ++N) {
          for (unsigned n = 1; n < K && n <= M; ++n) {
            if (t->plus[N].Lambda[n] != 0 || t->minus[N].Lambda[n] != 0) {
              o.fail("Lambda_" + std::to_string(n) + " != 0 below the first order");
            }
          }
          if (K > M || N > K || N == 0) continue;
          const CosPoly& GK = t->G.G[K];
          const Rational half = GK[N] / 2;
          if (t->plus[N].Lambda[K] != -GK[0] - half ||
              t->minus[N].Lambda[K] != -GK[0] + half) {
            o.fail("Lambda_K(" + std::to_string(N) + ") mismatch");
          }
          if (t->plus[N].Lambda[K] - t->minus[N].Lambda[K] !=
              first_order_coefficient(gK, K, N)) {
            o.fail("C_{K,N} mismatch at N = " + std::to_string(N));
          }
        }
        o.note("K = " + std::to_string(K));
      }));

  out.push_back(run_check(
      "INV-H5", "zero-energy boundary second coefficient", "boundary of the unbounded region",
      0, [&](Outcome& o) {
        const auto* t = with_tables(o);
        if (!t) return;
        if (M < 2) {
          o.note("order < 2: skipped");
          return;
        }
        const Rational a2 = coefficient(spec.osc.alpha, 2);
        const Rational g1 = coefficient(spec.coupling.gamma, 1);
        const Rational g2 = coefficient(spec.coupling.gamma, 2);
        const Rational want = g1 * (a2 - g1) / 8 - g2 / 2;
        if (t->plus[0].B[2] != want) o.fail("B_2^+(0) = " + str(t->plus[0].B[2]));
      }));

  out.push_back(run_check(
      "INV-H6", "odd f with even g closes odd tongues", "parity of the coefficients", 0,
      [&](Outcome& o) {
        const auto* t = with_tables(o);
        if (!t) return;
        bool odd_f = true, even_g = true;
        for (const auto& [k, v] : spec.osc.alpha) odd_f &= v == 0 || k % 2 == 1;
        for (const auto& [k, v] : spec.coupling.gamma) even_g &= v == 0 || k % 2 == 0;
        if (!odd_f || !even_g) {
          o.note("not applicable");
          return;
        }
        for (unsigned N = 1; N <= Nmax; N += 2) {
          if (t->plus[N].B != t->minus[N].B) o.fail("N = " + std::to_string(N) + " splits");
        }
      }));

  out.push_back(run_check(
      "INV-T1", "shape verdicts", "trumpet and horn classification", 0, [&](Outcome& o) {
        const auto* t = with_tables(o);
        if (!t) return;
        std::string verdicts;
        for (unsigned N = 1; N <= Nmax; ++N) {
          const ShapeVerdict v = classify_shape(t->plus[N], t->minus[N]);
          verdicts += (N > 1 ? " " : "") + to_string(v.classification);
          EigenBranch p = t->plus[N], m = t->minus[N];
          for (auto& b : p.B) b *= ratio(7, 3);
          for (auto& b : m.B) b *= ratio(7, 3);
          if (classify_shape(p, m).classification != v.classification) {
            o.fail("verdict changes under positive scaling at N = " + std::to_string(N));
          }
        }
        if (coefficient(spec.coupling.gamma, 1) != 0 &&
            classify_shape(t->plus[1], t->minus[1]).classification != Shape::Trumpet) {
          o.fail("gamma_1 != 0 but the first tongue is not a trumpet");
        }
        o.note(verdicts);
      }));

  if (config.wants("coexist")) {
    out.push_back(run_check(
        "INV-T2", "Lame structure", "coexistence residual", 0, [&](Outcome& o) {
          const auto* t = with_tables(o);
          if (!t) return;
          const auto rep = coexistence_check(spec.osc, spec.coupling, t->lin);
          if (!rep.detected) {
            o.fail("residual norm " + str(rep.residual_norm));
            return;
          }
          o.note("A = " + str(rep.A) + ", mu = " + str(rep.mu) + ", n = " +
                 (rep.n_ince ? std::to_string(*rep.n_ince) : std::string("none")));
          if (!rep.n_ince) return;
          const unsigned h = lame_harmonic(rep.A);
          const TongueGrid g = oracle_grid(spec, range(1, Nmax), {0.1}, config.settings,
                                           threads);
          for (std::size_t i = 0; i < g.Ns.size(); ++i) {
            const unsigned N = g.Ns[i];
            const double L = std::abs(g.at(i, 0).length);
            if (!lame_open(N, *rep.n_ince, h) && L > kNumericallyZero) {
              o.fail("L_" + std::to_string(N) + "(0.1) = " + fmt(L) + " above the floor");
            }
          }
        }));
  }

  const bool oracle = config.wants("tongues") || config.wants("order");
  if (oracle) {
    std::optional<TongueGrid> grid;
    std::string grid_error;
    try {
      grid = oracle_grid(spec, range(1, Nmax), config.q_grid, config.settings, threads);
    } catch (const std::exception& e) {
      grid_error = e.what();
    }
    auto with_grid = [&](Outcome& o) -> const TongueGrid* {
      if (!grid) o.fail("oracle failed: " + grid_error);
      return grid ? &*grid : nullptr;
    };
    out.push_back(run_check(
        "INV-F1", "oracle endpoints are stable", "Floquet discriminant", 0, [&](Outcome& o) {
          const auto* g = with_grid(o);
          if (!g) return;
          double res = 0;
          for (const auto& r : g->records) res = std::max({res, r.residual_even, r.residual_odd});
          const OracleAudit a = audit_records(spec, g->records, config.settings);
          if (a.max_det_error > 1e-9) o.fail("|det - 1| = " + fmt(a.max_det_error));
          if (a.max_endpoint_change > 1e-9) {
            o.fail("step doubling moves an endpoint by " + fmt(a.max_endpoint_change));
          }
          if (res > 1e-9) o.fail("|Delta - sigma| = " + fmt(res));
          o.note("det " + fmt(a.max_det_error) + ", shift " + fmt(a.max_endpoint_change) +
                 ", residual " + fmt(res));
        }));
    out.push_back(run_check(
        "INV-F2", "oracle agrees with the truncated series", "perturbation series of the "
        "endpoints", 0, [&](Outcome& o) {
          const auto* g = with_grid(o);
          const auto* t = with_tables(o);
          if (!g || !t) return;
          const GapFit fit = series_gap(*g, *t);
          if (!fit.ok) o.fail(fit.detail);
          o.note("K = " + fmt(fit.K));
        }));
    out.push_back(run_check(
        "INV-F3", "energy is conserved along the orbit", "period of the oscillator", 0,
        [&](Outcome& o) {
          double drift = 0;
          for (double q : config.q_grid) {
            const NumericProblem p = numeric_problem(spec, q, config.settings);
            const unsigned steps = select_steps(p, 1.0);
            drift = std::max(drift, propagate(p, 1.0, p.period(), 2 * steps).energy_drift);
          }
          if (drift > 1e-10) o.fail("relative drift " + fmt(drift));
          o.note("relative drift " + fmt(drift));
        }));
    if (config.wants("order")) {
      out.push_back(run_check(
          "INV-T3", "tongue length order", "leading power of the tongue length", 0,
          [&](Outcome& o) {
            const auto* g = with_grid(o);
            const auto* t = with_tables(o);
            if (!g || !t) return;
            for (std::size_t i = 0; i < g->Ns.size(); ++i) {
              const unsigned N = g->Ns[i];
              if (N > 4) continue;
              const auto p = splitting_order(t->plus[N], t->minus[N]);
              const auto recs = column(*g, i);
              std::size_t above = 0;
              for (const auto& r : recs) above += std::abs(r.length) > kNumericallyZero;
              if (above == 0) {
                if (p && *p <= M && t->C[N] != 0) o.fail("L_" + std::to_string(N) + " collapsed");
                continue;
              }
              if (above < 4 || !p) continue;
              const OrderFit fit = asymptotic_order(recs);
              if (std::abs(fit.slope - *p) > 0.15) {
                o.fail("N = " + std::to_string(N) + ": slope " + fmt(fit.slope) +
                       " vs order " + std::to_string(*p));
              }
            }
          }));
    }
  }

  if (config.wants("chart")) {
    out.push_back(run_check(
        "INV-F4", "boundary ordering along the grid", "stability chart", 0, [&](Outcome& o) {
          const TongueGrid g = oracle_grid(spec, range(1, Nmax), config.q_grid,
                                           config.settings, threads);
          for (std::size_t j = 0; j < g.qs.size(); ++j) {
            double prev = boundary0(numeric_problem(spec, g.qs[j], config.settings));
            for (std::size_t i = 0; i < g.Ns.size(); ++i) {
              const auto& r = g.at(i, j);
              if (!(prev < r.beta_minus) || !(r.beta_minus <= r.beta_plus)) {
                o.fail("ordering broken at N = " + std::to_string(g.Ns[i]) +
                       ", q = " + fmt(g.qs[j]));
              }
              prev = r.beta_plus;
            }
          }
        }));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> acceptance_suite(int threads) {
  std::vector<CheckResult> out;
  std::vector<TongueRecord> audited;  // every oracle record from criteria 6-8
  std::vector<ProblemSpec> audited_specs;
  std::vector<std::pair<std::size_t, std::size_t>> audited_ranges;
  auto remember = [&](const ProblemSpec& spec, const TongueGrid& g) {
    audited_specs.push_back(spec);
    audited_ranges.emplace_back(audited.size(), g.records.size());
    audited.insert(audited.end(), g.records.begin(), g.records.end());
  };

  out.push_back(run_check(
      "AC1", "Omega_2 identity on 20 random oscillators", "second frequency correction", 1.0,
      [&](Outcome& o) {
        RationalSampler rs(101);
        for (int i = 0; i < 20; ++i) {
          const Rational a2 = rs.any(), a3 = rs.any();
          const auto lin = expand({{{2, a2}, {3, a3}}, 3});
          const Rational want = ratio(-5, 96) * a2 * a2 + ratio(3, 16) * a3;
          if (lin.omega2[2] != want) {
            o.fail("alpha = (" + str(a2) + ", " + str(a3) + "): " + str(lin.omega2[2]));
          }
          if (lin.omega2[1] != 0) o.fail("Omega_1 != 0");
        }
        o.note("20/20 exact");
      }));

  out.push_back(run_check(
      "AC2", "second-order B table on 20 random problems", "first two eigenvalue "
      "coefficients", 5.0, [&](Outcome& o) {
        RationalSampler rs(202);
        for (int i = 0; i < 20; ++i) {
          const Rational a2 = rs.any(), a3 = rs.any(), g1 = rs.any(), g2 = rs.any();
          const ProblemSpec spec{{{{2, a2}, {3, a3}}, 2}, {{{1, g1}, {2, g2}}, 2}};
          const SeriesTables t = compute_series(spec, 5);
          const Rational W2 = t.lin.omega2[2];
          const Rational common = g1 * a2 / 8 - g2 / 2;
          auto expect = [&](const Rational& got, const Rational& want, const std::string& what) {
            if (got != want) o.fail(what + " = " + str(got) + ", expected " + str(want));
          };
          expect(t.plus[1].B[1], -g1 / 2, "B_1^+(1)");
          expect(t.minus[1].B[1], g1 / 2, "B_1^-(1)");
          for (unsigned N : {0u, 2u, 3u, 4u, 5u}) {
            expect(t.plus[N].B[1], 0, "B_1^+(" + std::to_string(N) + ")");
            expect(t.minus[N].B[1], 0, "B_1^-(" + std::to_string(N) + ")");
          }
          const Rational b21 = W2 + common - g1 * g1 / 32;
          expect(t.plus[1].B[2], b21 - g1 * a2 / 24, "B_2^+(1)");
          expect(t.minus[1].B[2], b21 + g1 * a2 / 24, "B_2^-(1)");
          const Rational b22 = 4 * W2 + common + g1 * g1 / 24;
          const Rational s22 = (g1 * a2 - 3 * g1 * g1 + 12 * g2) / 48;
          expect(t.plus[2].B[2], b22 - s22, "B_2^+(2)");
          expect(t.minus[2].B[2], b22 + s22, "B_2^-(2)");
          for (unsigned N : {3u, 4u, 5u}) {
            const long NN = static_cast<long>(N) * N;
            const Rational b = NN * W2 + common + g1 * g1 / (8 * (NN - 1));
            expect(t.plus[N].B[2], b, "B_2^+(" + std::to_string(N) + ")");
            expect(t.minus[N].B[2], b, "B_2^-(" + std::to_string(N) + ")");
          }
          expect(t.plus[0].B[2], g1 * (a2 - g1) / 8 - g2 / 2, "B_2^+(0)");
          if (!o.passed) return;
        }
        o.note("20/20 exact, N = 0..5");
      }));

  out.push_back(run_check(
      "AC3", "leading coefficient by two routes, N <= 8", "C_N recursion on the diagonal",
      30.0, [&](Outcome& o) {
        RationalSampler rs(303);
        std::vector<std::pair<std::string, ProblemSpec>> specs = {
            {"mathieu", mathieu_spec(8)},
            {"example1 gt=1", example1_spec(1, 1, 8)},
            {"example1 gt=1/6", example1_spec(1, ratio(1, 6), 8)},
            {"example1 gt=1/2", example1_spec(1, ratio(1, 2), 8)}};
        ProblemSpec random{{{}, 8}, {{}, 8}};
        for (unsigned k = 2; k <= 4; ++k) random.osc.alpha[k] = rs.any();
        for (unsigned k = 1; k <= 3; ++k) random.coupling.gamma[k] = rs.any();
        random.coupling.gamma[1] = rs.nonzero();
        specs.emplace_back("random", random);
        for (const auto& [name, spec] : specs) {
          const SeriesTables t = compute_series(spec, 8);
          const RationalSeries d = diagonal_G(spec.osc, spec.coupling);
          for (unsigned N = 1; N <= 8; ++N) {
            const Rational fast = leading_coefficient_fast(d, N);
            if (fast != t.plus[N].Lambda[N] - t.minus[N].Lambda[N]) {
              o.fail(name + " N = " + std::to_string(N) + ": " + str(fast) + " vs " +
                     str(t.C[N]));
            }
          }
        }
        o.note("5 problems x 8 tongues exact");
      }));

  out.push_back(run_check(
      "AC4", "closed products for C_N, N <= 8", "closed forms of the leading coefficient",
      10.0, [&](Outcome& o) {
        RationalSampler rs(404);
        const SeriesTables m = compute_series(mathieu_spec(8), 8);
        for (unsigned N = 1; N <= 8; ++N) {
          if (m.C[N] != mathieu_closed_form(N)) {
            o.fail("Mathieu N = " + std::to_string(N) + ": " + str(m.C[N]));
          }
        }
        std::vector<std::pair<Rational, Rational>> params = {
            {1, 1}, {1, ratio(1, 6)}, {1, ratio(1, 2)}, {ratio(3, 2), ratio(-2, 7)}};
        for (int i = 0; i < 3; ++i) params.emplace_back(rs.nonzero(), rs.any());
        for (const auto& [alpha, gt] : params) {
          const RationalSeries d = diagonal_G(example1_spec(alpha, gt, 8).osc,
                                              example1_spec(alpha, gt, 8).coupling);
          for (unsigned N = 1; N <= 8; ++N) {
            const Rational want = example1_closed_form(alpha, gt, N);
            if (leading_coefficient_fast(d, N) != want) {
              o.fail("example1 alpha = " + str(alpha) + ", gt = " + str(gt) + ", N = " +
                     std::to_string(N));
            }
          }
        }
        o.note("Mathieu and 7 Example 1 parameter sets exact");
      }));

  out.push_back(run_check(
      "AC5", "support cones and coincidence region on 10 problems", "support of the "
      "eigenvector coefficients", 30.0, [&](Outcome& o) {
        RationalSampler rs(505);
        for (int i = 0; i < 10; ++i) {
          HillCoefficientSeries G;
          if (i % 2 == 0) {
            ProblemSpec spec{{{}, 6}, {{}, 6}};
            for (unsigned k = 2; k <= 4; ++k) spec.osc.alpha[k] = rs.any();
            for (unsigned k = 1; k <= 3; ++k) spec.coupling.gamma[k] = rs.any();
            spec.coupling.gamma[1] = rs.nonzero();
            G = compose_G(spec.coupling, expand(spec.osc));
          } else {
            std::vector<CosPoly> raw(7);
            for (unsigned n = 1; n <= 6; ++n) {
              std::vector<Rational> c(n + 1);
              for (auto& x : c) x = rs.any();
              raw[n] = CosPoly(c);
            }
            G = HillCoefficientSeries::from_coefficients(raw);
          }
          if (!check_generalized_mathieu(G).generalized_mathieu) {
            o.fail("problem " + std::to_string(i) + " is not generalized Mathieu");
          }
          for (unsigned N = 0; N <= 6; ++N) {
            const EigenBranch p = eigen_series(G, N, Parity::Plus);
            const EigenBranch m = N == 0 ? p : eigen_series(G, N, Parity::Minus);
            expect_branch_structure(o, p, m, true,
                                    "problem " + std::to_string(i) + " N = " + std::to_string(N));
          }
          if (!o.passed) return;
        }
        o.note("10 problems, N = 0..6, order 6");
      }));

  out.push_back(run_check(
      "AC6", "tongue length order from the oracle", "leading power of the tongue length",
      120.0, [&](Outcome& o) {
        const std::vector<double> qs = geometric(0.02, 0.15, 6);
        const std::vector<std::pair<std::string, ProblemSpec>> specs = {
            {"mathieu", mathieu_spec(8)}, {"example1", example1_spec(1, 1, 8)}};
        std::string summary;
        for (const auto& [name, spec] : specs) {
          const SeriesTables t = compute_series(spec, 4);
          const TongueGrid g = oracle_grid(spec, range(1, 4), qs, {}, threads);
          remember(spec, g);
          for (std::size_t i = 0; i < 4; ++i) {
            const unsigned N = g.Ns[i];
            const OrderFit fit = asymptotic_order(column(g, i));
            const double exact = std::abs(to_double(t.C[N]));
            const std::string tag = name + " N = " + std::to_string(N);
            if (exact == 0.0) {
              // The exact leading coefficient vanishes: the tongue is closed.
              if (!fit.collapsed) o.fail(tag + ": C_N = 0 but lengths above the floor");
              summary += "; " + tag + " collapsed";
              continue;
            }
            if (fit.collapsed) {
              o.fail(tag + ": collapsed");
              continue;
            }
            const double rel = std::abs(fit.coefficient - exact) / exact;
            if (std::abs(fit.slope - N) > 0.15) o.fail(tag + ": slope " + fmt(fit.slope));
            if (rel > 0.10) o.fail(tag + ": |C_N| off by " + fmt(100 * rel) + "%");
            summary += "; " + tag + " slope " + fmt(fit.slope) + " |C| " +
                       fmt(fit.coefficient) + "/" + fmt(exact);
          }
        }
        o.note(summary.substr(2));
      }));

  out.push_back(run_check(
      "AC7", "coexistence for Examples 1, 2 and 4", "Lame equation and Ince's theorem", 120.0,
      [&](Outcome& o) {
        std::string summary;
        for (unsigned n = 1; n <= 2; ++n) {
          const std::vector<std::pair<std::string, ProblemSpec>> specs = {
              {"example1", example1_spec(1, ratio(n * (n + 1), 12), 8)},
              {"example2", example2_spec(10, ratio(n * (n + 1), 6), 8)},
              {"example4", example4_spec(1, n, 8)}};
          for (const auto& [name, spec] : specs) {
            const std::string tag = name + " n = " + std::to_string(n);
            const auto rep = coexistence_check(spec.osc, spec.coupling, expand(spec.osc));
            if (!rep.detected || rep.residual_norm != 0) {
              o.fail(tag + ": residual " + str(rep.residual_norm));
              continue;
            }
            if (!rep.n_ince || *rep.n_ince != n) o.fail(tag + ": wrong Ince index");
            const unsigned h = lame_harmonic(rep.A);
            const TongueGrid g = oracle_grid(spec, range(1, 6), {0.1}, {}, threads);
            remember(spec, g);
            double worst_closed = 0, weakest_open = INFINITY;
            for (std::size_t i = 0; i < 6; ++i) {
              const unsigned N = g.Ns[i];
              const double L = std::abs(g.at(i, 0).length);
              if (lame_open(N, n, h)) {
                weakest_open = std::min(weakest_open, L);
                if (L <= 1e-4) o.fail(tag + ": L_" + std::to_string(N) + " = " + fmt(L));
              } else {
                worst_closed = std::max(worst_closed, L);
                if (L >= 1e-8) o.fail(tag + ": L_" + std::to_string(N) + " = " + fmt(L));
              }
            }
            summary += "; " + tag + " open >= " + fmt(weakest_open) + ", closed <= " +
                       fmt(worst_closed);
          }
        }
        o.note(summary.substr(2));
      }));

  out.push_back(run_check(
      "AC8", "odd tongues close for odd f and even g", "parity of the coefficients", 60.0,
      [&](Outcome& o) {
        const ProblemSpec spec{{{{3, Rational(1)}}, 8}, {{{2, Rational(1)}}, 8}};
        const SeriesTables t = compute_series(spec, 8);
        for (unsigned N = 1; N <= 8; N += 2) {
          if (t.plus[N].B != t.minus[N].B) o.fail("series splits at N = " + std::to_string(N));
        }
        const TongueGrid g = oracle_grid(spec, {1, 3}, {0.1}, {}, threads);
        remember(spec, g);
        for (const auto& r : g.records) {
          if (std::abs(r.length) >= 1e-8) {
            o.fail("L_" + std::to_string(r.N) + "(0.1) = " + fmt(r.length));
          }
        }
        RationalSampler rs(808);
        for (unsigned K = 1; K <= 6; ++K) {
          const Rational gK = rs.nonzero();
          ProblemSpec s{{{{2, rs.any()}, {3, rs.any()}}, K}, {{{K, gK}, {K + 1, rs.any()}}, K}};
          const SeriesTables tk = compute_series(s, K);
          for (unsigned N = 1; N <= K; ++N) {
            const Rational got = tk.plus[N].Lambda[K] - tk.minus[N].Lambda[K];
            if (got != first_order_coefficient(gK, K, N)) {
              o.fail("C_{" + std::to_string(K) + "," + std::to_string(N) + "} = " + str(got));
            }
          }
        }
        o.note("odd N <= 8 coincide; L_1, L_3 below 1e-8; C_{K,N} table K <= 6 exact");
      }));

  out.push_back(run_check(
      "AC9", "shape suite", "trumpet and horn classification", 60.0, [&](Outcome& o) {
        const SeriesTables m = compute_series(mathieu_spec(8), 4);
        const Shape want[] = {Shape::Trumpet, Shape::Trumpet, Shape::Horn, Shape::Horn};
        for (unsigned N = 1; N <= 4; ++N) {
          const Shape got = classify_shape(m.plus[N], m.minus[N]).classification;
          if (got != want[N - 1]) o.fail("Mathieu N = " + std::to_string(N) + ": " + to_string(got));
        }
        const std::vector<Rational> samples = {
            -3, ratio(-5, 4), ratio(-1, 2), ratio(1, 4), ratio(2, 3), ratio(3, 4),
            ratio(9, 10), ratio(3, 2), 2, 3, 4, 7};
        for (const Rational& gt : samples) {
          const bool inside = gt < -1 || (gt > ratio(1, 2) && gt < 1) || gt > ratio(5, 2);
          const SeriesTables t = compute_series(example1_spec(1, gt, 4), 2);
          const bool trumpet =
              classify_shape(t.plus[2], t.minus[2]).classification == Shape::Trumpet;
          if (trumpet != inside) o.fail("example1 gt = " + str(gt));
          if (second_tongue_sign(1, 2 * gt, 0) != t.C[2]) o.fail("L_2 sign formula at " + str(gt));
        }
        RationalSampler rs(909);
        for (const auto& [a, g] : std::vector<std::pair<Rational, Rational>>{
                 {1, 1}, {rs.nonzero(), rs.nonzero()}}) {
          const auto v = trumpet_count_scenario(3, a, g);
          const SeriesTables t = compute_series({{{{4, a}}, 6}, {{{3, g}}, 6}}, 3);
          for (unsigned N : {1u, 3u}) {
            const auto& s = v[N - 1];
            if (s.classification != Shape::Trumpet || s.order_plus != 3u || s.order_minus != 3u) {
              o.fail("K = 3 scenario N = " + std::to_string(N) + ": " + to_string(s.classification));
            }
            if (t.plus[N].B[3] != -t.minus[N].B[3] || t.plus[N].B[3] == 0) {
              o.fail("K = 3 scenario N = " + std::to_string(N) + ": B_3 not antisymmetric");
            }
          }
        }
        o.note("Mathieu T T H H; 12 Example 1 points; K = 3 trumpets of order 3");
      }));

  out.push_back(run_check(
      "AC10", "oracle self-consistency across criteria 6-8", "Floquet discriminant", 0,
      [&](Outcome& o) {
        OracleAudit total;
        for (std::size_t s = 0; s < audited_specs.size(); ++s) {
          const auto [first, count] = audited_ranges[s];
          const std::vector<TongueRecord> recs(audited.begin() + first,
                                               audited.begin() + first + count);
          const OracleAudit a = audit_records(audited_specs[s], recs);
          total.max_endpoint_change = std::max(total.max_endpoint_change, a.max_endpoint_change);
          total.max_det_error = std::max(total.max_det_error, a.max_det_error);
          total.records += a.records;
        }
        if (total.records == 0) o.fail("no oracle records");
        if (total.max_endpoint_change >= 1e-9) {
          o.fail("step doubling moves an endpoint by " + fmt(total.max_endpoint_change));
        }
        if (total.max_det_error >= 1e-9) o.fail("|det - 1| = " + fmt(total.max_det_error));
        o.note(std::to_string(total.records) + " records; shift " +
               fmt(total.max_endpoint_change) + ", |det - 1| " + fmt(total.max_det_error));
      }));

  out.push_back(run_check(
      "FIG", "Mathieu chart boundary ordering for q <= 0.5", "stability chart", 120.0,
      [&](Outcome& o) {
        std::vector<double> qs;
        for (int i = 1; i <= 10; ++i) qs.push_back(0.05 * i);
        const ProblemSpec spec = mathieu_spec(1);
        const TongueGrid g = oracle_grid(spec, range(1, 5), qs, {}, threads);
        for (std::size_t j = 0; j < qs.size(); ++j) {
          double prev = boundary0(numeric_problem(spec, qs[j]));
          if (!(prev < 0)) o.fail("beta_0^+ >= 0 at q = " + fmt(qs[j]));
          for (std::size_t i = 0; i < g.Ns.size(); ++i) {
            const auto& r = g.at(i, j);
            if (!(prev < r.beta_minus) || !(r.beta_minus <= r.beta_plus)) {
              o.fail("ordering broken at N = " + std::to_string(g.Ns[i]) + ", q = " +
                     fmt(qs[j]));
            }
            prev = r.beta_plus;
          }
        }
        // Widths grow with q on every tongue.
        for (std::size_t i = 0; i < g.Ns.size(); ++i) {
          for (std::size_t j = 1; j < qs.size(); ++j) {
            if (!(g.at(i, j).length > g.at(i, j - 1).length)) {
              o.fail("L_" + std::to_string(g.Ns[i]) + " not increasing in q");
              break;
            }
          }
        }
        o.note("N = 0..5 on 10 amplitudes");
      }));
  return out;
}

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks, bool timing) {
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.name << "  [" << c.anchor
       << "]";
    if (!c.detail.empty()) os << "  " << c.detail;
    if (timing) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "  (%.2f s", c.seconds);
      os << buf;
      if (c.budget > 0) {
        std::snprintf(buf, sizeof buf, " of %.0f s", c.budget);
        os << buf;
      }
      os << ")";
    }
    os << "\n";
  }
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

}  // namespace hilltongue
