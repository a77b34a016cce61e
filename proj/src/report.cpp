#include "hilltongue/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hilltongue/errors.hpp"

namespace hilltongue {

std::string provenance_line(const RunConfig& config) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, config.hash);
  return std::string("# hilltongue ") + HILLTONGUE_VERSION + " config=fnv1a:" + hash +
         " name=" + config.name;
}

Emitter::Emitter(const RunConfig& config) : stamp_(provenance_line(config)) {}

void Emitter::table(const std::string& name, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::string body = stamp_ + "\n";
  auto line = [&body](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) body += (i ? "," : "") + cells[i];
    body += "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  files_.emplace_back(name, std::move(body));
}

void Emitter::text(const std::string& name, const std::string& body) {
  files_.emplace_back(name, body);
}

void Emitter::write(std::ostream& os) const {
  for (const auto& [name, body] : files_) os << "==> " << name << " <==\n" << body << "\n";
}

void Emitter::write_dir(const std::string& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir + ": " + ec.message());
  for (const auto& [name, body] : files_) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) throw ValidationError("cannot write " + path.string());
  }
}

namespace {

std::string num(unsigned n) { return std::to_string(n); }

const char* parity_name(Parity p) { return p == Parity::Plus ? "+" : "-"; }

}  // namespace

void emit_series(Emitter& e, const SeriesTables& t) {
  const unsigned M = t.lin.order;
  std::vector<std::vector<std::string>> rows;
  for (unsigned n = 0; n <= M; ++n) {
    rows.push_back({num(n), to_string(t.lin.omega2[n]), to_decimal(t.lin.omega2[n]),
                    to_string(t.lin.kappa[n]), to_decimal(t.lin.kappa[n])});
  }
  e.table("omega.csv", {"n", "omega", "omega_decimal", "kappa", "kappa_decimal"}, rows);

  auto harmonics = [&](const std::vector<CosPoly>& series, const std::string& file) {
    std::vector<std::vector<std::string>> r;
    for (unsigned n = 1; n < series.size(); ++n) {
      const auto c = series[n].coeffs();
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] != 0) r.push_back({num(n), num(k), to_string(c[k]), to_decimal(c[k])});
      }
    }
    e.table(file, {"n", "k", "coeff", "coeff_decimal"}, r);
  };
  harmonics(t.lin.u, "u.csv");
  harmonics(t.G.G, "G.csv");

  rows.clear();
  for (unsigned N = 0; N < t.plus.size(); ++N) {
    for (const EigenBranch* b : {&t.plus[N], &t.minus[N]}) {
      if (N == 0 && b == &t.minus[N]) continue;
      for (unsigned n = 0; n <= b->order(); ++n) {
        rows.push_back({num(N), parity_name(b->parity()), num(n), to_string(b->Lambda[n]),
                        to_decimal(b->Lambda[n]), to_string(b->B[n]), to_decimal(b->B[n])});
      }
    }
  }
  e.table("eigen.csv",
          {"N", "parity", "n", "Lambda", "Lambda_decimal", "B", "B_decimal"}, rows);

  rows.clear();
  const RationalSeries d = diagonal_G(t.spec.osc, t.spec.coupling);
  for (unsigned N = 1; N < t.C.size(); ++N) {
    const Rational fast = leading_coefficient_fast(d, N);
    rows.push_back({num(N), to_string(t.C[N]), to_decimal(t.C[N]), to_string(fast)});
  }
  e.table("C.csv", {"N", "C", "C_decimal", "C_fast"}, rows);
}

void emit_shapes(Emitter& e, const SeriesTables& t) {
  std::vector<std::vector<std::string>> rows;
  auto opt = [](const std::optional<unsigned>& v) { return v ? num(*v) : std::string(); };
  for (unsigned N = 1; N < t.plus.size(); ++N) {
    const ShapeVerdict v = classify_shape(t.plus[N], t.minus[N]);
    rows.push_back({num(N), to_string(v.classification), opt(v.order_plus),
                    opt(v.order_minus), std::to_string(v.sign_plus),
                    std::to_string(v.sign_minus)});
  }
  e.table("shape.csv",
          {"N", "shape", "order_plus", "order_minus", "sign_plus", "sign_minus"}, rows);
}

void emit_coexistence(Emitter& e, const CoexistenceReport& rep) {
  std::vector<std::vector<std::string>> rows = {
      {"detected", rep.detected ? "true" : "false"},
      {"n_ince", rep.n_ince ? num(*rep.n_ince) : std::string()},
      {"first_order", num(rep.first_order)},
      {"A", to_string(rep.A)},
      {"mu", to_string(rep.mu)},
      {"residual_norm", to_string(rep.residual_norm)}};
  for (unsigned n = 1; n < rep.B.size(); ++n) {
    rows.push_back({"b_" + num(n), to_string(rep.B[n])});
  }
  e.table("coexist.csv", {"field", "value"}, rows);
}

void emit_tongues(Emitter& e, const TongueGrid& grid, const SeriesTables& t) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < grid.Ns.size(); ++i) {
    const unsigned N = grid.Ns[i];
    for (std::size_t j = 0; j < grid.qs.size(); ++j) {
      const TongueRecord& r = grid.at(i, j);
      // Pair each sorted endpoint with the series of the same parity.
      const double se = evaluate_branch(t.plus[N], r.q);
      const double so = evaluate_branch(t.minus[N], r.q);
      const bool even_low = r.beta_even <= r.beta_odd;
      const double s_minus = even_low ? se : so;
      const double s_plus = even_low ? so : se;
      const double gap =
          std::max(std::abs(r.beta_minus - s_minus), std::abs(r.beta_plus - s_plus));
      rows.push_back({num(N), to_decimal(r.q), to_decimal(r.beta_minus),
                      to_decimal(r.beta_plus), to_decimal(r.length), to_decimal(s_minus),
                      to_decimal(s_plus), to_decimal(gap), to_decimal(r.signed_length)});
    }
  }
  e.table("tongues.csv",
          {"N", "q", "beta_minus", "beta_plus", "length", "series_beta_minus",
           "series_beta_plus", "abs_gap", "signed_length"},
          rows);
}

void emit_order(Emitter& e, const TongueGrid& grid, const SeriesTables& t) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < grid.Ns.size(); ++i) {
    const unsigned N = grid.Ns[i];
    std::vector<TongueRecord> recs;
    for (std::size_t j = 0; j < grid.qs.size(); ++j) recs.push_back(grid.at(i, j));
    std::string slope, coeff, points, status;
    try {
      const OrderFit fit = asymptotic_order(recs);
      points = num(static_cast<unsigned>(fit.points));
      if (fit.collapsed) {
        status = "collapsed";
      } else {
        slope = to_decimal(fit.slope);
        coeff = to_decimal(fit.coefficient);
        status = "fitted";
      }
    } catch (const InsufficientData&) {
      status = "insufficient";
    }
    const Rational C = N < t.C.size() ? t.C[N] : Rational(0);
    rows.push_back({num(N), status, points, slope, coeff, to_string(C), to_decimal(C)});
  }
  e.table("order.csv", {"N", "status", "points", "slope", "abs_C_fit", "C", "C_decimal"},
          rows);
}

void emit_chart(Emitter& e, const TongueGrid& grid, const std::vector<double>& beta0) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < grid.qs.size(); ++j) {
    rows.push_back({to_decimal(grid.qs[j]), "0", "", to_decimal(beta0[j])});
    for (std::size_t i = 0; i < grid.Ns.size(); ++i) {
      const TongueRecord& r = grid.at(i, j);
      rows.push_back({to_decimal(r.q), num(grid.Ns[i]), to_decimal(r.beta_minus),
                      to_decimal(r.beta_plus)});
    }
  }
  e.table("chart.csv", {"q", "N", "beta_minus", "beta_plus"}, rows);
}

}  // namespace hilltongue
