#pragma once

// The first-moment experiment: smoothed sums of central L-values over the
// order-j family against the predicted main term C_j * Q * Phi^(0).
//
// L-values are computed per conductor (sharing the Hurwitz backbone inside
// a conductor) through a deterministic parallel map; the weighted reduction
// is sequential, so results are identical for every thread count.

#include <chrono>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "constants.hpp"
#include "lfun.hpp"
#include "parallel.hpp"
#include "weights.hpp"

namespace lfm {

struct FamilyEntry {
  long long conductor;
  QInt modulus;
  std::complex<double> lvalue;
  double error_bound;
};

// L(s, chi) for every family character with conductor in [q_lo, q_hi],
// grouped by conductor, deterministic order.
inline std::vector<FamilyEntry> family_lvalues(int j, long long q_lo,
                                               long long q_hi,
                                               std::complex<double> s,
                                               const Par& par = {}) {
  auto chars = enumerate_characters(j, q_hi, par);
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
  std::size_t i = 0;
  while (i < chars.size()) {
    std::size_t k = i;
    while (k < chars.size() && chars[k].conductor == chars[i].conductor) ++k;
    if (chars[i].conductor >= q_lo) groups.emplace_back(i, k);
    i = k;
  }
  auto blocks = parallel_map<std::vector<FamilyEntry>>(
      groups.size(), par, [&](std::size_t g) {
        auto [b, e] = groups[g];
        std::vector<std::vector<std::complex<double>>> tables;
        tables.reserve(e - b);
        for (std::size_t t = b; t < e; ++t)
          tables.push_back(detail::complex_table(chars[t].value_table()));
        auto ls = dirichlet_L_batch(s, chars[b].conductor, tables);
        std::vector<FamilyEntry> out;
        out.reserve(e - b);
        for (std::size_t t = b; t < e; ++t)
          out.push_back({chars[t].conductor, chars[t].modulus,
                         ls[t - b].value, ls[t - b].abs_error_bound});
        return out;
      });
  std::vector<FamilyEntry> out;
  for (auto& blk : blocks)
    for (auto& entry : blk) out.push_back(entry);
  return out;
}

struct MomentRow {
  int j = 3;
  double Q = 0.0;
  double alpha = 0.0;
  std::string phi;
  double lhs = 0.0;
  double main_term = 0.0;
  double ratio = 0.0;
  long long char_count = 0;
  long long nonvanishing_count = 0;
  double wall_time = 0.0;
  double lhs_error_bound = 0.0;
  double imag_residual = 0.0;  // |Im accumulator| relative to absolute mass
};

namespace detail {

// phi_mass is the Mellin transform of phi at 1, i.e. the plain integral of
// phi: the factor the residue at s = 1 actually picks up.
inline MomentRow weighted_row(int j, double Q, double alpha,
                              const SmoothWeight& phi,
                              const std::vector<FamilyEntry>& entries,
                              const ConstantBundle& bundle, double phi_mass) {
  MomentRow row;
  row.j = j;
  row.Q = Q;
  row.alpha = alpha;
  row.phi = phi.name;
  KahanComplex acc;
  KahanReal mass;
  KahanReal bound;
  for (const auto& e : entries) {
    const double w = phi(static_cast<double>(e.conductor) / Q);
    if (w <= 0.0) continue;
    acc.add(e.lvalue * w);
    mass.add(std::abs(e.lvalue) * w);
    bound.add(e.error_bound * w);
    row.char_count += 1;
    const double threshold =
        1e-6 * std::pow(static_cast<double>(e.conductor), -0.25);
    if (std::abs(e.lvalue) > threshold) row.nonvanishing_count += 1;
  }
  row.lhs = acc.total().real();
  row.imag_residual =
      mass.total() > 0.0 ? std::abs(acc.total().imag()) / mass.total() : 0.0;
  row.lhs_error_bound = bound.total();
  row.main_term = bundle.C_j * Q * phi_mass;
  row.ratio = row.lhs / row.main_term;
  return row;
}

}  // namespace detail

inline MomentRow first_moment(int j, double Q, double alpha,
                              const SmoothWeight& phi, const Par& par = {}) {
  if (!(Q >= 10.0)) throw std::invalid_argument("first_moment: need Q >= 10");
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("first_moment: alpha must lie in [0, 1/2)");
  const auto t0 = std::chrono::steady_clock::now();
  const long long q_lo =
      static_cast<long long>(std::floor(phi.support_lo * Q)) + 1;
  const long long q_hi = std::max<long long>(
      2, static_cast<long long>(std::ceil(phi.support_hi * Q)) - 1);
  auto entries = family_lvalues(j, q_lo, q_hi, {0.5 + alpha, 0.0}, par);
  auto bundle = main_constant(j, alpha);
  MomentRow row = detail::weighted_row(j, Q, alpha, phi, entries, bundle,
                                       mellin_hat(phi, {1.0, 0.0}).real());
  row.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return row;
}

struct ScanResult {
  std::vector<MomentRow> rows;
  double fitted_exponent = 0.0;    // slope of log|lhs - main| vs log Q
  double fit_stderr = 0.0;
  std::vector<double> deviations;  // |ratio - 1| per row
  std::vector<std::pair<double, double>> plot;  // (log Q, log |lhs - main|)
};

inline ScanResult scan(int j, const std::vector<double>& Qs, double alpha,
                       const SmoothWeight& phi, const Par& par = {}) {
  if (Qs.size() < 3)
    throw std::invalid_argument("scan: need at least three Q values");
  for (std::size_t i = 1; i < Qs.size(); ++i)
    if (!(Qs[i] > Qs[i - 1]))
      throw std::invalid_argument("scan: Q list must be ascending");
  if (!(Qs.front() >= 10.0)) throw std::invalid_argument("scan: need Q >= 10");
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("scan: alpha must lie in [0, 1/2)");

  // one pass over the union of supports; each row reuses the shared values
  const long long q_hi = std::max<long long>(
      2, static_cast<long long>(std::ceil(phi.support_hi * Qs.back())) - 1);
  const long long q_lo =
      static_cast<long long>(std::floor(phi.support_lo * Qs.front())) + 1;
  auto entries = family_lvalues(j, q_lo, q_hi, {0.5 + alpha, 0.0}, par);
  auto bundle = main_constant(j, alpha);
  const double phi_mass = mellin_hat(phi, {1.0, 0.0}).real();

  ScanResult res;
  for (double Q : Qs) {
    const auto t0 = std::chrono::steady_clock::now();
    MomentRow row = detail::weighted_row(j, Q, alpha, phi, entries, bundle, phi_mass);
    row.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    res.deviations.push_back(std::abs(row.ratio - 1.0));
    res.plot.emplace_back(std::log(Q), std::log(std::abs(row.lhs - row.main_term)));
    res.rows.push_back(std::move(row));
  }
  // least-squares line through the plot points
  const double n = static_cast<double>(res.plot.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : res.plot) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  res.fitted_exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - res.fitted_exponent * sx) / n;
  double ss = 0.0;
  for (auto [x, y] : res.plot) {
    const double r = y - (intercept + res.fitted_exponent * x);
    ss += r * r;
  }
  if (res.plot.size() > 2)
    res.fit_stderr = std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n));
  return res;
}

struct NonvanishingReport {
  long long count = 0;
  long long char_count = 0;
  double proportion = 0.0;
  double reference_power = 0.0;  // Q^{6/7}, for eyeballing only
};

inline NonvanishingReport nonvanishing_report(int j, double Q,
                                              const Par& par = {}) {
  if (!(Q >= 10.0))
    throw std::invalid_argument("nonvanishing_report: need Q >= 10");
  auto entries =
      family_lvalues(j, 2, static_cast<long long>(Q), {0.5, 0.0}, par);
  NonvanishingReport rep;
  for (const auto& e : entries) {
    rep.char_count += 1;
    const double threshold =
        1e-6 * std::pow(static_cast<double>(e.conductor), -0.25);
    if (std::abs(e.lvalue) > threshold) rep.count += 1;
  }
  rep.proportion = rep.char_count > 0
                       ? static_cast<double>(rep.count) /
                             static_cast<double>(rep.char_count)
                       : 0.0;
  rep.reference_power = std::pow(Q, 6.0 / 7.0);
  return rep;
}

}  // namespace lfm
