#include "femtonet/traffic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "femtonet/error.hpp"

namespace femtonet {

double femto_area_fraction(int n, double r_f, double r_m) {
  const double ratio = r_f / r_m;
  return n * ratio * ratio;
}

ArrivalSplit split_arrivals(double total_rate, int n, double r_f, double r_m,
                            double density_ratio) {
  const double phi = femto_area_fraction(n, r_f, r_m);
  if (phi > 1.0) throw DomainError("femto area exceeds the macrocell");
  const double femto_weight = density_ratio * phi;
  const double denom = femto_weight + (1.0 - phi);
  if (denom <= 0.0) return {total_rate, 0.0};
  return {total_rate * femto_weight / denom, total_rate * (1.0 - phi) / denom};
}

ReleaseRates release_rates(const TrafficParams& p) {
  return {p.eta_m + p.mu, p.eta_f + p.mu};
}

HandoverProbabilities handover_probabilities(const TrafficParams& p) {
  if (p.n < 0) throw DomainError("negative femtocell count");
  const double ratio2 = (p.r_f / p.r_m) * (p.r_f / p.r_m);
  const double phi = p.n * ratio2;
  if (phi > 1.0) throw DomainError("femto area n (r_f/r_m)^2 exceeds 1");
  const double femto_leave = p.eta_f / (p.eta_f + p.mu);
  HandoverProbabilities h;
  h.mm = p.eta_m / (p.eta_m + p.mu);
  h.fm = (1.0 - phi) * femto_leave;
  h.ff = std::max(0.0, (p.n - 1) * ratio2 * femto_leave);
  const double root = p.eta_m * std::sqrt(static_cast<double>(p.n));
  h.mf = p.n == 0 ? 0.0 : phi * root / (root + p.mu);
  return h;
}

double erlang_b(int servers, double a) {
  if (a <= 0.0) return 0.0;
  double b = 1.0;
  for (int k = 1; k <= servers; ++k) b = a * b / (k + a * b);
  return b;
}

double femto_blocking(double offered_per_fap, int K) { return erlang_b(K, offered_per_fap); }

std::vector<double> macro_chain_distribution(double lambda_new, double lambda_ho, double mu_m,
                                             int N_ch, int S_ch) {
  const int top = N_ch + S_ch;
  std::vector<double> w(static_cast<std::size_t>(top) + 1, 0.0);
  w[0] = 1.0;
  double sum = 1.0;
  for (int i = 1; i <= top; ++i) {
    const double birth = (i - 1 < N_ch) ? lambda_new + lambda_ho : lambda_ho;
    w[i] = w[i - 1] * birth / (i * mu_m);
    sum += w[i];
    // Keep magnitudes bounded for large loads.
    if (sum > 1e250) {
      for (int j = 0; j <= i; ++j) w[j] /= sum;
      sum = 1.0;
    }
  }
  for (auto& x : w) x /= sum;
  return w;
}

MacroBlocking macro_blocking_dropping(double lambda_new, double lambda_ho, double mu_m,
                                      int N_ch, int S_ch) {
  const auto p = macro_chain_distribution(lambda_new, lambda_ho, mu_m, N_ch, S_ch);
  MacroBlocking out;
  for (int i = N_ch; i <= N_ch + S_ch; ++i) out.P_B += p[i];
  out.P_D = p[N_ch + S_ch];
  return out;
}

double macro_first_share(double alpha) { return 1.0 - alpha; }

HandoverRates handover_rates(const TrafficParams& p, const HandoverProbabilities& ph,
                             const HandoverRates& r, double P_B_f, double P_D_f, double P_B_m,
                             double P_D_m) {
  const double a = p.alpha;
  const double macro_in = (1.0 - P_B_m) * macro_new_offered(p, P_B_f) +
                          (1.0 - P_D_m) * (r.fm + r.ff * (1.0 - a + a * P_D_f));
  const double macro_den = 1.0 - ph.mm * (1.0 - P_D_m);
  const double femto_in = p.lambda_f_o * (1.0 - P_B_f) + r.mf * (1.0 - P_D_f);
  const double femto_den = 1.0 - ph.ff * (1.0 - P_D_f) * (a + (1.0 - a) * P_D_m);
  HandoverRates next;
  next.mm = ph.mm * macro_in / macro_den;
  next.mf = ph.mf * macro_in / macro_den;
  next.ff = ph.ff * femto_in / femto_den;
  next.fm = ph.fm * femto_in / femto_den;
  return next;
}

double femto_total_offered(const TrafficParams& p, const HandoverRates& r, double P_D_m) {
  return p.lambda_f_o + r.mf + p.alpha * r.ff + P_D_m * macro_first_share(p.alpha) * r.ff;
}

double macro_handover_offered(const TrafficParams& p, const HandoverRates& r, double P_D_f) {
  return r.mm + r.fm + p.alpha * P_D_f * r.ff + (1.0 - p.alpha) * r.ff;
}

double macro_new_offered(const TrafficParams& p, double P_B_f) {
  return p.lambda_m_o + p.lambda_f_o * P_B_f;
}

double forced_termination(const TrafficParams& p, const HandoverProbabilities& ph, double P_B_f,
                          double P_D_f, double P_B_m, double P_D_m) {
  const double a = p.alpha;
  // D_m, D_f: drop probability over the remaining lifetime of a call that
  // currently holds a macro channel / femto slot.
  //   D_m = h_mm [P_Dm + (1-P_Dm) D_m] + h_mf [(1-P_Df) D_f + P_Df D_m]
  //   D_f = h_ff [a ((1-P_Df) D_f + P_Df (P_Dm + (1-P_Dm) D_m))
  //             + (1-a) ((1-P_Dm) D_m + P_Dm (P_Df + (1-P_Df) D_f))]
  //       + h_fm [P_Dm + (1-P_Dm) D_m]
  const double a11 = 1.0 - ph.mm * (1.0 - P_D_m) - ph.mf * P_D_f;
  const double a12 = -ph.mf * (1.0 - P_D_f);
  const double b1 = ph.mm * P_D_m;
  const double a21 = -(ph.ff * (a * P_D_f * (1.0 - P_D_m) + (1.0 - a) * (1.0 - P_D_m)) +
                       ph.fm * (1.0 - P_D_m));
  const double a22 = 1.0 - ph.ff * (a * (1.0 - P_D_f) + (1.0 - a) * P_D_m * (1.0 - P_D_f));
  const double b2 = ph.ff * P_D_f * P_D_m + ph.fm * P_D_m;
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0) return 0.0;
  const double D_m = (b1 * a22 - a12 * b2) / det;
  const double D_f = (a11 * b2 - a21 * b1) / det;

  const double admitted_m = (1.0 - P_B_m) * macro_new_offered(p, P_B_f);
  const double admitted_f = p.lambda_f_o * (1.0 - P_B_f);
  const double admitted = admitted_m + admitted_f;
  if (admitted <= 0.0) return 0.0;
  return std::clamp((admitted_m * D_m + admitted_f * D_f) / admitted, 0.0, 1.0);
}

namespace {

struct State {
  HandoverRates r;
  double P_B_f = 0.0;
  double P_B_m = 0.0;
  double P_D_m = 0.0;

  std::array<double, 7> values() const {
    return {r.mm, r.mf, r.ff, r.fm, P_B_f, P_B_m, P_D_m};
  }
};

State substitute(const TrafficParams& p, const HandoverProbabilities& ph, const ReleaseRates& rr,
                 const State& s) {
  State next;
  next.r = handover_rates(p, ph, s.r, s.P_B_f, s.P_B_f, s.P_B_m, s.P_D_m);
  if (p.n > 0) {
    const double a = femto_total_offered(p, next.r, s.P_D_m) / p.n / rr.mu_f;
    next.P_B_f = femto_blocking(a, p.K);
  }
  const auto mb = macro_blocking_dropping(macro_new_offered(p, next.P_B_f),
                                          macro_handover_offered(p, next.r, next.P_B_f), rr.mu_m,
                                          p.N_ch, p.S_ch);
  next.P_B_m = mb.P_B;
  next.P_D_m = mb.P_D;
  return next;
}

double max_change(const State& a, const State& b) {
  const auto va = a.values();
  const auto vb = b.values();
  double m = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

bool finite(const State& s) {
  for (double v : s.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void validate(const TrafficParams& p, const SolverOptions& o) {
  if (p.n < 0 || p.K < 1 || p.N_ch < 1 || p.S_ch < 0) throw DomainError("invalid traffic sizes");
  if (p.mu <= 0.0 || p.eta_f < 0.0 || p.eta_m < 0.0 || p.lambda_f_o < 0.0 || p.lambda_m_o < 0.0)
    throw DomainError("traffic rates must be non-negative (mu positive)");
  if (p.alpha < 0.0 || p.alpha > 1.0) throw DomainError("alpha outside [0, 1]");
  if (!(o.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!(o.damping > 0.0 && o.damping <= 1.0)) throw DomainError("damping outside (0, 1]");
}

State blend(const State& old, const State& next, double d) {
  if (d == 1.0) return next;
  State s;
  auto mix = [d](double x, double y) { return (1.0 - d) * x + d * y; };
  s.r = {mix(old.r.mm, next.r.mm), mix(old.r.mf, next.r.mf), mix(old.r.ff, next.r.ff),
         mix(old.r.fm, next.r.fm)};
  s.P_B_f = mix(old.P_B_f, next.P_B_f);
  s.P_B_m = mix(old.P_B_m, next.P_B_m);
  s.P_D_m = mix(old.P_D_m, next.P_D_m);
  return s;
}

TrafficSolution to_solution(const TrafficParams& p, const HandoverProbabilities& ph,
                            const ReleaseRates& rr, const State& s) {
  TrafficSolution out;
  out.lambda_h_mm = s.r.mm;
  out.lambda_h_mf = s.r.mf;
  out.lambda_h_ff = s.r.ff;
  out.lambda_h_fm = s.r.fm;
  out.P_B_f = s.P_B_f;
  out.P_D_f = s.P_B_f;
  out.P_B_m = s.P_B_m;
  out.P_D_m = s.P_D_m;
  out.P_h_mm = ph.mm;
  out.P_h_mf = ph.mf;
  out.P_h_ff = ph.ff;
  out.P_h_fm = ph.fm;
  out.mu_m = rr.mu_m;
  out.mu_f = rr.mu_f;
  out.lambda_T_f = femto_total_offered(p, s.r, s.P_D_m);
  out.lambda_h_m = macro_handover_offered(p, s.r, s.P_B_f);
  out.forced_termination = forced_termination(p, ph, s.P_B_f, s.P_B_f, s.P_B_m, s.P_D_m);
  return out;
}

}  // namespace

TrafficSolution solve_fixed_point(const TrafficParams& p, const SolverOptions& options) {
  validate(p, options);
  const auto ph = handover_probabilities(p);
  const auto rr = release_rates(p);
  State s;
  int it = 0;
  double change = 0.0;
  bool converged = false;
  while (it < options.max_iter) {
    ++it;
    const State next = substitute(p, ph, rr, s);
    if (!finite(next)) throw NumericError("non-finite value in traffic fixed point", it);
    const State blended = blend(s, next, options.damping);
    change = max_change(s, blended);
    s = blended;
    if (change < options.tol) {
      converged = true;
      break;
    }
  }
  auto out = to_solution(p, ph, rr, s);
  out.iterations = it;
  out.converged = converged;
  out.residual = change;
  return out;
}

double fixed_point_residual(const TrafficParams& p, const TrafficSolution& sol) {
  const auto ph = handover_probabilities(p);
  const auto rr = release_rates(p);
  State s;
  s.r = {sol.lambda_h_mm, sol.lambda_h_mf, sol.lambda_h_ff, sol.lambda_h_fm};
  s.P_B_f = sol.P_B_f;
  s.P_B_m = sol.P_B_m;
  s.P_D_m = sol.P_D_m;
  return max_change(s, substitute(p, ph, rr, s));
}

}  // namespace femtonet
