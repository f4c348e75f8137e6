#pragma once

#include <vector>

namespace femtonet {

struct TrafficParams {
  int n = 1000;
  double r_f = 10.0;
  double r_m = 500.0;
  double mu = 1.0 / 120.0;
  double eta_f = 1.0 / 360.0;
  double eta_m = 1.0 / 240.0;
  double lambda_f_o = 0.0;  // aggregate over all FAPs
  double lambda_m_o = 0.0;
  int K = 4;
  int N_ch = 100;
  int S_ch = 23;
  double alpha = 0.5;
};

/// Femto-area fraction n (r_f / r_m)^2 of the macrocell disk.
double femto_area_fraction(int n, double r_f, double r_m);

struct ArrivalSplit {
  double femto = 0.0;
  double macro = 0.0;
};

/// Splits a total originating rate between femto-covered and macro-only
/// area, with `density_ratio` times the per-area intensity inside FAP disks.
ArrivalSplit split_arrivals(double total_rate, int n, double r_f, double r_m,
                            double density_ratio = 20.0);

struct ReleaseRates {
  double mu_m = 0.0;
  double mu_f = 0.0;
};

ReleaseRates release_rates(const TrafficParams& p);

struct HandoverProbabilities {
  double mm = 0.0;
  double fm = 0.0;
  double ff = 0.0;
  double mf = 0.0;
};

/// Throws DomainError when the femto area exceeds the macrocell.
HandoverProbabilities handover_probabilities(const TrafficParams& p);

/// Erlang-B B(K, a) by the recursion B_k = a B_{k-1} / (k + a B_{k-1}).
double erlang_b(int servers, double offered_erlangs);

/// Femtocell blocking with offered per-FAP load a = (lambda_T_f / n) / mu_f.
double femto_blocking(double offered_per_fap, int K);

struct MacroBlocking {
  double P_B = 0.0;
  double P_D = 0.0;
};

/// Birth-death chain on 0..N+S: new and handover calls below N, handover only
/// up to N+S. Computed with running rescaling.
MacroBlocking macro_blocking_dropping(double lambda_new, double lambda_ho, double mu_m,
                                      int N_ch, int S_ch);

/// Stationary distribution of the same chain (for diagnostics and tests).
std::vector<double> macro_chain_distribution(double lambda_new, double lambda_ho, double mu_m,
                                             int N_ch, int S_ch);

/// Weight of the macro-first attempts in the femto offered load of an F2F
/// handover (the coefficient next to P_D,m lambda_h,ff).
double macro_first_share(double alpha);

struct TrafficSolution {
  double lambda_h_mm = 0.0;
  double lambda_h_mf = 0.0;
  double lambda_h_ff = 0.0;
  double lambda_h_fm = 0.0;
  double P_B_f = 0.0;
  double P_D_f = 0.0;
  double P_B_m = 0.0;
  double P_D_m = 0.0;
  double P_h_mm = 0.0;
  double P_h_mf = 0.0;
  double P_h_ff = 0.0;
  double P_h_fm = 0.0;
  double mu_m = 0.0;
  double mu_f = 0.0;
  double lambda_T_f = 0.0;
  double lambda_h_m = 0.0;
  double forced_termination = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

struct SolverOptions {
  double tol = 1e-9;
  int max_iter = 1000;
  double damping = 1.0;
};

/// Handover rates given probabilities (the four balance equations).
struct HandoverRates {
  double mm = 0.0;
  double mf = 0.0;
  double ff = 0.0;
  double fm = 0.0;
};

HandoverRates handover_rates(const TrafficParams& p, const HandoverProbabilities& ph,
                             const HandoverRates& current, double P_B_f, double P_D_f,
                             double P_B_m, double P_D_m);

/// Femto offered total and macro handover total for given rates.
double femto_total_offered(const TrafficParams& p, const HandoverRates& r, double P_D_m);
double macro_handover_offered(const TrafficParams& p, const HandoverRates& r, double P_D_f);
/// New-call rate the macro chain sees: macro-area arrivals plus femto overflow.
double macro_new_offered(const TrafficParams& p, double P_B_f);

/// Probability that an admitted call is dropped at some handover during its
/// lifetime, composed from the per-handover drop probabilities.
double forced_termination(const TrafficParams& p, const HandoverProbabilities& ph, double P_B_f,
                          double P_D_f, double P_B_m, double P_D_m);

/// Successive substitution from all-zero rates and probabilities. Throws
/// NumericError on a non-finite intermediate and DomainError on bad params.
TrafficSolution solve_fixed_point(const TrafficParams& p, const SolverOptions& options = {});

/// Largest change produced by one more undamped substitution at `s`.
double fixed_point_residual(const TrafficParams& p, const TrafficSolution& s);

}  // namespace femtonet
