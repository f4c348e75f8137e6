#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Erlang-B as the ratio of the last Poisson term to the truncated sum.
inline long double erlang_b_direct(int servers, long double a) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k <= servers; ++k) {
    term *= a / static_cast<long double>(k);
    sum += term;
  }
  return term / sum;
}

struct ChainResult {
  std::vector<double> pi;
  double blocking = 0.0;  // sum of pi over N..N+S
  double dropping = 0.0;  // pi at N+S
};

// Builds the generator of the guard-channel chain and solves pi Q = 0 with
// the normalization replacing the last balance equation.
inline ChainResult birth_death_dense(double lambda_new, double lambda_ho, double mu, int N,
                                     int S) {
  const int size = N + S + 1;
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    const double up = i < N ? lambda_new + lambda_ho : (i < N + S ? lambda_ho : 0.0);
    if (i + 1 < size) Q(i, i + 1) = up;
    if (i > 0) Q(i, i - 1) = i * mu;
    Q(i, i) = -(Q.row(i).sum());
  }
  Eigen::MatrixXd A = Q.transpose();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
  A.row(size - 1).setOnes();
  b(size - 1) = 1.0;
  const Eigen::VectorXd x = A.fullPivLu().solve(b);
  ChainResult r;
  r.pi.assign(x.data(), x.data() + size);
  for (int i = N; i < size; ++i) r.blocking += x(i);
  r.dropping = x(size - 1);
  return r;
}

inline double indoor_loss(double f_mhz, double d_m, int walls, double wall_db) {
  const double d = d_m < 1.0 ? 1.0 : d_m;
  return 20.0 * std::log10(f_mhz) + 30.0 * std::log10(d) - 28.0 + walls * wall_db;
}

inline double hata_loss(double f_mhz, double d_km, double h_b, double h_m, double shadow,
                        double pen) {
  const double lf = std::log10(f_mhz);
  const double a_hm = (1.1 * lf - 0.7) * h_m - (1.56 * lf - 0.8);
  return 36.55 + 26.16 * lf - 3.82 * std::log10(h_b) - a_hm +
         (44.9 - 6.55 * std::log10(h_b)) * std::log10(d_km) + shadow + pen;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(FEMTONET_TEST_DATA_DIR) + "/" + name;
}

}  // namespace oracle
