#pragma once

// Brute-force code evaluator used as an independent reference. It rebuilds
// every n-fold output as an explicit tensor product of single-use outputs and
// computes environment states entrywise from tr(A_k^dagger A_j rho).

#include <cmath>
#include <vector>

#include "avqc/channels.hpp"
#include "avqc/entropy.hpp"
#include "avqc/linalg.hpp"

namespace testing_support {

struct OracleScore {
  double avg_error = 0.0;
  double max_error = 0.0;
  double leakage = 0.0;
};

inline avqc::ComplexMatrix oracle_channel_out(const avqc::KrausChannel& ch, const avqc::ComplexMatrix& rho) {
  avqc::ComplexMatrix out(ch.dim_out(), ch.dim_out());
  for (const auto& a : ch.kraus()) out += a * rho * a.adjoint();
  return out;
}

inline avqc::ComplexMatrix oracle_env_out(const avqc::KrausChannel& ch, const avqc::ComplexMatrix& rho) {
  const std::size_t k = ch.kraus_count();
  avqc::ComplexMatrix out(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = 0; l < k; ++l) out(j, l) = (ch.kraus()[l].adjoint() * ch.kraus()[j] * rho).trace();
  return out;
}

// `encoder[j][x]` indexes x over A^n with the first use most significant.
inline OracleScore oracle_score(std::size_t n, const std::vector<std::vector<double>>& encoder,
                                const std::vector<avqc::ComplexMatrix>& decoder, const avqc::AVQCFamily& fam,
                                const avqc::CQSource& src, const std::vector<std::size_t>& theta) {
  const std::size_t a = src.size();
  const std::size_t j_count = encoder.size();
  std::vector<avqc::ComplexMatrix> bob, eve;
  for (std::size_t j = 0; j < j_count; ++j) {
    avqc::ComplexMatrix sb(1, 1), se(1, 1);
    bool first = true;
    for (std::size_t x = 0; x < encoder[j].size(); ++x) {
      const double w = encoder[j][x];
      if (w == 0.0) continue;
      avqc::ComplexMatrix b = avqc::ComplexMatrix::identity(1), e = avqc::ComplexMatrix::identity(1);
      std::size_t rest = x, base = 1;
      for (std::size_t k = 1; k < n; ++k) base *= a;
      for (std::size_t use = 0; use < n; ++use) {
        const std::size_t symbol = rest / base;
        rest %= base;
        if (use + 1 < n) base /= a;
        const auto& ch = fam.channel(theta[use]);
        b = avqc::tensor(b, oracle_channel_out(ch, src.states[symbol].matrix()));
        e = avqc::tensor(e, oracle_env_out(ch, src.states[symbol].matrix()));
      }
      if (first) {
        sb = avqc::ComplexMatrix(b.rows(), b.cols());
        se = avqc::ComplexMatrix(e.rows(), e.cols());
        first = false;
      }
      sb.add_scaled(b, w);
      se.add_scaled(e, w);
    }
    bob.push_back(sb);
    eve.push_back(se);
  }
  OracleScore s;
  double worst = 1.0, sum = 0.0;
  for (std::size_t j = 0; j < j_count; ++j) {
    const double p = (bob[j] * decoder[j]).trace().real();
    sum += p;
    worst = std::min(worst, p);
  }
  s.avg_error = 1.0 - sum / static_cast<double>(j_count);
  s.max_error = 1.0 - worst;
  std::vector<avqc::DensityOperator> states;
  for (auto& e : eve) states.push_back(avqc::DensityOperator(avqc::hermitian_part(e)));
  s.leakage = avqc::holevo(avqc::Ensemble(std::vector<double>(j_count, 1.0 / static_cast<double>(j_count)), states));
  return s;
}

}  // namespace testing_support
