#pragma once

// Exact scoring of explicit (n, J) codes against jammer sequences.

#include <cstddef>
#include <span>
#include <vector>

#include "avqc/channels.hpp"

namespace avqc {

inline constexpr double kDecoderTolerance = 1e-9;

class BlockCode {
 public:
  // encoder[j][x] = E(a^n_x | j) with a^n enumerated lexicographically (first
  // use most significant); decoder[j] = D_j on the n-fold output space. Each
  // D_j is replaced by its Hermitian part before validation.
  BlockCode(std::size_t n, std::vector<std::vector<double>> encoder, std::vector<ComplexMatrix> decoder);

  std::size_t n() const noexcept { return n_; }
  std::size_t j_count() const noexcept { return encoder_.size(); }
  std::size_t codeword_count() const noexcept { return encoder_.front().size(); }
  std::size_t output_dim() const noexcept { return decoder_.front().rows(); }
  const std::vector<std::vector<double>>& encoder() const noexcept { return encoder_; }
  const std::vector<ComplexMatrix>& decoder() const noexcept { return decoder_; }

 private:
  std::size_t n_;
  std::vector<std::vector<double>> encoder_;
  std::vector<ComplexMatrix> decoder_;
};

class RandomizedCode {
 public:
  RandomizedCode(std::vector<BlockCode> codes, std::vector<double> weights);
  const std::vector<BlockCode>& codes() const noexcept { return codes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<BlockCode> codes_;
  std::vector<double> weights_;
};

enum class ErrorCriterion { Average, Maximal };

struct CodeScore {
  double avg_error = 0.0;
  double max_error = 0.0;
  double leakage = 0.0;  // chi(R_uni; Z_{theta^n}) in bits
  std::vector<double> success;  // tr(sigma_j D_j) per message
};

/// All three scores of a code under one jammer sequence.
CodeScore score_code(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                     std::span<const std::size_t> theta_seq);

double avg_error(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                 std::span<const std::size_t> theta_seq);
double max_error(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                 std::span<const std::size_t> theta_seq);
double leakage(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
               std::span<const std::size_t> theta_seq);

struct WorstCase {
  double value = 0.0;
  std::vector<std::size_t> argmax_theta_seq;  // lexicographically first maximizer
};

WorstCase worst_case(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                     ErrorCriterion criterion, unsigned threads = 1);

/// Maximum leakage over all theta^n.
WorstCase worst_case_leakage(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                             unsigned threads = 1);

struct RandomizedEvaluation {
  WorstCase error;    // max over theta^n of the weighted error
  WorstCase leakage;  // max over theta^n of the weighted leakage
};

RandomizedEvaluation randomized_eval(const RandomizedCode& rc, const AVQCFamily& fam,
                                     const CQSource& src, ErrorCriterion criterion,
                                     unsigned threads = 1);

}  // namespace avqc
