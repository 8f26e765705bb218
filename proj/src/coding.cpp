#include "avqc/coding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "avqc/entropy.hpp"
#include "avqc/error.hpp"
#include "avqc/parallel.hpp"
#include "avqc/secrecy.hpp"
#include "avqc/symmetrizability.hpp"

namespace avqc {

BlockCode::BlockCode(std::size_t n, std::vector<std::vector<double>> encoder, std::vector<ComplexMatrix> decoder)
    : n_(n), encoder_(std::move(encoder)), decoder_(std::move(decoder)) {
  if (n_ == 0) throw Error(ErrorKind::BlocklengthTooLarge, "code blocklength must be positive");
  if (encoder_.empty()) throw Error(ErrorKind::InvalidCode, "code has no messages");
  if (decoder_.size() != encoder_.size()) {
    throw Error(ErrorKind::InvalidCode, "decoder has " + std::to_string(decoder_.size()) +
                                            " operators for " + std::to_string(encoder_.size()) + " messages");
  }
  for (std::size_t j = 0; j < encoder_.size(); ++j) {
    if (encoder_[j].size() != encoder_.front().size()) {
      throw Error(ErrorKind::InvalidCode, "encoder rows differ in length");
    }
    validate_distribution(encoder_[j], 1e-9, "encoder row " + std::to_string(j));
  }
  const std::size_t d = decoder_.front().rows();
  ComplexMatrix sum(d, d);
  for (std::size_t j = 0; j < decoder_.size(); ++j) {
    if (!decoder_[j].is_square() || decoder_[j].rows() != d) {
      throw Error(ErrorKind::InvalidCode, "decoder operators must be square and of equal size");
    }
    decoder_[j] = hermitian_part(decoder_[j]);
    const auto eig = hermitian_eigenvalues(decoder_[j]);
    if (eig.front() < -kDecoderTolerance) {
      throw Error(ErrorKind::InvalidCode, "decoder operator " + std::to_string(j) +
                                              " is not PSD to -1e-9 (min eigenvalue " +
                                              std::to_string(eig.front()) + ")");
    }
    sum += decoder_[j];
  }
  if (frobenius_distance(sum, ComplexMatrix::identity(d)) > kDecoderTolerance) {
    throw Error(ErrorKind::InvalidCode, "decoder operators must sum to the identity within 1e-9");
  }
}

RandomizedCode::RandomizedCode(std::vector<BlockCode> codes, std::vector<double> weights)
    : codes_(std::move(codes)), weights_(std::move(weights)) {
  if (codes_.empty() || codes_.size() != weights_.size()) {
    throw Error(ErrorKind::InvalidCode, "randomized code needs one weight per code");
  }
  validate_distribution(weights_, 1e-9, "code weights");
  for (const auto& c : codes_) {
    if (c.n() != codes_.front().n() || c.j_count() != codes_.front().j_count() ||
        c.codeword_count() != codes_.front().codeword_count() ||
        c.output_dim() != codes_.front().output_dim()) {
      throw Error(ErrorKind::InvalidCode, "all codes must share blocklength, message count and spaces");
    }
  }
}

namespace {

std::size_t power_checked(std::size_t base, std::size_t n, const char* what) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    out *= base;
    if (out > kMaxEnumeration) throw Error(ErrorKind::BlocklengthTooLarge, std::string(what) + " exceeds 4096");
  }
  return out;
}

void check_shapes(const BlockCode& code, const AVQCFamily& fam, const CQSource& src) {
  if (src.dim() != fam.dim_in()) throw Error(ErrorKind::DimensionMismatch, "source and channel dimensions differ");
  const std::size_t words = power_checked(src.size(), code.n(), "|A|^n");
  if (code.codeword_count() != words) {
    throw Error(ErrorKind::DimensionMismatch, "encoder has " + std::to_string(code.codeword_count()) +
                                                  " columns, |A|^n = " + std::to_string(words));
  }
  std::size_t d = 1;
  for (std::size_t i = 0; i < code.n(); ++i) d *= fam.dim_out();
  if (code.output_dim() != d) {
    throw Error(ErrorKind::DimensionMismatch, "decoder acts on dimension " + std::to_string(code.output_dim()) +
                                                  ", n-fold output space has " + std::to_string(d));
  }
}

// sigma[j] = sum_{a^n} E(a^n|j) (x)_i letters[i][a_i]
std::vector<ComplexMatrix> message_states(const BlockCode& code,
                                          const std::vector<std::vector<ComplexMatrix>>& letters) {
  const std::size_t n = letters.size();
  const std::size_t a = letters.front().size();
  std::size_t dim = 1;
  for (const auto& l : letters) dim *= l.front().rows();
  std::vector<ComplexMatrix> sigma(code.j_count(), ComplexMatrix(dim, dim));
  std::vector<std::size_t> digits(n);
  for (std::size_t x = 0; x < code.codeword_count(); ++x) {
    bool used = false;
    for (std::size_t j = 0; j < code.j_count() && !used; ++j) used = code.encoder()[j][x] > 0.0;
    if (!used) continue;
    std::size_t rem = x;
    for (std::size_t pos = n; pos-- > 0;) {
      digits[pos] = rem % a;
      rem /= a;
    }
    ComplexMatrix state = letters[0][digits[0]];
    for (std::size_t pos = 1; pos < n; ++pos) state = tensor(state, letters[pos][digits[pos]]);
    for (std::size_t j = 0; j < code.j_count(); ++j)
      if (code.encoder()[j][x] > 0.0) sigma[j].add_scaled(state, code.encoder()[j][x]);
  }
  return sigma;
}

struct LetterTables {
  std::vector<std::vector<ComplexMatrix>> bob;  // [theta][a]
  std::vector<std::vector<ComplexMatrix>> env;  // [theta][a]
};

LetterTables letter_tables(const AVQCFamily& fam, const CQSource& src) {
  LetterTables t;
  for (const auto& ch : fam.channels()) {
    const KrausChannel comp = complementary(ch);
    std::vector<ComplexMatrix> b, e;
    for (const auto& s : src.states) {
      b.push_back(ch.apply_matrix(s.matrix()));
      e.push_back(comp.apply_matrix(s.matrix()));
    }
    t.bob.push_back(std::move(b));
    t.env.push_back(std::move(e));
  }
  return t;
}

CodeScore score_with_tables(const BlockCode& code, const LetterTables& tables,
                            std::span<const std::size_t> theta_seq) {
  std::vector<std::vector<ComplexMatrix>> bob, env;
  for (std::size_t t : theta_seq) {
    bob.push_back(tables.bob.at(t));
    env.push_back(tables.env.at(t));
  }
  const auto sigma = message_states(code, bob);
  const auto zeta = message_states(code, env);

  CodeScore s;
  double total = 0.0;
  double worst = 1.0;
  for (std::size_t j = 0; j < code.j_count(); ++j) {
    // tr(sigma D) = sum_{kl} sigma_kl D_lk
    Complex tr = 0.0;
    const auto& sg = sigma[j];
    const auto& dj = code.decoder()[j];
    for (std::size_t k = 0; k < sg.rows(); ++k)
      for (std::size_t l = 0; l < sg.cols(); ++l) tr += sg(k, l) * dj(l, k);
    const double p = std::clamp(tr.real(), 0.0, 1.0);
    s.success.push_back(p);
    total += p;
    worst = std::min(worst, p);
  }
  const double j_count = static_cast<double>(code.j_count());
  s.avg_error = 1.0 - total / j_count;
  s.max_error = 1.0 - worst;
  std::vector<ComplexMatrix> herm;
  for (const auto& z : zeta) herm.push_back(hermitian_part(z));
  const std::vector<double> uniform(code.j_count(), 1.0 / j_count);
  s.leakage = holevo_of(uniform, herm);
  return s;
}

void check_sequence(const BlockCode& code, const AVQCFamily& fam, std::span<const std::size_t> theta_seq) {
  if (theta_seq.size() != code.n()) {
    throw Error(ErrorKind::DimensionMismatch, "jammer sequence length " + std::to_string(theta_seq.size()) +
                                                  " differs from blocklength " + std::to_string(code.n()));
  }
  for (std::size_t t : theta_seq)
    if (t >= fam.size()) throw Error(ErrorKind::OutOfRange, "jammer index out of range");
}

template <class Metric>
WorstCase maximize_over_sequences(std::size_t theta_count, std::size_t n, unsigned threads, Metric&& metric) {
  power_checked(theta_count, n, "|Theta|^n");
  const auto seqs = theta_sequences(theta_count, n);
  const auto values = parallel_map(seqs.size(), threads, [&](std::size_t s) { return metric(seqs[s]); });
  WorstCase w{values.front(), seqs.front()};
  for (std::size_t s = 1; s < seqs.size(); ++s)
    if (values[s] > w.value) w = {values[s], seqs[s]};
  return w;
}

}  // namespace

CodeScore score_code(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                     std::span<const std::size_t> theta_seq) {
  check_shapes(code, fam, src);
  check_sequence(code, fam, theta_seq);
  return score_with_tables(code, letter_tables(fam, src), theta_seq);
}

double avg_error(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                 std::span<const std::size_t> theta_seq) {
  return score_code(code, fam, src, theta_seq).avg_error;
}

double max_error(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                 std::span<const std::size_t> theta_seq) {
  return score_code(code, fam, src, theta_seq).max_error;
}

double leakage(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
               std::span<const std::size_t> theta_seq) {
  return score_code(code, fam, src, theta_seq).leakage;
}

WorstCase worst_case(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                     ErrorCriterion criterion, unsigned threads) {
  check_shapes(code, fam, src);
  const LetterTables tables = letter_tables(fam, src);
  return maximize_over_sequences(fam.size(), code.n(), threads, [&](const std::vector<std::size_t>& seq) {
    const CodeScore s = score_with_tables(code, tables, seq);
    return criterion == ErrorCriterion::Average ? s.avg_error : s.max_error;
  });
}

WorstCase worst_case_leakage(const BlockCode& code, const AVQCFamily& fam, const CQSource& src,
                             unsigned threads) {
  check_shapes(code, fam, src);
  const LetterTables tables = letter_tables(fam, src);
  return maximize_over_sequences(fam.size(), code.n(), threads, [&](const std::vector<std::size_t>& seq) {
    return score_with_tables(code, tables, seq).leakage;
  });
}

RandomizedEvaluation randomized_eval(const RandomizedCode& rc, const AVQCFamily& fam, const CQSource& src,
                                     ErrorCriterion criterion, unsigned threads) {
  for (const auto& c : rc.codes()) check_shapes(c, fam, src);
  const LetterTables tables = letter_tables(fam, src);
  const std::size_t n = rc.codes().front().n();
  power_checked(fam.size(), n, "|Theta|^n");
  const auto seqs = theta_sequences(fam.size(), n);
  struct Pair {
    double error = 0.0;
    double leak = 0.0;
  };
  const auto values = parallel_map(seqs.size(), threads, [&](std::size_t s) {
    Pair p;
    for (std::size_t k = 0; k < rc.codes().size(); ++k) {
      if (rc.weights()[k] <= 0.0) continue;
      const CodeScore sc = score_with_tables(rc.codes()[k], tables, seqs[s]);
      p.error += rc.weights()[k] * (criterion == ErrorCriterion::Average ? sc.avg_error : sc.max_error);
      p.leak += rc.weights()[k] * sc.leakage;
    }
    return p;
  });
  RandomizedEvaluation out{{values.front().error, seqs.front()}, {values.front().leak, seqs.front()}};
  for (std::size_t s = 1; s < seqs.size(); ++s) {
    if (values[s].error > out.error.value) out.error = {values[s].error, seqs[s]};
    if (values[s].leak > out.leakage.value) out.leakage = {values[s].leak, seqs[s]};
  }
  return out;
}

}  // namespace avqc
