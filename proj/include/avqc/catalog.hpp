#pragma once

// Channel families of the worked examples and one-call re-derivations of
// their numeric claims.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "avqc/channels.hpp"

namespace avqc {

/// Four single-Kraus channels C^2 -> C^3 labelled 1+, 1-, 2+, 2-.
AVQCFamily example1_family();

/// C^2 -> C^7 family {sqrt(1-l) A_theta, sqrt(l)|e_theta><0|, sqrt(l)|e_theta><1|}
/// with flags e_theta = 3, 4, 5, 6.
AVQCFamily lambda_family(double lambda);

/// Two channels C^4 -> C^4 labelled 1 and 2 whose complementary channels
/// swap roles with the channels themselves.
AVQCFamily superactivation_pair();

/// {a_s (x) b_t} over all label pairs, labelled "(s,t)" with s major.
AVQCFamily product_family(const AVQCFamily& a, const AVQCFamily& b);

/// The first `count` computational basis states of C^dim with a uniform prior.
CQSource basis_source(std::size_t dim, std::size_t count);

/// Environment basis relabelings under which complementary(W1) matches W2
/// and complementary(W2) matches W1 (env index -> output index).
inline const std::vector<std::size_t> kEnvMapW1ToW2{0, 2, 3};
inline const std::vector<std::size_t> kEnvMapW2ToW1{0, 1, 2};

/// Embeds an env-space matrix into the output space along `map`.
ComplexMatrix embed_env(const ComplexMatrix& env, const std::vector<std::size_t>& map, std::size_t dim);

struct Claim {
  std::string id;
  std::string description;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">", ">=" or "|x-b|<=tol"
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::string name;
  std::vector<Claim> claims;
  std::vector<std::string> probe_descriptions;
  bool all_passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

VerificationReport verify_example1(const VerifyOptions& opts = {});
VerificationReport verify_lambda(double lambda, const VerifyOptions& opts = {});
VerificationReport verify_superactivation(const VerifyOptions& opts = {});

}  // namespace avqc
