#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "io.hpp"

namespace pidc::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailure = 1;
inline constexpr int kPrecondition = 2;
inline constexpr int kUsage = 64;

struct Options {
  std::optional<io::RingDesc> ring;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  long bound = 10;
  std::size_t n = 3;
  bool oracle = false;
  bool regular_x = false;
  std::optional<std::string> prime;
  unsigned threads = 0;
};

struct Outcome {
  int code = kOk;
  io::json output;
  std::string message;
};

/// Runs one verb on a parsed input document. Never throws; on a nonzero
/// code `output` is null and `message` says why.
Outcome run(const std::string& verb, const io::json& input, const Options& opt);

/// The `gen` verb, which takes no input.
Outcome generate(const Options& opt);

}  // namespace pidc::cli
