#include <cmath>
#include <random>

#include "psim/semantics.hpp"
#include "semantics/board.hpp"

namespace psim {
namespace {

class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : engine_(seed) {}

  bool next() {
    if (left_ == 0) {
      word_ = engine_();
      left_ = 64;
    }
    const bool b = (word_ & 1U) != 0;
    word_ >>= 1U;
    --left_;
    return b;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  unsigned left_ = 0;
};

}  // namespace

double hoeffding_half_width(std::size_t samples, double confidence) {
  if (samples == 0) return 1.0;
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

MonteCarloEstimate mc_estimate(const Runnable& p, const NonProbFormula& f, std::size_t samples,
                               std::uint64_t fuel, std::size_t bit_cap, std::uint64_t seed) {
  MonteCarloEstimate est;
  est.samples = samples;
  BitSource source(seed);
  const std::span<const NonProbFormula> fs(&f, 1);
  for (std::size_t s = 0; s < samples; ++s) {
    detail::Board board(p, fs);
    Bits stream;
    Tri verdict = Tri::Unknown;
    for (;;) {
      board.refresh(stream, fuel);
      verdict = board.evaluate(f);
      if (verdict != Tri::Unknown || !board.wants_bit() || stream.size() >= bit_cap) break;
      stream.push_back(source.next());
    }
    switch (verdict) {
      case Tri::True: ++est.true_count; break;
      case Tri::False: ++est.false_count; break;
      case Tri::Unknown: ++est.unknown_count; break;
    }
  }
  est.p_hat = samples == 0 ? Rational(0) : Rational(Integer(std::to_string(est.true_count)), Integer(std::to_string(samples)));
  est.p_hat.canonicalize();
  est.half_width = hoeffding_half_width(samples);
  return est;
}

}  // namespace psim
