#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/SVD>

#include "doctest.h"
#include "ofdmjam/channel.hpp"
#include "ofdmjam/errors.hpp"
#include "ofdmjam/jammer.hpp"
#include "oracles.hpp"

using namespace ofdmjam;

namespace {

OfdmConfig small_config(int n, int p) {
  OfdmConfig cfg;
  cfg.n_subcarriers = n;
  cfg.cp_len = p;
  cfg.data_subcarriers = OfdmConfig::default_data_subcarriers(n);
  return cfg;
}

// Rank from an independent decomposition (BDC instead of Jacobi).
int oracle_rank(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  const RVector s = svd.singularValues();
  const double tol = static_cast<double>(std::max(m.rows(), m.cols())) * s.maxCoeff() * std::ldexp(1.0, -40);
  return static_cast<int>((s.array() > tol).count());
}

ChannelRealization jammer_only(int b, const std::vector<int>& taps, Rng& rng) {
  return draw_channel(b, 1, 1, taps, rng);
}

// Noise-free windowed DFT of the jammer contribution at every antenna, frame m, subcarrier k.
CVector interference_at(const ChannelRealization& ch, const SampleStack& w, const OfdmConfig& cfg, Index m, int k) {
  const SampleStack y = apply_channel(ch.jammer, w);
  CVector out(y.rows());
  for (Index b = 0; b < y.rows(); ++b) {
    const CVector window = strip_and_window(CVector(y.row(b).transpose()), cfg, m * cfg.frame_len());
    out[b] = oracle::dft(window)[k];
  }
  return out;
}

}  // namespace

TEST_CASE("jammer mode parsing") {
  CHECK(parse_jammer_mode("none") == JammerMode::none);
  CHECK(parse_jammer_mode("compliant") == JammerMode::compliant);
  CHECK(parse_jammer_mode("violating") == JammerMode::violating);
  CHECK(to_string(JammerMode::violating) == "violating");
  CHECK_THROWS_AS(parse_jammer_mode("loud"), ConfigError);
}

TEST_CASE("jammer spec validation") {
  const OfdmConfig cfg;
  CHECK_NOTHROW(JammerSpec::make(JammerMode::none, 3, 4).validate(cfg));
  CHECK(JammerSpec::make(JammerMode::none, 3, 4).antennas == 0);
  CHECK_NOTHROW(JammerSpec::make(JammerMode::violating, 2, 17).validate(cfg));
  CHECK_THROWS_AS(JammerSpec::make(JammerMode::violating, 1, 18).validate(cfg), ConfigError);
  CHECK_THROWS_AS(JammerSpec::make(JammerMode::compliant, 2, 4).validate(cfg), ConfigError);
  CHECK_THROWS_AS(JammerSpec::make(JammerMode::violating, 0, 4).validate(cfg), ConfigError);
  JammerSpec spec = JammerSpec::make(JammerMode::violating, 2, 4);
  spec.taps_per_antenna.pop_back();
  CHECK_THROWS_AS(spec.validate(cfg), ConfigError);
  JammerSpec none;
  none.antennas = 1;
  CHECK_THROWS_AS(none.validate(cfg), ConfigError);
}

TEST_CASE("compliant jammer frames carry a cyclic prefix") {
  const OfdmConfig cfg;
  Rng rng(1);
  const JammerSpec spec = JammerSpec::make(JammerMode::compliant, 1, 4);
  const Index frame = cfg.frame_len();
  const SampleStack w = gen_jammer_stream(spec, cfg, 10 * frame, rng);
  REQUIRE(w.rows() == 1);
  for (Index m = 0; m < 10; ++m)
    for (Index t = 0; t < cfg.cp_len; ++t) CHECK(std::abs(w(0, m * frame + t) - w(0, m * frame + cfg.n_subcarriers + t)) < 1e-15);
}

TEST_CASE("violating jammer frames do not carry a cyclic prefix") {
  const OfdmConfig cfg;
  Rng rng(2);
  const JammerSpec spec = JammerSpec::make(JammerMode::violating, 1, 4);
  const Index frame = cfg.frame_len();
  const SampleStack w = gen_jammer_stream(spec, cfg, 100 * frame, rng);
  int equal = 0;
  for (Index m = 0; m < 100; ++m) {
    bool all = true;
    for (Index t = 0; t < cfg.cp_len; ++t) all = all && std::abs(w(0, m * frame + t) - w(0, m * frame + cfg.n_subcarriers + t)) < 1e-6;
    equal += all;
  }
  CHECK(equal == 0);
}

TEST_CASE("jammer streams are reproducible and sized") {
  const OfdmConfig cfg;
  for (JammerMode mode : {JammerMode::violating, JammerMode::compliant}) {
    Rng a(3), b(3);
    const JammerSpec spec = JammerSpec::make(mode, 1, 4);
    const SampleStack wa = gen_jammer_stream(spec, cfg, 1000, a);
    CHECK(wa == gen_jammer_stream(spec, cfg, 1000, b));
    CHECK(wa.cols() == 1000);
  }
  Rng rng(4);
  const SampleStack none = gen_jammer_stream(JammerSpec{}, cfg, 50, rng);
  CHECK(none.rows() == 0);
  CHECK(gen_jammer_stream(JammerSpec::make(JammerMode::violating, 3, 2), cfg, 7, rng).rows() == 3);
}

TEST_CASE("stream variance is unit in both modes") {
  const OfdmConfig cfg;
  for (JammerMode mode : {JammerMode::violating, JammerMode::compliant}) {
    Rng rng(5);
    const SampleStack w = gen_jammer_stream(JammerSpec::make(mode, 1, 4), cfg, 200000, rng);
    const double var = w.squaredNorm() / static_cast<double>(w.size());
    CHECK(std::abs(var - 1.0) < 0.02);
  }
}

TEST_CASE("Toeplitz map with a single tap") {
  const OfdmConfig cfg = small_config(8, 3);
  CVector h(1);
  h << cd(2.0, -1.0);
  const CMatrix jb = build_toeplitz_jb(h, cfg);
  REQUIRE(jb.rows() == 8);
  REQUIRE(jb.cols() == 11);
  CHECK(jb.leftCols(3).norm() == 0.0);
  CHECK(jb.rightCols(8) == h[0] * CMatrix::Identity(8, 8));
}

TEST_CASE("Toeplitz map layout for N=4, P=2, L=2") {
  const OfdmConfig cfg = small_config(4, 2);
  const cd h1(1.0, 0.5), h2(-0.3, 2.0);
  CVector h(2);
  h << h1, h2;
  const CMatrix jb = build_toeplitz_jb(h, cfg);
  Eigen::RowVectorXcd row0(6);
  row0 << 0.0, h2, h1, 0.0, 0.0, 0.0;
  CHECK(jb.row(0) == row0);
  for (Index r = 0; r < 4; ++r) {
    CHECK(jb(r, 1 + r) == h2);
    CHECK(jb(r, 2 + r) == h1);
  }
  CHECK(std::abs(jb.squaredNorm() - 4.0 * (std::norm(h1) + std::norm(h2))) < 1e-14);

  const CMatrix prefix = build_jb_prefix(jb);
  REQUIRE(prefix.cols() == 2);
  CHECK(prefix(0, 1) == h2);
  CHECK(prefix.col(0).norm() == 0.0);
  CHECK(prefix.bottomRows(3).norm() == 0.0);
}

TEST_CASE("Toeplitz map errors") {
  const OfdmConfig cfg = small_config(8, 2);
  CHECK_THROWS_AS(build_toeplitz_jb(CVector::Ones(4), cfg), ConfigError);
  CHECK_THROWS_AS(build_toeplitz_jb(CVector(), cfg), ConfigError);
  CHECK_THROWS_AS(build_jb_prefix(CMatrix::Zero(4, 3)), DimensionError);
}

TEST_CASE("Toeplitz product matches convolution and windowing") {
  Rng rng(6);
  const OfdmConfig cfg;
  for (int l = 1; l <= 17; l += 4) {
    const CVector h = oracle::random_vector(l, rng);
    const CVector w = oracle::random_vector(cfg.frame_len(), rng);
    const CVector y = oracle::linear_conv(h, w);
    CHECK(oracle::rel_err(CVector(build_toeplitz_jb(h, cfg) * w), CVector(y.segment(cfg.cp_len, 64))) < 1e-10);
  }
}

TEST_CASE("prefix block has L-1 nonzero columns and rank L-1") {
  Rng rng(7);
  const OfdmConfig cfg;
  CHECK(build_jb_prefix(build_toeplitz_jb(oracle::random_vector(1, rng), cfg)).norm() == 0.0);
  for (int l : {2, 4, 9, 17}) {
    const CMatrix prefix = build_jb_prefix(build_toeplitz_jb(oracle::random_vector(l, rng), cfg));
    CHECK(prefix.leftCols(cfg.cp_len - l + 1).norm() == 0.0);
    for (Index c = cfg.cp_len - l + 1; c < cfg.cp_len; ++c) CHECK(prefix.col(c).norm() > 0.0);
    CHECK(oracle_rank(prefix) == l - 1);
  }
}

TEST_CASE("effective channel of a flat jammer channel") {
  Rng rng(8);
  const OfdmConfig cfg;
  const auto ch = jammer_only(8, {1}, rng);
  const auto resp = freq_response(ch.jammer, cfg);
  for (int k : {0, 5, 40}) {
    const auto eff = build_effective_channel(ch, cfg, k);
    REQUIRE(eff.matrix.rows() == 8);
    REQUIRE(eff.matrix.cols() == 17);
    CHECK(oracle::rel_err(CVector(eff.matrix.col(0)), CVector(8.0 * resp[k].col(0))) < 1e-12);
    CHECK(eff.matrix.rightCols(16).norm() == 0.0);
    CHECK(oracle_rank(eff.matrix) == 1);
  }
}

TEST_CASE("unit-vector jammer channels reach the rank bound") {
  const OfdmConfig cfg;
  for (int l : {2, 4, 8}) {
    ChannelRealization ch;
    ch.legit = TapTensor(8, 1, 1);
    ch.jammer = TapTensor(8, 1, l);
    for (int b = 0; b < l; ++b) {
      CVector e = CVector::Zero(l);
      e[b] = 1.0;
      ch.jammer.set_link(b, 0, e);
    }
    for (int k : cfg.data_subcarriers) {
      const CMatrix j = build_effective_channel(ch, cfg, k).matrix;
      CHECK(oracle_rank(j.rightCols(cfg.cp_len)) == l - 1);
      CHECK(oracle_rank(j) == l);
    }
  }
}

TEST_CASE("R[k] rows equal f[k]^T times the prefix block") {
  Rng rng(9);
  const OfdmConfig cfg;
  const auto ch = jammer_only(4, {6}, rng);
  for (int k : {1, 13, 63}) {
    const CMatrix j = build_effective_channel(ch, cfg, k).matrix;
    Eigen::RowVectorXcd row(64);
    for (int t = 0; t < 64; ++t) row[t] = std::exp(cd(0.0, -2.0 * std::numbers::pi * k * t / 64.0)) / 8.0;
    for (Index b = 0; b < 4; ++b) {
      const CMatrix prefix = build_jb_prefix(build_toeplitz_jb(ch.jammer.link(b, 0), cfg));
      const Eigen::RowVectorXcd expected = row * prefix;
      CHECK((j.row(b).tail(16) - expected).norm() < 1e-12 * expected.norm());
    }
  }
}

TEST_CASE("effective channel errors") {
  Rng rng(10);
  const OfdmConfig cfg;
  const auto ch = jammer_only(2, {4}, rng);
  CHECK_THROWS_AS(build_effective_channel(ch, cfg, -1), ConfigError);
  CHECK_THROWS_AS(build_effective_channel(ch, cfg, 64), ConfigError);
  const auto long_ch = jammer_only(2, {18}, rng);
  CHECK_THROWS_AS(build_effective_channel(long_ch, cfg, 3), ConfigError);
}

TEST_CASE("extract_effective_input on cyclic and perturbed frames") {
  Rng rng(11);
  const OfdmConfig cfg;
  const CVector body = oracle::random_vector(64, rng);
  CVector frame = add_cyclic_prefix(body, cfg);
  for (int k : {0, 7, 33}) {
    const CVector in = extract_effective_input(frame, cfg, k);
    REQUIRE(in.size() == 17);
    CHECK(std::abs(in[0] - oracle::dft(body)[k]) < 1e-12);
    CHECK(in.tail(16).norm() == 0.0);
  }
  frame[0] += cd(0.25, -0.5);
  const CVector in = extract_effective_input(frame, cfg, 3);
  CVector expected = CVector::Zero(16);
  expected[0] = cd(0.25, -0.5);
  CHECK((in.tail(16) - expected).norm() < 1e-15);
  CHECK_THROWS_AS(extract_effective_input(CVector(frame.head(79)), cfg, 3), FramingError);
  CHECK_THROWS_AS(extract_effective_input(frame, cfg, 64), ConfigError);
}

TEST_CASE("compliant jammer streams have zero prefix deviation") {
  Rng rng(12);
  const OfdmConfig cfg;
  const SampleStack w = gen_jammer_stream(JammerSpec::make(JammerMode::compliant, 1, 4), cfg, 3 * cfg.frame_len(), rng);
  for (Index m = 0; m < 3; ++m) {
    const CVector frame = w.row(0).segment(m * cfg.frame_len(), cfg.frame_len()).transpose();
    CHECK(extract_effective_input(frame, cfg, 12).tail(16).norm() < 1e-15);
  }
}

TEST_CASE("effective channel reproduces the received interference") {
  Rng rng(13);
  const OfdmConfig cfg;
  const Index frames = 3;
  for (int draw = 0; draw < 20; ++draw) {
    const int l = 1 + draw % 17;
    const auto ch = jammer_only(8, {l}, rng);
    const SampleStack w = gen_jammer_stream(JammerSpec::make(JammerMode::violating, 1, l), cfg, frames * cfg.frame_len(), rng);
    for (Index m = 0; m < frames; ++m) {
      const CVector frame = w.row(0).segment(m * cfg.frame_len(), cfg.frame_len()).transpose();
      for (int k : {1, 20, 44}) {
        const CVector predicted = build_effective_channel(ch, cfg, k).matrix * extract_effective_input(frame, cfg, k);
        CHECK(oracle::rel_err(predicted, interference_at(ch, w, cfg, m, k)) < 1e-9);
      }
    }
  }
}

TEST_CASE("effective channel of a two-antenna jammer") {
  Rng rng(14);
  const OfdmConfig cfg;
  const std::vector<int> taps{3, 5};
  const auto ch = draw_channel(8, 1, 1, taps, rng);
  const SampleStack w = gen_jammer_stream(JammerSpec::make(JammerMode::violating, 2, 5), cfg, 2 * cfg.frame_len(), rng);
  const SampleStack frame = w.middleCols(cfg.frame_len(), cfg.frame_len());
  for (int k : {2, 30, 50}) {
    const auto eff = build_effective_channel(ch, cfg, k);
    REQUIRE(eff.matrix.cols() == 34);
    const CVector predicted = eff.matrix * extract_effective_input(frame, cfg, k);
    CHECK(oracle::rel_err(predicted, interference_at(ch, w, cfg, 1, k)) < 1e-9);
    CHECK(oracle_rank(eff.matrix) == 8);
  }
}

TEST_CASE("rank of the effective channel never exceeds min(B, L)") {
  Rng rng(15);
  const OfdmConfig cfg;
  struct Case {
    int b, l;
  };
  const Case cases[] = {{8, 1}, {8, 4}, {2, 4}, {8, 8}};
  int draws = 0, generic = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    const Case c = cases[draw % 4];
    const auto ch = jammer_only(c.b, {c.l}, rng);
    const int bound = std::min(c.b, c.l);
    bool all_equal = true;
    for (int k = 0; k < cfg.n_subcarriers; ++k) {
      const CMatrix j = build_effective_channel(ch, cfg, k).matrix;
      const int r = oracle_rank(j);
      CHECK(r <= bound);
      all_equal = all_equal && r == bound;
      CHECK(oracle_rank(j.rightCols(cfg.cp_len)) <= c.l - 1);
    }
    ++draws;
    generic += all_equal;
  }
  CHECK(generic == draws);
}

TEST_CASE("multi-antenna rank never exceeds min(B, sum L_i)") {
  Rng rng(16);
  const OfdmConfig cfg;
  struct Case {
    int b;
    std::vector<int> taps;
    int expected;
  };
  const std::vector<Case> cases{{8, {3, 3}, 6}, {4, {3, 3}, 4}, {8, {1, 2, 2}, 5}, {8, {5, 6}, 8}};
  for (const Case& c : cases) {
    for (int draw = 0; draw < 25; ++draw) {
      const auto ch = draw_channel(c.b, 1, 1, c.taps, rng);
      for (int k : {1, 17, 40}) CHECK(oracle_rank(build_effective_channel(ch, cfg, k).matrix) == c.expected);
    }
  }
}

TEST_CASE("compliant interference spans one dimension per subcarrier") {
  Rng rng(17);
  const OfdmConfig cfg;
  const Index frames = 50;
  const auto ch = jammer_only(8, {4}, rng);
  const SampleStack w = gen_jammer_stream(JammerSpec::make(JammerMode::compliant, 1, 4), cfg, frames * cfg.frame_len(), rng);
  const SampleStack y = apply_channel(ch.jammer, w);
  for (int k : {1, 9, 60}) {
    CMatrix samples(8, frames);
    for (Index m = 0; m < frames; ++m)
      for (Index b = 0; b < 8; ++b)
        samples(b, m) = oracle::dft(strip_and_window(CVector(y.row(b).transpose()), cfg, m * cfg.frame_len()))[k];
    Eigen::BDCSVD<CMatrix> svd(samples);
    const RVector s = svd.singularValues();
    CHECK(s[1] / s[0] < 1e-8);
  }
}

TEST_CASE("numerical rank policy") {
  RVector s(3);
  s << 1.0, 1e-3, 1e-14;
  CHECK(numerical_rank(s, 3, 3) == 2);
  CHECK(rank_tolerance(s, 8, 17) == doctest::Approx(17.0 * std::ldexp(1.0, -40)));
  CHECK(numerical_rank(CMatrix::Zero(3, 3)) == 0);
  CHECK(numerical_rank(CMatrix()) == 0);
  CHECK(numerical_rank(CMatrix::Identity(4, 6)) == 4);
}

TEST_CASE("jammer receive energy matches the Toeplitz route") {
  Rng rng(18);
  const OfdmConfig cfg;
  for (int l : {1, 4, 11}) {
    const auto ch = draw_channel(3, 1, 2, 1, l, rng);
    double expected = 0.0;
    for (Index i = 0; i < 2; ++i) {
      for (Index b = 0; b < 3; ++b) {
        const CMatrix jb = build_toeplitz_jb(ch.jammer.link(b, i), cfg);
        for (int k : cfg.data_subcarriers) {
          Eigen::RowVectorXcd f(64);
          for (int t = 0; t < 64; ++t) f[t] = std::exp(cd(0.0, -2.0 * std::numbers::pi * k * t / 64.0)) / 8.0;
          expected += (f * jb).squaredNorm();
        }
      }
    }
    expected /= 3.0 * 48.0;
    CHECK(std::abs(jammer_rx_energy(ch, cfg, JammerMode::violating) - expected) < 1e-12 * expected);
  }
  CHECK(jammer_rx_energy(ChannelRealization{}, cfg, JammerMode::none) == 0.0);
}

TEST_CASE("jammer receive energy matches simulated interference") {
  Rng rng(19);
  const OfdmConfig cfg;
  for (JammerMode mode : {JammerMode::violating, JammerMode::compliant}) {
    const auto ch = jammer_only(2, {4}, rng);
    const Index frames = 2000;
    const SampleStack w = gen_jammer_stream(JammerSpec::make(mode, 1, 4), cfg, frames * cfg.frame_len(), rng);
    const SampleStack y = apply_channel(ch.jammer, w);
    double energy = 0.0;
    for (Index m = 0; m < frames; ++m) {
      for (Index b = 0; b < 2; ++b) {
        const CVector spectrum = dft(strip_and_window(CVector(y.row(b).transpose()), cfg, m * cfg.frame_len()));
        for (int k : cfg.data_subcarriers) energy += std::norm(spectrum[k]);
      }
    }
    energy /= static_cast<double>(frames) * 2.0 * 48.0;
    const double analytic = jammer_rx_energy(ch, cfg, mode);
    CHECK(std::abs(energy / analytic - 1.0) < 0.03);
  }
}
