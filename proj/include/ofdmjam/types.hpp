#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ofdmjam {

using cd = std::complex<double>;
using Index = Eigen::Index;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Time-domain baseband samples of one antenna.
using TimeSeq = CVector;
// One value per subcarrier, length N.
using FreqSymbol = CVector;
// Multi-antenna sample streams: one row per antenna, one column per sample.
using SampleStack = CMatrix;

}  // namespace ofdmjam
