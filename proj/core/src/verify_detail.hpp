#pragma once

#include "sasaki/verify.hpp"

namespace sasaki::detail {

/// sqrt of the largest eigenvalue of V^T G V: the g-operator norm of the map
/// taking unit coordinate vectors to the columns of V.
double images_norm(const Matrix& images, const Matrix& gram);

double g_norm(const Vector& v, const Matrix& gram);

/// Records metric kind, field kind, seed and sample count.
void stamp(VerificationReport& report, const MetricField& g, const VectorField* field,
           const SampleSet& samples);

VerificationReport named_report(std::string name, double tolerance);

/// Ambient matrix of v -> g(xi_source, v) xi_target.
Matrix eta_tensor(const Vector& xi_target, const Vector& xi_source, const Matrix& gram);

}  // namespace sasaki::detail
