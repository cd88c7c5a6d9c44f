#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hfc/plant.hpp"

namespace hfc {

class SfcError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Continuous-time model about the upright equilibrium, state (theta,
/// theta_dot, x, x_dot), input force.
struct LinearModel {
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    Eigen::Vector4d B = Eigen::Vector4d::Zero();
};

/// Analytic Jacobian of the frictionless dynamics at the origin.
LinearModel linearize(const PlantParams& p);

struct GainVector {
    Eigen::RowVector4d k = Eigen::RowVector4d::Zero();
    PlantState reference;
    double force_limit = 10.0;
};

/// Default closed-loop poles.
std::vector<std::complex<double>> default_sfc_poles();

/// Pole placement by Ackermann's formula. The pole set must have four
/// entries and be closed under conjugation. Throws SfcError otherwise, or
/// when (A, B) is not controllable.
GainVector design_gains(const LinearModel& model, std::span<const std::complex<double>> poles,
                        double force_limit = 10.0);

/// Eigenvalues of A - B k.
std::vector<std::complex<double>> closed_loop_poles(const LinearModel& model, const GainVector& gains);

/// u = -k (s - reference), clamped to +-force_limit.
double sfc_output(const GainVector& gains, const PlantState& s);

}  // namespace hfc
