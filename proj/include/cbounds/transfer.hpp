#pragma once

#include <complex>
#include <span>

namespace cbounds {

using complex = std::complex<double>;

/// Absolute tolerance on |alpha|^2 - |beta|^2 - 1, scaled by the magnitude of
/// the terms that produced alpha and beta.
inline constexpr double kNormTolerance = 1e-10;

/// Largest rapidity the exact algebra will represent. cosh overflows a double
/// near 710; beyond this the library refuses instead of returning inf.
inline constexpr double kMaxRapidity = 350.0;

/// Polar form alpha = cosh(theta) e^{i phi_alpha}, beta = sinh(theta) e^{i phi_beta}.
struct HyperbolicParams {
    double theta = 0.0;
    double phi_alpha = 0.0;
    double phi_beta = 0.0;
};

struct ScatteringAmplitudes {
    complex t;
    complex r;

    double transmission() const { return std::norm(t); }
    double reflection() const { return std::norm(r); }
};

/// Transfer matrix [[alpha, beta], [conj(beta), conj(alpha)]] with
/// |alpha|^2 - |beta|^2 = 1. Only constructible through the validating
/// factories below, so every instance satisfies the normalization.
class TransferMatrix {
public:
    /// The identity (a transparent barrier).
    TransferMatrix() = default;

    complex alpha() const { return alpha_; }
    complex beta() const { return beta_; }

    /// Entry (row, col) of the 2x2 matrix, zero based.
    complex operator()(int row, int col) const;

    friend TransferMatrix make_transfer(complex alpha, complex beta);
    friend TransferMatrix from_polar(const HyperbolicParams& p);
    friend TransferMatrix compose(const TransferMatrix& m1, const TransferMatrix& m2);
    friend TransferMatrix shift(const TransferMatrix& m, double k, double a);

private:
    TransferMatrix(complex alpha, complex beta) : alpha_(alpha), beta_(beta) {}

    // Rejects when | |alpha|^2 - |beta|^2 - 1 | > kNormTolerance * max(1, scale).
    static TransferMatrix validated(complex alpha, complex beta, double scale);

    complex alpha_{1.0, 0.0};
    complex beta_{0.0, 0.0};
};

/// Validates and wraps a Bogoliubov pair.
/// Throws DomainError on non-finite input, NormalizationError when
/// |alpha|^2 - |beta|^2 is not 1, OverflowError past kMaxRapidity.
TransferMatrix make_transfer(complex alpha, complex beta);

/// Throws DomainError for theta < 0 or non-finite input.
TransferMatrix from_polar(const HyperbolicParams& p);

/// theta = asinh|beta| below |beta| = 1 and acosh|alpha| above; phases in
/// (-pi, pi], zero for a vanishing modulus.
HyperbolicParams to_polar(const TransferMatrix& m);

/// Product m1 * m2: m1 is the barrier encountered first (leftmost).
/// Not commutative.
TransferMatrix compose(const TransferMatrix& m1, const TransferMatrix& m2);

/// Left-to-right product ms[0] * ms[1] * ... Throws EmptySequenceError on an empty list.
TransferMatrix compose_sequence(std::span<const TransferMatrix> ms);

/// Translate the barrier by a at wavenumber k: beta picks up e^{2ika}, alpha is untouched.
TransferMatrix shift(const TransferMatrix& m, double k, double a);

/// t = sech(theta) e^{-i phi_alpha}, r = tanh(theta) e^{-i(phi_alpha - phi_beta)},
/// i.e. t = 1/alpha and r = beta/alpha.
ScatteringAmplitudes amplitudes(const TransferMatrix& m);

/// N = |beta|^2.
double particle_number(const TransferMatrix& m);

/// T = 1/|alpha|^2.
double transmission(const TransferMatrix& m);

/// R = |beta|^2 / |alpha|^2.
double reflection(const TransferMatrix& m);

/// Shorthand for to_polar(m).theta.
double rapidity(const TransferMatrix& m);

/// from_polar({theta, 0, 0}): the real hyperbolic rotation.
TransferMatrix boost(double theta);

/// Maps an angle into (-pi, pi].
double normalize_phase(double phi);

} // namespace cbounds
