#include "cbounds/transfer.hpp"

#include "cbounds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cbounds {

namespace {

bool finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double phase_of(complex z) { return z == complex{} ? 0.0 : normalize_phase(std::arg(z)); }

const double kMaxAlphaModulus = std::cosh(kMaxRapidity);

} // namespace

double normalize_phase(double phi)
{
    constexpr double pi = std::numbers::pi;
    double r = std::remainder(phi, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

complex TransferMatrix::operator()(int row, int col) const
{
    if (row < 0 || row > 1 || col < 0 || col > 1) throw DomainError("matrix index out of range");
    if (row == 0) return col == 0 ? alpha_ : beta_;
    return col == 0 ? std::conj(beta_) : std::conj(alpha_);
}

TransferMatrix TransferMatrix::validated(complex alpha, complex beta, double scale)
{
    if (!finite(alpha) || !finite(beta)) {
        if (std::isinf(std::abs(alpha)) || std::isinf(std::abs(beta)))
            throw OverflowError("transfer matrix entries overflowed");
        throw DomainError("transfer matrix entries must be finite");
    }
    const double a = std::abs(alpha);
    const double b = std::abs(beta);
    if (a > kMaxAlphaModulus) {
        std::ostringstream os;
        os << "rapidity exceeds " << kMaxRapidity << " (|alpha| = " << a << ")";
        throw OverflowError(os.str());
    }
    const double defect = (a - b) * (a + b) - 1.0;
    if (std::abs(defect) > kNormTolerance * std::max(1.0, scale)) {
        std::ostringstream os;
        os.precision(17);
        os << "|alpha|^2 - |beta|^2 = " << defect + 1.0 << ", expected 1";
        throw NormalizationError(os.str());
    }
    return TransferMatrix(alpha, beta);
}

TransferMatrix make_transfer(complex alpha, complex beta)
{
    return TransferMatrix::validated(alpha, beta, std::norm(alpha) + std::norm(beta));
}

TransferMatrix from_polar(const HyperbolicParams& p)
{
    if (!std::isfinite(p.theta) || !std::isfinite(p.phi_alpha) || !std::isfinite(p.phi_beta))
        throw DomainError("polar parameters must be finite");
    if (p.theta < 0.0) throw DomainError("rapidity must be non-negative");
    if (p.theta > kMaxRapidity) throw OverflowError("rapidity exceeds the representable range");
    const complex alpha = std::polar(std::cosh(p.theta), p.phi_alpha);
    const complex beta = std::polar(std::sinh(p.theta), p.phi_beta);
    return TransferMatrix::validated(alpha, beta, std::norm(alpha) + std::norm(beta));
}

HyperbolicParams to_polar(const TransferMatrix& m)
{
    // acosh loses accuracy as |alpha| -> 1, so small rapidities come from |beta|.
    const double b = std::abs(m.beta());
    const double theta = b < 1.0 ? std::asinh(b) : std::acosh(std::max(std::abs(m.alpha()), 1.0));
    return {theta, phase_of(m.alpha()), phase_of(m.beta())};
}

TransferMatrix compose(const TransferMatrix& m1, const TransferMatrix& m2)
{
    const complex a1 = m1.alpha(), b1 = m1.beta();
    const complex a2 = m2.alpha(), b2 = m2.beta();
    const complex alpha = a1 * a2 + b1 * std::conj(b2);
    const complex beta = a1 * b2 + b1 * std::conj(a2);
    // Cancellation between the two terms is limited by their size, not the result's.
    const double term = std::abs(a1) * std::abs(a2) + std::abs(b1) * std::abs(b2);
    return TransferMatrix::validated(alpha, beta, term * term);
}

TransferMatrix compose_sequence(std::span<const TransferMatrix> ms)
{
    if (ms.empty()) throw EmptySequenceError("cannot compose an empty sequence of transfer matrices");
    TransferMatrix acc = ms.front();
    for (const auto& m : ms.subspan(1)) acc = compose(acc, m);
    return acc;
}

TransferMatrix shift(const TransferMatrix& m, double k, double a)
{
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive and finite");
    if (!std::isfinite(a)) throw DomainError("displacement must be finite");
    TransferMatrix out = m;
    out.beta_ = m.beta() * std::polar(1.0, 2.0 * k * a);
    return out;
}

ScatteringAmplitudes amplitudes(const TransferMatrix& m)
{
    const complex t = 1.0 / m.alpha();
    return {t, m.beta() * t};
}

double particle_number(const TransferMatrix& m) { return std::norm(m.beta()); }

double transmission(const TransferMatrix& m) { return 1.0 / std::norm(m.alpha()); }

double reflection(const TransferMatrix& m) { return std::norm(m.beta()) / std::norm(m.alpha()); }

double rapidity(const TransferMatrix& m) { return to_polar(m).theta; }

TransferMatrix boost(double theta) { return from_polar({theta, 0.0, 0.0}); }

} // namespace cbounds
