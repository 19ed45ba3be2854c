#pragma once

#include <span>
#include <string>

namespace kernmink {

/// The supported 1-homogeneous additive kernels. The first four have
/// closed-form signatures and spectra; the Hein-Bousquet family is a
/// two-parameter class that contains them all.
enum class KernelKind { Hellinger, ChiSquare, Intersection, JensenShannon, HeinBousquet };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// Which scalar kernel k(a, b) to use plus its homogeneity degree.
/// alpha/beta parameterize the Hein-Bousquet family only; the validity
/// range is alpha in [1, inf] and beta in [1/2, alpha] or beta <= -1.
struct KernelSpec {
    KernelKind kind = KernelKind::ChiSquare;
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    static KernelSpec hellinger();
    static KernelSpec chi_square();
    static KernelSpec intersection();
    static KernelSpec jensen_shannon();
    static KernelSpec hein_bousquet(double alpha, double beta);

    /// Throws std::invalid_argument when parameters are out of range.
    void validate() const;
};

/// Scalar kernel k(a, b), a, b >= 0.
///   Hellinger     sqrt(a*b)
///   ChiSquare     2ab / (a+b)
///   Intersection  min(a, b)
///   JensenShannon a/2 log2((a+b)/a) + b/2 log2((a+b)/b)
///   HeinBousquet  (-d2(a,b) + d2(a,0) + d2(b,0)) / 2 with the family metric d2
double kernel_scalar(const KernelSpec& spec, double a, double b);

/// Additive kernel K(x, y) = sum_l k(x_l, y_l).
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

/// Signature kappa(lambda) = k(e^{lambda/2}, e^{-lambda/2}), the 1-D
/// function that characterizes a homogeneous kernel.
double signature(const KernelSpec& spec, double lambda);

/// Spectrum rho(omega), the inverse Fourier transform of the signature.
/// Closed forms for ChiSquare/Intersection/JensenShannon; numeric
/// quadrature (cached) for HeinBousquet. Hellinger's spectrum is a Dirac
/// delta and throws: its map is closed-form, there is nothing to sample.
double spectrum(const KernelSpec& spec, double omega);

} // namespace kernmink
