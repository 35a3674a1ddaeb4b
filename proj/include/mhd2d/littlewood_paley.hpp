#pragma once

#include <optional>
#include <vector>

#include "mhd2d/fields.hpp"

namespace mhd2d {

/// Inhomogeneous dyadic partition of unity sampled on the lattice.
///
/// The low-pass profile chi(r) is 1 for r <= 3/4, 0 for r >= 1 and joins the
/// two smoothly through the exp(-1/t) cutoff. Then
///
///   Psi_hat(xi)   = chi(|xi|)                    supp in B(0, 1)   of B(0, 4/3)
///   Phi_hat_0(xi) = chi(|xi|/2) - chi(|xi|)      supp in [3/4, 2]  of [3/4, 8/3]
///   Phi_hat_j(xi) = Phi_hat_0(2^{-j} xi)
///
/// and the sum telescopes to 1. Shell J_max is the largest j with
/// (3/4) 2^j <= n/2. Lattice points beyond the reach of the scaled shells
/// (only possible for non power-of-two n) are added to shell J_max so the
/// blocks always reconstruct the field.
class DyadicFilterBank {
public:
    explicit DyadicFilterBank(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int top_shell() const { return top_shell_; }
    int shell_count() const { return top_shell_ + 2; }

    /// Multiplier of block j (j = -1 is Psi) at storage index (a, b).
    double multiplier(int j, int a, int b) const;
    double multiplier_at(int j, int k1, int k2) const {
        return multiplier(j, grid_.index_of(k1), grid_.index_of(k2));
    }

    /// max |Psi + sum_j Phi_j - 1| over lattice points with |k| <= (3/4) 2^J_max.
    double partition_defect() const;

    static double low_pass(double r);
    static double annulus(double r);

    /// Support radii of the shell-j annulus used by Bernstein-type bounds.
    static double inner_radius(int j);
    static double outer_radius(int j);

private:
    GridSpec grid_;
    int top_shell_;
    std::vector<std::vector<double>> multipliers_;  // index j + 1
};

DyadicFilterBank build_filter_bank(const GridSpec& grid);

/// Delta_j f, computed as a Fourier multiplier. Throws ConfigError unless
/// -1 <= j <= J_max.
SpectralField project_shell(const SpectralField& F, int j, const DyadicFilterBank& bank);
RealField project_shell(const RealField& f, int j, const DyadicFilterBank& bank);

/// S_j f = sum_{k=-1}^{j-1} Delta_k f for j >= 0 (S_0 = Delta_{-1}).
RealField partial_sum(const RealField& f, int j, const DyadicFilterBank& bank);

struct ShellDecomposition {
    GridSpec grid;
    std::vector<RealField> blocks;  // blocks[j + 1] = Delta_j f

    RealField reconstruct() const;
};

ShellDecomposition decompose(const RealField& f, const DyadicFilterBank& bank);

/// ||Delta_j f||_{L^p} for j = -1..J_max (entry j + 1).
std::vector<double> shell_lp_norms(const SpectralField& F, double p, const DyadicFilterBank& bank);

/// l^q combination of 2^{js} ||Delta_j f||_p; the j = -1 block carries 2^{-s}.
double besov_from_shell_norms(const std::vector<double>& shell_norms, double s, double q_index);

double besov_norm(const SpectralField& F, double s, double p, double q_index, const DyadicFilterBank& bank);
double besov_norm(const RealField& f, double s, double p, double q_index, const DyadicFilterBank& bank);

struct BernsteinReport {
    int shell = 0;
    double alpha = 0.0, p = 2.0, q = 2.0;
    /// ||(-Delta)^alpha f||_q / (2^{2 alpha j} ||f||_q)
    double lower_ratio = 0.0;
    /// ||(-Delta)^alpha f||_q / (2^{2 alpha j + 2 j (1/p - 1/q)} ||f||_p)
    double upper_ratio = 0.0;
    /// Exact Plancherel bracket for the lower ratio, only when p = q = 2.
    std::optional<double> l2_envelope_low, l2_envelope_high;

    bool within_l2_envelope(double tol) const;
};

/// Throws ConfigError for invalid exponents and when f carries spectral mass
/// outside the annulus [(3/4) 2^j, (8/3) 2^j].
BernsteinReport bernstein_check(const RealField& f, double alpha, double p, double q, int j,
                                const DyadicFilterBank& bank);

/// True when every coefficient outside the shell-j annulus is negligible.
bool is_shell_supported(const SpectralField& F, int j, double rel_tol = 1e-10);

}  // namespace mhd2d
