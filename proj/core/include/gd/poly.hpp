#pragma once

#include <map>
#include <span>
#include <vector>

namespace gd {

using MultiIndex = std::vector<int>;

// Homogeneous multivariate polynomial, stored sparsely as exponent -> coefficient.
// Zero coefficients are dropped and duplicate exponents merged on construction.
class SparseSymPoly {
public:
    SparseSymPoly(int nvars, std::map<MultiIndex, double> terms);

    static SparseSymPoly monomial(int nvars, MultiIndex alpha, double coeff = 1.0);
    static SparseSymPoly elementary(int nvars, int k);  // sigma_k
    // (1/j)(x_1^j + ... + x_j^j) in j variables
    static SparseSymPoly power_mean(int j);
    // q(x_1..x_n) * r(x_{n+1}..x_{n+m})
    static SparseSymPoly split_product(const SparseSymPoly& q, const SparseSymPoly& r);
    // wq*q(x_1..x_n) + wr*r(x_{n+1}..x_{n+m}); degrees must agree
    static SparseSymPoly split_sum(const SparseSymPoly& q, const SparseSymPoly& r,
                                   double wq, double wr);

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const std::map<MultiIndex, double>& terms() const { return terms_; }

    double eval(std::span<const double> x) const;
    double value_at_e() const;                  // sum of coefficients
    std::vector<double> partials_at_e() const;  // component j = sum_a coeff_a * a_j
    bool is_permutation_symmetric() const;

    SparseSymPoly scaled(double c) const;
    SparseSymPoly normalized() const;   // scaled so value_at_e() == 1
    SparseSymPoly symmetrized() const;  // average over exponent permutations

private:
    int nvars_;
    int degree_;
    std::map<MultiIndex, double> terms_;
};

// Dense univariate polynomial, coefficients in ascending degree.  Leading
// coefficients below trim_tol * max|c| are dropped at construction.
class UnivariatePoly {
public:
    explicit UnivariatePoly(std::vector<double> coeffs, double trim_tol = 1e-12);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double leading() const { return coeffs_.back(); }
    double eval(double t) const;
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

private:
    std::vector<double> coeffs_;
};

// Newton divided differences at distinct nodes; result in the monomial basis.
UnivariatePoly interpolate_univariate(std::span<const double> nodes,
                                      std::span<const double> values);

struct RootResult {
    std::vector<double> roots;  // real parts of all roots, ascending
    double max_imag = 0.0;      // largest |Im| encountered (hyperbolicity residual)
};

// All roots of q via a balanced companion matrix and double-shift Hessenberg QR.
RootResult real_roots(const UnivariatePoly& q);

// Truncated formal power series 1 + c1*t + ... + cm*t^m (c[0] arbitrary).
struct TruncatedSeries {
    std::vector<double> coeffs;  // c0..cm

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    static TruncatedSeries one(int m);
    TruncatedSeries mul(const TruncatedSeries& other) const;  // truncated to this order
    TruncatedSeries pow(int q) const;
};

// r with r^q == s up to order s.order(); requires s.coeffs[0] == 1 and q >= 1.
TruncatedSeries series_qth_root(const TruncatedSeries& s, int q);

double elementary_symmetric(std::span<const double> values, int k);
std::vector<double> elementary_symmetric_all(std::span<const double> values);

double binomial(int n, int k);

}  // namespace gd
