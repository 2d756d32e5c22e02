#include "gd/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gd {

// ---------------------------------------------------------------- SparseSymPoly

SparseSymPoly::SparseSymPoly(int nvars, std::map<MultiIndex, double> terms)
    : nvars_(nvars), degree_(0) {
    if (nvars <= 0) throw std::invalid_argument("SparseSymPoly: nvars must be positive");
    bool first = true;
    for (auto it = terms.begin(); it != terms.end();) {
        const auto& [alpha, coeff] = *it;
        if (static_cast<int>(alpha.size()) != nvars)
            throw std::invalid_argument("SparseSymPoly: exponent length != nvars");
        int total = 0;
        for (int a : alpha) {
            if (a < 0) throw std::invalid_argument("SparseSymPoly: negative exponent");
            total += a;
        }
        if (first) {
            degree_ = total;
            first = false;
        } else if (total != degree_) {
            throw std::invalid_argument("SparseSymPoly: not homogeneous");
        }
        if (coeff == 0.0)
            it = terms.erase(it);
        else
            ++it;
    }
    if (terms.empty()) throw std::invalid_argument("SparseSymPoly: zero polynomial");
    terms_ = std::move(terms);
}

SparseSymPoly SparseSymPoly::monomial(int nvars, MultiIndex alpha, double coeff) {
    std::map<MultiIndex, double> t;
    t.emplace(std::move(alpha), coeff);
    return SparseSymPoly(nvars, std::move(t));
}

SparseSymPoly SparseSymPoly::elementary(int nvars, int k) {
    if (k < 1 || k > nvars) throw std::invalid_argument("elementary: k out of range");
    std::map<MultiIndex, double> t;
    // iterate k-subsets of {0..nvars-1}
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        MultiIndex alpha(static_cast<std::size_t>(nvars), 0);
        for (int i : idx) alpha[static_cast<std::size_t>(i)] = 1;
        t.emplace(std::move(alpha), 1.0);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == nvars - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return SparseSymPoly(nvars, std::move(t));
}

SparseSymPoly SparseSymPoly::power_mean(int j) {
    if (j < 1) throw std::invalid_argument("power_mean: j must be >= 1");
    std::map<MultiIndex, double> t;
    for (int i = 0; i < j; ++i) {
        MultiIndex alpha(static_cast<std::size_t>(j), 0);
        alpha[static_cast<std::size_t>(i)] = j;
        t.emplace(std::move(alpha), 1.0 / j);
    }
    return SparseSymPoly(j, std::move(t));
}

SparseSymPoly SparseSymPoly::split_product(const SparseSymPoly& q, const SparseSymPoly& r) {
    const int n = q.nvars(), m = r.nvars();
    std::map<MultiIndex, double> t;
    for (const auto& [aq, cq] : q.terms())
        for (const auto& [ar, cr] : r.terms()) {
            MultiIndex alpha = aq;
            alpha.insert(alpha.end(), ar.begin(), ar.end());
            t[alpha] += cq * cr;
        }
    return SparseSymPoly(n + m, std::move(t));
}

SparseSymPoly SparseSymPoly::split_sum(const SparseSymPoly& q, const SparseSymPoly& r,
                                       double wq, double wr) {
    if (q.degree() != r.degree())
        throw std::invalid_argument("split_sum: summands must have the same degree");
    const int n = q.nvars(), m = r.nvars();
    std::map<MultiIndex, double> t;
    for (const auto& [aq, cq] : q.terms()) {
        MultiIndex alpha = aq;
        alpha.insert(alpha.end(), static_cast<std::size_t>(m), 0);
        t[alpha] += wq * cq;
    }
    for (const auto& [ar, cr] : r.terms()) {
        MultiIndex alpha(static_cast<std::size_t>(n), 0);
        alpha.insert(alpha.end(), ar.begin(), ar.end());
        t[alpha] += wr * cr;
    }
    return SparseSymPoly(n + m, std::move(t));
}

double SparseSymPoly::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw std::invalid_argument("SparseSymPoly::eval: dimension mismatch");
    double sum = 0.0;
    for (const auto& [alpha, coeff] : terms_) {
        double term = coeff;
        for (int j = 0; j < nvars_; ++j) {
            const int a = alpha[static_cast<std::size_t>(j)];
            for (int rep = 0; rep < a; ++rep) term *= x[static_cast<std::size_t>(j)];
        }
        sum += term;
    }
    return sum;
}

double SparseSymPoly::value_at_e() const {
    double sum = 0.0;
    for (const auto& [alpha, coeff] : terms_) sum += coeff;
    return sum;
}

std::vector<double> SparseSymPoly::partials_at_e() const {
    std::vector<double> grad(static_cast<std::size_t>(nvars_), 0.0);
    for (const auto& [alpha, coeff] : terms_)
        for (int j = 0; j < nvars_; ++j)
            grad[static_cast<std::size_t>(j)] += coeff * alpha[static_cast<std::size_t>(j)];
    return grad;
}

bool SparseSymPoly::is_permutation_symmetric() const {
    // adjacent transpositions generate the symmetric group
    for (int i = 0; i + 1 < nvars_; ++i) {
        for (const auto& [alpha, coeff] : terms_) {
            MultiIndex swapped = alpha;
            std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(i + 1)]);
            auto it = terms_.find(swapped);
            if (it == terms_.end()) return false;
            const double scale = std::max({1.0, std::fabs(coeff), std::fabs(it->second)});
            if (std::fabs(it->second - coeff) > 1e-12 * scale) return false;
        }
    }
    return true;
}

SparseSymPoly SparseSymPoly::scaled(double c) const {
    std::map<MultiIndex, double> t = terms_;
    for (auto& [alpha, coeff] : t) coeff *= c;
    return SparseSymPoly(nvars_, std::move(t));
}

SparseSymPoly SparseSymPoly::normalized() const {
    const double pe = value_at_e();
    if (pe == 0.0) throw std::invalid_argument("SparseSymPoly::normalized: p(e) == 0");
    return scaled(1.0 / pe);
}

SparseSymPoly SparseSymPoly::symmetrized() const {
    std::map<MultiIndex, double> t;
    for (const auto& [alpha, coeff] : terms_) {
        MultiIndex perm = alpha;
        std::sort(perm.begin(), perm.end());
        std::vector<MultiIndex> orbit;
        do {
            orbit.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        const double share = coeff / static_cast<double>(orbit.size());
        for (auto& a : orbit) t[a] += share;
    }
    return SparseSymPoly(nvars_, std::move(t));
}

// ---------------------------------------------------------------- UnivariatePoly

UnivariatePoly::UnivariatePoly(std::vector<double> coeffs, double trim_tol)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("UnivariatePoly: empty coefficients");
    double cmax = 0.0;
    for (double c : coeffs_) cmax = std::max(cmax, std::fabs(c));
    const double cut = trim_tol * cmax;
    while (coeffs_.size() > 1 && std::fabs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

double UnivariatePoly::eval(double t) const {
    double v = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * t + coeffs_[i];
    return v;
}

namespace {

// Compensated double-double arithmetic.  Divided differences at integer
// nodes amplify rounding by the value spread (up to ~1e13 at degree 12), so
// the Newton pipeline runs at roughly quadruple precision.
struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD dd_from(double x) { return {x, 0.0}; }

inline DD dd_two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD dd_add(DD a, DD b) {
    DD s = dd_two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const DD t = dd_two_sum(s.hi, s.lo);
    return t;
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_mul(DD a, DD b) {
    DD p = dd_two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(dd_from(q1), b));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(dd_from(q2), b));
    const double q3 = r.hi / b.hi;
    return dd_add(dd_two_sum(q1, q2), dd_from(q3));
}

}  // namespace

UnivariatePoly interpolate_univariate(std::span<const double> nodes,
                                      std::span<const double> values) {
    const std::size_t n = nodes.size();
    if (n == 0 || n != values.size())
        throw std::invalid_argument("interpolate_univariate: need equally many nodes and values");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j])
                throw std::invalid_argument("interpolate_univariate: duplicate nodes");

    // divided-difference coefficients
    std::vector<DD> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = dd_from(values[i]);
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = dd_div(dd_sub(dd[i], dd[i - 1]), dd_from(nodes[i] - nodes[i - level]));

    // expand the Newton form into the monomial basis
    std::vector<DD> coeffs(n);
    std::vector<DD> basis{dd_from(1.0)};  // prod_{i<j} (t - x_i)
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            coeffs[i] = dd_add(coeffs[i], dd_mul(dd[j], basis[i]));
        if (j + 1 < n) {
            basis.push_back(dd_from(0.0));
            const DD xj = dd_from(nodes[j]);
            for (std::size_t i = basis.size() - 1; i > 0; --i)
                basis[i] = dd_sub(basis[i - 1], dd_mul(xj, basis[i]));
            basis[0] = dd_neg(dd_mul(xj, basis[0]));
        }
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = coeffs[i].hi + coeffs[i].lo;
    return UnivariatePoly(std::move(out));
}

// ------------------------------------------------------------------- roots

namespace {

// In-place balancing of a dense matrix by powers of 2 (similarity transform).
void balance(std::vector<double>& a, int n) {
    constexpr double radix = 2.0, radix2 = 4.0;
    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    bool noconv = true;
    while (noconv) {
        noconv = false;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    c += std::fabs(A(j, i));
                    r += std::fabs(A(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                noconv = true;
                const double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) A(i, j) *= ginv;
                for (int j = 0; j < n; ++j) A(j, i) *= f;
            }
        }
    }
}

// Eigenvalues of a real upper Hessenberg matrix by the double-shift QR method.
void hqr(std::vector<double>& a, int n, std::vector<double>& wr, std::vector<double>& wi) {
    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(A(i, j));

    int nn = n - 1;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, x, y, z = 0.0, w, s;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; --l) {
                s = std::fabs(A(l - 1, l - 1)) + std::fabs(A(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(A(l, l - 1)) + s == s) {
                    A(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 1) l = 0;
            x = A(nn, nn);
            if (l == nn) {
                wr[static_cast<std::size_t>(nn)] = x + t;
                wi[static_cast<std::size_t>(nn)] = 0.0;
                --nn;
            } else {
                y = A(nn - 1, nn - 1);
                w = A(nn, nn - 1) * A(nn - 1, nn);
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + (p >= 0.0 ? z : -z);
                        wr[static_cast<std::size_t>(nn - 1)] = wr[static_cast<std::size_t>(nn)] = x + z;
                        if (z != 0.0) wr[static_cast<std::size_t>(nn)] = x - w / z;
                        wi[static_cast<std::size_t>(nn - 1)] = wi[static_cast<std::size_t>(nn)] = 0.0;
                    } else {
                        wr[static_cast<std::size_t>(nn - 1)] = wr[static_cast<std::size_t>(nn)] = x + p;
                        wi[static_cast<std::size_t>(nn)] = z;
                        wi[static_cast<std::size_t>(nn - 1)] = -z;
                    }
                    nn -= 2;
                } else {
                    // symmetric +-pair spectra split only linearly, so allow
                    // well beyond the classic 30 sweeps before giving up
                    if (its == 100)
                        throw std::runtime_error("real_roots: QR iteration did not converge");
                    if (its == 10 || its == 20) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) A(i, i) -= x;
                        s = std::fabs(A(nn, nn - 1)) + std::fabs(A(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    for (m = nn - 2; m >= l; --m) {
                        z = A(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / A(m + 1, m) + A(m, m + 1);
                        q = A(m + 1, m + 1) - z - r - s;
                        r = A(m + 2, m + 1);
                        s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::fabs(A(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        const double v = std::fabs(p) *
                            (std::fabs(A(m - 1, m - 1)) + std::fabs(z) + std::fabs(A(m + 1, m + 1)));
                        if (u + v == v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        A(i, i - 2) = 0.0;
                        if (i != m + 2) A(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = A(k, k - 1);
                            q = A(k + 1, k - 1);
                            r = 0.0;
                            if (k + 1 != nn) r = A(k + 2, k - 1);
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = std::sqrt(p * p + q * q + r * r);
                        if (p < 0.0) s = -s;
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) A(k, k - 1) = -A(k, k - 1);
                        } else {
                            A(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            double pp = A(k, j) + q * A(k + 1, j);
                            if (k + 1 != nn) {
                                pp += r * A(k + 2, j);
                                A(k + 2, j) -= pp * z;
                            }
                            A(k + 1, j) -= pp * y;
                            A(k, j) -= pp * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            double pp = x * A(i, k) + y * A(i, k + 1);
                            if (k + 1 != nn) {
                                pp += z * A(i, k + 2);
                                A(i, k + 2) -= pp * r;
                            }
                            A(i, k + 1) -= pp * q;
                            A(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
}

}  // namespace

RootResult real_roots(const UnivariatePoly& q) {
    if (q.is_zero()) throw std::invalid_argument("real_roots: zero polynomial");
    const auto& c = q.coeffs();
    const int d = q.degree();
    RootResult out;
    if (d == 0) return out;
    if (d == 1) {
        out.roots = {-c[0] / c[1]};
        return out;
    }
    if (d == 2) {
        const double a = c[2], b = c[1], c0 = c[0];
        const double disc = b * b - 4.0 * a * c0;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            double r1, r2;
            if (qq != 0.0) {
                r1 = qq / a;
                r2 = c0 / qq;
            } else {
                r1 = r2 = 0.0;
            }
            out.roots = {std::min(r1, r2), std::max(r1, r2)};
        } else {
            const double re = -b / (2.0 * a);
            out.roots = {re, re};
            out.max_imag = std::sqrt(-disc) / (2.0 * std::fabs(a));
        }
        return out;
    }

    // companion matrix of the monic normalization, upper Hessenberg already
    std::vector<double> a(static_cast<std::size_t>(d * d), 0.0);
    for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i * d + d - 1)] = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(d)];
    for (int i = 1; i < d; ++i) a[static_cast<std::size_t>(i * d + i - 1)] = 1.0;
    balance(a, d);
    std::vector<double> wr(static_cast<std::size_t>(d)), wi(static_cast<std::size_t>(d));
    hqr(a, d, wr, wi);
    out.roots = std::move(wr);
    std::sort(out.roots.begin(), out.roots.end());
    for (double im : wi) out.max_imag = std::max(out.max_imag, std::fabs(im));
    return out;
}

// ------------------------------------------------------------------- series

TruncatedSeries TruncatedSeries::one(int m) {
    TruncatedSeries s;
    s.coeffs.assign(static_cast<std::size_t>(m) + 1, 0.0);
    s.coeffs[0] = 1.0;
    return s;
}

TruncatedSeries TruncatedSeries::mul(const TruncatedSeries& other) const {
    const int m = order();
    TruncatedSeries out;
    out.coeffs.assign(static_cast<std::size_t>(m) + 1, 0.0);
    for (int i = 0; i <= m; ++i) {
        if (coeffs[static_cast<std::size_t>(i)] == 0.0) continue;
        const int jmax = std::min(m - i, other.order());
        for (int j = 0; j <= jmax; ++j)
            out.coeffs[static_cast<std::size_t>(i + j)] +=
                coeffs[static_cast<std::size_t>(i)] * other.coeffs[static_cast<std::size_t>(j)];
    }
    return out;
}

TruncatedSeries TruncatedSeries::pow(int q) const {
    if (q < 0) throw std::invalid_argument("TruncatedSeries::pow: negative exponent");
    TruncatedSeries out = one(order());
    for (int i = 0; i < q; ++i) out = out.mul(*this);
    return out;
}

TruncatedSeries series_qth_root(const TruncatedSeries& s, int q) {
    if (q < 1) throw std::invalid_argument("series_qth_root: q must be >= 1");
    if (std::fabs(s.coeffs.at(0) - 1.0) > 1e-12)
        throw std::invalid_argument("series_qth_root: constant term must be 1");
    const int m = s.order();
    TruncatedSeries r;
    r.coeffs.assign(static_cast<std::size_t>(m) + 1, 0.0);
    r.coeffs[0] = 1.0;
    for (int k = 1; k <= m; ++k) {
        // with r_k still 0, [t^k] r^q is the known part; raising r_k adds q*r_k
        const TruncatedSeries partial = r.pow(q);
        r.coeffs[static_cast<std::size_t>(k)] =
            (s.coeffs[static_cast<std::size_t>(k)] - partial.coeffs[static_cast<std::size_t>(k)]) / q;
    }
    return r;
}

// --------------------------------------------------------------- symmetric fns

std::vector<double> elementary_symmetric_all(std::span<const double> values) {
    std::vector<double> e(values.size() + 1, 0.0);
    e[0] = 1.0;
    std::size_t used = 0;
    for (double v : values) {
        ++used;
        for (std::size_t k = used; k >= 1; --k) e[k] += v * e[k - 1];
    }
    return e;
}

double elementary_symmetric(std::span<const double> values, int k) {
    if (k < 0 || k > static_cast<int>(values.size()))
        throw std::invalid_argument("elementary_symmetric: k out of range");
    return elementary_symmetric_all(values)[static_cast<std::size_t>(k)];
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace gd
