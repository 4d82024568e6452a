#include "stsurf/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stsurf {

namespace {
constexpr double kTrimRel = 1e-13;
}

Poly::Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { normalize(); }
Poly::Poly(std::initializer_list<Complex> coeffs) : c_(coeffs) { normalize(); }

void Poly::normalize()
{
    double scale = 0.0;
    for (const Complex& c : c_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) {
        c_.clear();
        return;
    }
    while (!c_.empty() && std::abs(c_.back()) <= kTrimRel * scale) c_.pop_back();
    for (Complex& c : c_)
        if (std::abs(c) <= kTrimRel * scale) c = Complex(0);
}

double Poly::max_coeff_magnitude() const
{
    double m = 0.0;
    for (const Complex& c : c_) m = std::max(m, std::abs(c));
    return m;
}

Complex Poly::eval(Complex z) const
{
    Complex acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1) return Poly();
    std::vector<Complex> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
    return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const
{
    std::vector<Complex> s(std::max(c_.size(), o.c_.size()), Complex(0));
    for (size_t k = 0; k < c_.size(); ++k) s[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) s[k] += o.c_[k];
    return Poly(std::move(s));
}

Poly Poly::operator-(const Poly& o) const { return *this + (o * Complex(-1)); }

Poly Poly::operator*(const Poly& o) const
{
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Complex> s(c_.size() + o.c_.size() - 1, Complex(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) s[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(s));
}

Poly Poly::operator*(Complex s) const
{
    std::vector<Complex> r(c_);
    for (Complex& c : r) c *= s;
    return Poly(std::move(r));
}

Poly Poly::shifted_up(int k) const
{
    if (is_zero()) return Poly();
    std::vector<Complex> s(c_.size() + static_cast<size_t>(k), Complex(0));
    std::copy(c_.begin(), c_.end(), s.begin() + k);
    return Poly(std::move(s));
}

Poly Poly::deflate(Complex r) const
{
    if (c_.size() <= 1) return Poly();
    std::vector<Complex> q(c_.size() - 1);
    Complex carry = c_.back();
    for (size_t k = c_.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = c_[k] + carry * r;
    }
    return Poly(std::move(q));
}

void Poly::divide(const Poly& d, Poly& q, Poly& r) const
{
    if (d.is_zero()) throw std::invalid_argument("Poly::divide: division by zero polynomial");
    if (degree() < d.degree() || is_zero()) {
        q = Poly();
        r = *this;
        return;
    }
    std::vector<Complex> rem(c_);
    std::vector<Complex> quo(c_.size() - d.c_.size() + 1, Complex(0));
    Complex lead = d.c_.back();
    for (size_t k = quo.size(); k-- > 0;) {
        Complex f = rem[k + d.c_.size() - 1] / lead;
        quo[k] = f;
        for (size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly Poly::conj_coeffs() const
{
    std::vector<Complex> s(c_);
    for (Complex& c : s) c = std::conj(c);
    return Poly(std::move(s));
}

Poly Poly::involution_star() const
{
    if (is_zero()) return Poly();
    size_t n = c_.size();
    std::vector<Complex> s(n);
    for (size_t k = 0; k < n; ++k) {
        Complex v = std::conj(c_[k]);
        if (k % 2 == 1) v = -v;
        s[n - 1 - k] = v;
    }
    return Poly(std::move(s));
}

Poly Poly::shifted_arg(Complex a) const
{
    // Repeated synthetic division accumulates the Taylor coefficients at a.
    if (is_zero()) return Poly();
    std::vector<Complex> work(c_);
    size_t n = work.size() - 1;
    for (size_t k = 0; k < n; ++k)
        for (size_t j = n; j-- > k;) work[j] += a * work[j + 1];
    return Poly(std::move(work));
}

namespace {

// Newton iteration used to polish a root of p known to be simple.
Complex polish_simple(const Poly& p, const Poly& dp, Complex z, int iters = 40)
{
    for (int i = 0; i < iters; ++i) {
        Complex f = p.eval(z);
        Complex d = dp.eval(z);
        if (std::abs(d) == 0.0) break;
        Complex step = f / d;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

std::vector<Complex> aberth(const Poly& p, int max_iterations)
{
    int n = p.degree();
    std::vector<Complex> z(static_cast<size_t>(n));
    // Cauchy bound for the root radius.
    double lead = std::abs(p.leading());
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(p.coeff(k)) / lead);
    radius = 1.0 + radius;
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * kPi * (k + 0.25) / n + 0.3;
        z[static_cast<size_t>(k)] = 0.6 * radius * Complex(std::cos(ang), std::sin(ang));
    }
    Poly dp = p.derivative();
    double scale = p.max_coeff_magnitude();
    for (int it = 0; it < max_iterations; ++it) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex zi = z[static_cast<size_t>(i)];
            Complex f = p.eval(zi);
            if (std::abs(f) <= 1e-15 * scale * std::pow(1.0 + std::abs(zi), n)) continue;
            Complex d = dp.eval(zi);
            Complex ratio = (std::abs(d) > 0.0) ? f / d : Complex(1e-3);
            Complex sum(0);
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (zi - z[static_cast<size_t>(j)]);
            Complex denom = 1.0 - ratio * sum;
            Complex step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
            z[static_cast<size_t>(i)] = zi - step;
            moved = std::max(moved, std::abs(step) / (1.0 + std::abs(zi)));
        }
        if (moved < 1e-15) break;
    }
    return z;
}

// Distance-only clustering; used as the fallback when the multiplicity
// analysis is inconsistent.
std::vector<RootCluster> cluster_by_distance(const Poly& q, const std::vector<Complex>& raw,
                                             double rel_tol)
{
    std::vector<bool> used(raw.size(), false);
    std::vector<RootCluster> clusters;
    for (size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<Complex> group = {raw[i]};
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            Complex mean(0);
            for (Complex g : group) mean += g;
            mean /= double(group.size());
            for (size_t j = 0; j < raw.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(raw[j] - mean) <= rel_tol * (1.0 + std::abs(mean))) {
                    group.push_back(raw[j]);
                    used[j] = true;
                    grew = true;
                }
            }
        }
        Complex mean(0);
        for (Complex g : group) mean += g;
        mean /= double(group.size());
        RootCluster rc;
        rc.multiplicity = static_cast<int>(group.size());
        rc.validated = rc.multiplicity == 1;
        Poly target = q;
        for (int k = 1; k < rc.multiplicity; ++k) target = target.derivative();
        rc.center = polish_simple(target, target.derivative(), mean);
        for (Complex g : group) rc.spread = std::max(rc.spread, std::abs(g - rc.center));
        rc.residual = std::abs(q.eval(rc.center)) / q.max_coeff_magnitude();
        clusters.push_back(rc);
    }
    return clusters;
}

// Multiplicity-aware clustering. An m-fold root smears Aberth output over a
// disk of radius ~eps^(1/m), so distance alone cannot cluster m >= 3. For
// each raw point the candidate multiplicity k is accepted when polishing on
// the (k-1)-th derivative stays in the basin and p, p', ..., p^(k-1) all
// vanish there to near round-off while p^(k) does not.
std::vector<RootCluster> cluster_roots(const Poly& q, const std::vector<Complex>& raw,
                                       const RootOptions& opts)
{
    int kmax = std::min(q.degree(), 8);
    std::vector<Poly> derivs = {q};
    for (int k = 1; k <= kmax; ++k) derivs.push_back(derivs.back().derivative());
    auto deriv_scale = [&](int j, Complex z) {
        return derivs[static_cast<size_t>(j)].max_coeff_magnitude() *
               std::pow(std::max(1.0, std::abs(z)), derivs[static_cast<size_t>(j)].degree());
    };

    struct Assigned {
        Complex center;
        int mult;
    };
    std::vector<Assigned> assigned;
    bool consistent = true;
    for (Complex r : raw) {
        bool done = false;
        // Ascending k: a true m-fold root fails the p^(k) nonvanishing gate
        // for every k < m, while a resolvable pair of close simple roots is
        // kept split.
        for (int k = 1; k <= kmax && !done; ++k) {
            const Poly& tgt = derivs[static_cast<size_t>(k - 1)];
            Complex c = polish_simple(tgt, derivs[static_cast<size_t>(k)], r);
            if (!is_finite(c)) continue;
            if (std::abs(c - r) > 0.02 * (1.0 + std::abs(r))) continue;
            bool ok = true;
            for (int j = 0; j < k; ++j)
                if (std::abs(derivs[static_cast<size_t>(j)].eval(c)) > 1e-11 * deriv_scale(j, c)) {
                    ok = false;
                    break;
                }
            if (ok && std::abs(derivs[static_cast<size_t>(k)].eval(c)) <= 1e-6 * deriv_scale(k, c))
                ok = false;
            if (ok) {
                assigned.push_back({c, k});
                done = true;
            }
        }
        if (!done) {
            consistent = false;
            break;
        }
    }

    std::vector<RootCluster> clusters;
    if (consistent) {
        std::vector<bool> used(assigned.size(), false);
        int total = 0;
        for (size_t i = 0; i < assigned.size() && consistent; ++i) {
            if (used[i]) continue;
            RootCluster rc;
            rc.center = assigned[i].center;
            rc.multiplicity = assigned[i].mult;
            int members = 0;
            for (size_t j = 0; j < assigned.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(assigned[j].center - rc.center) <=
                    1e-7 * (1.0 + std::abs(rc.center))) {
                    if (assigned[j].mult != rc.multiplicity) consistent = false;
                    used[j] = true;
                    ++members;
                    rc.spread = std::max(rc.spread, std::abs(raw[j] - rc.center));
                }
            }
            if (members != rc.multiplicity) consistent = false;
            rc.residual = std::abs(q.eval(rc.center)) / q.max_coeff_magnitude();
            clusters.push_back(rc);
            total += rc.multiplicity;
        }
        if (total != q.degree()) consistent = false;
    }
    if (!consistent) clusters = cluster_by_distance(q, raw, opts.cluster_rel_tol);
    return clusters;
}

} // namespace

std::vector<RootCluster> poly_roots(const Poly& p, const RootOptions& opts)
{
    if (p.is_zero()) throw std::invalid_argument("poly_roots: zero polynomial");
    std::vector<RootCluster> out;

    // Roots pinned exactly at the origin (vanishing low coefficients).
    const auto& c = p.coeffs();
    size_t zeros_at_origin = 0;
    while (zeros_at_origin < c.size() && std::abs(c[zeros_at_origin]) == 0.0) ++zeros_at_origin;
    if (zeros_at_origin > 0) {
        RootCluster rc;
        rc.center = Complex(0);
        rc.multiplicity = static_cast<int>(zeros_at_origin);
        out.push_back(rc);
    }
    Poly q(std::vector<Complex>(c.begin() + static_cast<long>(zeros_at_origin), c.end()));
    if (q.degree() == 0) return out;

    std::vector<Complex> raw;
    if (q.degree() == 1) {
        raw = {-q.coeff(0) / q.coeff(1)};
    } else if (q.degree() == 2) {
        Complex a = q.coeff(2), b = q.coeff(1), cc = q.coeff(0);
        Complex disc = std::sqrt(b * b - 4.0 * a * cc);
        // Pick the sign that avoids cancellation in -b -+ disc.
        Complex s = (std::real(std::conj(b) * disc) >= 0.0) ? -b - disc : -b + disc;
        Complex r1 = s / (2.0 * a);
        Complex r2 = (std::abs(s) > 0.0) ? (2.0 * cc) / s : -b / (2.0 * a);
        raw = {r1, r2};
    } else {
        raw = aberth(q, opts.max_iterations);
    }

    std::vector<RootCluster> clusters = cluster_roots(q, raw, opts);

    double scale = q.max_coeff_magnitude();
    for (const RootCluster& rc : clusters) {
        double local = std::pow(1.0 + std::abs(rc.center), q.degree());
        if (!(rc.residual <= 1e-6 * local) || !is_finite(rc.center))
            throw std::runtime_error("poly_roots: iteration stalled, residual " +
                                     std::to_string(rc.residual) + " at root estimate " +
                                     to_string(ExtComplex(rc.center)) + " (scale " +
                                     std::to_string(scale) + ")");
    }
    out.insert(out.end(), clusters.begin(), clusters.end());
    return out;
}

} // namespace stsurf
