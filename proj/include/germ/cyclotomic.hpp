#ifndef GERM_CYCLOTOMIC_HPP
#define GERM_CYCLOTOMIC_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "gaussian_rational.hpp"

namespace germ {

namespace detail {

// Integer polynomial, coefficient i multiplies x^i.
using int_poly = std::vector<long>;

// Exact quotient of a by monic b.
inline int_poly exact_divide(int_poly a, const int_poly &b)
{
    const std::size_t db = b.size() - 1;
    int_poly q(a.size() - db, 0);
    for (std::size_t k = a.size(); k-- > db;) {
        long lead = a[k];
        q[k - db] = lead;
        for (std::size_t j = 0; j <= db; ++j)
            a[k - db + j] -= lead * b[j];
    }
    return q;
}

inline int_poly cyclotomic_polynomial(int m)
{
    int_poly p(static_cast<std::size_t>(m) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0)
            p = exact_divide(p, cyclotomic_polynomial(d));
    return p;
}

} // namespace detail

// Q(zeta_M) with zeta_M = exp(2 pi i / M), stored in the power basis
// 1, x, ..., x^(phi(M)-1) reduced modulo the cyclotomic polynomial Phi_M.
class CyclotomicRing {
  public:
    static std::shared_ptr<const CyclotomicRing> make(int modulus)
    {
        if (modulus < 1)
            throw precondition_error("cyclotomic modulus must be positive");
        return std::shared_ptr<const CyclotomicRing>(new CyclotomicRing(modulus));
    }

    int modulus() const { return m_; }
    std::size_t degree() const { return deg_; }

    // x^j mod Phi_M for 0 <= j < max(M, 2 deg - 1).
    const detail::int_poly &power(std::size_t j) const { return powers_[j]; }

  private:
    explicit CyclotomicRing(int m) : m_(m)
    {
        auto phi = detail::cyclotomic_polynomial(m);
        deg_ = phi.size() - 1;
        std::size_t count = std::max<std::size_t>(static_cast<std::size_t>(m), 2 * deg_);
        detail::int_poly cur(deg_, 0);
        cur[0] = 1;
        if (deg_ == 0) // cannot happen for m >= 1
            throw precondition_error("degenerate cyclotomic polynomial");
        for (std::size_t j = 0; j < count; ++j) {
            powers_.push_back(cur);
            // multiply by x and reduce
            long top = cur[deg_ - 1];
            for (std::size_t i = deg_ - 1; i > 0; --i)
                cur[i] = cur[i - 1] - top * phi[i];
            cur[0] = -top * phi[0];
        }
    }

    int m_;
    std::size_t deg_ = 0;
    std::vector<detail::int_poly> powers_;
};

using cyclotomic_ring_ptr = std::shared_ptr<const CyclotomicRing>;

// Element of Q(zeta_M). A default-constructed value is a plain rational and
// adopts the ring of whatever it is combined with.
class Cyclotomic {
  public:
    Cyclotomic() : c_(1) {}
    Cyclotomic(long v) : c_(1, mpq_class(v)) {}
    Cyclotomic(const mpq_class &v) : c_(1, v) {}

    Cyclotomic(cyclotomic_ring_ptr ring, const GaussianRational &z) : ring_(std::move(ring))
    {
        c_.assign(ring_->degree(), mpq_class(0));
        if (!z.is_real()) {
            if (ring_->modulus() % 4 != 0)
                throw precondition_error("ring does not contain i");
            add_power(static_cast<std::size_t>(ring_->modulus() / 4), z.im());
        }
        add_power(0, z.re());
    }

    // zeta_M^k.
    static Cyclotomic root_of_unity(const cyclotomic_ring_ptr &ring, long k)
    {
        Cyclotomic r(ring, GaussianRational(0));
        long m = ring->modulus();
        r.add_power(static_cast<std::size_t>(((k % m) + m) % m), mpq_class(1));
        return r;
    }

    const cyclotomic_ring_ptr &ring() const { return ring_; }
    const std::vector<mpq_class> &coefficients() const { return c_; }

    bool is_zero() const
    {
        for (const auto &q : c_)
            if (sgn(q) != 0)
                return false;
        return true;
    }

    Cyclotomic conj() const
    {
        if (!ring_)
            return *this;
        Cyclotomic r(ring_, GaussianRational(0));
        const std::size_t m = static_cast<std::size_t>(ring_->modulus());
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (sgn(c_[j]) != 0)
                r.add_power(j == 0 ? 0 : m - j, c_[j]);
        return r;
    }

    Cyclotomic real_part() const
    {
        Cyclotomic r = *this + conj();
        return r.scaled(mpq_class(1, 2));
    }

    Cyclotomic imag_part() const
    {
        if (!ring_)
            return Cyclotomic(0);
        // (v - conj v) / (2i) = (v - conj v) * (-i) / 2
        Cyclotomic minus_i(ring_, GaussianRational(0, -1));
        return ((*this - conj()) * minus_i).scaled(mpq_class(1, 2));
    }

    std::complex<double> to_complex() const
    {
        if (!ring_)
            return {c_[0].get_d(), 0.0};
        const long double m = ring_->modulus();
        std::complex<long double> acc = 0;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (sgn(c_[j]) == 0)
                continue;
            long double a = 2 * std::numbers::pi_v<long double> * static_cast<long double>(j) / m;
            acc += static_cast<long double>(c_[j].get_d()) *
                   std::complex<long double>(std::cos(a), std::sin(a));
        }
        return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }

    // Exact value in Q(i); throws not_representable otherwise.
    GaussianRational to_gaussian() const
    {
        if (!ring_)
            return GaussianRational(c_[0]);
        const int m = ring_->modulus();
        if (m % 4 != 0) {
            for (std::size_t j = 1; j < c_.size(); ++j)
                if (sgn(c_[j]) != 0)
                    throw not_representable("cyclotomic value is not a Gaussian rational");
            return GaussianRational(c_[0]);
        }
        const auto &ipow = ring_->power(static_cast<std::size_t>(m / 4));
        std::size_t pivot = 0;
        for (std::size_t j = 1; j < ipow.size(); ++j)
            if (ipow[j] != 0) {
                pivot = j;
                break;
            }
        mpq_class b = c_[pivot] / mpq_class(ipow[pivot]);
        mpq_class a = c_[0] - b * ipow[0];
        Cyclotomic back(ring_, GaussianRational(a, b));
        if (!(back == *this))
            throw not_representable("cyclotomic value is not a Gaussian rational");
        return GaussianRational(a, b);
    }

    Cyclotomic scaled(const mpq_class &s) const
    {
        Cyclotomic r = *this;
        for (auto &q : r.c_)
            q *= s;
        return r;
    }

    Cyclotomic &operator+=(const Cyclotomic &o)
    {
        Cyclotomic b = o;
        unify(b);
        for (std::size_t j = 0; j < c_.size(); ++j)
            c_[j] += b.c_[j];
        return *this;
    }
    Cyclotomic &operator-=(const Cyclotomic &o)
    {
        Cyclotomic b = o;
        unify(b);
        for (std::size_t j = 0; j < c_.size(); ++j)
            c_[j] -= b.c_[j];
        return *this;
    }
    Cyclotomic &operator*=(const Cyclotomic &o)
    {
        if (!o.ring_) {
            for (auto &q : c_)
                q *= o.c_[0];
            return *this;
        }
        if (!ring_) {
            mpq_class s = c_[0];
            *this = o;
            for (auto &q : c_)
                q *= s;
            return *this;
        }
        Cyclotomic b = o;
        unify(b);
        const std::size_t n = c_.size();
        std::vector<mpq_class> prod(2 * n - 1, mpq_class(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(c_[i]) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(b.c_[j]) != 0)
                    prod[i + j] += c_[i] * b.c_[j];
        }
        std::fill(c_.begin(), c_.end(), mpq_class(0));
        for (std::size_t k = 0; k < prod.size(); ++k)
            if (sgn(prod[k]) != 0)
                add_power(k, prod[k]);
        return *this;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic &b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic &b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic &b) { return a *= b; }
    friend Cyclotomic operator-(const Cyclotomic &a) { return a.scaled(mpq_class(-1)); }

    friend bool operator==(const Cyclotomic &a, const Cyclotomic &b)
    {
        Cyclotomic x = a, y = b;
        x.unify(y);
        return x.c_ == y.c_;
    }

  private:
    void add_power(std::size_t j, const mpq_class &coef)
    {
        const auto &p = ring_->power(j);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != 0)
                c_[i] += coef * p[i];
    }

    Cyclotomic lifted(const cyclotomic_ring_ptr &target) const
    {
        Cyclotomic r(target, GaussianRational(0));
        if (!ring_) {
            r.c_[0] = c_[0];
            return r;
        }
        const std::size_t step = static_cast<std::size_t>(target->modulus() / ring_->modulus());
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (sgn(c_[j]) != 0)
                r.add_power(j * step, c_[j]);
        return r;
    }

    // Brings *this and o into a common ring.
    void unify(Cyclotomic &o)
    {
        if (ring_ == o.ring_)
            return;
        if (!o.ring_) {
            o = o.lifted(ring_);
            return;
        }
        if (!ring_) {
            *this = lifted(o.ring_);
            return;
        }
        if (ring_->modulus() == o.ring_->modulus()) {
            o.ring_ = ring_;
            return;
        }
        int m = std::lcm(ring_->modulus(), o.ring_->modulus());
        auto target = m == ring_->modulus()     ? ring_
                      : m == o.ring_->modulus() ? o.ring_
                                                : CyclotomicRing::make(m);
        if (ring_ != target)
            *this = lifted(target);
        if (o.ring_ != target)
            o = o.lifted(target);
    }

    cyclotomic_ring_ptr ring_;
    std::vector<mpq_class> c_;
};

} // namespace germ

#endif
