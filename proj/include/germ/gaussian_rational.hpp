#ifndef GERM_GAUSSIAN_RATIONAL_HPP
#define GERM_GAUSSIAN_RATIONAL_HPP

#include <complex>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "errors.hpp"

namespace germ {

// Parses "p", "-p" or "p/q" into a canonical rational.
inline mpq_class parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw parse_error("empty rational literal");
    if (s.front() == '+')
        s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw parse_error("malformed rational literal '" + std::string(text) + "'");
    if (q.get_den() == 0)
        throw parse_error("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_string(const mpq_class &q) { return q.get_str(10); }

// Double nearest to q.
inline double to_double(const mpq_class &q) { return q.get_d(); }

// a + b i with a, b arbitrary precision rationals.
class GaussianRational {
  public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {0, 1}; }

    const mpq_class &re() const { return re_; }
    const mpq_class &im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const
    {
        if (is_zero())
            throw precondition_error("division by zero Gaussian rational");
        mpq_class n = norm();
        return {re_ / n, -im_ / n};
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational &operator+=(const GaussianRational &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &o)
    {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational &operator/=(const GaussianRational &o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational &a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Lexicographic on (re, im); used only to make outputs deterministic.
    friend bool lex_less(const GaussianRational &a, const GaussianRational &b)
    {
        if (a.re_ != b.re_)
            return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    friend std::ostream &operator<<(std::ostream &os, const GaussianRational &z)
    {
        return os << '(' << z.re_.get_str() << ',' << z.im_.get_str() << ')';
    }

  private:
    mpq_class re_{0};
    mpq_class im_{0};
};

} // namespace germ

#endif
