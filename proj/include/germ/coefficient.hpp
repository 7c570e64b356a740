#ifndef GERM_COEFFICIENT_HPP
#define GERM_COEFFICIENT_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include <gmpxx.h>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "gaussian_rational.hpp"

// Uniform vocabulary over the three coefficient fields used by the library:
//   GaussianRational  exact Q(i)
//   Cyclotomic        exact Q(zeta_M), used where roots of unity enter
//   Complex           complex double with a configurable zero tolerance
namespace germ {

using Complex = std::complex<double>;

inline constexpr double default_eps = 1e-10;

template <class F>
struct field_traits;

template <>
struct field_traits<GaussianRational> {
    static constexpr bool exact = true;
};
template <>
struct field_traits<Cyclotomic> {
    static constexpr bool exact = true;
};
template <>
struct field_traits<Complex> {
    static constexpr bool exact = false;
};

template <class F>
inline constexpr bool is_exact_v = field_traits<F>::exact;

// The zero test. eps is ignored by exact fields.
inline bool is_zero(const GaussianRational &x, double) { return x.is_zero(); }
inline bool is_zero(const Cyclotomic &x, double) { return x.is_zero(); }
inline bool is_zero(const Complex &x, double eps) { return std::abs(x) < eps; }

inline GaussianRational conjugate(const GaussianRational &x) { return x.conj(); }
inline Cyclotomic conjugate(const Cyclotomic &x) { return x.conj(); }
inline Complex conjugate(const Complex &x) { return std::conj(x); }

inline GaussianRational real_part(const GaussianRational &x) { return GaussianRational(x.re()); }
inline Cyclotomic real_part(const Cyclotomic &x) { return x.real_part(); }
inline Complex real_part(const Complex &x) { return x.real(); }

inline GaussianRational imag_part(const GaussianRational &x) { return GaussianRational(x.im()); }
inline Cyclotomic imag_part(const Cyclotomic &x) { return x.imag_part(); }
inline Complex imag_part(const Complex &x) { return x.imag(); }

inline Complex to_complex(const GaussianRational &x) { return x.to_complex(); }
inline Complex to_complex(const Cyclotomic &x) { return x.to_complex(); }
inline Complex to_complex(const Complex &x) { return x; }

inline double magnitude(const GaussianRational &x) { return std::abs(x.to_complex()); }
inline double magnitude(const Cyclotomic &x) { return std::abs(x.to_complex()); }
inline double magnitude(const Complex &x) { return std::abs(x); }

inline GaussianRational inverse(const GaussianRational &x) { return x.inverse(); }
inline Complex inverse(const Complex &x)
{
    if (x == Complex(0.0))
        throw precondition_error("division by zero");
    return 1.0 / x;
}

inline bool lex_less(const Complex &a, const Complex &b)
{
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

template <class F>
F from_rational(const mpq_class &q);

template <>
inline GaussianRational from_rational<GaussianRational>(const mpq_class &q)
{
    return GaussianRational(q);
}
template <>
inline Cyclotomic from_rational<Cyclotomic>(const mpq_class &q)
{
    return Cyclotomic(q);
}
template <>
inline Complex from_rational<Complex>(const mpq_class &q)
{
    return q.get_d();
}

template <class F>
F from_int(long v)
{
    return from_rational<F>(mpq_class(v));
}

template <class F>
F imaginary_unit();
template <>
inline GaussianRational imaginary_unit<GaussianRational>()
{
    return GaussianRational::i();
}
template <>
inline Complex imaginary_unit<Complex>()
{
    return {0.0, 1.0};
}

// Field in which roots of unity of a given order live, paired with the base field.
template <class F>
struct ray_field;

template <>
struct ray_field<GaussianRational> {
    using type = Cyclotomic;

    struct context {
        cyclotomic_ring_ptr ring;
    };

    // Context holding zeta_modulus (modulus must be a multiple of 4).
    static context make(int modulus) { return {CyclotomicRing::make(modulus)}; }
    static Cyclotomic lift(const context &ctx, const GaussianRational &x) { return {ctx.ring, x}; }
    static Cyclotomic root(const context &ctx, long k) { return Cyclotomic::root_of_unity(ctx.ring, k); }
    static GaussianRational lower(const Cyclotomic &x) { return x.to_gaussian(); }
};

template <>
struct ray_field<Complex> {
    using type = Complex;

    struct context {
        int modulus;
    };

    static context make(int modulus) { return {modulus}; }
    static Complex lift(const context &, const Complex &x) { return x; }
    static Complex root(const context &ctx, long k)
    {
        long r = ((k % ctx.modulus) + ctx.modulus) % ctx.modulus;
        return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(r) / ctx.modulus);
    }
    static Complex lower(const Complex &x) { return x; }
};

template <class F>
using ray_field_t = typename ray_field<F>::type;

// The exact/float switch as a runtime value.
enum class Mode { exact, floating };

} // namespace germ

#endif
