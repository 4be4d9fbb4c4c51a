#!/usr/bin/env python3
"""Oracle for simple-random-walk lattice integrals on Z^d.

returnIntegral(d)      = int_{[-pi,pi]^d} (1 - Dhat(k))^{-1}  dk/(2pi)^d
intersectionIntegral(d)= int_{[-pi,pi]^d} (1 - Dhat(k))^{-2}  dk/(2pi)^d
with Dhat(k) = (1/d) sum_j cos k_j.

Route A (d=3 return): Watson's closed form
    (sqrt(6)/(32 pi^3)) Gamma(1/24) Gamma(5/24) Gamma(7/24) Gamma(11/24).
Route B (any d): Bessel representation
    returnIntegral = int_0^inf e^{-t} I0(t/d)^d dt,
    intersectionIntegral = int_0^inf t e^{-t} I0(t/d)^d dt,
computed with the exponentially scaled integrand e^{-t} I0(t/d)^d =
prod_j [e^{-t/d} I0(t/d)] to avoid overflow, plus an asymptotic tail
I0(x) ~ e^x/sqrt(2 pi x) * (1 + 1/(8x) + 9/(128 x^2) + ...).
"""
import mpmath as mp

mp.mp.dps = 30


def scaled_i0(x):
    # e^{-x} I0(x), stable for large x
    return mp.exp(-x) * mp.besseli(0, x)


def bessel_integral(d, power_t, T=4000):
    f = lambda t: (t ** power_t) * scaled_i0(t / d) ** d
    head = mp.quad(f, [0, 1, 10, 100, T])
    # tail: e^{-x} I0(x) ~ (2 pi x)^{-1/2} (1 + 1/(8x) + 9/(128 x^2))
    def tail_f(t):
        x = t / d
        return (t ** power_t) * ((2 * mp.pi * x) ** mp.mpf(-0.5)
                                 * (1 + 1 / (8 * x) + 9 / (128 * x ** 2))) ** d
    tail = mp.quad(tail_f, [T, mp.inf])
    return head + tail


def main():
    watson = (mp.sqrt(6) / (32 * mp.pi ** 3) * mp.gamma(mp.mpf(1) / 24)
              * mp.gamma(mp.mpf(5) / 24) * mp.gamma(mp.mpf(7) / 24)
              * mp.gamma(mp.mpf(11) / 24))
    print("d=3 return, closed form :", mp.nstr(watson, 20))
    b3 = bessel_integral(3, 0)
    print("d=3 return, Bessel route:", mp.nstr(b3, 20))
    assert abs(watson - b3) < mp.mpf("1e-12"), abs(watson - b3)
    print("d=3 return probability  :", mp.nstr(1 - 1 / watson, 20))
    b4 = bessel_integral(4, 0)
    print("d=4 return, Bessel route:", mp.nstr(b4, 20))
    b5 = bessel_integral(5, 0)
    print("d=5 return, Bessel route:", mp.nstr(b5, 20))
    i5 = bessel_integral(5, 1)
    print("d=5 intersection        :", mp.nstr(i5, 20))


if __name__ == "__main__":
    main()
