"""High-precision reference values for the certificate tests.

Evaluates the certificate quantities with mpmath at 40 digits, taking the
parameters as exact decimals. The corner bound goes through the law-of-sines
form and sin(xi) is formed from tan(xi) directly, so this path shares no
intermediate with the Rust implementation.

    python3 tools/certificate_oracle.py [a A eps delta]
"""

import sys

from mpmath import mp, mpf, sqrt, atan, sin, pi, hypot

mp.dps = 40


def evaluate(a, big_a, eps, delta):
    a, big_a, eps, delta = (mpf(v) for v in (a, big_a, eps, delta))
    l = 2 * eps * (a + 2 * eps) / (big_a + a)
    tan_xi = (a - eps) * (big_a + a - 2 * eps) / (eps * (big_a + 3 * a - 2 * eps))
    sin_xi = tan_xi / sqrt(1 + tan_xi**2)
    xi = atan(tan_xi)
    root = sqrt(delta**2 - 1)
    b = (big_a + a + 2 * eps) * root / (2 * sin_xi)
    d = (l + b / sin_xi) * sin_xi / sin(xi - pi / 4)
    b_prime = (big_a - a + 2 * d) * root / 2
    vertical = d + b_prime
    edge = hypot(l + vertical / tan_xi + b / sin_xi, vertical)
    target = (big_a - a) / (big_a + a) * eps
    return {
        "l": l,
        "tan_xi": tan_xi,
        "xi": xi,
        "b": b,
        "D": d,
        "b_prime": b_prime,
        "edge_error": edge,
        "target": target,
    }


if __name__ == "__main__":
    args = sys.argv[1:] or ["1", "15", "0.16", "1.0000047"]
    for name, value in evaluate(*args).items():
        print(f"{name:>10} = {mp.nstr(value, 20)}")
