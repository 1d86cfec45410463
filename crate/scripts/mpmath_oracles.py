"""Reference values frozen into the Rust tests, recomputed with mpmath.

    python3 scripts/mpmath_oracles.py
"""

from mpmath import beta, gamma, hyp2f1, mp, mpf, pi, quad

mp.dps = 30


def sphere_area(k):
    """Area of the unit sphere S^k."""
    return 2 * pi ** (mpf(k + 1) / 2) / gamma(mpf(k + 1) / 2)


def phi(d, s, p, t):
    t, sp = mpf(t), mpf(s) * p
    if d == 1:
        return (1 - t) ** (-1 - sp) + (1 + t) ** (-1 - sp)
    prefactor = sphere_area(d - 2) * beta(mpf(d - 1) / 2, mpf(1) / 2)
    return prefactor * hyp2f1((d + sp) / 2, (2 + sp) / 2, mpf(d) / 2, t * t)


def phi_direct(d, s, p, t):
    t, sp = mpf(t), mpf(s) * p
    return sphere_area(d - 2) * quad(
        lambda r: (1 - r * r) ** (mpf(d - 3) / 2) / (1 - 2 * t * r + t * t) ** ((d + sp) / 2),
        [-1, 0, 1],
    )


def constant(d, s, p, q, a, b):
    s, p, q, a, b = map(mpf, (s, p, q, a, b))
    sp = s * p
    delta = (d + a + q * b / p - s * q) / q

    def f(t):
        return t ** (sp - 1) * (t ** (-(p / q - 1) * d - p * a / q) + t ** (-b)) * abs(1 - t**delta) ** p * phi(d, s, p, t)

    return quad(f, [0, 0.5, 0.9, 0.99, 1]) ** (q / p)


print("2F1, numerics/hypergeometric.rs")
for a, b, c, z in [
    (1.5, 2.0, 1.5, 0.7),
    (2.25, 1.5, 2.75, 0.8),
    (1.0, 1.0, 2.0, 0.6),
    (2.5, 2.0, 2.5, 0.95),
    (2.0, 2.0, 2.0, 0.9),
    (0.5, 0.5, 2.0, 0.95),
    (0.25, 1.5, 3.75, 0.999),
    (0.3, 0.9, 1.7, 0.9),
    (1.25, 0.5, 1.2, 0.99),
]:
    print(f"  ({a}, {b}, {c}, {z}) -> {hyp2f1(a, b, c, z)}")

print("phi at s = 0.5, p = 2, kernel.rs")
for d, t in [(2, 0.5), (2, 0.9), (2, 0.99), (3, 0.5), (3, 0.9), (3, 0.99), (4, 0.0), (4, 0.5), (4, 0.99)]:
    print(f"  d={d} t={t}: {phi(d, 0.5, 2, t)} (direct {phi_direct(d, 0.5, 2, t)})")

print("sharp constants, constants.rs")
print("  (2, 0.5, 2, 2, 0, 0):", constant(2, 0.5, 2, 2, 0, 0))
print("  (1, 0.5, 2, 2, 0.5, 0.5):", constant(1, 0.5, 2, 2, 0.5, 0.5))
