import random
from fractions import Fraction

from adjoint3 import DivisorExpr, ThreefoldProfile

BASIS_POOL = ("H", "E", "G")


def random_valid_profile(rng: random.Random, max_basis: int = 3) -> ThreefoldProfile:
    """A random profile that passes validation.

    The triple tensor, canonical class and chi_O are drawn freely; one c2
    coordinate is then solved from the canonical pairing so the profile is
    consistent.  A zero canonical class forces chi_O = 0.
    """
    n = rng.randint(1, max_basis)
    basis = BASIS_POOL[:n]
    triple = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                triple[(basis[i], basis[j], basis[k])] = Fraction(rng.randint(-6, 6))
    k_coeffs = [rng.randint(-5, 5) for _ in range(n)]
    c2 = [Fraction(rng.randint(-10, 10)) for _ in range(n)]
    if any(k_coeffs):
        chi = rng.randint(-3, 3)
        pivot = next(i for i, c in enumerate(k_coeffs) if c != 0)
        rest = sum(Fraction(k_coeffs[i]) * c2[i] for i in range(n) if i != pivot)
        c2[pivot] = (Fraction(-24 * chi) - rest) / k_coeffs[pivot]
    else:
        chi = 0
    return ThreefoldProfile(
        basis=basis,
        triple=triple,
        c2_vector=dict(zip(basis, c2)),
        chi_O=chi,
        canonical=DivisorExpr(zip(basis, k_coeffs)),
    )


def random_divisor(rng: random.Random, basis, span: int = 5) -> DivisorExpr:
    return DivisorExpr(
        {
            s: Fraction(rng.randint(-span, span), rng.randint(1, 4))
            for s in basis
        }
    )
