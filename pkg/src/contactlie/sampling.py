"""Seeded random keys and elements for property runs.

Group vectors are drawn as small integer combinations of the
configured generators, exponents as sparse small vectors on the legal
slots; everything is reproducible from the seed.
"""

from fractions import Fraction

from .indexing import vec_add, vec_scale, vec_zero

COEFF_POOL = [Fraction(c) for c in (-3, -2, -1, 1, 2, 3)] \
    + [Fraction(1, 2), Fraction(-1, 2)]


def sample_alpha(rng, gamma, bound=3):
    """Random group member: integer combination with coefficients in
    [-bound, bound]."""
    out = vec_zero(gamma.layout)
    for g in gamma.generators:
        c = rng.randint(-bound, bound)
        if c:
            out = vec_add(out, vec_scale(g, c))
    return out


def sample_exps(rng, cfg, max_value=3, max_slots=2):
    """Random sparse legal exponent vector."""
    positions = cfg.exponent_positions()
    exps = [0] * cfg.layout.dim
    if positions:
        for pos in rng.sample(positions, min(len(positions),
                                             rng.randint(0, max_slots))):
            exps[pos] = rng.randint(1, max_value)
    return tuple(exps)


def sample_key(rng, cfg):
    return sample_alpha(rng, cfg.gamma), sample_exps(rng, cfg)


def sample_monomial(rng, algebra):
    alpha, exps = sample_key(rng, algebra.cfg)
    return algebra.monomial(alpha, exps)


def sample_element(rng, algebra, max_terms=2):
    """Random small element with nonzero terms."""
    out = algebra.zero()
    for _ in range(rng.randint(1, max_terms)):
        alpha, exps = sample_key(rng, algebra.cfg)
        out = out + algebra.monomial(alpha, exps, rng.choice(COEFF_POOL))
    if out.is_zero:
        out = algebra.one()
    return out
