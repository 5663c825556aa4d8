"""Finitely generated exponent groups and algebra configurations.

The group part of a basis key ranges over a finitely generated additive
subgroup of the rational coordinate space.  Membership and integer
coordinates are decided exactly: denominators are cleared once with a
common scale and the generator matrix is reduced to row Hermite form at
construction time.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import IndexRangeError, NotInGammaError
from .indexing import (
    Layout,
    sigma_vector,
    theta_alpha,
    vec_unit,
    vec_zero,
)
from .linalg import echelon_int_coords, echelon_rational_coords, hermite_form
from .report import Report


class GroupLattice:
    """Additive subgroup of the coordinate space with decidable membership.

    Immutable after construction; membership queries are read-only and
    safe to share between threads.
    """

    def __init__(self, layout, generators):
        self.layout = layout
        gens = []
        for g in generators:
            g = tuple(Fraction(x) for x in g)
            if len(g) != layout.dim:
                raise ValueError(
                    f"generator has length {len(g)}, expected {layout.dim}")
            gens.append(g)
        self.generators = tuple(gens)
        scale = 1
        for g in gens:
            for x in g:
                scale = lcm(scale, x.denominator)
        self._scale = scale
        self._int_rows = [[int(x * scale) for x in g] for g in gens]
        ech, piv, transform, kernel = hermite_form(self._int_rows)
        self._echelon = ech
        self._pivots = piv
        self._transform = transform
        self._kernel = kernel

    @property
    def rank(self):
        return len(self._echelon)

    def _scaled(self, alpha):
        out = []
        for x in alpha:
            x = Fraction(x) * self._scale
            if x.denominator != 1:
                return None
            out.append(int(x))
        return out

    def contains(self, alpha):
        """Whether alpha is an integer combination of the generators."""
        if len(alpha) != self.layout.dim:
            raise ValueError("vector length does not match the layout")
        w = self._scaled(alpha)
        if w is None:
            return False
        if not self._echelon:
            return not any(w)
        return echelon_int_coords(self._echelon, self._pivots, w) is not None

    def coordinates(self, alpha):
        """Integer coordinates of alpha over the generators, or None."""
        w = self._scaled(alpha)
        if w is None:
            return None
        if not self._echelon:
            return (0,) * len(self.generators) if not any(w) else None
        x = echelon_int_coords(self._echelon, self._pivots, w)
        if x is None:
            return None
        coords = [0] * len(self.generators)
        for xi, urow in zip(x, self._transform):
            if xi:
                for j, u in enumerate(urow):
                    coords[j] += xi * u
        return tuple(coords)

    def rational_span_coords(self, alpha):
        """Rational coordinates over the echelon basis, or None."""
        w = [Fraction(x) * self._scale for x in alpha]
        if not self._echelon:
            return [] if not any(w) else None
        return echelon_rational_coords(self._echelon, self._pivots, w)

    def smallest_multiple_inside(self, alpha):
        """Least n >= 1 with n*alpha in the group, or None if no such n."""
        coords = self.rational_span_coords(alpha)
        if coords is None:
            return None
        n = 1
        for c in coords:
            n = lcm(n, c.denominator)
        return n

    def line_witness(self, p):
        """A nonzero multiple of the unit vector at index p lying in the
        group, or None if the intersection with that line is trivial."""
        pos = self.layout.pos(p)
        if not self.generators:
            return None
        reduced = [row[:pos] + row[pos + 1:] for row in self._int_rows]
        _, _, _, kernel = hermite_form(reduced)
        value = 0
        for krow in kernel:
            v = sum(k * row[pos] for k, row in zip(krow, self._int_rows))
            value = gcd(value, v)
        if value == 0:
            return None
        return vec_unit(self.layout, p, Fraction(value, self._scale))

    def projection(self, p):
        """Generator of the cyclic projection onto coordinate p, or 0."""
        pos = self.layout.pos(p)
        value = 0
        for row in self._int_rows:
            value = gcd(value, row[pos])
        return Fraction(value, self._scale)


@dataclass(frozen=True, eq=False, slots=True)
class AlgebraConfig:
    """Everything that pins down one algebra instance.

    ``sigma0`` selects the time shift (False: zero, True: unit at slot
    0); ``j0_nat`` says whether exponents at slot 0 are allowed.
    """

    layout: Layout
    sigma0: bool
    gamma: GroupLattice
    j0_nat: bool

    def sigma(self, p):
        return sigma_vector(self.layout, p, self.sigma0)

    @property
    def sigma0_vec(self):
        return sigma_vector(self.layout, 0, self.sigma0)

    @property
    def gamma0_trivial(self):
        return self.gamma.projection(0) == 0

    def exponent_positions(self):
        """Coordinate positions where monomial exponents may be nonzero."""
        return [self.layout.pos(p)
                for p in self.layout.exponent_indices(with_zero=self.j0_nat)]

    def is_valid_exps(self, exps):
        if len(exps) != self.layout.dim:
            return False
        if any(x < 0 for x in exps):
            return False
        legal = set(self.exponent_positions())
        return all(x == 0 for i, x in enumerate(exps) if i not in legal)

    def zero_exps(self):
        return (0,) * self.layout.dim


def validate_config(cfg):
    """Check the admissibility conditions of a configuration.

    Each condition gets one report line; the report never raises.
    """
    rep = Report(title="configuration check")
    L = cfg.layout
    n = L.pairs

    banned = [L.pos(p) for p in L.group(6)]
    banned += [L.pos(p + n) for p in L.group_union(4, 6)]
    bad = []
    for gi, g in enumerate(cfg.gamma.generators):
        if any(g[i] != 0 for i in banned):
            bad.append(gi)
    rep.add("generator-support", not bad,
            "generators must vanish on group-6 and barred 4..6 slots"
            + (f"; offending generators {bad}" if bad else ""))

    missing = [p for p in range(0, n + 1)
               if not cfg.gamma.contains(cfg.sigma(p))]
    rep.add("shift-membership", not missing,
            "every pair shift must lie in the group"
            + (f"; missing for indices {missing}" if missing else ""))

    no_line = []
    for p in L.group_union(1, 3):
        for q in (p, L.bar(p)):
            if cfg.gamma.line_witness(q) is None:
                no_line.append(q)
    rep.add("line-witnesses", not no_line,
            "groups 1..3 need a nonzero group element on each coordinate line"
            + (f"; missing at {no_line}" if no_line else ""))

    if cfg.gamma0_trivial:
        rep.add("time-line", True, "slot-0 projection trivial; nothing to check")
    else:
        rep.add("time-line", cfg.gamma.line_witness(0) is not None,
                "nontrivial slot-0 projection needs a group element on the time line")

    rep.add("exponent-flag", cfg.j0_nat or not cfg.gamma0_trivial,
            "time exponents or a nontrivial slot-0 projection required")

    if cfg.sigma0:
        rep.add("shift-flag", not cfg.gamma0_trivial,
                "a nonzero time shift forces a nontrivial slot-0 projection")

    closed = all(
        cfg.gamma.contains(vec_unit(L, 0, g[0])) if g[0] else True
        for g in cfg.gamma.generators)
    rep.add("zero-projection-closure", closed,
            "slot-0 projections of generators lie in the group (simplicity hypothesis)",
            advisory=True)
    return rep


def standard_config(ell, sigma0, generators, j0_nat):
    """Convenience constructor from raw data."""
    from .indexing import build_scheme
    layout = build_scheme(ell)
    gamma = GroupLattice(layout, generators)
    return AlgebraConfig(layout=layout, sigma0=bool(sigma0), gamma=gamma,
                         j0_nat=bool(j0_nat))
