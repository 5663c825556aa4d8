"""Index bookkeeping for the six-group layout of derivation pairs.

A layout assigns sizes to six groups of index pairs.  Index 0 is the
distinguished "time" slot; indices 1..n pair with their partners
n+1..2n under the shift involution.  Coordinate vectors interleave the
pairs: ``(a_0, a_1, a_1', a_2, a_2', ...)`` where a_p' denotes the
partner coordinate.  The group of a pair decides which actions the two
derivations of the pair carry: coefficient scaling ("grading"),
exponent lowering ("down-grading"), or both ("mixed").
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyLayoutError, IndexRangeError

GRADING = "grading"
DOWN = "down-grading"
MIXED = "mixed"

# group number -> derivation kinds of (p, partner) per pair
PAIR_KIND_TABLE = {
    1: (GRADING, GRADING),
    2: (GRADING, MIXED),
    3: (MIXED, MIXED),
    4: (GRADING, DOWN),
    5: (MIXED, DOWN),
    6: (DOWN, DOWN),
}


@dataclass(frozen=True, slots=True)
class Layout:
    """Sizes of the six index groups plus their prefix sums."""

    ell: tuple
    iota: tuple  # iota[0] == 0, iota[i] == ell_1 + ... + ell_i

    @property
    def pairs(self):
        return self.iota[6]

    @property
    def dim(self):
        """Length of a coordinate vector: 1 + 2 * pairs."""
        return 1 + 2 * self.iota[6]

    def group(self, i):
        """Unbarred indices of group i, as a range."""
        return range(self.iota[i - 1] + 1, self.iota[i] + 1)

    def group_union(self, i, j):
        """Unbarred indices of groups i..j, as a range."""
        return range(self.iota[i - 1] + 1, self.iota[j] + 1)

    def group_of(self, p):
        """Group number of an unbarred index p."""
        if not 1 <= p <= self.iota[6]:
            raise IndexRangeError(f"index {p} outside 1..{self.iota[6]}")
        for i in range(1, 7):
            if p <= self.iota[i]:
                return i
        raise AssertionError

    def bar(self, p):
        """Shift involution on indices; 0 is fixed."""
        n = self.iota[6]
        if p == 0:
            return 0
        if 1 <= p <= n:
            return p + n
        if n < p <= 2 * n:
            return p - n
        raise IndexRangeError(f"index {p} outside 0..{2 * n}")

    def pos(self, p):
        """Coordinate position of index p in the interleaved vector."""
        n = self.iota[6]
        if p == 0:
            return 0
        if 1 <= p <= n:
            return 2 * p - 1
        if n < p <= 2 * n:
            return 2 * (p - n)
        raise IndexRangeError(f"index {p} outside 0..{2 * n}")

    def all_indices(self):
        """All indices 0..2n."""
        return range(0, 2 * self.iota[6] + 1)

    def grading_indices(self):
        """Indices whose coordinate may be nonzero in the exponent group."""
        n = self.iota[6]
        i3, i5 = self.iota[3], self.iota[5]
        out = [0]
        out += list(range(1, i3 + 1))
        out += [p + n for p in range(1, i3 + 1)]
        out += list(range(i3 + 1, i5 + 1))
        return out

    def exponent_indices(self, with_zero=True):
        """Indices carrying a lowering action (legal monomial exponents)."""
        n = self.iota[6]
        out = [0] if with_zero else []
        out += list(self.group(3))
        out += list(self.group_union(5, 6))
        out += [p + n for p in self.group_union(2, 6)]
        return out

    def weight_alpha_positions(self):
        """Coordinate positions summed by the weight on the group part."""
        n = self.iota[6]
        pos = []
        for p in self.group_union(1, 3):
            pos.append(self.pos(p))
            pos.append(self.pos(p + n))
        for p in self.group_union(4, 5):
            pos.append(self.pos(p))
        return pos

    def weight_exp_positions(self):
        """Coordinate positions summed by the weight on the exponent part."""
        n = self.iota[6]
        pos = [self.pos(p) for p in self.group(6)]
        pos += [self.pos(p + n) for p in self.group_union(4, 6)]
        return pos


def build_scheme(ell):
    """Build a Layout from the six group sizes."""
    ell = tuple(int(x) for x in ell)
    if len(ell) != 6:
        raise ValueError("layout needs exactly six sizes")
    if any(x < 0 for x in ell):
        raise ValueError("layout sizes must be nonnegative")
    if sum(ell) == 0:
        raise EmptyLayoutError("at least one group must be nonempty")
    iota = [0]
    for x in ell:
        iota.append(iota[-1] + x)
    return Layout(ell=ell, iota=tuple(iota))


def bar(layout, p):
    return layout.bar(p)


def derivation_kind(layout, p):
    """Kind of the derivation attached to a nonzero index p."""
    q = p if p <= layout.pairs else layout.bar(p)
    i = layout.group_of(q)
    return PAIR_KIND_TABLE[i][0 if p <= layout.pairs else 1]


def pair_kinds(layout, i):
    """Derivation kinds (unbarred, barred) for pairs of group i."""
    return PAIR_KIND_TABLE[i]


def vec_zero(layout):
    return (Fraction(0),) * layout.dim


def vec_unit(layout, p, value=1):
    """Vector supported at index p with the given value."""
    out = [Fraction(0)] * layout.dim
    out[layout.pos(p)] = Fraction(value)
    return tuple(out)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(a, c):
    c = Fraction(c)
    return tuple(c * x for x in a)


def restrict_to_indices(layout, alpha, indices):
    """Zero out every coordinate whose index is not in the given set."""
    keep = {layout.pos(p) for p in indices}
    return tuple(x if i in keep else Fraction(0) for i, x in enumerate(alpha))


def support_indices(layout, alpha, exps=None):
    """Indices where alpha (or the exponent vector) is nonzero."""
    out = set()
    for p in layout.all_indices():
        i = layout.pos(p)
        if alpha[i] != 0 or (exps is not None and exps[i] != 0):
            out.add(p)
    return out


def sigma_vector(layout, p, sigma0_nonzero=False):
    """Shift vector attached to an index pair.

    The shift is shared by an index and its partner; index 0 carries
    either the zero shift or the unit vector at slot 0, depending on
    the configuration flag.
    """
    if p == 0:
        if sigma0_nonzero:
            return vec_unit(layout, 0, 1)
        return vec_zero(layout)
    q = p if p <= layout.pairs else layout.bar(p)
    i = layout.group_of(q)
    out = [Fraction(0)] * layout.dim
    if i <= 3:
        out[layout.pos(q)] = Fraction(-1)
        out[layout.pos(layout.bar(q))] = Fraction(-1)
    elif i <= 5:
        out[layout.pos(q)] = Fraction(-1)
    return tuple(out)


def theta_alpha(layout, alpha):
    """Weight contribution of the group part of a key."""
    return sum((alpha[i] for i in layout.weight_alpha_positions()), Fraction(0))


def theta_weight(layout, alpha, exps):
    """Eigenvalue of the Euler derivation on the basis key (alpha, exps)."""
    total = theta_alpha(layout, alpha)
    for i in layout.weight_exp_positions():
        total += exps[i]
    return total
