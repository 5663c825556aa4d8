"""Core algebra values and the bracket calculus.

Elements are finite rational combinations of basis monomials indexed by
a group vector and an exponent vector.  All arithmetic is exact; no
term with a zero coefficient is ever stored.  The Lie bracket is
implemented termwise from its expanded six-family form; the Poisson
part is built independently from the derivations, which gives the test
suite a second route to the same values.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import ConfigMismatchError, IndexRangeError, NotInGammaError
from .indexing import theta_weight, vec_add, vec_zero
from .lattice import AlgebraConfig


class BasisKey(NamedTuple):
    alpha: tuple
    exps: tuple


def canonical_order(key):
    """Sort key for deterministic term iteration: numerator/denominator
    pairs of the group part, then the exponent vector."""
    return (tuple((c.numerator, c.denominator) for c in key.alpha), key.exps)


def level(exps):
    """Total exponent count, the time slot included."""
    return sum(exps)


def support(layout, key):
    """Indices where the key has a nonzero coordinate or exponent."""
    out = set()
    for p in layout.all_indices():
        i = layout.pos(p)
        if key.alpha[i] != 0 or key.exps[i] != 0:
            out.add(p)
    return out


class Element:
    """Immutable algebra value: a finite map from basis keys to rationals."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self._terms = dict(terms)

    def terms(self):
        """Term pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: canonical_order(kv[0]))

    def term_map(self):
        return dict(self._terms)

    def keys(self):
        return set(self._terms)

    def coefficient(self, key):
        return self._terms.get(key, Fraction(0))

    @property
    def is_zero(self):
        return not self._terms

    def _check(self, other):
        if self.algebra.cfg is not other.algebra.cfg:
            raise ConfigMismatchError("elements belong to different configurations")

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.algebra.cfg is other.algebra.cfg
                and self._terms == other._terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.multiply(self, other)
        c = Fraction(other)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {k: c * v for k, v in self._terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = self.algebra.one()
        for _ in range(n):
            out = self.algebra.multiply(out, self)
        return out

    def pretty(self):
        return self.algebra.pretty(self)

    def __repr__(self):
        return f"<Element {self.pretty()}>"


class ContactAlgebra:
    """Operations of one configured algebra.

    Pure functions over immutable elements; instances precompute the
    layout tables used by the bracket and are safe to share read-only.
    """

    def __init__(self, cfg: AlgebraConfig):
        self.cfg = cfg
        L = cfg.layout
        self.layout = L
        n = L.pairs
        self._pos = [L.pos(p) for p in range(0, 2 * n + 1)]
        self._barpos = [L.pos(L.bar(p)) for p in range(0, 2 * n + 1)]
        self._fam1 = [(L.pos(p), L.pos(p + n), cfg.sigma(p))
                      for p in L.group_union(1, 3)]
        self._fam2 = [(L.pos(p), L.pos(p + n), cfg.sigma(p))
                      for p in L.group_union(2, 5)]
        self._fam3 = [(L.pos(p), L.pos(p + n), cfg.sigma(p))
                      for p in L.group(3)]
        self._fam4 = [(L.pos(p), L.pos(p + n), cfg.sigma(p))
                      for p in list(L.group(3)) + list(L.group_union(5, 6))]
        self._sigma0 = cfg.sigma0_vec
        self._wa = L.weight_alpha_positions()
        self._we = L.weight_exp_positions()
        self._pair_indices = list(range(1, n + 1))

    # --- constructors -------------------------------------------------

    def zero(self):
        return Element(self, {})

    def one(self):
        return self.monomial(vec_zero(self.layout))

    def scalar(self, c):
        c = Fraction(c)
        if not c:
            return self.zero()
        key = BasisKey(vec_zero(self.layout), self.cfg.zero_exps())
        return Element(self, {key: c})

    def monomial(self, alpha, exps=None, coeff=1, validate=True):
        alpha = tuple(Fraction(x) for x in alpha)
        if exps is None:
            exps = self.cfg.zero_exps()
        exps = tuple(int(x) for x in exps)
        if validate:
            if not self.cfg.gamma.contains(alpha):
                raise NotInGammaError(f"{alpha} is not in the exponent group")
            if not self.cfg.is_valid_exps(exps):
                raise ValueError(f"illegal exponent vector {exps}")
        coeff = Fraction(coeff)
        if not coeff:
            return self.zero()
        return Element(self, {BasisKey(alpha, exps): coeff})

    def x(self, alpha, coeff=1):
        return self.monomial(alpha, None, coeff)

    def t(self, p, power=1):
        """The monomial t_p^power."""
        exps = list(self.cfg.zero_exps())
        exps[self.layout.pos(p)] = int(power)
        return self.monomial(vec_zero(self.layout), tuple(exps))

    def element(self, terms):
        """Element from (alpha, exps, coeff) triples."""
        acc = {}
        for alpha, exps, coeff in terms:
            mono = self.monomial(alpha, exps, coeff)
            for k, c in mono._terms.items():
                s = acc.get(k, Fraction(0)) + c
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
        return Element(self, acc)

    # --- associative structure ----------------------------------------

    def multiply(self, u, v):
        u._check(v)
        acc = {}
        for (a, i), cu in u._terms.items():
            for (b, j), cv in v._terms.items():
                key = BasisKey(vec_add(a, b), tuple(x + y for x, y in zip(i, j)))
                s = acc.get(key, Fraction(0)) + cu * cv
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return Element(self, acc)

    # --- derivations ----------------------------------------------------

    def derive_star(self, p, u):
        """Scaling part: multiplies each term by its coordinate at p."""
        pos = self._index_pos(p)
        out = {}
        for key, c in u._terms.items():
            a = key.alpha[pos]
            if a:
                out[key] = c * a
        return Element(self, out)

    def derive_t(self, p, u):
        """Lowering part: drops one exponent at p, scaling by the old one."""
        pos = self._index_pos(p)
        out = {}
        for key, c in u._terms.items():
            e = key.exps[pos]
            if e:
                exps = list(key.exps)
                exps[pos] = e - 1
                nk = BasisKey(key.alpha, tuple(exps))
                s = out.get(nk, Fraction(0)) + c * e
                if s:
                    out[nk] = s
                else:
                    out.pop(nk, None)
        return Element(self, out)

    def derive(self, p, u):
        return self.derive_star(p, u) + self.derive_t(p, u)

    def _index_pos(self, p):
        if not 0 <= p <= 2 * self.layout.pairs:
            raise IndexRangeError(f"index {p} outside 0..{2 * self.layout.pairs}")
        return self._pos[p]

    def theta_weight(self, key):
        return theta_weight(self.layout, key.alpha, key.exps)

    def _weight(self, alpha, exps):
        total = Fraction(0)
        for i in self._wa:
            total += alpha[i]
        for i in self._we:
            total += exps[i]
        return total

    def euler(self, u):
        """Euler derivation; diagonal with the weight as eigenvalue."""
        out = {}
        for key, c in u._terms.items():
            w = self._weight(key.alpha, key.exps)
            if w:
                out[key] = c * w
        return Element(self, out)

    # --- Lie structure --------------------------------------------------

    def poisson_bracket(self, u, v):
        """Pairwise-derivation part of the bracket, built from derivations."""
        u._check(v)
        out = self.zero()
        L = self.layout
        n = L.pairs
        for p in self._pair_indices:
            q = p + n
            diff = (self.multiply(self.derive(p, u), self.derive(q, v))
                    - self.multiply(self.derive(q, u), self.derive(p, v)))
            if not diff.is_zero:
                out = out + self.multiply(
                    self.monomial(self.cfg.sigma(p), validate=False), diff)
        return out

    def bracket(self, u, v):
        """Full Lie bracket, expanded termwise into its six coefficient
        families (pair determinants, mixed lowering terms and the
        weighted time tail)."""
        u._check(v)
        acc = {}
        for k1, c1 in u._terms.items():
            for k2, c2 in v._terms.items():
                self._bracket_keys(k1, k2, c1 * c2, acc)
        return Element(self, {k: c for k, c in acc.items() if c})

    def _bracket_keys(self, k1, k2, scale, acc):
        a, i = k1
        b, j = k2

        def put(shift, exps, coeff):
            key = BasisKey(vec_add(vec_add(a, b), shift), exps)
            acc[key] = acc.get(key, Fraction(0)) + coeff * scale

        ij = tuple(x + y for x, y in zip(i, j))
        for pp, pb, shift in self._fam1:
            coeff = a[pp] * b[pb] - a[pb] * b[pp]
            if coeff:
                put(shift, ij, coeff)
        for pp, pb, shift in self._fam2:
            coeff = a[pp] * j[pb] - i[pb] * b[pp]
            if coeff:
                exps = list(ij)
                exps[pb] -= 1
                put(shift, tuple(exps), coeff)
        for pp, pb, shift in self._fam3:
            coeff = i[pp] * b[pb] - j[pp] * a[pb]
            if coeff:
                exps = list(ij)
                exps[pp] -= 1
                put(shift, tuple(exps), coeff)
        for pp, pb, shift in self._fam4:
            coeff = i[pp] * j[pb] - i[pb] * j[pp]
            if coeff:
                exps = list(ij)
                exps[pp] -= 1
                exps[pb] -= 1
                put(shift, tuple(exps), coeff)
        wu = self._weight(a, i)
        wv = self._weight(b, j)
        c5 = (2 - wu) * b[0] - a[0] * (2 - wv)
        if c5:
            put(self._sigma0, ij, c5)
        c6 = (2 - wu) * j[0] - i[0] * (2 - wv)
        if c6:
            exps = list(ij)
            exps[0] -= 1
            put(self._sigma0, tuple(exps), c6)

    def frobenius_defect(self, u, v, w):
        """Deviation of the bracket from being a derivation of the product."""
        return (self.bracket(u, self.multiply(v, w))
                - self.multiply(self.bracket(u, v), w)
                - self.multiply(v, self.bracket(u, w)))

    def ad(self, u):
        """Adjoint operator of u."""
        return lambda v: self.bracket(u, v)

    # --- formatting -----------------------------------------------------

    def _index_label(self, p):
        n = self.layout.pairs
        return str(p) if p <= n else f"{p - n}b"

    def pretty(self, u):
        if u.is_zero:
            return "0"
        L = self.layout
        parts = []
        for key, c in u.terms():
            factors = [str(c)]
            if any(key.alpha):
                coords = ",".join(str(x) for x in key.alpha)
                factors.append(f"x^({coords})")
            for p in L.all_indices():
                e = key.exps[L.pos(p)]
                if e == 1:
                    factors.append(f"t{self._index_label(p)}")
                elif e > 1:
                    factors.append(f"t{self._index_label(p)}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)
