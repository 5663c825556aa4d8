"""Independent polynomial model of the odd-dimensional contact algebra.

Everything here is built from scratch on plain polynomials and vector
fields, with no use of the semigroup-algebra machinery, so that the two
implementations can be compared term by term.  Variables are numbered
1..n with n = 2k+1; variable i pairs with k+i for i <= k, and the last
variable is the time direction.
"""

from fractions import Fraction

from .errors import ArityError
from .report import Report


class Poly:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for exps, c in dict(terms).items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(exps)] = c

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def variable(cls, n, i):
        """The variable t_i, 1-indexed."""
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, n, exps, c=1):
        return cls(n, {tuple(exps): Fraction(c)})

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.n == other.n
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def _check(self, other):
        if self.n != other.n:
            raise ArityError("polynomials in different variable counts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.n, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly(self.n, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.n, out)

    __rmul__ = __mul__

    def diff(self, i):
        """Partial derivative with respect to t_i (1-indexed)."""
        out = {}
        for e, c in self.terms.items():
            k = e[i - 1]
            if k:
                ne = list(e)
                ne[i - 1] = k - 1
                ne = tuple(ne)
                s = out.get(ne, Fraction(0)) + c * k
                if s:
                    out[ne] = s
        return Poly(self.n, out)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def pretty(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = [str(c)]
            for i, k in enumerate(e, start=1):
                if k == 1:
                    factors.append(f"t{i}")
                elif k > 1:
                    factors.append(f"t{i}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<Poly {self.pretty()}>"


class VectorField:
    """First-order operator with one polynomial coefficient per variable."""

    __slots__ = ("n", "components")

    def __init__(self, components):
        components = tuple(components)
        n = len(components)
        for comp in components:
            if comp.n != n:
                raise ArityError("component arity does not match field arity")
        self.n = n
        self.components = components

    @classmethod
    def zero(cls, n):
        return cls(tuple(Poly(n) for _ in range(n)))

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.components)

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.n == other.n
                and self.components == other.components)

    def apply(self, f):
        if f.n != self.n:
            raise ArityError("polynomial arity does not match field arity")
        out = Poly(self.n)
        for i, comp in enumerate(self.components, start=1):
            if not comp.is_zero:
                out = out + comp * f.diff(i)
        return out

    def __add__(self, other):
        return VectorField(tuple(a + b for a, b in
                                 zip(self.components, other.components)))

    def __sub__(self, other):
        return VectorField(tuple(a - b for a, b in
                                 zip(self.components, other.components)))

    def pretty(self):
        parts = [f"({c.pretty()})*d{i}" for i, c in
                 enumerate(self.components, start=1) if not c.is_zero]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<VectorField {self.pretty()}>"


def _eps(i, k):
    return 1 if i <= k else -1


def _partner(i, k):
    return k + i if i <= k else i - k


def dk_map(f, k):
    """Hamiltonian-type lift of a polynomial to a contact vector field."""
    n = 2 * k + 1
    if f.n != n:
        raise ArityError(f"expected {n} variables, got {f.n}")
    dn = f.diff(n)
    comps = []
    for i in range(1, 2 * k + 1):
        ib = _partner(i, k)
        comp = Poly.variable(n, i) * dn + _eps(ib, k) * f.diff(ib)
        comps.append(comp)
    last = 2 * f
    for i in range(1, 2 * k + 1):
        ib = _partner(i, k)
        last = last - Poly.variable(n, ib) * (
            _eps(ib, k) * Poly.variable(n, i) * dn + f.diff(ib))
    comps.append(last)
    return VectorField(tuple(comps))


def vf_bracket(x, y):
    """Commutator of vector fields, componentwise."""
    if x.n != y.n:
        raise ArityError("vector fields in different variable counts")
    comps = [x.apply(yc) - y.apply(xc)
             for xc, yc in zip(x.components, y.components)]
    return VectorField(tuple(comps))


def poisson_part(f, g, k):
    n = 2 * k + 1
    out = Poly(n)
    for i in range(1, 2 * k + 1):
        out = out + _eps(i, k) * f.diff(i) * g.diff(_partner(i, k))
    return out


def classical_bracket(f, g, k):
    """Contact bracket on polynomials: Poisson part plus weighted tail."""
    n = 2 * k + 1
    if f.n != n or g.n != n:
        raise ArityError(f"expected {n} variables")

    def radial(h):
        out = Poly(n)
        for i in range(1, 2 * k + 1):
            out = out + Poly.variable(n, i) * h.diff(i)
        return out

    tail = ((2 * f - radial(f)) * g.diff(n) - f.diff(n) * (2 * g - radial(g)))
    return poisson_part(f, g, k) + tail


def verify_dk_homomorphism(f, g, k):
    """Whether the lift intertwines the polynomial and field brackets."""
    lhs = vf_bracket(dk_map(f, k), dk_map(g, k))
    rhs = dk_map(classical_bracket(f, g, k), k)
    return lhs == rhs


def contact_form_multiplier(x, k):
    """Multiplier polynomial u with X(form) = u * form, or None.

    The contact form has coefficient 1 on the time differential,
    t_i on the differential of the partner of i (i <= k), and -t_{k+i}
    on the differential of i.
    """
    n = 2 * k + 1
    if x.n != n:
        raise ArityError(f"expected {n} variables")
    w = []
    for i in range(1, n + 1):
        if i <= k:
            w.append(-Poly.variable(n, k + i))
        elif i <= 2 * k:
            w.append(Poly.variable(n, i - k))
        else:
            w.append(Poly.constant(n, 1))
    # action on a 1-form: X(sum w_j dt_j) has dt_j coefficient
    # X(w_j) + sum_i w_i * d(X_i)/dt_j
    xw = []
    for j in range(1, n + 1):
        comp = x.apply(w[j - 1])
        for i in range(1, n + 1):
            comp = comp + w[i - 1] * x.components[i - 1].diff(j)
        xw.append(comp)
    u = xw[n - 1]
    for j in range(1, n + 1):
        if xw[j - 1] != u * w[j - 1]:
            return None
    return u


def monomials_up_to(n, degree):
    """All exponent tuples of total degree <= degree, sorted."""
    out = [()]
    for _ in range(n):
        out = [e + (d,) for e in out for d in range(degree - sum(e) + 1)]
    return sorted(out)


def compare_with_normalized(k, degree_cap):
    """Exhaustive bracket comparison against the semigroup-algebra model.

    The pure down-grading layout with trivial group and free time
    exponents matches the polynomial picture: the time variable goes to
    the last polynomial variable and pair p goes to (p, k+p).  Every
    monomial pair up to the degree cap is checked for exact equality.
    """
    from .algebra import ContactAlgebra
    from .lattice import standard_config

    n = 2 * k + 1
    cfg = standard_config((0, 0, 0, 0, 0, k), 0, [], True)
    algebra = ContactAlgebra(cfg)
    L = cfg.layout

    def to_normalized_exps(e):
        exps = [0] * L.dim
        for i in range(1, k + 1):
            exps[L.pos(i)] = e[i - 1]
            exps[L.pos(i + k)] = e[k + i - 1]
        exps[0] = e[n - 1]
        return tuple(exps)

    def to_poly(u):
        out = Poly(n)
        for key, c in u.term_map().items():
            e = [0] * n
            for i in range(1, k + 1):
                e[i - 1] = key.exps[L.pos(i)]
                e[k + i - 1] = key.exps[L.pos(i + k)]
            e[n - 1] = key.exps[0]
            out = out + Poly.monomial(n, tuple(e), c)
        return out

    monos = monomials_up_to(n, degree_cap)
    rep = Report(title=f"classical comparison (k={k}, degree cap {degree_cap})")
    mismatches = []
    pairs = 0
    zero = [Fraction(0)] * L.dim
    for e1 in monos:
        u = algebra.monomial(zero, to_normalized_exps(e1))
        f = Poly.monomial(n, e1)
        for e2 in monos:
            pairs += 1
            v = algebra.monomial(zero, to_normalized_exps(e2))
            g = Poly.monomial(n, e2)
            expected = classical_bracket(f, g, k)
            got = to_poly(algebra.bracket(u, v))
            if got != expected:
                mismatches.append((e1, e2))
    rep.add("bracket-agreement", not mismatches,
            f"{pairs} monomial pairs compared"
            + (f"; first mismatch {mismatches[0]}" if mismatches else ""))
    return rep
