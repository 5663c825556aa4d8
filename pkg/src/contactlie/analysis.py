"""Structure probes: grading map, locally-finite families, orbits.

The adjoint orbit of an element may span an infinite-dimensional space;
everything here reports bounded evidence only ("stabilized within cap",
"growing within cap") and never claims local finiteness outright.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BasisKey, ContactAlgebra, support
from .errors import NotA1Error, NotInGammaError
from .indexing import vec_neg, vec_unit, vec_zero


def pi_map(cfg, alpha):
    """Eigenvalue vector of the commuting diagonal family on a group
    monomial: one slot for the time action, one per pair of the first
    five groups."""
    alpha = tuple(Fraction(x) for x in alpha)
    if not cfg.gamma.contains(alpha):
        raise NotInGammaError(f"{alpha} is not in the exponent group")
    L = cfg.layout
    n = L.pairs
    from .indexing import theta_alpha
    if cfg.gamma0_trivial:
        mu0 = theta_alpha(L, alpha) - 2
    else:
        mu0 = 2 * alpha[0]
    out = [mu0]
    for p in L.group_union(1, 3):
        out.append(alpha[L.pos(p + n)] - alpha[L.pos(p)])
    for p in L.group_union(4, 5):
        out.append(-alpha[L.pos(p)])
    return tuple(out)


def diagonal_family(cfg):
    """The finite commuting family acting diagonally on group monomials.

    Returns (label, BasisKey) pairs: the constant or the time variable,
    the inverted pair shifts, their barred-exponent companions for
    groups 4..5, and the balanced exponent pairs of group 6.
    """
    L = cfg.layout
    n = L.pairs
    zero = vec_zero(L)
    zexp = cfg.zero_exps()
    out = []
    if cfg.gamma0_trivial:
        exps = list(zexp)
        exps[0] = 1
        out.append(("t0", BasisKey(zero, tuple(exps))))
    else:
        out.append(("one", BasisKey(zero, zexp)))
    for p in L.group_union(1, 3):
        out.append((f"x^-shift[{p}]", BasisKey(vec_neg(cfg.sigma(p)), zexp)))
    for q in L.group_union(4, 5):
        exps = list(zexp)
        exps[L.pos(q + n)] = 1
        out.append((f"x^-shift[{q}]*t[{q}b]",
                    BasisKey(vec_neg(cfg.sigma(q)), tuple(exps))))
    for r in L.group(6):
        exps = list(zexp)
        exps[L.pos(r)] = 1
        exps[L.pos(r + n)] = 1
        out.append((f"t[{r}]*t[{r}b]", BasisKey(zero, tuple(exps))))
    return out


def classify_locfin(cfg, key):
    """Memberships of a basis key in the three bounded-orbit families.

    A0 is the explicit diagonal family; A1 collects the keys whose
    adjoint action is nilpotent by the support argument; A2 is the
    enclosing family that bounded orbits cannot leave.
    """
    L = cfg.layout
    n = L.pairs
    alpha, exps = key
    out = set()

    if key in {k for _, k in diagonal_family(cfg)}:
        out.add("A0")

    hat13 = [0] + [L.pos(p) for p in L.group_union(1, 3)] \
        + [L.pos(p + n) for p in L.group_union(1, 3)]
    bar45 = [L.pos(p + n) for p in L.group_union(4, 5)]
    from .indexing import theta_weight
    w = theta_weight(L, alpha, exps)

    alpha13_zero = all(alpha[i] == 0 for i in hat13)
    exps13_zero = all(exps[i] == 0 for i in hat13)
    expsbar45_zero = all(exps[i] == 0 for i in bar45)
    pair6_ok = all(exps[L.pos(r)] * exps[L.pos(r + n)] == 0 for r in L.group(6))
    is_constant = not any(alpha) and not any(exps)

    if (is_constant and cfg.gamma0_trivial) or (
            w == 2 and alpha13_zero and exps13_zero and expsbar45_zero
            and pair6_ok):
        out.add("A1")

    j13 = [L.pos(p) for p in L.group_union(1, 3)] \
        + [L.pos(p + n) for p in L.group_union(1, 3)]
    exps_j13_zero = all(exps[i] == 0 for i in j13)
    d = 1 if cfg.gamma0_trivial else 0
    if (alpha13_zero and exps_j13_zero and expsbar45_zero
            and (cfg.gamma0_trivial or w == 2) and exps[0] <= d):
        out.add("A2")

    return frozenset(out)


@dataclass(frozen=True)
class OrbitReport:
    """Span dimensions of iterated adjoint applications.

    dims[k] is the rank of the first k+1 iterates; the verdict is
    definitive for "nilpotent" and "stabilized" and bounded evidence
    only for "growing".
    """

    dims: tuple
    verdict: str
    steps: int = 0

    @property
    def final_dim(self):
        return self.dims[-1] if self.dims else 0


class _SpanTracker:
    """Incremental exact rank of sparse coefficient rows."""

    def __init__(self):
        self._rows = []  # (pivot_key, {key: coeff})

    def add(self, terms):
        row = dict(terms)
        for pivot, brow in self._rows:
            if pivot in row:
                f = row[pivot] / brow[pivot]
                for k, v in brow.items():
                    s = row.get(k, Fraction(0)) - f * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        if row:
            pivot = min(row)
            self._rows.append((pivot, row))
            return True
        return False

    @property
    def rank(self):
        return len(self._rows)


def ad_orbit(algebra, u, v, cap):
    """Iterate the adjoint action of u on v up to cap applications.

    Once an iterate is linearly dependent on its predecessors the span
    is invariant, so "stabilized" is a final verdict; a zero iterate
    gives "nilpotent" with the number of applications used.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    tracker = _SpanTracker()
    dims = []
    w = v
    for step in range(cap + 1):
        if w.is_zero:
            dims.append(tracker.rank)
            return OrbitReport(tuple(dims), "nilpotent", steps=step)
        grew = tracker.add(w.term_map())
        dims.append(tracker.rank)
        if not grew:
            return OrbitReport(tuple(dims), "stabilized", steps=tracker.rank)
        if step < cap:
            w = algebra.bracket(u, w)
    return OrbitReport(tuple(dims), "growing", steps=cap)


def nilpotency_bound(cfg, u_key, v_key):
    """Number of adjoint applications of a nilpotent-family key that is
    guaranteed to kill the target monomial.

    For a non-constant key the bound counts the target's exponents at
    weight-carrying slots outside the key's support; the constant acts
    by lowering the time exponent, so there the bound is the time
    exponent plus one.
    """
    if "A1" not in classify_locfin(cfg, u_key):
        raise NotA1Error("key is not in the locally-nilpotent family")
    L = cfg.layout
    n = L.pairs
    if not any(u_key.alpha) and not any(u_key.exps):
        return 1 + v_key.exps[0]
    supp = support(L, u_key)
    total = 0
    for p in list(L.group(6)) + [q + n for q in L.group_union(4, 6)]:
        if p not in supp:
            total += v_key.exps[L.pos(p)]
    return 1 + total


def eigen_check(algebra, elements, u):
    """Whether u is a simultaneous eigenvector of the adjoint action of
    every element in the list; returns (ok, eigenvalues)."""
    eigenvalues = []
    ok = True
    for s in elements:
        w = algebra.bracket(s, u)
        if w.is_zero:
            eigenvalues.append(Fraction(0))
            continue
        if w.keys() != u.keys():
            eigenvalues.append(None)
            ok = False
            continue
        ratios = {w.coefficient(k) / c for k, c in u.term_map().items()}
        if len(ratios) == 1:
            eigenvalues.append(ratios.pop())
        else:
            eigenvalues.append(None)
            ok = False
    return ok, eigenvalues


def in_center_B(cfg, alpha):
    """Whether the group monomial at alpha is central among group
    monomials: support confined to groups 4..5 and, when the slot-0
    projection is nontrivial, weight exactly two."""
    alpha = tuple(Fraction(x) for x in alpha)
    if not cfg.gamma.contains(alpha):
        raise NotInGammaError(f"{alpha} is not in the exponent group")
    L = cfg.layout
    allowed = {L.pos(p) for p in L.group_union(4, 5)}
    if any(x != 0 for i, x in enumerate(alpha) if i not in allowed):
        return False
    if cfg.gamma0_trivial:
        return True
    from .indexing import theta_alpha
    return theta_alpha(L, alpha) == 2


def _group_monomial_locally_nilpotent_key(cfg, alpha):
    """Membership in the nilpotent family of the group-monomial algebra."""
    L = cfg.layout
    allowed = {L.pos(p) for p in L.group_union(4, 5)}
    if any(x != 0 for i, x in enumerate(alpha) if i not in allowed):
        return False
    if cfg.gamma0_trivial:
        return True
    from .indexing import theta_alpha
    return theta_alpha(L, alpha) == 2


def bf_bn_report(cfg):
    """Count how many inverted pair shifts escape the locally-nilpotent
    span of the group-monomial subalgebra.

    The count equals the size of group 1..3 when the slot-0 projection
    is trivial, and one more otherwise (the constant also escapes); the
    derived pair count strips that extra element so that it can be
    compared across algebras.
    """
    L = cfg.layout
    escaped = []
    for p in range(0, L.iota[3] + 1):
        alpha = vec_neg(cfg.sigma(p))
        if not _group_monomial_locally_nilpotent_key(cfg, alpha):
            escaped.append(p)
    count = len(escaped)
    if cfg.gamma0_trivial:
        iota3 = count
        note = ""
    else:
        iota3 = count - 1
        note = ("constant escapes the nilpotent span when the slot-0 "
                "projection is nontrivial; derived pair count = count - 1")
    return {
        "count": count,
        "iota3": iota3,
        "escaped_indices": tuple(escaped),
        "note": note,
    }
