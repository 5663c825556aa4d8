"""Certificates of isomorphism and their machine verification.

A certificate packages the block data of an admissible group map: a
scale on the time slot, one 2x2 block per pair of the first three
groups, a coupling matrix into the group-4..5 slots, a block-triangular
map on those slots and a pair permutation.  From a valid certificate
with matching exponent groups the machinery constructs the linear map
on basis monomials; ``verify_homomorphism`` then checks the bracket
relation exactly on structured and random samples.  Nothing here
searches for certificates; it only builds and verifies them.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import BasisKey, ContactAlgebra
from .errors import (
    AlreadyNormalizedError,
    CertificateError,
    GammaMismatchError,
    LayoutMismatchError,
    NotInGammaError,
    RootNotRationalError,
)
from .indexing import (
    theta_alpha,
    theta_weight,
    vec_add,
    vec_neg,
    vec_scale,
    vec_sub,
    vec_unit,
    vec_zero,
)
from .lattice import AlgebraConfig, GroupLattice
from .linalg import frac_det, frac_invert, frac_nth_root, mat_mul, mat_vec, vec_mat
from .report import Report
from .sampling import sample_alpha, sample_element


@dataclass(eq=False)
class AutomorphismG:
    """Block data of a candidate group map.

    ``pair_ab[p]`` holds the two parameters of the 2x2 block of pair p
    (first-three-group pairs only); ``h`` couples the time-and-pair
    block into the group-4..5 slots, row order (0, 1, 1', 2, 2', ...);
    ``fA``/``fB``/``fC`` form the block-triangular map on the group-4..5
    slots; ``nu`` lists the image of each unbarred index, 0 included.
    """

    b0: Fraction
    pair_ab: dict = field(default_factory=dict)
    h: tuple = ()
    fA: tuple = ()
    fB: tuple = ()
    fC: tuple = ()
    nu: tuple = ()

    @classmethod
    def identity(cls, layout):
        i3 = layout.iota[3]
        l4 = layout.ell[3]
        l5 = layout.ell[4]
        return cls(
            b0=Fraction(1),
            pair_ab={p: (Fraction(0), Fraction(1)) for p in range(1, i3 + 1)},
            h=tuple(tuple(Fraction(0) for _ in range(l4 + l5))
                    for _ in range(1 + 2 * i3)),
            fA=tuple(tuple(Fraction(int(i == j)) for j in range(l4))
                     for i in range(l4)),
            fB=tuple(tuple(Fraction(int(i == j)) for j in range(l5))
                     for i in range(l5)),
            fC=tuple(tuple(Fraction(0) for _ in range(l5)) for _ in range(l4)),
            nu=tuple(range(0, layout.pairs + 1)),
        )

    def g_block(self, p):
        a, b = self.pair_ab[p]
        return [[1 - a, 1 - a - b], [a, a + b]]

    def f_matrix(self, layout):
        l4 = layout.ell[3]
        l5 = layout.ell[4]
        out = []
        for i in range(l4):
            out.append(list(self.fA[i]) + list(self.fC[i]))
        for i in range(l5):
            out.append([Fraction(0)] * l4 + list(self.fB[i]))
        return out

    def h_row(self, layout, p):
        """Row of the coupling matrix for index p in the time-and-pair
        block (p = 0 or an index of groups 1..3, barred allowed)."""
        if p == 0:
            return self.h[0]
        n = layout.pairs
        q = p if p <= n else p - n
        return self.h[2 * q - 1] if p <= n else self.h[2 * q]


def validate_automorphism(aut, cfg, cfg_target):
    """Itemized check of the certificate against both configurations."""
    rep = Report(title="certificate check")
    L = cfg.layout
    n = L.pairs
    i3 = L.iota[3]
    l45 = L.ell[3] + L.ell[4]

    rep.add("layout-match", cfg.layout == cfg_target.layout,
            "source and target layouts must agree")
    rep.add("exponent-flag-match", cfg.j0_nat == cfg_target.j0_nat,
            "source and target time-exponent flags must agree")
    rep.add("scale-nonzero", aut.b0 != 0, "time-slot scale must be nonzero")
    if not cfg.gamma0_trivial:
        pass
    else:
        rep.add("scale-normalized", aut.b0 == 1,
                "scale must be 1 when the slot-0 projection is trivial")

    missing = [p for p in range(1, i3 + 1) if p not in aut.pair_ab]
    rep.add("pair-blocks-present", not missing,
            f"blocks needed for pairs 1..{i3}"
            + (f"; missing {missing}" if missing else ""))
    if missing:
        return rep

    bad_b = [p for p in range(1, i3 + 1) if aut.pair_ab[p][1] == 0]
    rep.add("pair-blocks-invertible", not bad_b,
            "second block parameter must be nonzero"
            + (f"; zero at {bad_b}" if bad_b else ""))
    bad_a = [q for q in L.group(2) if aut.pair_ab[q][0] != 0]
    rep.add("group2-shape", not bad_a,
            "group-2 blocks are upper triangular (first parameter zero)"
            + (f"; nonzero at {bad_a}" if bad_a else ""))

    ok_shape = (len(aut.h) == 1 + 2 * i3
                and all(len(r) == l45 for r in aut.h))
    rep.add("coupling-shape", ok_shape,
            f"coupling matrix must be {1 + 2 * i3} x {l45}")
    if ok_shape:
        if cfg.j0_nat:
            rep.add("coupling-time-row", not any(aut.h[0]),
                    "time row of the coupling matrix must vanish when "
                    "time exponents are allowed")
        neg_bad = [p for p in L.group(1)
                   if any(aut.h[2 * p][j] != -aut.h[2 * p - 1][j]
                          for j in range(l45))]
        rep.add("coupling-pair-rows", not neg_bad,
                "group-1 partner rows must be negatives"
                + (f"; violated at pairs {neg_bad}" if neg_bad else ""))
        low_bad = [p for p in L.group_union(2, 3)
                   if any(aut.h[2 * p - 1]) or any(aut.h[2 * p])]
        rep.add("coupling-lower-rows", not low_bad,
                "rows for groups 2..3 must vanish"
                + (f"; nonzero at pairs {low_bad}" if low_bad else ""))

    ok_f = True
    if L.ell[3]:
        ok_f = ok_f and frac_det(aut.fA) != 0
    if L.ell[4]:
        ok_f = ok_f and frac_det(aut.fB) != 0
    rep.add("block-triangular-invertible", ok_f,
            "diagonal blocks on the group-4..5 slots must be invertible")

    nu = aut.nu
    ok_nu = (len(nu) == n + 1 and sorted(nu) == list(range(0, n + 1)))
    rep.add("permutation-bijective", ok_nu,
            f"permutation must list images of 0..{n}")
    if ok_nu:
        hat1 = {0} | set(L.group(1))
        rep.add("permutation-blocks",
                all(nu[p] in hat1 for p in hat1)
                and all(nu[p] in set(L.group(2)) for p in L.group(2))
                and all(nu[p] in set(L.group(3)) for p in L.group(3))
                and all(nu[p] == p for p in L.group_union(4, 6)),
                "permutation must preserve the group blocks and fix groups 4..6")
        if cfg.j0_nat:
            rep.add("permutation-time", nu[0] == 0,
                    "time index must be fixed when time exponents are allowed")

    if not cfg.gamma0_trivial and rep.ok:
        # row conditions on the assembled block matrix
        fmat = aut.f_matrix(L)
        rep.add("row-zero-sum", sum(aut.h[0], Fraction(0)) == 0,
                "time row: off-diagonal entries must sum to zero")
        bad_rows = []
        for p in range(1, i3 + 1):
            g = aut.g_block(p)
            if g[0][0] + g[0][1] + sum(aut.h[2 * p - 1], Fraction(0)) != 1:
                bad_rows.append(p)
            if g[1][0] + g[1][1] + sum(aut.h[2 * p], Fraction(0)) != 1:
                bad_rows.append(L.bar(p))
        for r, row in enumerate(fmat):
            if sum(row, Fraction(0)) != 1:
                bad_rows.append(i3 + 1 + r)
        rep.add("row-unit-sums", not bad_rows,
                "nontrivial slot-0 projection forces unit row sums"
                + (f"; violated at rows {bad_rows}" if bad_rows else ""))
    return rep


def _nu_effective(layout, nu):
    """Permutation used for coordinate redistribution.

    When the time index moves, redistribute with the companion
    permutation that fixes 0 and sends the preimage of 0 to the image
    of 0 instead.
    """
    if nu[0] == 0:
        return nu
    p0 = nu.index(0)
    out = list(nu)
    out[0] = 0
    out[p0] = nu[0]
    return tuple(out)


def tau_apply(aut, layout, alpha):
    """Apply the certified group map to a coordinate vector."""
    n = layout.pairs
    i3 = layout.iota[3]
    l45 = layout.ell[3] + layout.ell[4]
    alpha = tuple(Fraction(x) for x in alpha)

    pre = list(alpha)
    if aut.nu[0] != 0:
        p0 = aut.nu.index(0)
        th = theta_alpha(layout, alpha)
        pre[0] = (alpha[layout.pos(p0 + n)] - alpha[layout.pos(p0)]) / 2
        pre[layout.pos(p0)] = -th / 2 - alpha[0]
        pre[layout.pos(p0 + n)] = -th / 2 + alpha[0]

    w = list(pre)
    w[0] = aut.b0 * pre[0]
    for p in range(1, i3 + 1):
        g = aut.g_block(p)
        xp = pre[layout.pos(p)]
        xb = pre[layout.pos(p + n)]
        w[layout.pos(p)] = xp * g[0][0] + xb * g[1][0]
        w[layout.pos(p + n)] = xp * g[0][1] + xb * g[1][1]
    if l45:
        fmat = aut.f_matrix(layout)
        i45 = list(layout.group_union(4, 5))
        for col, q in enumerate(i45):
            acc = pre[0] * aut.h[0][col]
            for p in range(1, i3 + 1):
                acc += pre[layout.pos(p)] * aut.h[2 * p - 1][col]
                acc += pre[layout.pos(p + n)] * aut.h[2 * p][col]
            for row, q2 in enumerate(i45):
                acc += pre[layout.pos(q2)] * fmat[row][col]
            w[layout.pos(q)] = acc

    nu_eff = _nu_effective(layout, aut.nu)
    out = [Fraction(0)] * layout.dim
    out[0] = w[0]
    for p in range(1, n + 1):
        out[layout.pos(nu_eff[p])] = w[layout.pos(p)]
        out[layout.pos(layout.bar(nu_eff[p]))] = w[layout.pos(p + n)]
    return tuple(out)


def tau_matrix(aut, layout):
    """The group map as a matrix acting on row vectors."""
    rows = []
    for i in range(layout.dim):
        e = [Fraction(0)] * layout.dim
        e[i] = Fraction(1)
        rows.append(list(tau_apply(aut, layout, tuple(e))))
    return rows


class Character:
    """Multiplicative map from the exponent group to nonzero rationals.

    Stored as values on a generating family; the value on any member is
    the product over its integer coordinates.  The memo table is the
    only mutable state; confine an instance to one thread or guard it.
    """

    def __init__(self, layout, vectors, values):
        self.layout = layout
        self.vectors = tuple(tuple(v) for v in vectors)
        self.values = tuple(Fraction(v) for v in values)
        self._lattice = GroupLattice(layout, self.vectors)
        self._memo = {}

    def value(self, alpha):
        alpha = tuple(Fraction(x) for x in alpha)
        if alpha in self._memo:
            return self._memo[alpha]
        coords = self._lattice.coordinates(alpha)
        if coords is None:
            raise NotInGammaError(f"{alpha} is outside the character domain")
        out = Fraction(1)
        for c, v in zip(coords, self.values):
            if c:
                out *= v ** c
        self._memo[alpha] = out
        return out

    def corrupted(self, index, factor):
        """Copy with one stored value scaled; for negative controls."""
        values = list(self.values)
        values[index] = values[index] * Fraction(factor)
        return Character(self.layout, self.vectors, values)


def extend_character(gamma, aut, layout):
    """Grow the seed character on the pair shifts to the whole group.

    Each new generator either misses the rational span of the current
    domain (value 1) or has a least multiple inside it, in which case
    the value is the rational root of the value there; a missing
    rational root is a hard error.
    """
    n = layout.pairs
    i3, i5 = layout.iota[3], layout.iota[5]
    vectors = []
    values = []
    for p in range(1, i5 + 1):
        from .indexing import sigma_vector
        vectors.append(sigma_vector(layout, p, False))
        if p <= i3:
            values.append(aut.pair_ab[p][1] / aut.b0)
        else:
            values.append(1 / aut.b0)
    current = GroupLattice(layout, vectors)
    for g in gamma.generators:
        if current.contains(g):
            continue
        m = current.smallest_multiple_inside(g)
        if m is None:
            vectors.append(g)
            values.append(Fraction(1))
        else:
            target = vec_scale(g, m)
            coords = current.coordinates(target)
            val = Fraction(1)
            for c, v in zip(coords, values):
                if c:
                    val *= v ** c
            root = frac_nth_root(val, m)
            if root is None:
                raise RootNotRationalError(
                    f"character needs a rational {m}-th root of {val}")
            vectors.append(g)
            values.append(root)
        current = GroupLattice(layout, vectors)
    return Character(layout, vectors, values)


class ThetaMap:
    """Linear map between two algebras given by images of basis keys.

    The evaluation cache is plain mutable state; share instances across
    threads only behind a lock.
    """

    def __init__(self, source, target, key_image, describe="", **attrs):
        self.source = source
        self.target = target
        self._key_image = key_image
        self.describe = describe
        self._cache = {}
        for k, v in attrs.items():
            setattr(self, k, v)

    def key_image(self, key):
        out = self._cache.get(key)
        if out is None:
            out = self._key_image(key)
            self._cache[key] = out
        return out

    def apply(self, u):
        if u.algebra.cfg is not self.source.cfg:
            raise GammaMismatchError("element is not in the source algebra")
        out = self.target.zero()
        for key, c in u.term_map().items():
            out = out + c * self.key_image(key)
        return out

    __call__ = apply


def normalize_sigma0(cfg):
    """Trade a unit time shift for an enlarged exponent group.

    Builds the companion configuration with trivial shift and the map
    sending each basis monomial to the one whose slot-0 coordinate is
    corrected by one minus half its weight.  The map is an injective
    Lie homomorphism onto its image; the verification harness checks
    the bracket relation exactly.
    """
    if not cfg.sigma0:
        raise AlreadyNormalizedError("configuration already has zero time shift")
    L = cfg.layout
    shift = vec_unit(L, 0, 1)
    gens = []
    for g in cfg.gamma.generators:
        gens.append(vec_add(g, vec_scale(shift, -theta_alpha(L, g) / 2)))
    gens.append(shift)
    exponents_exist = cfg.j0_nat or any(cfg.layout.ell[i] for i in range(1, 6))
    if exponents_exist:
        gens.append(vec_scale(shift, Fraction(1, 2)))
    gamma2 = GroupLattice(L, gens)
    cfg2 = AlgebraConfig(layout=L, sigma0=False, gamma=gamma2,
                         j0_nat=cfg.j0_nat)
    source = ContactAlgebra(cfg)
    target = ContactAlgebra(cfg2)

    def key_image(key):
        w = theta_weight(L, key.alpha, key.exps)
        alpha2 = vec_add(key.alpha, vec_scale(shift, 1 - w / 2))
        return target.monomial(alpha2, key.exps)

    theta = ThetaMap(source, target, key_image,
                     describe="time-shift normalization")
    return cfg2, theta


def _check_gamma_match(tau, tau_inv, cfg, cfg_target):
    for g in cfg.gamma.generators:
        if not cfg_target.gamma.contains(vec_mat(g, tau)):
            raise GammaMismatchError(
                f"image of source generator {g} is outside the target group")
    for g in cfg_target.gamma.generators:
        if not cfg.gamma.contains(vec_mat(g, tau_inv)):
            raise GammaMismatchError(
                f"preimage of target generator {g} is outside the source group")


def build_theta(aut, cfg, cfg_target):
    """Construct the certified basis-key map between two algebras."""
    if cfg.layout != cfg_target.layout:
        raise LayoutMismatchError("source and target layouts differ")
    if cfg.j0_nat != cfg_target.j0_nat:
        raise LayoutMismatchError("source and target exponent flags differ")
    if cfg.sigma0 or cfg_target.sigma0:
        raise CertificateError(
            "certificates act on normalized configurations; "
            "apply normalize_sigma0 first")
    rep = validate_automorphism(aut, cfg, cfg_target)
    if not rep.ok:
        raise CertificateError("invalid certificate:\n" + rep.render())
    L = cfg.layout
    tau = tau_matrix(aut, L)
    tau_inv = frac_invert(tau)
    _check_gamma_match(tau, tau_inv, cfg, cfg_target)
    if aut.nu[0] != 0:
        return _build_theta_swap(aut, cfg, cfg_target, tau)
    return _build_theta_direct(aut, cfg, cfg_target, tau)


def _build_theta_swap(aut, cfg, cfg_target, tau):
    """Time-pair swap map; only the reduced certificate is supported.

    The swap composes with direct certificates to cover the general
    moved-time case, and it requires empty groups 4..6: with those
    groups present the printed swap map fails the bracket relation
    (weight terms from the exponents are not matched by any family).
    """
    L = cfg.layout
    p0 = aut.nu[0]
    reduced = (aut.b0 == 1
               and all(ab == (0, 1) for ab in aut.pair_ab.values())
               and not any(any(row) for row in aut.h)
               and aut.nu.index(0) == p0
               and all(aut.nu[p] == p for p in range(1, L.pairs + 1)
                       if p != p0))
    if not reduced:
        raise CertificateError(
            "time-moving certificates are supported in reduced form only "
            "(identity blocks and a single transposition); factor the "
            "certificate through a direct one")
    if any(L.ell[i] for i in (3, 4, 5)):
        raise CertificateError(
            "time-moving certificates need empty groups 4..6")
    if cfg.j0_nat:
        raise CertificateError(
            "time-moving certificates need the trivial time-exponent flag")
    source = ContactAlgebra(cfg)
    target = ContactAlgebra(cfg_target)
    shift = cfg.sigma(p0)

    def key_image(key):
        alpha2 = vec_sub(vec_mat(key.alpha, tau), shift)
        return target.monomial(alpha2, key.exps)

    return ThetaMap(source, target, key_image,
                    describe=f"time swap with pair {p0}",
                    aut=aut, tau=tau)


def _build_theta_direct(aut, cfg, cfg_target, tau):
    L = cfg.layout
    n = L.pairs
    i3, i4, i5 = L.iota[3], L.iota[4], L.iota[5]
    l45 = i5 - i3
    b0 = aut.b0
    source = ContactAlgebra(cfg)
    target = ContactAlgebra(cfg_target)
    chi = extend_character(cfg.gamma, aut, L)
    nu = aut.nu

    fmat = aut.f_matrix(L) if l45 else []
    finv = frac_invert(fmat) if l45 else []

    # full row sums of the assembled block matrix, unbarred indices only;
    # the defect enters the time image with the sign that cancels the
    # weight change of the group map (checked exactly by the verifier)
    c = {0: b0 + sum(aut.h[0], Fraction(0))}
    for p in range(1, i3 + 1):
        g = aut.g_block(p)
        c[p] = g[0][0] + g[0][1] + sum(aut.h[2 * p - 1], Fraction(0))
    for row, q in enumerate(L.group_union(4, 5)):
        c[q] = sum(fmat[row], Fraction(0))
    dvec = [Fraction(0)] + [c[p] - 1 for p in range(1, i5 + 1)]

    # factor the coupling matrix through the pairing columns
    hp = [[x / 2 for x in aut.h[0]]]
    for p in range(1, i3 + 1):
        hp.append([-x for x in aut.h[2 * p - 1]])

    # conjugated data on the reduced coordinate space
    size = 1 + i3 + l45
    gtp = [[Fraction(0)] * size for _ in range(size)]
    gtp[0][0] = b0
    for p in range(1, i3 + 1):
        gtp[p][p] = aut.pair_ab[p][1]
    for r in range(0, i3 + 1):
        for j in range(l45):
            gtp[r][1 + i3 + j] = -hp[r][j]
    for r in range(l45):
        for j in range(l45):
            gtp[1 + i3 + r][1 + i3 + j] = fmat[r][j]
    dtil = mat_vec(frac_invert(gtp), dvec)

    htil = []
    if l45:
        scales = [b0] + [aut.pair_ab[p][1] for p in range(1, i3 + 1)]
        pre = [[-hp[r][j] / scales[r] for j in range(l45)]
               for r in range(0, i3 + 1)]
        htil = mat_mul(pre, finv)

    def gtilde_block(p):
        b = aut.pair_ab[p][1]
        inv = frac_invert(aut.g_block(p))
        return [[b * x for x in row] for row in inv]

    # diagonal-family elements of the target, one slot per index 0..i5
    zexp = cfg_target.zero_exps()
    xvec = [target.one()]
    for p in range(1, i3 + 1):
        xvec.append(target.x(vec_neg(cfg_target.sigma(p))))
    for q in L.group_union(4, 5):
        exps = list(zexp)
        exps[L.pos(q + n)] = 1
        xvec.append(target.monomial(vec_neg(cfg_target.sigma(q)), tuple(exps)))
    nu_x = [xvec[nu[p]] if p <= i3 else xvec[p] for p in range(0, i5 + 1)]

    s = {}
    if cfg.j0_nat:
        acc = b0 * target.t(0)
        for p in range(0, i5 + 1):
            if dtil[p]:
                acc = acc + dtil[p] * nu_x[p]
        s[0] = acc
    for r in L.group(6):
        s[r] = target.t(r)
        s[L.bar(r)] = b0 * target.t(L.bar(r))
    i5list = list(L.group(5))
    for qi, q in enumerate(i5list):
        acc = target.zero()
        for ri, r in enumerate(i5list):
            if aut.fB[qi][ri]:
                acc = acc + aut.fB[qi][ri] * target.t(r)
        s[q] = acc
    if l45:
        i45list = list(L.group_union(4, 5))
        for col, q in enumerate(i45list):
            acc = target.zero()
            for row in range(l45):
                if finv[row][col]:
                    acc = acc + finv[row][col] * xvec[1 + i3 + row]
            for row in range(0, i3 + 1):
                if htil[row][col]:
                    acc = acc + htil[row][col] * nu_x[row]
            s[L.bar(q)] = acc

    gamma0_trivial = cfg.gamma0_trivial

    def bracket_column(other):
        """Pairing of the permuted diagonal family against one element."""
        acc = target.zero()
        for idx in range(0, i5 + 1):
            if dtil[idx]:
                acc = acc + dtil[idx] * target.bracket(nu_x[idx], other)
        return acc

    for p in list(L.group(2)) + list(L.group(3)):
        gt = gtilde_block(p)
        u1 = -target.t(L.bar(nu[p]))
        col1 = bracket_column(u1) if gamma0_trivial else target.zero()
        if p in L.group(2):
            # only the barred member carries an exponent slot here
            e1 = Fraction(1, 2) * col1 * gt[0][0]
            first = u1 * gt[0][0] + e1
            s[L.bar(p)] = -first
        else:
            u2 = target.t(nu[p])
            col2 = bracket_column(u2) if gamma0_trivial else target.zero()
            e1 = Fraction(1, 2) * (col1 * gt[0][0] + col2 * gt[1][0])
            e2 = Fraction(1, 2) * (col1 * gt[0][1] + col2 * gt[1][1])
            first = u1 * gt[0][0] + u2 * gt[1][0] + e1
            second = u1 * gt[0][1] + u2 * gt[1][1] + e2
            s[p] = second
            s[L.bar(p)] = -first

    sigma_for = {q: cfg.sigma(q) for q in L.group_union(4, 5)}
    exp_positions = [(p, L.pos(p))
                     for p in L.exponent_indices(with_zero=cfg.j0_nat)]

    def key_image(key):
        base = key.alpha
        for q in L.group_union(4, 5):
            k = key.exps[L.pos(L.bar(q))]
            if k:
                base = vec_add(base, vec_scale(sigma_for[q], k))
        coeff = chi.value(base) / b0
        out = target.x(vec_mat(base, tau), coeff)
        for p, pos in exp_positions:
            e = key.exps[pos]
            if e:
                out = target.multiply(out, s[p] ** e)
        return out

    return ThetaMap(source, target, key_image,
                    describe="direct certificate map",
                    aut=aut, chi=chi, tau=tau, s_images=s)


def theta_with_character(theta, chi):
    """Same certificate map with a replacement character; for negative
    controls and experiments."""
    aut = theta.aut
    cfg = theta.source.cfg
    L = cfg.layout
    tau = theta.tau
    s = theta.s_images
    target = theta.target
    exp_positions = [(p, L.pos(p))
                     for p in L.exponent_indices(with_zero=cfg.j0_nat)]

    def key_image(key):
        base = key.alpha
        for q in L.group_union(4, 5):
            k = key.exps[L.pos(L.bar(q))]
            if k:
                base = vec_add(base, vec_scale(cfg.sigma(q), k))
        coeff = chi.value(base) / aut.b0
        out = target.x(vec_mat(base, tau), coeff)
        for p, pos in exp_positions:
            e = key.exps[pos]
            if e:
                out = target.multiply(out, s[p] ** e)
        return out

    return ThetaMap(theta.source, target, key_image,
                    describe=theta.describe + " (replaced character)",
                    aut=aut, chi=chi, tau=tau, s_images=s)


def _source_generators(cfg, algebra):
    """The multiplicative generator elements carrying exponents."""
    L = cfg.layout
    n = L.pairs
    out = []
    for p in L.exponent_indices(with_zero=cfg.j0_nat):
        if p > n and L.bar(p) in L.group_union(4, 5):
            q = L.bar(p)
            exps = list(cfg.zero_exps())
            exps[L.pos(p)] = 1
            out.append((p, algebra.monomial(vec_neg(cfg.sigma(q)),
                                            tuple(exps))))
        else:
            out.append((p, algebra.t(p)))
    return out


def verify_homomorphism(theta, samples=100, seed=0):
    """Exact bracket check on structured and random sample pairs.

    Structured pairs: group monomials against each other, exponent
    generators against group monomials, and exponent generators against
    each other.  Random pairs draw small multi-term elements.  Any
    failure is reported with the offending pair.
    """
    import random as _random
    rng = _random.Random(seed)
    src = theta.source
    cfg = src.cfg
    rep = Report(title=f"homomorphism check ({theta.describe})")

    def check(u, v):
        lhs = theta.apply(src.bracket(u, v))
        rhs = theta.target.bracket(theta.apply(u), theta.apply(v))
        return lhs == rhs

    def run_family(name, pairs):
        bad = None
        count = 0
        for u, v in pairs:
            count += 1
            if not check(u, v):
                bad = (u, v)
                break
        rep.add(name, bad is None,
                f"{count} pairs"
                + ("" if bad is None else
                   f"; counterexample u={bad[0].pretty()} v={bad[1].pretty()}"))

    n_struct = max(4, samples // 4)
    run_family("group-monomial pairs",
               ((src.x(sample_alpha(rng, cfg.gamma)),
                 src.x(sample_alpha(rng, cfg.gamma)))
                for _ in range(n_struct)))
    gens = _source_generators(cfg, src)
    run_family("generator-vs-monomial pairs",
               ((g, src.x(sample_alpha(rng, cfg.gamma)))
                for _, g in gens
                for _ in range(max(2, n_struct // max(1, len(gens))))))
    run_family("generator pairs",
               ((g1, g2) for _, g1 in gens for _, g2 in gens))
    run_family("random element pairs",
               ((sample_element(rng, src), sample_element(rng, src))
                for _ in range(samples)))
    return rep


def invariant_summary(cfg):
    """Comparison data that any isomorphism must preserve."""
    from .analysis import bf_bn_report
    return {
        "ell": tuple(cfg.layout.ell),
        "j0": "nat" if cfg.j0_nat else "zero",
        "gamma0": "trivial" if cfg.gamma0_trivial else "nontrivial",
        "gamma_rank": cfg.gamma.rank,
        "iota3": bf_bn_report(cfg)["iota3"],
    }


def compare_invariants(a, b):
    """(equal, differing keys); unequal summaries certify
    non-isomorphism, equal ones are inconclusive without a certificate."""
    diffs = [k for k in a if a[k] != b[k]]
    return (not diffs, diffs)
