"""JSON file formats: configurations, element literals, certificates.

Rationals cross the boundary as "p/q" strings, never as floats; all
serialization is canonical (sorted keys, fixed term order) so reports
built from these forms are byte-stable.
"""

import hashlib
import json
from fractions import Fraction

from .algebra import canonical_order
from .errors import CertificateError
from .indexing import build_scheme
from .isomorphism import AutomorphismG
from .lattice import AlgebraConfig, GroupLattice


def parse_fraction(text):
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"expected an integer or 'p/q' string, got {text!r}")


def fraction_str(value):
    return str(Fraction(value))


# --- configurations ---------------------------------------------------

def config_from_obj(obj):
    try:
        ell = obj["ell"]
        sigma0 = int(obj.get("sigma0", 0))
        j0 = obj.get("j0", "nat")
        gens = obj.get("gamma", {}).get("generators", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed configuration object: {exc}")
    if j0 not in ("nat", "zero"):
        raise ValueError("j0 must be 'nat' or 'zero'")
    layout = build_scheme(ell)
    generators = [[parse_fraction(x) for x in g] for g in gens]
    for g in generators:
        if len(g) != layout.dim:
            raise ValueError(
                f"generator length {len(g)} does not match dimension {layout.dim}")
    gamma = GroupLattice(layout, generators)
    return AlgebraConfig(layout=layout, sigma0=bool(sigma0), gamma=gamma,
                         j0_nat=(j0 == "nat"))


def config_to_obj(cfg):
    return {
        "ell": list(cfg.layout.ell),
        "sigma0": 1 if cfg.sigma0 else 0,
        "j0": "nat" if cfg.j0_nat else "zero",
        "gamma": {"generators": [[fraction_str(x) for x in g]
                                 for g in cfg.gamma.generators]},
    }


def config_digest(cfg):
    blob = json.dumps(config_to_obj(cfg), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def load_config(path):
    with open(path) as fh:
        return config_from_obj(json.load(fh))


# --- element literals -------------------------------------------------

def element_to_obj(u):
    out = []
    for key, c in u.terms():
        out.append({
            "coeff": fraction_str(c),
            "alpha": [fraction_str(x) for x in key.alpha],
            "i": list(key.exps),
        })
    return out


def element_from_obj(algebra, obj):
    if not isinstance(obj, list):
        raise ValueError("element literal must be a list of terms")
    out = algebra.zero()
    for term in obj:
        coeff = parse_fraction(term.get("coeff", 1))
        alpha = [parse_fraction(x) for x in term["alpha"]]
        exps = [int(x) for x in term["i"]]
        out = out + algebra.monomial(alpha, exps, coeff)
    return out


def element_literal(u):
    return json.dumps(element_to_obj(u), sort_keys=True)


def parse_element_literal(algebra, text):
    return element_from_obj(algebra, json.loads(text))


# --- certificates -----------------------------------------------------

def certificate_from_obj(obj, layout):
    try:
        b0 = parse_fraction(obj.get("b0", 1))
        pairs_raw = obj.get("pairs", {})
        nu_raw = obj.get("nu")
        h_raw = obj.get("h")
        f_raw = obj.get("f", {})
    except AttributeError as exc:
        raise CertificateError(f"malformed certificate: {exc}")
    i3 = layout.iota[3]
    l4, l5 = layout.ell[3], layout.ell[4]

    pair_ab = {}
    for p in range(1, i3 + 1):
        entry = pairs_raw.get(str(p), pairs_raw.get(p, {}))
        a = parse_fraction(entry.get("a", 0))
        b = parse_fraction(entry.get("b", 1))
        pair_ab[p] = (a, b)

    if h_raw is None:
        h = tuple(tuple(Fraction(0) for _ in range(l4 + l5))
                  for _ in range(1 + 2 * i3))
    else:
        h = tuple(tuple(parse_fraction(x) for x in row) for row in h_raw)

    def matrix(key, size_r, size_c, default_identity):
        raw = f_raw.get(key)
        if raw is None:
            if default_identity:
                return tuple(tuple(Fraction(int(i == j)) for j in range(size_c))
                             for i in range(size_r))
            return tuple(tuple(Fraction(0) for _ in range(size_c))
                         for _ in range(size_r))
        return tuple(tuple(parse_fraction(x) for x in row) for row in raw)

    fA = matrix("A", l4, l4, True)
    fB = matrix("B", l5, l5, True)
    fC = matrix("C", l4, l5, False)

    if nu_raw is None:
        nu = tuple(range(0, layout.pairs + 1))
    else:
        nu = tuple(int(x) for x in nu_raw)
    return AutomorphismG(b0=b0, pair_ab=pair_ab, h=h, fA=fA, fB=fB, fC=fC,
                         nu=nu)


def certificate_to_obj(aut):
    obj = {
        "b0": fraction_str(aut.b0),
        "pairs": {str(p): {"a": fraction_str(a), "b": fraction_str(b)}
                  for p, (a, b) in sorted(aut.pair_ab.items())},
        "nu": list(aut.nu),
    }
    if any(any(row) for row in aut.h):
        obj["h"] = [[fraction_str(x) for x in row] for row in aut.h]
    fobj = {}
    for key, mat in (("A", aut.fA), ("B", aut.fB), ("C", aut.fC)):
        if any(any(row) for row in mat):
            fobj[key] = [[fraction_str(x) for x in row] for row in mat]
    if fobj:
        obj["f"] = fobj
    return obj


def load_certificate(path, layout):
    with open(path) as fh:
        return certificate_from_obj(json.load(fh), layout)
