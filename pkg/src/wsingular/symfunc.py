"""
Symmetric functions in the power-sum basis over exact Scalars.

Jack functions are computed at generic t by Gram-Schmidt in the monomial
basis, walking each degree in increasing lexicographic order (which refines
dominance).  Results are memoized per degree; specialized values come from
specializing the symbolic expansions.
"""

from __future__ import annotations

import logging
import os
import threading
from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from flint import fmpq, fmpq_poly

from .partition import Partition, parse_partition, partitions
from .scalar import SYMBOLIC, RationalFunction, Scalar, parse_expression

__all__ = [
    "SymFunc",
    "p_to_m",
    "m_to_p",
    "inner_product",
    "jack",
    "jack_monomial",
    "dual_norm_b",
    "skew_jack",
    "integral_norm_c",
    "coproduct",
    "tensor",
    "tensor_to_m",
    "cauchy_truncated",
    "parse_symfunc",
    "save_jack_cache",
    "use_jack_cache",
    "clear_jack_cache",
]

log = logging.getLogger(__name__)


def _merge_parts(a: tuple, b: tuple) -> Partition:
    return Partition(sorted(a + b, reverse=True))


class SymFunc:
    """A finite linear combination sum_lambda c_lambda p_lambda."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping | None = None):
        self.coeffs = {}
        if coeffs:
            for lam, c in coeffs.items():
                if c:
                    self.coeffs[Partition(lam)] = c

    @classmethod
    def _raw(cls, coeffs: dict) -> SymFunc:
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def p(cls, lam=(), coeff=None) -> SymFunc:
        return cls._raw({Partition(lam): SYMBOLIC.one if coeff is None else coeff})

    @classmethod
    def one(cls) -> SymFunc:
        return cls.p(())

    @classmethod
    def zero(cls) -> SymFunc:
        return cls._raw({})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def items(self):
        return self.coeffs.items()

    def coefficient(self, lam) -> object:
        return self.coeffs.get(Partition(lam), 0)

    def degrees(self) -> set[int]:
        return {lam.size for lam in self.coeffs}

    def homogeneous_part(self, d: int) -> SymFunc:
        return SymFunc._raw({lam: c for lam, c in self.coeffs.items() if lam.size == d})

    def map_coefficients(self, fn) -> SymFunc:
        out = {}
        for lam, c in self.coeffs.items():
            c = fn(c)
            if c:
                out[lam] = c
        return SymFunc._raw(out)

    def specialize(self, field) -> SymFunc:
        return self.map_coefficients(field.coerce)

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.p((), SYMBOLIC.coerce(other) if not hasattr(other, "field") else other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            v = out.get(lam)
            v = c if v is None else v + c
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return SymFunc._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            out: dict = {}
            for l1, c1 in self.coeffs.items():
                for l2, c2 in other.coeffs.items():
                    lam = _merge_parts(l1, l2)
                    c = c1 * c2
                    v = out.get(lam)
                    out[lam] = c if v is None else v + c
            return SymFunc._raw({k: v for k, v in out.items() if v})
        if not other:
            return SymFunc.zero()
        return SymFunc._raw({lam: c * other for lam, c in self.coeffs.items() if c * other})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return SymFunc._raw({lam: c / other for lam, c in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, SymFunc):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    __hash__ = None

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, kv[0]))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*p{lam}" for lam, c in self.sorted_items())

    def __repr__(self):
        return f"SymFunc({self})"

    def latex(self, alphabet: str = "") -> str:
        if not self.coeffs:
            return "0"
        arg = f"({alphabet})" if alphabet else ""
        out = []
        for lam, c in self.sorted_items():
            body = f"p_{{{lam}}}{arg}" if lam else ""
            coef = c.latex()
            if coef == "1" and body:
                term = body
            elif coef == "-1" and body:
                term = "-" + body
            else:
                if " + " in coef or " - " in coef.lstrip("-"):
                    coef = f"\\left({coef}\\right)"
                term = f"{coef}\\, {body}" if body else coef
            out.append(term)
        text = out[0]
        for term in out[1:]:
            text += " - " + term[1:] if term.startswith("-") else " + " + term
        return text

    def to_json(self) -> dict:
        return {"basis": "p", "terms": [[list(lam), str(c)] for lam, c in self.sorted_items()]}

    @classmethod
    def from_json(cls, data: dict) -> SymFunc:
        from .scalar import parse_scalar

        if data.get("basis") != "p":
            raise ValueError("only p-basis symmetric functions are supported")
        return cls({Partition(lam): parse_scalar(c) for lam, c in data["terms"]})


def parse_symfunc(text: str) -> SymFunc:
    """Inverse of ``str(SymFunc)``; accepts any arithmetic over t, a and p[...]."""
    val = parse_expression(text, {"p": lambda ints: SymFunc.p(ints)})
    if isinstance(val, Scalar):
        return SymFunc.p((), val) if val else SymFunc.zero()
    return val


# ---------------------------------------------------------------------------
# p <-> m


@lru_cache(maxsize=None)
def _p_to_m_int(lam: Partition) -> dict[Partition, int]:
    """p_lam = sum_mu R[lam, mu] m_mu with integer R, built one power sum at a time."""
    cur: dict[tuple, int] = {(): 1}
    for k in lam:
        nxt: dict[tuple, int] = defaultdict(int)
        for mu, c in cur.items():
            # p_k m_mu: add k to a part (or a new zero part); weight = multiplicity of the new value
            for v in set(mu) | {0}:
                parts = list(mu)
                if v:
                    parts.remove(v)
                parts.append(v + k)
                parts.sort(reverse=True)
                nu = tuple(parts)
                nxt[nu] += c * nu.count(v + k)
        cur = nxt
    return {Partition(mu): c for mu, c in cur.items()}


def p_to_m(f: SymFunc, max_len: int | None = None) -> dict[Partition, object]:
    """Monomial expansion of pi_{max_len}(f): only m_mu with length <= max_len are kept."""
    out: dict = {}
    for lam, c in f.coeffs.items():
        for mu, r in _p_to_m_int(lam).items():
            if max_len is not None and len(mu) > max_len:
                continue
            v = out.get(mu)
            out[mu] = c * r if v is None else v + c * r
    return {mu: c for mu, c in out.items() if c}


@lru_cache(maxsize=None)
def _m_to_p_degree(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    # p_lam = sum_{mu >= lam} R m_mu is triangular; invert from the top of the order.
    parts = partitions(n)
    out: dict[Partition, dict[Partition, Fraction]] = {}
    for lam in reversed(parts):
        R = _p_to_m_int(lam)
        expansion: dict[Partition, Fraction] = defaultdict(Fraction)
        expansion[lam] += Fraction(1)
        for mu, r in R.items():
            if mu == lam:
                continue
            for rho, c in out[mu].items():
                expansion[rho] -= r * c
        diag = R[lam]
        out[lam] = {rho: c / diag for rho, c in expansion.items() if c}
    return out


def m_to_p(lam) -> SymFunc:
    """The monomial symmetric function m_lam in the power-sum basis."""
    lam = Partition(lam)
    return SymFunc({rho: Scalar(c) for rho, c in _m_to_p_degree(lam.size)[lam].items()})


# ---------------------------------------------------------------------------
# inner product


def _pairing_weight(lam: Partition, field=SYMBOLIC):
    return field.t ** len(lam) * lam.zee()


def inner_product(f: SymFunc, g: SymFunc, field=SYMBOLIC):
    """<p_lam, p_mu> = delta t^{l(lam)} z_lam, extended bilinearly."""
    if len(f) > len(g):
        f, g = g, f
    total = field.zero
    for lam, c in f.coeffs.items():
        d = g.coeffs.get(lam)
        if d is not None:
            total = total + c * d * _pairing_weight(lam, field)
    return total


# ---------------------------------------------------------------------------
# Jack functions

_jack_lock = threading.RLock()
_jack_m: dict[Partition, dict[Partition, RationalFunction]] = {}
_jack_p: dict[Partition, SymFunc] = {}
_done_degrees: set[int] = set()
_cache_path: str | None = None
_cache_loaded: dict[int, dict[Partition, SymFunc]] | None = None

_T = fmpq_poly([0, 1])


def _monomial_gram(n: int, parts: list[Partition]) -> dict[tuple[Partition, Partition], RationalFunction]:
    """<m_mu, m_nu> as polynomials in t."""
    m2p = _m_to_p_degree(n)
    gram = {}
    for i, mu in enumerate(parts):
        for nu in parts[i:]:
            by_len: dict[int, Fraction] = defaultdict(Fraction)
            a, b = m2p[mu], m2p[nu]
            for rho, c in a.items():
                d = b.get(rho)
                if d is not None:
                    by_len[len(rho)] += c * d * rho.zee()
            coeffs = [Fraction(0)] * (max(by_len, default=0) + 1)
            for ell, c in by_len.items():
                coeffs[ell] = c
            poly = fmpq_poly([fmpq(c.numerator, c.denominator) for c in coeffs])
            rf = RationalFunction._raw(poly, fmpq_poly(1))
            gram[mu, nu] = gram[nu, mu] = rf
    return gram


def _compute_degree(n: int) -> None:
    parts = partitions(n)
    gram = _monomial_gram(n, parts)
    zero = RationalFunction()
    norms: dict[Partition, RationalFunction] = {}
    for i, lam in enumerate(parts):
        vec: dict[Partition, RationalFunction] = {lam: RationalFunction(1)}
        for mu in parts[:i]:
            jm = _jack_m[mu]
            ip = zero
            for nu, c in jm.items():
                ip = ip + c * gram[lam, nu]
            if ip.is_zero():
                continue
            coef = ip / norms[mu]
            for nu, c in jm.items():
                vec[nu] = vec.get(nu, zero) - coef * c
        vec = {nu: c for nu, c in vec.items() if not c.is_zero()}
        norm = zero
        for nu, c in vec.items():
            norm = norm + c * gram[lam, nu]
        norms[lam] = norm
        _jack_m[lam] = vec
    for lam in parts:
        _jack_p[lam] = _monomial_to_p(_jack_m[lam], n)


def _monomial_to_p(vec: Mapping[Partition, RationalFunction], n: int) -> SymFunc:
    m2p = _m_to_p_degree(n)
    out: dict[Partition, RationalFunction] = {}
    zero = RationalFunction()
    for mu, c in vec.items():
        for rho, r in m2p[mu].items():
            out[rho] = out.get(rho, zero) + c * r
    return SymFunc._raw({rho: Scalar._raw(c, zero) for rho, c in out.items() if not c.is_zero()})


def _ensure_degree(n: int) -> None:
    if n in _done_degrees:
        return
    with _jack_lock:
        if n in _done_degrees:
            return
        if not _install_from_cache(n):
            _compute_degree(n)
        _done_degrees.add(n)


def jack(lam) -> SymFunc:
    """The Jack function J_lam at generic t, monic on m_lam, in the power-sum basis."""
    lam = Partition(lam)
    _ensure_degree(lam.size)
    return _jack_p[lam]


def jack_monomial(lam) -> dict[Partition, Scalar]:
    """Monomial-basis expansion of J_lam (no length truncation)."""
    lam = Partition(lam)
    _ensure_degree(lam.size)
    return {mu: Scalar(c) for mu, c in _jack_m[lam].items()}


def dual_norm_b(lam) -> Scalar:
    """b_lam(t) = prod_s (a t + l + 1) / ((a + 1) t + l), so that Q_lam = b_lam J_lam."""
    lam = Partition(lam)
    t = RationalFunction.t()
    out = RationalFunction(1)
    for i, j in lam.cells():
        a, l = lam.arm(i, j), lam.leg(i, j)
        out = out * (a * t + (l + 1)) / ((a + 1) * t + l)
    return Scalar(out)


def integral_norm_c(lam, n: int) -> Scalar:
    """c_lam(n) = prod_s (n + a' t - l') / (n + (a' + 1) t - l' - 1)."""
    lam = Partition(lam)
    t = RationalFunction.t()
    out = RationalFunction(1)
    for i, j in lam.cells():
        a, l = lam.coarm(i, j), lam.coleg(i, j)
        out = out * (a * t + (n - l)) / ((a + 1) * t + (n - l - 1))
    return Scalar(out)


_skew_cache: dict[tuple[Partition, Partition], SymFunc] = {}


def skew_jack(lam, mu) -> SymFunc:
    """J_{lam/mu} = sum_nu <J_lam, Q_mu Q_nu> J_nu; zero unless mu is inside lam."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return SymFunc.zero()
    if not mu:
        return jack(lam)
    key = (lam, mu)
    hit = _skew_cache.get(key)
    if hit is not None:
        return hit
    if lam == mu:
        out = SymFunc.one()
    else:
        j_lam = jack(lam)
        q_mu = jack(mu) * dual_norm_b(mu)
        out = SymFunc.zero()
        for nu in partitions(lam.size - mu.size):
            c = inner_product(j_lam, q_mu * jack(nu) * dual_norm_b(nu))
            if c:
                out = out + jack(nu) * c
    with _jack_lock:
        _skew_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# two alphabets


def tensor(f: SymFunc, g: SymFunc) -> dict[tuple[Partition, Partition], object]:
    out = {}
    for l1, c1 in f.coeffs.items():
        for l2, c2 in g.coeffs.items():
            out[l1, l2] = c1 * c2
    return out


def _add_into(acc: dict, key, val):
    v = acc.get(key)
    v = val if v is None else v + val
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def coproduct(f: SymFunc) -> dict[tuple[Partition, Partition], object]:
    """f(x u y) written in p(x) (x) p(y): each p_k goes to p_k(x) + p_k(y)."""
    out: dict = {}
    for lam, c in f.coeffs.items():
        pieces = [((), (), 1)]
        for k, m in Counter(lam).items():
            pieces = [
                (left + (k,) * j, right + (k,) * (m - j), w * comb(m, j))
                for left, right, w in pieces
                for j in range(m + 1)
            ]
        for left, right, w in pieces:
            _add_into(out, (Partition(sorted(left, reverse=True)), Partition(sorted(right, reverse=True))), c * w)
    return out


def tensor_to_m(tab: Mapping, n1: int | None, n2: int | None) -> dict:
    """Convert a p(y) (x) p(z) table to monomial coefficients in n1 and n2 variables."""
    out: dict = {}
    for (l1, l2), c in tab.items():
        m1 = _p_to_m_int(l1)
        m2 = _p_to_m_int(l2)
        for mu1, r1 in m1.items():
            if n1 is not None and len(mu1) > n1:
                continue
            for mu2, r2 in m2.items():
                if n2 is not None and len(mu2) > n2:
                    continue
                _add_into(out, (mu1, mu2), c * (r1 * r2))
    return out


def cauchy_truncated(degree: int, n1: int, n2: int):
    """
    Both sides of the Cauchy identity, through degree ``degree`` in each alphabet,
    as monomial-coefficient tables over y_1..y_n1 and z_1..z_n2.

    The left side multiplies out the exponentials prod_m exp(p_m(y) p_m(z) / (t m));
    the right side sums J_lam(y) Q_lam(z).
    """
    field = SYMBOLIC
    series: dict = {((), ()): field.one}
    for m in range(1, degree + 1):
        x = (1 / field.t) / m
        factor = {}
        for k in range(0, degree // m + 1):
            factor[(m,) * k] = x**k / factorial(k)
        nxt: dict = {}
        for (ly, lz), c in series.items():
            for parts, e in factor.items():
                if sum(ly) + m * len(parts) > degree:
                    continue
                key = (ly + parts, lz + parts)
                _add_into(nxt, key, c * e)
        series = nxt
    lhs_p = {(Partition(sorted(a, reverse=True)), Partition(sorted(b, reverse=True))): c for (a, b), c in series.items()}

    rhs_p: dict = {}
    for d in range(degree + 1):
        for lam in partitions(d):
            j = jack(lam)
            for key, c in tensor(j, j * dual_norm_b(lam)).items():
                _add_into(rhs_p, key, c)
    return tensor_to_m(lhs_p, n1, n2), tensor_to_m(rhs_p, n1, n2)


# ---------------------------------------------------------------------------
# cache file

CACHE_HEADER = "WSINGULAR-JACK-CACHE v1"


def clear_jack_cache() -> None:
    with _jack_lock:
        _jack_m.clear()
        _jack_p.clear()
        _skew_cache.clear()
        _done_degrees.clear()


def use_jack_cache(path: str | None) -> None:
    """Register a cache file that is consulted, lazily, before computing a degree."""
    global _cache_path, _cache_loaded
    with _jack_lock:
        _cache_path = path
        _cache_loaded = None


def save_jack_cache(path: str, max_degree: int | None = None) -> int:
    """Write every memoized Jack function (optionally computing degrees up to max_degree)."""
    if max_degree is not None:
        for n in range(max_degree + 1):
            _ensure_degree(n)
    with _jack_lock:
        lams = sorted(_jack_p, key=lambda lam: (lam.size, lam))
        lines = [CACHE_HEADER]
        lines += [f"JACK {lam} := {_jack_p[lam]}" for lam in lams]
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return len(lams)


def _read_cache_file(path: str) -> dict[int, dict[Partition, SymFunc]]:
    by_degree: dict[int, dict[Partition, SymFunc]] = defaultdict(dict)
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError:
        return {}
    if not lines or lines[0].strip() != CACHE_HEADER:
        log.warning("ignoring jack cache %s: bad header", path)
        return {}
    for line in lines[1:]:
        if not line.strip():
            continue
        try:
            tag, rest = line.split(" ", 1)
            lam_text, expr = rest.split(" := ", 1)
            if tag != "JACK":
                raise ValueError(tag)
            lam = parse_partition(lam_text)
            by_degree[lam.size][lam] = parse_symfunc(expr)
        except ValueError:
            log.warning("ignoring malformed jack cache record: %.60s", line)
    return by_degree


def _install_from_cache(n: int) -> bool:
    global _cache_loaded
    if _cache_path is None:
        return False
    if _cache_loaded is None:
        _cache_loaded = _read_cache_file(_cache_path)
    records = _cache_loaded.get(n)
    parts = partitions(n)
    if not records or set(records) != set(parts):
        return False
    candidate: dict[Partition, dict[Partition, RationalFunction]] = {}
    for lam in parts:
        f = records[lam]
        mono = p_to_m(f)
        if any(c.b.num != 0 for c in mono.values()):
            return False
        candidate[lam] = {mu: c.a for mu, c in mono.items()}
    if not _validate_degree(n, parts, candidate):
        log.warning("jack cache failed validation at degree %d; recomputing", n)
        return False
    for lam in parts:
        _jack_m[lam] = candidate[lam]
        _jack_p[lam] = records[lam]
    return True


def _validate_degree(n, parts, candidate) -> bool:
    # Monic triangularity plus orthogonality to every lower monomial pins J_lam down uniquely.
    gram = _monomial_gram(n, parts)
    zero = RationalFunction()
    for i, lam in enumerate(parts):
        vec = candidate[lam]
        if vec.get(lam) != RationalFunction(1):
            return False
        if any(not lam.dominates(mu) for mu in vec):
            return False
        for nu in parts[:i]:
            ip = zero
            for mu, c in vec.items():
                ip = ip + c * gram[mu, nu]
            if not ip.is_zero():
                return False
    return True


def iter_jacks(max_degree: int) -> Iterable[tuple[Partition, SymFunc]]:
    for n in range(max_degree + 1):
        for lam in partitions(n):
            yield lam, jack(lam)
