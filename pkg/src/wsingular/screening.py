"""
Closed-form singular vectors: Jack and skew-Jack expansions pushed into the
Fock module by rho_+, where p_m(y^k) becomes a^k_{-m} / alpha_+.
"""

from __future__ import annotations

import heapq
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .heisenberg import FockVector, Weight, svweight
from .partition import Partition, rectangle
from .scalar import SYMBOLIC, PointField, Scalar
from .symfunc import SymFunc, integral_norm_c, jack, skew_jack

__all__ = [
    "ScreeningSpec",
    "parse_spec",
    "rho_plus",
    "singular_vector",
    "singular_vector_minus",
    "summation_indices",
    "example3_enumerate",
]


@dataclass(frozen=True)
class ScreeningSpec:
    """
    Data of one screening map.  For sign '+' the r_k >= 0 count screening
    fields and the s_k <= 0 set the rectangles; for sign '-' the roles of r
    and s are exchanged.  ``t`` is None for the generic parameter.
    """

    N: int
    r: tuple
    s: tuple
    sign: str = "+"
    t: Fraction | None = None
    alpha_sign: int = dc_field(default=1, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if self.t is not None:
            object.__setattr__(self, "t", Fraction(self.t))
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if len(self.r) != self.N - 1 or len(self.s) != self.N - 1:
            raise ValueError(f"r and s need N-1 = {self.N - 1} entries")
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        if self.alpha_sign not in (1, -1):
            raise ValueError("alpha_sign must be +1 or -1")
        if self.t is not None and self.t <= 0:
            raise ValueError("parameter outside C∖Q_{≤0}")

    @property
    def grade(self) -> int:
        return -sum(a * b for a, b in zip(self.r, self.s))

    @property
    def field(self):
        return SYMBOLIC if self.t is None else PointField(self.t, self.alpha_sign)

    def in_range(self) -> bool:
        if self.sign == "+":
            return all(x >= 0 for x in self.r) and all(x <= 0 for x in self.s)
        return all(x <= 0 for x in self.r) and all(x >= 0 for x in self.s)

    def _uv(self, source: bool):
        r, s = self.r, self.s
        if self.sign == "+":
            counts, other = r, s
        else:
            counts, other = s, r
        n = len(counts)
        if source:
            u = [counts[i] - counts[i + 1] for i in range(n - 1)] + [counts[-1]]
        else:
            u = [-counts[0]] + [counts[i - 1] - counts[i] for i in range(1, n)]
        return (u, list(other)) if self.sign == "+" else (list(other), u)

    def source_weight(self, field=None) -> Weight:
        u, v = self._uv(True)
        return svweight(u, v, self.field if field is None else field)

    def target_weight(self, field=None) -> Weight:
        u, v = self._uv(False)
        return svweight(u, v, self.field if field is None else field)

    def with_t(self, t, alpha_sign: int = 1) -> ScreeningSpec:
        return ScreeningSpec(self.N, self.r, self.s, self.sign, t, alpha_sign)

    def __str__(self):
        t = "symbolic" if self.t is None else str(self.t)
        text = f"N={self.N} r={','.join(map(str, self.r))} s={','.join(map(str, self.s))} t={t} sign={self.sign}"
        if self.alpha_sign != 1:
            text += " alpha=-"
        return text


_SPEC_FIELD = re.compile(r"(\w+)=(\S+)")


def parse_spec(text: str) -> ScreeningSpec:
    """Parse 'N=3 r=1,1 s=-1,-1 t=4/5 sign=+'."""
    fields = dict(_SPEC_FIELD.findall(text))
    try:
        N = int(fields["N"])
        r = [int(x) for x in fields["r"].split(",")]
        s = [int(x) for x in fields["s"].split(",")]
    except (KeyError, ValueError):
        raise ValueError(f"malformed screening spec: {text!r}") from None
    t_text = fields.get("t", "symbolic")
    t = None if t_text == "symbolic" else Fraction(t_text)
    alpha_sign = -1 if fields.get("alpha") == "-" else 1
    return ScreeningSpec(N, r, s, fields.get("sign", "+"), t, alpha_sign)


# ---------------------------------------------------------------------------


def _rho_terms(fs: Sequence[SymFunc], field) -> dict:
    inv_alpha = 1 / field.alpha_plus
    acc: dict = {(): field.one}
    for f in fs:
        nxt: dict = {}
        for mono, c in acc.items():
            for lam, d in f.coeffs.items():
                key = mono + (tuple(lam),)
                val = c * field.coerce(d)
                prev = nxt.get(key)
                nxt[key] = val if prev is None else prev + val
        acc = nxt
    out = {}
    for mono, c in acc.items():
        parts = sum(len(p) for p in mono)
        c = c * inv_alpha**parts
        if c:
            out[mono] = c
    return out


def rho_plus(fs: Sequence[SymFunc], target: Weight) -> FockVector:
    """rho_+(f_1(y^1) ... f_{N-1}(y^{N-1})) |target>."""
    if len(fs) != target.rank:
        raise ValueError("need one symmetric function per colour")
    return FockVector._raw(target, _rho_terms(fs, target.field))


def _check_plus(r, s):
    if any(x < 0 for x in r) or any(x > 0 for x in s):
        raise ValueError("spec out of validated range")


def _contained_in(mu: Partition, max_len: int) -> Iterator[Partition]:
    """Every partition inside the diagram of mu with at most max_len rows (lexicographic)."""
    rows = min(len(mu), max_len)

    def rec(prefix, bound):
        yield Partition(prefix)
        i = len(prefix)
        if i == rows:
            return
        for p in range(1, min(bound, mu[i]) + 1):
            yield from rec(prefix + (p,), p)

    yield from rec((), mu[0] if mu else 0)


def summation_indices(r: Sequence[int], s: Sequence[int]) -> list[tuple[Partition, ...]]:
    """
    The tuples (nu_2, ..., nu_{N-1}) that contribute: nu_{N-1} inside the last
    rectangle, nu_k inside nu_{k+1} + rect_k, and l(nu_{k+1}) <= r_k throughout.
    """
    n = len(r)
    rects = [rectangle(-s[k], r[k]) for k in range(n)]
    if n == 1:
        return [()]
    out = []

    def rec(k, nu_next, acc):
        # choose nu_k (1-based colour index k) given nu_{k+1}
        if k == 1:
            out.append(tuple(reversed(acc)))
            return
        if k == n:
            outer = rects[n - 1]
        else:
            outer = nu_next.add_rectangle(-s[k - 1], r[k - 1])
        for nu in _contained_in(outer, r[k - 2]):
            rec(k - 1, nu, acc + [nu])

    rec(n, None, [])
    return out


def _summand(r, s, nus) -> dict:
    n = len(r)
    rect = [rectangle(-s[k], r[k]) for k in range(n)]
    coef = Scalar(1)
    fs = []
    if n == 1:
        fs.append(jack(rect[0]))
    else:
        # nus[i] is nu_{i+2}
        for k in range(1, n):  # colours 1..n-1 carry a c-factor
            nu_next = nus[k - 1]
            coef = coef * integral_norm_c(nu_next.add_rectangle(-s[k - 1], r[k - 1]), r[k - 1])
        fs.append(jack(nus[0].add_rectangle(-s[0], r[0])))
        for k in range(2, n):
            fs.append(skew_jack(nus[k - 1].add_rectangle(-s[k - 1], r[k - 1]), nus[k - 2]))
        fs.append(skew_jack(rect[n - 1], nus[n - 2]))
    if any(not f for f in fs):
        return {}
    terms = _rho_terms(fs, SYMBOLIC)
    return {m: c * coef for m, c in terms.items()}


def _plus_terms(r, s, jobs: int = 1) -> dict:
    _check_plus(r, s)
    index = summation_indices(r, s)
    if jobs > 1 and len(index) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_summand, [r] * len(index), [s] * len(index), index))
    else:
        parts = [_summand(r, s, nus) for nus in index]
    acc: dict = {}
    for part in parts:
        for m, c in part.items():
            prev = acc.get(m)
            acc[m] = c if prev is None else prev + c
    return {m: c for m, c in acc.items() if c}


def _finish(terms: dict, spec: ScreeningSpec) -> FockVector:
    target = spec.target_weight(SYMBOLIC)
    v = FockVector._raw(target, terms)
    if spec.t is not None:
        v = v.specialize(spec.field)
    return v


def singular_vector(spec: ScreeningSpec, jobs: int = 1) -> FockVector:
    """
    The screening image of |source> in the Fock module over the target weight.

    Symbolic specs give coefficients in Q(t)[alpha]; specs with a rational t
    are computed symbolically and then specialized.
    """
    if spec.sign == "-":
        return singular_vector_minus(spec, jobs)
    if not spec.in_range():
        raise ValueError("spec out of validated range")
    return _finish(_plus_terms(spec.r, spec.s, jobs), spec)


def singular_vector_minus(spec: ScreeningSpec, jobs: int = 1) -> FockVector:
    """The alpha_- family: run the alpha_+ formula with r and s exchanged, then swap alpha_+ and alpha_-."""
    if spec.sign != "-":
        raise ValueError("expected a spec with sign '-'")
    if not spec.in_range():
        raise ValueError("spec out of validated range")
    terms = _plus_terms(spec.s, spec.r, jobs)
    swapped = {m: c.swap_alphas() for m, c in terms.items()}
    return _finish(swapped, spec)


# ---------------------------------------------------------------------------


def example3_enumerate(u: int, v: int, count: int | None = None) -> Iterator[ScreeningSpec]:
    """
    Specs with vanishing target weight at t = u/v:
    r = (m u - 1, n u - 2), s = (1 - m v, 1 - (n - m) v) for n > m > 0,
    in increasing grade (ties by (m, n)).
    """
    u, v = int(u), int(v)
    if u <= 0 or v <= 0:
        raise ValueError("u and v must be positive")
    if gcd(u, v) != 1:
        raise ValueError("u and v must be coprime")
    t = Fraction(u, v)

    def make(m, n):
        return ScreeningSpec(3, (m * u - 1, n * u - 2), (1 - m * v, 1 - (n - m) * v), "+", t)

    heap = [(make(1, 2).grade, 1, 2)]
    produced = 0
    while heap and (count is None or produced < count):
        _, m, n = heapq.heappop(heap)
        yield make(m, n)
        produced += 1
        heapq.heappush(heap, (make(m, n + 1).grade, m, n + 1))
        if n == m + 1:
            heapq.heappush(heap, (make(m + 1, m + 2).grade, m + 1, m + 2))
