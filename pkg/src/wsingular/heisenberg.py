"""
sl(N) weight geometry and Fock modules of the rank N-1 Heisenberg algebra.

Fock vectors are stored as maps from creation monomials to coefficients.  A
monomial is a tuple of N-1 weakly decreasing tuples; the part m in slot k
stands for the creation operator a^k_{-m}.  Every field that acts on Fock
vectors (T, the weight-3 field, the Miura generators) is written as a sum of
normally ordered products of derivatives of the a^k, and its modes are
applied by one shared routine.
"""

from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .partition import Partition, partitions
from .scalar import SYMBOLIC, PointField, parse_scalar

__all__ = [
    "cartan",
    "cartan_inverse",
    "Weight",
    "bilinear",
    "conformal_weight",
    "w3_weight_unnormalized",
    "central_charge",
    "svweight",
    "weyl_group",
    "weyl_act",
    "shifted_weyl_act",
    "FockVector",
    "fock_basis",
    "parse_fock",
    "render_monomial",
    "FieldExpr",
    "annihilate",
    "create",
    "zero_mode",
    "apply_field_mode",
    "virasoro_field",
    "w3_field_unnormalized",
    "miura_fields",
    "virasoro_mode",
    "w3_mode_unnormalized",
    "miura_mode",
    "lambda_mode",
    "graded_basis_vectors",
]


# ---------------------------------------------------------------------------
# Cartan data


@lru_cache(maxsize=None)
def cartan(N: int) -> tuple[tuple[int, ...], ...]:
    r = N - 1
    return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)) for i in range(r))


@lru_cache(maxsize=None)
def cartan_inverse(N: int) -> tuple[tuple[Fraction, ...], ...]:
    """(A^{-1})_{ij} = min(i, j) - ij/N with 1-based i, j."""
    r = N - 1
    return tuple(
        tuple(Fraction(min(i, j)) - Fraction(i * j, N) for j in range(1, r + 1)) for i in range(1, r + 1)
    )


class Weight:
    """An element of the weight space of sl(N), stored by its Dynkin labels."""

    __slots__ = ("dynkin", "field")

    def __init__(self, dynkin: Sequence, field=SYMBOLIC):
        if len(dynkin) < 1:
            raise ValueError("weights need rank >= 1")
        self.field = field
        self.dynkin = tuple(field.coerce(x) for x in dynkin)

    @property
    def rank(self) -> int:
        return len(self.dynkin)

    @property
    def N(self) -> int:
        return len(self.dynkin) + 1

    @classmethod
    def zero(cls, N: int, field=SYMBOLIC) -> Weight:
        return cls([0] * (N - 1), field)

    @classmethod
    def fundamental(cls, N: int, i: int, field=SYMBOLIC) -> Weight:
        if not 1 <= i <= N - 1:
            raise ValueError("fundamental weight index out of range")
        return cls([1 if j == i else 0 for j in range(1, N)], field)

    @classmethod
    def simple_root(cls, N: int, i: int, field=SYMBOLIC) -> Weight:
        if not 1 <= i <= N - 1:
            raise ValueError("simple root index out of range")
        return cls(cartan(N)[i - 1], field)

    @classmethod
    def weyl_vector(cls, N: int, field=SYMBOLIC) -> Weight:
        return cls([1] * (N - 1), field)

    @classmethod
    def epsilon(cls, N: int, i: int, field=SYMBOLIC) -> Weight:
        """Weights of the defining representation: eps^i = omega_i - omega_{i-1}."""
        if not 1 <= i <= N:
            raise ValueError("epsilon index out of range")
        return cls([(1 if j == i else 0) - (1 if j == i - 1 else 0) for j in range(1, N)], field)

    def root_coordinates(self) -> tuple:
        """Coefficients c_j with self = sum_j c_j alpha_j (equivalently on the basis a^j)."""
        inv = cartan_inverse(self.N)
        zero = self.field.zero
        out = []
        for i in range(self.rank):
            acc = zero
            for j, x in enumerate(self.dynkin):
                if inv[i][j]:
                    acc = acc + x * inv[i][j]
            out.append(acc)
        return tuple(out)

    def specialize(self, field) -> Weight:
        return Weight([field.coerce(x) for x in self.dynkin], field)

    def _check(self, other: Weight):
        if not isinstance(other, Weight):
            raise TypeError("expected a Weight")
        if other.rank != self.rank:
            raise ValueError("rank mismatch")

    def __add__(self, other):
        self._check(other)
        return Weight([x + y for x, y in zip(self.dynkin, other.dynkin)], self.field)

    def __sub__(self, other):
        self._check(other)
        return Weight([x - y for x, y in zip(self.dynkin, other.dynkin)], self.field)

    def __neg__(self):
        return Weight([-x for x in self.dynkin], self.field)

    def __mul__(self, c):
        return Weight([x * c for x in self.dynkin], self.field)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Weight) and self.field == other.field and self.dynkin == other.dynkin

    def __hash__(self):
        return hash((self.field, self.dynkin))

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.dynkin) + ")"

    def __repr__(self):
        return f"Weight{self}"

    def to_json(self) -> dict:
        return {"dynkin": [str(x) for x in self.dynkin], "field": _field_json(self.field)}

    @classmethod
    def from_json(cls, data: dict) -> Weight:
        field = _field_from_json(data.get("field", "symbolic"))
        labels = [parse_scalar(x) for x in data["dynkin"]]
        return cls(labels, field)


def _field_json(field):
    if isinstance(field, PointField):
        return {"t": str(field.t0), "alpha_sign": field.alpha_sign}
    return "symbolic"


def _field_from_json(data):
    if data == "symbolic":
        return SYMBOLIC
    return PointField(Fraction(data["t"]), int(data["alpha_sign"]))


def bilinear(zeta: Weight, eta: Weight):
    """(zeta, eta) = sum_ij zeta_i eta_j (A^{-1})_ij."""
    zeta._check(eta)
    inv = cartan_inverse(zeta.N)
    acc = zeta.field.zero
    for i, x in enumerate(zeta.dynkin):
        if not x:
            continue
        for j, y in enumerate(eta.dynkin):
            if y:
                acc = acc + x * y * inv[i][j]
    return acc


def conformal_weight(zeta: Weight):
    """h = (zeta, zeta - 2 alpha_0 rho) / 2."""
    f = zeta.field
    rho = Weight.weyl_vector(zeta.N, f)
    return bilinear(zeta, zeta - rho * (2 * f.alpha0)) / 2


def w3_weight_unnormalized(zeta: Weight):
    """X = (zeta, w2 - w1)((zeta, w1) - alpha_0)((zeta, w2) - alpha_0); only defined for sl(3)."""
    if zeta.N != 3:
        raise ValueError("the weight-3 eigenvalue is only defined for N = 3")
    f = zeta.field
    w1, w2 = Weight.fundamental(3, 1, f), Weight.fundamental(3, 2, f)
    return bilinear(zeta, w2 - w1) * (bilinear(zeta, w1) - f.alpha0) * (bilinear(zeta, w2) - f.alpha0)


def central_charge(N: int, field=SYMBOLIC):
    r = N - 1
    return r - r * (r + 1) * (r + 2) * field.alpha0 * field.alpha0


def svweight(u: Sequence[int], v: Sequence[int], field=SYMBOLIC) -> Weight:
    """zeta_{u,v} = sum_i ((1 - u_i) alpha_+ + (1 - v_i) alpha_-) omega_i."""
    if len(u) != len(v):
        raise ValueError("u and v must have the same length")
    ap, am = field.alpha_plus, field.alpha_minus
    return Weight([ap * (1 - int(ui)) + am * (1 - int(vi)) for ui, vi in zip(u, v)], field)


# ---------------------------------------------------------------------------
# Weyl group


def _reflect(labels: tuple, i: int, A) -> tuple:
    li = labels[i]
    return tuple(x - li * A[j][i] for j, x in enumerate(labels))


@lru_cache(maxsize=None)
def weyl_group(N: int) -> tuple[tuple[int, ...], ...]:
    """One reduced word (1-based simple reflections, rightmost applied first) per element of S_N."""
    A = cartan(N)
    start = tuple(1 for _ in range(N - 1))
    seen = {start: ()}
    queue = deque([start])
    while queue:
        lab = queue.popleft()
        for i in range(N - 1):
            img = _reflect(lab, i, A)
            if img not in seen:
                seen[img] = (i + 1,) + seen[lab]
                queue.append(img)
    return tuple(sorted(seen.values(), key=lambda w: (len(w), w)))


def weyl_act(word: Sequence[int], zeta: Weight) -> Weight:
    A = cartan(zeta.N)
    labels = zeta.dynkin
    for i in reversed(word):
        labels = _reflect(labels, i - 1, A)
    return Weight(labels, zeta.field)


def shifted_weyl_act(word: Sequence[int], zeta: Weight) -> Weight:
    """sigma . zeta = sigma(zeta - alpha_0 rho) + alpha_0 rho."""
    shift = Weight.weyl_vector(zeta.N, zeta.field) * zeta.field.alpha0
    return weyl_act(word, zeta - shift) + shift


# ---------------------------------------------------------------------------
# Fock vectors


def _mono_grade(mono) -> int:
    return sum(sum(p) for p in mono)


def _mono_sort_key(mono):
    return (_mono_grade(mono), tuple(tuple(p) for p in mono))


def fock_basis(N: int, d: int) -> list[tuple]:
    """All creation monomials of grade d in rank N-1, in a fixed order."""
    r = N - 1
    out = []

    def sizes(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in sizes(total - first, slots - 1):
                yield (first,) + rest

    for comp in sizes(d, r):
        for parts in product(*[[tuple(reversed(p)) for p in partitions(n)] for n in comp]):
            out.append(tuple(tuple(sorted(p, reverse=True)) for p in parts))
    return sorted(set(out), key=_mono_sort_key)


def render_monomial(mono) -> str:
    """Text form of a monomial, e.g. 'a[1,-2]*a[2,-1]^2'."""
    pieces = []
    for k, parts in enumerate(mono, start=1):
        for m in sorted(set(parts), reverse=True):
            e = parts.count(m)
            pieces.append(f"a[{k},{-m}]" + (f"^{e}" if e > 1 else ""))
    return "*".join(pieces) if pieces else "1"


def _latex_mono(mono) -> str:
    pieces = []
    for k, parts in enumerate(mono, start=1):
        for m in sorted(set(parts), reverse=True):
            e = parts.count(m)
            op = f"a^{{{k}}}_{{{-m}}}"
            pieces.append(f"\\left({op}\\right)^{{{e}}}" if e > 1 else op)
    return " ".join(pieces)


class FockVector:
    """A finite combination of creation monomials applied to the highest-weight vector |weight>."""

    __slots__ = ("weight", "terms")

    def __init__(self, weight: Weight, terms: Mapping | None = None):
        self.weight = weight
        self.terms = {}
        if terms:
            f = weight.field
            for mono, c in terms.items():
                mono = tuple(tuple(sorted(p, reverse=True)) for p in mono)
                if len(mono) != weight.rank:
                    raise ValueError("monomial rank does not match the weight")
                c = f.coerce(c)
                if c:
                    self.terms[mono] = self.terms.get(mono, f.zero) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, weight, terms) -> FockVector:
        obj = object.__new__(cls)
        obj.weight = weight
        obj.terms = terms
        return obj

    @classmethod
    def highest(cls, weight: Weight, coeff=None) -> FockVector:
        c = weight.field.one if coeff is None else weight.field.coerce(coeff)
        return cls._raw(weight, {tuple(() for _ in range(weight.rank)): c} if c else {})

    @classmethod
    def zero(cls, weight: Weight) -> FockVector:
        return cls._raw(weight, {})

    @property
    def field(self):
        return self.weight.field

    @property
    def N(self) -> int:
        return self.weight.N

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def grades(self) -> set[int]:
        return {_mono_grade(m) for m in self.terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        g = self.grades()
        return len(g) <= 1 and (d is None or not g or g == {d})

    def coefficient(self, mono):
        mono = tuple(tuple(sorted(p, reverse=True)) for p in mono)
        return self.terms.get(mono, self.field.zero)

    def _check(self, other: FockVector):
        if not isinstance(other, FockVector):
            raise TypeError("expected a FockVector")
        if other.weight != self.weight:
            raise ValueError("Fock vectors live over different highest weights")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return FockVector._raw(self.weight, out)

    def __neg__(self):
        return FockVector._raw(self.weight, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = self.field.coerce(c)
        if not c:
            return FockVector.zero(self.weight)
        return FockVector._raw(self.weight, {m: x * c for m, x in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / self.field.coerce(c))

    def __eq__(self, other):
        if isinstance(other, FockVector):
            return self.weight == other.weight and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _mono_sort_key(kv[0]), reverse=True)

    def specialize(self, field) -> FockVector:
        w = self.weight.specialize(field)
        out = {}
        for m, c in self.terms.items():
            c = field.coerce(c)
            if c:
                out[m] = c
        return FockVector._raw(w, out)

    def map_coefficients(self, fn, weight: Weight | None = None) -> FockVector:
        out = {}
        for m, c in self.terms.items():
            c = fn(c)
            if c:
                out[m] = c
        return FockVector._raw(self.weight if weight is None else weight, out)

    def __str__(self):
        if not self.terms:
            return "0"
        return "\n".join(f"{render_monomial(m)} : {c}" for m, c in self.sorted_items())

    def __repr__(self):
        return f"FockVector({len(self.terms)} terms over {self.weight})"

    def latex(self, ket: str = "\\theta") -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_items():
            body = _latex_mono(m)
            coef = c.latex()
            if coef == "1":
                term = body or "1"
            elif coef == "-1":
                term = "-" + (body or "1")
            else:
                if " + " in coef or " - " in coef.lstrip("-"):
                    coef = f"\\left({coef}\\right)"
                term = f"{coef}\\, {body}" if body else coef
            out.append(term)
        text = out[0]
        for term in out[1:]:
            text += " - " + term[1:] if term.startswith("-") else " + " + term
        return f"\\left({text}\\right)\\ket{{{ket}}}" if len(out) > 1 else f"{text}\\ket{{{ket}}}"

    def to_json(self) -> dict:
        return {
            "weight": self.weight.to_json(),
            "terms": [[[list(p) for p in m], str(c)] for m, c in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> FockVector:
        w = Weight.from_json(data["weight"])
        terms = {}
        for mono, c in data["terms"]:
            terms[tuple(tuple(p) for p in mono)] = w.field.coerce(parse_scalar(c))
        return cls(w, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def parse_fock(text: str, weight: Weight) -> FockVector:
    """Inverse of ``str(FockVector)`` given the highest weight."""
    terms: dict = {}
    if text.strip() == "0":
        return FockVector.zero(weight)
    for line in text.strip().splitlines():
        mono_text, _, coeff_text = line.partition(" : ")
        if not _:
            raise ValueError(f"malformed Fock term: {line!r}")
        parts = [[] for _ in range(weight.rank)]
        if mono_text.strip() != "1":
            for factor in mono_text.strip().split("*"):
                head, _, exp = factor.partition("^")
                if not (head.startswith("a[") and head.endswith("]")):
                    raise ValueError(f"malformed Fock monomial: {factor!r}")
                k, m = (int(x) for x in head[2:-1].split(","))
                if not 1 <= k <= weight.rank or m >= 0:
                    raise ValueError(f"not a creation operator: {factor!r}")
                parts[k - 1].extend([-m] * (int(exp) if exp else 1))
        mono = tuple(tuple(sorted(p, reverse=True)) for p in parts)
        terms[mono] = weight.field.coerce(parse_scalar(coeff_text))
    return FockVector(weight, terms)


# ---------------------------------------------------------------------------
# single Heisenberg modes


def _remove_part(mono: tuple, k: int, m: int) -> tuple:
    parts = list(mono[k])
    parts.remove(m)
    return mono[:k] + (tuple(parts),) + mono[k + 1 :]


def _insert_part(mono: tuple, k: int, m: int) -> tuple:
    parts = sorted(mono[k] + (m,), reverse=True)
    return mono[:k] + (tuple(parts),) + mono[k + 1 :]


def annihilate(k: int, m: int, v: FockVector) -> FockVector:
    """Apply a^k_m, m > 0."""
    if m <= 0:
        raise ValueError("annihilation modes need m > 0")
    if not 1 <= k <= v.weight.rank:
        raise ValueError("colour out of range")
    A = cartan(v.N)
    out: dict = {}
    for mono, c in v.terms.items():
        for j, parts in enumerate(mono):
            a = A[k - 1][j]
            mult = parts.count(m)
            if a and mult:
                key = _remove_part(mono, j, m)
                val = c * (m * a * mult)
                prev = out.get(key)
                out[key] = val if prev is None else prev + val
    return FockVector._raw(v.weight, {x: c for x, c in out.items() if c})


def create(k: int, m: int, v: FockVector) -> FockVector:
    """Apply a^k_{-m}, m > 0."""
    if m <= 0:
        raise ValueError("creation modes need m > 0")
    if not 1 <= k <= v.weight.rank:
        raise ValueError("colour out of range")
    return FockVector._raw(v.weight, {_insert_part(mono, k - 1, m): c for mono, c in v.terms.items()})


def zero_mode(k: int, v: FockVector) -> FockVector:
    """a^k_0 acts by the k-th Dynkin label of the highest weight."""
    return v * v.weight.dynkin[k - 1]


# ---------------------------------------------------------------------------
# normally ordered field expressions


class FieldExpr:
    """
    A sum of normally ordered products c * :d^{d1} a^{c1} ... d^{dk} a^{ck}:.

    Keys are sorted tuples of (colour, derivative order) with 0-based colours;
    free bosons commute inside normal ordering so the order is immaterial.
    """

    __slots__ = ("terms", "field", "_key")

    def __init__(self, terms: Mapping, field=SYMBOLIC):
        self.field = field
        self.terms = {}
        for key, c in terms.items():
            key = tuple(sorted(key))
            prev = self.terms.get(key)
            self.terms[key] = c if prev is None else prev + c
        self.terms = {k: field.coerce(c) for k, c in self.terms.items() if c}
        self._key = None

    @classmethod
    def linear(cls, coeffs: Sequence, deriv: int = 0, field=SYMBOLIC) -> FieldExpr:
        return cls({((c, deriv),): x for c, x in enumerate(coeffs) if x}, field)

    @classmethod
    def constant(cls, c, field=SYMBOLIC) -> FieldExpr:
        return cls({(): c}, field)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return FieldExpr(out, self.field)

    def __neg__(self):
        return FieldExpr({k: -c for k, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> FieldExpr:
        return FieldExpr({k: x * c for k, x in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, FieldExpr):
            return self.scale(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(sorted(k1 + k2))
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return FieldExpr(out, self.field)

    __rmul__ = scale

    def derivative(self) -> FieldExpr:
        """Leibniz rule on each normally ordered product."""
        out: dict = {}
        for key, c in self.terms.items():
            for i, (col, d) in enumerate(key):
                k = tuple(sorted(key[:i] + ((col, d + 1),) + key[i + 1 :]))
                out[k] = out[k] + c if k in out else c
        return FieldExpr(out, self.field)

    def cache_key(self):
        if self._key is None:
            self._key = (self.field, tuple(sorted((k, c) for k, c in self.terms.items())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, FieldExpr) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(self.cache_key())


def _deriv_factor(d: int, m: int) -> int:
    """Mode coefficient of d^d a(z): prod_{l=1..d} (-m - l)."""
    out = 1
    for l in range(1, d + 1):
        out *= -m - l
    return out


def _compositions(total: int, k: int):
    if k == 1:
        yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=200_000)
def _raw_image(factors: tuple, n: int, mono: tuple, N: int) -> tuple:
    """
    Mode n of one normally ordered product on one monomial, before the zero
    modes are evaluated.  Returns ((monomial, zero-mode colours), integer) pairs.
    """
    A = cartan(N)
    acc: dict = {}

    def emit(m, zeros, c):
        key = (m, zeros)
        acc[key] = acc.get(key, 0) + c

    def rec(i, m, coef, ann_total, zeros, creators):
        if i == len(factors):
            K = ann_total - n
            k = len(creators)
            if k == 0:
                if K == 0:
                    emit(m, tuple(sorted(zeros)), coef)
                return
            if K < k:
                return
            for comp in _compositions(K, k):
                c = coef
                out = m
                for (col, d), q in zip(creators, comp):
                    c *= _deriv_factor(d, -q)
                    if not c:
                        break
                    out = _insert_part(out, col, q)
                if c:
                    emit(out, tuple(sorted(zeros)), c)
            return
        col, d = factors[i]
        f0 = _deriv_factor(d, 0)
        if f0:
            rec(i + 1, m, coef * f0, ann_total, zeros + (col,), creators)
        rec(i + 1, m, coef, ann_total, zeros, creators + ((col, d),))
        for j, parts in enumerate(m):
            a = A[col][j]
            if not a:
                continue
            for part in set(parts):
                fac = part * a * parts.count(part) * _deriv_factor(d, part)
                if fac:
                    rec(i + 1, _remove_part(m, j, part), coef * fac, ann_total + part, zeros, creators)

    rec(0, mono, 1, 0, (), ())
    return tuple((k, c) for k, c in acc.items() if c)


_image_cache: dict = {}


def _image(expr: FieldExpr, n: int, weight: Weight, mono: tuple) -> dict:
    key = (expr.cache_key(), n, weight, mono)
    hit = _image_cache.get(key)
    if hit is not None:
        return hit
    labels = weight.dynkin
    out: dict = {}
    label_products: dict = {}
    for factors, coeff in expr.terms.items():
        for (target, zeros), c in _raw_image(factors, n, mono, weight.N):
            lp = label_products.get(zeros)
            if lp is None:
                lp = weight.field.one
                for z in zeros:
                    lp = lp * labels[z]
                label_products[zeros] = lp
            if not lp:
                continue
            val = coeff * lp * c
            prev = out.get(target)
            out[target] = val if prev is None else prev + val
    out = {k: c for k, c in out.items() if c}
    if len(_image_cache) > 500_000:
        _image_cache.clear()
    _image_cache[key] = out
    return out


def apply_field_mode(expr: FieldExpr, n: int, v: FockVector) -> FockVector:
    """Apply the n-th mode of a field of any conformal weight to v."""
    if expr.field != v.field:
        raise ValueError("field expression and vector use different coefficient fields")
    out: dict = {}
    for mono, c in v.terms.items():
        for target, x in _image(expr, n, v.weight, mono).items():
            val = c * x
            prev = out.get(target)
            out[target] = val if prev is None else prev + val
    return FockVector._raw(v.weight, {k: c for k, c in out.items() if c})


# ---------------------------------------------------------------------------
# T, the weight-3 field and the Miura generators


@lru_cache(maxsize=None)
def virasoro_field(N: int, field=SYMBOLIC) -> FieldExpr:
    """T = 1/2 sum_ij (A^{-1})_ij :a^i a^j: + alpha_0 sum_j (sum_i (A^{-1})_ij) d a^j."""
    inv = cartan_inverse(N)
    r = N - 1
    terms: dict = {}
    for i in range(r):
        for j in range(r):
            key = tuple(sorted(((i, 0), (j, 0))))
            terms[key] = terms.get(key, 0) + inv[i][j] / 2
    a0 = field.alpha0
    for j in range(r):
        terms[((j, 1),)] = a0 * sum(inv[i][j] for i in range(r))
    return FieldExpr(terms, field)


@lru_cache(maxsize=None)
def w3_field_unnormalized(field=SYMBOLIC) -> FieldExpr:
    """
    2:(a2 - a1)(a1 + 2a2)(2a1 + a2): + 9 alpha_0 (:da2 (a1 + 2a2): - :da1 (2a1 + a2):)
    + 9 alpha_0^2 (d^2 a2 - d^2 a1).
    """
    lin = lambda c1, c2, d=0: FieldExpr.linear([c1, c2], d, field)  # noqa: E731
    a0 = field.alpha0
    cubic = (lin(-1, 1) * lin(1, 2) * lin(2, 1)).scale(2)
    quad = (lin(0, 1, 1) * lin(1, 2) - lin(1, 0, 1) * lin(2, 1)).scale(9 * a0)
    linear = lin(-1, 1, 2).scale(9 * a0 * a0)
    return cubic + quad + linear


# The product is expanded with the eps^N factor innermost.  Expanding with eps^1
# innermost instead gives the same generators with alpha_0 replaced by -alpha_0.
MIURA_REVERSED = True


@lru_cache(maxsize=None)
def miura_fields(N: int, field=SYMBOLIC, reversed_order: bool | None = None) -> dict[int, FieldExpr]:
    """
    U^k for k = 2..N from :(a0 d - eps^{i_1}) ... (a0 d - eps^{i_N}):, collected as
    -sum_k U_k (a0 d)^{N-k}.  Each factor acts on everything to its right; the
    alpha_0 attached to every derivative that passes through to the right is
    absorbed into (a0 d)^q.
    """
    if N < 2:
        raise ValueError("the Miura transform needs N >= 2")
    if reversed_order is None:
        reversed_order = MIURA_REVERSED
    a0 = field.alpha0
    eps = [FieldExpr.linear(Weight.epsilon(N, i, field).root_coordinates(), 0, field) for i in range(1, N + 1)]
    order = list(range(N))
    if reversed_order:
        order.reverse()
    # operator = sum_q F_q (a0 d)^q; apply factors from the right end inwards
    op: dict[int, FieldExpr] = {0: FieldExpr.constant(1, field)}
    for i in reversed(order):
        new: dict[int, FieldExpr] = {}

        def add(q, f):
            new[q] = new[q] + f if q in new else f

        for q, F in op.items():
            add(q + 1, F)
            add(q, F.derivative().scale(a0))
            add(q, -(eps[i] * F))
        op = {q: F for q, F in new.items() if F.terms}
    return {k: -op.get(N - k, FieldExpr({}, field)) for k in range(2, N + 1)}


def virasoro_mode(n: int, v: FockVector) -> FockVector:
    return apply_field_mode(virasoro_field(v.N, v.field), n, v)


def w3_mode_unnormalized(n: int, v: FockVector) -> FockVector:
    if v.N != 3:
        raise ValueError("the weight-3 field is only defined for N = 3")
    return apply_field_mode(w3_field_unnormalized(v.field), n, v)


def miura_mode(k: int, n: int, v: FockVector) -> FockVector:
    if not 2 <= k <= v.N:
        raise ValueError(f"Miura index k must lie in 2..{v.N}")
    return apply_field_mode(miura_fields(v.N, v.field)[k], n, v)


def lambda_mode(n: int, v: FockVector) -> FockVector:
    """
    Lambda_n = sum_{p <= -2} L_p L_{n-p} + sum_{p >= -1} L_{n-p} L_p - (3/10)(n+2)(n+3) L_n,
    truncated to the modes that can act nontrivially on v.
    """
    out = FockVector.zero(v.weight)
    if not v:
        return out
    g = max(v.grades())
    for p in range(n - g, -1):
        inner = virasoro_mode(n - p, v)
        if inner:
            out = out + virasoro_mode(p, inner)
    for p in range(-1, g + 1):
        inner = virasoro_mode(p, v)
        if inner:
            out = out + virasoro_mode(n - p, inner)
    coeff = Fraction(3, 10) * (n + 2) * (n + 3)
    if coeff:
        out = out - virasoro_mode(n, v) * coeff
    return out


def graded_basis_vectors(weight: Weight, max_grade: int) -> Iterable[FockVector]:
    for d in range(max_grade + 1):
        for mono in fock_basis(weight.N, d):
            yield FockVector._raw(weight, {mono: weight.field.one})
