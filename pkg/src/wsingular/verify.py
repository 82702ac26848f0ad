"""
Independent checks on singular vectors: direct annihilation by positive
modes, eigenvalue checks, and an exact kernel computation on a whole graded
piece of a Fock module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from . import heisenberg as _heisenberg
from .heisenberg import (
    FockVector,
    Weight,
    central_charge,
    conformal_weight,
    fock_basis,
    graded_basis_vectors,
    miura_mode,
    virasoro_mode,
    w3_mode_unnormalized,
    w3_weight_unnormalized,
)
from .scalar import SYMBOLIC, Scalar
from .screening import ScreeningSpec

__all__ = [
    "Check",
    "VerificationReport",
    "check_singular",
    "default_generators",
    "brute_force_kernel",
    "kernel_certificate",
    "gauss_jordan_kernel",
    "check_mode_algebra",
    "ww_scale",
]


@dataclass
class Check:
    label: str
    passed: bool
    residual: FockVector | None = None

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "passed": self.passed,
            "residual_terms": 0 if self.residual is None else len(self.residual),
        }


@dataclass
class VerificationReport:
    spec: str
    grade: int
    checks: list = dc_field(default_factory=list)
    oracle_dimension: int | None = None
    oracle_match: bool | None = None
    certificate: list | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return False
        if not all(c.passed for c in self.checks):
            return False
        return self.oracle_match is not False

    def add(self, label, residual: FockVector | None, passed: bool | None = None):
        ok = (residual is None or residual.is_zero()) if passed is None else passed
        self.checks.append(Check(label, ok, None if ok else residual))

    def to_json(self) -> dict:
        return {
            "spec": self.spec,
            "grade": self.grade,
            "passed": self.passed,
            "error": self.error,
            "checks": [c.to_json() for c in self.checks],
            "oracle_dimension": self.oracle_dimension,
            "oracle_match": self.oracle_match,
            "certificate": None if self.certificate is None else [str(c) for c in self.certificate],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [f"spec: {self.spec}", f"grade: {self.grade}"]
        for c in self.checks:
            extra = "" if c.passed else f"  (residual with {len(c.residual or ())} terms)"
            lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.label}{extra}")
        if self.oracle_dimension is not None:
            lines.append(f"  kernel dimension: {self.oracle_dimension}")
            lines.append(f"  {'PASS' if self.oracle_match else 'FAIL'}  vector lies in the kernel")
        if self.error:
            lines.append(f"  error: {self.error}")
        lines.append("verified" if self.passed else "NOT verified")
        return "\n".join(lines)


def check_singular(
    v: FockVector,
    spec: ScreeningSpec | None = None,
    *,
    source_weight: Weight | None = None,
    grade: int | None = None,
) -> VerificationReport:
    """
    Check that v is a singular vector of grade d whose eigenvalues are those of
    the source weight: L_n v = 0 for 1 <= n <= d, the weight-3 modes (N = 3)
    or the Miura modes U^k_1, U^k_2 (N >= 4) vanish, and the zero modes act
    by the eigenvalues of the source.
    """
    f = v.field
    if spec is not None:
        grade = spec.grade if grade is None else grade
        if source_weight is None:
            source_weight = spec.source_weight(f)
    if grade is None or source_weight is None:
        raise ValueError("need a spec or an explicit grade and source weight")
    if v.grades() and v.grades() != {grade}:
        raise ValueError("grade mismatch")
    N = v.N
    report = VerificationReport(str(spec) if spec is not None else f"N={N} grade={grade}", grade)
    if v.is_zero():
        report.error = "zero input"
    if spec is not None:
        report.add("target weight", None, passed=v.weight == spec.target_weight(f))
    for n in range(1, grade + 1):
        report.add(f"L_{n}", virasoro_mode(n, v))
    if N == 3:
        for n in range(1, grade + 1):
            report.add(f"W_{n}", w3_mode_unnormalized(n, v))
    elif N >= 4:
        for k in range(3, N + 1):
            for n in (1, 2):
                report.add(f"U{k}_{n}", miura_mode(k, n, v))
    h = conformal_weight(source_weight)
    report.add("L_0 = h", virasoro_mode(0, v) - v * h)
    if N == 3:
        x = w3_weight_unnormalized(source_weight)
        report.add("W_0 = 54 X", w3_mode_unnormalized(0, v) - v * (54 * x))
    return report


# ---------------------------------------------------------------------------
# exact kernels


def gauss_jordan_kernel(rows: Sequence[dict], ncols: int, zero) -> list[list]:
    """
    Kernel basis of a sparse matrix given as row dicts {column: entry}.

    Plain Gauss-Jordan over the exact field; entries only need +, -, *, /
    and truthiness.  Each basis vector has a 1 in one free column and 0 in
    the other free columns.
    """
    pivots: dict[int, dict] = {}  # pivot column -> reduced row (pivot entry 1)
    for row in rows:
        row = {j: x for j, x in row.items() if x}
        # eliminate existing pivots
        for pc, prow in pivots.items():
            x = row.get(pc)
            if x:
                for j, y in prow.items():
                    val = row.get(j, zero) - x * y
                    if val:
                        row[j] = val
                    else:
                        row.pop(j, None)
        if not row:
            continue
        pc = min(row, key=lambda j: (_entry_size(row[j]), j))
        inv = 1 / row[pc]
        row = {j: x * inv for j, x in row.items()}
        for other_pc, prow in pivots.items():
            x = prow.get(pc)
            if x:
                for j, y in row.items():
                    val = prow.get(j, zero) - x * y
                    if val:
                        prow[j] = val
                    else:
                        prow.pop(j, None)
        pivots[pc] = row
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = zero + 1
        for pc, prow in pivots.items():
            x = prow.get(fc)
            if x:
                vec[pc] = -x
        basis.append(vec)
    return basis


def _entry_size(x) -> int:
    if isinstance(x, Scalar):
        return len(str(x))
    return 0


def default_generators(N: int) -> list[tuple[str, Callable]]:
    gens = [("L_1", lambda v: virasoro_mode(1, v)), ("L_2", lambda v: virasoro_mode(2, v))]
    if N == 3:
        gens += [("W_1", lambda v: w3_mode_unnormalized(1, v)), ("W_2", lambda v: w3_mode_unnormalized(2, v))]
    elif N >= 4:
        for k in range(3, N + 1):
            gens += [
                (f"U{k}_1", lambda v, k=k: miura_mode(k, 1, v)),
                (f"U{k}_2", lambda v, k=k: miura_mode(k, 2, v)),
            ]
    return gens


def brute_force_kernel(theta: Weight, d: int, generators=None) -> list[FockVector]:
    """Exact basis of the common kernel of the generators on the grade-d piece of F_theta."""
    if d < 1:
        raise ValueError("grade must be at least 1")
    N = theta.N
    gens = default_generators(N) if generators is None else generators
    basis = fock_basis(N, d)
    f = theta.field
    rows: dict = {}
    for j, mono in enumerate(basis):
        e = FockVector._raw(theta, {mono: f.one})
        for gi, (_, g) in enumerate(gens):
            for m, c in g(e).terms.items():
                rows.setdefault((gi, m), {})[j] = c
    ordered = [rows[k] for k in sorted(rows, key=lambda k: (k[0], sorted(k[1])))]
    kernel = gauss_jordan_kernel(ordered, len(basis), f.zero)
    return [FockVector._raw(theta, {basis[j]: x for j, x in enumerate(vec) if x}) for vec in kernel]


def kernel_certificate(v: FockVector, kernel: Sequence[FockVector]):
    """
    Coefficients c with v = sum c_i kernel_i, or None if v is outside the span.

    The kernel basis is in reduced form: kernel_i is the only basis vector
    touching its free monomial, so c_i is read off there and the identity is
    then checked exactly.
    """
    f = v.field
    coeffs = []
    total = FockVector.zero(v.weight)
    for k in kernel:
        free = next(m for m, c in k.terms.items() if c == f.one and _is_free(m, k, kernel))
        c = v.coefficient(free)
        coeffs.append(c)
        if c:
            total = total + k * c
    return coeffs if (v - total).is_zero() else None


def _is_free(mono, k, kernel) -> bool:
    return all(other is k or mono not in other.terms for other in kernel)


# ---------------------------------------------------------------------------
# mode algebra


def ww_scale(field=SYMBOLIC):
    """Square of the factor relating the rescaled weight-3 field to the conventional one: 972 / beta."""
    a0 = field.alpha0
    return 486 * (4 - 15 * a0 * a0)


def _ww_rhs(m, n, v, lam=None):
    f = v.field
    lam = _heisenberg.lambda_mode if lam is None else lam
    K = ww_scale(f)
    out = virasoro_mode(m + n, v) * (
        K * (m - n) * (Fraction(1, 15) * (m + n + 3) * (m + n + 2) - Fraction(1, 6) * (m + 2) * (n + 2))
    )
    out = out + lam(m + n, v) * (972 * (m - n))
    if m + n == 0:
        out = out + v * (K * central_charge(3, f) * Fraction(m * (m * m - 1) * (m * m - 4), 360))
    return out


def default_test_weight(field=SYMBOLIC) -> Weight:
    a = field.alpha
    return Weight([Fraction(2, 7) + a * Fraction(1, 3), -1 + a * Fraction(5, 2)], field)


def check_mode_algebra(
    max_grade: int = 3,
    weight: Weight | None = None,
    mode_range: Sequence[int] = (-2, -1, 0, 1, 2),
    ww_grade: int = 1,
    lam=None,
) -> list[tuple[str, bool]]:
    """
    Operator identities of the N = 3 mode algebra on all basis vectors up to max_grade:
    the Virasoro relations, [L_m, W_n] = (2m - n) W_{m+n}, and [W_m, W_n]
    (the latter up to ww_grade, with the rescaled normalization of the weight-3 field).
    """
    weight = default_test_weight() if weight is None else weight
    f = weight.field
    c = central_charge(3, f)
    vecs = list(graded_basis_vectors(weight, max_grade))
    L, W = virasoro_mode, w3_mode_unnormalized
    results = []
    for m in mode_range:
        for n in mode_range:
            ok = True
            for v in vecs:
                lhs = L(m, L(n, v)) - L(n, L(m, v))
                rhs = L(m + n, v) * (m - n)
                if m + n == 0:
                    rhs = rhs + v * (c * Fraction(m * (m * m - 1), 12))
                if lhs != rhs:
                    ok = False
                    break
            results.append((f"[L_{m}, L_{n}]", ok))
    for m in mode_range:
        for n in mode_range:
            ok = all(L(m, W(n, v)) - W(n, L(m, v)) == W(m + n, v) * (2 * m - n) for v in vecs)
            results.append((f"[L_{m}, W_{n}]", ok))
    small = [v for v in vecs if max(v.grades()) <= ww_grade]
    for m in mode_range:
        for n in mode_range:
            if m <= n:
                continue
            ok = all(W(m, W(n, v)) - W(n, W(m, v)) == _ww_rhs(m, n, v, lam) for v in small)
            results.append((f"[W_{m}, W_{n}]", ok))
    return results
