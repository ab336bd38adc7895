"""Graded Lie algebras presented by homogeneous structure constants.

An algebra is a finite homogeneous basis with degrees in a group backend and
a sparse table of exact rational structure constants stored for i < j only;
antisymmetry is representational and the diagonal is identically zero.
Validation, the bilinear bracket, the (graded) center, inner derivations and
the graded-Lie-subspace check on endomorphism spans all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .groups import GroupElement, GroupSpec, commute

LieVector = Dict[int, Fraction]


class LieAlgebraError(ValueError):
    """Malformed algebra data or an out-of-range basis index."""


class GradedSpanError(LieAlgebraError):
    """An endomorphism violates its declared degree or block structure."""


class GradedLieAlgebra:
    """Structure-constant presentation of a graded Lie algebra.

    brackets maps ordered pairs (i, j) with i < j to the expansion of
    [e_i, e_j] as (k, coefficient) terms; [e_j, e_i] is read off by sign.
    Instances are immutable after construction.
    """

    def __init__(self, group: GroupSpec, degrees: Sequence[GroupElement],
                 brackets: Mapping[Tuple[int, int], Iterable],
                 names: Optional[Sequence[str]] = None):
        self.group = group
        self.degrees = tuple(degrees)
        n = len(self.degrees)
        for d in self.degrees:
            if d.spec != group:
                raise LieAlgebraError("basis degree from a different group backend")
        if names is None:
            names = tuple(f"e{i}" for i in range(n))
        else:
            names = tuple(names)
            if len(names) != n:
                raise LieAlgebraError(f"{len(names)} names for {n} basis elements")
        self.names = names

        table: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise LieAlgebraError(f"bracket pair ({i},{j}) out of range for n={n}")
            if i >= j:
                raise LieAlgebraError(
                    f"bracket pair ({i},{j}) must satisfy i < j; the other order is implied")
            if isinstance(terms, Mapping):
                terms = terms.items()
            acc: Dict[int, Fraction] = {}
            for k, c in terms:
                if not 0 <= k < n:
                    raise LieAlgebraError(f"bracket target index {k} out of range for n={n}")
                acc[int(k)] = acc.get(int(k), Fraction(0)) + Fraction(c)
            clean = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
            if clean:
                table[(i, j)] = clean
        self.brackets = table

    @property
    def n(self) -> int:
        return len(self.degrees)

    def degree(self, i: int) -> GroupElement:
        return self.degrees[i]

    def name(self, i: int) -> str:
        return self.names[i]

    def bracket_basis(self, i: int, j: int) -> List[Tuple[int, Fraction]]:
        """[e_i, e_j] for arbitrary order of i and j."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise LieAlgebraError(f"basis index out of range: ({i},{j})")
        if i == j:
            return []
        if i < j:
            return list(self.brackets.get((i, j), ()))
        return [(k, -c) for k, c in self.brackets.get((j, i), ())]

    def components(self) -> List[Tuple[GroupElement, List[int]]]:
        """Homogeneous components as (degree, basis indices), in first
        appearance order; equal degrees fold into one component."""
        out: List[Tuple[GroupElement, List[int]]] = []
        for i, d in enumerate(self.degrees):
            for deg, idxs in out:
                if deg == d:
                    idxs.append(i)
                    break
            else:
                out.append((d, [i]))
        return out


# -- vectors ------------------------------------------------------------------

def vector(entries: Mapping[int, object]) -> LieVector:
    out = {}
    for i, c in entries.items():
        c = Fraction(c)
        if c != 0:
            out[int(i)] = c
    return out


def basis_vector(i: int) -> LieVector:
    return {i: Fraction(1)}


def vec_add(x: LieVector, y: LieVector) -> LieVector:
    out = dict(x)
    for i, c in y.items():
        s = out.get(i, Fraction(0)) + c
        if s == 0:
            out.pop(i, None)
        else:
            out[i] = s
    return out


def vec_scale(c, x: LieVector) -> LieVector:
    c = Fraction(c)
    if c == 0:
        return {}
    return {i: c * v for i, v in x.items()}


def bracket(alg: GradedLieAlgebra, x: Mapping[int, Fraction],
            y: Mapping[int, Fraction]) -> LieVector:
    """Bilinear extension of the basis bracket."""
    out: LieVector = {}
    for i, xi in x.items():
        if not 0 <= i < alg.n:
            raise LieAlgebraError(f"basis index {i} out of range")
        for j, yj in y.items():
            if not 0 <= j < alg.n:
                raise LieAlgebraError(f"basis index {j} out of range")
            f = xi * yj
            for k, c in alg.bracket_basis(i, j):
                s = out.get(k, Fraction(0)) + f * c
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
    return out


# -- validation ---------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass
class ValidationReport:
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def validate(alg: GradedLieAlgebra) -> ValidationReport:
    """Check stored-form normalization, grading compatibility and the Jacobi
    identity on every basis triple.  Failures are report entries with a
    concrete witness, never exceptions."""
    checks = [_check_normalization(alg), _check_grading(alg), _check_jacobi(alg)]
    return ValidationReport(checks)


def _check_normalization(alg: GradedLieAlgebra) -> CheckResult:
    for (i, j), terms in alg.brackets.items():
        if not (0 <= i < j < alg.n):
            return CheckResult("normalization", False, f"bad pair ({i},{j})")
        ks = [k for k, _ in terms]
        if ks != sorted(set(ks)):
            return CheckResult("normalization", False, f"unsorted terms at ({i},{j})")
        if any(c == 0 for _, c in terms):
            return CheckResult("normalization", False, f"stored zero coefficient at ({i},{j})")
        if any(not 0 <= k < alg.n for k in ks):
            return CheckResult("normalization", False, f"target out of range at ({i},{j})")
    return CheckResult("normalization", True)


def _check_grading(alg: GradedLieAlgebra) -> CheckResult:
    # [e_i,e_j] != 0 forces deg e_k = (deg e_i)(deg e_j); by antisymmetry the
    # same expansion is -[e_j,e_i], so (deg e_j)(deg e_i) must match too.
    for (i, j), terms in sorted(alg.brackets.items()):
        dij = alg.degree(i) * alg.degree(j)
        dji = alg.degree(j) * alg.degree(i)
        for k, _ in terms:
            if alg.degree(k) != dij:
                return CheckResult(
                    "grading", False,
                    f"deg {alg.name(k)} != deg {alg.name(i)} * deg {alg.name(j)} "
                    f"for bracket ({alg.name(i)},{alg.name(j)})")
            if alg.degree(k) != dji:
                return CheckResult(
                    "grading", False,
                    f"degrees of {alg.name(i)} and {alg.name(j)} do not commute "
                    f"but [{alg.name(i)},{alg.name(j)}] is nonzero")
    return CheckResult("grading", True)


def _check_jacobi(alg: GradedLieAlgebra) -> CheckResult:
    for i in range(alg.n):
        for j in range(i + 1, alg.n):
            for k in range(j + 1, alg.n):
                ei, ej, ek = basis_vector(i), basis_vector(j), basis_vector(k)
                total = vec_add(
                    vec_add(bracket(alg, bracket(alg, ei, ej), ek),
                            bracket(alg, bracket(alg, ej, ek), ei)),
                    bracket(alg, bracket(alg, ek, ei), ej))
                if total:
                    return CheckResult(
                        "jacobi", False,
                        f"({alg.name(i)},{alg.name(j)},{alg.name(k)})")
    return CheckResult("jacobi", True)


# -- center and derivations -----------------------------------------------------

def center(alg: GradedLieAlgebra) -> List[LieVector]:
    """Homogeneous basis of {x : [x, L] = 0}, computed per component so every
    returned vector is homogeneous."""
    out: List[LieVector] = []
    for _, idxs in alg.components():
        rows = []
        for j in range(alg.n):
            cols = [dict(alg.bracket_basis(i, j)) for i in idxs]
            targets = sorted({k for col in cols for k in col})
            for k in targets:
                rows.append([col.get(k, Fraction(0)) for col in cols])
        for sol in linalg.nullspace(rows, len(idxs)):
            vec = {idxs[t]: c for t, c in enumerate(sol) if c != 0}
            out.append(vec)
    return out


@dataclass(frozen=True)
class EndoMatrix:
    """Exact matrix acting on the basis of L, optionally with a declared
    degree d, in which case it must map each component L_g into L_{dg}."""

    rows: Tuple[Tuple[Fraction, ...], ...]
    degree: Optional[GroupElement] = None
    label: Optional[str] = None

    @staticmethod
    def build(rows: Sequence[Sequence], degree: Optional[GroupElement] = None,
              label: Optional[str] = None) -> "EndoMatrix":
        return EndoMatrix(tuple(tuple(Fraction(x) for x in row) for row in rows),
                          degree, label)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def flatten(self) -> List[Fraction]:
        return [x for row in self.rows for x in row]


def _mat_commutator(a: EndoMatrix, b: EndoMatrix) -> List[List[Fraction]]:
    n = len(a.rows)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = Fraction(0)
            for k in range(n):
                s += a.rows[i][k] * b.rows[k][j] - b.rows[i][k] * a.rows[k][j]
            out[i][j] = s
    return out


def check_block_invariant(alg: GradedLieAlgebra, mat: EndoMatrix) -> None:
    """Raise GradedSpanError unless mat respects its declared degree."""
    who = mat.label or "matrix"
    if mat.degree is None:
        raise GradedSpanError(f"{who} has no declared degree")
    if len(mat.rows) != alg.n or any(len(r) != alg.n for r in mat.rows):
        raise GradedSpanError(f"{who} is not {alg.n}x{alg.n}")
    for r in range(alg.n):
        for c in range(alg.n):
            if mat.rows[r][c] != 0 and alg.degree(r) != mat.degree * alg.degree(c):
                raise GradedSpanError(
                    f"{who} has entry ({r},{c}) outside its degree block")


def inner_derivations(alg: GradedLieAlgebra) -> List[EndoMatrix]:
    """The adjoint maps ad e_i with declared degree deg e_i, thinned to a
    linearly independent set."""
    mats = []
    for i in range(alg.n):
        rows = [[Fraction(0)] * alg.n for _ in range(alg.n)]
        for j in range(alg.n):
            for k, c in alg.bracket_basis(i, j):
                rows[k][j] = c
        mats.append(EndoMatrix.build(rows, alg.degree(i), f"ad {alg.name(i)}"))
    nonzero = [m for m in mats if not m.is_zero()]
    kept = linalg.independent_subset([m.flatten() for m in nonzero])
    return [nonzero[i] for i in kept]


@dataclass
class GradedSpanReport:
    ok: bool
    witness: Optional[Tuple[int, int]] = None
    reason: Optional[str] = None

    def witness_labels(self, mats: Sequence[EndoMatrix]) -> Optional[Tuple[str, str]]:
        if self.witness is None:
            return None
        i, j = self.witness
        return (mats[i].label or f"mats[{i}]", mats[j].label or f"mats[{j}]")


def is_graded_lie_subspace(alg: GradedLieAlgebra,
                           mats: Sequence[EndoMatrix]) -> GradedSpanReport:
    """Decide whether the span of the given homogeneous endomorphisms is a
    graded Lie algebra under the commutator.

    For each pair: if the declared degrees do not commute the commutator must
    vanish; otherwise a nonzero commutator must lie in the span of the listed
    matrices of the product degree.  The first offending pair is the witness.
    """
    for mat in mats:
        check_block_invariant(alg, mat)
    for i1 in range(len(mats)):
        for i2 in range(i1 + 1, len(mats)):
            u, v = mats[i1], mats[i2]
            comm = _mat_commutator(u, v)
            nonzero = any(x != 0 for row in comm for x in row)
            if not commute(u.degree, v.degree):
                if nonzero:
                    return GradedSpanReport(
                        False, (i1, i2),
                        "degrees do not commute but the commutator is nonzero")
                continue
            if not nonzero:
                continue
            target_degree = u.degree * v.degree
            pool = [m.flatten() for m in mats if m.degree == target_degree]
            flat = [x for row in comm for x in row]
            if linalg.in_span(pool, flat) is None:
                return GradedSpanReport(
                    False, (i1, i2),
                    "commutator escapes the span at the product degree")
    return GradedSpanReport(True)
