"""Algebra definition files and friends.

An algebra file is JSON with top-level keys ``group``, ``basis`` and
``brackets`` (plus optional ``name``/``description``): the group block picks
a backend, each basis entry carries a name and a degree literal, and each
bracket entry gives 0-based indices i < j with exact rational coefficient
strings.  Matrix-span files and relabeling files for coarsening checks use
the same literal conventions.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple, Union

from .groups import GroupElement, GroupError, GroupSpec
from .liealg import EndoMatrix, GradedLieAlgebra, ValidationReport, validate


class AlgebraFileError(ValueError):
    """A file is missing, malformed, or violates the schema."""

    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = str(path)
        self.message = message


class ValidationFailure(AlgebraFileError):
    """The file parsed but the algebra fails validation."""

    def __init__(self, path, report: ValidationReport):
        details = "; ".join(f"{c.name}: {c.witness}" for c in report.failures())
        super().__init__(path, f"algebra fails validation ({details})")
        self.report = report


def _load_json(path) -> dict:
    p = Path(path)
    if not p.exists():
        raise AlgebraFileError(path, "file not found")
    try:
        obj = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(path, f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise AlgebraFileError(path, "top level must be an object")
    return obj


def _require(obj: dict, key: str, path, where: str = "top level"):
    if key not in obj:
        raise AlgebraFileError(path, f"missing key {key!r} at {where}")
    return obj[key]


def load_group_spec(obj: dict, path="<inline>") -> GroupSpec:
    kind = _require(obj, "kind", path, "group block")
    try:
        if kind == "finite":
            return GroupSpec.finite(_require(obj, "table", path, "group block"),
                                    obj.get("names"))
        if kind == "free":
            return GroupSpec.free(int(_require(obj, "rank", path, "group block")))
        if kind == "free_abelian":
            return GroupSpec.free_abelian(int(_require(obj, "rank", path, "group block")))
        if kind == "free_product_cyclic":
            return GroupSpec.free_product_cyclic(_require(obj, "orders", path, "group block"))
    except GroupError as exc:
        raise AlgebraFileError(path, f"bad group block: {exc}") from None
    raise AlgebraFileError(path, f"unknown group kind {kind!r}")


def load_algebra(path) -> GradedLieAlgebra:
    """Parse an algebra file without validating the Lie/grading axioms."""
    obj = _load_json(path)
    group = load_group_spec(_require(obj, "group", path), path)

    basis = _require(obj, "basis", path)
    if not isinstance(basis, list):
        raise AlgebraFileError(path, "'basis' must be a list")
    names: List[str] = []
    degrees: List[GroupElement] = []
    for pos, entry in enumerate(basis):
        where = f"basis[{pos}]"
        if not isinstance(entry, dict):
            raise AlgebraFileError(path, f"{where} must be an object")
        names.append(str(_require(entry, "name", path, where)))
        try:
            degrees.append(group.parse(_require(entry, "degree", path, where)))
        except GroupError as exc:
            raise AlgebraFileError(path, f"{where}: {exc}") from None
    if len(set(names)) != len(names):
        raise AlgebraFileError(path, "basis names are not distinct")

    brackets: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
    for pos, entry in enumerate(obj.get("brackets", [])):
        where = f"brackets[{pos}]"
        if not isinstance(entry, dict):
            raise AlgebraFileError(path, f"{where} must be an object")
        i = int(_require(entry, "i", path, where))
        j = int(_require(entry, "j", path, where))
        if (i, j) in brackets:
            raise AlgebraFileError(path, f"{where}: duplicate pair ({i},{j})")
        terms = []
        for tpos, term in enumerate(_require(entry, "terms", path, where)):
            twhere = f"{where}.terms[{tpos}]"
            k = int(_require(term, "k", path, twhere))
            raw = _require(term, "coeff", path, twhere)
            try:
                coeff = Fraction(str(raw))
            except (ValueError, ZeroDivisionError) as exc:
                raise AlgebraFileError(path, f"{twhere}: bad coefficient {raw!r}: {exc}") from None
            terms.append((k, coeff))
        brackets[(i, j)] = terms

    try:
        return GradedLieAlgebra(group, degrees, brackets, names)
    except ValueError as exc:
        raise AlgebraFileError(path, str(exc)) from None


def parse_algebra(path) -> GradedLieAlgebra:
    """Parse and validate; raises ValidationFailure with the full report if
    the data is not a graded Lie algebra."""
    alg = load_algebra(path)
    report = validate(alg)
    if not report.passed:
        raise ValidationFailure(path, report)
    return alg


def parse_word(alg: GradedLieAlgebra, text: Union[str, list]) -> Tuple[int, ...]:
    """A word is an index list like "[2,0,1]" or space-separated basis
    names like "f h e"."""
    if isinstance(text, list):
        tokens = [int(t) for t in text]
    else:
        text = text.strip()
        if text.startswith("["):
            try:
                tokens = [int(t) for t in json.loads(text)]
            except (json.JSONDecodeError, TypeError, ValueError):
                raise AlgebraFileError("<word>", f"bad index list {text!r}") from None
        elif not text:
            tokens = []
        else:
            tokens = []
            for name in text.split():
                if name not in alg.names:
                    raise AlgebraFileError("<word>", f"unknown basis name {name!r}")
                tokens.append(alg.names.index(name))
    for i in tokens:
        if not 0 <= i < alg.n:
            raise AlgebraFileError("<word>", f"basis index {i} out of range")
    return tuple(tokens)


def load_mats(path, alg: GradedLieAlgebra) -> List[EndoMatrix]:
    """Matrix-span file: {"mats": [{"label", "degree", "rows"}, ...]} with
    rows of exact rational strings and degrees in the algebra's group."""
    obj = _load_json(path)
    entries = _require(obj, "mats", path)
    mats = []
    for pos, entry in enumerate(entries):
        where = f"mats[{pos}]"
        label = entry.get("label", f"m{pos}")
        try:
            degree = alg.group.parse(_require(entry, "degree", path, where))
        except GroupError as exc:
            raise AlgebraFileError(path, f"{where}: {exc}") from None
        rows = _require(entry, "rows", path, where)
        try:
            mat = EndoMatrix.build([[Fraction(str(x)) for x in row] for row in rows],
                                   degree, str(label))
        except (ValueError, ZeroDivisionError) as exc:
            raise AlgebraFileError(path, f"{where}: bad matrix entry: {exc}") from None
        if len(mat.rows) != alg.n or any(len(r) != alg.n for r in mat.rows):
            raise AlgebraFileError(path, f"{where}: matrix is not {alg.n}x{alg.n}")
        mats.append(mat)
    return mats


def load_relabel(path, alg: GradedLieAlgebra) -> Dict[GroupElement, GroupElement]:
    """Relabel file: {"group": <coarse group block>, "map": [{"from": <fine
    literal>, "to": <coarse literal>}, ...]}."""
    obj = _load_json(path)
    coarse = load_group_spec(_require(obj, "group", path), path)
    mapping: Dict[GroupElement, GroupElement] = {}
    for pos, entry in enumerate(_require(obj, "map", path)):
        where = f"map[{pos}]"
        try:
            fine = alg.group.parse(_require(entry, "from", path, where))
            to = coarse.parse(_require(entry, "to", path, where))
        except GroupError as exc:
            raise AlgebraFileError(path, f"{where}: {exc}") from None
        mapping[fine] = to
    return mapping
