"""Support, universal grading group presentation, abelianization, and
coarsening checks.

The universal grading group is generated by the support with one relation
s1*s2 = s3 per ordered support pair whose components bracket nonzero.  Only
its abelianization is decided here (via integer Smith normal form); the group
itself is emitted as a presentation and nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Mapping, Optional, Tuple

from .groups import GroupElement
from .liealg import GradedLieAlgebra, LieAlgebraError
from .linalg import row_hnf, smith_normal_form


class CoarseningError(ValueError):
    """The relabeling is not a total map on the fine support."""


def support(alg: GradedLieAlgebra) -> List[GroupElement]:
    """Deduplicated basis degrees, in first-appearance order."""
    return [deg for deg, _ in alg.components()]


@dataclass
class Presentation:
    """Generators labeled by support normal forms; relations are label
    triples (s1, s2, s3) meaning s1*s2 = s3."""

    generators: List[str]
    relations: List[Tuple[str, str, str]]


def universal_presentation(alg: GradedLieAlgebra) -> Presentation:
    """One relation per ordered support pair (s1, s2) with a nonzero bracket
    between the components; both orders appear, duplicates and all."""
    comps = alg.components()
    labels = [alg.group.format(deg) for deg, _ in comps]
    label_of = {deg: labels[p] for p, (deg, _) in enumerate(comps)}
    relations: List[Tuple[str, str, str]] = []
    for a, (deg_a, idxs_a) in enumerate(comps):
        for b, (deg_b, idxs_b) in enumerate(comps):
            nonzero = any(alg.bracket_basis(i, j)
                          for i in idxs_a for j in idxs_b)
            if not nonzero:
                continue
            prod = deg_a * deg_b
            if prod not in label_of:
                raise LieAlgebraError(
                    f"bracket lands outside the support at degree {alg.group.format(prod)}; "
                    "validate the algebra first")
            relations.append((labels[a], labels[b], label_of[prod]))
    return Presentation(labels, relations)


@dataclass
class AbelianizationData:
    """The abelianized universal group as Z^free_rank x prod Z/d_i, with the
    image of each generator as free coordinates followed by torsion
    coordinates (each reduced into [0, d_i))."""

    generators: List[str]
    free_rank: int
    invariant_factors: List[int]
    images: List[Tuple[int, ...]]

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "1"

    def image_of(self, label: str) -> Tuple[int, ...]:
        return self.images[self.generators.index(label)]


def abelianize(pres: Presentation) -> AbelianizationData:
    """Write each relation additively as s1 + s2 - s3 = 0, Smith-reduce the
    relation lattice, and read off the invariant factors and the generator
    images.  The free block of the images is Hermite-normalized so equal
    inputs give identical output."""
    gens = pres.generators
    s = len(gens)
    pos = {g: p for p, g in enumerate(gens)}
    m = len(pres.relations)
    # columns are relations: N[gen][rel]
    N = [[0] * m for _ in range(s)]
    for r, (s1, s2, s3) in enumerate(pres.relations):
        for label in (s1, s2, s3):
            if label not in pos:
                raise LieAlgebraError(f"relation uses unknown generator {label!r}")
        N[pos[s1]][r] += 1
        N[pos[s2]][r] += 1
        N[pos[s3]][r] -= 1

    snf = smith_normal_form(N)
    nonzero = [d for d in snf.diag if d != 0]
    rank = len(nonzero)
    factors = [d for d in nonzero if d >= 2]
    free_rank = s - rank

    # row i of U is the i-th coordinate functional on the quotient
    torsion_rows = [i for i in range(rank) if snf.diag[i] >= 2]
    free_block = [snf.U[i] for i in range(rank, s)]
    free_block = row_hnf(free_block) if free_block else []

    images = []
    for j in range(s):
        free_coords = tuple(free_block[i][j] for i in range(free_rank))
        tors_coords = tuple(snf.U[i][j] % snf.diag[i] for i in torsion_rows)
        images.append(free_coords + tors_coords)

    data = AbelianizationData(list(gens), free_rank, factors, images)
    _check_images(pres, data)
    return data


def _check_images(pres: Presentation, data: AbelianizationData) -> None:
    # every relation must hold additively on the reported images
    r = data.free_rank
    for s1, s2, s3 in pres.relations:
        a, b, c = data.image_of(s1), data.image_of(s2), data.image_of(s3)
        for t in range(r):
            if a[t] + b[t] - c[t] != 0:
                raise ArithmeticError(
                    f"abelianization postcondition failed on relation {s1}*{s2}={s3}")
        for t, d in enumerate(data.invariant_factors):
            if (a[r + t] + b[r + t] - c[r + t]) % d != 0:
                raise ArithmeticError(
                    f"abelianization postcondition failed on relation {s1}*{s2}={s3}")


def image_collisions(data: AbelianizationData) -> List[Tuple[str, str]]:
    """Pairs of generators whose abelianized images coincide."""
    out = []
    for i in range(len(data.generators)):
        for j in range(i + 1, len(data.generators)):
            if data.images[i] == data.images[j]:
                out.append((data.generators[i], data.generators[j]))
    return out


@dataclass
class AbelianVerdict:
    is_abelian: bool
    data: AbelianizationData
    collisions: List[Tuple[str, str]]


def is_abelian_presentation(pres: Presentation) -> AbelianVerdict:
    """Raw-presentation entry point: the abelianization realizes the labels
    iff no two generator images coalesce."""
    data = abelianize(pres)
    collisions = image_collisions(data)
    return AbelianVerdict(not collisions, data, collisions)


def is_abelian_grading(alg: GradedLieAlgebra) -> AbelianVerdict:
    """True iff the support keeps pairwise-distinct images in the
    abelianized universal group, i.e. no homogeneous components coalesce."""
    return is_abelian_presentation(universal_presentation(alg))


# -- coarsenings ---------------------------------------------------------------

@dataclass
class Coarsening:
    """A surjective relabeling of the fine support onto coarse degrees, with
    the induced component merges."""

    support_map: List[Tuple[GroupElement, GroupElement]]  # fine degree -> coarse
    merges: List[Tuple[GroupElement, List[GroupElement]]]  # coarse degree -> fine degrees


@dataclass
class CoarseningReport:
    ok: bool
    coarsening: Optional[Coarsening] = None
    witness: Optional[Tuple[int, int]] = None
    reason: Optional[str] = None


def coarsening_check(alg: GradedLieAlgebra,
                     relabel: Mapping[GroupElement, GroupElement]) -> CoarseningReport:
    """Verify that merging components along the relabeling yields a valid
    grading: for every nonzero basis bracket the coarse labels must satisfy
    p(deg e_i) * p(deg e_j) = p(deg e_i * deg e_j).  Non-total relabelings
    raise; compatibility failures are reported with the offending pair."""
    supp = support(alg)
    for deg in supp:
        if deg not in relabel:
            raise CoarseningError(
                f"relabeling misses support degree {alg.group.format(deg)}")
    coarse_specs = {relabel[deg].spec for deg in supp}
    if len(coarse_specs) > 1:
        raise CoarseningError("coarse labels live in different groups")

    for i in range(alg.n):
        for j in range(alg.n):
            if i == j or not alg.bracket_basis(i, j):
                continue
            gi, gj = alg.degree(i), alg.degree(j)
            lhs = relabel[gi] * relabel[gj]
            rhs = relabel[gi * gj]
            if lhs != rhs:
                return CoarseningReport(
                    False, witness=(i, j),
                    reason=f"bracket ({alg.name(i)},{alg.name(j)}) needs "
                           f"{relabel[gi].spec.format(lhs)} = {relabel[gi].spec.format(rhs)}")

    support_map = [(deg, relabel[deg]) for deg in supp]
    merges: List[Tuple[GroupElement, List[GroupElement]]] = []
    for deg, coarse in support_map:
        for cdeg, fines in merges:
            if cdeg == coarse:
                fines.append(deg)
                break
        else:
            merges.append((coarse, [deg]))
    return CoarseningReport(True, Coarsening(support_map, merges))
