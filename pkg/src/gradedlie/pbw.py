"""Normal forms in the strong graded enveloping algebra.

Elements are exact rational combinations of sorted monomials in the basis
letters whose degree multisets generate abelian subgroups.  The straightening
map sends any raw word either to zero (non-commuting degree multiset) or to
its normal form by repeatedly swapping the leftmost descent and substituting
the corresponding bracket.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .groups import GroupElement, commute, generates_abelian_subgroup
from .liealg import GradedLieAlgebra, LieAlgebraError

Monomial = Tuple[int, ...]


class SUElement:
    """Finite rational combination of sorted monomials; the zero element has
    no terms.  Addition and scalar multiplication are algebra-free; products
    need the structure constants (see su_mul)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.terms: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[tuple(mono)] = c

    @staticmethod
    def zero() -> "SUElement":
        return SUElement()

    @staticmethod
    def unit() -> "SUElement":
        return SUElement({(): Fraction(1)})

    @staticmethod
    def monomial(mono: Sequence[int], coeff=1) -> "SUElement":
        return SUElement({tuple(mono): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def canonical_items(self) -> List[Tuple[Monomial, Fraction]]:
        # leading (longest) monomials first, lexicographic within a length
        return sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))

    def __eq__(self, other) -> bool:
        return isinstance(other, SUElement) and self.terms == other.terms

    def __add__(self, other: "SUElement") -> "SUElement":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        res = SUElement()
        res.terms = out
        return res

    def __sub__(self, other: "SUElement") -> "SUElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "SUElement":
        scalar = Fraction(scalar)
        res = SUElement()
        if scalar != 0:
            res.terms = {m: scalar * c for m, c in self.terms.items()}
        return res

    def __repr__(self) -> str:
        if not self.terms:
            return "SUElement(0)"
        body = " + ".join(f"{c}*{m}" for m, c in self.canonical_items())
        return f"SUElement({body})"

    def render(self, alg: GradedLieAlgebra) -> str:
        """Serialize as "c1 * m1 + c2 * m2" with named monomials in the
        canonical (length, then lexicographic) order."""
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.canonical_items():
            name = " ".join(alg.name(i) for i in mono) if mono else "1"
            parts.append(f"{c} * {name}")
        return " + ".join(parts)


def monomial_degree(alg: GradedLieAlgebra, mono: Sequence[int]) -> GroupElement:
    """Ordered product of the letter degrees."""
    deg = alg.group.identity()
    for i in mono:
        deg = deg * alg.degree(i)
    return deg


def word_is_gas(alg: GradedLieAlgebra, word: Sequence[int]) -> bool:
    """True iff the degree multiset of the word generates an abelian
    subgroup (duplicates are irrelevant, so the distinct degrees decide)."""
    return generates_abelian_subgroup(set(alg.degree(i) for i in word))


def _leftmost_descent(word: Monomial) -> Optional[int]:
    for t in range(len(word) - 1):
        if word[t] > word[t + 1]:
            return t
    return None


def _merge(acc: Dict[Monomial, Fraction], mono: Monomial, c: Fraction) -> None:
    s = acc.get(mono, Fraction(0)) + c
    if s == 0:
        acc.pop(mono, None)
    else:
        acc[mono] = s


def normalize(alg: GradedLieAlgebra, word: Sequence[int], coeff=1) -> SUElement:
    """Straighten a raw word (with scalar) into normal form.

    A word whose degree multiset does not generate an abelian subgroup maps
    to zero.  Otherwise the leftmost strict descent is repeatedly rewritten:
    the word with the two letters swapped, plus the words with the pair
    replaced by each bracket term.  Terminates because each step lowers
    (length, inversion count) lexicographically; equal adjacent letters are
    never swapped.
    """
    word = tuple(int(i) for i in word)
    for i in word:
        if not 0 <= i < alg.n:
            raise LieAlgebraError(f"basis index {i} out of range")
    coeff = Fraction(coeff)
    if coeff == 0 or not word_is_gas(alg, word):
        return SUElement.zero()
    pending: Dict[Monomial, Fraction] = {word: coeff}
    result: Dict[Monomial, Fraction] = {}
    while pending:
        w = next(iter(pending))
        c = pending.pop(w)
        t = _leftmost_descent(w)
        if t is None:
            _merge(result, w, c)
            continue
        b, a = w[t], w[t + 1]  # b > a
        _merge(pending, w[:t] + (a, b) + w[t + 2:], c)
        # e_b e_a = e_a e_b - [e_a, e_b]
        for k, alpha in alg.brackets.get((a, b), ()):
            _merge(pending, w[:t] + (k,) + w[t + 2:], -c * alpha)
    out = SUElement()
    out.terms = result
    return out


def su_mul(alg: GradedLieAlgebra, x: SUElement, y: SUElement) -> SUElement:
    """Product in the strong enveloping algebra: concatenate monomials, then
    straighten."""
    out = SUElement.zero()
    for ma, ca in x.terms.items():
        for mb, cb in y.terms.items():
            out = out + normalize(alg, ma + mb, ca * cb)
    return out


def pbw_basis(alg: GradedLieAlgebra, max_len: int) -> List[Monomial]:
    """All sorted monomials of length <= max_len whose degree multiset
    generates an abelian subgroup, ordered by length then lexicographically."""
    if max_len < 0:
        raise LieAlgebraError("max_len must be >= 0")
    out: List[Monomial] = []
    for length in range(max_len + 1):
        for mono in combinations_with_replacement(range(alg.n), length):
            if word_is_gas(alg, mono):
                out.append(mono)
    return out


def ug_spanning(alg: GradedLieAlgebra, max_len: int) -> List[Monomial]:
    """Sorted monomials whose ADJACENT letter degrees commute.

    This enumerates a spanning set of the (non-strong) graded enveloping
    algebra; no independence claim is made and no arithmetic is offered on
    it.
    """
    if max_len < 0:
        raise LieAlgebraError("max_len must be >= 0")
    out: List[Monomial] = []
    for length in range(max_len + 1):
        for mono in combinations_with_replacement(range(alg.n), length):
            if all(commute(alg.degree(mono[t]), alg.degree(mono[t + 1]))
                   for t in range(len(mono) - 1)):
                out.append(mono)
    return out


@dataclass
class EmbedReport:
    """Outcome of the embedding check L -> SU(L)."""

    independent: bool
    pair_failures: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.independent and not self.pair_failures


def embed_check(alg: GradedLieAlgebra) -> EmbedReport:
    """Verify that the basis embeds: the n length-1 normal forms are
    linearly independent, and for every pair (i, j) the straightened
    commutator of letters equals the image of the Lie bracket."""
    images = [normalize(alg, (i,)) for i in range(alg.n)]
    support = sorted({m for img in images for m in img.terms},
                     key=lambda m: (len(m), m))
    coord = {m: p for p, m in enumerate(support)}
    vectors = []
    for img in images:
        v = [Fraction(0)] * len(support)
        for m, c in img.terms.items():
            v[coord[m]] = c
        vectors.append(v)
    independent = linalg.rank(vectors) == alg.n

    failures = []
    for i in range(alg.n):
        for j in range(alg.n):
            lhs = normalize(alg, (i, j)) - normalize(alg, (j, i))
            rhs = SUElement({(k,): c for k, c in alg.bracket_basis(i, j)})
            if lhs != rhs:
                failures.append((i, j))
    return EmbedReport(independent=independent, pair_failures=failures)
