"""Free graded Lie algebras at bounded degree.

The relatively free associative algebra on a degree-assigned alphabet has the
words with commuting degree multisets as a homogeneous basis; its Lie
subalgebra generated by the letters is free, with basis the standard
bracketings of Lyndon words whose letter degrees commute.  This module
enumerates both bases, checks the bounded-degree enveloping/rank statement,
and verifies the free-abelian degree lift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .groups import GroupElement, GroupSpec, generates_abelian_subgroup

Word = Tuple[int, ...]
Expansion = Dict[Word, Fraction]


class FreeLieError(ValueError):
    """Malformed alphabet or an out-of-range request."""


@dataclass(frozen=True)
class GradedAlphabet:
    """Finitely many variables with assigned degrees in one group."""

    group: GroupSpec
    names: Tuple[str, ...]
    degrees: Tuple[GroupElement, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise FreeLieError("names and degrees differ in length")
        for d in self.degrees:
            if d.spec != self.group:
                raise FreeLieError("variable degree from a different group backend")

    @staticmethod
    def build(group: GroupSpec, variables: Sequence[Tuple[str, GroupElement]]) -> "GradedAlphabet":
        return GradedAlphabet(group, tuple(n for n, _ in variables),
                              tuple(d for _, d in variables))

    @staticmethod
    def from_algebra(alg) -> "GradedAlphabet":
        """Reuse an algebra's basis names and degrees as an alphabet."""
        return GradedAlphabet(alg.group, alg.names, alg.degrees)

    @property
    def size(self) -> int:
        return len(self.names)

    def word_name(self, word: Word) -> str:
        return " ".join(self.names[i] for i in word) if word else "1"

    def word_degree(self, word: Word) -> GroupElement:
        deg = self.group.identity()
        for i in word:
            deg = deg * self.degrees[i]
        return deg

    def word_is_gas(self, word: Word) -> bool:
        return generates_abelian_subgroup(set(self.degrees[i] for i in word))


@dataclass
class FreeMonomialSpace:
    """Basis of one length-homogeneous component of the relatively free
    algebra: the words whose degree multiset generates an abelian subgroup."""

    length: int
    words: List[Word]
    index: Dict[Word, int]

    @property
    def dim(self) -> int:
        return len(self.words)


def free_monomial_basis(alphabet: GradedAlphabet, length: int) -> FreeMonomialSpace:
    if length < 0:
        raise FreeLieError("length must be >= 0")
    words = [w for w in product(range(alphabet.size), repeat=length)
             if alphabet.word_is_gas(w)]
    return FreeMonomialSpace(length, words, {w: p for p, w in enumerate(words)})


# -- Lyndon words --------------------------------------------------------------

def is_lyndon(word: Word) -> bool:
    """A word is Lyndon iff it is strictly smaller than all of its proper
    rotations."""
    if not word:
        return False
    for k in range(1, len(word)):
        if word[k:] + word[:k] <= word:
            return False
    return True


def _standard_factorization(word: Word) -> Tuple[Word, Word]:
    # right factor = lexicographically smallest proper suffix, which is the
    # longest proper Lyndon suffix
    v = min(word[k:] for k in range(1, len(word)))
    return word[:len(word) - len(v)], v


def _concat(a: Expansion, b: Expansion) -> Expansion:
    out: Expansion = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            s = out.get(w, Fraction(0)) + ca * cb
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
    return out


def _expansion_sub(a: Expansion, b: Expansion) -> Expansion:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w, Fraction(0)) - c
        if s == 0:
            out.pop(w, None)
        else:
            out[w] = s
    return out


def standard_bracketing(word: Word) -> Expansion:
    """Associative expansion of the standard (right) bracketing of a Lyndon
    word; the word itself appears with coefficient 1."""
    if len(word) == 1:
        return {word: Fraction(1)}
    u, v = _standard_factorization(word)
    eu, ev = standard_bracketing(u), standard_bracketing(v)
    return _expansion_sub(_concat(eu, ev), _concat(ev, eu))


@dataclass(frozen=True)
class LyndonElement:
    """A Lyndon word with commuting letter degrees, its bracketing expansion
    and its degree."""

    word: Word
    expansion: Tuple[Tuple[Word, Fraction], ...]
    degree: GroupElement

    def expansion_dict(self) -> Expansion:
        return dict(self.expansion)

    def __len__(self) -> int:
        return len(self.word)


def lyndon_basis(alphabet: GradedAlphabet, max_len: int) -> List[LyndonElement]:
    """Basis elements of the free graded Lie algebra up to the given word
    length: standard bracketings of Lyndon words whose letter-degree multiset
    generates an abelian subgroup.  Ordered by length then lexicographically."""
    if max_len < 1:
        raise FreeLieError("max_len must be >= 1")
    out: List[LyndonElement] = []
    for length in range(1, max_len + 1):
        for word in product(range(alphabet.size), repeat=length):
            if not is_lyndon(word) or not alphabet.word_is_gas(word):
                continue
            expansion = standard_bracketing(word)
            # every monomial shares the word's letter multiset, so the
            # projection to the relatively free algebra keeps all of them
            terms = tuple(sorted(expansion.items()))
            out.append(LyndonElement(word, terms, alphabet.word_degree(word)))
    return out


# -- enveloping-rank check -------------------------------------------------------

@dataclass
class WittRow:
    length: int
    lyndon_count: int
    pbw_rank: int
    monomial_dim: int
    passed: bool


@dataclass
class WittReport:
    rows: List[WittRow]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def _pbw_products(elements: List[LyndonElement], total: int,
                  start: int = 0) -> List[List[int]]:
    """Non-decreasing index sequences into `elements` with word lengths
    summing to `total`."""
    if total == 0:
        return [[]]
    out = []
    for p in range(start, len(elements)):
        l = len(elements[p])
        if l <= total:
            for rest in _pbw_products(elements, total - l, p):
                out.append([p] + rest)
    return out


def witt_check(alphabet: GradedAlphabet, max_len: int) -> WittReport:
    """For each length d <= max_len, expand all sorted products of Lyndon
    basis elements of total length d whose degree multiset generates an
    abelian subgroup, and compare the exact rank of the expansions with the
    dimension of the relatively free algebra in that length."""
    if max_len < 1:
        raise FreeLieError("max_len must be >= 1")
    elements = sorted(lyndon_basis(alphabet, max_len), key=lambda e: e.word)
    rows = []
    for d in range(1, max_len + 1):
        space = free_monomial_basis(alphabet, d)
        vectors = []
        for combo in _pbw_products(elements, d):
            degs = set(elements[p].degree for p in combo)
            if not generates_abelian_subgroup(degs):
                continue
            expansion: Expansion = {(): Fraction(1)}
            for p in combo:
                expansion = _concat(expansion, elements[p].expansion_dict())
            vec = [Fraction(0)] * space.dim
            for w, c in expansion.items():
                pos = space.index.get(w)
                if pos is not None:  # words outside the space project to zero
                    vec[pos] = c
            vectors.append(vec)
        rk = linalg.rank(vectors) if vectors else 0
        count = sum(1 for e in elements if len(e) == d)
        rows.append(WittRow(d, count, rk, space.dim, rk == space.dim))
    return WittReport(rows)


# -- degree lift through a free abelian group -------------------------------------

def degree_product(degrees: Sequence[GroupElement],
                   indices: Sequence[int]) -> Optional[GroupElement]:
    """Ordered product of the referenced degrees, or None when the referenced
    degree set does not generate an abelian subgroup (in which case no
    well-defined product of the commutative exponent data exists)."""
    if not degrees and not indices:
        raise FreeLieError("empty degree list")
    referenced = [degrees[i] for i in indices]
    if not generates_abelian_subgroup(set(referenced)):
        return None
    if not referenced:
        return degrees[0].spec.identity()
    out = referenced[0].spec.identity()
    for d in referenced:
        out = out * d
    return out


@dataclass
class LiftViolation:
    word: Word
    reason: str


@dataclass
class LiftReport:
    words_checked: int
    violations: List[LiftViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def abelian_lift_check(alphabet: GradedAlphabet, max_len: int) -> LiftReport:
    """Lift the alphabet to a free-abelian grading with one generator per
    distinct degree and verify the projection behaves on every word up to
    max_len: a word either dies in the relatively free algebra (non-commuting
    degree multiset, equivalently its lifted degree falls outside the domain
    of the partial product map) or its degree equals the partial product of
    its lifted degree."""
    if max_len < 1:
        raise FreeLieError("max_len must be >= 1")
    distinct: List[GroupElement] = []
    var_class: List[int] = []
    for d in alphabet.degrees:
        for pos, seen in enumerate(distinct):
            if seen == d:
                var_class.append(pos)
                break
        else:
            var_class.append(len(distinct))
            distinct.append(d)

    violations: List[LiftViolation] = []
    checked = 0
    for length in range(1, max_len + 1):
        space = free_monomial_basis(alphabet, length)
        for word in product(range(alphabet.size), repeat=length):
            checked += 1
            survives = word in space.index
            # lifted degree of the word: exponent vector over distinct
            # degrees, fed to the partial product map in class order
            exponents: List[int] = []
            for cls in range(len(distinct)):
                exponents.extend([cls] * sum(1 for i in word if var_class[i] == cls))
            lifted = degree_product(distinct, exponents)
            if survives != (lifted is not None):
                violations.append(LiftViolation(
                    word, "projection and lifted-degree domain disagree"))
                continue
            if survives and alphabet.word_degree(word) != lifted:
                violations.append(LiftViolation(
                    word, "degree differs from the lifted product"))
    return LiftReport(checked, violations)
