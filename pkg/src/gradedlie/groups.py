"""Group arithmetic backends with a decidable word problem.

Four families are supported: finite groups given by a Cayley table, free
groups, free abelian groups, and free products of cyclic groups.  Every
element is stored in a canonical normal form, so equality is plain value
equality and all predicates (identity, commutation) are exact.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

FINITE = "finite"
FREE = "free"
FREE_ABELIAN = "free_abelian"
FREE_PRODUCT_CYCLIC = "free_product_cyclic"

# exhaustive associativity check bound; above it we sample triples
_EXHAUSTIVE_ASSOC_LIMIT = 64
_SAMPLED_ASSOC_TRIPLES = 10_000


class GroupError(ValueError):
    """Invalid group data or an invalid operation on group elements."""


class BackendMismatch(GroupError):
    """Raised when elements of two different groups are combined."""


class InvalidCayleyTable(GroupError):
    """Raised when a finite multiplication table violates a group axiom."""


Literal = Union[str, int, Sequence]


@dataclass(frozen=True)
class GroupSpec:
    """Description of one concrete group.

    Exactly one family per spec: ``finite`` carries a Cayley table (index 0
    is the identity) and optional element names; ``free`` and
    ``free_abelian`` carry a rank; ``free_product_cyclic`` carries the list
    of cyclic factor orders (each >= 2).
    """

    kind: str
    table: Optional[tuple] = None
    names: Optional[tuple] = None
    rank: int = 0
    orders: tuple = ()

    @staticmethod
    def finite(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> "GroupSpec":
        tbl = tuple(tuple(int(x) for x in row) for row in table)
        nm = tuple(names) if names is not None else None
        _check_cayley_table(tbl, nm)
        return GroupSpec(kind=FINITE, table=tbl, names=nm, rank=len(tbl))

    @staticmethod
    def free(rank: int) -> "GroupSpec":
        if rank < 0:
            raise GroupError(f"free group rank must be >= 0, got {rank}")
        return GroupSpec(kind=FREE, rank=rank)

    @staticmethod
    def free_abelian(rank: int) -> "GroupSpec":
        if rank < 0:
            raise GroupError(f"free abelian rank must be >= 0, got {rank}")
        return GroupSpec(kind=FREE_ABELIAN, rank=rank)

    @staticmethod
    def free_product_cyclic(orders: Sequence[int]) -> "GroupSpec":
        ords = tuple(int(o) for o in orders)
        if any(o < 2 for o in ords):
            raise GroupError(f"cyclic factor orders must all be >= 2, got {ords}")
        return GroupSpec(kind=FREE_PRODUCT_CYCLIC, orders=ords, rank=len(ords))

    # -- elements ----------------------------------------------------------

    def identity(self) -> "GroupElement":
        if self.kind == FINITE:
            return GroupElement(self, 0)
        if self.kind == FREE_ABELIAN:
            return GroupElement(self, (0,) * self.rank)
        return GroupElement(self, ())

    def generator(self, i: int, exponent: int = 1) -> "GroupElement":
        """The i-th generator (or its power) in word-like backends; the
        i-th standard basis vector in the free abelian backend."""
        if not 0 <= i < self.rank:
            raise GroupError(f"generator index {i} out of range for rank {self.rank}")
        if self.kind == FREE:
            if exponent == 0:
                return self.identity()
            return GroupElement(self, ((i, exponent),))
        if self.kind == FREE_ABELIAN:
            vec = [0] * self.rank
            vec[i] = exponent
            return GroupElement(self, tuple(vec))
        if self.kind == FREE_PRODUCT_CYCLIC:
            e = exponent % self.orders[i]
            if e == 0:
                return self.identity()
            return GroupElement(self, ((i, e),))
        raise GroupError("finite groups have no distinguished generators; use element()")

    def element(self, index: int) -> "GroupElement":
        if self.kind != FINITE:
            raise GroupError("element(index) is only available in the finite backend")
        if not 0 <= index < self.rank:
            raise GroupError(f"element index {index} out of range for order {self.rank}")
        return GroupElement(self, index)

    # -- literals ----------------------------------------------------------

    def parse(self, literal: Literal) -> "GroupElement":
        """Parse an element literal as used in input files and on the CLI."""
        if isinstance(literal, str):
            literal = literal.strip()
        if literal == "1" and self.kind != FINITE:
            return self.identity()
        if isinstance(literal, (list, tuple)) and len(literal) == 0:
            return self.identity()
        try:
            return self._parse(literal)
        except BackendMismatch:
            raise
        except GroupError:
            raise
        except (ValueError, TypeError, IndexError) as exc:
            raise GroupError(f"bad {self.kind} element literal {literal!r}: {exc}") from None

    def _parse(self, literal: Literal) -> "GroupElement":
        if self.kind == FINITE:
            if isinstance(literal, str) and self.names and literal in self.names:
                return GroupElement(self, self.names.index(literal))
            return self.element(int(literal))
        if self.kind == FREE:
            if literal == "":
                return self.identity()
            if not isinstance(literal, str):
                raise GroupError(f"free group literals are strings, got {literal!r}")
            out = self.identity()
            for token in literal.split():
                out = out * self._parse_free_token(token)
            return out
        if self.kind == FREE_ABELIAN:
            vec = json.loads(literal) if isinstance(literal, str) else list(literal)
            vec = [int(x) for x in vec]
            if len(vec) != self.rank:
                raise GroupError(f"expected a vector of length {self.rank}, got {vec}")
            return GroupElement(self, tuple(vec))
        if self.kind == FREE_PRODUCT_CYCLIC:
            syllables = json.loads(literal) if isinstance(literal, str) else list(literal)
            out = self.identity()
            for syl in syllables:
                factor, exp = syl
                out = out * self.generator(int(factor), int(exp))
            return out
        raise GroupError(f"unknown backend {self.kind!r}")

    def _parse_free_token(self, token: str) -> "GroupElement":
        if token == "1":
            return self.identity()
        name, _, exp_s = token.partition("^")
        exponent = int(exp_s) if exp_s else 1
        if len(name) == 1 and "a" <= name <= "z":
            idx = ord(name) - ord("a")
        elif name.startswith("x") and name[1:].isdigit():
            idx = int(name[1:]) - 1
        else:
            raise GroupError(f"bad free-group generator token {token!r}")
        return self.generator(idx, exponent)

    def format(self, elem: "GroupElement") -> str:
        """Render an element as a literal that parse() accepts back."""
        self._claim(elem)
        if self.kind == FINITE:
            return self.names[elem.data] if self.names else str(elem.data)
        if self.kind == FREE:
            if not elem.data:
                return "1"
            return " ".join(self._free_gen_name(g) + (f"^{e}" if e != 1 else "")
                            for g, e in elem.data)
        if self.kind == FREE_ABELIAN:
            return "[" + ",".join(str(x) for x in elem.data) + "]"
        if self.kind == FREE_PRODUCT_CYCLIC:
            if not elem.data:
                return "1"
            return "[" + ",".join(f"[{f},{e}]" for f, e in elem.data) + "]"
        raise GroupError(f"unknown backend {self.kind!r}")

    def _free_gen_name(self, i: int) -> str:
        return chr(ord("a") + i) if self.rank <= 26 else f"x{i + 1}"

    # -- arithmetic --------------------------------------------------------

    def _claim(self, elem: "GroupElement") -> None:
        if elem.spec != self:
            raise BackendMismatch(
                f"element of a {elem.spec.kind} group used with a {self.kind} group")

    def mul(self, a: "GroupElement", b: "GroupElement") -> "GroupElement":
        self._claim(a)
        self._claim(b)
        if self.kind == FINITE:
            return GroupElement(self, self.table[a.data][b.data])
        if self.kind == FREE_ABELIAN:
            return GroupElement(self, tuple(x + y for x, y in zip(a.data, b.data)))
        if self.kind == FREE:
            return GroupElement(self, _merge_free(a.data, b.data))
        if self.kind == FREE_PRODUCT_CYCLIC:
            return GroupElement(self, _merge_product(a.data, b.data, self.orders))
        raise GroupError(f"unknown backend {self.kind!r}")

    def inv(self, a: "GroupElement") -> "GroupElement":
        self._claim(a)
        if self.kind == FINITE:
            row = self.table[a.data]
            return GroupElement(self, row.index(0))
        if self.kind == FREE_ABELIAN:
            return GroupElement(self, tuple(-x for x in a.data))
        if self.kind == FREE:
            return GroupElement(self, tuple((g, -e) for g, e in reversed(a.data)))
        if self.kind == FREE_PRODUCT_CYCLIC:
            return GroupElement(self,
                                tuple((f, self.orders[f] - e) for f, e in reversed(a.data)))
        raise GroupError(f"unknown backend {self.kind!r}")


@dataclass(frozen=True)
class GroupElement:
    """An element in normal form; equality and hashing are structural."""

    spec: GroupSpec
    data: Union[int, tuple]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.spec.mul(self, other)

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.spec.identity()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "GroupElement":
        return self.spec.inv(self)

    def is_identity(self) -> bool:
        return self == self.spec.identity()

    def __str__(self) -> str:
        return self.spec.format(self)


# -- word reduction ---------------------------------------------------------

def _merge_free(left: tuple, right: tuple) -> tuple:
    """Concatenate two reduced free-group words, cancelling at the seam."""
    stack = list(left)
    pos = 0
    while stack and pos < len(right):
        g1, e1 = stack[-1]
        g2, e2 = right[pos]
        if g1 != g2:
            break
        stack.pop()
        pos += 1
        e = e1 + e2
        if e != 0:
            stack.append((g1, e))
            break
    return tuple(stack) + right[pos:]


def _merge_product(left: tuple, right: tuple, orders: tuple) -> tuple:
    """Concatenate free-product words, reducing exponents modulo the factor
    order and dropping syllables that collapse to the identity."""
    stack = list(left)
    pos = 0
    while stack and pos < len(right):
        f1, e1 = stack[-1]
        f2, e2 = right[pos]
        if f1 != f2:
            break
        stack.pop()
        pos += 1
        e = (e1 + e2) % orders[f1]
        if e != 0:
            stack.append((f1, e))
            break
    return tuple(stack) + right[pos:]


# -- module-level operations -------------------------------------------------

def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a.spec.mul(a, b)


def inv(a: GroupElement) -> GroupElement:
    return a.spec.inv(a)


def is_identity(a: GroupElement) -> bool:
    return a.is_identity()


def commute(g: GroupElement, h: GroupElement) -> bool:
    """True iff the commutator g h g^-1 h^-1 is the identity."""
    return (g * h * g.inverse() * h.inverse()).is_identity()


def generates_abelian_subgroup(elements: Iterable[GroupElement]) -> bool:
    """True iff the given elements pairwise commute (equivalently, iff the
    subgroup they generate is abelian)."""
    elems = list(elements)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not commute(elems[i], elems[j]):
                return False
    return True


# -- finite table validation --------------------------------------------------

def _check_cayley_table(table: tuple, names: Optional[tuple]) -> None:
    n = len(table)
    if n == 0:
        raise InvalidCayleyTable("empty Cayley table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise InvalidCayleyTable(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise InvalidCayleyTable(f"entry {x} in row {i} out of range 0..{n - 1}")
    if names is not None:
        if len(names) != n:
            raise InvalidCayleyTable(f"{len(names)} names for {n} elements")
        if len(set(names)) != n:
            raise InvalidCayleyTable("element names are not distinct")

    full = set(range(n))
    for i in range(n):
        if set(table[i]) != full:
            raise InvalidCayleyTable(f"row {i} is not a permutation")
        if {table[j][i] for j in range(n)} != full:
            raise InvalidCayleyTable(f"column {i} is not a permutation")
    for i in range(n):
        if table[0][i] != i or table[i][0] != i:
            raise InvalidCayleyTable("index 0 does not act as a two-sided identity")
    for i in range(n):
        j = table[i].index(0)
        if table[j][i] != 0:
            raise InvalidCayleyTable(f"element {i} has no two-sided inverse")

    if n <= _EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            for b in range(n):
                tab = table[table[a][b]]
                row_b = table[b]
                row_a = table[a]
                for c in range(n):
                    if tab[c] != row_a[row_b[c]]:
                        raise InvalidCayleyTable(
                            f"associativity fails on ({a},{b},{c})")
    else:
        # deterministic sampling keyed off the table itself
        digest = hashlib.sha256(repr(table).encode()).digest()
        rng = random.Random(int.from_bytes(digest[:8], "big"))
        for _ in range(_SAMPLED_ASSOC_TRIPLES):
            a = rng.randrange(n)
            b = rng.randrange(n)
            c = rng.randrange(n)
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidCayleyTable(f"associativity fails on ({a},{b},{c})")
