"""Skew upper-triangular matrix rings over finite rings.

The product of upper triangular matrices ``A`` and ``B`` is twisted by
powers of a ring endomorphism along the diagonal offset: entry ``(i,j)``
of ``A*B`` is the sum over ``i <= k <= j`` of ``a_ik * s^(k-i)(b_kj)``
where ``s`` is the endomorphism.  With the identity endomorphism this is
ordinary triangular multiplication.

Strongly clean decompositions ``A = E + U`` (``E`` idempotent, ``U`` a
unit, ``EU = UE``) are produced constructively for ``n = 2`` and ``n = 3``
by dispatching on the unit/radical pattern of the diagonal, and by
exhaustive idempotent search for any ``n`` within an enumeration budget.
Every constructive decomposition is re-verified before it is returned.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .rings import Endomorphism, FiniteRing, NotLocalError, analyze

DEFAULT_BUDGET = 1 << 24
_ENUM_CHUNK = 1 << 18


class MatrixError(Exception):
    """Shape, compatibility or matrix-literal errors."""


class DecompositionError(Exception):
    """A constructed decomposition failed its re-verification."""


class BudgetExceededError(Exception):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"enumeration requires {required} matrices, over the budget of {budget}"
        )
        self.required = required
        self.budget = budget


class IdempotentTable:
    """All idempotents of a matrix space, in matrix-index order, grouped by diagonal."""

    __slots__ = ("matrices", "by_diag")

    def __init__(self, matrices: list[tuple[int, ...]], diag_positions: Sequence[int]):
        self.matrices = tuple(matrices)
        groups: dict[tuple[int, ...], list[tuple[int, tuple[int, ...]]]] = {}
        for pos, ent in enumerate(matrices):
            key = tuple(ent[t] for t in diag_positions)
            groups.setdefault(key, []).append((pos, ent))
        self.by_diag = {k: tuple(v) for k, v in groups.items()}


class MatrixSpace:
    """All n x n upper triangular matrices over a ring, with a twisted product.

    Entries are stored row-major over the upper triangle:
    ``(1,1),(1,2),...,(1,n),(2,2),...,(n,n)``.  The matrix index treats
    that entry sequence as base-``order`` digits, first entry most
    significant; enumeration order is ascending index.
    """

    __slots__ = (
        "ring", "sigma", "n", "positions", "pos_index", "diag_positions",
        "num_entries", "total", "sig_pow", "unit_mask", "is_local",
        "identity_entries", "zero_entries", "_terms", "_solve_tables", "_idem",
    )

    def __init__(self, ring: FiniteRing, sigma: Endomorphism, n: int):
        if sigma.ring is not ring:
            raise MatrixError("endomorphism is defined on a different ring")
        if n < 1:
            raise MatrixError(f"matrix dimension must be positive, got {n}")
        self.ring = ring
        self.sigma = sigma
        self.n = n
        self.positions = tuple(
            (i, j) for i in range(1, n + 1) for j in range(i, n + 1)
        )
        self.pos_index = {p: t for t, p in enumerate(self.positions)}
        self.diag_positions = tuple(self.pos_index[(i, i)] for i in range(1, n + 1))
        self.num_entries = len(self.positions)
        self.total = ring.order ** self.num_entries

        powers = [tuple(range(ring.order))]
        for _ in range(n - 1):
            powers.append(tuple(sigma.image[v] for v in powers[-1]))
        self.sig_pow = tuple(powers)

        ana = analyze(ring)
        self.unit_mask = tuple(x in ana.units for x in range(ring.order))
        self.is_local = ana.is_local

        ident = [0] * self.num_entries
        for t in self.diag_positions:
            ident[t] = ring.one
        self.identity_entries = tuple(ident)
        self.zero_entries = (0,) * self.num_entries

        self._terms = tuple(
            tuple(
                (self.pos_index[(i, k)], k - i, self.pos_index[(k, j)])
                for k in range(i, j + 1)
            )
            for (i, j) in self.positions
        )
        self._solve_tables: dict[tuple[int, int], tuple[Optional[int], ...]] = {}
        self._idem: Optional[IdempotentTable] = None

    # -- matrix construction -------------------------------------------------

    def matrix(self, entries: Sequence[int]) -> "TriMatrix":
        ent = tuple(int(v) for v in entries)
        if len(ent) != self.num_entries:
            raise MatrixError(
                f"expected {self.num_entries} upper-triangle entries, got {len(ent)}"
            )
        for t, v in enumerate(ent):
            if not 0 <= v < self.ring.order:
                i, j = self.positions[t]
                raise MatrixError(
                    f"entry ({i},{j}) = {v} is not an element of {self.ring.label} "
                    f"(order {self.ring.order})"
                )
        return TriMatrix(self, ent)

    def from_rows(self, rows: Sequence[Sequence[int]]) -> "TriMatrix":
        n = self.n
        if len(rows) != n or any(len(r) != n for r in rows):
            raise MatrixError(f"expected an {n}x{n} row matrix")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != 0:
                    raise MatrixError(
                        f"entry ({i + 1},{j + 1}) = {rows[i][j]} below the diagonal must be 0"
                    )
        return self.matrix([rows[i - 1][j - 1] for (i, j) in self.positions])

    def identity(self) -> "TriMatrix":
        return TriMatrix(self, self.identity_entries)

    def zero_matrix(self) -> "TriMatrix":
        return TriMatrix(self, self.zero_entries)

    def entries_from_index(self, index: int) -> tuple[int, ...]:
        q = self.ring.order
        out = []
        for _ in range(self.num_entries):
            index, digit = divmod(index, q)
            out.append(digit)
        return tuple(reversed(out))

    def from_index(self, index: int) -> "TriMatrix":
        if not 0 <= index < self.total:
            raise MatrixError(f"matrix index {index} out of range 0..{self.total - 1}")
        return TriMatrix(self, self.entries_from_index(index))

    def index_of(self, entries: Sequence[int]) -> int:
        q = self.ring.order
        acc = 0
        for v in entries:
            acc = acc * q + v
        return acc

    # -- arithmetic on raw entry tuples --------------------------------------

    def mul_entries(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        add, mul = self.ring.add, self.ring.mul
        sig = self.sig_pow
        out = []
        for terms in self._terms:
            acc = 0
            for pa, p, pb in terms:
                acc = add[acc][mul[x[pa]][sig[p][y[pb]]]]
            out.append(acc)
        return tuple(out)

    def add_entries(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        add = self.ring.add
        return tuple(add[a][b] for a, b in zip(x, y))

    def sub_entries(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        add, neg = self.ring.add, self.ring.neg
        return tuple(add[a][neg[b]] for a, b in zip(x, y))

    def neg_entries(self, x: Sequence[int]) -> tuple[int, ...]:
        neg = self.ring.neg
        return tuple(neg[a] for a in x)

    def diag(self, entries: Sequence[int]) -> tuple[int, ...]:
        return tuple(entries[t] for t in self.diag_positions)

    def is_unit_entries(self, entries: Sequence[int]) -> bool:
        # valid over any ring: a triangular matrix is invertible exactly
        # when its diagonal entries are (back-substitution both ways)
        um = self.unit_mask
        return all(um[entries[t]] for t in self.diag_positions)

    def invert_entries(self, x: Sequence[int]) -> Optional[tuple[int, ...]]:
        inverses = analyze(self.ring).inverses
        add, mul, neg = self.ring.add, self.ring.mul, self.ring.neg
        sig = self.sig_pow
        pos = self.pos_index
        n = self.n
        out: list[int] = [0] * self.num_entries
        for i in range(1, n + 1):
            d = inverses[x[pos[(i, i)]]]
            if d is None:
                return None
            out[pos[(i, i)]] = d
        for j in range(1, n + 1):
            for i in range(j - 1, 0, -1):
                s = 0
                for k in range(i + 1, j + 1):
                    s = add[s][mul[x[pos[(i, k)]]][sig[k - i][out[pos[(k, j)]]]]]
                out[pos[(i, j)]] = mul[inverses[x[pos[(i, i)]]]][neg[s]]
        b = tuple(out)
        if (self.mul_entries(x, b) != self.identity_entries
                or self.mul_entries(b, x) != self.identity_entries):
            return None
        return b

    def solve_table(self, a: int, c: int) -> tuple[Optional[int], ...]:
        """First-preimage table of x -> a*x - x*c, cached per (a, c)."""
        key = (a, c)
        table = self._solve_tables.get(key)
        if table is None:
            add, mul, neg = self.ring.add, self.ring.mul, self.ring.neg
            tab: list[Optional[int]] = [None] * self.ring.order
            for x in range(self.ring.order):
                v = add[mul[a][x]][neg[mul[x][c]]]
                if tab[v] is None:
                    tab[v] = x
            table = tuple(tab)
            self._solve_tables[key] = table
        return table

    # -- idempotent enumeration ----------------------------------------------

    def idempotents(self, budget: int = DEFAULT_BUDGET) -> IdempotentTable:
        """Filter all matrices for E*E = E; cached after the first call."""
        if self.total > budget:
            raise BudgetExceededError(self.total, budget)
        if self._idem is None:
            self._idem = IdempotentTable(self._enumerate_idempotents(), self.diag_positions)
        return self._idem

    def _enumerate_idempotents(self) -> list[tuple[int, ...]]:
        q = self.ring.order
        m = self.num_entries
        add_np, mul_np = self.ring.np_add, self.ring.np_mul
        sig_np = [np.asarray(p, dtype=np.int32) for p in self.sig_pow]
        weights = [q ** (m - 1 - t) for t in range(m)]
        found: list[tuple[int, ...]] = []
        for start in range(0, self.total, _ENUM_CHUNK):
            idx = np.arange(start, min(start + _ENUM_CHUNK, self.total), dtype=np.int64)
            digits = [((idx // w) % q).astype(np.int32) for w in weights]
            keep = np.ones(len(idx), dtype=bool)
            for t, terms in enumerate(self._terms):
                acc = None
                for pa, p, pb in terms:
                    prod = mul_np[digits[pa], sig_np[p][digits[pb]]]
                    acc = prod if acc is None else add_np[acc, prod]
                keep &= acc == digits[t]
            sel = np.nonzero(keep)[0]
            for row in zip(*(d[sel] for d in digits)):
                found.append(tuple(int(v) for v in row))
        mul = self.ring.mul
        for ent in found:
            for t in self.diag_positions:
                d = ent[t]
                assert mul[d][d] == d, "idempotent with non-idempotent diagonal"
        return found


_SPACE_CACHE: dict[tuple[int, int, int], MatrixSpace] = {}


def matrix_space(ring: FiniteRing, sigma: Endomorphism, n: int) -> MatrixSpace:
    """Shared MatrixSpace per (ring, sigma, n); reuses solver and idempotent caches."""
    key = (id(ring), id(sigma), n)
    space = _SPACE_CACHE.get(key)
    if space is None or space.ring is not ring or space.sigma is not sigma:
        space = MatrixSpace(ring, sigma, n)
        _SPACE_CACHE[key] = space
    return space


class TriMatrix:
    """An upper triangular matrix bound to a MatrixSpace."""

    __slots__ = ("space", "entries")

    def __init__(self, space: MatrixSpace, entries: tuple[int, ...]):
        self.space = space
        self.entries = entries

    def entry(self, i: int, j: int) -> int:
        n = self.space.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise MatrixError(f"position ({i},{j}) outside a {n}x{n} matrix")
        if i > j:
            return 0
        return self.entries[self.space.pos_index[(i, j)]]

    def rows(self) -> list[list[int]]:
        n = self.space.n
        return [[self.entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]

    def diag(self) -> tuple[int, ...]:
        return self.space.diag(self.entries)

    def pretty(self) -> str:
        fmt = self.space.ring.format_element
        rows = ["[" + ", ".join(fmt(v) for v in row) + "]" for row in self.rows()]
        return "[" + "; ".join(rows) + "]"

    def _check_compatible(self, other: "TriMatrix") -> None:
        a, b = self.space, other.space
        if a is b:
            return
        if a.ring is not b.ring or a.sigma is not b.sigma or a.n != b.n:
            raise MatrixError("matrices live in different spaces")

    def __matmul__(self, other: "TriMatrix") -> "TriMatrix":
        self._check_compatible(other)
        return TriMatrix(self.space, self.space.mul_entries(self.entries, other.entries))

    def __add__(self, other: "TriMatrix") -> "TriMatrix":
        self._check_compatible(other)
        return TriMatrix(self.space, self.space.add_entries(self.entries, other.entries))

    def __sub__(self, other: "TriMatrix") -> "TriMatrix":
        self._check_compatible(other)
        return TriMatrix(self.space, self.space.sub_entries(self.entries, other.entries))

    def __neg__(self) -> "TriMatrix":
        return TriMatrix(self.space, self.space.neg_entries(self.entries))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TriMatrix)
            and self.space is other.space
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((id(self.space), self.entries))

    def __repr__(self) -> str:
        return f"TriMatrix({self.rows()})"


def mat_mul(a: TriMatrix, b: TriMatrix) -> TriMatrix:
    """The twisted product; raises MatrixError on space mismatch."""
    return a @ b


def is_unit_tri(a: TriMatrix) -> bool:
    """Diagonal unit criterion over a local ring."""
    if not a.space.is_local:
        raise NotLocalError(
            f"unit test by diagonal needs a local ring; {a.space.ring.label} is not local"
        )
    return a.space.is_unit_entries(a.entries)


def invert_tri(a: TriMatrix) -> Optional[TriMatrix]:
    """Two-sided inverse by back-substitution, or None."""
    inv = a.space.invert_entries(a.entries)
    return None if inv is None else TriMatrix(a.space, inv)


@dataclass(frozen=True)
class CleanDecomposition:
    """A certified pair (E, U): E idempotent, U a unit, EU = UE.

    kind 'strongly-clean' and 'very-clean-minus' certify A = E + U;
    'very-clean-plus' certifies U = A + E.
    """

    e: TriMatrix
    u: TriMatrix
    kind: str
    case: Optional[str] = None


def verify_decomposition(a: TriMatrix, dec: CleanDecomposition) -> dict[str, bool]:
    """Re-check the four certificate properties independently."""
    space = a.space
    e, u = dec.e.entries, dec.u.entries
    if dec.kind == "very-clean-plus":
        sum_ok = u == space.add_entries(a.entries, e)
    else:
        sum_ok = a.entries == space.add_entries(e, u)
    return {
        "idempotent": space.mul_entries(e, e) == e,
        "commutes": space.mul_entries(e, u) == space.mul_entries(u, e),
        "sum": sum_ok,
        "unit": space.invert_entries(u) is not None,
    }


def _entries_verify(space: MatrixSpace, a: Sequence[int], e: Sequence[int]) -> bool:
    if space.mul_entries(e, e) != tuple(e):
        return False
    if space.mul_entries(e, a) != space.mul_entries(a, e):
        return False
    return space.is_unit_entries(space.sub_entries(a, e))


def _require_local(space: MatrixSpace) -> None:
    if not space.is_local:
        raise NotLocalError(
            f"constructive decomposition needs a local ring; "
            f"{space.ring.label} is not local"
        )


def t2_certificate(space: MatrixSpace, ent: Sequence[int]) -> tuple[str, Optional[tuple[int, ...]]]:
    """Diagonal-pattern construction for n = 2.

    Returns (case, e_entries); e_entries is None exactly when the needed
    equation a*x - x*s(b) = -v (resp. +v) has no solution.  A constructed
    E is re-verified and a failure raises DecompositionError.
    """
    _require_local(space)
    ring = space.ring
    um = space.unit_mask
    a, v, b = ent
    one = ring.one
    x: Optional[int]
    if um[a] and um[b]:
        case, e = "both-units", space.zero_entries
    elif not um[a] and not um[b]:
        case, e = "both-radical", space.identity_entries
    elif um[a]:
        case = "unit-radical"
        if um[ring.sub(a, one)]:
            e = space.identity_entries
        else:
            x = space.solve_table(a, space.sig_pow[1][b])[ring.neg[v]]
            e = None if x is None else (0, x, one)
    else:
        # commutation with E = [[1,x],[0,0]] forces a*x - x*s(b) = v
        # (the other mixed case, E = [[0,x],[0,1]], takes target -v)
        case = "radical-unit"
        if um[ring.sub(b, one)]:
            e = space.identity_entries
        else:
            x = space.solve_table(a, space.sig_pow[1][b])[v]
            e = None if x is None else (one, x, 0)
    if e is not None and not _entries_verify(space, tuple(ent), e):
        raise DecompositionError(
            f"2x2 case {case} produced an invalid decomposition for entries {tuple(ent)}"
        )
    return case, e


def t3_certificate(space: MatrixSpace, ent: Sequence[int]) -> tuple[str, Optional[tuple[int, ...]]]:
    """Eight-way diagonal-pattern construction for n = 3.

    Cases by the (unit?, unit?, unit?) pattern of the diagonal
    (J = radical, U = units), with E and the equations solved:

      1 (J,J,J): E = I
      2 (U,J,J): e12: a11*e12 - e12*s(a22) = -a12;
                 e13: a11*e13 - e13*s2(a33) = e12*s(a23) - a13
      3 (J,U,J): e12: a11*e12 - e12*s(a22) = a12;
                 e23: a22*e23 - e23*s(a33) = -a23;  e13 = -e12*s(e23)
      4 (J,J,U): e23: a22*e23 - e23*s(a33) = a23;
                 e13: a11*e13 - e13*s2(a33) = a13 - a12*s(e23)
      5 (J,U,U): e12: a11*e12 - e12*s(a22) = a12;
                 e13: a11*e13 - e13*s2(a33) = a13 + e12*s(a23)
      6 (U,J,U): e23: a22*e23 - e23*s(a33) = a23;
                 e12: a11*e12 - e12*s(a22) = -a12;  e13 = e12*s(e23)
      7 (U,U,J): e23: a22*e23 - e23*s(a33) = -a23;
                 e13: a11*e13 - e13*s2(a33) = -a13 - a12*s(e23)
      8 (U,U,U): E = 0

    The case-5 right-hand side is a13 + e12*s(a23): equating the (1,3)
    entries of EA and AE forces it, since E has no (2,3) entry there.
    """
    _require_local(space)
    ring = space.ring
    add, mul, neg = ring.add, ring.mul, ring.neg
    um = space.unit_mask
    s1, s2 = space.sig_pow[1], space.sig_pow[2]
    one = ring.one
    a11, a12, a13, a22, a23, a33 = ent
    u1, u2, u3 = um[a11], um[a22], um[a33]

    if u1:
        if u2:
            if u3:
                return "8", space.zero_entries
            e23 = space.solve_table(a22, s1[a33])[neg[a23]]
            if e23 is None:
                return "7", None
            target = neg[add[a13][mul[a12][s1[e23]]]]
            e13 = space.solve_table(a11, s2[a33])[target]
            if e13 is None:
                return "7", None
            case, e = "7", (0, 0, e13, 0, e23, one)
        elif u3:
            e23 = space.solve_table(a22, s1[a33])[a23]
            if e23 is None:
                return "6", None
            e12 = space.solve_table(a11, s1[a22])[neg[a12]]
            if e12 is None:
                return "6", None
            case, e = "6", (0, e12, mul[e12][s1[e23]], one, e23, 0)
        else:
            e12 = space.solve_table(a11, s1[a22])[neg[a12]]
            if e12 is None:
                return "2", None
            target = add[mul[e12][s1[a23]]][neg[a13]]
            e13 = space.solve_table(a11, s2[a33])[target]
            if e13 is None:
                return "2", None
            case, e = "2", (0, e12, e13, one, 0, one)
    elif u2:
        if u3:
            e12 = space.solve_table(a11, s1[a22])[a12]
            if e12 is None:
                return "5", None
            target = add[a13][mul[e12][s1[a23]]]
            e13 = space.solve_table(a11, s2[a33])[target]
            if e13 is None:
                return "5", None
            case, e = "5", (one, e12, e13, 0, 0, 0)
        else:
            e12 = space.solve_table(a11, s1[a22])[a12]
            if e12 is None:
                return "3", None
            e23 = space.solve_table(a22, s1[a33])[neg[a23]]
            if e23 is None:
                return "3", None
            case, e = "3", (one, e12, neg[mul[e12][s1[e23]]], 0, e23, one)
    elif u3:
        e23 = space.solve_table(a22, s1[a33])[a23]
        if e23 is None:
            return "4", None
        target = add[a13][neg[mul[a12][s1[e23]]]]
        e13 = space.solve_table(a11, s2[a33])[target]
        if e13 is None:
            return "4", None
        case, e = "4", (one, 0, e13, one, e23, 0)
    else:
        case, e = "1", space.identity_entries

    if not _entries_verify(space, tuple(ent), e):
        raise DecompositionError(
            f"3x3 case {case} produced an invalid decomposition for entries {tuple(ent)}"
        )
    return case, e


def case5_variants(space: MatrixSpace, ent: Sequence[int]) -> Optional[tuple[bool, bool]]:
    """For a (J,U,U)-diagonal matrix, try both published forms of the case-5
    e13 equation: the corrected right-hand side a13 + e12*s(a23), and the
    as-printed one which collapses to a13 (E has no (2,3) entry).

    Returns (corrected_verifies, printed_verifies), or None when the
    diagonal pattern is not (J,U,U).
    """
    _require_local(space)
    ring = space.ring
    um = space.unit_mask
    s1, s2 = space.sig_pow[1], space.sig_pow[2]
    add, mul = ring.add, ring.mul
    one = ring.one
    a11, a12, a13, a22, a23, a33 = ent
    if um[a11] or not um[a22] or not um[a33]:
        return None
    e12 = space.solve_table(a11, s1[a22])[a12]
    if e12 is None:
        return False, False
    table = space.solve_table(a11, s2[a33])
    ok = []
    for target in (add[a13][mul[e12][s1[a23]]], a13):
        e13 = table[target]
        ok.append(
            e13 is not None
            and _entries_verify(space, tuple(ent), (one, e12, e13, 0, 0, 0))
        )
    return ok[0], ok[1]


def decompose_t2(a: TriMatrix) -> Optional[CleanDecomposition]:
    """Strongly clean decomposition of a 2x2 matrix over a local ring.

    Absent only when the required equation has no solution, i.e. the
    ring fails the surjectivity condition characterizing n = 2.
    """
    space = a.space
    if space.n != 2:
        raise MatrixError(f"decompose_t2 needs n = 2, got n = {space.n}")
    case, e = t2_certificate(space, a.entries)
    if e is None:
        return None
    e_mat = TriMatrix(space, e)
    u_mat = TriMatrix(space, space.sub_entries(a.entries, e))
    return CleanDecomposition(e_mat, u_mat, "strongly-clean", case=case)


def decompose_t3(a: TriMatrix) -> Optional[CleanDecomposition]:
    """Strongly clean decomposition of a 3x3 matrix over a local ring by
    the eight-case diagonal dispatch; see t3_certificate."""
    space = a.space
    if space.n != 3:
        raise MatrixError(f"decompose_t3 needs n = 3, got n = {space.n}")
    case, e = t3_certificate(space, a.entries)
    if e is None:
        return None
    e_mat = TriMatrix(space, e)
    u_mat = TriMatrix(space, space.sub_entries(a.entries, e))
    return CleanDecomposition(e_mat, u_mat, "strongly-clean", case=case)


def _commutes(space: MatrixSpace, x: Sequence[int], y: Sequence[int]) -> bool:
    add, mul = space.ring.add, space.ring.mul
    sig = space.sig_pow
    for terms in space._terms:
        acc_xy = 0
        acc_yx = 0
        for pa, p, pb in terms:
            acc_xy = add[acc_xy][mul[x[pa]][sig[p][y[pb]]]]
            acc_yx = add[acc_yx][mul[y[pa]][sig[p][x[pb]]]]
        if acc_xy != acc_yx:
            return False
    return True


def brute_force_strongly_clean(
    a: TriMatrix, budget: int = DEFAULT_BUDGET
) -> Optional[CleanDecomposition]:
    """Exhaustive search: the first idempotent E in enumeration order with
    A - E a unit and E(A-E) = (A-E)E, or None.

    Candidates are narrowed by diagonal: an idempotent can only work if
    every diagonal entry e has a_ii - e a unit, and commuting with A - E
    is equivalent to commuting with A.
    """
    space = a.space
    table = space.idempotents(budget)
    ring = space.ring
    ana = analyze(ring)
    um = space.unit_mask
    ring_idems = sorted(ana.idempotents)
    options = []
    for t in space.diag_positions:
        d = a.entries[t]
        admissible = [e for e in ring_idems if um[ring.sub(d, e)]]
        if not admissible:
            return None
        options.append(admissible)
    groups = [
        table.by_diag[key]
        for key in itertools.product(*options)
        if key in table.by_diag
    ]
    if not groups:
        return None
    stream: Iterable[tuple[int, tuple[int, ...]]]
    stream = groups[0] if len(groups) == 1 else heapq.merge(*groups)
    for _, e_ent in stream:
        if _commutes(space, e_ent, a.entries):
            u_ent = space.sub_entries(a.entries, e_ent)
            return CleanDecomposition(
                TriMatrix(space, e_ent), TriMatrix(space, u_ent), "strongly-clean"
            )
    return None


def is_very_clean(a: TriMatrix, budget: int = DEFAULT_BUDGET) -> Optional[CleanDecomposition]:
    """First idempotent E in enumeration order commuting with A such that
    A - E or A + E is a unit; tagged very-clean-minus / very-clean-plus."""
    space = a.space
    table = space.idempotents(budget)
    for e_ent in table.matrices:
        if not _commutes(space, e_ent, a.entries):
            continue
        minus = space.sub_entries(a.entries, e_ent)
        if space.is_unit_entries(minus):
            return CleanDecomposition(
                TriMatrix(space, e_ent), TriMatrix(space, minus), "very-clean-minus"
            )
        plus = space.add_entries(a.entries, e_ent)
        if space.is_unit_entries(plus):
            return CleanDecomposition(
                TriMatrix(space, e_ent), TriMatrix(space, plus), "very-clean-plus"
            )
    return None


def parse_matrix_literal(
    text: str, order: int, n: Optional[int] = None
) -> tuple[int, tuple[int, ...]]:
    """Parse a row-major upper-triangle literal like ``[3,1,0;0,1;2]``.

    Row r (1-based) carries the entries (r,r)..(r,n).  Returns (n, entries).
    """
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    rows = s.split(";")
    size = len(rows)
    if n is not None and n != size:
        raise MatrixError(f"matrix literal has {size} rows but n = {n} was requested")
    if size < 1:
        raise MatrixError("empty matrix literal")
    entries: list[int] = []
    for r, row_text in enumerate(rows, start=1):
        parts = [p.strip() for p in row_text.split(",")]
        expected = size - r + 1
        if len(parts) != expected:
            raise MatrixError(
                f"row {r}: expected {expected} entries for an upper-triangular "
                f"{size}x{size} matrix, got {len(parts)}"
            )
        for c, tok in enumerate(parts, start=r):
            try:
                v = int(tok)
            except ValueError:
                raise MatrixError(f"entry ({r},{c}): {tok!r} is not an element index")
            if not 0 <= v < order:
                raise MatrixError(
                    f"entry ({r},{c}) = {v} is out of range for a ring of order {order}"
                )
            entries.append(v)
    return size, tuple(entries)
