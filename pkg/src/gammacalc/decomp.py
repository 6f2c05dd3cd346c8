"""Splitting finite band matrices into pieces with one entry per row and column.

:func:`reduce_rows` lowers the maximal row count ``r(A)`` while keeping the
column count ``c(A)``: rows of maximal length are separated, grouped so that
their first columns differ, permuted into the order of those first columns,
and then split by induction on

    M_A = max_j #{i : A[i, h_j(1)] != 0}.

:func:`decompose` repeats this until every row has one entry, then runs the
same procedure on the transposes.  Each component ``C`` carries a witness: a
list of pairs ``(P, Q)`` of 0/1 matrices with ``C = sum P A Q``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .pinj import PInj
from .scalars import Ring, RingValue, ring_by_name
from .seqspace import IdealTag, SymSeq, member


class RowBoundViolated(AssertionError):
    """An intermediate matrix broke the row/column count inequalities."""


class FinMatrix:
    """A sparse ``rows x cols`` matrix over a ring, 1-based."""

    __slots__ = ("rows", "cols", "ring", "entries", "_by_row", "_by_col")

    def __init__(self, rows: int, cols: int, ring: Ring, entries: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self.entries = {}
        for (i, j), v in (entries or {}).items():
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if not v.is_zero():
                self.entries[(i, j)] = v
        self._by_row = None
        self._by_col = None

    @classmethod
    def _raw(cls, rows: int, cols: int, ring: Ring, entries: dict) -> "FinMatrix":
        """Skip the checks; entries are already nonzero and inside the shape."""
        M = cls.__new__(cls)
        M.rows, M.cols, M.ring, M.entries = rows, cols, ring, entries
        M._by_row = M._by_col = None
        return M

    # ---------------------------------------------------------------- construction
    @classmethod
    def diag_set(cls, n: int, support, ring: Ring) -> "FinMatrix":
        one = ring.one()
        return cls(n, n, ring, {(i, i): one for i in support})

    @classmethod
    def identity(cls, n: int, ring: Ring) -> "FinMatrix":
        return cls.diag_set(n, range(1, n + 1), ring)

    @classmethod
    def permutation(cls, n: int, sigma: dict, ring: Ring) -> "FinMatrix":
        """Matrix with ``(i, sigma[i]) = 1`` (identity off the keys), so row i of PA is row sigma[i] of A."""
        one = ring.one()
        return cls(n, n, ring, {(i, sigma.get(i, i)): one for i in range(1, n + 1)})

    # ---------------------------------------------------------------- structure
    def by_row(self) -> dict[int, dict[int, RingValue]]:
        if self._by_row is None:
            out: dict = {}
            for (i, j), v in self.entries.items():
                out.setdefault(i, {})[j] = v
            self._by_row = out
        return self._by_row

    def by_col(self) -> dict[int, dict[int, RingValue]]:
        if self._by_col is None:
            out: dict = {}
            for (i, j), v in self.entries.items():
                out.setdefault(j, {})[i] = v
            self._by_col = out
        return self._by_col

    def r(self) -> int:
        return max((len(x) for x in self.by_row().values()), default=0)

    def c(self) -> int:
        return max((len(x) for x in self.by_col().values()), default=0)

    def N(self) -> int:
        return max(self.r(), self.c())

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "FinMatrix":
        return FinMatrix._raw(self.cols, self.rows, self.ring, {(j, i): v for (i, j), v in self.entries.items()})

    def select_rows(self, rows) -> "FinMatrix":
        rows = set(rows)
        return FinMatrix._raw(self.rows, self.cols, self.ring,
                              {k: v for k, v in self.entries.items() if k[0] in rows})

    def select_cols(self, cols) -> "FinMatrix":
        cols = set(cols)
        return FinMatrix._raw(self.rows, self.cols, self.ring,
                              {k: v for k, v in self.entries.items() if k[1] in cols})

    def __add__(self, other: "FinMatrix") -> "FinMatrix":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return FinMatrix(self.rows, self.cols, self.ring, out)

    def __neg__(self):
        return FinMatrix(self.rows, self.cols, self.ring, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "FinMatrix") -> "FinMatrix":
        if not isinstance(other, FinMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        orow = other.by_row()
        out: dict = {}
        for (i, j), u in self.entries.items():
            for k, v in orow.get(j, {}).items():
                w = u * v
                out[(i, k)] = out[(i, k)] + w if (i, k) in out else w
        return FinMatrix(self.rows, other.cols, self.ring, out)

    def __eq__(self, other):
        return (isinstance(other, FinMatrix) and (self.rows, self.cols) == (other.rows, other.cols)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"FinMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    # ---------------------------------------------------------------- I/O
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "ring": self.ring.name,
                "entries": [[i, j, str(v)] for (i, j), v in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, data: dict, ring: Ring | None = None) -> "FinMatrix":
        ring = ring or ring_by_name(data.get("ring", "Q"))
        ents = {(int(i), int(j)): ring.parse(str(v)) for i, j, v in data["entries"]}
        return cls(int(data["rows"]), int(data["cols"]), ring, ents)

    @classmethod
    def from_csv(cls, text: str, ring: Ring) -> "FinMatrix":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        ncols = max(len(r) for r in rows)
        ents = {}
        for i, row in enumerate(rows, 1):
            for j, x in enumerate(row, 1):
                x = x.strip()
                if x:
                    ents[(i, j)] = ring.parse(x)
        return cls(len(rows), ncols, ring, ents)

    @classmethod
    def load(cls, path: str, ring: Ring | None = None) -> "FinMatrix":
        with open(path) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_json(json.loads(text), ring)
        return cls.from_csv(text, ring or ring_by_name("Q"))


# ---------------------------------------------------------------- witnesses

class PPerm:
    """A 0/1 ``n x m`` matrix with at most one 1 per row and column, stored as ``row -> col``."""

    __slots__ = ("rows", "cols", "pairs")

    def __init__(self, rows: int, cols: int, pairs: dict, copy: bool = True):
        self.rows = rows
        self.cols = cols
        self.pairs = dict(pairs) if copy else pairs

    @classmethod
    def diag(cls, n: int, support) -> "PPerm":
        return cls(n, n, {i: i for i in support})

    @classmethod
    def identity(cls, n: int) -> "PPerm":
        return cls.diag(n, range(1, n + 1))

    def __matmul__(self, other):
        if isinstance(other, PPerm):
            op = other.pairs
            return PPerm(self.rows, other.cols, {i: op[j] for i, j in self.pairs.items() if j in op}, copy=False)
        # (P A)(i, k) = A(pairs[i], k)
        inv = {j: i for i, j in self.pairs.items()}
        return FinMatrix._raw(self.rows, other.cols, other.ring,
                              {(inv[j], k): v for (j, k), v in other.entries.items() if j in inv})

    def __rmatmul__(self, A: FinMatrix) -> FinMatrix:
        # (A Q)(i, k) = A(i, j) where Q(j, k) = 1
        return FinMatrix._raw(A.rows, self.cols, A.ring,
                              {(i, self.pairs[j]): v for (i, j), v in A.entries.items() if j in self.pairs})

    def transpose(self) -> "PPerm":
        return PPerm(self.cols, self.rows, {j: i for i, j in self.pairs.items()})

    def to_matrix(self, ring: Ring) -> FinMatrix:
        one = ring.one()
        return FinMatrix(self.rows, self.cols, ring, {(i, j): one for i, j in self.pairs.items()})

    def __eq__(self, other):
        return isinstance(other, PPerm) and (self.rows, self.cols, self.pairs) == (other.rows, other.cols, other.pairs)

    def __repr__(self):
        return f"PPerm({self.rows}x{self.cols}, {len(self.pairs)} ones)"


@dataclass
class Witness:
    """Pairs ``(P, Q)`` of partial permutation matrices; the component is ``sum P A Q``."""

    pairs: list = field(default_factory=list)

    def apply(self, A: FinMatrix) -> FinMatrix:
        out = FinMatrix(A.rows, A.cols, A.ring)
        for P, Q in self.pairs:
            out = out + (P @ A) @ Q
        return out

    def apply_dense(self, A: FinMatrix) -> FinMatrix:
        """Same as :meth:`apply` through ordinary ring matrix products."""
        out = FinMatrix(A.rows, A.cols, A.ring)
        for P, Q in self.pairs:
            out = out + (P.to_matrix(A.ring) @ A) @ Q.to_matrix(A.ring)
        return out

    def verify(self, A: FinMatrix, C: FinMatrix) -> bool:
        return self.apply(A) == C

    def after(self, inner: "Witness") -> "Witness":
        """Witness relative to A when self is relative to B and B = inner(A)."""
        return Witness([(P @ P2, Q2 @ Q) for P, Q in self.pairs for P2, Q2 in inner.pairs])

    def transposed(self) -> "Witness":
        """Witness for C^t relative to B^t."""
        return Witness([(Q.transpose(), P.transpose()) for P, Q in self.pairs])

    def to_json(self) -> list:
        return [{"P": sorted([i, j] for i, j in P.pairs.items()),
                 "Q": sorted([i, j] for i, j in Q.pairs.items())} for P, Q in self.pairs]


def _rows_pair(A: FinMatrix, rows) -> Witness:
    return Witness([(PPerm.diag(A.rows, rows), PPerm.identity(A.cols))])


def _cols_pair(A: FinMatrix, cols) -> Witness:
    return Witness([(PPerm.identity(A.rows), PPerm.diag(A.cols, cols))])


def _check(parent: FinMatrix, parts, r: int, c: int, strict_rows: bool = True):
    total = FinMatrix(parent.rows, parent.cols, parent.ring)
    for C, _ in parts:
        if (strict_rows and C.r() >= r) or C.r() > r or C.c() > c:
            raise RowBoundViolated(f"component has r={C.r()}, c={C.c()} against r={r}, c={c}")
        total = total + C
    if total != parent:
        raise RowBoundViolated("components do not sum to the matrix")


# ---------------------------------------------------------------- row reduction

def _first_cols(A: FinMatrix) -> dict[int, int]:
    return {i: min(row) for i, row in A.by_row().items()}


def _M(A: FinMatrix, h1: dict[int, int]) -> int:
    cols = A.by_col()
    rows = set(h1)
    return max(sum(1 for i in cols.get(h1[j], {}) if i in rows) for j in h1)


def _induct(A: FinMatrix, trace: list | None) -> list[tuple[FinMatrix, Witness]]:
    """Rows all of length r with strictly increasing first columns; induction on M_A."""
    h1 = _first_cols(A)
    M = _M(A, h1)
    if trace is not None:
        trace.append(("M", M))
    if M == 1:
        H = set(h1.values())
        notH = [j for j in range(1, A.cols + 1) if j not in H]
        out = []
        for part, w in ((A.select_cols(H), _cols_pair(A, H)), (A.select_cols(notH), _cols_pair(A, notH))):
            if not part.is_zero():
                out.append((part, w))
        return out
    I = sorted(h1)
    remaining = set(I)
    lead = []
    while remaining:
        i_n = min(remaining)
        row = A.by_row()[i_n]
        K = {j for j in remaining if h1[j] in row}
        lead.append(i_n)
        remaining -= K
    B = A.select_rows(lead)
    rest = [i for i in I if i not in set(lead)]
    C = A.select_rows(rest)
    MB = _M(B, _first_cols(B))
    if MB != 1:
        raise RowBoundViolated(f"M_B = {MB}, expected 1")
    out = [(part, w.after(_rows_pair(A, lead))) for part, w in _induct(B, trace)]
    if not C.is_zero():
        MC = _M(C, _first_cols(C))
        if MC >= M:
            raise RowBoundViolated(f"M did not decrease ({MC} >= {M})")
        out += [(part, w.after(_rows_pair(A, rest))) for part, w in _induct(C, trace)]
    return out


def _sorted_part(A: FinMatrix, trace) -> list[tuple[FinMatrix, Witness]]:
    """Rows of length r with distinct first columns: permute, then induct."""
    h1 = _first_cols(A)
    positions = sorted(h1)
    by_h = sorted(h1, key=h1.get)
    sigma = dict(zip(positions, by_h))          # row p of A' is row sigma[p] of A
    full = {i: sigma.get(i, i) for i in range(1, A.rows + 1)}
    # rows outside `positions` are zero; fix them so the map is a bijection
    moved = set(sigma.values()) - set(sigma)
    free = sorted(set(sigma) - set(sigma.values()))
    for i, t in zip(sorted(moved), free):
        full[i] = t
    Pi = PPerm(A.rows, A.rows, full)
    Pi_t = Pi.transpose()
    Ap = Pi @ A
    out = []
    for part, w in _induct(Ap, trace):
        back = Pi_t @ part
        pairs = [(Pi_t @ P @ Pi, Q) for P, Q in w.pairs]
        out.append((back, Witness(pairs)))
    return out


def reduce_rows(A: FinMatrix, trace: list | None = None) -> list[tuple[FinMatrix, Witness]]:
    """Components summing to A, each with fewer maximal row entries and no more column entries."""
    r, c = A.r(), A.c()
    if r <= 1:
        return [(A, Witness([(PPerm.identity(A.rows), PPerm.identity(A.cols))]))] \
            if not A.is_zero() else []
    rows = A.by_row()
    I = sorted(i for i, row in rows.items() if len(row) == r)
    short = [i for i in rows if len(rows[i]) < r]
    out = []
    if short:
        out.append((A.select_rows(short), _rows_pair(A, short)))
    h1 = _first_cols(A.select_rows(I))
    groups: list[tuple[list, set]] = []
    for i in I:
        for members, used in groups:
            if h1[i] not in used:
                members.append(i)
                used.add(h1[i])
                break
        else:
            groups.append(([i], {h1[i]}))
    if len(groups) > c:
        raise RowBoundViolated("more groups than the column bound")
    for members, _ in groups:
        At = A.select_rows(members)
        out += [(part, w.after(_rows_pair(A, members))) for part, w in _sorted_part(At, trace)]
    _check(A, out, r, c)
    if trace is not None:
        trace.append(("step", A, [C for C, _ in out]))
    return out


# ---------------------------------------------------------------- full decomposition

@dataclass
class Component:
    alpha: SymSeq
    f: PInj
    matrix: FinMatrix
    witness: Witness


def _to_rows_le_one(A: FinMatrix, w0: Witness, trace) -> list[tuple[FinMatrix, Witness]]:
    done, todo = [], [(A, w0)]
    while todo:
        B, w = todo.pop()
        if B.r() <= 1:
            if not B.is_zero():
                done.append((B, w))
            continue
        for part, w2 in reduce_rows(B, trace):
            todo.append((part, w2.after(w)))
    return done


def nisone(C: FinMatrix) -> tuple[SymSeq, PInj]:
    """``(alpha, f)`` with ``C = diag(alpha) U_f`` for a matrix with one entry per row and column."""
    if C.N() > 1:
        raise RowBoundViolated("band number exceeds one")
    mp, vals = {}, []
    for (i, j), v in sorted(C.entries.items()):
        mp[j] = i
        vals.append((i, v))
    alpha = SymSeq.make(C.ring, (), vals) if vals else SymSeq.zero(C.ring)
    return alpha, PInj.from_dict(mp)


def decompose(A: FinMatrix, verify: bool = True, trace: list | None = None) -> list[Component]:
    """Components with band number at most one summing exactly to A."""
    n_r, n_c = A.rows, A.cols
    ident = Witness([(PPerm.identity(n_r), PPerm.identity(n_c))])
    stage1 = _to_rows_le_one(A, ident, trace)
    out = []
    for B, wB in stage1:
        Bt = B.transpose()
        It = Witness([(PPerm.identity(Bt.rows), PPerm.identity(Bt.cols))])
        for Ct, wt in _to_rows_le_one(Bt, It, trace):
            C = Ct.transpose()
            if C.c() > B.c() or C.r() > 1:
                raise RowBoundViolated("transpose stage broke the bounds")
            w = wt.transposed().after(wB)
            alpha, f = nisone(C)
            out.append(Component(alpha, f, C, w))
    if verify:
        total = FinMatrix(n_r, n_c, A.ring)
        for comp in out:
            if comp.matrix.N() > 1 or not comp.witness.verify(A, comp.matrix):
                raise RowBoundViolated("witness does not reproduce its component")
            total = total + comp.matrix
        if total != A:
            raise RowBoundViolated("components do not sum to the matrix")
    return out


def decompose_preserves(A: FinMatrix, tag: IdealTag) -> bool:
    """Whenever the entry list of A lies in the ideal, so does each component's."""
    entries = list(A.entries.values())
    if not entries:
        return True
    a_in = member(SymSeq.from_list(entries), tag)
    if not a_in:
        return True
    return all(member(c.alpha, tag) for c in decompose(A))
