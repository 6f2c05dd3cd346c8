"""Eventually periodic labellings of the positive integers.

A :class:`Periodic` describes, for every ``n >= 1``, a *point label*.  For
``n >= threshold`` the label is produced by a *class rule* that depends only on
``n mod period``; below the threshold the labels are listed explicitly.
After :func:`build` the structure is canonical (minimal period, then minimal
threshold), so two structures describe the same labelling iff they compare
equal.

What a label means is decided by a :class:`Kind`: sets use booleans, partial
injections use affine maps, sequences use symbolic track values, and so on.
"""

from __future__ import annotations

from .arith import divisors, lcm


class InvalidAt(ValueError):
    """A class rule cannot be evaluated at the requested index."""


class Kind:
    """Label semantics for one family of periodic objects."""

    empty_label = None
    empty_point = None

    def combine(self, labels: list):
        """Merge class labels contributed by overlapping pieces."""
        raise NotImplementedError

    def combine_points(self, points: list):
        raise NotImplementedError

    def evaluate(self, label, n: int):
        """Point label produced by ``label`` at ``n`` (raise InvalidAt if undefined)."""
        raise NotImplementedError

    def validate(self, label, start: int, step: int) -> None:
        """Raise ValueError unless ``label`` is usable on the progression (start, step)."""

    def split(self, label) -> list:
        """Split a class label into piece payloads (default: one payload)."""
        return [label]


class Periodic:
    __slots__ = ("kind", "T", "M", "classes", "finite", "_hash")

    def __init__(self, kind: Kind, T: int, M: int, classes: tuple, finite: dict):
        self.kind = kind
        self.T = T
        self.M = M
        self.classes = classes
        self.finite = finite
        self._hash = None

    # ---------------------------------------------------------------- access
    def at(self, n: int):
        if n < 1:
            raise ValueError("indices start at 1")
        if n < self.T:
            return self.finite.get(n, self.kind.empty_point)
        return self.kind.evaluate(self.classes[n % self.M], n)

    def class_start(self, r: int) -> int:
        """Smallest n >= T with n == r (mod M)."""
        T, M = self.T, self.M
        return T + (r - T) % M

    def pieces(self):
        """Yield ``(start, step, payload)`` for the periodic part."""
        for r, label in enumerate(self.classes):
            if label != self.kind.empty_label:
                s = self.class_start(r)
                for payload in self.kind.split(label):
                    yield s, self.M, payload

    def points(self):
        return sorted(self.finite.items())

    def refined(self, T2: int, M2: int):
        """Classes and finite part re-expressed with threshold T2 >= T, period M | M2."""
        assert T2 >= self.T and M2 % self.M == 0
        classes = tuple(self.classes[r % self.M] for r in range(M2))
        finite = dict(self.finite)
        empty = self.kind.empty_point
        for n in range(self.T, T2):
            v = self.kind.evaluate(self.classes[n % self.M], n)
            if v != empty:
                finite[n] = v
        return classes, finite

    def has_periodic_part(self) -> bool:
        return any(c != self.kind.empty_label for c in self.classes)

    # ---------------------------------------------------------------- equality
    def key(self):
        return (self.T, self.M, self.classes, tuple(sorted(self.finite.items())))

    def __eq__(self, other):
        return isinstance(other, Periodic) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"Periodic(T={self.T}, M={self.M}, classes={self.classes}, finite={self.finite})"


def build(kind: Kind, pieces, points=()) -> Periodic:
    """Canonical structure from infinite pieces ``(s, m, payload)`` and points ``(n, label)``."""
    pieces = [(int(s), int(m), payload) for s, m, payload in pieces]
    points = list(points)
    for s, m, payload in pieces:
        if s < 1 or m < 1:
            raise ValueError(f"bad progression ({s}, {m})")
        kind.validate(payload, s, m)
    M = lcm(*(m for _, m, _ in pieces)) if pieces else 1
    T = max([s for s, _, _ in pieces] + [n + 1 for n, _ in points] + [1])

    contrib: list[list] = [[] for _ in range(M)]
    for s, m, payload in pieces:
        for r in range(s % m, M, m):
            contrib[r].append(payload)
    empty_label = kind.empty_label
    classes = tuple(kind.combine(c) if c else empty_label for c in contrib)

    below: dict[int, list] = {}
    for s, m, payload in pieces:
        for n in range(s, T, m):
            below.setdefault(n, []).append(kind.evaluate(payload, n))
    for n, label in points:
        if n < 1:
            raise ValueError("indices start at 1")
        below.setdefault(n, []).append(label)
    empty = kind.empty_point
    finite = {}
    for n, labs in below.items():
        v = labs[0] if len(labs) == 1 else kind.combine_points(labs)
        if v != empty:
            finite[n] = v
    return normalize(kind, T, M, classes, finite)


def normalize(kind: Kind, T: int, M: int, classes: tuple, finite: dict) -> Periodic:
    # minimal period of the tail
    for d in divisors(M):
        if d == M:
            break
        if all(classes[r] == classes[r % d] for r in range(d, M)):
            classes = classes[:d]
            M = d
            break
    # minimal threshold
    empty = kind.empty_point
    while T > 1:
        n = T - 1
        try:
            rule = kind.evaluate(classes[n % M], n)
        except InvalidAt:
            break
        if rule != finite.get(n, empty):
            break
        finite.pop(n, None)
        T = n
    return Periodic(kind, T, M, classes, finite)


def combine_classwise(a: Periodic, b: Periodic, op_label, op_point, kind: Kind) -> Periodic:
    """Apply a pointwise binary operation through a common refinement."""
    T = max(a.T, b.T)
    M = lcm(a.M, b.M)
    ca, fa = a.refined(T, M)
    cb, fb = b.refined(T, M)
    classes = tuple(op_label(x, y) for x, y in zip(ca, cb))
    finite = {}
    ea, eb, empty = a.kind.empty_point, b.kind.empty_point, kind.empty_point
    for n in set(fa) | set(fb):
        v = op_point(fa.get(n, ea), fb.get(n, eb))
        if v != empty:
            finite[n] = v
    return normalize(kind, T, M, classes, finite)


def map_labels(a: Periodic, op_label, op_point, kind: Kind) -> Periodic:
    classes = tuple(op_label(c) for c in a.classes)
    finite = {}
    for n, v in a.finite.items():
        w = op_point(v)
        if w != kind.empty_point:
            finite[n] = w
    return normalize(kind, a.T, a.M, classes, finite)
