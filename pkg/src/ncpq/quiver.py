"""Acyclic quivers, the bilinear forms they induce, and type classification.

The convention fixed here and used everywhere else in the package: an arrow
(h, t) is a linear map from the vector space at h to the vector space at t,
and the nonsymmetric bilinear form on dimension vectors is

    form(v, w) = sum_i v[i] * w[i] - sum_{(h, t)} v[h] * w[t].

Its symmetrization has Gram matrix the generalized Cartan matrix of the
underlying graph, which is what the finite/affine/indefinite trichotomy is
decided on (by exact integer arithmetic, never floats).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._linalg import IntMatrix, det_bareiss, frac_mat_rank
from .errors import QuiverParseError, ValidationError

Vector = tuple[int, ...]
Arrow = tuple[int, int]


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph with vertices 1..n and no oriented cycles.

    Parallel arrows are repeated entries; loops are rejected. Arrows are
    stored sorted, so equality is by (n, multiset of arrows).
    """

    n: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("vertex count must be at least 1")
        arrows = tuple(sorted((int(h), int(t)) for h, t in self.arrows))
        object.__setattr__(self, "arrows", arrows)
        for h, t in arrows:
            if not (1 <= h <= self.n and 1 <= t <= self.n):
                raise ValidationError(f"arrow ({h}, {t}) has a vertex outside 1..{self.n}")
            if h == t:
                raise ValidationError(f"loop arrow at vertex {h}")
        if self._has_cycle():
            raise ValidationError("quiver has an oriented cycle")

    def _has_cycle(self) -> bool:
        indeg = {v: 0 for v in range(1, self.n + 1)}
        for _, t in self.arrows:
            indeg[t] += 1
        queue = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for h, t in self.arrows:
                if h == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        return seen != self.n

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def arrow_indices_from(self, v: int) -> tuple[int, ...]:
        return tuple(k for k, (h, _) in enumerate(self.arrows) if h == v)

    def arrow_indices_into(self, v: int) -> tuple[int, ...]:
        return tuple(k for k, (_, t) in enumerate(self.arrows) if t == v)

    def is_sink(self, v: int) -> bool:
        return not any(h == v for h, _ in self.arrows)

    def is_source(self, v: int) -> bool:
        return not any(t == v for _, t in self.arrows)


def parse_quiver(text: str) -> Quiver:
    """Parse the quiver file format: `vertices <n>` then `arrow <h> <t>` lines.

    `#` starts a comment; blank lines are ignored. Errors report the
    offending line number where one exists.
    """
    n: int | None = None
    arrows: list[Arrow] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertices":
            if n is not None:
                raise QuiverParseError("duplicate vertices line", lineno)
            if len(tokens) != 2:
                raise QuiverParseError("expected: vertices <n>", lineno)
            try:
                n = int(tokens[1])
            except ValueError:
                raise QuiverParseError(f"invalid vertex count {tokens[1]!r}", lineno)
            if n < 1:
                raise QuiverParseError("vertex count must be at least 1", lineno)
        elif tokens[0] == "arrow":
            if n is None:
                raise QuiverParseError("arrow before vertices line", lineno)
            if len(tokens) != 3:
                raise QuiverParseError("expected: arrow <h> <t>", lineno)
            try:
                h, t = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise QuiverParseError("arrow endpoints must be integers", lineno)
            if not (1 <= h <= n and 1 <= t <= n):
                raise QuiverParseError(f"vertex index out of range 1..{n}", lineno)
            if h == t:
                raise QuiverParseError(f"loop arrow at vertex {h}", lineno)
            arrows.append((h, t))
        else:
            raise QuiverParseError(f"unknown keyword {tokens[0]!r}", lineno)
    if n is None:
        raise QuiverParseError("missing vertices line")
    try:
        return Quiver(n, tuple(arrows))
    except ValidationError as exc:
        raise QuiverParseError(str(exc)) from exc


def _check_dims(q: Quiver, *vectors: Vector) -> None:
    for v in vectors:
        if len(v) != q.n:
            raise ValidationError(f"vector of length {len(v)} for a quiver with {q.n} vertices")


def euler_form(q: Quiver, v: Vector, w: Vector) -> int:
    """Nonsymmetric bilinear form: vertex terms minus one term per arrow."""
    _check_dims(q, v, w)
    total = sum(a * b for a, b in zip(v, w))
    for h, t in q.arrows:
        total -= v[h - 1] * w[t - 1]
    return total


def symmetric_form(q: Quiver, v: Vector, w: Vector) -> int:
    return euler_form(q, v, w) + euler_form(q, w, v)


@dataclass(frozen=True)
class CartanMatrix:
    """Symmetric integer matrix with 2s on the diagonal, nonpositive elsewhere."""

    entries: IntMatrix

    def __post_init__(self):
        n = len(self.entries)
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        for i in range(n):
            if len(entries[i]) != n:
                raise ValidationError("Cartan matrix must be square")
            if entries[i][i] != 2:
                raise ValidationError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if entries[i][j] != entries[j][i]:
                    raise ValidationError("Cartan matrix must be symmetric")
                if i != j and entries[i][j] > 0:
                    raise ValidationError("off-diagonal Cartan entries must be <= 0")

    @property
    def n(self) -> int:
        return len(self.entries)


def cartan_matrix(q: Quiver) -> CartanMatrix:
    basis = [tuple(1 if k == i else 0 for k in range(q.n)) for i in range(q.n)]
    entries = tuple(
        tuple(symmetric_form(q, basis[i], basis[j]) for j in range(q.n))
        for i in range(q.n)
    )
    return CartanMatrix(entries)


@dataclass(frozen=True)
class Classification:
    kind: str  # "finite" | "affine" | "indefinite"
    label: str | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"Finite({self.label})"
        return self.kind.capitalize()


def _principal_minor_sums(entries: IntMatrix) -> list[int]:
    """Sums of k-by-k principal minors for k = 1..n.

    For a symmetric matrix these are the elementary symmetric functions of
    the eigenvalues, so positivity decides definiteness exactly.
    """
    n = len(entries)
    sums = []
    for k in range(1, n + 1):
        total = 0
        for subset in combinations(range(n), k):
            sub = tuple(tuple(entries[i][j] for j in subset) for i in subset)
            total += det_bareiss(sub)
        sums.append(total)
    return sums


def _components(entries: IntMatrix) -> list[list[int]]:
    n = len(entries)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            v = stack.pop()
            for u in range(n):
                if u not in seen and entries[v][u] != 0 and u != v:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _dynkin_component_label(entries: IntMatrix, comp: list[int]) -> str:
    """ADE label of one positive definite component of the underlying graph."""
    size = len(comp)
    adj = {v: [u for u in comp if u != v and entries[v][u] != 0] for v in comp}
    degrees = sorted(len(adj[v]) for v in comp)
    if not degrees or degrees[-1] <= 2:
        return f"A{size}"
    center = next(v for v in comp if len(adj[v]) == 3)
    legs = []
    for first in adj[center]:
        length = 1
        prev, cur = center, first
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[:2] == [1, 1]:
        return f"D{size}"
    if legs in ([1, 2, 2], [1, 2, 3], [1, 2, 4]):
        return f"E{size}"
    raise ValidationError("positive definite graph is not of ADE shape")


def classify_type(c: CartanMatrix) -> Classification:
    """Finite / affine / indefinite trichotomy, decided exactly.

    Finite = positive definite (all principal minor sums positive); affine
    = positive semidefinite with each connected component of corank at most
    one and at least one of corank exactly one; anything else is indefinite.
    """
    sums = _principal_minor_sums(c.entries)
    if all(s > 0 for s in sums):
        comps = _components(c.entries)
        labels = sorted(_dynkin_component_label(c.entries, comp) for comp in comps)
        return Classification("finite", "+".join(labels))
    if all(s >= 0 for s in sums):
        coranks = []
        for comp in _components(c.entries):
            sub = [[c.entries[i][j] for j in comp] for i in comp]
            coranks.append(len(comp) - frac_mat_rank(sub, len(comp)))
        if max(coranks) <= 1:
            return Classification("affine")
    return Classification("indefinite")


def positive_root_count(label: str) -> int:
    """Number of positive roots for a (possibly disconnected) Dynkin label."""
    exceptional = {"E6": 36, "E7": 63, "E8": 120}
    total = 0
    for part in label.split("+"):
        letter, rank_ = part[0], int(part[1:])
        if letter == "A":
            total += rank_ * (rank_ + 1) // 2
        elif letter == "D":
            total += rank_ * (rank_ - 1)
        elif part in exceptional:
            total += exceptional[part]
        else:
            raise ValidationError(f"unknown Dynkin label {part!r}")
    return total


def topological_order(q: Quiver) -> tuple[int, ...]:
    """Deterministic topological order: every arrow head precedes its tail
    vertex, smallest label first among the available vertices."""
    indeg = {v: 0 for v in q.vertices}
    for _, t in q.arrows:
        indeg[t] += 1
    order = []
    available = sorted(v for v, d in indeg.items() if d == 0)
    while available:
        v = available.pop(0)
        order.append(v)
        for h, t in q.arrows:
            if h == v:
                indeg[t] -= 1
                if indeg[t] == 0 and t not in available:
                    available.append(t)
        available.sort()
    if len(order) != q.n:
        raise ValidationError("quiver has an oriented cycle")
    return tuple(order)


def is_admissible_order(q: Quiver, order: tuple[int, ...]) -> bool:
    """True when `order` is a permutation putting every arrow's source
    before its target, which is exactly when the simples listed in that
    order form an exceptional sequence."""
    if sorted(order) != list(q.vertices):
        return False
    pos = {v: k for k, v in enumerate(order)}
    return all(pos[h] < pos[t] for h, t in q.arrows)
