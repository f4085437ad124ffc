"""Exceptional sequences and antichains, perpendicular categories, thick
closures, braid mutations, and exhaustive enumeration.

Everything here works at the level of positive roots: in finite type each
root names exactly one indecomposable, and the registry answers all Hom and
Ext questions. A sequence is exceptional when nothing maps or extends
backwards; an antichain is a pairwise Hom-orthogonal set of exceptional
modules, and it generates a thick subcategory recorded by the sorted set of
its indecomposables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceededError, NcpqError, ValidationError
from .quiver import Quiver, Vector
from .rep import IndecRegistry, top_simples
from .weyl import (
    RootSystem,
    WeylElement,
    generate_roots,
    identity,
    compose,
    positive_representative,
    reflect,
    simple_root,
)

DEFAULT_SEQUENCE_CAP = 1_000_000


@dataclass(frozen=True)
class ExcSequence:
    """Ordered tuple of positive roots naming registry indecomposables."""

    roots: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(tuple(r) for r in self.roots))

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @classmethod
    def validated(cls, roots: Sequence[Vector], reg: IndecRegistry) -> "ExcSequence":
        seq = cls(tuple(roots))
        if not is_exceptional_sequence(seq.roots, reg):
            raise ValidationError(f"{seq.roots} is not an exceptional sequence")
        return seq

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.roots]


@dataclass(frozen=True)
class Subcategory:
    """Thick exceptional subcategory: indecomposables plus ordered simples."""

    ind_roots: frozenset[Vector]
    simples: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.simples)

    def to_json(self) -> dict:
        return {
            "simples": [list(r) for r in self.simples],
            "indecomposables": [list(r) for r in sorted(self.ind_roots)],
        }


def is_exceptional_sequence(roots: Sequence[Vector], reg: IndecRegistry) -> bool:
    """No Hom and no Ext from any later entry to any earlier one."""
    roots = tuple(roots)
    for r in roots:
        if r not in reg:
            raise ValidationError(f"{r} is not a registered root")
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if reg.hom(roots[j], roots[i]) != 0 or reg.ext(roots[j], roots[i]) != 0:
                return False
    return True


def right_perp(roots: Iterable[Vector], reg: IndecRegistry) -> frozenset[Vector]:
    """Registry roots receiving no Hom and no Ext from any input root."""
    members = tuple(roots)
    for r in members:
        if r not in reg:
            raise ValidationError(f"{r} is not a registered root")
    return frozenset(
        m for m in reg.roots()
        if all(reg.hom(u, m) == 0 and reg.ext(u, m) == 0 for u in members))


def left_perp(roots: Iterable[Vector], reg: IndecRegistry) -> frozenset[Vector]:
    """Registry roots with no Hom and no Ext into any input root."""
    members = tuple(roots)
    for r in members:
        if r not in reg:
            raise ValidationError(f"{r} is not a registered root")
    return frozenset(
        m for m in reg.roots()
        if all(reg.hom(m, u) == 0 and reg.ext(m, u) == 0 for u in members))


def closure_indecomposables(members: Sequence[Vector], reg: IndecRegistry) -> frozenset[Vector]:
    """Indecomposables of the thick closure, via the double perpendicular."""
    return left_perp(right_perp(members, reg), reg)


def _is_nonneg_combination(target: Vector, gens: frozenset[Vector]) -> bool:
    gens_list = sorted(gens)
    memo: dict[Vector, bool] = {}

    def walk(v: Vector) -> bool:
        if all(x == 0 for x in v):
            return True
        cached = memo.get(v)
        if cached is not None:
            return cached
        out = False
        for g in gens_list:
            if all(gi <= vi for gi, vi in zip(g, v)):
                if walk(tuple(vi - gi for vi, gi in zip(v, g))):
                    out = True
                    break
        memo[v] = out
        return out

    return walk(target)


def _subcategory_simples(ind: frozenset[Vector], reg: IndecRegistry) -> tuple[Vector, ...]:
    """Members with no proper subobject inside the subcategory.

    A member m fails to be simple exactly when some other member embeds
    into it with a quotient whose dimension vector stays inside the
    subcategory's nonnegative span.
    """
    simples = []
    for m in sorted(ind):
        simple = True
        for other in sorted(ind):
            if other == m:
                continue
            if not reg.has_injective_hom(other, m):
                continue
            diff = tuple(mi - oi for mi, oi in zip(m, other))
            if _is_nonneg_combination(diff, ind):
                simple = False
                break
        if simple:
            simples.append(m)
    return tuple(simples)


def _ext_quiver_arrows(members: Sequence[Vector], reg: IndecRegistry) -> list[tuple[int, int]]:
    arrows = []
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            if i != j and reg.ext(a, b) != 0:
                arrows.append((i, j))
    return arrows


def order_antichain(antichain: Iterable[Vector], reg: IndecRegistry) -> tuple[Vector, ...]:
    """Order an exceptional antichain into an exceptional sequence:
    topological order of its Ext-quiver, smallest root first among
    incomparables."""
    members = sorted(antichain)
    arrows = _ext_quiver_arrows(members, reg)
    indeg = [0] * len(members)
    for _, j in arrows:
        indeg[j] += 1
    order: list[int] = []
    available = sorted(i for i in range(len(members)) if indeg[i] == 0)
    while available:
        i = available.pop(0)
        order.append(i)
        for s, t in arrows:
            if s == i:
                indeg[t] -= 1
                if indeg[t] == 0 and t not in available:
                    available.append(t)
        available.sort()
    if len(order) != len(members):
        raise ValidationError("Ext-quiver has a cycle; the antichain is not exceptional")
    return tuple(members[i] for i in order)


def _relative_root_count(simples: tuple[Vector, ...], reg: IndecRegistry) -> int:
    """Positive-root count of the quiver whose arrows are the Ext spaces
    between the subcategory's simples."""
    r = len(simples)
    arrows = []
    for i in range(r):
        for j in range(r):
            if i != j:
                arrows.extend([(i + 1, j + 1)] * reg.ext(simples[i], simples[j]))
    rel = Quiver(r, tuple(arrows))
    rel_roots = generate_roots(rel)
    if not rel_roots.complete:
        raise NcpqError("relative quiver of a subcategory is not finite type")
    return len(rel_roots.positive_real_roots)


def thick_closure(seq: ExcSequence, reg: IndecRegistry) -> Subcategory:
    """Thick closure of an exceptional sequence, with its simples.

    Checks the double-perpendicular fixpoint, that the number of simples
    equals the sequence length, and that the closure has exactly as many
    indecomposables as the root system of its Ext-quiver predicts.
    """
    members = seq.roots
    if not is_exceptional_sequence(members, reg):
        raise ValidationError("input is not an exceptional sequence")
    ind = closure_indecomposables(members, reg)
    if closure_indecomposables(tuple(sorted(ind)), reg) != ind:
        raise NcpqError("double-perpendicular fixpoint failed; this is a bug")
    if not set(members) <= ind:
        raise NcpqError("closure lost a generator; this is a bug")
    simples = _subcategory_simples(ind, reg)
    if len(simples) != len(members):
        raise NcpqError(
            f"closure of a length-{len(members)} sequence has {len(simples)} simples")
    ordered = order_antichain(simples, reg)
    if not is_exceptional_sequence(ordered, reg):
        raise NcpqError("subcategory simples do not order into an exceptional sequence")
    if members and _relative_root_count(ordered, reg) != len(ind):
        raise NcpqError("closure size disagrees with its relative root count")
    return Subcategory(ind, ordered)


def braid_mutate(seq: ExcSequence, i: int, inverse: bool, reg: IndecRegistry) -> ExcSequence:
    """Braid move on a complete exceptional sequence.

    The mutated slot is the unique indecomposable whose root is the
    (sign-normalized) reflection of one neighbor's root at the other.
    """
    n = reg.quiver.n
    if len(seq) != n:
        raise ValidationError("braid mutation is defined on complete sequences")
    if not 1 <= i <= len(seq) - 1:
        raise ValidationError(f"mutation index {i} out of range 1..{len(seq) - 1}")
    q = reg.quiver
    a, b = seq.roots[i - 1], seq.roots[i]
    if inverse:
        pair = (positive_representative(reflect(q, a, b)), a)
    else:
        pair = (b, positive_representative(reflect(q, b, a)))
    for r in pair:
        if r not in reg:
            raise NcpqError(f"mutated vector {r} is not a root; this is a bug")
    roots = seq.roots[: i - 1] + pair + seq.roots[i + 1:]
    if not is_exceptional_sequence(roots, reg):
        raise NcpqError("mutation produced a non-exceptional sequence; this is a bug")
    return ExcSequence(roots)


def extend_to_complete(seq: ExcSequence, reg: IndecRegistry) -> ExcSequence:
    """Complete a sequence by prepending, smallest usable root first.

    Candidates are the roots receiving no Hom and no Ext from the current
    members, which is exactly the condition for prepending to preserve
    exceptionality.
    """
    if not is_exceptional_sequence(seq.roots, reg):
        raise ValidationError("input is not an exceptional sequence")
    n = reg.quiver.n
    current = list(seq.roots)
    while len(current) < n:
        candidates = sorted(right_perp(current, reg))
        if not candidates:
            raise NcpqError("no completion exists; this is a bug in finite type")
        current.insert(0, candidates[0])
    result = ExcSequence(tuple(current))
    if not is_exceptional_sequence(result.roots, reg):
        raise NcpqError("completion failed validation; this is a bug")
    return result


def is_projective_sequence(roots: Sequence[Vector], reg: IndecRegistry) -> bool:
    """Support grows by one vertex per step, each entry is projective
    relative to the support so far, and its top avoids the previous
    support."""
    roots = tuple(roots)
    for r in roots:
        if r not in reg:
            raise ValidationError(f"{r} is not a registered root")
    n = reg.quiver.n
    prev_support: frozenset[int] = frozenset()
    for step, root in enumerate(roots, 1):
        support = prev_support | {v + 1 for v, x in enumerate(root) if x > 0}
        if len(support) != step:
            return False
        if any(reg.ext(root, simple_root(n, v)) != 0 for v in support):
            return False
        if top_simples(reg[root]) & prev_support:
            return False
        prev_support = support
    return True


def enumerate_complete_sequences(q: Quiver, reg: IndecRegistry,
                                 cap: int = DEFAULT_SEQUENCE_CAP) -> set[ExcSequence]:
    """All complete exceptional sequences, by backtracking with pairwise
    pruning."""
    roots = reg.roots()
    can_follow = {
        a: frozenset(b for b in roots if reg.hom(a, b) == 0 and reg.ext(a, b) == 0)
        for a in roots
    }
    results: set[ExcSequence] = set()
    chosen: list[Vector] = []

    def backtrack():
        if len(chosen) == q.n:
            if len(results) >= cap:
                raise CapExceededError(f"sequence count exceeds cap {cap}")
            results.add(ExcSequence(tuple(chosen)))
            return
        for x in roots:
            if all(e in can_follow[x] for e in chosen):
                chosen.append(x)
                backtrack()
                chosen.pop()

    backtrack()
    return results


def enumerate_exceptional_antichains(q: Quiver, reg: IndecRegistry) -> set[frozenset[Vector]]:
    """All pairwise Hom-orthogonal root sets whose Ext-quiver is acyclic,
    including the empty one."""
    roots = reg.roots()
    k = len(roots)
    orthogonal = [[reg.hom(roots[i], roots[j]) == 0 and reg.hom(roots[j], roots[i]) == 0
                   for j in range(k)] for i in range(k)]
    found: set[frozenset[Vector]] = set()
    chosen: list[int] = []

    def backtrack(start: int):
        members = tuple(roots[i] for i in chosen)
        if _acyclic(members):
            found.add(frozenset(members))
        for nxt in range(start, k):
            if all(orthogonal[i][nxt] for i in chosen):
                chosen.append(nxt)
                backtrack(nxt + 1)
                chosen.pop()

    def _acyclic(members: tuple[Vector, ...]) -> bool:
        arrows = _ext_quiver_arrows(members, reg)
        indeg = [0] * len(members)
        for _, j in arrows:
            indeg[j] += 1
        queue = [i for i in range(len(members)) if indeg[i] == 0]
        seen = 0
        while queue:
            i = queue.pop()
            seen += 1
            for s, t in arrows:
                if s == i:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        return seen == len(members)

    backtrack(0)
    return found


def slot_fillers(seq: ExcSequence, i: int, reg: IndecRegistry) -> frozenset[Vector]:
    """Roots that make the sequence exceptional when put in slot i (1-based)."""
    if not 1 <= i <= len(seq):
        raise ValidationError(f"slot {i} out of range 1..{len(seq)}")
    out = []
    for x in reg.roots():
        candidate = seq.roots[: i - 1] + (x,) + seq.roots[i:]
        if is_exceptional_sequence(candidate, reg):
            out.append(x)
    return frozenset(out)


def sequence_product(roots_seq: Sequence[Vector], rootsystem: RootSystem) -> WeylElement:
    """Product of the reflections at the given roots, left to right."""
    result = identity(rootsystem.n)
    for r in roots_seq:
        result = compose(result, rootsystem.reflection(r).element)
    return result


def mutation_graph(seqs: set[ExcSequence], reg: IndecRegistry):
    """Mutation edges between complete sequences, as index pairs into the
    sorted node list. Asserts product invariance on every edge."""
    nodes = sorted(seqs, key=lambda s: s.roots)
    index = {s.roots: i for i, s in enumerate(nodes)}
    rootsystem = reg.rootsystem
    edges: set[tuple[int, int]] = set()
    for s in nodes:
        base_product = sequence_product(s.roots, rootsystem)
        for i in range(1, len(s)):
            neighbor = braid_mutate(s, i, False, reg)
            if sequence_product(neighbor.roots, rootsystem) != base_product:
                raise NcpqError("mutation changed the reflection product; this is a bug")
            j = index.get(neighbor.roots)
            if j is None:
                raise ValidationError("mutation left the given sequence set")
            a, b = index[s.roots], j
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return nodes, edges


def is_connected(node_count: int, edges: set[tuple[int, int]]) -> bool:
    if node_count <= 1:
        return True
    adj: dict[int, list[int]] = {i: [] for i in range(node_count)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == node_count
