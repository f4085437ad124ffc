"""Real roots, reflections, Weyl-group arithmetic, absolute order, and the
non-crossing partition interval below a Coxeter element.

Group elements are exact integer matrices acting on the root lattice in the
basis of simple roots; products compose left to right, i.e. the product
a*b applies b first. Whole-group operations refuse to run outside finite
type rather than truncate silently; bounded exploration is opt-in.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ._linalg import IntMatrix, frac_mat_rank, identity_matrix, mat_inverse, mat_mul, mat_vec
from .errors import (
    CapExceededError,
    NcpqError,
    NonFiniteTypeError,
    SearchExhaustedError,
    ValidationError,
)
from .quiver import (
    Classification,
    Quiver,
    Vector,
    cartan_matrix,
    classify_type,
    is_admissible_order,
    symmetric_form,
)

DEFAULT_HEIGHT_BOUND = 100
DEFAULT_GROUP_CAP = 1_000_000


@dataclass(frozen=True)
class WeylElement:
    """Invertible integer matrix acting on the root lattice."""

    matrix: IntMatrix

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Vector) -> Vector:
        return mat_vec(self.matrix, v)

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.matrix]


def identity(n: int) -> WeylElement:
    return WeylElement(identity_matrix(n))


def compose(a: WeylElement, b: WeylElement) -> WeylElement:
    """Product a*b; applied to a vector, b acts first."""
    if a.n != b.n:
        raise ValidationError("composing elements of different rank")
    return WeylElement(mat_mul(a.matrix, b.matrix))


def inverse(a: WeylElement) -> WeylElement:
    return WeylElement(mat_inverse(a.matrix))


@dataclass(frozen=True)
class Reflection:
    """Reflection at a positive real root, with its matrix."""

    root: Vector
    element: WeylElement


def is_positive(v: Vector) -> bool:
    return any(x != 0 for x in v) and all(x >= 0 for x in v)


def is_negative(v: Vector) -> bool:
    return any(x != 0 for x in v) and all(x <= 0 for x in v)


def positive_representative(v: Vector) -> Vector:
    """The positive vector among v and -v; rejects mixed signs."""
    if is_positive(v):
        return v
    if is_negative(v):
        return tuple(-x for x in v)
    raise NcpqError(f"vector {v} is neither positive nor negative")


def reflect(q: Quiver, alpha: Vector, w: Vector) -> Vector:
    """Image of w under the reflection at alpha: w - (alpha, w) alpha."""
    s = symmetric_form(q, alpha, w)
    return tuple(wi - s * ai for wi, ai in zip(w, alpha))


def make_reflection(q: Quiver, alpha: Vector) -> Reflection:
    """Build the reflection at a positive real root, validating both facts."""
    if not is_positive(alpha):
        raise ValidationError(f"reflection root {alpha} is not positive")
    if symmetric_form(q, alpha, alpha) != 2:
        raise ValidationError(f"{alpha} is not a real root: (a, a) != 2")
    cart = cartan_matrix(q).entries
    weights = tuple(sum(cart[i][j] * alpha[i] for i in range(q.n)) for j in range(q.n))
    matrix = tuple(
        tuple((1 if i == j else 0) - alpha[i] * weights[j] for j in range(q.n))
        for i in range(q.n)
    )
    return Reflection(alpha, WeylElement(matrix))


def simple_root(n: int, i: int) -> Vector:
    return tuple(1 if k == i - 1 else 0 for k in range(n))


class RootSystem:
    """Positive real roots of a quiver, possibly truncated by height.

    `complete` is True only when the type is finite and the reflection
    closure stabilized below the height bound; otherwise the set is an
    explicit truncation. Instances are immutable apart from internal memo
    tables (reflections, absolute lengths) which are plain dicts and safe
    to fill concurrently under the GIL.
    """

    def __init__(self, quiver: Quiver, positive_real_roots: frozenset[Vector],
                 complete: bool, height_bound: int,
                 classification: Classification):
        self.quiver = quiver
        self.positive_real_roots = positive_real_roots
        self.complete = complete
        self.height_bound = height_bound
        self.classification = classification
        self.cartan = cartan_matrix(quiver).entries
        self._reflections: dict[Vector, Reflection] = {}
        self._abs_len: dict[IntMatrix, int] = {}

    @property
    def n(self) -> int:
        return self.quiver.n

    def sorted_roots(self) -> tuple[Vector, ...]:
        return tuple(sorted(self.positive_real_roots))

    def reflection(self, root: Vector) -> Reflection:
        if root not in self.positive_real_roots:
            raise ValidationError(f"{root} is not a known positive real root")
        refl = self._reflections.get(root)
        if refl is None:
            refl = make_reflection(self.quiver, root)
            self._reflections[root] = refl
        return refl

    def reflections(self) -> tuple[Reflection, ...]:
        return tuple(self.reflection(r) for r in self.sorted_roots())

    def simple_reflections(self) -> tuple[Reflection, ...]:
        return tuple(self.reflection(simple_root(self.n, i)) for i in self.quiver.vertices)


def generate_roots(q: Quiver, height_bound: int = DEFAULT_HEIGHT_BOUND) -> RootSystem:
    """Close the simple roots under simple reflections, keeping positive
    vectors of coordinate sum <= height_bound.

    Truncation is never silent: it clears the `complete` flag.
    """
    if height_bound < 1:
        raise ValidationError("height bound must be positive")
    cart = cartan_matrix(q)
    classification = classify_type(cart)
    simples = [simple_root(q.n, i) for i in q.vertices]
    rows = cart.entries
    seen: set[Vector] = set(simples)
    frontier = deque(simples)
    truncated = False
    while frontier:
        v = frontier.popleft()
        for i in range(q.n):
            s = sum(rows[i][j] * v[j] for j in range(q.n))
            w = tuple(v[j] - (s if j == i else 0) for j in range(q.n))
            if is_negative(w):
                continue  # only happens reflecting a simple root onto itself
            if not is_positive(w):
                raise NcpqError(f"mixed-sign image {w} in root generation")
            if sum(w) > height_bound:
                truncated = True
                continue
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    complete = classification.is_finite and not truncated
    return RootSystem(q, frozenset(seen), complete, height_bound, classification)


def coxeter_element(q: Quiver, order: tuple[int, ...]) -> WeylElement:
    """Product of the simple reflections in an admissible order.

    Admissible means every arrow's source vertex is listed before its
    target, which makes the simples in that order an exceptional sequence.
    """
    order = tuple(order)
    if sorted(order) != list(q.vertices):
        raise ValidationError(f"{order} is not a permutation of 1..{q.n}")
    if not is_admissible_order(q, order):
        raise ValidationError(f"{order} is not an admissible exceptional ordering")
    result = identity(q.n)
    for i in order:
        result = compose(result, make_reflection(q, simple_root(q.n, i)).element)
    return result


def _fixed_space_codim(w: WeylElement) -> int:
    n = w.n
    rows = [[w.matrix[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    return frac_mat_rank(rows, n)


def absolute_length(w: WeylElement, roots: RootSystem, *,
                    max_states: int = 200_000) -> int:
    """Minimal number of real-root reflections whose product is w.

    Finite type uses the codimension of the fixed space, which is exact
    there (and is validated against breadth-first search in the test
    suite). Otherwise a BFS over products of the available (truncated)
    reflections is attempted and only a result matching the codimension
    lower bound is certified.
    """
    if w.n != roots.n:
        raise ValidationError("element rank does not match root system")
    cached = roots._abs_len.get(w.matrix)
    if cached is not None:
        return cached
    codim = _fixed_space_codim(w)
    if roots.complete:
        roots._abs_len[w.matrix] = codim
        return codim
    if codim == 0:
        if w.matrix == identity_matrix(w.n):
            roots._abs_len[w.matrix] = 0
            return 0
        raise NcpqError("non-identity element with full fixed space")
    gens = [r.element.matrix for r in roots.reflections()]
    dist = {identity_matrix(w.n): 0}
    frontier = deque([identity_matrix(w.n)])
    while frontier:
        cur = frontier.popleft()
        d = dist[cur]
        if d >= codim:
            break
        for g in gens:
            nxt = mat_mul(cur, g)
            if nxt not in dist:
                if len(dist) >= max_states:
                    raise SearchExhaustedError(
                        "reflection-product search exhausted its state cap without a certificate")
                dist[nxt] = d + 1
                if nxt == w.matrix and d + 1 == codim:
                    roots._abs_len[w.matrix] = codim
                    return codim
                frontier.append(nxt)
    if w.matrix in dist and dist[w.matrix] == codim:
        roots._abs_len[w.matrix] = codim
        return codim
    raise SearchExhaustedError(
        "truncated root system exhausted without certifying the absolute length")


def absolute_leq(u: WeylElement, w: WeylElement, roots: RootSystem) -> bool:
    """Absolute order: u <= w iff |u| + |u^-1 w| = |w|."""
    lu = absolute_length(u, roots)
    lw = absolute_length(w, roots)
    if lu > lw:
        return False
    return lu + absolute_length(compose(inverse(u), w), roots) == lw


def enumerate_group(q: Quiver, cap: int = DEFAULT_GROUP_CAP, *,
                    allow_truncated: bool = False) -> set[WeylElement]:
    """BFS closure of the identity under the simple reflections.

    Outside finite type this refuses to run unless the caller explicitly
    accepts a truncated exploration of at most `cap` elements.
    """
    if cap < 1:
        raise ValidationError("cap must be positive")
    classification = classify_type(cartan_matrix(q))
    finite = classification.is_finite
    if not finite and not allow_truncated:
        raise NonFiniteTypeError(
            f"group enumeration refused for {classification} type; "
            "pass allow_truncated=True for bounded exploration")
    gens = [make_reflection(q, simple_root(q.n, i)).element.matrix for i in q.vertices]
    seen: set[IntMatrix] = {identity_matrix(q.n)}
    frontier = deque(seen)
    while frontier:
        cur = frontier.popleft()
        for g in gens:
            nxt = mat_mul(cur, g)
            if nxt not in seen:
                if len(seen) >= cap:
                    if finite:
                        raise CapExceededError(f"group size exceeds cap {cap}")
                    return {WeylElement(m) for m in seen}
                seen.add(nxt)
                frontier.append(nxt)
    return {WeylElement(m) for m in seen}


def noncrossing_partitions(c: WeylElement, q: Quiver, *,
                           roots: RootSystem | None = None,
                           group: set[WeylElement] | None = None,
                           cap: int = DEFAULT_GROUP_CAP) -> set[WeylElement]:
    """Interval {s : s <= c} of absolute order in a finite Weyl group."""
    if roots is None:
        roots = generate_roots(q)
    if not roots.classification.is_finite:
        raise NonFiniteTypeError("non-crossing partitions require finite type")
    if group is None:
        group = enumerate_group(q, cap)
    if c not in group:
        raise ValidationError("the given element does not lie in this Weyl group")
    return {s for s in group if absolute_leq(s, c, roots)}


@dataclass(frozen=True)
class ExchangeWitness:
    """Index t and the two sides of the exchange identity, as matrices."""

    t: int
    lhs: WeylElement
    rhs: WeylElement

    @property
    def verified(self) -> bool:
        return self.lhs == self.rhs


def exchange_index(word: tuple[int, ...], alpha: Vector, roots: RootSystem) -> ExchangeWitness:
    """Exchange property for a word in simple reflections sending alpha < 0.

    With suffixes P_t = s_{i_t} ... s_{i_k}, returns the minimal t where
    P_{t+1}(alpha) > 0 but P_t(alpha) < 0, together with the verified
    matrix identity s_{i_t} P_{t+1} = P_{t+1} s_alpha.
    """
    q = roots.quiver
    word = tuple(word)
    k = len(word)
    if k == 0:
        raise ValidationError("word must be nonempty")
    for i in word:
        if not (1 <= i <= q.n):
            raise ValidationError(f"word letter {i} outside 1..{q.n}")
    if alpha not in roots.positive_real_roots:
        raise ValidationError(f"{alpha} is not a known positive real root")
    simples = {i: make_reflection(q, simple_root(q.n, i)) for i in set(word)}
    # images[t] = s_{i_{t+1}} ... s_{i_k} (alpha), indexed t = 0..k
    images: list[Vector] = [()] * (k + 1)
    images[k] = alpha
    for t in range(k, 0, -1):
        images[t - 1] = simples[word[t - 1]].element(images[t])
    if not is_negative(images[0]):
        raise ValidationError("the word does not send alpha to a negative vector")
    t_min = next(t for t in range(1, k + 1)
                 if is_positive(images[t]) and is_negative(images[t - 1]))
    suffix = identity(q.n)
    for j in range(t_min, k):
        suffix = compose(suffix, simples[word[j]].element)
    lhs = compose(simples[word[t_min - 1]].element, suffix)
    rhs = compose(suffix, make_reflection(q, alpha).element)
    if lhs != rhs:
        raise NcpqError("exchange identity failed to verify; this is a bug")
    return ExchangeWitness(t_min, lhs, rhs)


def conjugation_depth(r: Reflection, q: Quiver, *,
                      roots: RootSystem | None = None) -> int:
    """Minimal standard length of a conjugator writing r as w s_j w^-1.

    Breadth-first search over positive roots: the simple roots sit at
    depth 0 and each step conjugates by one simple reflection.
    """
    if roots is None:
        roots = generate_roots(q)
    if not roots.classification.is_finite:
        raise NonFiniteTypeError("conjugation depth requires finite type")
    target = r.root
    if target not in roots.positive_real_roots:
        raise ValidationError(f"{target} is not a positive real root of this quiver")
    rows = roots.cartan
    dist: dict[Vector, int] = {simple_root(q.n, i): 0 for i in q.vertices}
    frontier = deque(dist)
    while frontier:
        v = frontier.popleft()
        if v == target:
            return dist[v]
        for i in range(q.n):
            s = sum(rows[i][j] * v[j] for j in range(q.n))
            w = tuple(v[j] - (s if j == i else 0) for j in range(q.n))
            w = positive_representative(w) if any(w) else w
            if w not in dist:
                dist[w] = dist[v] + 1
                frontier.append(w)
    return dist[target]
