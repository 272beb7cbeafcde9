"""Sequential coupling of n momenta and coupling-scheme combinatorics.

The sequential scheme j1+j2=j12, j12+j3=j123, ... gets exact coefficient
evaluation; arbitrary binary pairing schemes are enumerated structurally
(leaf-labeled trees with unordered children, (2n-3)!! of them) and exported
as DOT diagrams.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .numerics import DomainError, HalfInt, Surd, projection_range
from .wigner import CgArgs, allowed_j, cg

TreeShape = Union[int, tuple]


def jmax(js: Sequence[HalfInt]) -> HalfInt:
    """Largest total momentum: the plain sum."""
    if len(js) < 2:
        raise DomainError("jmax needs at least two momenta")
    total = 0
    for j in js:
        if j.twice < 0:
            raise DomainError(f"momentum must be nonnegative, got {j}")
        total += j.twice
    return HalfInt(total)


def jmin(js: Sequence[HalfInt]) -> HalfInt:
    """Smallest total momentum, by the prefix recursion min |i - j_n|."""
    if len(js) < 2:
        raise DomainError("jmin needs at least two momenta")
    if any(j.twice < 0 for j in js):
        raise DomainError("momenta must be nonnegative")
    lo = abs(js[0].twice - js[1].twice)
    hi = js[0].twice + js[1].twice
    for j in js[2:]:
        t = j.twice
        if t < lo:
            lo, hi = lo - t, hi + t
        elif t > hi:
            lo, hi = t - hi, hi + t
        else:
            # nearest ladder point to t inside [lo, hi]; offsets step by 2
            lo, hi = (t - lo) % 2, hi + t
    return HalfInt(lo)


@dataclass(frozen=True)
class CouplingChain:
    """A sequential coupling scheme: js, the intermediates j12, j123, ..., and total j.

    The degenerate single-momentum chain (n=1, no coefficients) is allowed so
    time-reversal checks can treat one bare momentum uniformly.
    """

    js: tuple[HalfInt, ...]
    intermediates: tuple[HalfInt, ...]
    total_j: HalfInt

    def __post_init__(self) -> None:
        n = len(self.js)
        if n < 1:
            raise DomainError("a chain needs at least one momentum")
        if any(j.twice < 0 for j in self.js):
            raise DomainError("momenta must be nonnegative")
        if len(self.intermediates) != max(0, n - 2):
            raise DomainError(
                f"expected {max(0, n - 2)} intermediates for n={n}, got {len(self.intermediates)}"
            )
        for partial, (prev, j_new) in zip(
            self.partial_totals()[1:], zip(self.partial_totals(), self.js[1:])
        ):
            if partial not in allowed_j(prev, j_new):
                raise DomainError(f"{partial} not an allowed coupling of {prev} and {j_new}")
        if n == 1 and self.total_j != self.js[0]:
            raise DomainError("single-momentum chain must have total_j = j1")

    @property
    def n(self) -> int:
        return len(self.js)

    def partial_totals(self) -> tuple[HalfInt, ...]:
        """j1, j12, j123, ..., total_j (length n)."""
        if self.n == 1:
            return (self.total_j,)
        return (self.js[0],) + self.intermediates + (self.total_j,)

    def to_json_dict(self) -> dict:
        return {
            "js": [str(j) for j in self.js],
            "intermediates": [str(j) for j in self.intermediates],
            "j": str(self.total_j),
        }


def enumerate_chains(
    js: Sequence[HalfInt], total_j: Optional[HalfInt] = None
) -> list[CouplingChain]:
    """Every valid intermediate sequence for js, optionally filtered by total."""
    if len(js) < 2:
        raise DomainError("chain enumeration needs at least two momenta")
    js = tuple(js)

    def extend(prefix: tuple[HalfInt, ...], partial: HalfInt, k: int) -> Iterator[CouplingChain]:
        if k == len(js):
            if total_j is None or partial == total_j:
                yield CouplingChain(js, prefix, partial)
            return
        for nxt in allowed_j(partial, js[k]):
            yield from extend(prefix + (partial,), nxt, k + 1)

    chains: list[CouplingChain] = []
    for j12 in allowed_j(js[0], js[1]):
        chains.extend(extend((), j12, 2))
    return chains


def generalized_coupling_coefficient(
    chain: CouplingChain, ms: Sequence[HalfInt], total_m: HalfInt
) -> Surd:
    """Product of the n-1 coefficients along the chain; zero if sum(ms) != total_m."""
    if len(ms) != chain.n:
        raise DomainError(f"expected {chain.n} projections, got {len(ms)}")
    for j, m in zip(chain.js, ms):
        if abs(m.twice) > j.twice or (j.twice + m.twice) % 2:
            raise DomainError(f"projection {m} invalid for momentum {j}")
    if sum(m.twice for m in ms) != total_m.twice:
        return Surd.zero()
    partials = chain.partial_totals()
    value = Surd.one()
    m_run = ms[0]
    for k in range(1, chain.n):
        m_next = m_run + ms[k]
        j_next = partials[k]
        if abs(m_next.twice) > j_next.twice:
            return Surd.zero()
        value = value * cg(CgArgs(partials[k - 1], m_run, chain.js[k], ms[k], j_next, m_next))
        if value.is_zero:
            return value
        m_run = m_next
    return value


@dataclass(frozen=True)
class StateExpansion:
    """Product-basis amplitudes of one coupled state |chain, total_j, total_m>."""

    chain: CouplingChain
    total_m: HalfInt
    amplitudes: dict[tuple[HalfInt, ...], Surd]

    def norm_square(self) -> Fraction:
        return sum((a.radicand for a in self.amplitudes.values()), Fraction(0))


def expand_coupled_state(chain: CouplingChain, total_m: HalfInt) -> StateExpansion:
    """All nonzero amplitudes over projection tuples with sum(ms) = total_m."""
    if abs(total_m.twice) > chain.total_j.twice or (total_m.twice + chain.total_j.twice) % 2:
        raise DomainError(f"projection {total_m} invalid for total momentum {chain.total_j}")
    amplitudes: dict[tuple[HalfInt, ...], Surd] = {}
    ranges = [list(projection_range(j)) for j in chain.js]
    for ms in itertools.product(*ranges):
        if sum(m.twice for m in ms) != total_m.twice:
            continue
        amp = generalized_coupling_coefficient(chain, ms, total_m)
        if not amp.is_zero:
            amplitudes[ms] = amp
    return StateExpansion(chain, total_m, amplitudes)


# ---------------------------------------------------------------------------
# coupling trees


def _min_leaf(shape: TreeShape) -> int:
    if isinstance(shape, int):
        return shape
    return min(_min_leaf(shape[0]), _min_leaf(shape[1]))


def _leaves(shape: TreeShape) -> list[int]:
    if isinstance(shape, int):
        return [shape]
    return _leaves(shape[0]) + _leaves(shape[1])


def _canonical(shape: TreeShape) -> TreeShape:
    if isinstance(shape, int):
        return shape
    left, right = _canonical(shape[0]), _canonical(shape[1])
    if _min_leaf(left) > _min_leaf(right):
        left, right = right, left
    return (left, right)


@dataclass(frozen=True)
class CouplingTree:
    """Rooted binary coupling scheme: n labeled leaves, unordered children."""

    shape: TreeShape

    @classmethod
    def from_nested(cls, obj) -> CouplingTree:
        def build(node) -> TreeShape:
            if isinstance(node, int):
                return node
            if isinstance(node, (list, tuple)) and len(node) == 2:
                return (build(node[0]), build(node[1]))
            raise DomainError(f"tree nodes must be leaf labels or pairs, got {node!r}")

        tree = cls(_canonical(build(obj)))
        labels = sorted(tree.leaves())
        if labels != list(range(1, len(labels) + 1)):
            raise DomainError(f"leaves must be labeled 1..n, got {labels}")
        return tree

    def leaves(self) -> list[int]:
        return _leaves(self.shape)

    @property
    def n(self) -> int:
        return len(self.leaves())

    def to_nested(self):
        def walk(shape: TreeShape):
            if isinstance(shape, int):
                return shape
            return [walk(shape[0]), walk(shape[1])]

        return walk(self.shape)


def _insertions(shape: TreeShape, leaf: int) -> Iterator[TreeShape]:
    # new leaf carries the largest label, so appending it on the right keeps
    # every generated shape in canonical (min-leaf-first) form
    yield (shape, leaf)
    if not isinstance(shape, int):
        left, right = shape
        for grown in _insertions(left, leaf):
            yield (grown, right)
        for grown in _insertions(right, leaf):
            yield (left, grown)


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def enumerate_coupling_trees(n: int, max_leaves: int = 10) -> list[CouplingTree]:
    """All (2n-3)!! pairing schemes of n labeled momenta, sequential chain first."""
    if n < 2:
        raise DomainError("coupling needs at least two momenta")
    if n > max_leaves:
        raise DomainError(
            f"n={n} exceeds the enumeration guard ({max_leaves}); "
            "raise the guard explicitly to proceed"
        )
    shapes: list[TreeShape] = [(1, 2)]
    for leaf in range(3, n + 1):
        shapes = [grown for shape in shapes for grown in _insertions(shape, leaf)]
    return [CouplingTree(shape) for shape in shapes]


def export_dot(tree: CouplingTree, j_labels: Sequence[str]) -> str:
    """Deterministic DOT digraph; one box per pairing vertex, labels j...m... per edge."""
    if len(j_labels) != tree.n:
        raise DomainError(f"expected {tree.n} labels, got {len(j_labels)}")
    label_of = dict(zip(sorted(tree.leaves()), j_labels))
    boxes: list[str] = []
    edges: list[tuple[str, str, str]] = []

    def walk(shape: TreeShape) -> tuple[str, str]:
        """Returns (node id, concatenated leaf label) of the subtree."""
        if isinstance(shape, int):
            return f"in{shape}", label_of[shape]
        left_id, left_label = walk(shape[0])
        right_id, right_label = walk(shape[1])
        box = f"cg{len(boxes) + 1}"
        boxes.append(box)
        edges.append((left_id, box, left_label))
        edges.append((right_id, box, right_label))
        return box, left_label + right_label

    root_id, root_label = walk(tree.shape)
    edges.append((root_id, "out", root_label))
    lines = ["digraph coupling {", "    rankdir=LR;"]
    for leaf in sorted(tree.leaves()):
        lines.append(f'    in{leaf} [shape=point, label=""];')
    for box in boxes:
        lines.append(f'    {box} [shape=box, label=""];')
    lines.append('    out [shape=point, label=""];')
    for src, dst, label in edges:
        lines.append(f'    {src} -> {dst} [label="j{label}m{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
