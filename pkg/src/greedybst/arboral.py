"""The tree world: BST shapes, root-containing reconfigurations, execution
validation and costing, the search-path restructuring algorithm, and a splay
baseline.

Trees are index-addressed: node = key, children stored by key in arrays with
0 meaning "no child".  A reconfiguration replaces a root-containing subtree by
another BST on the same keys at cost |tau|; subtrees hanging off the replaced
part reattach in the unique position consistent with symmetric order.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass

from . import _kernels
from .model import AccessSequence, CostLedger

__all__ = [
    "BSTree",
    "TreeFragment",
    "Reconfiguration",
    "Execution",
    "ReconfigurationError",
    "ExecutionError",
    "search_path",
    "apply_reconfiguration",
    "validate_execution",
    "greedy_future_build",
    "greedy_initial_tree",
    "run_greedy_future",
    "greedy_future_costs",
    "FastRun",
    "run_splay",
]


class ReconfigurationError(ValueError):
    """A reconfiguration violated the model's constraints."""


class ExecutionError(ValueError):
    """An execution step violated the model; carries the 1-based search index."""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"search {index}: {message}")
        self.index = index


class BSTree:
    """A BST over keys 1..n, stored as child arrays indexed by key."""

    __slots__ = ("n", "root", "left", "right")

    def __init__(
        self,
        n: int,
        root: int,
        left: list[int],
        right: list[int],
        *,
        validate: bool = True,
    ) -> None:
        self.n = n
        self.root = root
        self.left = list(left)
        self.right = list(right)
        if validate:
            self._validate()

    def _validate(self) -> None:
        if self.n < 1:
            raise ValueError("tree must hold at least one key")
        if len(self.left) != self.n + 1 or len(self.right) != self.n + 1:
            raise ValueError("child arrays must have n + 1 slots")
        if self.in_order() != list(range(1, self.n + 1)):
            raise ValueError("not a binary search tree over 1..n")

    def in_order(self) -> list[int]:
        out: list[int] = []
        stack: list[int] = []
        cur = self.root
        seen = 0
        while (cur or stack) and seen <= self.n:
            while cur:
                stack.append(cur)
                cur = self.left[cur]
                seen += 1
                if seen > self.n:
                    return out  # cycle; caller's validation will reject
            cur = stack.pop()
            out.append(cur)
            cur = self.right[cur]
        return out

    def copy(self) -> "BSTree":
        return BSTree(self.n, self.root, self.left, self.right, validate=False)

    def height(self) -> int:
        depth = {self.root: 1}
        stack = [self.root]
        best = 1
        while stack:
            u = stack.pop()
            for c in (self.left[u], self.right[u]):
                if c:
                    depth[c] = depth[u] + 1
                    best = max(best, depth[c])
                    stack.append(c)
        return best

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BSTree)
            and self.n == other.n
            and self.root == other.root
            and self.left == other.left
            and self.right == other.right
        )

    def __repr__(self) -> str:
        return f"BSTree(n={self.n}, root={self.root})"

    @classmethod
    def balanced(cls, n: int) -> "BSTree":
        left = [0] * (n + 1)
        right = [0] * (n + 1)

        def split(lo: int, hi: int) -> int:
            if lo > hi:
                return 0
            mid = (lo + hi) // 2
            left[mid] = split(lo, mid - 1)
            right[mid] = split(mid + 1, hi)
            return mid

        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
        return cls(n, split(1, n), left, right, validate=False)

    @classmethod
    def chain_left(cls, n: int) -> "BSTree":
        """Root n with a descending chain of left children."""
        left = [0] * (n + 1)
        right = [0] * (n + 1)
        for k in range(2, n + 1):
            left[k] = k - 1
        return cls(n, n, left, right, validate=False)

    @classmethod
    def chain_right(cls, n: int) -> "BSTree":
        """Root 1 with an ascending chain of right children."""
        left = [0] * (n + 1)
        right = [0] * (n + 1)
        for k in range(1, n):
            right[k] = k + 1
        return cls(n, 1, left, right, validate=False)

    @classmethod
    def random_shape(cls, n: int, seed: int) -> "BSTree":
        """Uniformly random root at every level, deterministic per seed."""
        rng = random.Random(seed)
        left = [0] * (n + 1)
        right = [0] * (n + 1)

        root = 0
        stack: list[tuple[int, int, int, int]] = [(1, n, 0, 0)]
        while stack:
            lo, hi, parent, side = stack.pop()
            if lo > hi:
                continue
            k = rng.randint(lo, hi)
            if parent == 0:
                root = k
            elif side == 0:
                left[parent] = k
            else:
                right[parent] = k
            stack.append((lo, k - 1, k, 0))
            stack.append((k + 1, hi, k, 1))
        return cls(n, root, left, right, validate=False)


@dataclass(frozen=True)
class TreeFragment:
    """A BST over a subset of keys: children within the fragment, 0 = empty."""

    root: int
    children: dict[int, tuple[int, int]]

    def keys(self) -> list[int]:
        return sorted(self.children)

    def in_order(self) -> list[int]:
        out: list[int] = []
        stack: list[int] = []
        cur = self.root
        guard = 0
        while cur or stack:
            while cur:
                stack.append(cur)
                cur = self.children[cur][0]
                guard += 1
                if guard > len(self.children):
                    return out
            cur = stack.pop()
            out.append(cur)
            cur = self.children[cur][1]
        return out

    def is_bst(self) -> bool:
        try:
            return self.in_order() == self.keys()
        except KeyError:
            return False

    @classmethod
    def induced(cls, tree: BSTree, keys: set[int], root: int) -> "TreeFragment":
        """The shape ``tree`` induces on ``keys`` (a connected subtree)."""
        children = {}
        for k in keys:
            l = tree.left[k] if tree.left[k] in keys else 0
            r = tree.right[k] if tree.right[k] in keys else 0
            children[k] = (l, r)
        return cls(root, children)


@dataclass(frozen=True)
class Reconfiguration:
    """Replace the root-containing subtree on ``tau`` by ``tau_prime``."""

    tau: tuple[int, ...]
    tau_prime: TreeFragment

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", tuple(sorted(self.tau)))

    @property
    def cost(self) -> int:
        return len(self.tau)


@dataclass(frozen=True)
class Execution:
    """An initial tree plus one reconfiguration per search."""

    t0: BSTree
    steps: tuple[Reconfiguration, ...]

    @property
    def m(self) -> int:
        return len(self.steps)


def search_path(tree: BSTree, key: int) -> list[int]:
    """Nodes from the root to ``key`` inclusive; a legal root-containing tau."""
    if not 1 <= key <= tree.n:
        raise ValueError(f"key {key} outside universe 1..{tree.n}")
    path = []
    cur = tree.root
    while True:
        path.append(cur)
        if cur == key:
            return path
        cur = tree.left[cur] if key < cur else tree.right[cur]


def apply_reconfiguration(tree: BSTree, reconf: Reconfiguration) -> BSTree:
    """Apply a validated reconfiguration; hanging subtrees reattach in the
    unique order-consistent slots of the new fragment."""
    tau = set(reconf.tau)
    frag = reconf.tau_prime

    if tree.root not in tau:
        raise ReconfigurationError("tau does not contain the root")
    reach = 0
    stack = [tree.root]
    while stack:
        u = stack.pop()
        reach += 1
        for c in (tree.left[u], tree.right[u]):
            if c in tau:
                stack.append(c)
    if reach != len(tau):
        raise ReconfigurationError("tau is not a connected subtree of the tree")
    if set(frag.children) != tau:
        raise ReconfigurationError("tau_prime is not over the same key set as tau")
    if not frag.is_bst() or frag.root not in tau:
        raise ReconfigurationError("tau_prime violates symmetric order")

    left = list(tree.left)
    right = list(tree.right)
    hangers = []
    for k in tau:
        for c in (tree.left[k], tree.right[k]):
            if c and c not in tau:
                hangers.append(c)
    for k, (l, r) in frag.children.items():
        left[k] = l
        right[k] = r
    for h in hangers:
        cur = frag.root
        while True:
            if h < cur:
                if left[cur] == 0:
                    left[cur] = h
                    break
                cur = left[cur]
            else:
                if right[cur] == 0:
                    right[cur] = h
                    break
                cur = right[cur]
    return BSTree(tree.n, frag.root, left, right)


def validate_execution(execution: Execution, sequence: AccessSequence) -> CostLedger:
    """Check every model constraint against the sequence; return the ledger.

    Raises ExecutionError naming the first violated constraint and its index.
    """
    if execution.m != sequence.m:
        raise ExecutionError(0, f"{execution.m} steps for {sequence.m} searches")
    if execution.t0.n != sequence.n:
        raise ExecutionError(0, "initial tree universe differs from the sequence's")
    tree = execution.t0
    counts = []
    for i, (reconf, s) in enumerate(zip(execution.steps, sequence.searches), start=1):
        if s not in reconf.tau:
            raise ExecutionError(i, f"searched element {s} not in tau")
        try:
            tree = apply_reconfiguration(tree, reconf)
        except ReconfigurationError as exc:
            raise ExecutionError(i, str(exc)) from exc
        counts.append(reconf.cost)
    return CostLedger.from_counts(sequence, counts)


def _ensure_recursion_depth(size: int) -> None:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * size + 200))


def greedy_future_build(
    nodes: list[int], future: list[int]
) -> TreeFragment | None:
    """Arrange ``nodes`` (sorted, distinct) to serve ``future`` searches.

    The first future element becomes the root when it is among the nodes.
    Otherwise its predecessor and successor within the nodes become the root
    and the root's right child (or whichever of the two exists becomes the
    root, leaving that child slot empty).  Each side then recurses on the
    future subsequence restricted to that side.  A side with no future
    searches is balanced.
    """
    nodes = sorted(nodes)
    if len(set(nodes)) != len(nodes):
        raise ValueError("duplicate nodes")
    if not nodes:
        return None
    _ensure_recursion_depth(len(nodes))
    children: dict[int, tuple[int, int]] = {}

    def balanced(lo: int, hi: int) -> int:
        if lo > hi:
            return 0
        mid = (lo + hi) // 2
        k = nodes[mid]
        children[k] = (balanced(lo, mid - 1), balanced(mid + 1, hi))
        return k

    def build(lo: int, hi: int, fut: list[int]) -> int:
        if lo > hi:
            return 0
        if not fut:
            return balanced(lo, hi)
        f = fut[0]
        # Lowest index in [lo, hi] with nodes[idx] >= f.
        a, b = lo, hi + 1
        while a < b:
            mid = (a + b) // 2
            if nodes[mid] < f:
                a = mid + 1
            else:
                b = mid
        j = a
        if j <= hi and nodes[j] == f:
            l = build(lo, j - 1, [v for v in fut if v < f])
            r = build(j + 1, hi, [v for v in fut if v > f])
            children[f] = (l, r)
            return f
        if lo < j <= hi:
            xl, xr = nodes[j - 1], nodes[j]
            l = build(lo, j - 2, [v for v in fut if v < xl])
            r = build(j + 1, hi, [v for v in fut if v > xr])
            children[xl] = (l, xr)
            children[xr] = (0, r)
            return xl
        if j > hi:
            xl = nodes[hi]
            l = build(lo, hi - 1, [v for v in fut if v < xl])
            children[xl] = (l, 0)
            return xl
        xr = nodes[lo]
        r = build(lo + 1, hi, [v for v in fut if v > xr])
        children[xr] = (0, r)
        return xr

    root = build(0, len(nodes) - 1, list(future))
    return TreeFragment(root, children)


def greedy_initial_tree(n: int, sequence: AccessSequence | list[int]) -> BSTree:
    """The canonical initial tree: arrange 1..n to serve the whole sequence."""
    searches = list(sequence.searches) if isinstance(sequence, AccessSequence) else list(sequence)
    frag = greedy_future_build(list(range(1, n + 1)), searches)
    assert frag is not None
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    for k, (l, r) in frag.children.items():
        left[k] = l
        right[k] = r
    return BSTree(n, frag.root, left, right)


def run_greedy_future(
    t0: BSTree, sequence: AccessSequence
) -> tuple[Execution, CostLedger]:
    """Reference run: per search, take the path, rebuild it for the future.

    The last search leaves its path unchanged.  Returns the validated
    execution and its ledger.  For cost-only runs at scale use
    ``greedy_future_costs``.
    """
    if t0.n != sequence.n:
        raise ValueError("tree universe differs from the sequence's")
    tree = t0.copy()
    steps = []
    for i, s in enumerate(sequence.searches, start=1):
        path = search_path(tree, s)
        tau = sorted(path)
        if i < sequence.m:
            frag = greedy_future_build(tau, list(sequence.searches[i:]))
            assert frag is not None
        else:
            frag = TreeFragment.induced(tree, set(tau), path[0])
        reconf = Reconfiguration(tuple(tau), frag)
        tree = apply_reconfiguration(tree, reconf)
        steps.append(reconf)
    execution = Execution(t0.copy(), tuple(steps))
    ledger = validate_execution(execution, sequence)
    return execution, ledger


@dataclass(frozen=True)
class FastRun:
    """Output of an engine run: costs, optional per-search access sets,
    the final tree, and any sequential-property violations."""

    costs: tuple[int, ...]
    accessed: tuple[tuple[int, ...], ...] | None
    final_tree: BSTree
    violations: tuple[str, ...]

    @property
    def total(self) -> int:
        return sum(self.costs)


def greedy_future_costs(
    t0: BSTree,
    sequence: AccessSequence,
    *,
    collect_accessed: bool = False,
    sequential_checks: bool = False,
    engine: str | None = None,
) -> FastRun:
    """Run the restructuring algorithm through a kernel engine.

    Matches ``run_greedy_future`` exactly on costs and access sets; the
    agreement is part of the test suite.
    """
    if t0.n != sequence.n:
        raise ValueError("tree universe differs from the sequence's")
    kernel = _kernels.get_engine(engine)
    costs, accessed, left, right, root, violations = kernel.greedy_future_run(
        t0.n,
        t0.left,
        t0.right,
        t0.root,
        sequence.searches,
        collect_accessed,
        sequential_checks,
    )
    final = BSTree(t0.n, root, left, right, validate=False)
    return FastRun(
        costs=tuple(costs),
        accessed=None if accessed is None else tuple(tuple(a) for a in accessed),
        final_tree=final,
        violations=tuple(violations),
    )


def _splay_fragment(path: list[int]) -> TreeFragment:
    """Shape of the search path after a bottom-up splay of its last node.

    Rotations only rearrange path nodes; hanging subtrees land wherever
    symmetric order puts them, which is exactly what reattachment does.
    """
    target = path[-1]
    left = {k: 0 for k in path}
    right = {k: 0 for k in path}
    parent = {k: 0 for k in path}
    for u, v in zip(path, path[1:]):
        if v < u:
            left[u] = v
        else:
            right[u] = v
        parent[v] = u
    root = path[0]

    def rotate(x: int) -> None:
        p = parent[x]
        g = parent[p]
        if left[p] == x:
            left[p] = right[x]
            if right[x]:
                parent[right[x]] = p
            right[x] = p
        else:
            right[p] = left[x]
            if left[x]:
                parent[left[x]] = p
            left[x] = p
        parent[p] = x
        parent[x] = g
        if g:
            if left[g] == p:
                left[g] = x
            else:
                right[g] = x

    while parent[target]:
        p = parent[target]
        g = parent[p]
        if not g:
            rotate(target)  # zig
        elif (left[g] == p) == (left[p] == target):
            rotate(p)  # zig-zig
            rotate(target)
        else:
            rotate(target)  # zig-zag
            rotate(target)
    root = target
    return TreeFragment(root, {k: (left[k], right[k]) for k in path})


def run_splay(t0: BSTree, sequence: AccessSequence) -> tuple[Execution, CostLedger]:
    """Baseline: bottom-up splay of each searched node, expressed as
    root-containing reconfigurations."""
    if t0.n != sequence.n:
        raise ValueError("tree universe differs from the sequence's")
    tree = t0.copy()
    steps = []
    for s in sequence.searches:
        path = search_path(tree, s)
        frag = _splay_fragment(path)
        reconf = Reconfiguration(tuple(sorted(path)), frag)
        tree = apply_reconfiguration(tree, reconf)
        steps.append(reconf)
    execution = Execution(t0.copy(), tuple(steps))
    ledger = validate_execution(execution, sequence)
    return execution, ledger
