"""Finite root systems of types A-G in simple-root coordinates.

Simple roots follow the Bourbaki numbering:

    A_n  1 - 2 - ... - n
    B_n  1 - 2 - ... - (n-1) => n        alpha_n short
    C_n  1 - 2 - ... - (n-1) <= n        alpha_n long
    D_n  1 - 2 - ... - (n-2) < (n-1), n
    E_n  1 - 3 - 4 - 5 - ... - n, with 2 attached to 4
    F_4  1 - 2 => 3 - 4                  alpha_1, alpha_2 long
    G_2  1 <= 2                          alpha_1 short

Cartan entries are a_ij = <alpha_i^vee, alpha_j>. All pairings are computed from the
Cartan matrix and the squared lengths of the simple roots; no Euclidean embedding is used.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
from cachetools import LRUCache, cached
from sympy import Rational

from config.settings import Settings
from core.errors import NotARootError, UnsupportedContextError

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]

ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


def _validate_type(dynkin_type: str, rank: int) -> None:
    rules = {
        "A": (rank >= 1, "type A needs rank >= 1"),
        "B": (rank >= 2, "type B needs rank >= 2"),
        "C": (rank >= 2, "type C needs rank >= 2"),
        "D": (rank >= 4, "type D needs rank >= 4"),
        "E": (rank in (6, 7, 8), "type E needs rank 6, 7 or 8"),
        "F": (rank == 4, "type F needs rank 4"),
        "G": (rank == 2, "type G needs rank 2"),
    }
    if dynkin_type not in rules:
        raise UnsupportedContextError(f"Unknown Dynkin type {dynkin_type!r}; expected one of A-G")
    ok, rule = rules[dynkin_type]
    if not ok:
        raise UnsupportedContextError(f"Invalid rank {rank} for type {dynkin_type}: {rule}")


def _dynkin_edges(dynkin_type: str, rank: int) -> List[Tuple[int, int]]:
    """Edges of the Dynkin diagram, 0-based"""
    if dynkin_type in ("A", "B", "C", "F", "G"):
        return [(i, i + 1) for i in range(rank - 1)]
    if dynkin_type == "D":
        edges = [(i, i + 1) for i in range(rank - 2)]
        edges.append((rank - 3, rank - 1))
        return edges
    # E_n: chain 1-3-4-...-n plus 2-4
    chain = [0] + list(range(2, rank))
    edges = [(chain[k], chain[k + 1]) for k in range(len(chain) - 1)]
    edges.append((1, 3))
    return edges


def cartan_matrix(dynkin_type: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    """Bourbaki Cartan matrix with a_ij = <alpha_i^vee, alpha_j>"""
    _validate_type(dynkin_type, rank)
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in _dynkin_edges(dynkin_type, rank):
        a[i][j] = a[j][i] = -1
    if dynkin_type == "B":
        a[rank - 1][rank - 2] = -2
    elif dynkin_type == "C":
        a[rank - 2][rank - 1] = -2
    elif dynkin_type == "F":
        a[2][1] = -2
    elif dynkin_type == "G":
        a[0][1] = -3
    return tuple(tuple(row) for row in a)


class RootDatum:
    """A simple root system with its Weyl-group data"""

    def __init__(self, dynkin_type: str, rank: int):
        self.dynkin_type = dynkin_type
        self.rank = rank
        self.cartan = cartan_matrix(dynkin_type, rank)
        self.simple_roots: Tuple[Root, ...] = tuple(
            tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)
        )
        self.dynkin_graph = nx.Graph()
        self.dynkin_graph.add_nodes_from(range(rank))
        self.dynkin_graph.add_edges_from(_dynkin_edges(dynkin_type, rank))

        self.simple_norms = self._simple_norms()
        self.roots: Tuple[Root, ...] = self._enumerate_roots()
        self._root_set: FrozenSet[Root] = frozenset(self.roots)
        self.positive_roots = tuple(r for r in self.roots if is_positive(r))

        max_norm = max(self.norm(r) for r in self.roots)
        self.long_roots = tuple(r for r in self.roots if self.norm(r) == max_norm)
        if len(self.long_roots) == len(self.roots):
            self.short_roots = self.long_roots
        else:
            self.short_roots = tuple(r for r in self.roots if self.norm(r) != max_norm)

        self._long_set = frozenset(self.long_roots)
        self.highest_root = self._maximum(self.long_roots)
        self.highest_short_root = self._maximum(self.short_roots)

        self.w0_word = self._longest_element_word()
        self.cartan_involution: Dict[int, int] = {}
        for i, simple in enumerate(self.simple_roots):
            image = negate(self.w0(simple))
            j = self.simple_index(image)
            if j is None:
                raise NotARootError(f"-w0({simple}) = {image} is not simple")
            self.cartan_involution[i] = j

        self.rho_pairings: Dict[Root, int] = {r: self.rho_pairing(r) for r in self.roots}
        logger.debug(f"Built root system {self.label} with {len(self.roots)} roots")

    @property
    def label(self) -> str:
        return f"{self.dynkin_type}{self.rank}"

    @property
    def is_simply_laced(self) -> bool:
        return len(self.long_roots) == len(self.roots)

    # -- lengths and pairings --------------------------------------------------------

    def _simple_norms(self) -> Tuple[int, ...]:
        """Squared lengths (alpha_i, alpha_i), short simple roots normalised to 1"""
        norms: Dict[int, Rational] = {0: Rational(1)}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in self.dynkin_graph.neighbors(i):
                if j not in norms:
                    # a_ij (a_i, a_i) = a_ji (a_j, a_j)
                    norms[j] = norms[i] * self.cartan[i][j] / self.cartan[j][i]
                    queue.append(j)
        smallest = min(norms.values())
        return tuple(int(norms[i] / smallest) for i in range(self.rank))

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Twice the invariant inner product, an integer"""
        total = 0
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.cartan[i]
            scale = xi * self.simple_norms[i]
            for j, yj in enumerate(y):
                if yj:
                    total += scale * row[j] * yj
        return total

    def norm(self, x: Sequence[int]) -> int:
        """Squared length in the normalisation where short simple roots have length 1"""
        return self.form(x, x) // 2

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._root_set

    def is_long(self, root: Root) -> bool:
        return tuple(root) in self._long_set

    def pairing(self, coroot_of: Root, weight: Sequence[int]) -> int:
        """<coroot_of^vee, weight>"""
        coroot_of = tuple(coroot_of)
        if coroot_of not in self._root_set:
            raise NotARootError(f"{coroot_of} is not a root of {self.label}")
        numerator = 2 * self.form(coroot_of, weight)
        denominator = self.form(coroot_of, coroot_of)
        if numerator % denominator:
            raise NotARootError(f"Non-integral pairing <{coroot_of}^vee, {tuple(weight)}>")
        return numerator // denominator

    def simple_pairing(self, i: int, weight: Sequence[int]) -> int:
        """<alpha_i^vee, weight>, read off the Cartan matrix"""
        row = self.cartan[i]
        return sum(row[j] * weight[j] for j in range(self.rank))

    def reflect(self, mirror: Root, target: Sequence[int]) -> Root:
        """s_mirror(target) = target - <mirror^vee, target> mirror"""
        k = self.pairing(mirror, target)
        return tuple(t - k * m for t, m in zip(target, mirror))

    def simple_reflection(self, i: int, v: Sequence[int]) -> Root:
        k = self.simple_pairing(i, v)
        out = list(v)
        out[i] -= k
        return tuple(out)

    def coroot_coords(self, root: Root) -> Tuple[Rational, ...]:
        """Coordinates of root^vee on the simple coroots"""
        length = self.norm(root)
        return tuple(Rational(c * self.simple_norms[i], length) for i, c in enumerate(root))

    def rho_pairing(self, root: Root) -> int:
        """<rho, root^vee>, the height of the coroot"""
        value = sum(self.coroot_coords(root))
        if not value.is_Integer:
            raise NotARootError(f"Non-integral <rho, {root}^vee> = {value}")
        return int(value)

    # -- enumeration and distinguished elements -------------------------------------

    def _enumerate_roots(self) -> Tuple[Root, ...]:
        seen = set(self.simple_roots)
        queue = deque(self.simple_roots)
        while queue:
            root = queue.popleft()
            for i in range(self.rank):
                image = self.simple_reflection(i, root)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        expected = ROOT_COUNTS[self.dynkin_type](self.rank)
        if len(seen) != expected:
            raise NotARootError(f"{self.label}: enumerated {len(seen)} roots, expected {expected}")
        return tuple(sorted(seen, key=lambda r: (-height(r), tuple(-c for c in r))))

    def _maximum(self, roots: Sequence[Root]) -> Root:
        maxima = [r for r in roots if not any(s != r and dominance_leq(r, s) for s in roots)]
        if len(maxima) != 1:
            raise NotARootError(f"{self.label}: no unique maximal root among {len(roots)} roots")
        return maxima[0]

    def simple_index(self, root: Sequence[int]) -> Optional[int]:
        """Index i if root = alpha_i, else None"""
        root = tuple(root)
        if sum(root) == 1 and all(c in (0, 1) for c in root):
            return root.index(1)
        return None

    def is_simple(self, root: Sequence[int]) -> bool:
        return self.simple_index(root) is not None

    def _longest_element_word(self) -> Tuple[int, ...]:
        two_rho = tuple(sum(r[i] for r in self.positive_roots) for i in range(self.rank))
        target = negate(two_rho)
        word: List[int] = []
        current = two_rho
        while current != target:
            step = next((i for i in range(self.rank) if self.simple_pairing(i, current) > 0), None)
            if step is None:
                raise NotARootError(f"{self.label}: chamber walk stalled at {current}")
            current = self.simple_reflection(step, current)
            word.append(step)
        if len(word) != len(self.positive_roots):
            raise NotARootError(f"{self.label}: w0 word of length {len(word)} is not reduced")
        return tuple(word)

    def w0(self, v: Sequence[int]) -> Root:
        """Longest Weyl element applied to v"""
        v = tuple(v)
        for i in self.w0_word:
            v = self.simple_reflection(i, v)
        return v

    def involution(self, root: Root) -> Root:
        """i(alpha) = -w0(alpha)"""
        return negate(self.w0(root))

    def support_connected(self, indices) -> bool:
        indices = list(indices)
        if not indices:
            return False
        return nx.is_connected(self.dynkin_graph.subgraph(indices))

    def __repr__(self) -> str:
        return f"RootDatum({self.label})"


# -- pure functions of the coordinates ------------------------------------------------

def height(x: Sequence[int]) -> int:
    return sum(x)


def support(x: Sequence[int]) -> FrozenSet[int]:
    """Supp(x): indices of the simple roots with nonzero coefficient"""
    return frozenset(i for i, c in enumerate(x) if c)


def support_size(x: Sequence[int]) -> int:
    """|x|"""
    return len(support(x))


def max_coefficient(x: Sequence[int]) -> int:
    """||x|| = max |x_i|"""
    return max((abs(c) for c in x), default=0)


def is_positive(x: Sequence[int]) -> bool:
    return all(c >= 0 for c in x) and any(c > 0 for c in x)


def negate(x: Sequence[int]) -> Root:
    return tuple(-c for c in x)


def add(x: Sequence[int], y: Sequence[int]) -> Root:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence[int], y: Sequence[int]) -> Root:
    return tuple(a - b for a, b in zip(x, y))


def dominance_leq(beta: Sequence[int], alpha: Sequence[int]) -> bool:
    """beta <= alpha: alpha - beta is a nonnegative combination of simple roots"""
    return all(a - b >= 0 for a, b in zip(alpha, beta))


@cached(cache=LRUCache(maxsize=Settings.CONTEXT_CACHE_SIZE))
def build_root_system(dynkin_type: str, rank: int) -> RootDatum:
    """Build (and memoise) the root datum of the given type"""
    dynkin_type = dynkin_type.upper()
    _validate_type(dynkin_type, rank)
    return RootDatum(dynkin_type, rank)
