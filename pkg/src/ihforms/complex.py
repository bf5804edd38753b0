"""Oriented triangulated closed manifolds, cochains and dual cell structures.

Simplices are stored as sorted tuples of vertex indices; the orientation of a
stored simplex is the one given by that sorted order, and incidence numbers
are the usual alternating signs.  Vertex identifiers are arbitrary orderable
hashables (the generators use strings so that files round-trip exactly).
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np


class ComplexError(ValueError):
    pass


class EmptyInput(ComplexError):
    pass


class NonPseudomanifold(ComplexError):
    pass


class NotAManifold(ComplexError):
    """A vertex link is not a combinatorial sphere."""


class BadParameters(ComplexError):
    pass


class NotOrientedClosed(ComplexError):
    pass


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    seen = [False] * len(seq)
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    vertices: tuple
    simplices: tuple  # simplices[k] = sorted tuple of sorted index tuples
    is_pseudomanifold: bool
    is_closed: bool
    is_orientable: bool
    orientation: tuple | None  # +1/-1 per top simplex, or None

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.simplices == other.simplices

    def __hash__(self):
        return hash((self.vertices, self.simplices))

    def __repr__(self):
        counts = ", ".join(str(len(s)) for s in self.simplices)
        return f"SimplicialComplex(n={self.dimension}, f=({counts}))"

    def count(self, k: int) -> int:
        if k < 0 or k > self.dimension:
            return 0
        return len(self.simplices[k])

    @property
    def top(self):
        return self.simplices[-1]

    @cached_property
    def _index(self):
        return [{s: i for i, s in enumerate(sk)} for sk in self.simplices]

    def index(self, k: int, simplex) -> int:
        return self._index[k][tuple(simplex)]

    @cached_property
    def _vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    def simplex_from_ids(self, ids) -> tuple[int, tuple]:
        """(sign, sorted index tuple) for a simplex given by vertex ids in any order."""
        idx = [self._vertex_index[v] for v in ids]
        return permutation_sign(idx), tuple(sorted(idx))

    def label(self, k: int, i: int) -> tuple:
        return tuple(self.vertices[v] for v in self.simplices[k][i])

    @cached_property
    def _faces(self):
        """faces[k][i] = ((face index, incidence sign), ...) for k-simplex i."""
        out = [tuple(() for _ in self.simplices[0])]
        for k in range(1, self.dimension + 1):
            idx = self._index[k - 1]
            rows = []
            for s in self.simplices[k]:
                rows.append(tuple((idx[s[:j] + s[j + 1:]], -1 if j % 2 else 1) for j in range(k + 1)))
            out.append(tuple(rows))
        return out

    def faces(self, k: int, i: int):
        return self._faces[k][i]

    @cached_property
    def _cofaces(self):
        out = [[[] for _ in sk] for sk in self.simplices]
        for k in range(1, self.dimension + 1):
            for i, fl in enumerate(self._faces[k]):
                for f, sgn in fl:
                    out[k - 1][f].append((i, sgn))
        return [tuple(tuple(c) for c in ck) for ck in out]

    def cofaces(self, k: int, i: int):
        """((k+1)-simplex index, incidence sign) pairs containing k-simplex i."""
        return self._cofaces[k][i]

    def boundary(self, k: int) -> np.ndarray:
        """Integer boundary matrix from k-chains to (k-1)-chains."""
        return self._boundaries[k].copy()

    @cached_property
    def _boundaries(self):
        mats = []
        for k in range(self.dimension + 2):
            rows, cols = self.count(k - 1), self.count(k)
            M = np.zeros((rows, cols), dtype=np.int64)
            if 1 <= k <= self.dimension:
                for i, fl in enumerate(self._faces[k]):
                    for f, sgn in fl:
                        M[f, i] = sgn
            mats.append(M)
        return mats

    def coboundary(self, k: int) -> np.ndarray:
        """Integer coboundary matrix from k-cochains to (k+1)-cochains."""
        return self._boundaries[k + 1].T.copy()

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(s) for k, s in enumerate(self.simplices))

    def fundamental_chain(self) -> tuple[int, ...]:
        if self.orientation is None:
            raise NotOrientedClosed("complex is not oriented")
        return self.orientation

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as tuples of top-simplex indices."""
        n = self.dimension
        parent = list(range(self.count(n)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        if n >= 1:
            for cof in self._cofaces[n - 1] if n >= 1 else ():
                for (a, _), (b, _) in zip(cof, cof[1:]):
                    parent[find(a)] = find(b)
        groups = defaultdict(list)
        for t in range(self.count(n)):
            groups[find(t)].append(t)
        return tuple(sorted(tuple(g) for g in groups.values()))


# ---------------------------------------------------------------- construction


def _all_faces(top, n):
    faces = [set() for _ in range(n + 1)]
    for s in top:
        for k in range(n + 1):
            faces[k].update(itertools.combinations(s, k + 1))
    return [tuple(sorted(f)) for f in faces]


def _orient(top, n):
    """Propagate orientations across codimension-one faces.

    Returns (orientable, signs).  Each connected component starts from its
    lexicographically smallest top simplex with sign +1.
    """
    by_face = defaultdict(list)
    for t, s in enumerate(top):
        for j in range(n + 1):
            by_face[s[:j] + s[j + 1:]].append((t, -1 if j % 2 else 1))
    adj = defaultdict(list)
    for inc in by_face.values():
        for (a, sa), (b, sb) in itertools.combinations(inc, 2):
            adj[a].append((b, sa, sb))
            adj[b].append((a, sb, sa))
    sign = [0] * len(top)
    ok = True
    for start in range(len(top)):
        if sign[start]:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b, sa, sb in adj[a]:
                want = -sign[a] * sa * sb
                if sign[b] == 0:
                    sign[b] = want
                    queue.append(b)
                elif sign[b] != want:
                    ok = False
    return ok, tuple(sign)


def _is_cycle_graph(edges) -> bool:
    """A multiset of edges forms one simple cycle with at least 3 vertices."""
    if len(edges) < 3 or len(set(edges)) != len(edges):
        return False
    deg = defaultdict(list)
    for a, b in edges:
        deg[a].append(b)
        deg[b].append(a)
    if any(len(v) != 2 for v in deg.values()):
        return False
    start = next(iter(deg))
    seen = {start}
    stack = [start]
    while stack:
        for w in deg[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(deg)


def _is_sphere(simplices, dim) -> bool:
    """Combinatorial sphere test for links in dimension <= 2."""
    simplices = [tuple(sorted(s)) for s in simplices]
    if dim == 0:
        return len(simplices) == 2 and len(set(simplices)) == 2
    if dim == 1:
        return _is_cycle_graph(simplices)
    if dim == 2:
        if len(set(simplices)) != len(simplices):
            return False
        edge_count = defaultdict(int)
        verts = set()
        for s in simplices:
            verts.update(s)
            for e in itertools.combinations(s, 2):
                edge_count[e] += 1
        if any(c != 2 for c in edge_count.values()):
            return False
        if len(verts) - len(edge_count) + len(simplices) != 2:
            return False
        for v in verts:
            link = [tuple(x for x in s if x != v) for s in simplices if v in s]
            if not _is_cycle_graph(link):
                return False
        # connectivity
        adj = defaultdict(set)
        for s in simplices:
            for a, b in itertools.combinations(s, 2):
                adj[a].add(b)
                adj[b].add(a)
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)
    return True


def build_complex(top_simplices: Iterable[Sequence[Hashable]]) -> SimplicialComplex:
    """Build and validate a complex from its top-dimensional simplices."""
    tops_raw = [tuple(s) for s in top_simplices]
    if not tops_raw:
        raise EmptyInput("no simplices given")
    sizes = {len(s) for s in tops_raw}
    if len(sizes) != 1:
        raise ComplexError(f"top simplices have mixed sizes {sorted(sizes)}")
    n = sizes.pop() - 1
    if n < 0:
        raise EmptyInput("empty simplex")
    try:
        vertices = tuple(sorted({v for s in tops_raw for v in s}))
    except TypeError as exc:
        raise ComplexError("vertex identifiers must be mutually orderable") from exc
    vidx = {v: i for i, v in enumerate(vertices)}
    tops = []
    for s in tops_raw:
        if len(set(s)) != len(s):
            raise ComplexError(f"simplex {s} repeats a vertex")
        tops.append(tuple(sorted(vidx[v] for v in s)))

    closed = True
    if n >= 1:
        face_count = defaultdict(int)
        for s in tops:
            for j in range(n + 1):
                face_count[s[:j] + s[j + 1:]] += 1
        worst = max(face_count.values())
        if worst > 2:
            bad = next(f for f, c in face_count.items() if c > 2)
            raise NonPseudomanifold(
                f"face {tuple(vertices[i] for i in bad)} lies in {face_count[bad]} top simplices")
        closed = all(c == 2 for c in face_count.values())

    if closed and 1 <= n <= 3:
        link = defaultdict(list)
        for s in tops:
            for j, v in enumerate(s):
                link[v].append(s[:j] + s[j + 1:])
        for v, lk in link.items():
            if not _is_sphere(lk, n - 1):
                raise NotAManifold(f"link of vertex {vertices[v]!r} is not a {n - 1}-sphere")

    if len(set(tops)) != len(tops):
        raise NotAManifold("repeated top simplex")
    tops = sorted(tops)
    faces = _all_faces(tops, n)
    faces[n] = tuple(tops)
    orientable, signs = _orient(tops, n) if n >= 1 else (True, tuple(1 for _ in tops))
    return SimplicialComplex(
        vertices=vertices,
        simplices=tuple(faces),
        is_pseudomanifold=True,
        is_closed=closed,
        is_orientable=orientable,
        orientation=signs if orientable else None,
    )


# ---------------------------------------------------------------- cochains


@dataclass(frozen=True)
class Cochain:
    complex: SimplicialComplex = field(repr=False)
    degree: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.complex.count(self.degree):
            raise ComplexError(
                f"{self.degree}-cochain needs {self.complex.count(self.degree)} values, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def zero(cls, c: SimplicialComplex, k: int) -> "Cochain":
        return cls(c, k, (Fraction(0),) * c.count(k))

    @classmethod
    def from_dict(cls, c: SimplicialComplex, k: int, mapping) -> "Cochain":
        """Values keyed by vertex-id tuples in any order (sign adjusted)."""
        vals = [Fraction(0)] * c.count(k)
        for ids, v in mapping.items():
            sgn, key = c.simplex_from_ids(ids)
            if sgn == 0:
                raise ComplexError(f"degenerate simplex {ids}")
            vals[c.index(k, key)] += sgn * Fraction(v)
        return cls(c, k, tuple(vals))

    def value(self, ids) -> Fraction:
        sgn, key = self.complex.simplex_from_ids(ids)
        return sgn * self.values[self.complex.index(self.degree, key)]

    def d(self) -> "Cochain":
        c, k = self.complex, self.degree
        if k >= c.dimension:
            return Cochain.zero(c, k + 1) if k + 1 <= c.dimension else Cochain(c, k + 1, ())
        vals = []
        faces = c._faces[k + 1]
        for fl in faces:
            vals.append(sum((sgn * self.values[f] for f, sgn in fl), Fraction(0)))
        return Cochain(c, k + 1, tuple(vals))

    def is_closed(self) -> bool:
        if self.degree >= self.complex.dimension:
            return True
        return not any(self.d().values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v)

    def _check(self, other):
        if not isinstance(other, Cochain) or other.degree != self.degree or other.complex != self.complex:
            raise ComplexError("cochains live on different complexes or degrees")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.complex, self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.complex, self.degree, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return Cochain(self.complex, self.degree, tuple(-a for a in self.values))

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return Cochain(self.complex, self.degree, tuple(s * a for a in self.values))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def to_dict(self) -> dict:
        return {self.complex.label(self.degree, i): v for i, v in enumerate(self.values) if v}


def evaluate(alpha: Cochain, chain) -> Fraction:
    """Pairing of a cochain with an integer/rational chain (coefficient list)."""
    return sum((a * Fraction(z) for a, z in zip(alpha.values, chain)), Fraction(0))


def pullback_cochain(alpha: Cochain, vertex_map, target: SimplicialComplex) -> Cochain:
    """Pull a cochain back along a simplicial map given on vertex ids."""
    src = alpha.complex
    k = alpha.degree
    vals = []
    for s in target.simplices[k]:
        img = [src._vertex_index[vertex_map[target.vertices[v]]] for v in s]
        sgn = permutation_sign(img)
        if sgn == 0:
            vals.append(Fraction(0))
            continue
        vals.append(sgn * alpha.values[src.index(k, tuple(sorted(img)))])
    return Cochain(target, k, tuple(vals))


def pushforward_chain(chain, k: int, source: SimplicialComplex, vertex_map, target: SimplicialComplex):
    """Image of a k-chain under a simplicial map (degenerate images vanish)."""
    out = [0] * target.count(k)
    for i, coeff in enumerate(chain):
        if not coeff:
            continue
        img = [target._vertex_index[vertex_map[source.vertices[v]]] for v in source.simplices[k][i]]
        sgn = permutation_sign(img)
        if sgn:
            out[target.index(k, tuple(sorted(img)))] += sgn * coeff
    return out


# ---------------------------------------------------------------- dual structure


@dataclass(frozen=True)
class DualStructure:
    """Dual cells of a closed oriented complex.

    Dual vertices are top simplices, dual edges are (n-1)-simplices and dual
    2-cells are (n-2)-simplices.  Dual edge ``e`` points from the top simplex
    in which its (n-1)-simplex has oriented incidence +1 to the one where it
    has -1, so the flux of a closed (n-1)-cochain along the dual edges is
    divergence free.
    """

    complex: SimplicialComplex = field(repr=False)
    edges: tuple  # (tail, head) per (n-1)-simplex
    two_cells: tuple  # per (n-2)-simplex: ((edge, sign), ...) in cyclic order

    @property
    def n_vertices(self) -> int:
        return self.complex.count(self.complex.dimension)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def coboundary0(self) -> np.ndarray:
        """Dual 0-cochains (per top simplex) to dual 1-cochains: head minus tail."""
        M = np.zeros((self.n_edges, self.n_vertices), dtype=np.int64)
        for e, (t, h) in enumerate(self.edges):
            M[e, h] += 1
            M[e, t] -= 1
        return M

    def coboundary1(self) -> np.ndarray:
        """Dual 1-cochains to dual 2-cochains (signed loop sums)."""
        M = np.zeros((len(self.two_cells), self.n_edges), dtype=np.int64)
        for c, loop in enumerate(self.two_cells):
            for e, s in loop:
                M[c, e] += s
        return M

    def divergence(self, flux) -> list:
        """Net outflow at each dual vertex."""
        out = [Fraction(0)] * self.n_vertices
        for e, (t, h) in enumerate(self.edges):
            out[t] += flux[e]
            out[h] -= flux[e]
        return out


def dual_structure(c: SimplicialComplex) -> DualStructure:
    if not (c.is_closed and c.orientation is not None) or c.dimension < 1:
        raise NotOrientedClosed("dual structure needs a closed oriented complex")
    n = c.dimension
    eps = c.orientation
    edges = []
    for s in range(c.count(n - 1)):
        cof = c.cofaces(n - 1, s)
        (t1, i1), (t2, i2) = cof
        if eps[t1] * i1 == 1:
            edges.append((t1, t2))
        else:
            edges.append((t2, t1))
    cells = []
    if n >= 2:
        for tau in range(c.count(n - 2)):
            around = {s: sgn for s, sgn in c.cofaces(n - 2, tau)}
            # walk the cycle of tops and (n-1)-simplices around tau
            start = min(around)
            loop = []
            tail, head = edges[start]
            cur_edge, cur_top = start, head
            loop.append((start, around[start]))
            while True:
                nxt = [s for s, _ in c.faces(n, cur_top) if s in around and s != cur_edge]
                if len(nxt) != 1:
                    raise NotOrientedClosed("link of a codimension-two face is not a circle")
                e = nxt[0]
                if e == start:
                    break
                t, h = edges[e]
                cur_top = h if t == cur_top else t
                loop.append((e, around[e]))
                cur_edge = e
            if len(loop) != len(around):
                raise NotOrientedClosed("dual 2-cell boundary is not a single loop")
            cells.append(tuple(loop))
    return DualStructure(c, tuple(edges), tuple(cells))


# ---------------------------------------------------------------- generators


def _str_tops(tops):
    return [tuple(str(v) for v in s) for s in tops]


def product_torus(k: int, m: int = 3) -> SimplicialComplex:
    """Staircase triangulation of the product of ``k`` circles with ``m`` vertices each."""
    if k < 1 or m < 3 or m > 9:
        raise BadParameters("need k >= 1 and 3 <= m <= 9")
    tops = []
    for base in itertools.product(range(m), repeat=k):
        for perm in itertools.permutations(range(k)):
            cur = list(base)
            simplex = [tuple(cur)]
            for axis in perm:
                cur[axis] = (cur[axis] + 1) % m
                simplex.append(tuple(cur))
            tops.append(tuple("".join(map(str, v)) for v in simplex))
    return build_complex(tops)


def simplicial_product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of |K| x |L| from the global vertex orders.

    Each product of top simplices is cut into the monotone lattice paths of
    its vertex grid.  Vertex ids are ``"u*v"``.
    """
    p, q = K.dimension, L.dimension
    tops = []
    for s in K.top:
        for t in L.top:
            for rights in itertools.combinations(range(p + q), p):
                i = j = 0
                path = [(s[0], t[0])]
                for step in range(p + q):
                    if step in rights:
                        i += 1
                    else:
                        j += 1
                    path.append((s[i], t[j]))
                tops.append(tuple(f"{K.vertices[a]}*{L.vertices[b]}" for a, b in path))
    return build_complex(tops)


def circle(m: int = 3) -> SimplicialComplex:
    return build_complex([(str(i), str((i + 1) % m)) for i in range(m)])


def _grid_klein(m: int = 3, n: int = 3) -> SimplicialComplex:
    def lab(i, j):
        if j == n:
            i, j = (-i) % m, 0
        return f"{i % m}{j}"

    tops = []
    for i in range(m):
        for j in range(n):
            a, b, c, d = lab(i, j), lab(i + 1, j), lab(i, j + 1), lab(i + 1, j + 1)
            tops.append((a, b, d))
            tops.append((a, d, c))
    return build_complex(tops)


def _lens_tops(p: int, q: int):
    """Simplicial L(p, q) as a quotient of a subdivided join of two circles.

    S^3 is the join of two 2p-gons a_0..a_{2p-1} and b_0..b_{2p-1}; the
    generator acts by a_i -> a_{i+2}, b_j -> b_{j+2q}.  After one barycentric
    subdivision every vertex is at edge-distance >= 4 from its translates,
    so the orbit space is again a simplicial complex.
    """
    n = 2 * p

    def shift(simplex, k):
        return frozenset(
            (c, (i + 2 * k * (1 if c == "a" else q)) % n) for c, i in simplex
        )

    def orbit_key(simplex):
        return min(tuple(sorted(shift(simplex, k))) for k in range(p))

    flags = set()
    for i in range(n):
        for j in range(n):
            tet = (("a", i), ("a", (i + 1) % n), ("b", j), ("b", (j + 1) % n))
            for perm in itertools.permutations(tet):
                flags.add(tuple(orbit_key(frozenset(perm[: r + 1])) for r in range(4)))
    cells = sorted({c for f in flags for c in f}, key=lambda c: (len(c), c))
    name = {c: f"b{idx:03d}" for idx, c in enumerate(cells)}
    return sorted({tuple(sorted(name[c] for c in f)) for f in flags})


def lens(p: int, q: int) -> SimplicialComplex:
    from math import gcd

    if p < 1 or gcd(p, q) != 1:
        raise BadParameters(f"lens({p},{q}) needs p >= 1 and gcd(p, q) = 1")
    if p == 1:
        return build_complex(_str_tops(itertools.combinations(range(5), 4)))
    return build_complex(_lens_tops(p, q % p))


_RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]


def generate(name: str, p: int | None = None, q: int | None = None) -> SimplicialComplex:
    """Corpus complexes: sphere2, torus2, rp2, klein, torus3, lens (or "lens(p,q)")."""
    key = name.strip().lower().replace(" ", "")
    if key.startswith("lens(") and key.endswith(")"):
        try:
            p, q = (int(t) for t in key[5:-1].split(","))
        except ValueError as exc:
            raise BadParameters(f"cannot parse {name!r}") from exc
        key = "lens"
    if key == "sphere2":
        return build_complex(_str_tops(itertools.combinations(range(4), 3)))
    if key == "sphere3":
        return lens(1, 0)
    if key == "torus2":
        tops = []
        for i in range(7):
            tops.append((i, (i + 1) % 7, (i + 3) % 7))
            tops.append((i, (i + 2) % 7, (i + 3) % 7))
        return build_complex(_str_tops(tops))
    if key == "rp2":
        return build_complex(_str_tops(_RP2))
    if key == "klein":
        return _grid_klein()
    if key == "torus3":
        return product_torus(3)
    if key == "torus2grid":
        return product_torus(2)
    if key == "klein-x-circle":
        return simplicial_product(_grid_klein(), circle())
    if key == "lens":
        if p is None or q is None:
            raise BadParameters("lens needs p and q")
        return lens(p, q)
    raise BadParameters(f"unknown complex {name!r}")


CORPUS = ("sphere2", "torus2", "rp2", "klein", "torus3", "lens(2,1)", "lens(3,1)")


@dataclass(frozen=True)
class Fibration:
    """A simplicial circle bundle projection ``total -> base`` given on vertex ids."""

    total: SimplicialComplex
    base: SimplicialComplex
    projection: dict = field(hash=False, compare=False)
    fiber_cycle: tuple = field(hash=False, compare=False)


def torus_fibration(m: int = 3) -> Fibration:
    """The product projection T^3 -> T^2 (drop the last coordinate)."""
    total = product_torus(3, m)
    base = product_torus(2, m)
    proj = {v: v[:2] for v in total.vertices}
    fiber = [0] * total.count(1)
    for k in range(m):
        a, b = f"00{k}", f"00{(k + 1) % m}"
        sgn, key = total.simplex_from_ids((a, b))
        fiber[total.index(1, key)] += sgn
    return Fibration(total, base, proj, tuple(fiber))


# ---------------------------------------------------------------- double cover


@dataclass(frozen=True)
class DoubleCover:
    cover: SimplicialComplex
    covering_map: dict = field(hash=False, compare=False)


def orientation_double_cover(c: SimplicialComplex) -> DoubleCover:
    """Orientation double cover; two disjoint copies when ``c`` is orientable."""
    n = c.dimension
    if n < 1 or not c.is_closed:
        raise ComplexError("orientation double cover needs a closed complex of dimension >= 1")
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    tops = c.top
    for t, s in enumerate(tops):
        for o in (1, -1):
            for v in s:
                find((v, t, o))
    for f in range(c.count(n - 1)):
        (t1, i1), (t2, i2) = c.cofaces(n - 1, f)
        for o1 in (1, -1):
            # sheets agree on the shared face when induced orientations are opposite
            o2 = -o1 * i1 * i2
            for v in c.simplices[n - 1][f]:
                union((v, t1, o1), (v, t2, o2))
    # name lifts: sheet 0 is the class of (v, first top containing v, +1)
    first_top = {}
    for t, s in enumerate(tops):
        for v in s:
            first_top.setdefault(v, t)
    names = {}
    cmap = {}
    for v, t in first_top.items():
        r0 = find((v, t, 1))
        r1 = find((v, t, -1))
        if r0 == r1:
            raise NotAManifold(f"vertex {c.vertices[v]!r} has a single lift")
        for sheet, r in ((0, r0), (1, r1)):
            lid = f"{c.vertices[v]}~{sheet}"
            names[r] = lid
            cmap[lid] = c.vertices[v]
    lifted = []
    for t, s in enumerate(tops):
        for o in (1, -1):
            lifted.append(tuple(names[find((v, t, o))] for v in s))
    return DoubleCover(build_complex(lifted), cmap)
