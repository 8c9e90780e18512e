"""Combinatorics of the oriented unit n-cube skeleton.

Vertices are the integers 0 .. 2**n - 1; the binary digits of a vertex are
its cube coordinates, with the digit for axis I (I = 1..n) sitting at the
I-th most significant of the n bits.  Every edge is oriented from the
endpoint whose axis coordinate is 0 towards the endpoint where it is 1, so
vertex 0 is the global source of the skeleton.

Everything here is label combinatorics; there is no geometric embedding.
"""

from __future__ import annotations

import math
import os
from itertools import combinations, product
from typing import Iterable, NamedTuple

DEFAULT_MAX_DIMENSION = 12
MAX_DIMENSION_ENV = "NGROUPOID_MAX_N"


def dimension_cap() -> int:
    """Largest accepted dimension (2**n enumeration bound).

    Defaults to DEFAULT_MAX_DIMENSION; the NGROUPOID_MAX_N environment
    variable overrides it.
    """
    raw = os.environ.get(MAX_DIMENSION_ENV)
    if raw is None:
        return DEFAULT_MAX_DIMENSION
    try:
        return int(raw)
    except ValueError:
        raise ValueError(
            f"{MAX_DIMENSION_ENV} must be an integer, got {raw!r}"
        ) from None


class Edge(NamedTuple):
    """Oriented edge, identified by its tail vertex and coordinate axis.

    The tail has bit 0 on the axis; the head is the tail with that bit set.
    """

    tail: int
    axis: int


class Face(NamedTuple):
    """h-face: h free axes, the remaining axes pinned to fixed bits.

    ``free_axes`` is sorted ascending; ``fixed_bits`` holds (axis, bit)
    pairs for every non-free axis, sorted by axis.
    """

    free_axes: tuple[int, ...]
    fixed_bits: tuple[tuple[int, int], ...]

    @property
    def h(self) -> int:
        return len(self.free_axes)


class Square(NamedTuple):
    """A 2-face together with its oriented boundary.

    ``boundary`` lists the four edges cyclically starting at the corner
    where both free coordinates are 0: forward along the lower axis, forward
    along the higher axis at the far side, then the two return edges.
    """

    face: Face
    corner: int
    axes: tuple[int, int]
    boundary: tuple[Edge, Edge, Edge, Edge]


class FacetPair(NamedTuple):
    """The two parallel (n-1)-faces orthogonal to one axis.

    ``correspondence`` maps each facet0 vertex to the facet1 vertex at the
    head of the connecting edge of that axis.
    """

    facet0: Face
    facet1: Face
    correspondence: dict[int, int]


def axis_bit(n: int, axis: int) -> int:
    """Bit value of an axis in an n-bit vertex index (axis 1 = MSB)."""
    if not 1 <= axis <= n:
        raise ValueError(f"axis must lie in 1..{n}, got {axis}")
    return 1 << (n - axis)


def count_faces(n: int, h: int) -> int:
    """Number of h-faces of the n-cube: 2**(n-h) * C(n, h).

    Defined for 0 <= h < n; the full cube does not count as a face.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if not 0 <= h < n:
        raise ValueError(f"face dimension must lie in 0..{n - 1}, got {h}")
    return 2 ** (n - h) * math.comb(n, h)


def two_face_count(n: int) -> int:
    """Number of squares bounding commutativity, valid from n = 2 up.

    Same formula as count_faces at h = 2, but n = 2 (one square, the cube
    itself) stays in domain.
    """
    if n < 2:
        raise ValueError(f"needs dimension >= 2, got {n}")
    return 2 ** (n - 2) * math.comb(n, 2)


def strip_axis(n: int, vertex: int, axis: int) -> int:
    """Reindex an n-cube vertex into the (n-1)-cube left by deleting an axis.

    Remaining axes keep their relative order: axis J maps to J for J < axis
    and to J - 1 for J > axis.
    """
    low_width = n - axis
    low = vertex & ((1 << low_width) - 1)
    high = vertex >> (low_width + 1)
    return (high << low_width) | low


def insert_axis(n: int, vertex: int, axis: int, bit: int) -> int:
    """Inverse of strip_axis; n is the enlarged dimension holding ``axis``."""
    low_width = n - axis
    low = vertex & ((1 << low_width) - 1)
    high = vertex >> low_width
    return (high << (low_width + 1)) | (bit << low_width) | low


class HypercubeSkeleton:
    """Vertices, oriented classed edges, and faces of the n-cube skeleton.

    Immutable after construction; all enumerations are deterministic and
    cached.  Dimension 0 (a single vertex, no edges) is allowed so that
    facets of 1-skeletons are representable.
    """

    def __init__(self, n: int):
        cap = dimension_cap()
        if n < 0:
            raise ValueError(f"dimension must be >= 0, got {n}")
        if n > cap:
            raise ValueError(f"dimension {n} exceeds the cap {cap}")
        self.n = n
        self.num_vertices = 1 << n
        self._edges: tuple[Edge, ...] | None = None
        self._tree: tuple[Edge, ...] | None = None

    # -- basic structure ---------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def axis_bit(self, axis: int) -> int:
        return axis_bit(self.n, axis)

    def edges(self) -> tuple[Edge, ...]:
        """All n * 2**(n-1) oriented edges, sorted by (tail, axis)."""
        if self._edges is None:
            self._edges = tuple(
                Edge(tail, axis)
                for tail in self.vertices
                for axis in range(1, self.n + 1)
                if tail & self.axis_bit(axis) == 0
            )
        return self._edges

    def head(self, edge: Edge) -> int:
        return edge.tail | self.axis_bit(edge.axis)

    def check_edge(self, edge: Edge) -> None:
        if not 1 <= edge.axis <= self.n:
            raise ValueError(f"edge axis {edge.axis} out of range 1..{self.n}")
        if not 0 <= edge.tail < self.num_vertices:
            raise ValueError(f"edge tail {edge.tail} out of range")
        if edge.tail & self.axis_bit(edge.axis):
            raise ValueError(
                f"edge tail {edge.tail} already has bit set on axis {edge.axis}"
            )

    def adjacency_class(self, a: int, b: int) -> int | None:
        """Axis along which two vertices differ, or None.

        Returns the unique axis when the vertex indices differ in exactly
        one bit; the vertex holding the 1 bit is adjacent *from* the other.
        """
        for v in (a, b):
            if not 0 <= v < self.num_vertices:
                raise ValueError(f"vertex {v} out of range for dimension {self.n}")
        diff = a ^ b
        if diff == 0 or diff & (diff - 1):
            return None
        return self.n - diff.bit_length() + 1

    def adjacent_from(self, a: int, b: int) -> bool:
        """True when b is adjacent from a (one step forward along some axis)."""
        axis = self.adjacency_class(a, b)
        return axis is not None and bool(b & self.axis_bit(axis))

    def neighbors(self, v: int) -> list[int]:
        return [v ^ self.axis_bit(axis) for axis in range(1, self.n + 1)]

    # -- faces ---------------------------------------------------------------

    def faces(self, h: int) -> list[Face]:
        """All h-faces in deterministic enumeration order.

        Unlike count_faces this accepts h = n (the full cube as one face),
        which two_faces needs at n = 2.
        """
        if not 0 <= h <= self.n:
            raise ValueError(f"face dimension must lie in 0..{self.n}, got {h}")
        axes = range(1, self.n + 1)
        out = []
        for free in combinations(axes, h):
            fixed_axes = [a for a in axes if a not in free]
            for bits in product((0, 1), repeat=len(fixed_axes)):
                out.append(Face(free, tuple(zip(fixed_axes, bits))))
        return out

    def face_vertices(self, face: Face) -> list[int]:
        """Vertices of a face, ascending."""
        base = 0
        for axis, bit in face.fixed_bits:
            if bit:
                base |= self.axis_bit(axis)
        verts = []
        for bits in product((0, 1), repeat=face.h):
            v = base
            for axis, bit in zip(face.free_axes, bits):
                if bit:
                    v |= self.axis_bit(axis)
            verts.append(v)
        return sorted(verts)

    def face_edges(self, face: Face) -> list[Edge]:
        """Edges lying inside a face (both endpoints in it), sorted."""
        inside = set(self.face_vertices(face))
        return [
            Edge(tail, axis)
            for tail in sorted(inside)
            for axis in face.free_axes
            if tail & self.axis_bit(axis) == 0 and tail | self.axis_bit(axis) in inside
        ]

    def two_faces(self) -> list[Square]:
        """All 2-faces with their cyclic boundary edges.

        Requires n >= 2.  For a square with corner c and free axes I < J the
        boundary is (c -I-> , c+I -J->, c+J -I->, c -J->).
        """
        if self.n < 2:
            raise ValueError(f"two_faces needs dimension >= 2, got {self.n}")
        return [self.square(face) for face in self.faces(2)]

    def square(self, face: Face) -> Square:
        """Attach corner and boundary data to a 2-face."""
        if face.h != 2:
            raise ValueError(f"not a 2-face: {face}")
        corner = 0
        for axis, bit in face.fixed_bits:
            if bit:
                corner |= self.axis_bit(axis)
        lo, hi = face.free_axes
        boundary = (
            Edge(corner, lo),
            Edge(corner | self.axis_bit(lo), hi),
            Edge(corner | self.axis_bit(hi), lo),
            Edge(corner, hi),
        )
        return Square(face, corner, (lo, hi), boundary)

    def faces_containing_edge(self, edge: Edge) -> list[Square]:
        """The n-1 two-faces whose boundary includes the given edge."""
        self.check_edge(edge)
        out = []
        for other in range(1, self.n + 1):
            if other == edge.axis:
                continue
            lo, hi = sorted((edge.axis, other))
            corner = edge.tail & ~self.axis_bit(other)
            fixed = tuple(
                (a, 1 if corner & self.axis_bit(a) else 0)
                for a in range(1, self.n + 1)
                if a not in (lo, hi)
            )
            out.append(self.square(Face((lo, hi), fixed)))
        return out

    def facet_pair(self, axis: int) -> FacetPair:
        """The two (n-1)-facets orthogonal to an axis plus their vertex map."""
        bit = self.axis_bit(axis)
        free = tuple(a for a in range(1, self.n + 1) if a != axis)
        facet0 = Face(free, ((axis, 0),))
        facet1 = Face(free, ((axis, 1),))
        correspondence = {v: v | bit for v in self.vertices if v & bit == 0}
        return FacetPair(facet0, facet1, correspondence)

    # -- spanning tree and cycles ---------------------------------------------

    def spanning_tree(self) -> tuple[Edge, ...]:
        """Deterministic spanning tree rooted at vertex 0, in discovery order.

        Breadth-first over the underlying graph: each frontier is processed
        in ascending vertex index, neighbours in ascending axis.  Every tree
        edge is discovered tail-first, so iterating the result always meets
        a vertex after its parent.
        """
        if self._tree is None:
            visited = {0}
            frontier = [0]
            tree: list[Edge] = []
            while frontier:
                nxt = []
                for v in sorted(frontier):
                    for axis in range(1, self.n + 1):
                        u = v ^ self.axis_bit(axis)
                        if u not in visited:
                            visited.add(u)
                            tree.append(Edge(min(u, v), axis))
                            nxt.append(u)
                frontier = nxt
            self._tree = tuple(tree)
        return self._tree

    def cotree_edges(self) -> tuple[Edge, ...]:
        """Edges outside the spanning tree; they index the cycle space."""
        tree = set(self.spanning_tree())
        return tuple(e for e in self.edges() if e not in tree)

    def simple_cycles(self) -> list[tuple[int, ...]]:
        """Every simple cycle as a vertex tuple (first vertex not repeated).

        Each cycle appears once, anchored at its smallest vertex with the
        smaller neighbour second.  Exponential in n; intended for n <= 3.
        """
        cycles: list[tuple[int, ...]] = []
        path: list[int] = []
        on_path = [False] * self.num_vertices

        def extend(root: int) -> None:
            v = path[-1]
            for u in self.neighbors(v):
                if u == root and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(tuple(path))
                elif u > root and not on_path[u]:
                    path.append(u)
                    on_path[u] = True
                    extend(root)
                    on_path[u] = False
                    path.pop()

        for root in self.vertices:
            path = [root]
            on_path[root] = True
            extend(root)
            on_path[root] = False
        return cycles
