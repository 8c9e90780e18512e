"""Objective n-skeletons: hypercube skeletons weighted with groupoid arrows.

An objective skeleton assigns one base point to each hypercube vertex and
one invertible arrow to each oriented edge; class-I edges carry arrows of
the I-th constituent.  Skeletons compose along each axis by gluing a target
facet to a matching source facet and multiplying the connecting weights.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import CompositionError, ConstructionHalted, FormatError
from .groupoid import Arrow, Label, compose_arrows, inverse_arrow, unit_arrow
from .hypercube import Edge, HypercubeSkeleton, insert_axis, strip_axis
from .matrices import DEFAULT_TOL, as_matrix, matrices_close, rel_distance, to_row_major
from .mixture import MixtureSpec

Selector = Callable[[Edge, list[Arrow]], Arrow]


class ObjectiveSkeleton:
    """A vertex tuple of base points plus one arrow per skeleton edge.

    ``vertices[i]`` is the base point at hypercube vertex i (repetitions
    allowed); ``weights`` must cover every edge exactly, with arrow
    endpoints matching the vertex tuple.  Immutable by convention: all
    operations return new skeletons.
    """

    def __init__(self, n: int, vertices: Iterable[Label],
                 weights: Mapping[Edge, Arrow]):
        self.skel = HypercubeSkeleton(n)
        self.n = n
        self.vertices: tuple[Label, ...] = tuple(vertices)
        if len(self.vertices) != self.skel.num_vertices:
            raise ValueError(
                f"vertex tuple has {len(self.vertices)} entries, "
                f"expected {self.skel.num_vertices}"
            )
        self.weights: dict[Edge, Arrow] = {Edge(*e): weights[e] for e in weights}
        missing = [e for e in self.skel.edges() if e not in self.weights]
        if missing:
            raise ValueError(f"missing weights for edges {missing[:3]}...")
        if len(self.weights) != len(self.skel.edges()):
            extra = set(self.weights) - set(self.skel.edges())
            raise ValueError(f"weights for non-edges {sorted(extra)[:3]}")
        for e, a in self.weights.items():
            head = self.skel.head(e)
            if a.source != self.vertices[e.tail] or a.target != self.vertices[head]:
                raise ValueError(
                    f"edge {tuple(e)} arrow endpoints {a.source!r} -> {a.target!r} "
                    f"do not match vertices {self.vertices[e.tail]!r} -> "
                    f"{self.vertices[head]!r}"
                )

    def weight(self, edge: Edge) -> np.ndarray:
        return self.weights[Edge(*edge)].weight

    def arrow(self, edge: Edge) -> Arrow:
        return self.weights[Edge(*edge)]

    def __eq__(self, other) -> bool:
        """Bit-exact equality: same labels, same weight entries."""
        if not isinstance(other, ObjectiveSkeleton):
            return NotImplemented
        return (
            self.n == other.n
            and self.vertices == other.vertices
            and all(
                np.array_equal(self.weight(e), other.weight(e))
                for e in self.skel.edges()
            )
        )

    def close_to(self, other: "ObjectiveSkeleton", tol: float = DEFAULT_TOL) -> bool:
        return (
            self.n == other.n
            and self.vertices == other.vertices
            and all(
                matrices_close(self.weight(e), other.weight(e), tol)
                for e in self.skel.edges()
            )
        )

    def validate_against(self, mix: MixtureSpec) -> None:
        """Check every class-I arrow is a member of constituent I."""
        if self.n != mix.n:
            raise ValueError(
                f"skeleton dimension {self.n} != constituent count {mix.n}"
            )
        for p in self.vertices:
            if p not in mix.base_points:
                raise ValueError(f"vertex label {p!r} not in the mixture base")
        for e, a in sorted(self.weights.items()):
            if not mix.constituent(e.axis).contains_arrow(a, mix.tolerance):
                raise ValueError(
                    f"edge {tuple(e)}: weight is not an arrow of "
                    f"constituent {mix.constituent(e.axis).name!r}"
                )

    def __repr__(self):
        return f"ObjectiveSkeleton(n={self.n}, vertices={self.vertices!r})"


def _first_arrow(edge: Edge, arrows: list[Arrow]) -> Arrow:
    # canonical choice: smallest symmetry-group enumeration index
    return arrows[0]


def build(mix: MixtureSpec, W: Iterable[Label],
          selector: Selector = _first_arrow) -> ObjectiveSkeleton:
    """Construct the objective skeleton over W, one arrow per edge.

    Raises ConstructionHalted as soon as some edge has an empty arrow set:
    no skeleton exists over this tuple.
    """
    W = tuple(W)
    skel = HypercubeSkeleton(mix.n)
    weights: dict[Edge, Arrow] = {}
    for e in skel.edges():
        X, Y = W[e.tail], W[skel.head(e)]
        arrows = mix.constituent(e.axis).arrow_set(X, Y)
        if not arrows:
            raise ConstructionHalted(e, e.axis, X, Y)
        weights[e] = selector(e, arrows)
    return ObjectiveSkeleton(mix.n, W, weights)


def _facet(T: ObjectiveSkeleton, axis: int, bit: int) -> ObjectiveSkeleton:
    n = T.n
    if not 1 <= axis <= n:
        raise ValueError(f"axis must lie in 1..{n}, got {axis}")
    m = n - 1
    sub = HypercubeSkeleton(m)
    vertices = tuple(
        T.vertices[insert_axis(n, w, axis, bit)] for w in sub.vertices
    )
    weights: dict[Edge, Arrow] = {}
    for e in sub.edges():
        big_axis = e.axis if e.axis < axis else e.axis + 1
        big_tail = insert_axis(n, e.tail, axis, bit)
        weights[e] = T.arrow(Edge(big_tail, big_axis))
    return ObjectiveSkeleton(m, vertices, weights)


def source_facet(T: ObjectiveSkeleton, axis: int) -> ObjectiveSkeleton:
    """Restriction to the facet where the axis coordinate is 0."""
    return _facet(T, axis, 0)


def target_facet(T: ObjectiveSkeleton, axis: int) -> ObjectiveSkeleton:
    """Restriction to the facet where the axis coordinate is 1."""
    return _facet(T, axis, 1)


def _check_glue(T: ObjectiveSkeleton, Tp: ObjectiveSkeleton, axis: int,
                tol: float) -> None:
    if T.n != Tp.n:
        raise CompositionError(
            f"dimension mismatch: {Tp.n} vs {T.n}"
        )
    if not 1 <= axis <= T.n:
        raise CompositionError(f"axis must lie in 1..{T.n}, got {axis}")
    mid_out = target_facet(Tp, axis)
    mid_in = source_facet(T, axis)
    for w, (a, b) in enumerate(zip(mid_out.vertices, mid_in.vertices)):
        if a != b:
            raise CompositionError(
                f"facet vertex {w}: {a!r} != {b!r} (target facet of the first "
                f"factor must equal source facet of the second)"
            )
    for e in mid_out.skel.edges():
        d = rel_distance(mid_out.weight(e), mid_in.weight(e))
        if d > tol:
            raise CompositionError(
                f"facet edge {tuple(e)}: weights differ by {d:.3e} (tol {tol:.1e})"
            )


def compose(T: ObjectiveSkeleton, Tp: ObjectiveSkeleton, axis: int,
            tol: float = DEFAULT_TOL) -> ObjectiveSkeleton:
    """Glue Tp then T along an axis, multiplying the axis-class weights.

    Tp is traversed first: the result keeps Tp's source facet and T's
    target facet verbatim, and each class-``axis`` edge carries
    weight(T-edge) @ weight(Tp-edge) over the facet correspondence.
    """
    _check_glue(T, Tp, axis, tol)
    n = T.n
    bit = T.skel.axis_bit(axis)
    vertices = tuple(
        Tp.vertices[v] if v & bit == 0 else T.vertices[v]
        for v in T.skel.vertices
    )
    weights: dict[Edge, Arrow] = {}
    for e in T.skel.edges():
        if e.axis == axis:
            weights[e] = Arrow(
                Tp.vertices[e.tail],
                T.vertices[e.tail | bit],
                T.weight(e) @ Tp.weight(e),
            )
        elif e.tail & bit == 0:
            weights[e] = Tp.arrow(e)
        else:
            weights[e] = T.arrow(e)
    return ObjectiveSkeleton(n, vertices, weights)


def unit_skeleton(F: ObjectiveSkeleton, axis: int) -> ObjectiveSkeleton:
    """Degenerate skeleton with F on both axis-facets and unit axis edges."""
    n = F.n + 1
    skel = HypercubeSkeleton(n)
    if not 1 <= axis <= n:
        raise ValueError(f"axis must lie in 1..{n}, got {axis}")
    vertices = tuple(
        F.vertices[strip_axis(n, v, axis)] for v in skel.vertices
    )
    weights: dict[Edge, Arrow] = {}
    for e in skel.edges():
        if e.axis == axis:
            weights[e] = unit_arrow(vertices[e.tail])
        else:
            sub_axis = e.axis if e.axis < axis else e.axis - 1
            weights[e] = F.arrow(Edge(strip_axis(n, e.tail, axis), sub_axis))
    return ObjectiveSkeleton(n, vertices, weights)


def inverse_axis(T: ObjectiveSkeleton, axis: int) -> ObjectiveSkeleton:
    """Swap the two axis-facets and invert every class-``axis`` weight."""
    n = T.n
    bit = T.skel.axis_bit(axis)
    vertices = tuple(T.vertices[v ^ bit] for v in T.skel.vertices)
    weights: dict[Edge, Arrow] = {}
    for e in T.skel.edges():
        if e.axis == axis:
            weights[e] = inverse_arrow(T.arrow(e))
        else:
            weights[e] = T.arrow(Edge(e.tail ^ bit, e.axis))
    return ObjectiveSkeleton(n, vertices, weights)


def assemble_from_facets(F0: ObjectiveSkeleton, F1: ObjectiveSkeleton,
                         axis: int,
                         connecting: Mapping[int, Arrow]) -> ObjectiveSkeleton:
    """Rebuild an n-skeleton from its two axis-facets and connecting arrows.

    ``connecting`` maps each facet-0 vertex index (in the assembled,
    n-dimensional numbering) to the arrow along the gluing axis.
    """
    if F0.n != F1.n:
        raise CompositionError(f"facet dimension mismatch: {F0.n} vs {F1.n}")
    n = F0.n + 1
    skel = HypercubeSkeleton(n)
    bit = skel.axis_bit(axis)
    vertices = tuple(
        (F1 if v & bit else F0).vertices[strip_axis(n, v, axis)]
        for v in skel.vertices
    )
    weights: dict[Edge, Arrow] = {}
    for e in skel.edges():
        if e.axis == axis:
            weights[e] = connecting[e.tail]
        else:
            side = F1 if e.tail & bit else F0
            sub_axis = e.axis if e.axis < axis else e.axis - 1
            weights[e] = side.arrow(Edge(strip_axis(n, e.tail, axis), sub_axis))
    return ObjectiveSkeleton(n, vertices, weights)


def interchange_check(T: ObjectiveSkeleton, Tp: ObjectiveSkeleton,
                      Tpp: ObjectiveSkeleton, Tppp: ObjectiveSkeleton,
                      axis_i: int, axis_j: int,
                      tol: float = DEFAULT_TOL) -> bool:
    """Compare the two evaluation orders of a composable 2x2 block.

    Tppp sits first along both axes, Tp above it along axis_j, Tpp beside
    it along axis_i, T in the far corner.  Raises CompositionError when
    either side is undefined.
    """
    if axis_i == axis_j:
        raise ValueError("interchange needs two distinct axes")
    side_rows = compose(
        compose(T, Tp, axis_i, tol), compose(Tpp, Tppp, axis_i, tol), axis_j, tol
    )
    side_cols = compose(
        compose(T, Tpp, axis_j, tol), compose(Tp, Tppp, axis_j, tol), axis_i, tol
    )
    return side_rows.close_to(side_cols, tol)


# -- file format ---------------------------------------------------------------

def skeleton_to_dict(T: ObjectiveSkeleton) -> dict:
    return {
        "n": T.n,
        "vertices": list(T.vertices),
        "edges": [
            {
                "tail": e.tail,
                "axis": e.axis,
                "weight": to_row_major(T.weight(e)),
            }
            for e in T.skel.edges()
        ],
    }


def skeleton_from_dict(doc: object) -> ObjectiveSkeleton:
    if not isinstance(doc, dict):
        raise FormatError("skeleton document must be an object")
    for key in ("n", "vertices", "edges"):
        if key not in doc:
            raise FormatError(f"skeleton: missing field {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"skeleton: 'n' must be a positive integer, got {n!r}")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or len(vertices) != 2 ** n:
        raise FormatError(
            f"skeleton: 'vertices' must list exactly {2 ** n} labels"
        )
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise FormatError("skeleton: 'edges' must be a list")
    try:
        skel = HypercubeSkeleton(n)
    except ValueError as exc:
        raise FormatError(f"skeleton: {exc}") from exc
    weights: dict[Edge, Arrow] = {}
    for idx, rec in enumerate(edges):
        where = f"edges[{idx}]"
        if not isinstance(rec, dict):
            raise FormatError(f"skeleton: {where} must be an object")
        for key in ("tail", "axis", "weight"):
            if key not in rec:
                raise FormatError(f"skeleton: {where} missing field {key!r}")
        e = Edge(rec["tail"], rec["axis"])
        try:
            skel.check_edge(e)
        except (ValueError, TypeError) as exc:
            raise FormatError(f"skeleton: {where}: {exc}") from exc
        if e in weights:
            raise FormatError(f"skeleton: {where}: duplicate edge {tuple(e)}")
        try:
            weights[e] = Arrow(
                vertices[e.tail], vertices[skel.head(e)], as_matrix(rec["weight"])
            )
        except ValueError as exc:
            raise FormatError(f"skeleton: {where}: {exc}") from exc
    try:
        return ObjectiveSkeleton(n, vertices, weights)
    except ValueError as exc:
        raise FormatError(f"skeleton: {exc}") from exc


def dump_skeleton(T: ObjectiveSkeleton) -> str:
    return json.dumps(skeleton_to_dict(T), indent=2) + "\n"


def save_skeleton(T: ObjectiveSkeleton, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_skeleton(T))


def load_skeleton(path: str) -> ObjectiveSkeleton:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return skeleton_from_dict(doc)
