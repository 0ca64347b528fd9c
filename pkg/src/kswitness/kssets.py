"""Finite ray sets, orthogonality graphs, and exact {0,1}-colorability.

Everything in this module is exact: ray coordinates are integers (optionally
integer pairs ``a + b*sqrt(2)``, which several classic sets need), so
orthogonality is decided by integer arithmetic with no floating-point
tolerance anywhere.

A ray set is colorable when its rays admit an assignment of {0,1} values with
at most one 1 among any orthogonal pair and exactly one 1 in every listed
basis.  The classic finite non-colorable sets (Cabello's 18 rays, Peres' 33
and 24 rays, Kernaghan's 20-ray sub-configuration) ship as bundled JSON data.

Ray sets and graphs are immutable once constructed; independent solver runs
may proceed concurrently, a single search is sequential.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path


class DuplicateRay(ValueError):
    """Two rays in a set are scalar multiples of each other."""


class RaySetFormatError(ValueError):
    """A ray-set document violates the JSON schema or its invariants."""


# An exact coordinate entry a + b*sqrt(2), stored as the integer pair (a, b).
Entry = tuple[int, int]


def _ent_mul(u: Entry, v: Entry) -> Entry:
    a, b = u
    c, d = v
    return (a * c + 2 * b * d, a * d + b * c)


def _ent_sub(u: Entry, v: Entry) -> Entry:
    return (u[0] - v[0], u[1] - v[1])


def exact_dot(r: tuple[Entry, ...], s: tuple[Entry, ...]) -> Entry:
    """Exact inner product of two rays over Z[sqrt(2)]."""
    a = b = 0
    for u, v in zip(r, s):
        p = _ent_mul(u, v)
        a += p[0]
        b += p[1]
    return (a, b)


def is_orthogonal(r: tuple[Entry, ...], s: tuple[Entry, ...]) -> bool:
    """True iff the real inner product is exactly zero (sqrt(2) is irrational,
    so a + b*sqrt(2) = 0 forces a = b = 0)."""
    return exact_dot(r, s) == (0, 0)


def are_parallel(r: tuple[Entry, ...], s: tuple[Entry, ...]) -> bool:
    """Exact scalar-multiple test via vanishing 2x2 minors."""
    n = len(r)
    for i in range(n):
        for j in range(i + 1, n):
            if _ent_sub(_ent_mul(r[i], s[j]), _ent_mul(r[j], s[i])) != (0, 0):
                return False
    return True


def _parse_entry(raw) -> Entry | Fraction:
    """One coordinate: int, integral float, 'p/q' string, or [a, b] pair."""
    if isinstance(raw, bool):
        raise RaySetFormatError(f"coordinate entry {raw!r} is not a number")
    if isinstance(raw, int):
        return (raw, 0)
    if isinstance(raw, float):
        if raw != int(raw):
            raise RaySetFormatError(
                f"non-integral float coordinate {raw!r}; use an exact 'p/q' string"
            )
        return (int(raw), 0)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise RaySetFormatError(f"bad rational coordinate {raw!r}") from exc
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        a, b = raw
        if isinstance(a, int) and isinstance(b, int) and not isinstance(a, bool) and not isinstance(b, bool):
            return (a, b)
        raise RaySetFormatError(f"sqrt2 pair {raw!r} must hold two integers")
    raise RaySetFormatError(f"unsupported coordinate entry {raw!r}")


def _parse_ray(raw_vector, dimension: int) -> tuple[Entry, ...]:
    if len(raw_vector) != dimension:
        raise RaySetFormatError(
            f"vector {raw_vector!r} has length {len(raw_vector)}, expected {dimension}"
        )
    parsed = [_parse_entry(e) for e in raw_vector]
    fracs = [e for e in parsed if isinstance(e, Fraction)]
    if fracs:
        # Clear rational denominators for the whole ray (rays are projective).
        denom = 1
        for f in fracs:
            denom = denom * f.denominator // gcd(denom, f.denominator)
        cleared = []
        for e in parsed:
            if isinstance(e, Fraction):
                cleared.append((int(e * denom), 0))
            else:
                cleared.append((e[0] * denom, e[1] * denom))
        parsed = cleared
    ray = _canonical_ray(tuple(parsed))
    if all(e == (0, 0) for e in ray):
        raise RaySetFormatError(f"zero vector {raw_vector!r} is not a ray")
    return ray


def _canonical_ray(ray: tuple[Entry, ...]) -> tuple[Entry, ...]:
    """Divide out the integer content and fix the sign of the first nonzero
    entry.  Cosmetic only; parallel detection never relies on it."""
    coeffs = [abs(c) for e in ray for c in e if c != 0]
    if not coeffs:
        return ray
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g > 1:
        ray = tuple((a // g, b // g) for a, b in ray)
    # A ray whose entries are all pure sqrt(2) multiples divides by sqrt(2).
    if all(a == 0 for a, _ in ray):
        ray = tuple((b, 0) for _, b in ray)
    for a, b in ray:
        lead = a if a != 0 else b
        if lead != 0:
            if lead < 0:
                ray = tuple((-a, -b) for a, b in ray)
            break
    return ray


def format_entry(entry: Entry):
    """JSON form of one coordinate: plain int when possible, else [a, b]."""
    a, b = entry
    return a if b == 0 else [a, b]


@dataclass(frozen=True)
class RaySet:
    """A named finite set of rays with integer (or integer + integer*sqrt2)
    coordinates, identified up to sign and scale.

    ``bases`` optionally carries designated bases (index tuples) supplied by
    the source data; when absent, callers enumerate d-cliques instead.
    """

    name: str
    dimension: int
    rays: tuple[tuple[Entry, ...], ...]
    provenance: str = ""
    bases: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.dimension < 2:
            raise RaySetFormatError("dimension must be at least 2")
        if not self.rays:
            raise RaySetFormatError("ray set is empty")
        for ray in self.rays:
            if len(ray) != self.dimension:
                raise RaySetFormatError("ray length does not match dimension")
        for i in range(len(self.rays)):
            for j in range(i + 1, len(self.rays)):
                if are_parallel(self.rays[i], self.rays[j]):
                    raise DuplicateRay(
                        f"rays {i} and {j} of {self.name!r} are scalar multiples"
                    )
        if self.bases is not None:
            for basis in self.bases:
                if len(set(basis)) != self.dimension:
                    raise RaySetFormatError(f"basis {basis!r} must hold {self.dimension} distinct rays")
                for idx in basis:
                    if not 0 <= idx < len(self.rays):
                        raise RaySetFormatError(f"basis index {idx} out of range")

    def __len__(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class OrthoGraph:
    """Orthogonality graph: one vertex per ray, an edge per exactly
    orthogonal pair."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[frozenset[int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def build_ortho_graph(ray_set: RaySet) -> OrthoGraph:
    """Edges are decided by exact integer arithmetic; no tolerance exists."""
    n = len(ray_set.rays)
    edges = set()
    neighbors = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if is_orthogonal(ray_set.rays[i], ray_set.rays[j]):
                edges.add((i, j))
                neighbors[i].add(j)
                neighbors[j].add(i)
    return OrthoGraph(n, frozenset(edges), tuple(frozenset(s) for s in neighbors))


def enumerate_bases(graph: OrthoGraph, dimension: int) -> tuple[tuple[int, ...], ...]:
    """All d-cliques of the orthogonality graph, in lexicographic order.

    A d-clique of mutually orthogonal rays in d dimensions is automatically a
    basis, so no extra geometric check is needed.
    """
    bases: list[tuple[int, ...]] = []

    def extend(clique: list[int], candidates: list[int]):
        if len(clique) == dimension:
            bases.append(tuple(clique))
            return
        # Not enough candidates left to finish the clique.
        if len(clique) + len(candidates) < dimension:
            return
        for k, v in enumerate(candidates):
            adj = graph.adjacency[v]
            extend(clique + [v], [u for u in candidates[k + 1:] if u in adj])

    extend([], list(range(graph.vertex_count)))
    return tuple(bases)


def validate_supplied_bases(graph: OrthoGraph, dimension: int,
                            supplied: tuple[tuple[int, ...], ...]) -> None:
    """Supplied bases must be cliques and a subset of the enumerated ones."""
    enumerated = {tuple(sorted(b)) for b in enumerate_bases(graph, dimension)}
    for basis in supplied:
        if tuple(sorted(basis)) not in enumerated:
            raise RaySetFormatError(
                f"supplied basis {basis!r} is not a mutually orthogonal {dimension}-tuple"
            )


@dataclass(frozen=True)
class ColoringResult:
    """Outcome of the {0,1}-coloring search.

    ``assignment`` maps ray index -> value for colorable sets and is always
    re-verified against both constraint families before being returned.
    """

    colorable: bool
    assignment: tuple[int, ...] | None
    nodes_explored: int
    backtracks: int

    def to_json_dict(self) -> dict:
        return {
            "colorable": self.colorable,
            "assignment": list(self.assignment) if self.assignment is not None else None,
            "nodes_explored": self.nodes_explored,
            "backtracks": self.backtracks,
        }


def verify_assignment(graph: OrthoGraph, bases, assignment) -> bool:
    """Independent checker: at most one 1 per edge, exactly one 1 per basis.

    Used to gate every Colorable result; deliberately has no shared logic
    with the backtracking solver.
    """
    if len(assignment) != graph.vertex_count:
        return False
    if any(v not in (0, 1) for v in assignment):
        return False
    for i, j in graph.edges:
        if assignment[i] == 1 and assignment[j] == 1:
            return False
    for basis in bases:
        if sum(assignment[i] for i in basis) != 1:
            return False
    return True


def find_valuation(graph: OrthoGraph, bases) -> ColoringResult:
    """Backtracking search with constraint propagation.

    Branches on the basis with the fewest unassigned members (any ordering
    is correct; this one is fast).  Assigning a ray 1 zeroes its neighbors;
    a basis whose members are all 0 is a dead end; a basis with one live
    member left forces it to 1.
    """
    n = graph.vertex_count
    bases = [tuple(b) for b in bases]
    values: list[int] = [-1] * n
    stats = {"nodes": 0, "backtracks": 0}

    def propagate(assignments: list[tuple[int, int]], trail: list[int]) -> bool:
        queue = list(assignments)
        while queue:
            ray, val = queue.pop()
            if values[ray] != -1:
                if values[ray] != val:
                    return False
                continue
            values[ray] = val
            trail.append(ray)
            if val == 1:
                for other in graph.adjacency[ray]:
                    if values[other] == 1:
                        return False
                    if values[other] == -1:
                        queue.append((other, 0))
        # Unit propagation over bases: a basis must contain exactly one 1.
        changed = True
        while changed:
            changed = False
            for basis in bases:
                ones = sum(1 for i in basis if values[i] == 1)
                if ones > 1:
                    return False
                open_rays = [i for i in basis if values[i] == -1]
                if ones == 1:
                    for i in open_rays:
                        values[i] = 0
                        trail.append(i)
                        changed = True
                elif not open_rays:
                    return False
                elif len(open_rays) == 1:
                    forced = open_rays[0]
                    values[forced] = 1
                    trail.append(forced)
                    changed = True
                    for other in graph.adjacency[forced]:
                        if values[other] == 1:
                            return False
                        if values[other] == -1:
                            values[other] = 0
                            trail.append(other)
        return True

    def undo(trail: list[int]) -> None:
        for ray in trail:
            values[ray] = -1

    def choose_basis() -> tuple[int, ...] | None:
        best = None
        best_open = None
        for basis in bases:
            if any(values[i] == 1 for i in basis):
                continue
            open_rays = [i for i in basis if values[i] == -1]
            if best is None or len(open_rays) < len(best_open):
                best, best_open = basis, open_rays
        return best

    def search() -> bool:
        stats["nodes"] += 1
        basis = choose_basis()
        if basis is None:
            return True
        for candidate in basis:
            if values[candidate] != -1:
                continue
            trail: list[int] = []
            if propagate([(candidate, 1)], trail) and search():
                return True
            undo(trail)
            stats["backtracks"] += 1
        return False

    trail0: list[int] = []
    ok = propagate([], trail0)
    if ok and search():
        assignment = tuple(v if v != -1 else 0 for v in values)
        if not verify_assignment(graph, bases, assignment):
            raise AssertionError("solver produced an assignment that fails verification")
        return ColoringResult(True, assignment, stats["nodes"], stats["backtracks"])
    return ColoringResult(False, None, stats["nodes"], stats["backtracks"])


# --- JSON ingestion and bundled data -------------------------------------

DATA_DIR_ENV = "KS_DATA_DIR"


def bundled_data_dir() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def available_sets() -> list[str]:
    return sorted(p.stem for p in bundled_data_dir().glob("*.json"))


def ray_set_from_dict(doc: dict) -> RaySet:
    """Build a RaySet from the documented JSON schema (see README)."""
    if not isinstance(doc, dict):
        raise RaySetFormatError("ray-set document must be a JSON object")
    for key in ("name", "dimension", "vectors"):
        if key not in doc:
            raise RaySetFormatError(f"missing required field {key!r}")
    name = doc["name"]
    dimension = doc["dimension"]
    if not isinstance(name, str) or not isinstance(dimension, int) or isinstance(dimension, bool):
        raise RaySetFormatError("'name' must be a string and 'dimension' an integer")
    vectors = doc["vectors"]
    if not isinstance(vectors, list) or not vectors:
        raise RaySetFormatError("'vectors' must be a nonempty list")
    rays = tuple(_parse_ray(v, dimension) for v in vectors)
    bases = None
    if doc.get("bases") is not None:
        raw_bases = doc["bases"]
        if not isinstance(raw_bases, list):
            raise RaySetFormatError("'bases' must be a list of index lists")
        bases = tuple(tuple(b) for b in raw_bases)
        for basis in bases:
            if len(basis) != dimension or any(
                not isinstance(i, int) or isinstance(i, bool) for i in basis
            ):
                raise RaySetFormatError(f"basis {basis!r} must be {dimension} integer indices")
    ray_set = RaySet(
        name=name,
        dimension=dimension,
        rays=rays,
        provenance=doc.get("provenance", ""),
        bases=bases,
    )
    if bases is not None:
        graph = build_ortho_graph(ray_set)
        validate_supplied_bases(graph, dimension, bases)
    return ray_set


def load_ray_set(path) -> RaySet:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RaySetFormatError(f"invalid JSON in {path}: {exc}") from exc
    return ray_set_from_dict(doc)


def load_bundled(name: str) -> RaySet:
    path = bundled_data_dir() / f"{name}.json"
    if not path.exists():
        raise RaySetFormatError(
            f"no bundled ray set {name!r}; available: {', '.join(available_sets())}"
        )
    return load_ray_set(path)
