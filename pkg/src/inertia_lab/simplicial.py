"""Finite simplicial sets with exact Eilenberg-Zilber normal forms.

Cells are stored per dimension as non-degenerate generators with integer
identifiers; every simplex is a generator with a canonical degeneracy word
(strictly decreasing indices, outermost first).  Face and degeneracy
operators act on these normal forms by rewriting with the simplicial
identities, so all constructions stay exact and deterministic.

Main entry points:

- ``OrdinalMap``, ``compose_ordinal``, ``coface``, ``codegeneracy``
- ``shuffles(p, q)`` -- signed (p,q)-shuffles in lexicographic order
- ``SSet`` plus builders: ``standard_simplex``, ``minimal_circle``,
  ``product``, ``nerve_of_group``, ``nerve_of_groupoid``, ``from_abstract``
- ``apply_face`` / ``apply_degeneracy`` / ``apply_word``
- JSON round-trip: ``sset_to_json`` / ``sset_from_json``
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb


class SimplicialError(ValueError):
    """Raised on malformed simplicial data or out-of-range indices."""


# ---------------------------------------------------------------------------
# Ordinal maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrdinalMap:
    """A weakly increasing map [domain_dim] -> [codomain_dim]."""

    domain_dim: int
    codomain_dim: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.domain_dim + 1:
            raise SimplicialError(
                f"expected {self.domain_dim + 1} images, got {len(self.images)}")
        if any(a > b for a, b in zip(self.images, self.images[1:])):
            raise SimplicialError(f"images not weakly increasing: {self.images}")
        if self.images and not (0 <= self.images[0] and self.images[-1] <= self.codomain_dim):
            raise SimplicialError(
                f"images {self.images} out of range 0..{self.codomain_dim}")

    def __call__(self, k: int) -> int:
        return self.images[k]


def compose_ordinal(f: OrdinalMap, g: OrdinalMap) -> OrdinalMap:
    """Pointwise composite g(f(-)) of [a] -f-> [b] -g-> [c]."""
    if f.codomain_dim != g.domain_dim:
        raise SimplicialError(
            f"cannot compose: codomain [{f.codomain_dim}] != domain [{g.domain_dim}]")
    return OrdinalMap(f.domain_dim, g.codomain_dim,
                      tuple(g.images[v] for v in f.images))


def coface(i: int, n: int) -> OrdinalMap:
    """The injection [n] -> [n+1] skipping the value i."""
    if not 0 <= i <= n + 1:
        raise SimplicialError(f"coface index {i} out of range for [{n}]->[{n + 1}]")
    return OrdinalMap(n, n + 1, tuple(v if v < i else v + 1 for v in range(n + 1)))


def codegeneracy(i: int, n: int) -> OrdinalMap:
    """The surjection [n+1] -> [n] repeating the value i."""
    if not 0 <= i <= n:
        raise SimplicialError(f"codegeneracy index {i} out of range for [{n + 1}]->[{n}]")
    return OrdinalMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def identity_ordinal(n: int) -> OrdinalMap:
    return OrdinalMap(n, n, tuple(range(n + 1)))


# ---------------------------------------------------------------------------
# Shuffles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Shuffle:
    """A (p,q)-shuffle: disjoint increasing mu (length p), nu (length q)."""

    p: int
    q: int
    mu: tuple[int, ...]
    nu: tuple[int, ...]
    sign: int


def _permutation_sign(seq) -> int:
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq))
                     if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def shuffles(p: int, q: int) -> list[Shuffle]:
    """All (p,q)-shuffles, lexicographic in mu, with permutation signs."""
    out = []
    universe = range(p + q)
    for mu in combinations(universe, p):
        mu_set = set(mu)
        nu = tuple(k for k in universe if k not in mu_set)
        out.append(Shuffle(p, q, mu, nu, _permutation_sign(mu + nu)))
    assert len(out) == comb(p + q, p)
    return out


# ---------------------------------------------------------------------------
# Degeneracy words
# ---------------------------------------------------------------------------
#
# A canonical word (i_1, ..., i_k) is strictly decreasing and denotes
# s_{i_1} s_{i_2} ... s_{i_k} applied to a base cell, outermost first.

def _prepend_degeneracy(i: int, word: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form of s_i applied after the canonical word `word`."""
    if not word or i > word[0]:
        return (i,) + word
    # s_i s_j = s_{j+1} s_i for i <= j
    return (word[0] + 1,) + _prepend_degeneracy(i, word[1:])


def normalize_word(raw) -> tuple[int, ...]:
    """Canonicalize a degeneracy word given outermost-first."""
    word: tuple[int, ...] = ()
    for i in reversed(tuple(raw)):
        word = _prepend_degeneracy(i, word)
    return word


@dataclass(frozen=True)
class Simplex:
    """A simplex in EZ normal form: canonical degeneracy word on a base cell."""

    base: int
    word: tuple[int, ...] = ()

    def is_degenerate(self) -> bool:
        return bool(self.word)


# ---------------------------------------------------------------------------
# Simplicial sets
# ---------------------------------------------------------------------------

@dataclass
class SSet:
    """A finite simplicial set truncated at dimension ``dim_bound``.

    ``cells[d]`` lists the non-degenerate d-cell ids; ``faces[c]`` stores the
    d+1 faces of generator c as Simplex values; ``labels`` is printable data
    used for JSON output and debugging.
    """

    dim_bound: int
    cells: list[list[int]] = field(default_factory=list)
    faces: dict[int, tuple[Simplex, ...]] = field(default_factory=dict)
    dim_of: dict[int, int] = field(default_factory=dict)
    labels: dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim_bound < 0:
            raise SimplicialError("dim_bound must be non-negative")
        if not self.cells:
            self.cells = [[] for _ in range(self.dim_bound + 1)]

    # -- construction ------------------------------------------------------

    def add_cell(self, dim: int, label=None) -> int:
        if not 0 <= dim <= self.dim_bound:
            raise SimplicialError(f"cell dimension {dim} exceeds bound {self.dim_bound}")
        cid = len(self.dim_of)
        self.cells[dim].append(cid)
        self.dim_of[cid] = dim
        if label is not None:
            self.labels[cid] = label
        return cid

    def set_faces(self, cid: int, faces) -> None:
        faces = tuple(faces)
        d = self.dim_of[cid]
        if d == 0:
            if faces:
                raise SimplicialError("vertices have no faces")
            return
        if len(faces) != d + 1:
            raise SimplicialError(f"cell of dim {d} needs {d + 1} faces")
        for s in faces:
            if self.simplex_dim(s) != d - 1:
                raise SimplicialError("face has wrong dimension")
        self.faces[cid] = faces

    # -- basic queries -----------------------------------------------------

    def n_cells(self, dim: int) -> list[int]:
        if dim > self.dim_bound:
            return []
        return list(self.cells[dim])

    def nondegenerate_counts(self) -> tuple[int, ...]:
        counts = [len(c) for c in self.cells]
        while counts and counts[-1] == 0:
            counts.pop()
        return tuple(counts)

    def simplex_dim(self, s: Simplex) -> int:
        return self.dim_of[s.base] + len(s.word)

    def simplices(self, dim: int) -> list[Simplex]:
        """All dim-simplices, degenerate included, in deterministic order."""
        out = []
        for d in range(dim + 1):
            for cid in self.cells[d]:
                if d == dim:
                    out.append(Simplex(cid))
                else:
                    for word in combinations(range(dim - 1, -1, -1), dim - d):
                        if all(a > b for a, b in zip(word, word[1:])) and (
                                not word or word[0] <= dim - 1):
                            out.append(Simplex(cid, word))
        return out

    # -- operators ---------------------------------------------------------

    def face(self, s: Simplex, i: int) -> Simplex:
        """d_i applied to a simplex in normal form, renormalized."""
        dim = self.simplex_dim(s)
        if dim == 0:
            raise SimplicialError("vertices have no faces")
        if not 0 <= i <= dim:
            raise SimplicialError(f"face index {i} out of range for dim {dim}")
        if s.word:
            j = s.word[0]
            rest = Simplex(s.base, s.word[1:])
            if i < j:
                inner = self.face(rest, i)
                return Simplex(inner.base, _prepend_degeneracy(j - 1, inner.word))
            if i in (j, j + 1):
                return rest
            inner = self.face(rest, i - 1)
            return Simplex(inner.base, _prepend_degeneracy(j, inner.word))
        return self.faces[s.base][i]

    def degeneracy(self, s: Simplex, i: int) -> Simplex:
        dim = self.simplex_dim(s)
        if not 0 <= i <= dim:
            raise SimplicialError(f"degeneracy index {i} out of range for dim {dim}")
        if dim + 1 > self.dim_bound:
            raise SimplicialError(f"degeneracy exceeds dim bound {self.dim_bound}")
        return Simplex(s.base, _prepend_degeneracy(i, s.word))

    def validate(self) -> None:
        """Check the simplicial identities on all generators."""
        for d in range(2, self.dim_bound + 1):
            for cid in self.cells[d]:
                x = Simplex(cid)
                for j in range(d + 1):
                    for i in range(j):
                        lhs = self.face(self.face(x, j), i)
                        rhs = self.face(self.face(x, i), j - 1)
                        if lhs != rhs:
                            raise SimplicialError(
                                f"d_{i} d_{j} != d_{j - 1} d_{i} on cell {cid}")
        for d in range(self.dim_bound):
            for cid in self.cells[d]:
                x = Simplex(cid)
                for j in range(d + 1):
                    sx = self.degeneracy(x, j)
                    for i in range(d + 2):
                        got = self.face(sx, i)
                        if i < j:
                            want = self.degeneracy(self.face(x, i), j - 1) if d else None
                        elif i in (j, j + 1):
                            want = x
                        else:
                            want = self.degeneracy(self.face(x, i - 1), j)
                        if want is not None and got != want:
                            raise SimplicialError(
                                f"d_{i} s_{j} identity fails on cell {cid}")
                    if d + 2 <= self.dim_bound:
                        for i in range(j + 1):
                            if self.degeneracy(sx, i) != self.degeneracy(
                                    self.degeneracy(x, i), j + 1):
                                raise SimplicialError(
                                    f"s_{i} s_{j} identity fails on cell {cid}")


def apply_face(sset: SSet, s: Simplex, i: int) -> Simplex:
    return sset.face(s, i)


def apply_degeneracy(sset: SSet, s: Simplex, i: int) -> Simplex:
    return sset.degeneracy(s, i)


def apply_word(sset: SSet, ops, s: Simplex) -> Simplex:
    """Apply a raw operator word, e.g. [('d',1),('s',0)] meaning d_1 s_0."""
    for kind, i in reversed(list(ops)):
        if kind == "d":
            s = sset.face(s, i)
        elif kind == "s":
            s = sset.degeneracy(s, i)
        else:
            raise SimplicialError(f"unknown operator kind {kind!r}")
    return s


def degeneracy_word_from_increasing(indices) -> tuple[int, ...]:
    """Canonical word of the shuffle degeneracy s_nu.

    For increasing nu, the operator is s_{nu_{q-1}} (outermost) down to
    s_{nu_0} (applied first), so the reversed tuple is already the strictly
    decreasing canonical word.
    """
    word = tuple(reversed(tuple(indices)))
    if any(a <= b for a, b in zip(word, word[1:])):
        raise SimplicialError(f"indices {indices} are not strictly increasing")
    return word


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def empty_sset(dim_bound: int = 6) -> SSet:
    return SSet(dim_bound)


def point(dim_bound: int = 6) -> SSet:
    X = SSet(dim_bound)
    X.add_cell(0, label="*")
    return X


def standard_simplex(n: int, dim_bound: int | None = None) -> SSet:
    """Delta[n]: non-degenerate d-cells are the (d+1)-subsets of {0..n}."""
    if dim_bound is None:
        dim_bound = max(n, 6)
    X = SSet(dim_bound)
    ids: dict[tuple[int, ...], int] = {}
    for d in range(min(n, dim_bound) + 1):
        for verts in combinations(range(n + 1), d + 1):
            ids[verts] = X.add_cell(d, label=list(verts))
    for verts, cid in ids.items():
        d = len(verts) - 1
        if d == 0:
            continue
        X.set_faces(cid, tuple(
            Simplex(ids[verts[:i] + verts[i + 1:]]) for i in range(d + 1)))
    return X


def minimal_circle(dim_bound: int = 6) -> SSet:
    """Delta[1]/boundary: one vertex and one non-degenerate 1-cell."""
    X = SSet(dim_bound)
    v = X.add_cell(0, label="*")
    ell = X.add_cell(1, label="loop")
    X.set_faces(ell, (Simplex(v), Simplex(v)))
    return X


def circle_loop(circle: SSet) -> Simplex:
    return Simplex(circle.cells[1][0])


# -- generic extraction from an abstract model ------------------------------

class AbstractSimplicial:
    """Interface for extracting an SSet from externally-defined cells.

    Implementations provide hashable cell values per dimension along with
    face/degeneracy functions; ``from_abstract`` finds the non-degenerate
    cells and canonical normal forms.
    """

    def cells(self, dim: int):
        raise NotImplementedError

    def face(self, dim: int, i: int, cell):
        raise NotImplementedError

    def degeneracy(self, dim: int, i: int, cell):
        raise NotImplementedError

    def label(self, dim: int, cell):
        return cell


def _strip_degeneracies(model: AbstractSimplicial, dim: int, cell):
    """Return (raw word outermost-first, non-degenerate base, base dim)."""
    word = []
    while dim > 0:
        for i in range(dim):
            below = model.face(dim, i, cell)
            if model.degeneracy(dim - 1, i, below) == cell:
                word.append(i)
                cell = below
                dim -= 1
                break
        else:
            break
    return word, cell, dim


def from_abstract(model: AbstractSimplicial, dim_bound: int) -> SSet:
    X = SSet(dim_bound)
    ids: dict[tuple[int, object], int] = {}
    for d in range(dim_bound + 1):
        for cell in model.cells(d):
            word, base, bd = _strip_degeneracies(model, d, cell)
            if not word:
                ids[(d, cell)] = X.add_cell(d, label=model.label(d, cell))
    for (d, cell), cid in sorted(ids.items(), key=lambda kv: kv[1]):
        if d == 0:
            continue
        fs = []
        for i in range(d + 1):
            below = model.face(d, i, cell)
            word, base, bd = _strip_degeneracies(model, d - 1, below)
            fs.append(Simplex(ids[(bd, base)], normalize_word(word)))
        X.set_faces(cid, fs)
    return X


# -- products ----------------------------------------------------------------

def _pair_normal_form(X: SSet, Y: SSet, sx: Simplex, sy: Simplex):
    """EZ normal form of a cell (sx, sy) of X x Y: raw word + base pair."""
    word = []
    dim = X.simplex_dim(sx)
    while dim > 0:
        for i in range(dim):
            fx, fy = X.face(sx, i), Y.face(sy, i)
            if X.degeneracy(fx, i) == sx and Y.degeneracy(fy, i) == sy:
                word.append(i)
                sx, sy = fx, fy
                dim -= 1
                break
        else:
            break
    return normalize_word(word), sx, sy


def product(X: SSet, Y: SSet, dim_bound: int | None = None) -> SSet:
    """Cartesian product with cells the shuffle triples (x, y, (mu, nu))."""
    if dim_bound is None:
        dim_bound = min(X.dim_bound, Y.dim_bound)
    P = SSet(dim_bound)
    ids: dict[tuple, int] = {}
    for n in range(dim_bound + 1):
        for p in range(n + 1):
            q = n - p
            for x in X.n_cells(p):
                for y in Y.n_cells(q):
                    for sh in shuffles(p, q):
                        key = (x, y, sh.mu)
                        ids[key] = P.add_cell(
                            n, label=[X.labels.get(x, x), Y.labels.get(y, y),
                                      list(sh.mu)])
    for key, cid in sorted(ids.items(), key=lambda kv: kv[1]):
        x, y, mu = key
        p = X.dim_of[x]
        q = Y.dim_of[y]
        n = p + q
        if n == 0:
            continue
        nu = tuple(k for k in range(n) if k not in set(mu))
        sx = Simplex(x, degeneracy_word_from_increasing(nu))
        sy = Simplex(y, degeneracy_word_from_increasing(mu))
        fs = []
        for i in range(n + 1):
            word, bx, by = _pair_normal_form(X, Y, X.face(sx, i), Y.face(sy, i))
            base_mu = tuple(sorted(by.word))
            base_key = (bx.base, by.base, base_mu)
            if base_key not in ids:
                raise SimplicialError("product face fell outside the cell table")
            fs.append(Simplex(ids[base_key], word))
        P.set_faces(cid, fs)
    return P


def product_cell_count(X: SSet, Y: SSet, dim: int) -> int:
    """Number of non-degenerate dim-cells of X x Y, without building faces."""
    total = 0
    for p in range(dim + 1):
        q = dim - p
        total += len(X.n_cells(p)) * len(Y.n_cells(q)) * comb(dim, p)
    return total


# -- nerves -------------------------------------------------------------------

class FinGroupoid:
    """A finite groupoid: objects, morphisms with source/target, composition.

    ``compose(f, g)`` is "f then g".  Morphisms and objects are hashable.
    """

    def __init__(self, objects, morphisms, source, target, compose, identity):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.source = source
        self.target = target
        self.compose = compose
        self.identity = identity

    def is_identity(self, f) -> bool:
        return f == self.identity(self.source(f))


def nerve_of_groupoid(C: FinGroupoid, dim_bound: int) -> SSet:
    """Nerve: non-degenerate n-cells are identity-free composable strings."""
    X = SSet(dim_bound)
    ids: dict[tuple, int] = {}
    for obj in C.objects:
        ids[("obj", obj)] = X.add_cell(0, label=obj)
    strings = {0: [((), obj) for obj in C.objects]}
    nonid = [f for f in C.morphisms if not C.is_identity(f)]
    by_source: dict[object, list] = {}
    for f in nonid:
        by_source.setdefault(C.source(f), []).append(f)
    for n in range(1, dim_bound + 1):
        strings[n] = []
        for prefix, end in strings[n - 1]:
            for f in by_source.get(end, ()):
                chain = prefix + (f,)
                strings[n].append((chain, C.target(f)))
                ids[("str", chain)] = X.add_cell(n, label=list(chain))
    for n in range(1, dim_bound + 1):
        for chain, _end in strings[n]:
            cid = ids[("str", chain)]
            fs = []
            for i in range(n + 1):
                if i == 0:
                    sub = chain[1:]
                    start = C.target(chain[0])
                elif i == n:
                    sub = chain[:-1]
                    start = C.source(chain[0])
                else:
                    sub = chain[:i - 1] + (C.compose(chain[i - 1], chain[i]),) + chain[i + 1:]
                    start = C.source(chain[0])
                fs.append(_normalize_nerve_tuple(C, ids, sub, start))
            X.set_faces(cid, fs)
    return X


def _normalize_nerve_tuple(C: FinGroupoid, ids, sub, start) -> Simplex:
    """Strip identity entries of a composable tuple into a normal form.

    ``start`` is the source object of the string, used when everything
    collapses to a vertex.
    """
    word = []
    sub = list(sub)
    while True:
        for p, f in enumerate(sub):
            if C.is_identity(f):
                word.append(p)
                del sub[p]
                break
        else:
            break
    if sub:
        base = ids[("str", tuple(sub))]
    else:
        base = ids[("obj", start)]
    return Simplex(base, normalize_word(word))


def nerve_of_group(G, dim_bound: int) -> SSet:
    """Classifying complex: n-cells are identity-free tuples of elements."""
    from .groups import delooping_groupoid
    return nerve_of_groupoid(delooping_groupoid(G), dim_bound)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def sset_to_json(X: SSet) -> str:
    payload = {
        "dim_bound": X.dim_bound,
        "cells": [list(ids) for ids in X.cells],
        "faces": {
            str(cid): [{"base": s.base, "word": list(s.word)} for s in fs]
            for cid, fs in sorted(X.faces.items())
        },
        "labels": {str(cid): _jsonable(lab) for cid, lab in sorted(X.labels.items())},
    }
    return json.dumps(payload, sort_keys=True)


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def sset_from_json(text: str) -> SSet:
    data = json.loads(text)
    X = SSet(data["dim_bound"])
    for dim, ids in enumerate(data["cells"]):
        for cid in ids:
            got = X.add_cell(dim, label=data.get("labels", {}).get(str(cid)))
            if got != cid:
                raise SimplicialError("cell ids must be contiguous from 0")
    for cid, fs in data["faces"].items():
        X.set_faces(int(cid), tuple(
            Simplex(f["base"], tuple(f["word"])) for f in fs))
    return X
