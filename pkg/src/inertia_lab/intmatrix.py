"""Exact sparse integer matrices, Smith normal form, and presentations.

All arithmetic is arbitrary-precision.  ``smith_normal_form`` is the
textbook dense algorithm with full unimodular transforms (U*M*V = D,
divisor-chain diagonal, smallest-absolute-value pivoting with (row, col)
tie-breaks).  Large boundary-style matrices go through ``SparseReduction``,
a unit-pivot elimination with a Markowitz fill heuristic that optionally
tracks column transforms (for kernel lattices) and replays row operations
onto right-hand sides (for exact solvability and pairing-gcd tests);
whatever survives is finished densely.  ``AbGroupPresentation`` is the
invariant-factor form used for every (co)homology answer.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd


class MatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Sparse matrices
# ---------------------------------------------------------------------------

@dataclass
class IntMatrix:
    """Sparse integer matrix: entries maps (row, col) -> nonzero int."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise MatrixError(f"entry {(r, c)} out of shape {self.rows}x{self.cols}")
            if v == 0:
                del self.entries[(r, c)]

    @classmethod
    def from_rows(cls, data) -> "IntMatrix":
        data = [list(row) for row in data]
        rows = len(data)
        cols = len(data[0]) if data else 0
        entries = {(r, c): v for r, row in enumerate(data)
                   for c, v in enumerate(row) if v}
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    def to_rows(self) -> list[list[int]]:
        data = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            data[r][c] = v
        return data

    def get(self, r: int, c: int) -> int:
        return self.entries.get((r, c), 0)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise MatrixError("shape mismatch in matmul")
        by_row: dict[int, dict[int, int]] = {}
        for (r, k), v in self.entries.items():
            by_row.setdefault(r, {})[k] = v
        other_rows: dict[int, dict[int, int]] = {}
        for (k, c), v in other.entries.items():
            other_rows.setdefault(k, {})[c] = v
        out: dict[tuple[int, int], int] = {}
        for r, row in by_row.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                for c, w in other_rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            for c, v in acc.items():
                if v:
                    out[(r, c)] = v
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def apply(self, vec) -> list[int]:
        vec = list(vec)
        if len(vec) != self.cols:
            raise MatrixError("vector length mismatch")
        out = [0] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def column(self, c: int) -> dict[int, int]:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def is_diagonal(self) -> bool:
        return all(r == c for (r, c) in self.entries)

    def diagonal(self) -> list[int]:
        return [self.get(i, i) for i in range(min(self.rows, self.cols))]

    def nnz(self) -> int:
        return len(self.entries)


def matrix_to_text(M: IntMatrix) -> str:
    """Text format: header "rows cols nnz", then sorted "i j v" lines."""
    lines = [f"{M.rows} {M.cols} {M.nnz()}"]
    for (r, c) in sorted(M.entries):
        lines.append(f"{r} {c} {M.entries[(r, c)]}")
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> IntMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows, cols, nnz = map(int, lines[0].split())
    entries = {}
    for ln in lines[1:]:
        r, c, v = ln.split()
        entries[(int(r), int(c))] = int(v)
    if len(entries) != nnz:
        raise MatrixError("nnz header does not match entry count")
    return IntMatrix(rows, cols, entries)


def determinant(M: IntMatrix) -> int:
    """Fraction-free Bareiss determinant (small dense use only)."""
    if M.rows != M.cols:
        raise MatrixError("determinant needs a square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Dense Smith normal form with transforms
# ---------------------------------------------------------------------------

def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Full SNF: (D, U, V) with U*M*V = D diagonal, d_1 | d_2 | ...

    Pivot: smallest absolute value in the active block, ties by (row, col).
    """
    A = M.to_rows()
    m, n = M.rows, M.cols
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(src, dst, q):
        Asrc, Adst = A[src], A[dst]
        for j in range(n):
            if Asrc[j]:
                Adst[j] += q * Asrc[j]
        Us, Ud = U[src], U[dst]
        for j in range(m):
            if Us[j]:
                Ud[j] += q * Us[j]

    def add_col(src, dst, q):
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        pivot = None
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v:
                    key = (abs(v), i, j)
                    if best is None or key < best:
                        best, pivot = key, (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        p = A[t][t]
        offender = None
        for i in range(t + 1, m):
            Ai = A[i]
            for j in range(t + 1, n):
                if Ai[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1
    for i in range(t):
        if A[i][i] < 0:
            A[i] = [-v for v in A[i]]
            U[i] = [-v for v in U[i]]
    return IntMatrix.from_rows(A), IntMatrix.from_rows(U), IntMatrix.from_rows(V)


# ---------------------------------------------------------------------------
# Sparse unit-pivot reduction engine
# ---------------------------------------------------------------------------

class SparseReduction:
    """Eliminate +-1 pivots of a sparse matrix by unimodular row/col ops.

    After ``run()`` the transformed matrix U*M*V consists of a unit entry
    for each recorded pivot (its row and column otherwise zero) plus a
    small core on the untouched rows/columns.  Options:

    - ``track_V``: maintain the column transform sparsely, so kernel
      vectors of M can be reassembled;
    - ``rhs``: named right-hand-side columns (dict row -> value) that
      receive every row operation (i.e. end up as U @ b).
    """

    def __init__(self, M: IntMatrix, track_V: bool = False, rhs=None):
        self.nrows = M.rows
        self.ncols = M.cols
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (r, c), v in M.entries.items():
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, set()).add(r)
        self.track_V = track_V
        self.V: dict[int, dict[int, int]] = (
            {c: {c: 1} for c in range(M.cols)} if track_V else {})
        self.rhs = {name: dict(col) for name, col in (rhs or {}).items()}
        self.pivots: list[tuple[int, int, int]] = []
        self.pivot_rows: set[int] = set()
        self.pivot_cols: set[int] = set()
        self._done = False

    # -- main loop -----------------------------------------------------------

    def run(self) -> None:
        heap: list[tuple[tuple, int, int]] = []
        for r, row in self.rows.items():
            lr = len(row)
            for c, v in row.items():
                if v in (1, -1):
                    score = ((lr - 1) * (len(self.cols[c]) - 1), lr, r, c)
                    heap.append((score, r, c))
        heapq.heapify(heap)
        while heap:
            score, r, c = heapq.heappop(heap)
            row = self.rows.get(r)
            if row is None or r in self.pivot_rows or c in self.pivot_cols:
                continue
            v = row.get(c)
            if v not in (1, -1):
                continue
            current = ((len(row) - 1) * (len(self.cols[c]) - 1), len(row), r, c)
            if current > score:
                heapq.heappush(heap, (current, r, c))
                continue
            self._eliminate(r, c, v, heap)
        self._done = True

    def _eliminate(self, r: int, c: int, v: int, heap) -> None:
        prow = self.rows.pop(r)
        for cc in prow:
            self.cols[cc].discard(r)
        col_rows = list(self.cols[c])
        multipliers = {r2: -self.rows[r2][c] * v for r2 in col_rows}
        for r2 in col_rows:
            row2 = self.rows[r2]
            mult = multipliers[r2]
            for cc, vv in prow.items():
                nv = row2.get(cc, 0) + mult * vv
                if nv:
                    if cc not in row2:
                        self.cols[cc].add(r2)
                    row2[cc] = nv
                    if nv in (1, -1) and cc not in self.pivot_cols:
                        score = ((len(row2) - 1) * (len(self.cols[cc]) - 1),
                                 len(row2), r2, cc)
                        heapq.heappush(heap, (score, r2, cc))
                else:
                    if cc in row2:
                        del row2[cc]
                        self.cols[cc].discard(r2)
            if not row2:
                del self.rows[r2]
        for col in self.rhs.values():
            pv = col.get(r, 0)
            if pv:
                for r2, mult in multipliers.items():
                    nv = col.get(r2, 0) + mult * pv
                    if nv:
                        col[r2] = nv
                    else:
                        col.pop(r2, None)
        if self.track_V:
            Vc = self.V[c]
            for cc, vv in prow.items():
                if cc == c:
                    continue
                coef = -vv * v
                Vcc = self.V[cc]
                for orig, w in Vc.items():
                    nw = Vcc.get(orig, 0) + coef * w
                    if nw:
                        Vcc[orig] = nw
                    else:
                        Vcc.pop(orig, None)
        del self.cols[c]
        self.pivots.append((r, c, v))
        self.pivot_rows.add(r)
        self.pivot_cols.add(c)

    # -- reading off results ---------------------------------------------

    def core(self):
        """Nonempty remaining block: (matrix, row labels, column labels)."""
        live_rows = sorted(self.rows)
        live_cols = sorted(set(range(self.ncols)) - self.pivot_cols)
        rmap = {r: i for i, r in enumerate(live_rows)}
        cmap = {c: j for j, c in enumerate(live_cols)}
        entries = {}
        for r in live_rows:
            for c, v in self.rows[r].items():
                entries[(rmap[r], cmap[c])] = v
        return IntMatrix(len(live_rows), len(live_cols), entries), live_rows, live_cols

    def zero_rows(self):
        """Rows of U*M*V that are identically zero."""
        return set(range(self.nrows)) - self.pivot_rows - set(self.rows)

    def invariant_factors(self, dense_limit: int = 2000) -> list[int]:
        core, _, _ = self.core()
        if core.nnz() == 0:
            cf = []
        else:
            if max(core.rows, core.cols) > dense_limit:
                raise MatrixError(
                    f"core {core.rows}x{core.cols} too large for dense SNF")
            D, _, _ = smith_normal_form(core)
            cf = [abs(d) for d in D.diagonal() if d]
        return _divisibility_sort([1] * len(self.pivots) + cf)

    def kernel_columns(self) -> list[dict[int, int]]:
        if not self.track_V:
            raise MatrixError("kernel needs track_V=True")
        core, _, live_cols = self.core()
        out = []
        if core.cols:
            D, _, Vc = smith_normal_form(core)
            r = len([d for d in D.diagonal() if d])
            Vrows = Vc.to_rows()
            for j in range(r, core.cols):
                vec: dict[int, int] = {}
                for i in range(core.cols):
                    coef = Vrows[i][j]
                    if coef:
                        for orig, w in self.V[live_cols[i]].items():
                            nv = vec.get(orig, 0) + coef * w
                            if nv:
                                vec[orig] = nv
                            else:
                                vec.pop(orig, None)
                out.append(vec)
        return out

    def solve(self, name: str) -> list[int] | None:
        """An integer solution x of M x = b for rhs column ``name``."""
        if not self.track_V:
            raise MatrixError("solve needs track_V=True")
        col = self.rhs[name]
        for r in self.zero_rows():
            if col.get(r, 0):
                return None
        core, live_rows, live_cols = self.core()
        y: dict[int, int] = {}
        if core.cols and (core.nnz() or any(col.get(r, 0) for r in live_rows)):
            b_core = [col.get(r, 0) for r in live_rows]
            D, U, V = smith_normal_form(core)
            ub = U.apply(b_core)
            t = [0] * core.cols
            diag = D.diagonal()
            for i in range(core.rows):
                d = diag[i] if i < min(core.rows, core.cols) else 0
                if d:
                    if ub[i] % d:
                        return None
                    t[i] = ub[i] // d
                elif ub[i]:
                    return None
            yv = V.apply(t)
            for j, c in enumerate(live_cols):
                if yv[j]:
                    y[c] = yv[j]
        for r, c, v in self.pivots:
            val = col.get(r, 0)
            if val:
                y[c] = val * v
        x = [0] * self.ncols
        for c, coef in y.items():
            for orig, w in self.V[c].items():
                x[orig] += coef * w
        return x

    def solvable(self, name: str) -> bool:
        """Whether M x = b has an integer solution (existence only)."""
        col = self.rhs[name]
        for r in self.zero_rows():
            if col.get(r, 0):
                return False
        core, live_rows, _ = self.core()
        if core.rows:
            b_core = [col.get(r, 0) for r in live_rows]
            if any(b_core):
                D, U, _ = smith_normal_form(core)
                ub = U.apply(b_core)
                diag = D.diagonal()
                for i in range(core.rows):
                    d = diag[i] if i < min(core.rows, core.cols) else 0
                    if d:
                        if ub[i] % d:
                            return False
                    elif ub[i]:
                        return False
        return True

    def pairing_gcd(self, name: str) -> int:
        """gcd of <u, b> over the integer left-kernel {u : u^T M = 0}."""
        col = self.rhs[name]
        g = 0
        for r in self.zero_rows():
            g = gcd(g, abs(col.get(r, 0)))
        core, live_rows, _ = self.core()
        if core.rows:
            left = kernel_basis(core.transpose())
            b_core = [col.get(r, 0) for r in live_rows]
            Lr = left.to_rows()
            for j in range(left.cols):
                val = sum(Lr[i][j] * b_core[i] for i in range(core.rows))
                g = gcd(g, abs(val))
        return g


# ---------------------------------------------------------------------------
# High-level helpers
# ---------------------------------------------------------------------------

def invariant_factors(M: IntMatrix) -> list[int]:
    red = SparseReduction(M)
    red.run()
    return red.invariant_factors()


def rank(M: IntMatrix) -> int:
    return len(invariant_factors(M))


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel lattice {v : M v = 0}."""
    red = SparseReduction(M, track_V=True)
    red.run()
    cols = red.kernel_columns()
    entries = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            entries[(i, j)] = v
    return IntMatrix(M.cols, len(cols), entries)


def solve(M: IntMatrix, b) -> list[int] | None:
    red = SparseReduction(M, track_V=True,
                          rhs={"b": {i: v for i, v in enumerate(b) if v}})
    red.run()
    return red.solve("b")


def coboundary_solvable(M: IntMatrix, b) -> bool:
    red = SparseReduction(M, rhs={"b": {i: v for i, v in enumerate(b) if v}})
    red.run()
    return red.solvable("b")


def evaluation_gcd(M: IntMatrix, w) -> int:
    """gcd of <u, w> over all integer u with u^T M = 0."""
    red = SparseReduction(M, rhs={"w": {i: v for i, v in enumerate(w) if v}})
    red.run()
    return red.pairing_gcd("w")


def _divisibility_sort(factors: list[int]) -> list[int]:
    """The divisor chain with the same multiset of prime-power divisors."""
    exps_by_p: dict[int, list[int]] = {}
    for f in factors:
        for p, e in _factorize(f).items():
            exps_by_p.setdefault(p, []).append(e)
    k = len(factors)
    out = [1] * k
    for p, exps in exps_by_p.items():
        for i, e in enumerate(sorted(exps, reverse=True)):
            out[k - 1 - i] *= p ** e
    return out


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Abelian group presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbGroupPresentation:
    """free_rank copies of Z plus cyclic factors d_1 | d_2 | ... (each >= 2)."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise MatrixError("free rank must be non-negative")
        if any(d < 2 for d in self.torsion):
            raise MatrixError("torsion factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise MatrixError(f"torsion {self.torsion} is not a divisor chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self):
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def presentation_from_factors(ambient_rank: int, factors) -> AbGroupPresentation:
    """Z^ambient_rank / image-with-given-invariant-factors."""
    factors = list(factors)
    torsion = tuple(d for d in factors if d > 1)
    return AbGroupPresentation(ambient_rank - len(factors), torsion)


class QuotientData:
    """ker(B)/im(A) in Z^ambient with generators and membership coordinates."""

    def __init__(self, presentation, kernel, gens, gen_orders, coord_fn):
        self.presentation = presentation
        self.kernel = kernel
        self.gens = gens              # ambient integer vectors
        self.gen_orders = gen_orders  # 0 marks a free generator
        self._coord_fn = coord_fn

    def coords(self, vector) -> list[int]:
        return self._coord_fn(list(vector))


def quotient_presentation(A: IntMatrix | None, B: IntMatrix | None,
                          ambient: int) -> AbGroupPresentation:
    """Presentation of ker(B)/im(A) inside Z^ambient (no generators)."""
    if B is not None and B.cols != ambient:
        raise MatrixError("B has wrong ambient dimension")
    if A is not None and A.rows != ambient:
        raise MatrixError("A has wrong ambient dimension")
    if B is None or B.nnz() == 0:
        if A is None or A.nnz() == 0:
            return AbGroupPresentation(ambient, ())
        return presentation_from_factors(ambient, invariant_factors(A))
    K = kernel_basis(B)
    if A is None or A.nnz() == 0:
        return AbGroupPresentation(K.cols, ())
    Y = _lattice_coordinates(K, A)
    return presentation_from_factors(K.cols, invariant_factors(Y))


def quotient_with_generators(A: IntMatrix | None, B: IntMatrix | None,
                             ambient: int) -> QuotientData:
    """Like ``quotient_presentation`` but with explicit generators and a
    coordinate map; intended for moderate ambient dimensions."""
    if B is None or B.nnz() == 0:
        K = IntMatrix.identity(ambient)
    else:
        K = kernel_basis(B)
    z = K.cols
    if A is None:
        A = IntMatrix.zero(ambient, 0)
    Y = _lattice_coordinates(K, A)
    DY, UY, VY = smith_normal_form(Y)
    dy = [DY.get(i, i) for i in range(z)]
    UYinv = unimodular_inverse(UY)
    Krows = K.to_rows()
    picked = [(dy[i], i) for i in range(z) if dy[i] != 1]
    picked.sort(key=lambda t: (t[0] == 0, t[0]))
    gens = []
    gen_orders = []
    for d, i in picked:
        w = [UYinv.get(r, i) for r in range(z)]
        gens.append([sum(Krows[a][r] * w[r] for r in range(z))
                     for a in range(ambient)])
        gen_orders.append(d)
    presentation = AbGroupPresentation(
        sum(1 for d, _ in picked if d == 0),
        tuple(d for d, _ in picked if d >= 2))

    solver = LatticeSolver(K)
    UYrows = UY.to_rows()
    positions = [(i, d) for d, i in picked]

    def coord_fn(vector):
        t = solver.solve(vector)
        if t is None:
            raise MatrixError("vector is not in the kernel lattice")
        out = []
        for pos, d in positions:
            yv = sum(UYrows[pos][j] * t[j] for j in range(z))
            out.append(yv % d if d else yv)
        return out

    return QuotientData(presentation, K, gens, gen_orders, coord_fn)


class LatticeSolver:
    """Solve K t = v exactly for a full-column-rank basis matrix K."""

    def __init__(self, K: IntMatrix):
        self.K = K
        self.D, self.U, self.V = smith_normal_form(K)
        if any(self.D.get(i, i) == 0 for i in range(K.cols)):
            raise MatrixError("lattice basis is not full column rank")

    def solve(self, vector) -> list[int] | None:
        rhs = self.U.apply(vector)
        z = self.K.cols
        t = [0] * z
        for i in range(z):
            d = self.D.get(i, i)
            if rhs[i] % d:
                return None
            t[i] = rhs[i] // d
        for i in range(z, self.K.rows):
            if rhs[i]:
                return None
        return self.V.apply(t)


def _lattice_coordinates(K: IntMatrix, A: IntMatrix) -> IntMatrix:
    solver = LatticeSolver(K)
    entries = {}
    for j in range(A.cols):
        vec = [0] * K.rows
        for r, v in A.column(j).items():
            vec[r] = v
        t = solver.solve(vec)
        if t is None:
            raise MatrixError("image vector does not lie in the kernel lattice")
        for i, v in enumerate(t):
            if v:
                entries[(i, j)] = v
    return IntMatrix(K.cols, A.cols, entries)


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix."""
    if U.rows != U.cols:
        raise MatrixError("not square")
    D, P, Q = smith_normal_form(U)
    diag = D.diagonal()
    if any(abs(d) != 1 for d in diag):
        raise MatrixError("matrix is not unimodular")
    signs = IntMatrix(U.rows, U.rows,
                      {(i, i): diag[i] for i in range(U.rows)})
    return (Q @ signs) @ P
