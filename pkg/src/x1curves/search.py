"""Local search for simpler plane models under eight atomic birational moves.

Operation codes follow the usual key::

    1: x -> x-1    2: x -> x+1    3: y -> y-1    4: y -> y+1
    5: x -> 1/x    6: y -> 1/y    7: x -> 1/x, y -> y/x    8: x -> x/y, y -> 1/y

Applying code ``k`` to f(x, y) expands f(S_k(x, y)) where S_k is the inverse
substitution (so code 1 expands f(x+1, y)), then clears denominators and
normalizes.  S_k is also the map carrying points of the new curve back to the
old one, which is how the accumulated map ``phi`` is built.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernel
from .field import batch_invert
from .poly import BiPoly, BiRat, ComplexityVector, curve_vector, rational_substitute

log = logging.getLogger(__name__)

DEFAULT_RADIUS = 8


# ---------------------------------------------------------------------------
# birational maps
# ---------------------------------------------------------------------------

def _subs_rat(q: BiRat, gx: BiRat, gy: BiRat) -> BiRat:
    return _subs_poly(q.num, gx, gy) / _subs_poly(q.den, gx, gy)


def _subs_poly(f: BiPoly, gx: BiRat, gy: BiRat) -> BiRat:
    # Horner in the first variable over Horner in the second
    rows = f.coefficients_in(0)
    acc = BiRat.from_int(0, f.vars)
    for i in range(f.degree(0), -1, -1):
        acc = acc * gx
        row = rows.get(i)
        if row is not None:
            inner = BiRat.from_int(0, f.vars)
            cols = {j: c for (_, j), c in row.terms.items()}
            for j in range(max(cols), -1, -1):
                inner = inner * gy + cols.get(j, 0)
            acc = acc + inner
    return acc


@dataclass(frozen=True)
class BirationalMap:
    """(x, y) -> (x_image(x, y), y_image(x, y))."""

    x_image: BiRat
    y_image: BiRat

    @classmethod
    def identity(cls, vars=("x", "y")) -> "BirationalMap":
        x, y = BiRat.gens(vars)
        return cls(x, y)

    @classmethod
    def parse(cls, x_text: str, y_text: str, vars=("x", "y")) -> "BirationalMap":
        from .poly import parse_rational

        return cls(parse_rational(x_text, vars), parse_rational(y_text, vars))

    def is_identity(self) -> bool:
        return self == BirationalMap.identity(self.x_image.vars)

    def __call__(self, gx: BiRat, gy: BiRat) -> tuple[BiRat, BiRat]:
        return _subs_rat(self.x_image, gx, gy), _subs_rat(self.y_image, gx, gy)

    def swapped_input(self) -> "BirationalMap":
        """phi(y, x)."""
        x, y = BiRat.gens(self.x_image.vars)
        return BirationalMap(*self(y, x))

    def evaluate(self, a: int, b: int, p: int) -> tuple[int, int]:
        return self.x_image.evaluate(a, b, p), self.y_image.evaluate(a, b, p)

    def to_json(self) -> dict:
        return {"x": self.x_image.to_json(), "y": self.y_image.to_json()}

    @classmethod
    def from_json(cls, obj) -> "BirationalMap":
        return cls(BiRat.from_json(obj["x"]), BiRat.from_json(obj["y"]))

    def __str__(self):
        return f"x -> {self.x_image}, y -> {self.y_image}"


def compose_maps(outer: BirationalMap, inner: BirationalMap) -> BirationalMap:
    """outer o inner: first apply ``inner``, then ``outer``."""
    if outer.x_image.vars != inner.x_image.vars:
        raise ValueError("maps use different variable pairs")
    return BirationalMap(*outer(inner.x_image, inner.y_image))


# ---------------------------------------------------------------------------
# atomic operations
# ---------------------------------------------------------------------------

_OP_TEXT = {
    1: ("x + 1", "y"),
    2: ("x - 1", "y"),
    3: ("x", "y + 1"),
    4: ("x", "y - 1"),
    5: ("1/x", "y"),
    6: ("x", "1/y"),
    7: ("1/x", "y/x"),
    8: ("x/y", "1/y"),
}
OP_CODES = tuple(range(1, 9))


@lru_cache(maxsize=None)
def op_map(code: int, vars=("x", "y")) -> BirationalMap:
    """The substitution S_code; it also carries points of the image curve back."""
    if code not in _OP_TEXT:
        raise ValueError(f"atomic operation codes are 1..8, got {code}")
    return BirationalMap.parse(*_OP_TEXT[code], vars=vars)


def path_map(path: Sequence[int], vars=("x", "y")) -> BirationalMap:
    """Map from the curve at the end of ``path`` back to its start."""
    phi = BirationalMap.identity(vars)
    for code in path:
        phi = compose_maps(phi, op_map(code, vars))
    return phi


@lru_cache(maxsize=None)
def op_inverse(code: int) -> int:
    """Code whose substitution undoes ``code``, found by composing maps."""
    for other in OP_CODES:
        if compose_maps(op_map(code), op_map(other)).is_identity():
            return other
    raise ArithmeticError(f"no atomic inverse for {code}")


@lru_cache(maxsize=1)
def redundant_pairs() -> np.ndarray:
    """``R[a, b]`` is True when following ``a`` by ``b`` is never needed.

    That holds when the two-step map is the identity, a single operation, or
    equals a lexicographically smaller two-step word.  Row 0 stands for "no
    previous operation" and is all False.
    """
    R = np.zeros((9, 9), dtype=bool)
    words: dict[BirationalMap, tuple[int, ...]] = {BirationalMap.identity(): ()}
    for c in OP_CODES:
        words.setdefault(op_map(c), (c,))
    for a in OP_CODES:
        for b in OP_CODES:
            m = compose_maps(op_map(a), op_map(b))
            if m in words:
                R[a, b] = True
            else:
                words[m] = (a, b)
    return R


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneCurve:
    f: BiPoly
    vector: ComplexityVector
    swapped: bool

    @classmethod
    def from_poly(cls, f: BiPoly) -> "PlaneCurve":
        if f.is_zero():
            raise ValueError("the zero polynomial does not define a curve")
        if f.total_degree() == 0:
            raise ValueError("a constant does not define a curve")
        f = f.normalized()
        v, sw = curve_vector(f)
        return cls(f, v, sw)

    def __lt__(self, other: "PlaneCurve"):
        return self.vector < other.vector


def apply_atomic(C: PlaneCurve, code: int) -> PlaneCurve:
    """Image of C under one atomic operation, via exact rational substitution."""
    m = op_map(code, C.f.vars)
    return PlaneCurve.from_poly(rational_substitute(C.f, m.x_image, m.y_image))


def apply_path(C: PlaneCurve, path: Iterable[int]) -> PlaneCurve:
    for code in path:
        C = apply_atomic(C, code)
    return C


# ---------------------------------------------------------------------------
# neighborhood search
# ---------------------------------------------------------------------------

class _Layer:
    """Nodes at one depth, in lexicographic order of their witnessing paths."""

    def __init__(self):
        self.chunks: list[_kernel.Batch] = []
        self.loc_chunk: list[np.ndarray] = []
        self.loc_index: list[np.ndarray] = []
        self.parent: list[np.ndarray] = []
        self.op: list[np.ndarray] = []
        self.cols: list[list[np.ndarray]] = [[] for _ in range(6)]

    def freeze(self):
        cat = lambda xs, dt=np.int64: np.concatenate(xs) if xs else np.zeros(0, dtype=dt)
        self.loc_chunk = cat(self.loc_chunk)
        self.loc_index = cat(self.loc_index)
        self.parent = cat(self.parent)
        self.op = cat(self.op)
        self.cols = [np.concatenate(c) if c else np.zeros(0, dtype=np.int64) for c in self.cols]

    def __len__(self):
        return len(self.op)

    def poly(self, k: int, vars) -> BiPoly:
        return self.chunks[self.loc_chunk[k]].poly(self.loc_index[k], vars)

    def gather(self, ranks: np.ndarray) -> _kernel.Batch:
        """Batch of the given nodes, in the given order."""
        cids = self.loc_chunk[ranks]
        locs = self.loc_index[ranks]
        D = max(self.chunks[c].A.shape[1] for c in np.unique(cids))
        obj = any(self.chunks[c].A.dtype == object for c in np.unique(cids))
        A = np.zeros((len(ranks), D, D), dtype=object if obj else np.int64)
        dx = np.empty(len(ranks), dtype=np.int64)
        dy = np.empty(len(ranks), dtype=np.int64)
        tot = np.empty(len(ranks), dtype=np.int64)
        for c in np.unique(cids):
            sel = np.flatnonzero(cids == c)
            ch = self.chunks[c]
            d = ch.A.shape[1]
            A[sel, :d, :d] = ch.A[locs[sel]]
            dx[sel] = ch.dx[locs[sel]]
            dy[sel] = ch.dy[locs[sel]]
            tot[sel] = ch.tot[locs[sel]]
        return _kernel.Batch(A, dx, dy, tot)


class Neighborhood:
    """Breadth-first enumeration of N(C, k) with a visited set.

    Layers are kept so that N(C, k + 1) extends N(C, k) without recomputation.
    The minimal element is the smallest vector, then the shortest path, then
    the lexicographically smallest path.
    """

    def __init__(self, f: BiPoly, block: int = 2048):
        self.vars = f.vars
        self.block = block
        root = _kernel.from_polys([f.normalized()])
        layer = _Layer()
        layer.chunks.append(root)
        layer.loc_chunk.append(np.zeros(1, dtype=np.int64))
        layer.loc_index.append(np.zeros(1, dtype=np.int64))
        layer.parent.append(np.full(1, -1, dtype=np.int64))
        layer.op.append(np.zeros(1, dtype=np.int64))
        cols, _ = _kernel.vectors(root)
        for c, v in zip(layer.cols, cols):
            c.append(v)
        layer.freeze()
        self.layers = [layer]
        self.seen = {root.key(0)}
        self.best = (self._vec(layer, 0), 0, 0)
        self.evaluated = 0
        self._prune = redundant_pairs()

    @staticmethod
    def _vec(layer: _Layer, k: int) -> tuple:
        return tuple(int(c[k]) for c in layer.cols)

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def expand(self, store: bool = True):
        """Add the next layer; with ``store=False`` only the best node is tracked."""
        prev = self.layers[-1]
        layer = _Layer()
        depth = len(self.layers)
        best_vec, best_rank, best_poly, best_path = None, None, None, None
        n = len(prev)
        offset = 0
        for start in range(0, n, self.block):
            ranks = np.arange(start, min(n, start + self.block))
            parents = prev.gather(ranks)
            last = prev.op[ranks]
            kids: dict[int, _kernel.Batch] = {}
            for code in OP_CODES:
                allowed = ~self._prune[last, code]
                if not allowed.any():
                    continue
                sub = parents if allowed.all() else parents.take(np.flatnonzero(allowed))
                src = np.flatnonzero(allowed)
                kids[code] = (_kernel.normalize(_kernel.apply_op(sub, code)), src)
            self.evaluated += sum(len(b) for b, _ in kids.values())
            # candidates in (parent, code) order == lexicographic path order
            cand = []
            for code, (b, src) in kids.items():
                for local, pr in enumerate(src):
                    cand.append((pr, code, local))
            cand.sort()
            if store:
                chosen: dict[int, list[int]] = {}
                order: list[tuple[int, int]] = []
                for pr, code, local in cand:
                    key = kids[code][0].key(local)
                    if key in self.seen:
                        continue
                    self.seen.add(key)
                    chosen.setdefault(code, []).append(local)
                    order.append((code, len(chosen[code]) - 1, pr))
                if not order:
                    continue
                pos = {}
                for code, locs in chosen.items():
                    ch = kids[code][0].take(np.array(locs, dtype=np.int64))
                    layer.chunks.append(ch)
                    pos[code] = (len(layer.chunks) - 1, _kernel.vectors(ch)[0])
                m = len(order)
                cid = np.empty(m, dtype=np.int64)
                lid = np.empty(m, dtype=np.int64)
                par = np.empty(m, dtype=np.int64)
                ops = np.empty(m, dtype=np.int64)
                colbuf = [[None] * m for _ in range(6)]
                for q, (code, li, pr) in enumerate(order):
                    c, cols = pos[code]
                    cid[q], lid[q], par[q], ops[q] = c, li, start + pr, code
                    for t in range(6):
                        colbuf[t][q] = cols[t][li]
                layer.loc_chunk.append(cid)
                layer.loc_index.append(lid)
                layer.parent.append(par)
                layer.op.append(ops)
                for t in range(6):
                    arr = np.array(colbuf[t])
                    if arr.dtype != object:
                        arr = arr.astype(np.int64)
                    layer.cols[t].append(arr)
                offset += m
            else:
                for code, (b, src) in kids.items():
                    cols, _ = _kernel.vectors(b)
                    k = _kernel.argmin_lex(cols)
                    vec = tuple(int(c[k]) for c in cols)
                    rank = (start + int(src[k]), code)
                    if best_vec is None or (vec, rank) < (best_vec, best_rank):
                        best_vec, best_rank = vec, rank
                        best_poly = b.poly(k, self.vars)
        if store:
            layer.freeze()
            self.layers.append(layer)
            if len(layer):
                k = _kernel.argmin_lex(layer.cols)
                vec = self._vec(layer, k)
                if vec < self.best[0]:
                    self.best = (vec, depth, k)
            return None
        if best_vec is not None and best_vec < self.best[0]:
            pr, code = best_rank
            best_path = self.path(depth - 1, pr) + (code,)
            return best_vec, best_poly, best_path
        return None

    def path(self, depth: int, rank: int) -> tuple[int, ...]:
        out = []
        while depth > 0:
            layer = self.layers[depth]
            out.append(int(layer.op[rank]))
            rank = int(layer.parent[rank])
            depth -= 1
        return tuple(reversed(out))

    def best_node(self) -> tuple[tuple, BiPoly, tuple[int, ...]]:
        vec, depth, rank = self.best
        return vec, self.layers[depth].poly(rank, self.vars), self.path(depth, rank)

    def members(self, depth: int) -> list[tuple[BiPoly, tuple[int, ...]]]:
        layer = self.layers[depth]
        return [(layer.poly(k, self.vars), self.path(depth, k)) for k in range(len(layer))]


def enumerate_neighborhood(C: PlaneCurve, k: int) -> list[tuple[PlaneCurve, tuple[int, ...]]]:
    """All curves within distance ``k`` (excluding C), each with one witnessing path."""
    if k < 1:
        raise ValueError("k must be at least 1")
    nb = Neighborhood(C.f)
    for _ in range(k):
        nb.expand()
    out = []
    for d in range(1, k + 1):
        out.extend((PlaneCurve.from_poly(f), p) for f, p in nb.members(d) if f.total_degree() > 0)
    return out


# ---------------------------------------------------------------------------
# the optimizer
# ---------------------------------------------------------------------------

@dataclass
class Step:
    path: tuple[int, ...]
    curve: PlaneCurve
    k: int


@dataclass
class SearchResult:
    C1: PlaneCurve
    phi: BirationalMap
    path: list[int]
    radius_used: int
    steps: list[Step] = field(default_factory=list)
    k_max: int = 0
    evaluated: int = 0
    seconds: float = 0.0
    final_transform: tuple[bool, int, int] = (False, 1, 1)


def _sign_pattern(f: BiPoly) -> tuple[int, ...]:
    # y-major lexicographic order, positives preferred
    terms = sorted(f.terms.items(), key=lambda mc: (mc[0][1], mc[0][0]), reverse=True)
    return tuple(0 if c > 0 else 1 for _, c in terms)


def normalize_orientation(f: BiPoly, phi: BirationalMap) -> tuple[BiPoly, BirationalMap, tuple[bool, int, int]]:
    """Put the minimal-degree variable second and choose variable signs.

    Among x -> +-x, y -> +-y (and overall sign) the choice whose coefficient
    signs, read in y-major lexicographic order, are positive earliest wins.
    ``phi`` is conjugated so it still carries points of the result to the
    original target curve.
    """
    vars = f.vars
    x, y = BiRat.gens(vars)
    _, swapped = curve_vector(f)
    if swapped:
        f = f.swap()
        phi = BirationalMap(*phi(y, x))
    best = None
    for ex in (1, -1):
        for ey in (1, -1):
            g = BiPoly({(i, j): c * ex**i * ey**j for (i, j), c in f.terms.items()}, vars)
            lead = sorted(g.terms.items(), key=lambda mc: (mc[0][1], mc[0][0]), reverse=True)[0][1]
            if lead < 0:
                g = -g
            key = _sign_pattern(g)
            if best is None or key < best[0]:
                best = (key, g, ex, ey)
    _, g, ex, ey = best
    if (ex, ey) != (1, 1):
        phi = BirationalMap(*phi(x * ex, y * ey))
    return g, phi, (swapped, ex, ey)


def optimize(C0: PlaneCurve | BiPoly, R: int = DEFAULT_RADIUS, check: bool = False,
             normalize: bool = True) -> SearchResult:
    """Locally optimal model within radius R, with the map back to ``C0``.

    k := 1; while k <= R: take a minimal C' in N(C, k); if v(C') < v(C) then
    phi := phi o phi(C', C), C := C', k := 0; k := k + 1.
    """
    if R < 1:
        raise ValueError("radius must be at least 1")
    t0 = time.perf_counter()
    if isinstance(C0, BiPoly):
        C0 = PlaneCurve.from_poly(C0)
    vars = C0.f.vars
    C = C0
    phi = BirationalMap.identity(vars)
    full_path: list[int] = []
    steps: list[Step] = []
    nb = Neighborhood(C.f)
    evaluated = 0
    k, k_max = 1, 0
    while k <= R:
        found = None
        if k < R:
            while nb.depth < k:
                nb.expand(store=True)
            vec, poly, path = nb.best_node()
            if vec < tuple(C.vector):
                found = (poly, path)
        else:
            while nb.depth < k - 1:
                nb.expand(store=True)
            hit = nb.expand(store=False)
            if hit is not None:
                found = (hit[1], hit[2])
        if found is not None:
            poly, path = found
            C_new = PlaneCurve.from_poly(poly)
            if check:
                back = apply_path(C, path)
                assert back.f == C_new.f, "kernel and exact substitution disagree"
            phi = compose_maps(phi, path_map(path, vars))
            full_path.extend(path)
            k_max = max(k_max, k)
            steps.append(Step(path, C_new, k))
            log.debug("k=%d path=%s vector=%s", k, path, C_new.vector)
            evaluated += nb.evaluated
            C = C_new
            nb = Neighborhood(C.f)
            k = 0
        k += 1
    evaluated += nb.evaluated
    f1 = C.f
    transform = (False, 1, 1)
    if normalize:
        f1, phi, transform = normalize_orientation(f1, phi)
    C1 = PlaneCurve.from_poly(f1) if not normalize else PlaneCurve(f1, C.vector, curve_vector(f1)[1])
    return SearchResult(C1, phi, full_path, R, steps, k_max, evaluated,
                        time.perf_counter() - t0, transform)


# ---------------------------------------------------------------------------
# numeric evaluation
# ---------------------------------------------------------------------------

def map_points(phi: BirationalMap, pts: Sequence[tuple[int, int]], p: int) -> list[tuple[int, int] | None]:
    """Images of points under ``phi`` over F_p; None where a denominator vanishes.

    All denominators are inverted together with one field inversion.
    """
    nx, dx = phi.x_image.num, phi.x_image.den
    ny, dy = phi.y_image.num, phi.y_image.den
    dens = []
    for a, b in pts:
        dens.append(dx.evaluate(a, b, p))
        dens.append(dy.evaluate(a, b, p))
    ok = [dens[2 * i] != 0 and dens[2 * i + 1] != 0 for i in range(len(pts))]
    live = [d for i, d in enumerate(dens) if ok[i // 2]]
    inv = iter(batch_invert(live, p))
    out: list[tuple[int, int] | None] = []
    for i, (a, b) in enumerate(pts):
        if not ok[i]:
            out.append(None)
            continue
        ix, iy = next(inv), next(inv)
        out.append((nx.evaluate(a, b, p) * ix % p, ny.evaluate(a, b, p) * iy % p))
    return out
