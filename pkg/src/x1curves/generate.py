"""Elliptic curves over F_p with a point of prescribed order N.

Pipeline: random points on a plane model of X1(N) -> (r, s) through the
model's map -> Tate normal form E(b, c) -> short Weierstrass form -> checks.
Genus-0 levels need no plane curve, a random x already determines (r, s).
Genus-1 levels can instead walk an arithmetic progression on an elliptic model.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import field as fieldmod
from .data import Genus1Data, ModelEntry, load_entry
from .ec import (ShortWCurve, TateCurve, check_discriminant, ec_add, has_exact_order,
                 rs_to_tate, tate_to_sws)
from .field import PrimeField, poly_roots, sqrt_mod
from .poly import BiPoly, BiRat
from .search import BirationalMap, map_points

RETRY_FACTOR = 32

__all__ = [
    "PlaneModel", "GeneratedCurve", "GenerationStats", "TateCurve", "ShortWCurve",
    "load_model", "sample_model_points", "genus1_sample", "rs_to_tate", "tate_to_sws",
    "check_discriminant", "verify_order", "generate",
]


@dataclass
class GenerationStats:
    x_values: int = 0
    root_calls: int = 0
    points: int = 0
    undefined: int = 0
    singular: int = 0
    wrong_order: int = 0
    emitted: int = 0

    @property
    def rejected(self) -> int:
        return self.undefined + self.singular + self.wrong_order

    @property
    def rejection_rate(self) -> float:
        return self.rejected / self.points if self.points else 0.0


@dataclass(frozen=True)
class PlaneModel:
    N: int
    genus: int
    kind: str
    f: BiPoly | None = None
    phi: BirationalMap | None = None
    tate_map: BirationalMap | None = None
    genus1: Genus1Data | None = None

    @classmethod
    def from_entry(cls, e: ModelEntry) -> "PlaneModel":
        phi = BirationalMap(*e.phi) if e.phi is not None else None
        tmap = BirationalMap(*e.tate_map) if e.tate_map is not None else None
        return cls(e.N, e.genus, e.kind, e.optimized_f, phi, tmap, e.genus1)

    def genus1_map(self) -> BirationalMap:
        if self.genus1 is None:
            raise ValueError(f"N={self.N} has no genus-1 Weierstrass model")
        return BirationalMap(self.genus1.r, self.genus1.s)

    def sample_parameters(self, F: PrimeField, m: int, rng: random.Random,
                          use_genus1: bool = False, stats: GenerationStats | None = None) -> list[tuple[int, int]]:
        """Tate parameters (b, c) from about m random model points.

        Points where the map is undefined are dropped (and counted).
        """
        stats = stats if stats is not None else GenerationStats()
        p = F.p
        if m <= 0:
            return []
        if self.kind == "genus0-parametrization":
            xs = [(rng.randrange(p), 0) for _ in range(m)]
            stats.x_values += m
            stats.points += m
            if self.tate_map is not None:
                out = map_points(self.tate_map, xs, p)
                bc = [v for v in out if v is not None]
                stats.undefined += len(out) - len(bc)
                return bc
            rs = map_points(self.phi, xs, p)
        elif use_genus1:
            pts = genus1_sample(self, F, m, rng)
            stats.points += len(pts)
            rs = map_points(self.genus1_map(), pts, p)
        else:
            before = fieldmod.counters.roots
            pts = sample_model_points(self, F, m, rng, stats)
            stats.root_calls += fieldmod.counters.roots - before
            stats.points += len(pts)
            rs = map_points(self.phi, pts, p)
        out = []
        for v in rs:
            if v is None:
                stats.undefined += 1
                continue
            tc = rs_to_tate(v[0], v[1], p)
            out.append((tc.b, tc.c))
        return out


@dataclass(frozen=True)
class GeneratedCurve:
    curve: ShortWCurve
    torsion_point: tuple[int, int]
    N: int
    source_point: tuple[int, int] | None = None
    tate: TateCurve | None = None

    def to_json(self) -> dict:
        w = self.curve
        return {"p": str(w.p), "N": self.N, "A": str(w.A), "B": str(w.B),
                "point": [str(self.torsion_point[0]), str(self.torsion_point[1])]}


_models: dict[int, PlaneModel] = {}


def load_model(N: int) -> PlaneModel:
    """The bundled model for X1(N); KeyError when there is none."""
    if N not in _models:
        _models[N] = PlaneModel.from_entry(load_entry(N))
    return _models[N]


def sample_model_points(model: PlaneModel, F: PrimeField, m: int, rng: random.Random,
                        stats: GenerationStats | None = None) -> list[tuple[int, int]]:
    """At least m points of f = 0 over F_p: random x, all roots y of f(x, y).

    Gives up after 32 m values of x.
    """
    if model.f is None:
        raise ValueError(f"N={model.N} has no plane model to sample")
    if m <= 0:
        return []
    p = F.p
    pts: list[tuple[int, int]] = []
    tries = 0
    while len(pts) < m:
        if tries >= RETRY_FACTOR * m:
            raise RuntimeError(f"found only {len(pts)} of {m} points after {tries} tries over F_{p}")
        tries += 1
        x = rng.randrange(p)
        h = model.f.specialize_first(x, p)
        if len(h) <= 1:
            continue
        pts.extend((x, y) for y in poly_roots(h, p, rng))
    if stats is not None:
        stats.x_values += tries
    return pts


def _random_point(w: ShortWCurve, rng: random.Random, budget: int) -> tuple[int, int]:
    for _ in range(budget):
        x = rng.randrange(w.p)
        y = sqrt_mod(w.rhs(x), w.p)
        if y is not None:
            return x, (y if rng.random() < 0.5 else -y % w.p)
    raise RuntimeError(f"no point found on {w} in {budget} tries")


def genus1_sample(model: PlaneModel, F: PrimeField, m: int, rng: random.Random) -> list[tuple[int, int]]:
    """m points P0 + kQ (k = 0, 1, ...) on the Weierstrass model, one addition each.

    Consecutive points are dependent by construction; the identity is skipped.
    """
    g = model.genus1
    if g is None:
        raise ValueError(f"N={model.N} has no genus-1 Weierstrass model")
    if m <= 0:
        return []
    w = ShortWCurve(g.a4 % F.p, g.a6 % F.p, F.p)
    if not check_discriminant(w):
        raise ValueError(f"the genus-1 model is singular mod {F.p}")
    P = _random_point(w, rng, RETRY_FACTOR * m)
    Q = _random_point(w, rng, RETRY_FACTOR * m)
    out: list[tuple[int, int]] = []
    steps = 0
    while len(out) < m:
        if steps >= RETRY_FACTOR * m:
            raise RuntimeError("arithmetic progression kept hitting the identity")
        steps += 1
        if P is not None:
            out.append(P)
        P = ec_add(P, Q, w.A, w.p)
    return out


def verify_order(g: GeneratedCurve) -> bool:
    return check_discriminant(g.curve) and g.curve.contains(g.torsion_point) and \
        has_exact_order(g.curve, g.torsion_point, g.N)


def generate(N: int, F: PrimeField | int, m: int, rng: random.Random | int | None = None,
             fast_genus1: bool = False, stats: GenerationStats | None = None) -> list[GeneratedCurve]:
    """Exactly m curves over F_p, each with a verified point of order N."""
    F = F if isinstance(F, PrimeField) else PrimeField(F)
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    stats = stats if stats is not None else GenerationStats()
    model = load_model(N)
    if fast_genus1 and model.genus1 is None:
        raise ValueError(f"N={N} has no genus-1 fast path")
    out: list[GeneratedCurve] = []
    rounds = 0
    while len(out) < m:
        rounds += 1
        if rounds > RETRY_FACTOR:
            raise RuntimeError(f"retry budget exhausted with {len(out)} of {m} curves")
        for b, c in model.sample_parameters(F, m - len(out), rng, use_genus1=fast_genus1, stats=stats):
            tc = TateCurve(b, c, F.p)
            if tc.discriminant() == 0:
                stats.singular += 1
                continue
            w, P = tate_to_sws(tc)
            if not check_discriminant(w):
                stats.singular += 1
                continue
            g = GeneratedCurve(w, P, N, tate=tc)
            if not verify_order(g):
                stats.wrong_order += 1
                continue
            out.append(g)
            if len(out) == m:
                break
    stats.emitted += len(out)
    return out
