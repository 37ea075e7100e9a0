"""Bundled models of X1(N): raw forms, optimized forms, maps, genus-1 models, statistics.

One JSON file per N lives in ``data/x1``.  Integers are stored as decimal
strings and each file carries a SHA-256 checksum of its payload, so a
corrupted or hand-edited file is caught on load.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .poly import BiPoly, BiRat, format_grouped, format_poly, parse_rational

DATA_PACKAGE = "x1curves"
DATA_SUBDIR = ("data", "x1")
KINDS = ("genus0-parametrization", "genus1", "general")
XY = ("x", "y")
RS = ("r", "s")


class ChecksumError(ValueError):
    pass


@dataclass(frozen=True)
class Genus1Data:
    """y^2 = x^3 + a4 x + a6 together with (r, s) as functions of (x, y)."""

    a4: int
    a6: int
    r: BiRat
    s: BiRat
    text: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"a4": str(self.a4), "a6": str(self.a6), "r": self.r.to_json(),
                "s": self.s.to_json(), "text": list(self.text)}

    @classmethod
    def from_json(cls, obj) -> "Genus1Data":
        return cls(int(obj["a4"]), int(obj["a6"]), BiRat.from_json(obj["r"]),
                   BiRat.from_json(obj["s"]), tuple(obj.get("text", ())))


@dataclass(frozen=True)
class ModelEntry:
    N: int
    genus: int
    kind: str
    optimized_f: BiPoly | None = None
    phi: tuple[BiRat, BiRat] | None = None
    phi_text: tuple[str, str] | None = None
    tate_map: tuple[BiRat, BiRat] | None = None
    raw_F: BiPoly | None = None
    genus1: Genus1Data | None = None
    stats: dict | None = None
    source: str = "table"

    def payload(self) -> dict:
        obj: dict = {"N": self.N, "genus": self.genus, "kind": self.kind, "source": self.source}
        if self.optimized_f is not None:
            obj["optimized_f"] = self.optimized_f.to_json()
        if self.phi is not None:
            obj["phi"] = {"r": self.phi[0].to_json(), "s": self.phi[1].to_json()}
        if self.phi_text is not None:
            obj["phi_text"] = {"r": self.phi_text[0], "s": self.phi_text[1]}
        if self.tate_map is not None:
            obj["tate_map"] = {"b": self.tate_map[0].to_json(), "c": self.tate_map[1].to_json()}
        if self.raw_F is not None:
            obj["raw_F"] = self.raw_F.to_json()
        if self.genus1 is not None:
            obj["genus1"] = self.genus1.to_json()
        if self.stats is not None:
            obj["stats"] = dict(self.stats)
        return obj

    def to_json(self) -> dict:
        obj = self.payload()
        obj["checksum"] = checksum(obj)
        return obj

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "ModelEntry":
        obj = dict(obj)
        stored = obj.pop("checksum", None)
        if check and stored != checksum(obj):
            raise ChecksumError(f"checksum mismatch for N={obj.get('N')}")
        if obj["kind"] not in KINDS:
            raise ValueError(f"unknown model kind {obj['kind']!r}")
        pair = lambda o, a, b: (BiRat.from_json(o[a]), BiRat.from_json(o[b]))
        return cls(
            N=obj["N"],
            genus=obj["genus"],
            kind=obj["kind"],
            optimized_f=BiPoly.from_json(obj["optimized_f"]) if "optimized_f" in obj else None,
            phi=pair(obj["phi"], "r", "s") if "phi" in obj else None,
            phi_text=(obj["phi_text"]["r"], obj["phi_text"]["s"]) if "phi_text" in obj else None,
            tate_map=pair(obj["tate_map"], "b", "c") if "tate_map" in obj else None,
            raw_F=BiPoly.from_json(obj["raw_F"]) if "raw_F" in obj else None,
            genus1=Genus1Data.from_json(obj["genus1"]) if "genus1" in obj else None,
            stats=obj.get("stats"),
            source=obj.get("source", "table"),
        )


def checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass
class ModelDatabase:
    entries: dict[int, ModelEntry] = field(default_factory=dict)

    def __getitem__(self, N: int) -> ModelEntry:
        try:
            return self.entries[N]
        except KeyError:
            raise KeyError(f"no bundled model for N={N}") from None

    def __contains__(self, N: int) -> bool:
        return N in self.entries

    def __iter__(self):
        return iter(sorted(self.entries))

    def to_json(self) -> dict:
        return {str(N): self.entries[N].to_json() for N in self}

    @classmethod
    def from_json(cls, obj: dict) -> "ModelDatabase":
        return cls({int(k): ModelEntry.from_json(v) for k, v in obj.items()})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "ModelDatabase":
        return cls.from_json(json.loads(text))


def data_dir():
    return resources.files(DATA_PACKAGE).joinpath(*DATA_SUBDIR)


def load_entry(N: int) -> ModelEntry:
    path = data_dir().joinpath(f"{N}.json")
    if not path.is_file():
        raise KeyError(f"no bundled model for N={N}")
    return ModelEntry.from_json(json.loads(path.read_text()))


_db: ModelDatabase | None = None


def load_database(refresh: bool = False) -> ModelDatabase:
    global _db
    if _db is None or refresh:
        entries = {}
        for path in data_dir().iterdir():
            if path.name.endswith(".json"):
                e = ModelEntry.from_json(json.loads(path.read_text()))
                entries[e.N] = e
        _db = ModelDatabase(entries)
    return _db


def write_entry(entry: ModelEntry, directory: Path) -> Path:
    path = Path(directory) / f"{entry.N}.json"
    path.write_text(json.dumps(entry.to_json(), indent=1, sort_keys=True) + "\n")
    return path


# ---------------------------------------------------------------------------
# cross-validation
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    N: int
    check: str
    ok: bool | None
    detail: str = ""


@dataclass
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok is not False for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.ok is False]

    def lines(self) -> list[str]:
        tag = {True: "ok", False: "FAIL", None: "skip"}
        return [f"N={r.N:<3} {r.check:<8} {tag[r.ok]:<4} {r.detail}" for r in self.results]


def _check_points(entry: ModelEntry, p: int, rng: random.Random, count: int) -> tuple[int, int]:
    """(good, bad): sampled model points whose image has a point of exact order N."""
    from .ec import has_exact_order, rs_to_tate, tate_to_sws, TateCurve
    from .field import PrimeField
    from .generate import PlaneModel

    model = PlaneModel.from_entry(entry)
    F = PrimeField(p)
    good = bad = 0
    for b, c in model.sample_parameters(F, count, rng, use_genus1=False):
        tc = TateCurve(b, c, p)
        if tc.discriminant() == 0:
            continue
        w, P = tate_to_sws(tc)
        if has_exact_order(w, P, entry.N):
            good += 1
        else:
            bad += 1
    if entry.genus1 is not None:
        for b, c in model.sample_parameters(F, count, rng, use_genus1=True):
            tc = TateCurve(b, c, p)
            if tc.discriminant() == 0:
                continue
            w, P = tate_to_sws(tc)
            good, bad = (good + 1, bad) if has_exact_order(w, P, entry.N) else (good, bad + 1)
    return good, bad


def verify_database(db: ModelDatabase | None = None, n_primes: int = 5, points: int = 20,
                    seed: int = 0, raw: bool = True) -> VerificationReport:
    """Re-derive raw forms and check every bundled map numerically.

    For each N the raw form from the group law is compared with the bundled
    one (when present), and over ``n_primes`` random primes every model point
    is pushed through its map to a Tate curve on which (0, 0) must have exact
    order N.
    """
    from .field import random_prime
    from .tate import raw_form

    db = db or load_database()
    rng = random.Random(seed)
    report = VerificationReport()
    for N in db:
        e = db[N]
        if raw and e.raw_F is not None:
            F = raw_form(N).F
            same = F == e.raw_F or F == -e.raw_F
            report.results.append(CheckResult(N, "raw", same, "" if same else "differs from derived raw form"))
        else:
            report.results.append(CheckResult(N, "raw", None, "no bundled raw form"))
        good = bad = 0
        for _ in range(n_primes):
            p = random_prime(30, rng)
            try:
                g, b = _check_points(e, p, rng, points)
            except (ValueError, ArithmeticError, RuntimeError) as exc:
                report.results.append(CheckResult(N, "numeric", False, f"p={p}: {exc}"))
                break
            good += g
            bad += b
        else:
            ok = bad == 0 and good > 0
            report.results.append(CheckResult(N, "numeric", ok, f"{good} points ok, {bad} bad"))
    return report


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def table_row(entry: ModelEntry, table: str) -> list[str]:
    """Text lines of one row in the layout of the printed tables."""
    N = entry.N
    if table == "raw":
        return [f"{N}  {format_poly(entry.raw_F)}"] if entry.raw_F is not None else []
    if table == "optimized":
        return [f"{N}  {format_grouped(entry.optimized_f)}"] if entry.optimized_f is not None else []
    if table == "maps":
        if entry.phi_text is None:
            return []
        return [f"{N}  r={entry.phi_text[0]},  s={entry.phi_text[1]}"]
    if table == "genus1":
        if entry.genus1 is None:
            return []
        first, *rest = entry.genus1.text
        return [f"{N}  {first}"] + [f"    {t}" for t in rest]
    if table == "stats":
        if entry.stats is None:
            return []
        s = entry.stats
        cols = ("g", "d_C0", "d_C1", "t_C0", "t_C1", "k_max", "ell")
        return [f"{N}  " + " ".join(str(s.get(c, "-")) for c in cols)]
    raise ValueError(f"unknown table {table!r}")


TABLE_TITLES = {
    "genus1": "Short Weierstrass form of X1(N) with genus 1",
    "raw": "Raw form of X1(N): F(r,s)=0",
    "stats": "Search statistics for X1(N): N g d(C0) d(C1) t(C0) t(C1) k_max l(C0,C1)",
    "optimized": "Optimized form of X1(N): f(x,y)=0",
    "maps": "Birational maps for X1(N) from f(x,y)=0 to F(r,s)=0",
}


def export_text(db: ModelDatabase) -> str:
    out: list[str] = []
    for table, title in TABLE_TITLES.items():
        out.append(title)
        out.append("-" * len(title))
        for N in db:
            out.extend(table_row(db[N], table))
        out.append("")
    return "\n".join(out)


def export_tables(directory: Path | str, formats=("json", "text"), db: ModelDatabase | None = None) -> list[Path]:
    """Write the database as ``x1_models.json`` and/or ``x1_tables.txt``."""
    db = db or load_database()
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt in formats:
        if fmt == "json":
            path = directory / "x1_models.json"
            path.write_text(db.dumps() + "\n")
        elif fmt == "text":
            path = directory / "x1_tables.txt"
            path.write_text(export_text(db))
        else:
            raise ValueError(f"unknown export format {fmt!r}")
        written.append(path)
    return written


def parse_map_pair(r_text: str, s_text: str, env: dict[str, str] | None = None) -> tuple[BiRat, BiRat]:
    """Parse printed (r, s) formulas in x, y; ``env`` names auxiliary subexpressions."""
    values = {k: parse_rational(v, XY) for k, v in (env or {}).items()}
    return parse_rational(r_text, XY, values), parse_rational(s_text, XY, values)
