"""Invariant reports, the known-values table and the census harness."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import metadata
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .characters import enumerate_characters, irreducible_count, skein_dimension
from .homology import (
    batch_oracle_counts,
    character_counts,
    presentation_matrix,
    smith_normal_form,
    sweep_instances,
)
from .reduction import generating_set_size, terminal_bounds
from .ring import rational_from_json, rational_to_json
from .seifert import (
    GeneralSeifertData,
    SeifertData,
    classify_character_variety,
    euler_number,
    normalize,
)

CENSUS_PMAX_GUARD = 12


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


# ----------------------------------------------------------------------------
# known values
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class KnownValue:
    label: str
    dimension: int
    citation: str


class KnownValuesTable:
    """Dimensions over Q(A) of skein modules computed by other means."""

    entries: Dict[str, KnownValue] = {
        "S2xS1": KnownValue(
            "S2xS1", 1,
            "Hoste and Przytycki, The Kauffman bracket skein module of S^1 x S^2, "
            "Math. Z. 220 (1995); over Q(A) only the empty link survives"),
        "RP3": KnownValue(
            "RP3", 2,
            "Hoste and Przytycki, The (2,infinity)-skein module of lens spaces, "
            "J. Knot Theory Ramifications 2 (1993); L(p,q) has dimension floor(p/2)+1"),
        "RP3#RP3": KnownValue(
            "RP3#RP3", 4,
            "Przytycki, Kauffman bracket skein module of a connected sum of 3-manifolds, "
            "Manuscripta Math. 101 (2000); dimensions multiply, 2 x 2"),
    }

    @classmethod
    def labels(cls) -> List[str]:
        return list(cls.entries)

    @classmethod
    def lookup(cls, label: str) -> KnownValue:
        key = label.strip().replace(" ", "")
        if key not in cls.entries:
            raise KeyError(f"unknown manifold {label!r}; known: {', '.join(cls.entries)}")
        return cls.entries[key]


def cmd_known(label: str) -> KnownValue:
    return KnownValuesTable.lookup(label)


def identify_known(m: SeifertData) -> Optional[str]:
    """Label of a table entry homeomorphic to m, when recognizable from its slopes."""
    if sum(1 for p in m.p if p > 1) <= 1:
        # at most one exceptional fiber: a lens space L(|H_1|, .)
        if character_counts(m).h1_order == 2:
            return "RP3"
    return None


# ----------------------------------------------------------------------------
# the report
# ----------------------------------------------------------------------------

def _slopes_json(m: SeifertData) -> List[List[int]]:
    return [[q, p] for p, q in m.slopes]


def _slopes_from_json(data) -> SeifertData:
    return SeifertData(tuple((p, q) for q, p in data))


@dataclass
class InvariantReport:
    slopes: SeifertData
    normalized: Optional[SeifertData]
    euler: Fraction
    verdict: Tuple[str, str]
    homology: Optional[dict] = None
    characters: Optional[dict] = None
    reduction: Optional[dict] = None
    known_value: Optional[dict] = None
    version: str = field(default_factory=tool_version)
    timings: Optional[Dict[str, float]] = None

    def to_json(self) -> dict:
        return {
            "slopes": _slopes_json(self.slopes),
            "normalized": None if self.normalized is None else _slopes_json(self.normalized),
            "euler": rational_to_json(self.euler),
            "verdict": {"finite": self.verdict[0] == "finite", "case": self.verdict[1]},
            "homology": self.homology,
            "characters": self.characters,
            "reduction": self.reduction,
            "known_value": self.known_value,
            "version": self.version,
            "timings": self.timings,
        }

    @classmethod
    def from_json(cls, data: dict) -> "InvariantReport":
        v = data["verdict"]
        return cls(
            slopes=_slopes_from_json(data["slopes"]),
            normalized=None if data["normalized"] is None else _slopes_from_json(data["normalized"]),
            euler=rational_from_json(data["euler"]),
            verdict=("finite" if v["finite"] else "infinite", v["case"]),
            homology=data.get("homology"),
            characters=data.get("characters"),
            reduction=data.get("reduction"),
            known_value=data.get("known_value"),
            version=data.get("version", ""),
            timings=data.get("timings"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def render_text(self) -> str:
        lines = [
            f"slopes      {self.slopes.slope_string()}",
            f"euler       {self.euler}",
            f"X(M)        {self.verdict[0]} ({self.verdict[1]})",
        ]
        if self.normalized is not None:
            lines.append(f"normalized  {self.normalized.slope_string()}")
        if self.homology:
            h = self.homology
            lines.append(f"|H1|        {h['h1_order']}  (SNF {h['snf']})")
            lines.append(f"|H1 x Z/2|  {h['h1_mod2']}")
        if self.characters:
            c = self.characters
            lines.append(f"|X(M)|      {c['abelian_count']} abelian + {c['x_irr']} irreducible")
            lines.append(f"x_M         {c['x_M']}  (reduced: {str(c['reduced']).lower()})")
            lines.append(f"skein dim   {c['skein_dim']}{'' if c['skein_dim_exact'] else ' (lower bound)'}")
        if self.reduction:
            r = self.reduction
            lines.append(f"generators  {r['generating_set_size']}  (bounds {r['bounds']})")
        if self.known_value:
            k = self.known_value
            lines.append(f"known       {k['label']}: {k['dimension']}  [{k['citation']}]")
        return "\n".join(lines)


def cmd_invariants(m: SeifertData, timings: bool = True) -> InvariantReport:
    """Every invariant of the pipeline for one three-fiber manifold over S^2.

    Raises EulerZero when H_1 is infinite.
    """
    clock: Dict[str, float] = {}
    t0 = time.perf_counter()
    e = euler_number(m)
    verdict = classify_character_variety(GeneralSeifertData("S2", m.slopes))
    nm = normalize(m)  # EulerZero propagates
    clock["normalize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    counts = character_counts(m)
    grp = smith_normal_form(presentation_matrix(m))
    homology = {**counts.to_json(), "snf": list(grp.snf_diagonal)}
    clock["homology"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    x_irr = irreducible_count(m)
    dim = skein_dimension(m)
    characters = {
        "abelian_count": counts.abelian_count,
        "x_irr": x_irr,
        "x_M": counts.exceptional_count,
        "reduced": counts.exceptional_count == 0,
        "skein_dim": dim.value,
        "skein_dim_exact": dim.exact,
    }
    clock["characters"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    reduction = {
        "generating_set_size": generating_set_size(nm),
        "bounds": list(terminal_bounds(nm)),
    }
    clock["reduction"] = time.perf_counter() - t0

    label = identify_known(m)
    known = None
    if label is not None:
        kv = cmd_known(label)
        known = {"label": kv.label, "dimension": kv.dimension, "citation": kv.citation}

    return InvariantReport(
        slopes=m, normalized=nm, euler=e, verdict=verdict,
        homology=homology, characters=characters, reduction=reduction,
        known_value=known,
        timings={k: round(v, 6) for k, v in clock.items()} if timings else None,
    )


# ----------------------------------------------------------------------------
# census
# ----------------------------------------------------------------------------

@dataclass
class Discrepancy:
    slopes: List[List[int]]
    check: str
    expected: object
    found: object


@dataclass
class CensusSummary:
    pmax: int
    instances: int = 0
    discrepancies: List[Discrepancy] = field(default_factory=list)
    weakly_coprime: int = 0
    weakly_coprime_nonreduced: int = 0
    output: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def _census_row(m: SeifertData) -> Tuple[str, List[Tuple[str, object, object]]]:
    """Report line plus the checks that can be made on one instance alone."""
    rep = cmd_invariants(m, timings=False)
    checks: List[Tuple[str, object, object]] = []
    ch = rep.characters
    table = enumerate_characters(m)
    checks.append(("|enumerate_characters|", ch["abelian_count"] + ch["x_irr"], len(table.records)))
    checks.append(("enumerated exceptional", ch["x_M"], len(table.of_kind("exceptional-abelian"))))
    nm = rep.normalized
    for label, other in (("normalize", nm), ("permute", m.permuted((2, 0, 1)))):
        c2 = character_counts(other)
        checks.append((f"{label} |H1|", rep.homology["h1_order"], c2.h1_order))
        checks.append((f"{label} |H1 x Z/2|", rep.homology["h1_mod2"], c2.h1_mod2_order))
        checks.append((f"{label} x_M", ch["x_M"], c2.exceptional_count))
        checks.append((f"{label} x_irr", ch["x_irr"], irreducible_count(other)))
    return rep.dumps(), [c for c in checks if c[1] != c[2]]


def census_instances(pmax: int, qmax: Optional[int] = None) -> List[SeifertData]:
    return sweep_instances(pmax, qmax)


def cmd_census(pmax: int, output: Optional[Path] = None, qmax: Optional[int] = None,
               jobs: int = 1, guard: int = CENSUS_PMAX_GUARD) -> CensusSummary:
    """Stream one report per instance to ``output`` (JSON lines) and cross-check
    every closed formula against its enumeration oracle."""
    if pmax > guard:
        raise ValueError(f"pmax={pmax} exceeds the guard {guard}; pass a larger guard explicitly")
    instances = census_instances(pmax, qmax)
    summary = CensusSummary(pmax=pmax, output=None if output is None else str(output))
    oracle = batch_oracle_counts(instances)

    def rows() -> Iterator[Tuple[str, list]]:
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as pool:
                yield from pool.map(_census_row, instances, chunksize=64)
        else:
            yield from map(_census_row, instances)

    fh = open(output, "w", encoding="utf-8") if output is not None else None
    try:
        for m, (line, bad) in zip(instances, rows()):
            summary.instances += 1
            if fh is not None:
                fh.write(line + "\n")
            rec = json.loads(line)
            h, ch = rec["homology"], rec["characters"]
            o = oracle[m]
            bad = list(bad) + [
                (name, want, got)
                for name, want, got in (
                    ("h1_order vs SNF", h["h1_order"], o.h1_snf),
                    ("h1_mod2 vs mod-2 rank", h["h1_mod2"], o.h1_mod2),
                    ("abelian_count vs enumeration", ch["abelian_count"], o.abelian),
                    ("x_M vs enumeration", ch["x_M"], o.exceptional),
                )
                if want != got
            ]
            if h["weakly_coprime"]:
                summary.weakly_coprime += 1
                if ch["x_M"] != 0:
                    summary.weakly_coprime_nonreduced += 1
                    bad.append(("weakly coprime => x_M = 0", 0, ch["x_M"]))
            for name, want, got in bad:
                summary.discrepancies.append(Discrepancy(_slopes_json(m), name, want, got))
    finally:
        if fh is not None:
            fh.close()
    return summary


def read_census(path: Path) -> Iterable[InvariantReport]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield InvariantReport.from_json(json.loads(line))


__all__ = [
    "CENSUS_PMAX_GUARD", "CensusSummary", "Discrepancy", "InvariantReport", "KnownValue",
    "KnownValuesTable", "cmd_census", "cmd_invariants", "cmd_known",
    "identify_known", "read_census", "tool_version",
]
