"""Monoidal and braided monoidal structures on Vec_G, G = Z_m x Z_n."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .braidings import DEFAULT_BRAIDING_MAX_ORDER, QuasiBicharacter, is_skew_symmetric, solve_quasi_bicharacters
from .cocycles import CocycleParams3, all_params
from .exact import SizeLimitError, UnityRoot
from .group import GroupSpec


@dataclass(frozen=True)
class MonoidalClass:
    spec: GroupSpec
    params: CocycleParams3


@dataclass
class BraidedEntry:
    monoidal: MonoidalClass
    solutions: list[QuasiBicharacter]

    @property
    def empty(self) -> bool:
        return not self.solutions


@dataclass
class ClassificationReport:
    spec: GroupSpec
    monoidal_classes: list[MonoidalClass]
    braided: list[BraidedEntry] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def braided_count(self) -> int:
        return sum(len(e.solutions) for e in self.braided)

    def to_dict(self) -> dict:
        return {
            "group": {"m": self.spec.m, "n": self.spec.n},
            "monoidal_classes": [c.params.as_dict() for c in self.monoidal_classes],
            "braided": [
                {
                    "params": e.monoidal.params.as_dict(),
                    "solutions": [dict(r.as_dict(), skew_symmetric=is_skew_symmetric(r)) for r in e.solutions],
                    "empty": e.empty,
                }
                for e in self.braided
            ],
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def classify_monoidal(spec: GroupSpec) -> list[MonoidalClass]:
    return [MonoidalClass(spec, p) for p in all_params(spec)]


def classify_braided(spec: GroupSpec, max_order: int = DEFAULT_BRAIDING_MAX_ORDER) -> ClassificationReport:
    if spec.order > max_order:
        raise SizeLimitError(f"|G| = {spec.order} exceeds the limit {max_order}")
    classes = classify_monoidal(spec)
    entries = [BraidedEntry(c, solve_quasi_bicharacters(spec, c.params)) for c in classes]
    report = ClassificationReport(spec, classes, entries)
    report.meta = {
        "tool": "grcat",
        "version": __version__,
        "monoidal_count": len(classes),
        "braided_count": report.braided_count,
        "symmetric_count": sum(is_skew_symmetric(r) for e in entries for r in e.solutions),
        "limits": {"max_order": max_order},
    }
    return report


def braiding_from_dict(spec: GroupSpec, params: dict, solution: dict) -> QuasiBicharacter:
    """Rebuild a quasi-bicharacter from its serialized form."""
    p = CocycleParams3(params["a"], params["b"], params["d"]).validate(spec)
    vals = [UnityRoot.parse(solution[k]) for k in ("r11", "r12", "r21", "r22")]
    return QuasiBicharacter(spec, p, *vals)


def report_from_json(text: str) -> tuple[GroupSpec, list[tuple[CocycleParams3, list[QuasiBicharacter]]]]:
    data = json.loads(text)
    spec = GroupSpec(data["group"]["m"], data["group"]["n"])
    out = []
    for entry in data["braided"]:
        rs = [braiding_from_dict(spec, entry["params"], s) for s in entry["solutions"]]
        p = entry["params"]
        out.append((CocycleParams3(p["a"], p["b"], p["d"]), rs))
    return spec, out
