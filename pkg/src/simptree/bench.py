"""Benchmark records: decision counters plus timing per variant run."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .complex import FacetComplex, is_connected
from .decision import VARIANT_ALIASES, is_tree

DEFAULT_VARIANTS = ("baseline", "useless_removal", "connection_set", "incidence_matrix")

# stable field order for text and machine output
FIELDS = (
    "id", "variant", "l", "n", "is_tree", "triples", "comparability_rejections",
    "connectivity_checks", "cycle_triples", "facets_removed", "wall_time_ms",
)


@dataclass
class BenchRecord:
    id: str
    variant: str
    l: int
    n: int
    is_tree: bool
    triples: int
    comparability_rejections: int
    connectivity_checks: int
    cycle_triples: int
    facets_removed: int
    wall_time_ms: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in FIELDS}

    def counters(self) -> dict:
        """Everything except timing; equal across reruns."""
        d = self.as_dict()
        del d["wall_time_ms"]
        return d

    def to_text(self) -> str:
        parts = []
        for k, v in self.as_dict().items():
            if isinstance(v, bool):
                v = str(v).lower()
            elif isinstance(v, float):
                v = f"{v:.3f}"
            parts.append(f"{k}={v}")
        return " ".join(parts)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def run_bench(
    delta: FacetComplex,
    ident: str,
    variants: Iterable[str] = DEFAULT_VARIANTS,
    early_exit: bool = False,
) -> list[BenchRecord]:
    """One record per variant, in the order given."""
    if not is_connected(delta):
        raise ValueError(f"{ident}: benchmark input must be connected")
    out = []
    for name in variants:
        variant = VARIANT_ALIASES[name]
        v = is_tree(delta, variant, early_exit=early_exit, witness=False)
        s = v.stats
        out.append(BenchRecord(
            ident, variant, delta.l, delta.n, v.is_tree, s.triples_enumerated,
            s.comparability_rejections, s.connectivity_checks, s.cycle_triples,
            s.facets_removed, round(v.wall_time_ms, 3),
        ))
    return out
