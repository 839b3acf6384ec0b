"""Deterministic complex generators."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .complex import ComplexError, FacetComplex

__all__ = ["GeneratorSpec", "gen_path", "gen_interval", "gen_random", "generate", "parse_spec"]


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str  # path | interval | random
    l: int
    width: int = 2
    n: int = 0
    size_range: tuple[int, int] = (2, 3)
    seed: int = 0

    def label(self) -> str:
        if self.kind == "path":
            return f"path:l={self.l}"
        if self.kind == "interval":
            return f"interval:l={self.l},width={self.width}"
        lo, hi = self.size_range
        return f"random:l={self.l},n={self.n},min={lo},max={hi},seed={self.seed}"


def gen_interval(l: int, width: int) -> FacetComplex:
    """Facets ``x_i ... x_{i+width}`` for ``i = 1..l``."""
    if l < 1 or width < 1:
        raise ComplexError("interval complex needs l >= 1 and width >= 1")
    return FacetComplex.from_facets(
        [[f"x{j}" for j in range(i, i + width + 1)] for i in range(1, l + 1)]
    )


def gen_path(l: int) -> FacetComplex:
    """Facets ``x_i x_{i+1} x_{i+2}`` for ``i = 1..l``; always a tree."""
    if l < 1:
        raise ComplexError("path complex needs l >= 1")
    return gen_interval(l, 2)


def gen_random(spec: GeneratorSpec, retries: int = 1000) -> FacetComplex:
    """Seeded random antichain with facet sizes drawn from ``size_range``.

    Candidates that repeat or are comparable with an accepted facet are
    redrawn; after ``retries`` consecutive rejections the request is
    declared infeasible.
    """
    lo, hi = spec.size_range
    if spec.l < 1 or spec.n < 1 or not 1 <= lo <= hi <= spec.n:
        raise ComplexError(f"infeasible random spec {spec.label()}")
    rng = random.Random(spec.seed)
    names = [f"x{i}" for i in range(1, spec.n + 1)]
    accepted: list[int] = []
    misses = 0
    while len(accepted) < spec.l:
        size = rng.randint(lo, hi)
        m = 0
        for k in rng.sample(range(spec.n), size):
            m |= 1 << k
        if any(m & a == m or m & a == a for a in accepted):
            misses += 1
            if misses > retries:
                raise ComplexError(f"could not place {spec.l} facets for {spec.label()}")
            continue
        misses = 0
        accepted.append(m)
    return FacetComplex(tuple(names), tuple(accepted)).compact()


def generate(spec: GeneratorSpec) -> FacetComplex:
    if spec.kind == "path":
        return gen_path(spec.l)
    if spec.kind == "interval":
        return gen_interval(spec.l, spec.width)
    if spec.kind == "random":
        return gen_random(spec)
    raise ComplexError(f"unknown generator {spec.kind!r}")


def parse_spec(text: str) -> GeneratorSpec:
    """Parse ``kind:key=value,...`` such as ``interval:l=50,width=10``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    params: dict[str, int] = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"bad generator parameter {item!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise ValueError(f"bad integer in {item!r}") from None
    if kind not in ("path", "interval", "random"):
        raise ValueError(f"unknown generator {kind!r}")
    allowed = {"path": {"l"}, "interval": {"l", "width"}, "random": {"l", "n", "min", "max", "seed"}}[kind]
    extra = set(params) - allowed
    if extra:
        raise ValueError(f"unknown parameter(s) for {kind}: {', '.join(sorted(extra))}")
    if "l" not in params:
        raise ValueError("generator needs l=")
    if kind == "random":
        if "n" not in params:
            raise ValueError("random generator needs n=")
        return GeneratorSpec("random", params["l"], n=params["n"],
                             size_range=(params.get("min", 2), params.get("max", 3)),
                             seed=params.get("seed", 0))
    return GeneratorSpec(kind, params["l"], width=params.get("width", 2))
