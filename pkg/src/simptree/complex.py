"""Facet complexes: data model, parsing, connectivity and facet ideals.

Facets are stored as integer bitsets over a dense vertex index, so a
complex with ``n`` vertices and ``l`` facets occupies ``n * l`` bits of
facet data.  Vertex indices follow order of first appearance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .unionfind import DisjointSet

__all__ = [
    "ComplexError",
    "ParseError",
    "AntichainError",
    "DuplicateFacetError",
    "FacetComplex",
    "parse_complex",
    "format_complex",
    "format_monomial",
    "connected_components",
    "is_connected",
    "free_vertices",
    "facet_ideal_generators",
    "bits",
]

FORMATS = ("chars", "tokens")
_DIRECTIVE = re.compile(r"#\s*format\s*:\s*(\w+)")


class ComplexError(ValueError):
    """Invalid facet complex input."""


class ParseError(ComplexError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class AntichainError(ComplexError):
    def __init__(self, smaller: str, larger: str):
        self.smaller, self.larger = smaller, larger
        super().__init__(f"facet {smaller} is contained in facet {larger}")


class DuplicateFacetError(ComplexError):
    def __init__(self, facet: str):
        self.facet = facet
        super().__init__(f"duplicate facet {facet}")


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FacetComplex:
    """An immutable antichain of facets over a named vertex universe.

    ``masks[i]`` is the bitset of facet ``i``; bit ``k`` stands for
    ``vertices[k]``.
    """

    vertices: tuple[str, ...]
    masks: tuple[int, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: k for k, v in enumerate(self.vertices)})
        if len(self._index) != len(self.vertices):
            raise ComplexError("vertex names must be unique")
        universe = (1 << len(self.vertices)) - 1
        seen = set()
        for m in self.masks:
            if m <= 0 or m & ~universe:
                raise ComplexError("facets must be nonempty subsets of the vertex universe")
            if m in seen:
                raise DuplicateFacetError(self._label(m))
            seen.add(m)
        ordered = sorted(self.masks, key=int.bit_count)
        for i, small in enumerate(ordered):
            for big in ordered[i + 1:]:
                if small & big == small:
                    raise AntichainError(self._label(small), self._label(big))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[str]], vertices: Sequence[str] | None = None) -> FacetComplex:
        """Build a complex from vertex-name collections.

        Without an explicit ``vertices`` order, indices are assigned by
        first appearance.  Facets given as strings are split into
        single-character names.
        """
        names: list[str] = list(vertices) if vertices is not None else []
        index = {v: k for k, v in enumerate(names)}
        masks = []
        for facet in facets:
            m = 0
            for v in facet:
                if v not in index:
                    if vertices is not None:
                        raise ComplexError(f"unknown vertex {v!r}")
                    index[v] = len(names)
                    names.append(v)
                m |= 1 << index[v]
            masks.append(m)
        return cls(tuple(names), tuple(masks))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def vertex_index(self, name: str) -> int:
        return self._index[name]

    def facet(self, i: int) -> frozenset[str]:
        return frozenset(self.vertices[k] for k in bits(self.masks[i]))

    def facet_vertices(self, i: int) -> tuple[str, ...]:
        """Vertex names of facet ``i`` sorted by vertex index."""
        return tuple(self.vertices[k] for k in bits(self.masks[i]))

    def label(self, i: int) -> str:
        return self._label(self.masks[i])

    def labels(self, indices: Iterable[int] | None = None) -> list[str]:
        if indices is None:
            indices = range(self.l)
        return [self.label(i) for i in indices]

    def _label(self, mask: int) -> str:
        return format_monomial([self.vertices[k] for k in bits(mask)])

    def index_of(self, facet: Iterable[str] | str) -> int:
        """Index of the facet with exactly these vertices."""
        try:
            m = sum(1 << self._index[v] for v in set(facet))
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]!r}") from None
        try:
            return self.masks.index(m)
        except ValueError:
            raise ComplexError(f"{self._label(m) if m else '{}'} is not a facet") from None

    def vertex_mask(self, names: Iterable[str]) -> int:
        return sum(1 << self._index[v] for v in set(names))

    def vertex_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.vertices[k] for k in bits(mask))

    @classmethod
    def _trusted(cls, vertices: tuple[str, ...], masks: tuple[int, ...]) -> FacetComplex:
        # caller guarantees validity (e.g. a subset of a validated complex)
        obj = object.__new__(cls)
        object.__setattr__(obj, "vertices", vertices)
        object.__setattr__(obj, "masks", masks)
        object.__setattr__(obj, "_index", {v: k for k, v in enumerate(vertices)})
        return obj

    def restrict(self, indices: Iterable[int]) -> FacetComplex:
        """Sub-complex on the given facet indices, same vertex universe."""
        idx = list(indices)
        if len(set(idx)) != len(idx):
            raise ComplexError("repeated facet index")
        return FacetComplex._trusted(self.vertices, tuple(self.masks[i] for i in idx))

    def compact(self) -> FacetComplex:
        """Drop vertices that lie in no facet, keeping name order."""
        used = 0
        for m in self.masks:
            used |= m
        if used == (1 << self.n) - 1:
            return self
        return FacetComplex.from_facets(
            [self.facet_vertices(i) for i in range(self.l)],
            [self.vertices[k] for k in bits(used)],
        )


def format_monomial(names: Sequence[str]) -> str:
    if all(len(v) == 1 for v in names):
        return "".join(names)
    return "*".join(names)


def format_complex(delta: FacetComplex) -> str:
    """Canonical text form: one facet per line, in facet order."""
    lines = []
    tokens = any(len(v) != 1 for v in delta.vertices)
    if tokens:
        lines.append("# format: tokens")
    for i in range(delta.l):
        names = delta.facet_vertices(i)
        lines.append(" ".join(names) if tokens else "".join(names))
    return "\n".join(lines) + "\n"


def _tokenize(text: str, fmt: str) -> list[tuple[list[str], int, int]]:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        chunks = line.split(",")
        for pos, chunk in enumerate(chunks):
            start = col + 1
            col += len(chunk) + 1
            body = chunk.strip()
            if not body:
                # blank lines and a trailing comma are fine; "xy,,xz" is not
                if len(chunks) > 1 and pos < len(chunks) - 1:
                    raise ParseError("empty facet", lineno, start)
                continue
            offset = start + (len(chunk) - len(chunk.lstrip()))
            if fmt == "chars":
                for k, ch in enumerate(body):
                    if ch.isspace() or ch == "*":
                        raise ParseError(
                            f"separator {ch!r} inside a facet; declare '# format: tokens' "
                            "for multi-character vertex names",
                            lineno, offset + k,
                        )
                    if not (ch.isalnum() or ch == "_"):
                        raise ParseError(f"invalid vertex character {ch!r}", lineno, offset + k)
                names = list(body)
            else:
                names = []
                for tok in re.split(r"[\s*]+", body):
                    if not tok:
                        raise ParseError("empty vertex name", lineno, offset)
                    if not re.fullmatch(r"[\w.'\-]+", tok):
                        raise ParseError(f"invalid vertex name {tok!r}", lineno, offset + body.find(tok))
                    names.append(tok)
            facets.append((names, lineno, offset))
    return facets


def parse_complex(text: str, minimize: bool = False, fmt: str | None = None) -> FacetComplex:
    """Parse a facet list or a list of square-free monomials.

    Facets are separated by commas or newlines.  In ``chars`` format each
    character is a vertex (``xyz``); in ``tokens`` format vertices are
    separated by whitespace or ``*`` (``x1*x2*x3``).  ``fmt=None`` reads a
    ``# format: tokens`` directive from the text and otherwise uses
    ``chars``.  With ``minimize`` true, duplicate facets and facets
    strictly contained in another are dropped instead of rejected.
    """
    if fmt is None:
        fmt = "chars"
        for line in text.splitlines():
            m = _DIRECTIVE.match(line.strip())
            if m:
                fmt = m.group(1)
                break
    if fmt not in FORMATS:
        raise ParseError(f"unknown format {fmt!r} (expected one of {', '.join(FORMATS)})")
    facets = _tokenize(text, fmt)
    if not facets:
        raise ParseError("empty input: no facets")

    names: list[str] = []
    index: dict[str, int] = {}
    masks: list[int] = []
    for vs, lineno, col in facets:
        m = 0
        for v in vs:
            if v not in index:
                index[v] = len(names)
                names.append(v)
            bit = 1 << index[v]
            if m & bit:
                raise ParseError(f"vertex {v!r} repeated (monomials must be square-free)", lineno, col)
            m |= bit
        masks.append(m)

    if minimize:
        kept: list[int] = []
        for m in masks:
            if m in kept:
                continue
            if any(m != o and m & o == m for o in masks):
                continue
            kept.append(m)
        masks = kept
        used = 0
        for m in masks:
            used |= m
        if used != (1 << len(names)) - 1:
            # re-index so dropped facets leave no orphan vertices
            return FacetComplex.from_facets(
                [[names[k] for k in bits(m)] for m in masks],
            )
    else:
        seen: dict[int, int] = {}
        for pos, m in enumerate(masks):
            if m in seen:
                _, lineno, col = facets[pos]
                raise ParseError(str(DuplicateFacetError(format_monomial([names[k] for k in bits(m)]))), lineno, col)
            seen[m] = pos
    return FacetComplex(tuple(names), tuple(masks))


def _components(masks: Sequence[int], members: Sequence[int], outside: int = 0) -> DisjointSet:
    """Merge facets sharing a vertex not in ``outside``; one pass per facet vertex."""
    ds = DisjointSet(len(masks))
    first: dict[int, int] = {}
    for h in members:
        for k in bits(masks[h] & ~outside):
            if k in first:
                ds.union(first[k], h)
            else:
                first[k] = h
    return ds


def connected_components(delta: FacetComplex) -> list[list[int]]:
    """Partition facet indices into connected components.

    Blocks are ordered by their smallest facet index.
    """
    ds = _components(delta.masks, range(delta.l))
    return ds.groups(range(delta.l))


def is_connected(delta: FacetComplex) -> bool:
    return len(connected_components(delta)) <= 1


def free_vertices(delta: FacetComplex, f: int) -> frozenset[str]:
    """Vertices of facet ``f`` that lie in no other facet."""
    if not 0 <= f < delta.l:
        raise IndexError(f"facet index {f} out of range")
    others = 0
    for i, m in enumerate(delta.masks):
        if i != f:
            others |= m
    return frozenset(delta.vertex_names(delta.masks[f] & ~others))


def facet_ideal_generators(delta: FacetComplex) -> list[tuple[str, ...]]:
    """One square-free monomial per facet, variables in vertex-index order."""
    return [delta.facet_vertices(i) for i in range(delta.l)]
