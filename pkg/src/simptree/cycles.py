"""Cycle certificates: extraction, verification and cone reduction."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import ComplexError, FacetComplex, bits
from .relations import _strong

__all__ = [
    "CycleCertificate",
    "CertificateError",
    "TripleConditionError",
    "cone_reduce",
    "verify_certificate",
    "cycle_from_triple",
    "certificate_from_cycle",
    "residue_path",
]


class CertificateError(ValueError):
    pass


class TripleConditionError(ValueError):
    pass


@dataclass(frozen=True)
class CycleCertificate:
    """Facets ``ordering[0] ~ ordering[1] ~ ... ~ ordering[-1] ~ ordering[0]``.

    ``apex`` is the common intersection of all facets in the ordering.
    """

    ordering: tuple[int, ...]
    apex: frozenset[str]

    def __len__(self) -> int:
        return len(self.ordering)

    def to_dict(self, delta: FacetComplex) -> dict:
        return {
            "facets": delta.labels(self.ordering),
            "apex": sorted(self.apex, key=delta.vertex_index),
        }


def _intersection(masks: Sequence[int], members: Iterable[int]) -> int:
    out = -1
    for h in members:
        out &= masks[h]
    return out if out != -1 else 0


def cone_reduce(delta: FacetComplex) -> tuple[frozenset[str], FacetComplex]:
    """Split off the common intersection of all facets.

    Returns the apex and the complex of facets with the apex removed;
    the reduced complex keeps facet order and drops the apex vertices.
    """
    if delta.l == 0:
        raise ComplexError("cone reduction of the empty complex")
    apex = _intersection(delta.masks, range(delta.l))
    if apex in delta.masks:
        raise ComplexError("a facet equals the common intersection; reduction would leave it empty")
    keep = [k for k in range(delta.n) if not apex >> k & 1]
    reduced = FacetComplex.from_facets(
        [[delta.vertices[k] for k in bits(m & ~apex)] for m in delta.masks],
        [delta.vertices[k] for k in keep],
    )
    return frozenset(delta.vertex_names(apex)), reduced


def verify_certificate(delta: FacetComplex, cert: CycleCertificate) -> bool:
    """Check the circle-of-strong-neighbors structure of a claimed cycle.

    Strong neighborhood is evaluated inside the sub-complex formed by the
    certificate's facets.  Non-adjacent facets must meet exactly in the
    common intersection, which must also match ``cert.apex``.
    """
    order = list(cert.ordering)
    if len(set(order)) != len(order):
        raise CertificateError("certificate repeats a facet")
    for i in order:
        if not 0 <= i < delta.l:
            raise CertificateError(f"facet index {i} out of range")
    k = len(order)
    if k < 3:
        return False
    masks = delta.masks
    common = _intersection(masks, order)
    if frozenset(delta.vertex_names(common)) != cert.apex:
        return False
    for i in range(k):
        if not _strong(masks, order, order[i], order[(i + 1) % k]):
            return False
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if masks[order[i]] & masks[order[j]] != common:
                return False
    return True


def residue_path(masks: Sequence[int], members: Iterable[int], f: int, g1: int, g2: int) -> list[int] | None:
    """Shortest path from ``g1`` to ``g2`` outside ``f`` inside the residue.

    Neighbors are visited by ascending index.  A shortest path has no
    chord outside ``f``, so together with ``f`` it closes a cycle.
    """
    fm = masks[f]
    target = masks[g1] & masks[g2]
    res = [h for h in members if h == g1 or h == g2 or (h != f and masks[h] & fm == target)]
    parent = {g1: None}
    queue = deque([g1])
    while queue:
        h = queue.popleft()
        if h == g2:
            path = []
            while h is not None:
                path.append(h)
                h = parent[h]
            return path[::-1]
        out = masks[h] & ~fm
        for x in res:
            if x not in parent and masks[x] & out:
                parent[x] = h
                queue.append(x)
    return None


def cycle_from_triple(
    delta: FacetComplex, f: int, g1: int, g2: int, members: Iterable[int] | None = None
) -> CycleCertificate:
    """Cycle through ``g1 ~ f ~ g2`` built from a chord-free residue path."""
    if len({f, g1, g2}) != 3:
        raise TripleConditionError("triple facets must be distinct")
    masks = delta.masks
    a, b = masks[g1] & masks[f], masks[g2] & masks[f]
    if a & ~b == 0 or b & ~a == 0:
        raise TripleConditionError("g1 and g2 are comparable under <=_f")
    mem = range(delta.l) if members is None else sorted(members)
    path = residue_path(masks, mem, f, g1, g2)
    if path is None:
        raise TripleConditionError("g1 and g2 are not connected outside f in the residue")
    order = (f, *path)
    return CycleCertificate(order, frozenset(delta.vertex_names(_intersection(masks, order))))


def certificate_from_cycle(delta: FacetComplex, facets: Iterable[int]) -> CycleCertificate:
    """Arrange the facets of a cycle along their strong-neighbor circle."""
    members = sorted(facets)
    masks = delta.masks
    if len(members) < 3:
        raise CertificateError("a cycle has at least three facets")
    nbrs = {f: [g for g in members if _strong(masks, members, f, g)] for f in members}
    if any(len(v) != 2 for v in nbrs.values()):
        raise CertificateError("facets do not form a circle of strong neighbors")
    order = [members[0]]
    prev, cur = None, members[0]
    while True:
        nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
        if nxt == members[0]:
            break
        if nxt in order:
            raise CertificateError("strong neighbors split into several circles")
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != len(members):
        raise CertificateError("strong neighbors split into several circles")
    cert = CycleCertificate(tuple(order), frozenset(delta.vertex_names(_intersection(masks, order))))
    if not verify_certificate(delta, cert):
        raise CertificateError("facets are not a cycle")
    return cert
