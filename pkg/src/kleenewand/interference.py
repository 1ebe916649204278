"""Interference relations and disjoint joins on the finite model.

A relation says which pairs of parallel maps count as disjoint. It is
stored on restriction idempotents (subsets, encoded as bitmasks) and lifted
to maps through their restrictions: ``f ⊥ g`` iff ``f̄ ⊥ ḡ``.

Three kinds are provided:

* ``MAXIMAL``: subsets are related when they do not meet, so maps are
  disjoint when their supports do not meet;
* ``MINIMAL``: only pairs involving the empty subset are related;
* custom relations, given as explicit pairs of masks per object size. These
  must pass :func:`validate_interference` before :func:`perp` accepts them.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from . import kernels
from .errors import CapacityError, DisjointnessError, PreconditionError, ShapeError, ValidationError
from .finpar import FinObj, PartialMap, map_to_json, rest_idem_from_mask, zero

VALIDATION_CAP = 12


class InterferenceRel:
    """A disjointness relation. Use the module constants or :meth:`custom`."""

    __slots__ = ("kind", "pairs", "validated")

    def __init__(self, kind: str, pairs: Mapping[int, frozenset] | None = None,
                 validated: bool = False):
        if kind not in ("maximal", "minimal", "custom"):
            raise ValueError("unknown relation kind %r" % kind)
        self.kind = kind
        self.pairs = dict(pairs or {})
        self.validated = validated or kind != "custom"

    @classmethod
    def custom(cls, pairs_by_size: Mapping[int, Sequence[tuple[int, int]]]) -> InterferenceRel:
        """Build an (unvalidated) relation from unordered mask pairs per object size."""
        table: dict[int, frozenset] = {}
        for size, pairs in pairs_by_size.items():
            if size < 0:
                raise ValueError("object sizes must be nonnegative")
            full = (1 << size) - 1
            sym = set()
            for a, b in pairs:
                if a & ~full or b & ~full:
                    raise ValueError("mask pair (%d, %d) does not fit an object of size %d"
                                     % (a, b, size))
                sym.add((a, b))
                sym.add((b, a))
            table[size] = frozenset(sym)
        return cls("custom", table)

    def validate(self, obj_bound: int = VALIDATION_CAP) -> InterferenceRel:
        """Return a validated copy, or raise :class:`ValidationError` with the report."""
        report = validate_interference(self, obj_bound)
        if not report.ok:
            raise ValidationError("relation fails %s: %s" % (report.axiom, report.witness))
        return InterferenceRel(self.kind, self.pairs, validated=True)

    def assume_valid(self) -> InterferenceRel:
        """A copy marked as validated without checking.

        Meant for exploring relations that deliberately break an axiom.
        """
        return InterferenceRel(self.kind, self.pairs, validated=True)

    def sizes(self) -> list[int]:
        return sorted(self.pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InterferenceRel):
            return NotImplemented
        return self.kind == other.kind and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash((self.kind, frozenset(self.pairs.items())))

    def __repr__(self) -> str:
        if self.kind != "custom":
            return "InterferenceRel(%s)" % self.kind
        return "InterferenceRel(custom, sizes=%s%s)" % (
            self.sizes(), "" if self.validated else ", unvalidated")


MAXIMAL = InterferenceRel("maximal")
MINIMAL = InterferenceRel("minimal")


def idem_perp(rel: InterferenceRel, size: int, a: int, b: int) -> bool:
    """Whether the subsets ``a`` and ``b`` (bitmasks) of an object are related."""
    if rel.kind == "maximal":
        return a & b == 0
    if rel.kind == "minimal":
        return a == 0 or b == 0
    try:
        return (a, b) in rel.pairs[size]
    except KeyError:
        raise ShapeError("the custom relation declares no object of size %d" % size) from None


def perp(rel: InterferenceRel, f: PartialMap, g: PartialMap) -> bool:
    """Map-level disjointness, decided on the restrictions of ``f`` and ``g``."""
    if f.dom != g.dom:
        raise ShapeError("disjointness compares maps out of one object, got %s and %s"
                         % (f.dom, g.dom), f.dom, g.dom)
    if not rel.validated:
        raise ValidationError("custom relation used before validation")
    return idem_perp(rel, f.dom.size, f.mask(), g.mask())


def first_overlap(f: PartialMap, g: PartialMap) -> int | None:
    """The smallest point at which both maps are defined, if any."""
    both = f.mask() & g.mask()
    if not both:
        return None
    return (both & -both).bit_length() - 1


def require_perp(rel: InterferenceRel, f: PartialMap, g: PartialMap, what: str,
                 pair: tuple[int, int] | None = None) -> None:
    if not perp(rel, f, g):
        x = first_overlap(f, g)
        where = "" if x is None else " (both defined at %s)" % f.dom.label(x)
        raise DisjointnessError("%s: maps are not disjoint under the %s relation%s"
                                % (what, rel.kind, where), pair=pair, point=x)


# -- joins -------------------------------------------------------------------

def join(rel: InterferenceRel, fam: Sequence[PartialMap], dom: FinObj | None = None,
         cod: FinObj | None = None) -> PartialMap:
    """The join of a pairwise disjoint family: its pointwise union.

    The empty family needs ``dom`` and ``cod`` and joins to the zero map.
    """
    fam = list(fam)
    if not fam:
        if dom is None or cod is None:
            raise PreconditionError("the join of an empty family needs dom and cod")
        return zero(dom, cod)
    first = fam[0]
    if (dom is not None and dom != first.dom) or (cod is not None and cod != first.cod):
        raise ShapeError("family members do not match the requested type", first, (dom, cod))
    for f in fam[1:]:
        if f.dom != first.dom or f.cod != first.cod:
            raise ShapeError("join needs parallel maps, got %s→%s and %s→%s"
                             % (first.dom, first.cod, f.dom, f.cod), first, f)
    for i, j in itertools.combinations(range(len(fam)), 2):
        require_perp(rel, fam[i], fam[j], "join of members %d and %d" % (i, j), pair=(i, j))
    t = fam[0].t
    for k, f in enumerate(fam[1:], start=1):
        t, clash = kernels.union(t, f.t)
        if clash >= 0:  # only reachable for relations that escaped validation
            raise DisjointnessError("join: member %d overlaps an earlier member at %s"
                                    % (k, first.dom.label(clash)), point=clash)
    return PartialMap._raw(first.dom, first.cod, t)


def join2(f: PartialMap, g: PartialMap, rel: InterferenceRel = MAXIMAL) -> PartialMap:
    return join(rel, [f, g])


def is_strong_join(rel: InterferenceRel, fam: Sequence[PartialMap], h: PartialMap) -> bool:
    """Whether the join of ``fam`` stays disjoint from ``h``, given every member is."""
    for i, f in enumerate(fam):
        if not perp(rel, f, h):
            raise PreconditionError("member %d is not disjoint from h" % i)
    return perp(rel, join(rel, fam, h.dom, fam[0].cod if fam else h.cod), h)


# -- validation --------------------------------------------------------------

AXIOMS = ("𝒪⊥.0", "𝒪⊥.1", "𝒪⊥.2", "𝒪⊥.3", "𝒪⊥.4")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    witness: dict[str, Any] | None = field(default=None)
    object_sizes: tuple[int, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "axiom": self.axiom, "witness": self.witness,
                "object_sizes": list(self.object_sizes)}


def _submasks(m: int) -> Iterator[int]:
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def _related(rel: InterferenceRel, n: int) -> Iterator[tuple[int, int]]:
    full = (1 << n) - 1
    if rel.kind == "maximal":
        for a in range(full + 1):
            for b in _submasks(full ^ a):
                yield a, b
    elif rel.kind == "minimal":
        yield 0, 0
        for a in range(1, full + 1):
            yield a, 0
            yield 0, a
    else:
        yield from sorted(rel.pairs.get(n, ()))


def _profile(a: int, b: int) -> int:
    # bit 0: a∩b nonempty, bit 1: a\b nonempty, bit 2: b\a nonempty
    return (1 if a & b else 0) | (2 if a & ~b else 0) | (4 if b & ~a else 0)


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low
        m ^= low


def _missing_pullback(rel: InterferenceRel, n2: int, prof: int) -> tuple[int, int] | None:
    """Find a pair on an ``n2``-object with profile within ``prof`` that is unrelated."""
    regions = [0]  # each point: 0 outside both, 1 both, 2 only first, 3 only second
    if prof & 1:
        regions.append(1)
    if prof & 2:
        regions.append(2)
    if prof & 4:
        regions.append(3)
    for choice in itertools.product(regions, repeat=n2):
        a = b = 0
        for x, r in enumerate(choice):
            if r in (1, 2):
                a |= 1 << x
            if r in (1, 3):
                b |= 1 << x
        if not idem_perp(rel, n2, a, b):
            return a, b
    return None


def _pullback_map(n: int, a: int, b: int, n2: int, u: int, v: int) -> PartialMap:
    """A map h: n2 → n with h⁻¹(a) = u and h⁻¹(b) = v."""
    both = a & b
    only_a = a & ~b
    only_b = b & ~a

    def pick(m: int) -> int:
        return (m & -m).bit_length() - 1

    table: list[int | None] = []
    for x in range(n2):
        in_u, in_v = bool(u >> x & 1), bool(v >> x & 1)
        if in_u and in_v:
            table.append(pick(both))
        elif in_u:
            table.append(pick(only_a))
        elif in_v:
            table.append(pick(only_b))
        else:
            table.append(None)
    return PartialMap(n2, n, table)


def validate_interference(rel: InterferenceRel, obj_bound: int) -> ValidationReport:
    """Check the restrictional axioms exhaustively on objects up to ``obj_bound``.

    For the maximal and minimal relations every object of size
    ``0..obj_bound`` is checked. A custom relation only has the objects it
    declares, and pre-composition is checked for maps between those.
    Returns the first violated axiom (in axiom order) with a witness.
    """
    if obj_bound > VALIDATION_CAP:
        raise CapacityError("exhaustive validation is capped at object size %d, asked for %d"
                            % (VALIDATION_CAP, obj_bound))
    if obj_bound < 0:
        raise ValueError("obj_bound must be nonnegative")
    if rel.kind == "custom":
        too_big = [n for n in rel.pairs if n > VALIDATION_CAP]
        if too_big:
            raise CapacityError("relation declares objects of size %s, above the cap %d"
                                % (too_big, VALIDATION_CAP))
        sizes = tuple(n for n in sorted(rel.pairs) if n <= obj_bound)
    else:
        sizes = tuple(range(obj_bound + 1))

    def fail(axiom: str, **witness: Any) -> ValidationReport:
        return ValidationReport(False, axiom, witness, sizes)

    for n in sizes:
        if not idem_perp(rel, n, (1 << n) - 1, 0):
            return fail("𝒪⊥.0", object_size=n, e=(1 << n) - 1, e_prime=0)
    for n in sizes:
        for a, b in _related(rel, n):
            if not idem_perp(rel, n, b, a):
                return fail("𝒪⊥.1", object_size=n, e=a, e_prime=b)
    for n in sizes:
        for a, b in _related(rel, n):
            if a == b and a != 0:
                return fail("𝒪⊥.2", object_size=n, e=a)
    for n in sizes:
        for a, b in _related(rel, n):
            for bit in _bits(a):
                if not idem_perp(rel, n, a ^ bit, b):
                    return fail("𝒪⊥.3", object_size=n, e=a, e_prime=b,
                                smaller=[a ^ bit, b])
            for bit in _bits(b):
                if not idem_perp(rel, n, a, b ^ bit):
                    return fail("𝒪⊥.3", object_size=n, e=a, e_prime=b,
                                smaller=[a, b ^ bit])
    # Pre-composition: the pullbacks of (a, b) along all h: n2 → n are exactly
    # the pairs whose region profile is contained in the profile of (a, b).
    # Count related pairs by profile and compare with (1 + #regions)^n2.
    counts: dict[int, list[int]] = {}
    for n2 in sizes:
        c = [0] * 8
        for u, v in _related(rel, n2):
            c[_profile(u, v)] += 1
        counts[n2] = c
    for n in sizes:
        seen: set[int] = set()
        for a, b in _related(rel, n):
            prof = _profile(a, b)
            if prof in seen:
                continue
            seen.add(prof)
            for n2 in sizes:
                have = sum(counts[n2][p] for p in range(8) if p & ~prof == 0)
                need = (1 + bin(prof).count("1")) ** n2
                if have != need:
                    missing = _missing_pullback(rel, n2, prof)
                    assert missing is not None
                    h = _pullback_map(n, a, b, n2, *missing)
                    return fail("𝒪⊥.4", object_size=n, e=a, e_prime=b, h=map_to_json(h),
                                pulled_back=list(missing))
    return ValidationReport(True, None, None, sizes)


def search_nonstrong(size: int) -> list[dict[str, Any]]:
    """Exhaustively look for non-strong joins among small custom relations.

    Enumerates every relation on a single object of ``size`` elements that
    satisfies the zero, symmetry, anti-reflexivity and downward-closure
    axioms, and for each one searches families of two restriction
    idempotents plus a third idempotent ``h`` for a join that is not
    disjoint from ``h`` although both members are. Returns one record per
    relation that admits such a witness, including whether the relation
    passes full validation.
    """
    if size > 3:
        raise CapacityError("relation enumeration is capped at size 3")
    full = (1 << size) - 1
    cand = sorted({(min(a, b), max(a, b)) for a in range(1, full + 1)
                   for b in _submasks(full ^ a) if b})
    out: list[dict[str, Any]] = []
    for chosen in range(1 << len(cand)):
        pairs = [(full, 0), (0, 0)] + [(m, 0) for m in range(1, full + 1)]
        pairs += [cand[i] for i in range(len(cand)) if chosen >> i & 1]
        rel = InterferenceRel.custom({size: pairs})
        partial = validate_interference(rel, size)
        if not partial.ok and partial.axiom != "𝒪⊥.4":
            continue
        trusted = rel.assume_valid()
        o = FinObj(size)
        for a, b in trusted.pairs[size]:
            for hm in range(full + 1):
                if not (idem_perp(trusted, size, a, hm) and idem_perp(trusted, size, b, hm)):
                    continue
                if not idem_perp(trusted, size, a | b, hm):
                    out.append({
                        "pairs": sorted(trusted.pairs[size]),
                        "family": [a, b], "h": hm,
                        "passes_validation": partial.ok,
                        "family_maps": [rest_idem_from_mask(o, a), rest_idem_from_mask(o, b)],
                    })
                    break
            else:
                continue
            break
    return out


def relation_from_json(doc: Any) -> InterferenceRel:
    """Parse ``{"object_size": n, "pairs": [[a, b], ...]}`` or a list of them."""
    docs = doc if isinstance(doc, list) else [doc]
    table: dict[int, list[tuple[int, int]]] = {}
    for d in docs:
        try:
            n = int(d["object_size"])
            pairs = [(int(a), int(b)) for a, b in d["pairs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError("malformed relation JSON: %s" % exc) from None
        table.setdefault(n, []).extend(pairs)
    return InterferenceRel.custom(table)


def relation_to_json(rel: InterferenceRel) -> list[dict[str, Any]]:
    if rel.kind != "custom":
        raise ValueError("only custom relations have an explicit JSON form")
    out = []
    for n in rel.sizes():
        seen = sorted({(min(a, b), max(a, b)) for a, b in rel.pairs[n]})
        out.append({"object_size": n, "pairs": [list(p) for p in seen]})
    return out
