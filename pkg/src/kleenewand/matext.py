"""Row-disjoint matrices of partial maps.

Objects are finite lists of finite sets (read as their disjoint union) and a
map ``A₁+…+Aₙ → B₁+…+Bₘ`` is an ``n × m`` grid whose entry ``(i, j)`` is a
partial map ``Aᵢ → Bⱼ``. Every row must be pairwise disjoint under the
maximal relation: a point of ``Aᵢ`` is sent into at most one ``Bⱼ``.
Composition is matrix multiplication with the disjoint join as the sum.

All laws are stated on the flat grid. Block views (grouping consecutive
parts) are provided by :func:`block` and :func:`from_blocks`.

:func:`flatten` turns a matrix into one partial map between the total
carriers. It is used as an independent route when checking the matrix
operations.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

from . import kernels
from .errors import DisjointnessError, PreconditionError, ShapeError
from .finpar import FinObj, PartialMap, identity, map_from_json, map_to_json, zero
from .interference import MAXIMAL, join

UNDEF = kernels.UNDEF


class MatObj:
    """A finite list of finite objects; the empty list is the zero object."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[FinObj | int] = ()):
        object.__setattr__(self, "parts", tuple(p if isinstance(p, FinObj) else FinObj(p)
                                                for p in parts))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("MatObj is immutable")

    def __reduce__(self):
        return (MatObj, (self.parts,))

    def __len__(self) -> int:
        return len(self.parts)

    def __add__(self, other: MatObj) -> MatObj:
        return MatObj(self.parts + other.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatObj):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(tuple(p.size for p in self.parts))

    def sizes(self) -> list[int]:
        return [p.size for p in self.parts]

    def total(self) -> int:
        return sum(p.size for p in self.parts)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for p in self.parts:
            out.append(acc)
            acc += p.size
        return out

    def slice(self, start: int, stop: int) -> MatObj:
        return MatObj(self.parts[start:stop])

    def repeat(self, n: int) -> MatObj:
        return MatObj(self.parts * n)

    def __repr__(self) -> str:
        return "MatObj(%s)" % self.sizes()


def sum_objs(objs: Sequence[MatObj]) -> MatObj:
    out: tuple = ()
    for o in objs:
        out += o.parts
    return MatObj(out)


class Matrix:
    """A row-disjoint ``len(dom) × len(cod)`` grid of partial maps."""

    __slots__ = ("dom", "cod", "entries", "_hash")

    def __init__(self, dom: MatObj, cod: MatObj,
                 entries: Sequence[Sequence[PartialMap]]):
        rows = tuple(tuple(r) for r in entries)
        if len(rows) != len(dom):
            raise ShapeError("expected %d rows, got %d" % (len(dom), len(rows)), dom, cod)
        for i, row in enumerate(rows):
            if len(row) != len(cod):
                raise ShapeError("row %d has %d entries, expected %d" % (i, len(row), len(cod)),
                                 dom, cod)
            seen = 0
            for j, f in enumerate(row):
                if f.dom != dom.parts[i] or f.cod != cod.parts[j]:
                    raise ShapeError("entry (%d, %d) is %s→%s, expected %s→%s"
                                     % (i, j, f.dom, f.cod, dom.parts[i], cod.parts[j]),
                                     f, (dom.parts[i], cod.parts[j]))
                m = f.mask()
                if seen & m:
                    x = ((seen & m) & -(seen & m)).bit_length() - 1
                    raise DisjointnessError("row %d is not disjoint: entry %d overlaps an "
                                            "earlier entry at point %s"
                                            % (i, j, dom.parts[i].label(x)), point=x)
                seen |= m
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, dom: MatObj, cod: MatObj, rows: tuple) -> Matrix:
        self = object.__new__(cls)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (Matrix._raw, (self.dom, self.cod, self.entries))

    def __getitem__(self, ij: tuple[int, int]) -> PartialMap:
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.dom), len(self.cod)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.entries == other.entries)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.dom, self.cod, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __rshift__(self, other: Matrix) -> Matrix:
        return mat_compose(self, other)

    def __repr__(self) -> str:
        rows = "; ".join("[" + ", ".join(
            "{%s}" % ",".join("%d↦%d" % kv for kv in f.pairs().items()) for f in row) + "]"
            for row in self.entries)
        return "Matrix(%s→%s, %s)" % (self.dom.sizes(), self.cod.sizes(), rows)


# -- basic constructors ------------------------------------------------------

def mat_zero(dom: MatObj, cod: MatObj) -> Matrix:
    return Matrix._raw(dom, cod, tuple(tuple(zero(a, b) for b in cod.parts)
                                       for a in dom.parts))


def mat_identity(a: MatObj) -> Matrix:
    return Matrix._raw(a, a, tuple(tuple(identity(p) if i == j else zero(p, q)
                                         for j, q in enumerate(a.parts))
                                   for i, p in enumerate(a.parts)))


def single(f: PartialMap) -> Matrix:
    """The 1 × 1 matrix of a base map."""
    return Matrix._raw(MatObj([f.dom]), MatObj([f.cod]), ((f,),))


def diag(maps: Sequence[PartialMap]) -> Matrix:
    dom = MatObj([f.dom for f in maps])
    cod = MatObj([f.cod for f in maps])
    return Matrix._raw(dom, cod, tuple(tuple(f if i == j else zero(f.dom, cod.parts[j])
                                             for j in range(len(maps)))
                                       for i, f in enumerate(maps)))


def row(maps: Sequence[PartialMap]) -> Matrix:
    """A one-row matrix ``[f₁ … fₙ]`` out of a single object (checked disjoint)."""
    if not maps:
        raise PreconditionError("a row needs at least one entry to fix its domain")
    return Matrix(MatObj([maps[0].dom]), MatObj([f.cod for f in maps]), [list(maps)])


def column(maps: Sequence[PartialMap]) -> Matrix:
    """A one-column matrix (copairing) into a single object."""
    if not maps:
        raise PreconditionError("a column needs at least one entry to fix its codomain")
    return Matrix._raw(MatObj([f.dom for f in maps]), MatObj([maps[0].cod]),
                       tuple((f,) for f in maps))


# -- composition, restriction, order, join -----------------------------------

def _join_tables(tables: list[tuple], n: int) -> tuple:
    out = (UNDEF,) * n
    for t in tables:
        out, clash = kernels.union(out, t)
        if clash >= 0:
            raise DisjointnessError("entry sum overlaps at point %d" % clash, point=clash)
    return out


def mat_compose(f: Matrix, g: Matrix) -> Matrix:
    """Matrix product: entry (i, k) is the join over j of ``F(i,j) G(j,k)``."""
    if f.cod != g.dom:
        raise ShapeError("cannot compose: codomain %s does not match domain %s"
                         % (f.cod.sizes(), g.dom.sizes()), f.cod, g.dom)
    comp = kernels.compose
    rows = []
    for i, a in enumerate(f.dom.parts):
        frow = f.entries[i]
        live = [(j, frow[j].t) for j in range(len(frow)) if frow[j].mask()]
        out = []
        for k, c in enumerate(g.cod.parts):
            tables = [comp(ft, g.entries[j][k].t) for j, ft in live]
            out.append(PartialMap._raw(a, c, _join_tables(tables, a.size)))
        rows.append(tuple(out))
    return Matrix._raw(f.dom, g.cod, tuple(rows))


def mat_compose_all(first: Matrix, *rest: Matrix) -> Matrix:
    out = first
    for g in rest:
        out = mat_compose(out, g)
    return out


def mat_restriction(f: Matrix) -> Matrix:
    """Diagonal matrix of the row-wise joins of entry restrictions."""
    rows = []
    for i, a in enumerate(f.dom.parts):
        t = _join_tables([kernels.restrict(e.t) for e in f.entries[i]], a.size)
        rows.append(tuple(PartialMap._raw(a, a, t) if j == i else zero(a, b)
                          for j, b in enumerate(f.dom.parts)))
    return Matrix._raw(f.dom, f.dom, tuple(rows))


def mat_leq(f: Matrix, g: Matrix) -> bool:
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeError("the order compares parallel matrices", f, g)
    return mat_compose(mat_restriction(f), g) == f


def is_mat_total(f: Matrix) -> bool:
    return mat_restriction(f) == mat_identity(f.dom)


def perp_d_witness(f: Matrix, g: Matrix) -> tuple[int, int, int] | None:
    """First ``(i, j, k)`` with ``F(i,j)`` and ``G(i,k)`` overlapping, if any."""
    if f.dom != g.dom:
        raise ShapeError("decision disjointness compares maps out of one object", f.dom, g.dom)
    for i in range(len(f.dom)):
        for j, a in enumerate(f.entries[i]):
            ma = a.mask()
            if not ma:
                continue
            for k, b in enumerate(g.entries[i]):
                if ma & b.mask():
                    return i, j, k
    return None


def perp_d(f: Matrix, g: Matrix) -> bool:
    """Decision disjointness, decided entrywise on supports."""
    return perp_d_witness(f, g) is None


def mat_join_all(family: Sequence[Matrix], dom: MatObj | None = None,
                 cod: MatObj | None = None) -> Matrix:
    family = list(family)
    if not family:
        if dom is None or cod is None:
            raise PreconditionError("the join of an empty family needs dom and cod")
        return mat_zero(dom, cod)
    first = family[0]
    for m in family[1:]:
        if m.dom != first.dom or m.cod != first.cod:
            raise ShapeError("join needs parallel matrices", first, m)
    for a in range(len(family)):
        for b in range(a + 1, len(family)):
            w = perp_d_witness(family[a], family[b])
            if w is not None:
                raise DisjointnessError("join: members %d and %d overlap in row %d "
                                        "(entries %d and %d)" % (a, b, *w), pair=(a, b))
    rows = tuple(tuple(join(MAXIMAL, [m.entries[i][j] for m in family])
                       for j in range(len(first.cod)))
                 for i in range(len(first.dom)))
    return Matrix._raw(first.dom, first.cod, rows)


def mat_join(f: Matrix, g: Matrix) -> Matrix:
    """Entrywise join of two decision-disjoint matrices."""
    return mat_join_all([f, g])


# -- coproduct structure -------------------------------------------------------

def direct_sum(*ms: Matrix) -> Matrix:
    """Block-diagonal ``F₁ + … + Fₙ``."""
    dom = sum_objs([m.dom for m in ms])
    cod = sum_objs([m.cod for m in ms])
    rows = []
    col0 = 0
    for m in ms:
        for r in m.entries:
            i = len(rows)
            a = dom.parts[i]
            full = []
            for j, b in enumerate(cod.parts):
                if col0 <= j < col0 + len(m.cod):
                    full.append(r[j - col0])
                else:
                    full.append(zero(a, b))
            rows.append(tuple(full))
        col0 += len(m.cod)
    return Matrix._raw(dom, cod, tuple(rows))


def hstack(*ms: Matrix) -> Matrix:
    """Pairing ``[F₁ … Fₙ]`` into a sum; the pieces must be decision disjoint."""
    first = ms[0]
    for m in ms[1:]:
        if m.dom != first.dom:
            raise ShapeError("pairing needs a common domain", first.dom, m.dom)
    rows = [sum((m.entries[i] for m in ms), ()) for i in range(len(first.dom))]
    return Matrix(first.dom, sum_objs([m.cod for m in ms]), rows)


def vstack(*ms: Matrix) -> Matrix:
    """Copairing ``[F₁; …; Fₙ]`` out of a sum."""
    first = ms[0]
    for m in ms[1:]:
        if m.cod != first.cod:
            raise ShapeError("copairing needs a common codomain", first.cod, m.cod)
    rows = tuple(r for m in ms for r in m.entries)
    return Matrix._raw(sum_objs([m.dom for m in ms]), first.cod, rows)


def injection(objs: Sequence[MatObj], j: int) -> Matrix:
    """``ιⱼ: objs[j] → objs[0] + … + objs[-1]``."""
    if not 0 <= j < len(objs):
        raise IndexError("injection index %d out of range for %d summands" % (j, len(objs)))
    pieces = [mat_identity(o) if k == j else mat_zero(objs[j], o) for k, o in enumerate(objs)]
    total = sum_objs(objs)
    rows = tuple(sum((p.entries[i] for p in pieces), ()) for i in range(len(objs[j])))
    return Matrix._raw(objs[j], total, rows)


def quasi_projection(objs: Sequence[MatObj], j: int) -> Matrix:
    """``ι°ⱼ: objs[0] + … + objs[-1] → objs[j]``, zero off the ``j``-th summand."""
    if not 0 <= j < len(objs):
        raise IndexError("quasi-projection index %d out of range for %d summands"
                         % (j, len(objs)))
    return vstack(*[mat_identity(o) if k == j else mat_zero(o, objs[j])
                    for k, o in enumerate(objs)])


def codiagonal(a: MatObj, n: int) -> Matrix:
    """``∇: A + … + A → A`` (``n`` copies)."""
    if n < 1:
        raise PreconditionError("the codiagonal needs at least one copy")
    return vstack(*[mat_identity(a)] * n)


def symmetry(a: MatObj, b: MatObj) -> Matrix:
    """``σ: A + B → B + A``."""
    return vstack(injection([b, a], 1), injection([b, a], 0))


# -- block views ---------------------------------------------------------------

def block(f: Matrix, rows: tuple[int, int], cols: tuple[int, int]) -> Matrix:
    """The sub-grid on part ranges ``rows`` of the domain and ``cols`` of the codomain."""
    r0, r1 = rows
    c0, c1 = cols
    if not (0 <= r0 <= r1 <= len(f.dom) and 0 <= c0 <= c1 <= len(f.cod)):
        raise IndexError("block range out of bounds")
    return Matrix._raw(f.dom.slice(r0, r1), f.cod.slice(c0, c1),
                       tuple(r[c0:c1] for r in f.entries[r0:r1]))


def split2(f: Matrix, x_rows: int, x_cols: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """The four blocks of ``f`` cut after ``x_rows`` domain and ``x_cols`` codomain parts."""
    n, m = f.shape
    return (block(f, (0, x_rows), (0, x_cols)), block(f, (0, x_rows), (x_cols, m)),
            block(f, (x_rows, n), (0, x_cols)), block(f, (x_rows, n), (x_cols, m)))


def from_blocks(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a grid of blocks with matching objects."""
    row_objs = [r[0].dom for r in blocks]
    col_objs = [b.cod for b in blocks[0]]
    rows = []
    for bi, brow in enumerate(blocks):
        if len(brow) != len(col_objs):
            raise ShapeError("block row %d has the wrong number of blocks" % bi)
        for b, co in zip(brow, col_objs):
            if b.dom != row_objs[bi] or b.cod != co:
                raise ShapeError("block objects do not line up", b, (row_objs[bi], co))
        for i in range(len(row_objs[bi])):
            rows.append(sum((b.entries[i] for b in brow), ()))
    return Matrix(sum_objs(row_objs), sum_objs(col_objs), rows)


# -- decisions -------------------------------------------------------------------

def _check_blocks(f: Matrix, blocks: Sequence[int]) -> list[MatObj]:
    if any(b < 0 for b in blocks) or sum(blocks) != len(f.cod) or not blocks:
        raise PreconditionError("blocks %r do not partition the %d codomain parts"
                                % (list(blocks), len(f.cod)))
    out, start = [], 0
    for b in blocks:
        out.append(f.cod.slice(start, start + b))
        start += b
    return out


def decision_of(f: Matrix, blocks: Sequence[int]) -> Matrix:
    """``⟨F⟩: A → A + … + A`` for the codomain cut into consecutive ``blocks``.

    Copy ``b`` of ``A`` receives, on each part ``Aᵢ``, the join of the
    restrictions of the entries of row ``i`` that fall into block ``b``.
    """
    _check_blocks(f, blocks)
    a = f.dom
    p = len(a)
    k = len(blocks)
    starts = [sum(blocks[:b]) for b in range(k)]
    rows = []
    for i, ai in enumerate(a.parts):
        out = []
        for b in range(k):
            cols = range(starts[b], starts[b] + blocks[b])
            t = _join_tables([kernels.restrict(f.entries[i][j].t) for j in cols], ai.size)
            for i2, a2 in enumerate(a.parts):
                out.append(PartialMap._raw(ai, ai, t) if i2 == i else zero(ai, a2))
        rows.append(tuple(out))
    assert all(len(r) == p * k for r in rows)
    return Matrix._raw(a, a.repeat(k), tuple(rows))


def block_injections_sum(parts: Sequence[MatObj], total: MatObj) -> Matrix:
    """``ι₁ + … + ιₖ: B¹ + … + Bᵏ → B + … + B`` where ``B = B¹ + … + Bᵏ``."""
    return direct_sum(*[injection(list(parts), b) for b in range(len(parts))])


def decision_equations(f: Matrix, blocks: Sequence[int], d: Matrix | None = None
                       ) -> dict[str, tuple[Matrix, Matrix]]:
    """Both sides of the two defining equations of the decision of ``f``."""
    parts = _check_blocks(f, blocks)
    k = len(blocks)
    d = decision_of(f, blocks) if d is None else d
    d1 = (mat_restriction(f), mat_compose(d, codiagonal(f.dom, k)))
    d2 = (mat_compose(d, direct_sum(*[f] * k)),
          mat_compose(f, block_injections_sum(parts, f.cod)))
    return {"D.1": d1, "D.2": d2}


def is_decision(d: Matrix, n: int) -> bool:
    """Whether ``d: A → A + … + A`` (``n`` copies) is its own decision."""
    a = d.dom
    if d.cod != a.repeat(n):
        return False
    return decision_of(d, [len(a)] * n) == d


def decision_self_equations(d: Matrix, n: int) -> dict[str, tuple[Matrix, Matrix]]:
    a = d.dom
    copies = [a] * n
    d1 = (mat_restriction(d), mat_compose(d, codiagonal(a, n)))
    d2 = (mat_compose(d, direct_sum(*[d] * n)),
          mat_compose(d, direct_sum(*[injection(copies, j) for j in range(n)])))
    return {"d.1": d1, "d.2": d2}


def decision_inverse(d: Matrix, n: int) -> Matrix:
    """The restriction inverse ``d° = [d ι°₁; …; d ι°ₙ]`` of an ``n``-ary decision."""
    a = d.dom
    copies = [a] * n
    return vstack(*[mat_compose(d, quasi_projection(copies, j)) for j in range(n)])


def separating_decision_n(fs: Sequence[Matrix]) -> Matrix:
    """``⟨F₁ | … | Fₙ⟩ = [F̄₁ … F̄ₙ]``; the family must be pairwise decision disjoint."""
    if not fs:
        raise PreconditionError("a separating decision needs at least one map")
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            w = perp_d_witness(fs[i], fs[j])
            if w is not None:
                raise DisjointnessError("maps %d and %d are not decision disjoint: row %d, "
                                        "entries %d and %d overlap" % (i, j, *w), pair=(i, j))
    return hstack(*[mat_restriction(f) for f in fs])


def separating_decision(f: Matrix, g: Matrix) -> Matrix:
    """``⟨F | G⟩``, the binary separating decision."""
    return separating_decision_n([f, g])


# -- the flat view -----------------------------------------------------------------

def flatten(f: Matrix) -> PartialMap:
    """The single partial map between total carriers that ``f`` denotes."""
    doff, coff = f.dom.offsets(), f.cod.offsets()
    t = [UNDEF] * f.dom.total()
    for i, r in enumerate(f.entries):
        for j, e in enumerate(r):
            for x, y in enumerate(e.t):
                if y >= 0:
                    if t[doff[i] + x] >= 0:
                        raise DisjointnessError("row %d is not disjoint" % i)
                    t[doff[i] + x] = coff[j] + y
    return PartialMap._raw(FinObj(f.dom.total()), FinObj(f.cod.total()), tuple(t))


def unflatten(p: PartialMap, dom: MatObj, cod: MatObj) -> Matrix:
    """Inverse of :func:`flatten` for the given part structure."""
    if p.dom.size != dom.total() or p.cod.size != cod.total():
        raise ShapeError("flat map %s→%s does not fit %s→%s"
                         % (p.dom, p.cod, dom.sizes(), cod.sizes()), p, (dom, cod))
    doff, coff = dom.offsets(), cod.offsets()
    owner = []
    for j, c in enumerate(cod.parts):
        owner.extend([j] * c.size)
    rows = []
    for i, a in enumerate(dom.parts):
        tabs = [[UNDEF] * a.size for _ in cod.parts]
        for x in range(a.size):
            y = p.t[doff[i] + x]
            if y >= 0:
                j = owner[y]
                tabs[j][x] = y - coff[j]
        rows.append(tuple(PartialMap._raw(a, c, tuple(tabs[j]))
                          for j, c in enumerate(cod.parts)))
    return Matrix._raw(dom, cod, tuple(rows))


def is_restriction_iso(f: Matrix) -> bool:
    """Injective on its support, judged on the flat map."""
    vals = [y for y in flatten(f).t if y >= 0]
    return len(vals) == len(set(vals))


def restriction_inverse(f: Matrix) -> Matrix:
    """The partial inverse of an injective matrix, built on the flat map."""
    p = flatten(f)
    inv = [UNDEF] * p.cod.size
    for x, y in enumerate(p.t):
        if y >= 0:
            if inv[y] >= 0:
                raise PreconditionError("matrix is not injective on its support")
            inv[y] = x
    return unflatten(PartialMap._raw(p.cod, p.dom, tuple(inv)), f.cod, f.dom)


# -- JSON ---------------------------------------------------------------------------

def matrix_to_json(f: Matrix) -> dict[str, Any]:
    return {"dom": f.dom.sizes(), "cod": f.cod.sizes(),
            "entries": [[map_to_json(e) for e in r] for r in f.entries]}


def matrix_from_json(doc: dict[str, Any]) -> Matrix:
    try:
        dom = MatObj(int(n) for n in doc["dom"])
        cod = MatObj(int(n) for n in doc["cod"])
        entries = [[map_from_json(e) for e in r] for r in doc["entries"]]
    except (KeyError, TypeError) as exc:
        raise ValueError("malformed matrix JSON: %s" % exc) from None
    return Matrix(dom, cod, entries)
