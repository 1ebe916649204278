"""Reference implementations over plain dicts.

These share no code with the package: maps are ``{point: value}`` dicts and
every loop is computed as a least fixed point by naive Kleene iteration,
which is a different route from both the package's join formula and the
token-walking simulators in ``kleenewand.lawlab.oracle``.
"""

from kleenewand.finpar import PartialMap


def to_dict(f: PartialMap) -> dict:
    return {x: v for x, v in enumerate(f.table) if v is not None}


def from_dict(d: dict, dom, cod) -> PartialMap:
    return PartialMap(dom, cod, [d.get(x) for x in range(dom if isinstance(dom, int) else dom.size)])


def compose(f: dict, g: dict) -> dict:
    """Diagrammatic order: first f, then g."""
    return {x: g[y] for x, y in f.items() if y in g}


def restriction(f: dict) -> dict:
    return {x: x for x in f}


def leq(f: dict, g: dict) -> bool:
    return all(x in g and g[x] == y for x, y in f.items())


def join(*fs: dict) -> dict:
    out: dict = {}
    for f in fs:
        for x, y in f.items():
            assert x not in out, "join of overlapping maps"
            out[x] = y
    return out


def lfp(step, start=None) -> dict:
    h = {} if start is None else start
    while True:
        nxt = step(h)
        if nxt == h:
            return h
        h = nxt


def wand(f: dict, g: dict) -> dict:
    """Least h with h = g ⊔ f h."""
    return lfp(lambda h: {**g, **compose(f, h)})


def complement(e: dict, n: int) -> dict:
    return {x: x for x in range(n) if x not in e}


def star(f: dict, n: int) -> dict:
    """Least s with s = f̄ᶜ ⊔ f s."""
    stuck = complement(restriction(f), n)
    return lfp(lambda s: {**stuck, **compose(f, s)})


# -- matrices as dicts on tagged points --------------------------------------------
#
# A matrix ``A₁ + … + Aₘ → B₁ + … + Bₙ`` becomes a dict from (i, x) to (j, y).

def mat_to_dict(m) -> dict:
    out = {}
    for i, r in enumerate(m.entries):
        for j, e in enumerate(r):
            for x, y in to_dict(e).items():
                assert (i, x) not in out, "matrix is not row-disjoint"
                out[(i, x)] = (j, y)
    return out


def mat_from_dict(d: dict, dom, cod):
    from kleenewand.matext import Matrix

    entries = []
    for i, a in enumerate(dom.parts):
        row = []
        for j, b in enumerate(cod.parts):
            row.append(PartialMap(a, b, [d[(i, x)][1] if d.get((i, x), (None,))[0] == j
                                         else None for x in range(a.size)]))
        entries.append(row)
    return Matrix(dom, cod, entries)


def trace(g: dict, cut: int) -> dict:
    """Feedback through the first ``cut`` parts, as a least fixed point.

    ``w`` maps traced points to where they eventually leave the loop; the
    result re-indexes untraced parts by subtracting ``cut``.
    """
    def step(w):
        out = {}
        for (i, x), (j, y) in g.items():
            if i >= cut:
                continue
            if j >= cut:
                out[(i, x)] = (j, y)
            elif (j, y) in w:
                out[(i, x)] = w[(j, y)]
        return out

    w = lfp(step)
    res = {}
    for (i, x), (j, y) in g.items():
        if i < cut:
            continue
        tgt = (j, y) if j >= cut else w.get((j, y))
        if tgt is not None:
            res[(i - cut, x)] = (tgt[0] - cut, tgt[1])
    return res
