"""Fat nerves of finite category presentations.

Level k is the groupoid of strings of k composable arrows, with commuting
ladders of isomorphisms as morphisms.  Meant for small categories (groups,
posets, handmade examples); the bigger families ship specialized strict
skeleta instead.
"""

from __future__ import annotations

from ..errors import InvalidCategory
from ..groupoids import FiniteGroupoid, GroupoidFunctor
from ..simplicial import TruncSimpGrpd


class FinCat:
    """Finite 1-category presentation.

    ``hom[(x, y)]`` lists arrow ids, ``compose[(g, f)]`` gives g . f, and
    ``identities[x]`` the identity arrow.  ``validate`` checks totality,
    associativity and unit laws by enumeration.
    """

    def __init__(self, name, objects, hom, compose, identities):
        self.name = name
        self.objects = tuple(objects)
        self.hom = {k: tuple(v) for k, v in hom.items()}
        self.compose = dict(compose)
        self.identities = dict(identities)
        self._endpoints = {}
        for (x, y), arrows in self.hom.items():
            for f in arrows:
                if f in self._endpoints:
                    raise InvalidCategory(f"arrow id {f!r} used twice")
                self._endpoints[f] = (x, y)

    def source(self, f):
        return self._endpoints[f][0]

    def target(self, f):
        return self._endpoints[f][1]

    def arrows(self):
        return tuple(self._endpoints)

    def validate(self) -> None:
        for x in self.objects:
            e = self.identities.get(x)
            if e is None or self._endpoints.get(e) != (x, x):
                raise InvalidCategory(f"missing identity at {x!r}")
        for g in self.arrows():
            for f in self.arrows():
                if self.source(g) != self.target(f):
                    continue
                h = self.compose.get((g, f))
                if h is None or self._endpoints[h] != (self.source(f), self.target(g)):
                    raise InvalidCategory(f"composition undefined for {g!r} after {f!r}")
        for f in self.arrows():
            x, y = self._endpoints[f]
            if self.compose[(f, self.identities[x])] != f or self.compose[(self.identities[y], f)] != f:
                raise InvalidCategory(f"unit law fails at {f!r}")
        for h in self.arrows():
            for g in self.arrows():
                if self.source(h) != self.target(g):
                    continue
                for f in self.arrows():
                    if self.source(g) != self.target(f):
                        continue
                    if self.compose[(self.compose[(h, g)], f)] != self.compose[(h, self.compose[(g, f)])]:
                        raise InvalidCategory("associativity fails")

    def isos(self):
        """Arrow ids that are invertible, with their inverses."""
        out = {}
        for f in self.arrows():
            x, y = self._endpoints[f]
            for g in self.hom.get((y, x), ()):
                if (
                    self.compose[(g, f)] == self.identities[x]
                    and self.compose[(f, g)] == self.identities[y]
                ):
                    out[f] = g
                    break
        return out


def group_category(name, elements, mul, unit) -> FinCat:
    """One-object category with arrow set a finite group."""
    hom = {("*", "*"): tuple(elements)}
    compose = {(g, f): mul(g, f) for g in elements for f in elements}
    return FinCat(name, ("*",), hom, compose, {"*": unit})


def poset_category(spec) -> FinCat:
    leq = spec.closure()
    hom = {}
    for (a, b) in leq:
        hom.setdefault((a, b), []).append((a, b))
    compose = {}
    for (a, b) in leq:
        for (c, d) in leq:
            if b == c:
                compose[((c, d), (a, b))] = (a, d)
    identities = {a: (a, a) for a in spec.elements}
    return FinCat("poset-cat", spec.elements, hom, compose, identities)


def fat_nerve(cat: FinCat, N: int) -> TruncSimpGrpd:
    """Strings of composable arrows with componentwise-iso ladder morphisms."""
    cat.validate()
    isos = cat.isos()
    iso_by_pair: dict = {}
    for f in isos:
        iso_by_pair.setdefault((cat.source(f), cat.target(f)), []).append(f)

    # object iso classes of the category, for bucketing string objects
    parent = {x: x for x in cat.objects}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for (x, y), fs in iso_by_pair.items():
        if fs and find(x) != find(y):
            parent[find(x)] = find(y)
    obj_class = {x: find(x) for x in cat.objects}

    def strings(k):
        out = [((x,), ()) for x in cat.objects]
        for _ in range(k):
            out = [
                (objs + (cat.target(f),), arrows + (f,))
                for (objs, arrows) in out
                for f in cat.arrows()
                if cat.source(f) == objs[-1]
            ]
        return out

    def hom(s, t):
        (xs, fs), (ys, gs) = s, t
        k = len(xs) - 1
        results = []

        def rec(j, phis):
            if j > k:
                results.append(tuple(phis))
                return
            for phi in iso_by_pair.get((xs[j], ys[j]), ()):
                if j > 0:
                    if cat.compose[(phi, fs[j - 1])] != cat.compose[(gs[j - 1], phis[-1])]:
                        continue
                rec(j + 1, phis + [phi])

        rec(0, [])
        return tuple(results)

    levels = []
    for k in range(N + 1):
        levels.append(
            FiniteGroupoid(
                f"{cat.name}-nerve_{k}",
                strings(k),
                hom,
                lambda g, f: tuple(cat.compose[(a, b)] for a, b in zip(g, f)),
                lambda d: tuple(isos[a] for a in d),
                lambda s: tuple(cat.identities[x] for x in s[0]),
                grade=lambda s: 0,
                bucket_key=lambda s: tuple(obj_class[x] for x in s[0]),
            )
        )

    def face_omap(n, i, s):
        objs, arrows = s
        if i == 0:
            return (objs[1:], arrows[1:])
        if i == n:
            return (objs[:-1], arrows[:-1])
        merged = cat.compose[(arrows[i], arrows[i - 1])]
        return (objs[:i] + objs[i + 1 :], arrows[: i - 1] + (merged,) + arrows[i + 1 :])

    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda s, n=n, i=i: face_omap(n, i, s),
                lambda x, y, d, i=i: d[:i] + d[i + 1 :],
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda s, i=i: (
                    s[0][: i + 1] + s[0][i:],
                    s[1][:i] + (cat.identities[s[0][i]],) + s[1][i:],
                ),
                lambda x, y, d, i=i: d[: i + 1] + d[i:],
                name=f"s_{i}",
            )
    return TruncSimpGrpd(f"fatnerve({cat.name})", N, tuple(levels), faces, degens, 0)
