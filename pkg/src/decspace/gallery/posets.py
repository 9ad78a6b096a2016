"""Nerves of finite posets: discrete levels of weakly increasing chains."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotAPoset
from ..groupoids import FiniteGroupoid, GroupoidFunctor
from ..simplicial import TruncSimpGrpd


@dataclass(frozen=True)
class PosetSpec:
    """Elements plus order relations; the reflexive-transitive closure must be
    antisymmetric."""

    elements: tuple
    relations: frozenset

    @classmethod
    def from_relations(cls, elements, pairs) -> "PosetSpec":
        return cls(tuple(elements), frozenset(pairs))

    @classmethod
    def from_file(cls, path) -> "PosetSpec":
        """UTF-8 lines ``a < b``; blank lines and ``#`` comments ignored."""
        elements: list = []
        pairs = set()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "<" not in line:
                    raise NotAPoset(f"cannot parse line {line!r}")
                a, _, b = line.partition("<")
                a, b = a.strip(), b.strip()
                for x in (a, b):
                    if x not in elements:
                        elements.append(x)
                pairs.add((a, b))
        return cls(tuple(elements), frozenset(pairs))

    def closure(self) -> frozenset:
        leq = {(a, a) for a in self.elements}
        leq.update(self.relations)
        changed = True
        while changed:
            changed = False
            for (a, b) in list(leq):
                for (c, d) in list(leq):
                    if b == c and (a, d) not in leq:
                        leq.add((a, d))
                        changed = True
        for (a, b) in leq:
            if a != b and (b, a) in leq:
                raise NotAPoset(f"antisymmetry fails on {a!r}, {b!r}")
        return frozenset(leq)


def chain_poset(n: int) -> PosetSpec:
    return PosetSpec.from_relations(range(n + 1), {(i, i + 1) for i in range(n)})


def divisibility_poset(values) -> PosetSpec:
    values = tuple(values)
    return PosetSpec.from_relations(
        values, {(a, b) for a in values for b in values if b % a == 0}
    )


def nerve_of_poset(spec: PosetSpec, N: int) -> TruncSimpGrpd:
    """X_n is the discrete groupoid of weakly increasing (n+1)-chains."""
    leq = spec.closure()
    order = {e: i for i, e in enumerate(spec.elements)}

    def chains(n):
        out = [(e,) for e in spec.elements]
        for _ in range(n):
            out = [c + (e,) for c in out for e in spec.elements if (c[-1], e) in leq]
        return out

    levels = []
    for n in range(N + 1):
        objs = sorted(chains(n), key=lambda c: tuple(order[e] for e in c))
        levels.append(
            FiniteGroupoid(
                f"N(poset)_{n}",
                objs,
                lambda x, y: ((),) if x == y else (),
                lambda g, f: (),
                lambda d: (),
                lambda x: (),
                grade=lambda x: 0,
                canon_key=lambda x: x,
            )
        )

    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda c, i=i: c[:i] + c[i + 1 :],
                lambda x, y, d: (),
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda c, i=i: c[: i + 1] + c[i:],
                lambda x, y, d: (),
                name=f"s_{i}",
            )

    return TruncSimpGrpd(
        "poset-nerve",
        N,
        tuple(levels),
        faces,
        degens,
        0,
        key_renderer=lambda k: f"{k[0]}<={k[1]}" if len(k) == 2 else str(k),
    )
