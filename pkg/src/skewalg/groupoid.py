"""Finite groupoids given by explicit composition tables.

A groupoid is stored as ordered object and morphism lists together with
source/target/identity/inverse maps and a composition table defined exactly
on the composable pairs (src(g) == tgt(h) for the product g*h, meaning
"h first, then g").  Identity morphisms are explicit in memory and named
"id:<object>" when synthesised from an instance file.
"""

from __future__ import annotations

from dataclasses import dataclass


class GroupoidError(Exception):
    pass


class UnknownObject(GroupoidError):
    pass


class UnknownMorphism(GroupoidError):
    pass


class CompositionUndefined(GroupoidError):
    pass


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class GroupoidReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set:
        return {v.code for v in self.violations}


@dataclass(frozen=True)
class ComponentPartition:
    """Partition of the objects under "some morphism connects them"."""

    classes: tuple
    transversal: tuple


class Groupoid:
    """A finite groupoid.  Immutable after construction; validate separately."""

    def __init__(self, objects, morphisms, src, tgt, identity, compose, inverse):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.identity = dict(identity)
        self.compose = dict(compose)
        self.inverse = dict(inverse)
        if len(set(self.objects)) != len(self.objects):
            raise GroupoidError("duplicate object names")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise GroupoidError("duplicate morphism names")

    # -- basic queries --------------------------------------------------

    def check_object(self, e) -> None:
        if e not in self.identity:
            raise UnknownObject("unknown object %r" % (e,))

    def is_identity(self, g) -> bool:
        return self.identity.get(self.src.get(g)) == g and self.src[g] == self.tgt[g]

    def is_composable(self, g, h) -> bool:
        return self.src[g] == self.tgt[h]

    def mul(self, g, h):
        """The product g*h ("h first"); defined iff src(g) == tgt(h)."""
        try:
            return self.compose[(g, h)]
        except KeyError:
            raise CompositionUndefined("product %r * %r undefined" % (g, h)) from None

    def inv(self, g):
        try:
            return self.inverse[g]
        except KeyError:
            raise UnknownMorphism("no inverse recorded for %r" % (g,)) from None

    def composable_pairs(self):
        for g in self.morphisms:
            for h in self.morphisms:
                if self.src[g] == self.tgt[h]:
                    yield g, h

    # -- spec operations -------------------------------------------------

    def hom_set(self, e, f) -> tuple:
        """All morphisms from e to f, in morphism input order."""
        self.check_object(e)
        self.check_object(f)
        return tuple(g for g in self.morphisms if self.src[g] == e and self.tgt[g] == f)

    def isotropy_group(self, e) -> "Groupoid":
        """The group of arrows e -> e, as a one-object groupoid."""
        self.check_object(e)
        keep = set(self.hom_set(e, e))
        return Groupoid(
            (e,),
            tuple(g for g in self.morphisms if g in keep),
            {g: e for g in keep},
            {g: e for g in keep},
            {e: self.identity[e]},
            {(g, h): v for (g, h), v in self.compose.items() if g in keep and h in keep},
            {g: self.inverse[g] for g in keep if g in self.inverse},
        )

    def connected_components(self) -> ComponentPartition:
        reach = {e: {e} for e in self.objects}
        for g in self.morphisms:
            reach[self.src[g]].add(self.tgt[g])
            reach[self.tgt[g]].add(self.src[g])
        # closure by repeated merging (object counts are tiny)
        changed = True
        while changed:
            changed = False
            for e in self.objects:
                merged = set(reach[e])
                for f in list(reach[e]):
                    merged |= reach[f]
                if merged != reach[e]:
                    reach[e] = merged
                    changed = True
        seen = set()
        classes = []
        for e in self.objects:
            if e in seen:
                continue
            cls = tuple(f for f in self.objects if f in reach[e])
            seen |= set(cls)
            classes.append(cls)
        return ComponentPartition(tuple(classes), tuple(c[0] for c in classes))

    def full_subgroupoid(self, objs) -> "Groupoid":
        """Subgroupoid on objs keeping every morphism with both endpoints in objs."""
        objs = tuple(objs)
        for e in objs:
            self.check_object(e)
        keepo = set(objs)
        keep = {g for g in self.morphisms if self.src[g] in keepo and self.tgt[g] in keepo}
        return Groupoid(
            tuple(e for e in self.objects if e in keepo),
            tuple(g for g in self.morphisms if g in keep),
            {g: self.src[g] for g in keep},
            {g: self.tgt[g] for g in keep},
            {e: self.identity[e] for e in objs},
            {(g, h): v for (g, h), v in self.compose.items() if g in keep and h in keep},
            {g: v for g, v in self.inverse.items() if g in keep},
        )


def build_groupoid(objects, arrows, compose_triples, inverse_pairs) -> Groupoid:
    """Assemble a Groupoid from instance-file style tables.

    `arrows` lists the non-identity morphisms as (name, src, tgt); identity
    morphisms are synthesised as "id:<object>" and ordered before the listed
    arrows (object order first, then input order).  Composition entries whose
    result is forced by an identity law are filled in automatically.
    """
    objects = tuple(objects)
    idname = {e: "id:%s" % e for e in objects}
    names = [idname[e] for e in objects]
    src = {idname[e]: e for e in objects}
    tgt = {idname[e]: e for e in objects}
    for name, s, t in arrows:
        if name in src:
            raise GroupoidError("duplicate morphism name %r" % (name,))
        if s not in idname or t not in idname:
            raise UnknownObject("arrow %r has unknown endpoint" % (name,))
        names.append(name)
        src[name] = s
        tgt[name] = t
    compose = {}
    for g in names:
        compose[(idname[tgt[g]], g)] = g
        compose[(g, idname[src[g]])] = g
    for g, h, gh in compose_triples:
        for m in (g, h, gh):
            if m not in src:
                raise UnknownMorphism("composition table mentions unknown %r" % (m,))
        compose[(g, h)] = gh
    inverse = {idname[e]: idname[e] for e in objects}
    for g, h in inverse_pairs:
        if g not in src or h not in src:
            raise UnknownMorphism("inverse table mentions unknown morphism")
        inverse[g] = h
        inverse[h] = g
    return Groupoid(objects, names, src, tgt, {e: idname[e] for e in objects},
                    compose, inverse)


def validate_groupoid(g: Groupoid) -> GroupoidReport:
    """Check every groupoid law; returns a report instead of raising."""
    bad = []

    def flag(code, msg):
        bad.append(Violation(code, msg))

    for e in g.objects:
        i = g.identity.get(e)
        if i is None or i not in g.src:
            flag("BadIdentity", "object %r has no identity morphism" % (e,))
        elif g.src[i] != e or g.tgt[i] != e:
            flag("BadIdentity", "identity of %r has wrong endpoints" % (e,))
    for m in g.morphisms:
        if m not in g.src or m not in g.tgt:
            flag("BadComposition", "morphism %r lacks endpoints" % (m,))
            continue
        if g.src[m] not in g.identity or g.tgt[m] not in g.identity:
            flag("BadComposition", "morphism %r touches unknown object" % (m,))
    if bad:
        return GroupoidReport(tuple(bad))

    morph = set(g.morphisms)
    for (a, b), c in g.compose.items():
        if a not in morph or b not in morph or c not in morph:
            flag("BadComposition", "table entry (%r,%r)->%r uses unknown morphism" % (a, b, c))
            continue
        if g.src[a] != g.tgt[b]:
            flag("BadComposition", "product %r*%r defined but not composable" % (a, b))
        elif g.tgt[c] != g.tgt[a] or g.src[c] != g.src[b]:
            flag("BadComposition", "product %r*%r has wrong endpoints" % (a, b))
    for a in g.morphisms:
        for b in g.morphisms:
            if g.src[a] == g.tgt[b] and (a, b) not in g.compose:
                flag("BadComposition", "composable pair (%r,%r) missing from table" % (a, b))
    if any(v.code == "BadComposition" for v in bad):
        return GroupoidReport(tuple(bad))

    for m in g.morphisms:
        i_t, i_s = g.identity[g.tgt[m]], g.identity[g.src[m]]
        if g.compose.get((i_t, m)) != m or g.compose.get((m, i_s)) != m:
            flag("BadIdentity", "identity law fails at %r" % (m,))
    for m in g.morphisms:
        n = g.inverse.get(m)
        if n is None:
            flag("MissingInverse", "morphism %r has no inverse" % (m,))
            continue
        if g.src[n] != g.tgt[m] or g.tgt[n] != g.src[m]:
            flag("MissingInverse", "inverse of %r has wrong endpoints" % (m,))
            continue
        if (g.compose.get((m, n)) != g.identity[g.tgt[m]]
                or g.compose.get((n, m)) != g.identity[g.src[m]]):
            flag("MissingInverse", "%r and %r do not compose to identities" % (m, n))
    for a in g.morphisms:
        for b in g.morphisms:
            if g.src[a] != g.tgt[b]:
                continue
            ab = g.compose[(a, b)]
            for c in g.morphisms:
                if g.src[b] != g.tgt[c]:
                    continue
                if g.compose[(ab, c)] != g.compose[(a, g.compose[(b, c)])]:
                    flag("NonAssociative",
                         "(%r*%r)*%r != %r*(%r*%r)" % (a, b, c, a, b, c))
    return GroupoidReport(tuple(bad))
