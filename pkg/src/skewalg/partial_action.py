"""Unital partial actions of a finite groupoid on a finite-dimensional algebra.

Per morphism g the data is a central idempotent 1_g (generating the ideal
A_g = A*1_g) and a full dim x dim matrix which must restrict to a ring
isomorphism A_{g^-1} -> A_g and annihilate the complement A*(1 - 1_{g^-1}).
With that convention the stored matrix computes a |-> alpha_g(a * 1_{g^-1})
on the whole algebra, which is exactly the summand appearing in trace maps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .groupoid import Groupoid
from .linalg import Echelon, Matrix, echelon, vadd


class ActionError(Exception):
    pass


class DecompositionRequired(ActionError):
    pass


class OverlappingObjects(ActionError):
    pass


class NotUnitalAction(ActionError):
    pass


@dataclass(frozen=True)
class ActionViolation:
    code: str
    message: str


@dataclass(frozen=True)
class ActionReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set:
        return {v.code for v in self.violations}


class PartialAction:

    def __init__(self, groupoid: Groupoid, algebra: Algebra, idems: dict, maps: dict):
        self.groupoid = groupoid
        self.algebra = algebra
        self.idems = {}
        self.maps = {}
        for g in groupoid.morphisms:
            if g not in idems:
                raise ActionError("no domain idempotent for morphism %r" % (g,))
            self.idems[g] = algebra.element(idems[g])
        for g in groupoid.morphisms:
            m = maps.get(g)
            if m is None:
                if not groupoid.is_identity(g):
                    raise ActionError("no map given for non-identity morphism %r" % (g,))
                m = algebra.right_mul_matrix(self.idems[g])
            elif not isinstance(m, Matrix):
                m = Matrix(algebra.field, m)
            if m.nrows != algebra.dim or m.ncols != algebra.dim:
                raise ActionError("map for %r is not %d x %d" % (g, algebra.dim, algebra.dim))
            self.maps[g] = m
        self._ideals: dict = {}
        self._restricted: dict = {}
        self._report: ActionReport | None = None

    # -- accessors ---------------------------------------------------------

    def idem(self, g) -> tuple:
        return self.idems[g]

    def obj_idem(self, e) -> tuple:
        return self.idems[self.groupoid.identity[e]]

    def matrix(self, g) -> Matrix:
        return self.maps[g]

    def alpha(self, g, v) -> tuple:
        """alpha_g(v * 1_{g^-1}), i.e. the stored full matrix applied to v."""
        return self.maps[g].apply(v)

    def ideal(self, g) -> Echelon:
        """Canonical basis of A_g = A * 1_g."""
        if g not in self._ideals:
            self._ideals[g] = self.algebra.ideal_basis(self.idems[g]).basis
        return self._ideals[g]

    def restricted_matrix(self, g) -> Matrix:
        """The matrix of alpha_g from ideal(g^-1)-coordinates to ideal(g)-coordinates."""
        if g not in self._restricted:
            src = self.ideal(self.groupoid.inv(g))
            dst = self.ideal(g)
            cols = [dst.coords(self.alpha(g, u)) for u in src.rows]
            self._restricted[g] = Matrix.from_cols(self.algebra.field, cols)
        return self._restricted[g]

    # -- spec operations -----------------------------------------------------

    def is_global(self) -> bool:
        """True iff every domain ideal is the full object ideal A_{t(g)}."""
        return all(self.idem(g) == self.obj_idem(self.groupoid.tgt[g])
                   for g in self.groupoid.morphisms)

    def has_object_decomposition(self) -> bool:
        return self.algebra.check_object_decomposition(
            [self.obj_idem(e) for e in self.groupoid.objects])

    def require_decomposition(self) -> None:
        if not self.has_object_decomposition():
            raise DecompositionRequired(
                "object idempotents are not orthogonal with sum 1")

    def validate(self) -> ActionReport:
        if self._report is None:
            self._report = validate_partial_action(self)
        return self._report

    def ensure_valid(self) -> None:
        report = self.validate()
        if not report.ok:
            raise ActionError("invalid partial action: %s" %
                              "; ".join(v.message for v in report.violations))

    def restrict_to_component(self, class_objects) -> "PartialAction":
        """The action of the full subgroupoid on A_[e] = (+)_{f in [e]} A_f."""
        self.require_decomposition()
        class_objects = tuple(class_objects)
        classes = {frozenset(c) for c in self.groupoid.connected_components().classes}
        if frozenset(class_objects) not in classes:
            raise ActionError("%r is not a connected component class" % (class_objects,))
        u = self.algebra.zero()
        for f in class_objects:
            u = vadd(u, self.obj_idem(f))
        return self._restrict(self.groupoid.full_subgroupoid(class_objects), u)

    def isotropy_action(self, e) -> "PartialAction":
        """Restriction to the isotropy group of e acting on A_e."""
        self.groupoid.check_object(e)
        return self._restrict(self.groupoid.isotropy_group(e), self.obj_idem(e))

    def _restrict(self, sub_groupoid: Groupoid, u) -> "PartialAction":
        sub, basis = self.algebra.subalgebra(u)
        idems = {g: basis.coords(self.idem(g)) for g in sub_groupoid.morphisms}
        maps = {}
        for g in sub_groupoid.morphisms:
            cols = [basis.coords(self.alpha(g, row)) for row in basis.rows]
            maps[g] = Matrix.from_cols(sub.field, cols)
        return PartialAction(sub_groupoid, sub, idems, maps)


def glue_components(parts) -> PartialAction:
    """Partial action of the disjoint-union groupoid on the direct-sum algebra."""
    parts = list(parts)
    if not parts:
        raise ActionError("nothing to glue")
    if len(parts) == 1:
        return parts[0]
    field = parts[0].algebra.field
    if any(p.algebra.field != field for p in parts):
        raise ActionError("glued parts must share one field")
    seen_obj: set = set()
    seen_mor: set = set()
    for p in parts:
        if seen_obj & set(p.groupoid.objects) or seen_mor & set(p.groupoid.morphisms):
            raise OverlappingObjects("glued parts share object or morphism names")
        seen_obj |= set(p.groupoid.objects)
        seen_mor |= set(p.groupoid.morphisms)

    objects, morphisms, names = [], [], []
    src, tgt, identity, compose, inverse = {}, {}, {}, {}, {}
    for p in parts:
        g = p.groupoid
        objects.extend(g.objects)
        morphisms.extend(g.morphisms)
        src.update(g.src)
        tgt.update(g.tgt)
        identity.update(g.identity)
        compose.update(g.compose)
        inverse.update(g.inverse)
        names.extend(p.algebra.basis_names)
    union = Groupoid(objects, morphisms, src, tgt, identity, compose, inverse)

    dims = [p.algebra.dim for p in parts]
    total = sum(dims)
    offsets = []
    at = 0
    for d in dims:
        offsets.append(at)
        at += d
    zero = field.zero
    structure = [[[zero] * total for _ in range(total)] for _ in range(total)]
    unit = [zero] * total
    for p, off in zip(parts, offsets):
        a = p.algebra
        for i in range(a.dim):
            unit[off + i] = a.unit[i]
            for j in range(a.dim):
                for k in range(a.dim):
                    structure[off + i][off + j][off + k] = a.structure[i][j][k]
    if len(set(names)) != total:
        names = ["p%d.%s" % (i, n) for i, p in enumerate(parts)
                 for n in p.algebra.basis_names]
    big = Algebra(field, structure, unit, names)

    def pad_vec(v, off):
        out = [zero] * total
        for i, x in enumerate(v):
            out[off + i] = x
        return tuple(out)

    idems, maps = {}, {}
    for p, off in zip(parts, offsets):
        d = p.algebra.dim
        for g in p.groupoid.morphisms:
            idems[g] = pad_vec(p.idem(g), off)
            m = p.matrix(g)
            block = [[zero] * total for _ in range(total)]
            for i in range(d):
                for j in range(d):
                    block[off + i][off + j] = m.data[i][j]
            maps[g] = Matrix(field, block)
    return PartialAction(union, big, idems, maps)


def validate_partial_action(pa: PartialAction) -> ActionReport:
    """Check the partial-action axioms; subspace steps use canonical bases."""
    g_oid = pa.groupoid
    alg = pa.algebra
    bad = []

    def flag(code, msg):
        bad.append(ActionViolation(code, msg))

    usable = set()
    for g in g_oid.morphisms:
        if not alg.is_central_idempotent(pa.idem(g)):
            flag("NotIdempotentDomain", "1_%s is not a central idempotent" % (g,))
            continue
        # A_g must sit inside the object ideal A_{t(g)}
        e_t = pa.obj_idem(g_oid.tgt[g])
        if alg.is_central_idempotent(e_t):
            if alg.multiply(pa.idem(g), e_t) != pa.idem(g):
                flag("NotIdempotentDomain",
                     "A_%s is not contained in the ideal of its target object" % (g,))
                continue
        usable.add(g)
    if usable != set(g_oid.morphisms):
        return ActionReport(tuple(bad))

    one = alg.unit
    iso_ok = set()
    for g in g_oid.morphisms:
        m = pa.matrix(g)
        ginv = g_oid.inverse.get(g)
        if ginv is None or ginv not in pa.idems:
            flag("NotRingIso", "morphism %r has no usable inverse" % (g,))
            continue
        comp = alg.right_mul_matrix(
            tuple(a - b for a, b in zip(one, pa.idem(ginv))))
        if not (m * comp).is_zero():
            flag("NotRingIso",
                 "map of %s does not annihilate the complement of its domain ideal" % (g,))
            continue
        src = pa.ideal(ginv)
        dst = pa.ideal(g)
        images = [pa.alpha(g, u) for u in src.rows]
        img_span = echelon(alg.field, images, alg.dim)
        if img_span.dim != src.dim or img_span != dst:
            flag("NotRingIso", "map of %s is not a bijection onto its ideal" % (g,))
            continue
        hom = all(pa.alpha(g, alg.multiply(u, v)) ==
                  alg.multiply(pa.alpha(g, u), pa.alpha(g, v))
                  for u in src.rows for v in src.rows)
        if not hom:
            flag("NotRingIso", "map of %s is not multiplicative on its ideal" % (g,))
            continue
        if src.dim and pa.alpha(g, pa.idem(ginv)) != pa.idem(g):
            flag("NotRingIso", "map of %s does not send 1_%s to 1_%s" % (g, ginv, g))
            continue
        iso_ok.add(g)

    for e in g_oid.objects:
        i = g_oid.identity[e]
        ideal = pa.ideal(i)
        if any(pa.alpha(i, u) != u for u in ideal.rows):
            flag("IdentityAxiom", "identity map at %r is not the identity on A_%r" % (e, e))

    if iso_ok != set(g_oid.morphisms):
        return ActionReport(tuple(bad))

    for g, h in g_oid.composable_pairs():
        gh = g_oid.compose[(g, h)]
        ginv, hinv = g_oid.inv(g), g_oid.inv(h)
        # central idempotents: A*a intersect A*b equals A*(a*b)
        meet = alg.multiply(pa.idem(ginv), pa.idem(h))
        meet_basis = alg.ideal_basis(meet).basis
        inv_h = pa.restricted_matrix(h).inverse()
        h_ideal, hinv_ideal = pa.ideal(h), pa.ideal(hinv)
        pulled = [hinv_ideal.combine(inv_h.apply(h_ideal.coords(d)))
                  for d in meet_basis.rows]
        target = pa.ideal(g_oid.inv(gh))
        if not all(target.contains(x) for x in pulled):
            flag("AxiomII",
                 "preimage of A_%s^-1 /\\ A_%s under alpha_%s leaves A_(%s)^-1" %
                 (g, h, h, gh))
            continue
        for x in pulled:
            if pa.alpha(g, pa.alpha(h, x)) != pa.alpha(gh, x):
                flag("AxiomIII", "alpha_%s alpha_%s != alpha_%s on the overlap" % (g, h, gh))
                break
    return ActionReport(tuple(bad))


# -- invariant suite ----------------------------------------------------------

def check_inverse_consistency(pa: PartialAction) -> bool:
    """The restriction of alpha_{g^-1} inverts the restriction of alpha_g."""
    for g in pa.groupoid.morphisms:
        ginv = pa.groupoid.inv(g)
        a = pa.restricted_matrix(g)
        b = pa.restricted_matrix(ginv)
        n = pa.ideal(ginv).dim
        if b * a != Matrix.identity(pa.algebra.field, n):
            return False
    return True


def check_intersection_transport(pa: PartialAction) -> bool:
    """alpha_g maps A_{g^-1} /\\ A_h onto A_g /\\ A_{gh}, as subspaces."""
    alg = pa.algebra
    for g, h in pa.groupoid.composable_pairs():
        gh = pa.groupoid.compose[(g, h)]
        ginv = pa.groupoid.inv(g)
        lhs_gen = alg.multiply(pa.idem(ginv), pa.idem(h))
        rhs_gen = alg.multiply(pa.idem(g), pa.idem(gh))
        lhs = echelon(alg.field,
                      [pa.alpha(g, d) for d in alg.ideal_basis(lhs_gen).basis.rows],
                      alg.dim)
        if lhs != alg.ideal_basis(rhs_gen).basis:
            return False
    return True


def check_composite_restriction(pa: PartialAction) -> bool:
    """alpha_g(alpha_h(a 1_{h^-1}) 1_{g^-1}) == alpha_{gh}(a 1_{(gh)^-1}) 1_g, all a."""
    alg = pa.algebra
    for g, h in pa.groupoid.composable_pairs():
        gh = pa.groupoid.compose[(g, h)]
        lhs = pa.matrix(g) * pa.matrix(h)
        rhs = alg.right_mul_matrix(pa.idem(g)) * pa.matrix(gh)
        if lhs != rhs:
            return False
    return True


def invariant_suite(pa: PartialAction) -> dict:
    """The post-validation identities every valid unital partial action obeys."""
    return {
        "inverse_mutual": check_inverse_consistency(pa),
        "intersection_transport": check_intersection_transport(pa),
        "composite_restriction": check_composite_restriction(pa),
    }
