"""Trace maps, invariant subrings, and the separability decision.

The extension A in A*G is separable exactly when, on every connected
component, some central element a satisfies t_i(a) = 1_i for all objects i
(t_i sums alpha_g(a 1_{g^-1}) over arrows with target e_i).  The decision
solves that affine system over center coordinates; a positive answer yields
an explicit separability idempotent in the tensor square, which is verified
against the definition.  `oracle_separability` instead solves the defining
conditions m(x) = 1 and bx = xb directly in tensor coordinates, giving an
independent check of the criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (AffineSolutionSet, Echelon, Matrix, echelon, kernel,
                     solve_affine, vadd)
from .partial_action import PartialAction
from .skew_ring import SkewRing, TensorOverA, build_skew_ring, tensor_over


class SeparabilityError(Exception):
    pass


class EmptyHomSet(SeparabilityError):
    pass


class NotGlobal(SeparabilityError):
    pass


class NotConnected(SeparabilityError):
    pass


class WitnessInvalid(SeparabilityError):
    pass


# -- trace maps -----------------------------------------------------------------

@dataclass(frozen=True)
class TraceMap:
    """A trace map as a full matrix on algebra coefficient vectors."""

    source: str | None        # None for maps summed over all sources
    target: str | None        # None for the total trace
    matrix: Matrix

    def __call__(self, v):
        return self.matrix.apply(v)


def trace_between(pa: PartialAction, i, j) -> TraceMap:
    """t_{i,j}: a |-> sum of alpha_g(a 1_{g^-1}) over arrows g from i to j."""
    hom = pa.groupoid.hom_set(i, j)
    if not hom:
        raise EmptyHomSet("no arrows from %r to %r (different components)" % (i, j))
    m = Matrix.zeros(pa.algebra.field, pa.algebra.dim, pa.algebra.dim)
    for g in hom:
        m = m + pa.matrix(g)
    return TraceMap(i, j, m)


def trace_into(pa: PartialAction, j) -> TraceMap:
    """t_j = sum over sources i of t_{i,j} (arrows with target j)."""
    pa.groupoid.check_object(j)
    m = Matrix.zeros(pa.algebra.field, pa.algebra.dim, pa.algebra.dim)
    for g in pa.groupoid.morphisms:
        if pa.groupoid.tgt[g] == j:
            m = m + pa.matrix(g)
    return TraceMap(None, j, m)


def trace_total(pa: PartialAction) -> TraceMap:
    """The full trace: sum of alpha_g(a 1_{g^-1}) over every morphism."""
    m = Matrix.zeros(pa.algebra.field, pa.algebra.dim, pa.algebra.dim)
    for g in pa.groupoid.morphisms:
        m = m + pa.matrix(g)
    return TraceMap(None, None, m)


def invariant_subring(pa: PartialAction, i, j) -> Echelon:
    """Basis of {a : alpha_g(a 1_{g^-1}) == a 1_g for all arrows g from i to j}."""
    alg = pa.algebra
    rows = []
    for g in pa.groupoid.hom_set(i, j):
        delta = pa.matrix(g) - alg.right_mul_matrix(pa.idem(g))
        rows.extend(delta.data)
    if not rows:
        return echelon(alg.field, [alg.basis_vector(k) for k in range(alg.dim)],
                       alg.dim)
    return echelon(alg.field, kernel(Matrix(alg.field, rows, ncols=alg.dim)), alg.dim)


# -- verdicts and certificates -----------------------------------------------------

@dataclass(frozen=True)
class SeparabilityCertificate:
    """A verified separability idempotent for A inside A*G."""

    witness: tuple                       # central element a with t_i(a) = 1_i
    witness_family: AffineSolutionSet    # all witnesses, in algebra coordinates
    tensor: TensorOverA
    element: tuple                       # quotient coordinates of the idempotent
    summands: tuple                      # canonical (g, coeffs, h, coeffs) list
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class ComponentVerdict:
    objects: tuple
    separable: bool
    witness_family: AffineSolutionSet    # in the full algebra's coordinates
    solved_objects: tuple


@dataclass(frozen=True)
class SeparabilityVerdict:
    separable: bool
    per_component: tuple
    witness: tuple | None
    certificate: SeparabilityCertificate | None


@dataclass(frozen=True)
class OracleResult:
    separable: bool
    tensor: TensorOverA
    solutions: AffineSolutionSet         # in tensor quotient coordinates


def _component_family(pa: PartialAction, cls, objects_to_solve) -> tuple:
    """Solve t_f(a) = 1_f (f in objects_to_solve) over the component's center.

    Returns (family, basis) where `family` is canonical in the component
    subalgebra's coordinates and `basis` embeds those into the full algebra.
    """
    sub = pa.restrict_to_component(cls)
    u = pa.algebra.zero()
    for f in cls:
        u = vadd(u, pa.obj_idem(f))
    basis = pa.algebra.ideal_basis(u).basis
    alg = sub.algebra
    center = alg.center_basis()
    cmat = Matrix.from_cols(alg.field, list(center)) if center else \
        Matrix(alg.field, [[] for _ in range(alg.dim)], ncols=0)
    rows: list = []
    rhs: list = []
    for f in objects_to_solve:
        t = trace_into(sub, f).matrix * cmat
        rows.extend(t.data)
        rhs.extend(sub.obj_idem(f))
    sol = solve_affine(Matrix(alg.field, rows, ncols=len(center)), rhs)
    if sol.is_empty:
        return AffineSolutionSet(None, ()), basis
    part = cmat.apply(sol.particular)
    kern = [cmat.apply(k) for k in sol.kernel_basis]
    ke = echelon(alg.field, kern, alg.dim)
    return AffineSolutionSet(ke.reduce(part), ke.rows), basis


def _embed_family(family: AffineSolutionSet, basis: Echelon, field, dim) -> AffineSolutionSet:
    if family.is_empty:
        return family
    part = basis.combine(family.particular)
    kern = [basis.combine(k) for k in family.kernel_basis]
    ke = echelon(field, kern, dim)
    return AffineSolutionSet(ke.reduce(part), ke.rows)


def _decide(pa: PartialAction, transversal_only: bool) -> SeparabilityVerdict:
    pa.ensure_valid()
    pa.require_decomposition()
    alg = pa.algebra
    partition = pa.groupoid.connected_components()
    per = []
    witness = alg.zero()
    kern: list = []
    separable = True
    for cls in partition.classes:
        solve_at = (cls[0],) if transversal_only else cls
        family, basis = _component_family(pa, cls, solve_at)
        full = _embed_family(family, basis, alg.field, alg.dim)
        per.append(ComponentVerdict(cls, not full.is_empty, full, solve_at))
        if full.is_empty:
            separable = False
        else:
            witness = vadd(witness, full.particular)
            kern.extend(full.kernel_basis)
    if not separable:
        return SeparabilityVerdict(False, tuple(per), None, None)
    if transversal_only:
        # solving at one object of a global connected action already forces
        # the whole system; re-check so the certificate precondition is explicit
        for e in pa.groupoid.objects:
            if trace_into(pa, e).matrix.apply(witness) != pa.obj_idem(e):
                raise SeparabilityError(
                    "single-object witness fails the full trace system")
    ke = echelon(alg.field, kern, alg.dim)
    witness = ke.reduce(witness)  # canonical representative of the witness family
    family = AffineSolutionSet(witness, ke.rows)
    cert = build_certificate(pa, witness, family=family)
    return SeparabilityVerdict(True, tuple(per), witness, cert)


def decide_separability(pa: PartialAction) -> SeparabilityVerdict:
    """Component-by-component trace criterion, with a verified certificate."""
    return _decide(pa, transversal_only=False)


def decide_global(pa: PartialAction) -> SeparabilityVerdict:
    """Global-action decision: solve only at each component's transversal object."""
    if not pa.is_global():
        raise NotGlobal("action is not global")
    return _decide(pa, transversal_only=True)


def build_certificate(pa: PartialAction, a, ring: SkewRing | None = None,
                      tensor: TensorOverA | None = None,
                      family: AffineSolutionSet | None = None) -> SeparabilityCertificate:
    """The separability idempotent attached to a central witness a.

    x = sum over morphisms g of  alpha_g(a 1_{g^-1}) d_g  (x)  1_{g^-1} d_{g^-1},
    projected to the canonical tensor representative and verified against the
    definition (multiplication gives the unit; commutes with every basis element).
    """
    pa.ensure_valid()
    pa.require_decomposition()
    alg = pa.algebra
    a = alg.element(a)
    if not alg.commutes_with_all(a):
        raise WitnessInvalid("witness is not central")
    for e in pa.groupoid.objects:
        if trace_into(pa, e).matrix.apply(a) != pa.obj_idem(e):
            raise WitnessInvalid("witness fails t(a) = 1 at object %r" % (e,))
    if ring is None:
        ring = build_skew_ring(pa)
    if tensor is None:
        tensor = tensor_over(ring, ring)
    ambient: dict = {}
    zero = alg.field.zero
    for g in pa.groupoid.morphisms:
        ginv = pa.groupoid.inv(g)
        left = ring.element({g: pa.alpha(g, a)})
        right = ring.element({ginv: pa.idem(ginv)})
        for c, v in tensor.pure_tensor(left, right).items():
            val = ambient.get(c, zero) + v
            if val == zero:
                ambient.pop(c, None)
            else:
                ambient[c] = val
    q = tensor.project(ambient)
    lifted = tensor.lift(q)
    unit_coords = ring.coords_of(ring.unit())
    checks = {
        "witness_central": True,
        "witness_traces": True,
        "multiplies_to_unit": tensor.multiply_ambient(lifted) == unit_coords,
        "commutes_with_basis": all(
            tensor.project(tensor.left_apply_ambient(ring.basis_coords(p), lifted)) ==
            tensor.project(tensor.right_apply_ambient(ring.basis_coords(p), lifted))
            for p in range(ring.dim)),
    }
    if family is None:
        family = AffineSolutionSet(a, ())
    return SeparabilityCertificate(a, family, tensor, q, tensor.summands(q), checks)


def oracle_separability(pa: PartialAction, ring: SkewRing | None = None) -> OracleResult:
    """Directly solve m(x) = 1 and bx = xb in the tensor square of the ring.

    This is the definition of a separability element, so it is an oracle for
    the trace criterion: the two must agree on every instance.
    """
    pa.ensure_valid()
    pa.require_decomposition()
    if ring is None:
        ring = build_skew_ring(pa)
    tensor = tensor_over(ring, ring)
    field = ring.field
    rows: list = []
    rhs: list = []
    mm = tensor.mult_matrix()
    rows.extend(mm.data)
    rhs.extend(ring.coords_of(ring.unit()))
    for p in range(ring.dim):
        b = ring.basis_coords(p)
        delta = tensor.left_matrix(b) - tensor.right_matrix(b)
        rows.extend(delta.data)
        rhs.extend([field.zero] * tensor.dim)
    sol = solve_affine(Matrix(field, rows, ncols=tensor.dim), rhs)
    return OracleResult(not sol.is_empty, tensor, sol)


def normal_form_coefficients(pa: PartialAction, tensor: TensorOverA, qcoords) -> dict:
    """Rewrite a tensor element as sum of a_{g,h} d_g (x) 1_h d_{h}.

    Every pure tensor u d_g (x) w d_h equals (u alpha_g(w 1_{g^-1})) d_g (x) 1_h d_h
    in the quotient; accumulating those coefficients gives the (g, h) |-> a_{g,h}
    normal form of the element.
    """
    alg = pa.algebra
    out: dict = {}
    for c, v in tensor.lift(qcoords).items():
        li, ri = divmod(c, tensor.n_right)
        g, u = tensor.ring.basis[tensor.left_positions[li]]
        h, w = tensor.ring.basis[tensor.right_positions[ri]]
        coeff = alg.multiply(u, pa.alpha(g, w))
        coeff = tuple(v * x for x in coeff)
        key = (g, h)
        out[key] = vadd(out[key], coeff) if key in out else coeff
    return out


def extract_witness(pa: PartialAction, tensor: TensorOverA, qcoords) -> tuple:
    """The central witness sum of a_{e,e} read off a separability element."""
    coeffs = normal_form_coefficients(pa, tensor, qcoords)
    a = pa.algebra.zero()
    for e in pa.groupoid.objects:
        i = pa.groupoid.identity[e]
        if (i, i) in coeffs:
            a = vadd(a, coeffs[(i, i)])
    return a


def check_sufficient_condition(pa: PartialAction, k) -> bool:
    """Solvability at one object k plus arrows carrying 1_{g_j} = 1_j everywhere.

    Sufficient for separability, not necessary: a partial domain can make the
    arrow condition fail on instances that are nevertheless separable.
    """
    pa.ensure_valid()
    pa.require_decomposition()
    partition = pa.groupoid.connected_components()
    if len(partition.classes) != 1:
        raise NotConnected("sufficient condition applies to connected instances")
    pa.groupoid.check_object(k)
    family, _ = _component_family(pa, partition.classes[0], (k,))
    if family.is_empty:
        return False
    for j in pa.groupoid.objects:
        if not any(pa.idem(g) == pa.obj_idem(j) for g in pa.groupoid.hom_set(k, j)):
            return False
    return True


# -- global actions: isotropy transport --------------------------------------------

@dataclass(frozen=True)
class TransportResult:
    obj: str
    witness: tuple            # element of C(A_i) with t_{i,i}(witness) = 1_i
    arrows: dict              # object -> chosen arrow from obj to it
    checks: dict


def isotropy_witness_transport(pa: PartialAction, class_objects, witness) -> TransportResult:
    """Push a component witness to a single-object witness at the transversal.

    For a global connected action with witness b = sum b_k, the element
    a = sum alpha_{g_k^-1}(b_k) (g_k the first arrow from the transversal to
    e_k) satisfies t_{i,i}(a) = 1_i, certifying the isotropy-group extension.
    """
    if not pa.is_global():
        raise NotGlobal("isotropy transport needs a global action")
    pa.ensure_valid()
    pa.require_decomposition()
    cls = tuple(class_objects)
    i = cls[0]
    alg = pa.algebra
    b = alg.element(witness)
    if trace_into(pa, i).matrix.apply(b) != pa.obj_idem(i):
        raise WitnessInvalid("witness fails t(b) = 1 at the transversal object")
    arrows = {}
    a = alg.zero()
    for kobj in cls:
        hom = pa.groupoid.hom_set(i, kobj)
        if not hom:
            raise EmptyHomSet("no arrow from %r to %r" % (i, kobj))
        g = hom[0]
        arrows[kobj] = g
        bk = alg.multiply(b, pa.obj_idem(kobj))
        a = vadd(a, pa.alpha(pa.groupoid.inv(g), bk))
    checks = {
        "witness_central": alg.commutes_with_all(a),
        "single_object_trace": trace_between(pa, i, i).matrix.apply(a) == pa.obj_idem(i),
    }
    return TransportResult(i, a, arrows, checks)


@dataclass(frozen=True)
class IsotropyIso:
    arrow: str
    source_object: str
    target_object: str
    source_ring: SkewRing
    target_ring: SkewRing
    matrix: Matrix
    checks: dict


def isotropy_transport_psi(pa: PartialAction, arrow) -> IsotropyIso:
    """The isomorphism a d_g |-> alpha_l(a) d_{l g l^-1} between isotropy rings.

    For a global action and an arrow l: e_i -> e_j this conjugation maps
    A_i * G(e_i) isomorphically onto A_j * G(e_j); the matrix is verified to
    be bijective, multiplicative on basis pairs, and unit-preserving.
    """
    if not pa.is_global():
        raise NotGlobal("isotropy conjugation needs a global action")
    pa.ensure_valid()
    pa.require_decomposition()
    g_oid = pa.groupoid
    if arrow not in g_oid.src:
        raise SeparabilityError("unknown arrow %r" % (arrow,))
    e_i, e_j = g_oid.src[arrow], g_oid.tgt[arrow]
    src_act = pa.isotropy_action(e_i)
    dst_act = pa.isotropy_action(e_j)
    src_ring = build_skew_ring(src_act)
    dst_ring = build_skew_ring(dst_act)
    src_basis = pa.algebra.ideal_basis(pa.obj_idem(e_i)).basis
    dst_basis = pa.algebra.ideal_basis(pa.obj_idem(e_j)).basis
    linv = g_oid.inv(arrow)
    cols = []
    for g, u_local in src_ring.basis:
        ambient = src_basis.combine(u_local)
        moved = pa.alpha(arrow, ambient)
        conj = g_oid.compose[(g_oid.compose[(arrow, g)], linv)]
        img = dst_ring.element({conj: dst_basis.coords(moved)})
        cols.append(dst_ring.coords_of(img))
    m = Matrix.from_cols(dst_ring.field, cols)
    mult_ok = True
    for p in range(src_ring.dim):
        for q in range(src_ring.dim):
            lhs = m.apply(src_ring.product_coords(p, q))
            rhs = dst_ring.mul_coords(m.apply(src_ring.basis_coords(p)),
                                      m.apply(src_ring.basis_coords(q)))
            if lhs != rhs:
                mult_ok = False
    checks = {
        "bijective": m.rank() == src_ring.dim == dst_ring.dim,
        "multiplicative": mult_ok,
        "unit_to_unit": m.apply(src_ring.coords_of(src_ring.unit())) ==
                        dst_ring.coords_of(dst_ring.unit()),
    }
    return IsotropyIso(arrow, e_i, e_j, src_ring, dst_ring, m, checks)


# -- invariant suite ------------------------------------------------------------

def trace_invariant_suite(pa: PartialAction) -> dict:
    """Matrix-level identities the trace maps of a valid action must satisfy."""
    alg = pa.algebra
    g_oid = pa.groupoid
    partition = g_oid.connected_components()
    restricted_to_source = True
    image_in_target = True
    image_invariant = True
    bimodule_linear = True
    sum_decomposition = True
    trace_translation = True
    for cls in partition.classes:
        for i in cls:
            for j in cls:
                t = trace_between(pa, i, j).matrix
                if t * alg.right_mul_matrix(pa.obj_idem(i)) != t:
                    restricted_to_source = False
                target_ideal = pa.ideal(g_oid.identity[j])
                if not all(target_ideal.contains(t.col(c)) for c in range(alg.dim)):
                    image_in_target = False
                for h in g_oid.hom_set(j, j):
                    if pa.matrix(h) * t != alg.right_mul_matrix(pa.idem(h)) * t:
                        image_invariant = False
                for x in invariant_subring(pa, i, j).rows:
                    lx, rx = alg.left_mul_matrix(x), alg.right_mul_matrix(x)
                    if t * lx != lx * t or t * rx != rx * t:
                        bimodule_linear = False
    total = trace_total(pa).matrix
    acc = Matrix.zeros(alg.field, alg.dim, alg.dim)
    for j in g_oid.objects:
        acc = acc + trace_into(pa, j).matrix
    if acc != total:
        sum_decomposition = False
    for g in g_oid.morphisms:
        i, j = g_oid.src[g], g_oid.tgt[g]
        ti = trace_into(pa, i).matrix
        tj = trace_into(pa, j).matrix
        if pa.matrix(g) * ti != alg.right_mul_matrix(pa.idem(g)) * tj:
            trace_translation = False
    return {
        "trace_restricts_to_source_ideal": restricted_to_source,
        "trace_image_in_target_ideal": image_in_target,
        "trace_image_isotropy_invariant": image_invariant,
        "trace_invariant_bimodule_linear": bimodule_linear,
        "total_trace_is_sum_of_object_traces": sum_decomposition,
        "trace_translation_along_arrows": trace_translation,
    }
