"""Infinitesimal models, their axioms, and the associated Lie algebras.

An infinitesimal model is pointwise data (V, R, T) plus a list of auxiliary
tensors K (always containing the symplectic form, optionally a cotorsion
structure tensor): a curvature-like map R: V ^ V -> End(V), a torsion-like
map T: V -> End(V), subject to the algebraic axioms below.  Curvature
endomorphisms R_XY act on the tensor algebra as derivations -- on a mixed
tensor this means A applied to each output slot minus A inserted into each
input slot:

    (A.P)(X1..Xs) = A(P(X1..Xs)) - sum_k P(X1.., A Xk, ..Xs)

with the obvious sign bookkeeping per slot kind.  The axioms are (1) T and
R antisymmetric in their vector arguments, (2) R_XY annihilates T, R and
every K as a derivation, (3) the first and second Bianchi identities in
torsion form:

    cyclic(R_XY Z + T_{T_X Y} Z) = 0,       cyclic(R_{T_X Y, Z}) = 0.

The Nomizu construction builds the transitive Lie algebra g0 = V + h0,
where h0 is the exact annihilator of all model data inside End(V), with
brackets [A,B] = AB - BA, [A,X] = AX and [X,Y] = -T_X Y + R_XY.  The
transvection algebra replaces h0 by the Lie closure of the curvature
endomorphisms; it is always contained in h0 for a valid model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import linalg
from .linalg import is_zero_scalar
from .reporting import Check, Report
from .symplectic import COV, CON, SymplecticSpace, Tensor


class ModelError(ValueError):
    """Structural failure while building algebras from a model."""


@dataclass(frozen=True)
class InfinitesimalModel:
    """Pointwise model data over a symplectic vector space.

    `curvature` is a (1,3)-tensor with slot order (X, Y, Z, output) and
    `torsion` a (1,2)-tensor with slot order (X, Y, output); `aux` lists
    the auxiliary tensors, the first of which is conventionally the
    symplectic form as a (0,2)-tensor.
    """

    space: SymplecticSpace
    curvature: Tensor
    torsion: Tensor
    aux: tuple[Tensor, ...]

    def __post_init__(self):
        if self.curvature.valence != (COV, COV, COV, CON):
            raise ValueError("curvature must be a (1,3)-tensor")
        if self.torsion.valence != (COV, COV, CON):
            raise ValueError("torsion must be a (1,2)-tensor")
        for t in (self.curvature, self.torsion, *self.aux):
            if t.dim != self.space.dim:
                raise ValueError("model tensors must share the space dimension")


def standard_omega_tensor(space: SymplecticSpace) -> Tensor:
    return Tensor.build(space.dim, (COV, COV),
                        lambda i, j: space.omega[i][j], space=space)


def trivial_model(n: int) -> InfinitesimalModel:
    """Zero curvature and torsion over the standard space, aux = (omega,)."""
    space = SymplecticSpace(n)
    return InfinitesimalModel(
        space=space,
        curvature=Tensor.zeros(space.dim, (COV, COV, COV, CON), space=space),
        torsion=Tensor.zeros(space.dim, (COV, COV, CON), space=space),
        aux=(standard_omega_tensor(space),),
    )


# -- derivation action ---------------------------------------------------------

def derivation_action(endo, t: Tensor) -> Tensor:
    """Action of an endomorphism (matrix, output index first) on a tensor."""
    d = t.dim

    def entry(*idx):
        total = Fraction(0)
        for slot, kind in enumerate(t.valence):
            for m in range(d):
                src = list(idx)
                src[slot] = m
                value = t[tuple(src)]
                if is_zero_scalar(value):
                    continue
                if kind == CON:
                    coeff = endo[idx[slot]][m]
                else:
                    coeff = -endo[m][idx[slot]]
                if is_zero_scalar(coeff):
                    continue
                total = total + coeff * value
        return total

    return Tensor.build(d, t.valence, entry, space=t.space)


def curvature_endomorphism(r: Tensor, i: int, j: int) -> list[list]:
    """R_{e_i e_j} as a matrix (row = output index, column = argument)."""
    d = r.dim
    return [[r[i, j, k, l] for k in range(d)] for l in range(d)]


def torsion_vector(t: Tensor, i: int, j: int) -> list:
    return [t[i, j, k] for k in range(t.dim)]


# -- model axioms ----------------------------------------------------------------

def check_model_axioms(model: InfinitesimalModel) -> Report:
    """Exact per-axiom verification; failures carry the first bad basis triple."""
    d = model.space.dim
    r, t = model.curvature, model.torsion
    checks = []

    bad = t.first_symmetry_violation(0, 1, anti=True)
    checks.append(Check("torsion_antisymmetry", bad is None,
                        None if bad is None else _idx_witness(bad)))

    bad = r.first_symmetry_violation(0, 1, anti=True)
    checks.append(Check("curvature_antisymmetry", bad is None,
                        None if bad is None else _idx_witness(bad)))

    endos = {(i, j): curvature_endomorphism(r, i, j)
             for i in range(d) for j in range(i + 1, d)}

    def derivation_check(name: str, target: Tensor):
        for (i, j), endo in endos.items():
            acted = derivation_action(endo, target)
            hit = acted.first_nonzero()
            if hit is not None:
                checks.append(Check(name, False,
                                    f"R(e{i + 1},e{j + 1}) acting at "
                                    f"{_idx_witness(hit[0])} gives {hit[1]}"))
                return
        checks.append(Check(name, True, None))

    derivation_check("curvature_derivation_on_torsion", t)
    derivation_check("curvature_derivation_on_curvature", r)

    # first Bianchi with torsion: cyclic(R_XY Z + T_{T_X Y} Z) = 0.
    # Given the two antisymmetry axioms the cyclic sum is an alternating
    # trilinear form, so unordered index triples cover all cases.
    first_bad = None
    for i, j, k in itertools.combinations_with_replacement(range(d), 3):
        for l in range(d):
            total = Fraction(0)
            for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                total += r[x, y, z, l]
                for m in range(d):
                    if t[x, y, m] != 0:
                        total += t[x, y, m] * t[m, z, l]
            if total != 0:
                first_bad = (i, j, k, l)
                break
        if first_bad:
            break
    checks.append(Check("first_bianchi", first_bad is None,
                        None if first_bad is None else _idx_witness(first_bad)))

    # second Bianchi consequence: cyclic R_{T_X Y, Z} = 0 as endomorphisms
    second_bad = None
    for i, j, k in itertools.combinations_with_replacement(range(d), 3):
        for w in range(d):
            for l in range(d):
                total = Fraction(0)
                for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                    for m in range(d):
                        if t[x, y, m] != 0:
                            total += t[x, y, m] * r[m, z, w, l]
                if total != 0:
                    second_bad = (i, j, k, w, l)
                    break
            if second_bad:
                break
        if second_bad:
            break
    checks.append(Check("second_bianchi", second_bad is None,
                        None if second_bad is None else _idx_witness(second_bad)))

    for pos, aux in enumerate(model.aux):
        name = f"curvature_derivation_on_aux{pos + 1}"
        failed = None
        for (i, j), endo in endos.items():
            acted = derivation_action(endo, aux)
            hit = acted.first_nonzero()
            if hit is not None:
                failed = (f"R(e{i + 1},e{j + 1}) acting at "
                          f"{_idx_witness(hit[0])} gives {hit[1]}")
                break
        checks.append(Check(name, failed is None, failed))

    return Report(title="infinitesimal model axioms", checks=checks)


def _idx_witness(idx) -> str:
    return "(" + ",".join(str(i + 1) for i in idx) + ")"


# -- conversion between connection pictures ----------------------------------------

def _structure_endo(s: Tensor, i: int) -> list[list]:
    """S_{e_i} as a matrix (row = output, column = argument)."""
    d = s.dim
    return [[s[i, m, l] for m in range(d)] for l in range(d)]


def model_from_pair(r: Tensor, t: Tensor, s: Tensor) -> tuple[Tensor, Tensor]:
    """Curvature and torsion of the connection shifted by the structure tensor.

        T'_X Y = T_X Y - (S_X Y - S_Y X)
        R'_XY  = R_XY + [S_X, S_Y] - S_{S_X Y - S_Y X}
    """
    if t.first_symmetry_violation(0, 1, anti=True) is not None:
        raise ValueError("torsion input must be antisymmetric")
    if r.first_symmetry_violation(0, 1, anti=True) is not None:
        raise ValueError("curvature input must be antisymmetric in (1,2)")
    d = s.dim
    new_t = Tensor.build(d, (COV, COV, CON),
                         lambda i, j, k: t[i, j, k] - (s[i, j, k] - s[j, i, k]),
                         space=t.space)

    endos = [_structure_endo(s, i) for i in range(d)]

    def curvature_entry(i, j, k, l):
        total = r[i, j, k, l]
        for m in range(d):
            total += endos[i][l][m] * endos[j][m][k] - endos[j][l][m] * endos[i][m][k]
        for m in range(d):
            diff = s[i, j, m] - s[j, i, m]
            if diff != 0:
                total -= diff * s[m, k, l]
        return total

    new_r = Tensor.build(d, (COV, COV, COV, CON), curvature_entry, space=r.space)
    return new_r, new_t


def pair_from_model(r_tilde: Tensor, t_tilde: Tensor, s: Tensor) -> tuple[Tensor, Tensor]:
    """Inverse of `model_from_pair` (recovers the base curvature and torsion)."""
    d = s.dim
    t = Tensor.build(d, (COV, COV, CON),
                     lambda i, j, k: t_tilde[i, j, k] + (s[i, j, k] - s[j, i, k]),
                     space=t_tilde.space)
    endos = [_structure_endo(s, i) for i in range(d)]

    def curvature_entry(i, j, k, l):
        total = r_tilde[i, j, k, l]
        for m in range(d):
            total -= endos[i][l][m] * endos[j][m][k] - endos[j][l][m] * endos[i][m][k]
        for m in range(d):
            diff = s[i, j, m] - s[j, i, m]
            if diff != 0:
                total += diff * s[m, k, l]
        return total

    r = Tensor.build(d, (COV, COV, COV, CON), curvature_entry, space=r_tilde.space)
    return r, t


# -- model isomorphism ---------------------------------------------------------------

def push_tensor(f: list[list], t: Tensor, f_inv: list[list] | None = None) -> Tensor:
    """Push-forward along the invertible matrix f (columns act on vectors)."""
    d = t.dim
    if f_inv is None:
        f_inv = linalg.inverse(f)

    def entry(*idx):
        total = Fraction(0)
        ranges = [range(d)] * len(idx)
        for src in itertools.product(*ranges):
            value = t[src]
            if is_zero_scalar(value):
                continue
            coeff = Fraction(1)
            dead = False
            for slot, kind in enumerate(t.valence):
                factor = (f[idx[slot]][src[slot]] if kind == CON
                          else f_inv[src[slot]][idx[slot]])
                if is_zero_scalar(factor):
                    dead = True
                    break
                coeff = coeff * factor
            if not dead:
                total = total + coeff * value
        return total

    return Tensor.build(d, t.valence, entry, space=t.space)


def verify_model_isomorphism(f: list[list], source: InfinitesimalModel,
                             target: InfinitesimalModel) -> Report:
    """Exact push-forward equality of all model data along f."""
    if source.space.dim != target.space.dim:
        raise ValueError("models have different dimensions")
    if len(source.aux) != len(target.aux):
        raise ValueError("models carry different numbers of auxiliary tensors")
    try:
        f_inv = linalg.inverse(f)
    except ValueError:
        raise ValueError("the linear map is singular") from None

    checks = []

    def push_check(name: str, a: Tensor, b: Tensor):
        pushed = push_tensor(f, a, f_inv)
        diff = (pushed - b).first_nonzero()
        checks.append(Check(name, diff is None,
                            None if diff is None else
                            f"component {_idx_witness(diff[0])} differs by {diff[1]}"))

    push_check("curvature_pushforward", source.curvature, target.curvature)
    push_check("torsion_pushforward", source.torsion, target.torsion)
    for pos, (a, b) in enumerate(zip(source.aux, target.aux)):
        if a.valence != b.valence:
            checks.append(Check(f"aux{pos + 1}_pushforward", False,
                                "auxiliary tensors have different valences"))
            continue
        push_check(f"aux{pos + 1}_pushforward", a, b)

    from .symplectic import is_symplectic_matrix
    checks.append(Check("map_is_symplectic",
                        is_symplectic_matrix(source.space, f), None))
    return Report(title="model isomorphism", checks=checks)


# -- Nomizu and transvection constructions ----------------------------------------------

def model_stabilizer_algebra(model: InfinitesimalModel) -> list[list[list[Fraction]]]:
    """Basis of {A in End(V): A annihilates curvature, torsion and aux}.

    Computed as the exact nullspace of the stacked derivation-action
    conditions; every returned matrix is re-verified to annihilate all
    model data.
    """
    d = model.space.dim
    unknowns = [(a, b) for a in range(d) for b in range(d)]  # A[a][b]
    rows = []
    targets = [model.curvature, model.torsion, *model.aux]
    unit_actions = []
    for (a, b) in unknowns:
        endo = [[Fraction(0)] * d for _ in range(d)]
        endo[a][b] = Fraction(1)
        unit_actions.append([derivation_action(endo, t) for t in targets])
    for t_pos, target in enumerate(targets):
        for flat, idx in enumerate(target.indices()):
            row = [unit_actions[u][t_pos][idx] for u in range(len(unknowns))]
            if any(v != 0 for v in row):
                rows.append(row)
    vecs = linalg.nullspace(rows, ncols=len(unknowns))
    basis = []
    for vec in vecs:
        endo = [[Fraction(0)] * d for _ in range(d)]
        for (a, b), v in zip(unknowns, vec):
            endo[a][b] = v
        for target in targets:
            if not derivation_action(endo, target).is_zero():
                raise AssertionError("stabilizer candidate fails to annihilate model data")
        basis.append(endo)
    return basis


@dataclass(frozen=True)
class LieAlgebraPresentation:
    """Structure constants [b_i, b_j] = sum_k c[i][j][k] b_k on a labeled basis.

    Antisymmetry and the Jacobi identity are verified exactly on
    construction, so every instance is a genuine Lie algebra presentation.
    """

    dim: int
    basis_labels: tuple[str, ...]
    structure_constants: tuple  # c[i][j][k] as a nested tuple of Fractions
    subspaces: dict = field(default_factory=dict)

    def __post_init__(self):
        c = self.structure_constants
        if len(c) != self.dim or any(len(row) != self.dim for row in c):
            raise ValueError("structure constant array has wrong shape")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError(
                            f"structure constants not antisymmetric at ({i + 1},{j + 1})")
        bad = self.first_jacobi_failure()
        if bad is not None:
            raise ValueError(f"Jacobi identity fails on basis triple {bad}")

    def bracket(self, x: list, y: list) -> list:
        c = self.structure_constants
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                row = c[i][j]
                for k in range(self.dim):
                    if row[k] != 0:
                        out[k] += xi * yj * row[k]
        return out

    def adjoint_matrix(self, i: int) -> list[list[Fraction]]:
        """ad(b_i) with columns indexed by the argument basis vector."""
        c = self.structure_constants
        return [[c[i][j][k] for j in range(self.dim)] for k in range(self.dim)]

    def first_jacobi_failure(self) -> tuple[int, int, int] | None:
        c = self.structure_constants
        unit = [[Fraction(1) if a == b else Fraction(0) for a in range(self.dim)]
                for b in range(self.dim)]
        for i, j, k in itertools.combinations(range(self.dim), 3):
            total = [Fraction(0)] * self.dim
            for (a, b, cc) in ((i, j, k), (j, k, i), (k, i, j)):
                inner = c[b][cc]
                term = self.bracket(unit[a], inner)
                total = [x + y for x, y in zip(total, term)]
            if any(v != 0 for v in total):
                return (i + 1, j + 1, k + 1)
        return None


def _coords_in_span(span_rows: list[list[Fraction]], vec: list[Fraction]) -> list[Fraction] | None:
    """Coefficients expressing vec over the rows of span_rows, or None."""
    matrix = linalg.transpose(span_rows)
    return linalg.solve(matrix, vec) if span_rows else (None if any(v != 0 for v in vec) else [])


def _flatten_endo(endo) -> list[Fraction]:
    return [x for row in endo for x in row]


def _algebra_from_parts(model: InfinitesimalModel, h_basis: list,
                        h_name: str) -> LieAlgebraPresentation:
    d = model.space.dim
    h_rows = [_flatten_endo(e) for e in h_basis]
    m = len(h_basis)
    dim = d + m
    zero = Fraction(0)
    c = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]

    def set_bracket(i: int, j: int, vec: list[Fraction]):
        c[i][j] = list(vec)
        c[j][i] = [-v for v in vec]

    # [X, Y] = -T_X Y + R_XY
    for i in range(d):
        for j in range(i + 1, d):
            vec = [zero] * dim
            for k in range(d):
                vec[k] = -model.torsion[i, j, k]
            r_flat = _flatten_endo(curvature_endomorphism(model.curvature, i, j))
            if any(v != 0 for v in r_flat):
                coords = _coords_in_span(h_rows, r_flat)
                if coords is None:
                    raise ModelError(
                        "curvature endomorphism lies outside the isotropy algebra; "
                        "the model does not satisfy its axioms")
                for a, value in enumerate(coords):
                    vec[d + a] = value
            set_bracket(i, j, vec)

    # [A, X] = A X
    for a, endo in enumerate(h_basis):
        for j in range(d):
            vec = [zero] * dim
            for l in range(d):
                vec[l] = endo[l][j]
            set_bracket(d + a, j, vec)

    # [A, B] = AB - BA
    for a in range(m):
        for b in range(a + 1, m):
            commutator = _commutator(h_basis[a], h_basis[b])
            flat = _flatten_endo(commutator)
            coords = _coords_in_span(h_rows, flat)
            if coords is None:
                raise ModelError("isotropy algebra is not closed under commutators")
            vec = [zero] * dim
            for pos, value in enumerate(coords):
                vec[d + pos] = value
            set_bracket(d + a, d + b, vec)

    labels = tuple(f"e{i + 1}" for i in range(d)) + tuple(f"A{a + 1}" for a in range(m))
    return LieAlgebraPresentation(
        dim=dim,
        basis_labels=labels,
        structure_constants=tuple(tuple(tuple(row) for row in plane) for plane in c),
        subspaces={"V": tuple(range(d)), h_name: tuple(range(d, dim))},
    )


def _commutator(a, b):
    d = len(a)
    return [[sum((a[i][m] * b[m][j] - b[i][m] * a[m][j] for m in range(d)), Fraction(0))
             for j in range(d)] for i in range(d)]


def nomizu_algebra(model: InfinitesimalModel) -> LieAlgebraPresentation:
    """Transitive algebra V + h0 with h0 the full model stabilizer."""
    return _algebra_from_parts(model, model_stabilizer_algebra(model), "h0")


def transvection_subalgebra(model: InfinitesimalModel) -> list[list[list[Fraction]]]:
    """Lie closure of the curvature endomorphisms inside End(V)."""
    d = model.space.dim
    basis: list = []
    rows: list[list[Fraction]] = []

    def try_add(endo) -> bool:
        flat = _flatten_endo(endo)
        if _coords_in_span(rows, flat) is not None:
            return False
        basis.append(endo)
        rows.append(flat)
        return True

    for i in range(d):
        for j in range(i + 1, d):
            try_add(curvature_endomorphism(model.curvature, i, j))
    limit = d * d
    for _ in range(limit + 1):
        added = False
        snapshot = list(basis)
        for a in range(len(snapshot)):
            for b in range(a + 1, len(snapshot)):
                if try_add(_commutator(snapshot[a], snapshot[b])):
                    added = True
        if not added:
            return basis
        if len(basis) > limit:
            raise ModelError("Lie closure exceeded the dimension of End(V)")
    raise ModelError("Lie closure did not stabilize inside End(V)")


def transvection_algebra(model: InfinitesimalModel) -> LieAlgebraPresentation:
    """Algebra V + h0' where h0' is Lie-generated by curvature endomorphisms.

    The containment h0' inside the full stabilizer h0 is re-verified.
    """
    h0p = transvection_subalgebra(model)
    h0 = model_stabilizer_algebra(model)
    h0_rows = [_flatten_endo(e) for e in h0]
    for endo in h0p:
        if _coords_in_span(h0_rows, _flatten_endo(endo)) is None:
            raise ModelError("transvection algebra is not contained in the stabilizer")
    return _algebra_from_parts(model, h0p, "h0")


# -- Bianchi classification --------------------------------------------------------------

@dataclass(frozen=True)
class BianchiType:
    """Classification of a 3-dimensional real Lie algebra.

    `parameters` carries the eigenvalue-ratio invariant of the adjoint
    action on the derived algebra together with its reciprocal (published
    parameter conventions differ by exactly this ambiguity); `invariant`
    is the symmetric rational invariant trace^2/det, which determines the
    unordered ratio pair.
    """

    tag: str
    parameters: frozenset | None = None
    invariant: Fraction | None = None
    notes: str = ""


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num = isqrt(q.numerator)
    den = isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def bianchi_classify(p: LieAlgebraPresentation) -> BianchiType:
    """Standard decision tree on the derived algebra and adjoint spectra."""
    if p.dim != 3:
        raise ValueError("Bianchi classification needs a 3-dimensional algebra")
    unit = [[Fraction(1) if a == b else Fraction(0) for a in range(3)] for b in range(3)]
    brackets = {(i, j): p.bracket(unit[i], unit[j]) for i in range(3) for j in range(i + 1, 3)}

    derived_rows: list[list[Fraction]] = []
    for vec in brackets.values():
        if _coords_in_span(derived_rows, vec) is None:
            derived_rows.append(vec)
    dd = len(derived_rows)

    if dd == 0:
        return BianchiType(tag="I")

    if dd == 3:
        ad = [p.adjoint_matrix(i) for i in range(3)]
        killing = [[sum((linalg.matmul(ad[i], ad[j])[k][k] for k in range(3)), Fraction(0))
                    for j in range(3)] for i in range(3)]
        neg = [[-x for x in row] for row in killing]
        minors = [linalg.det([row[:k] for row in neg[:k]]) for k in (1, 2, 3)]
        negative_definite = all(m > 0 for m in minors)
        return BianchiType(tag="IX" if negative_definite else "VIII")

    if dd == 1:
        u = derived_rows[0]
        central = all(all(v == 0 for v in p.bracket(u, unit[i])) for i in range(3))
        return BianchiType(tag="II" if central else "III")

    # dd == 2: the derived algebra is abelian and ad_X acts invertibly on it
    u, v = derived_rows
    if any(x != 0 for x in p.bracket(u, v)):
        raise ModelError("derived algebra of a 3-dimensional solvable algebra must be abelian")
    complement = None
    for i in range(3):
        if _coords_in_span(derived_rows, unit[i]) is None:
            complement = unit[i]
            break
    cu = _coords_in_span(derived_rows, p.bracket(complement, u))
    cv = _coords_in_span(derived_rows, p.bracket(complement, v))
    if cu is None or cv is None:
        raise ModelError("adjoint action does not preserve the derived algebra")
    a_matrix = [[cu[0], cv[0]], [cu[1], cv[1]]]
    trace = a_matrix[0][0] + a_matrix[1][1]
    determinant = a_matrix[0][0] * a_matrix[1][1] - a_matrix[0][1] * a_matrix[1][0]
    if determinant == 0:
        raise ModelError("adjoint action on a 2-dimensional derived algebra is singular")
    invariant = trace * trace / determinant
    unimodular = " (unimodular)" if trace == 0 else ""

    discriminant = trace * trace - 4 * determinant
    if discriminant == 0:
        scalar = (a_matrix[0][1] == 0 and a_matrix[1][0] == 0
                  and a_matrix[0][0] == a_matrix[1][1])
        if scalar:
            return BianchiType(tag="V", invariant=invariant)
        return BianchiType(tag="IV", invariant=invariant)
    if discriminant > 0:
        root = _fraction_sqrt(discriminant)
        params = None
        if root is not None:
            lam1 = (trace + root) / 2
            lam2 = (trace - root) / 2
            params = frozenset((lam1 / lam2, lam2 / lam1))
        return BianchiType(tag="VI", parameters=params, invariant=invariant,
                           notes="real distinct adjoint eigenvalues" + unimodular)
    return BianchiType(tag="VII", parameters=None, invariant=invariant,
                       notes="complex adjoint eigenvalues" + unimodular)


# -- serialization ---------------------------------------------------------------------

def presentation_to_json(p: LieAlgebraPresentation) -> dict:
    constants = {}
    for i in range(p.dim):
        for j in range(i + 1, p.dim):
            row = {str(k + 1): str(c) for k, c in enumerate(p.structure_constants[i][j])
                   if c != 0}
            if row:
                constants[f"[{i + 1},{j + 1}]"] = row
    return {
        "dim": p.dim,
        "basis_labels": list(p.basis_labels),
        "structure_constants": constants,
        "subspaces": {name: [i + 1 for i in idx] for name, idx in p.subspaces.items()},
    }


def presentation_from_json(data: dict) -> LieAlgebraPresentation:
    dim = int(data["dim"])
    labels = tuple(data.get("basis_labels") or (f"b{i + 1}" for i in range(dim)))
    if len(labels) != dim:
        raise ValueError(f"{len(labels)} basis labels for dimension {dim}")
    zero = Fraction(0)
    c = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for key, row in data.get("structure_constants", {}).items():
        inner = key.strip()
        if not (inner.startswith("[") and inner.endswith("]")):
            raise ValueError(f"bad bracket key {key!r}")
        i_text, j_text = inner[1:-1].split(",")
        i, j = int(i_text) - 1, int(j_text) - 1
        if not (0 <= i < dim and 0 <= j < dim) or i == j:
            raise ValueError(f"bad bracket key {key!r}")
        for k_text, value in row.items():
            k = int(k_text) - 1
            if not 0 <= k < dim:
                raise ValueError(f"bad component index in {key!r}")
            c[i][j][k] = Fraction(value)
            c[j][i][k] = -Fraction(value)
    subspaces = {name: tuple(i - 1 for i in idx)
                 for name, idx in data.get("subspaces", {}).items()}
    return LieAlgebraPresentation(
        dim=dim, basis_labels=labels,
        structure_constants=tuple(tuple(tuple(row) for row in plane) for plane in c),
        subspaces=subspaces)


def model_to_json(model: InfinitesimalModel) -> dict:
    from .symplectic import tensor_to_json
    return {
        "n": model.space.n,
        "curvature": tensor_to_json(model.curvature),
        "torsion": tensor_to_json(model.torsion),
        "aux": [tensor_to_json(t) for t in model.aux],
    }


def model_from_json(data: dict) -> InfinitesimalModel:
    from .symplectic import tensor_from_json
    n = int(data["n"])
    space = SymplecticSpace(n)
    curvature = tensor_from_json(data["curvature"], space=space)
    torsion = tensor_from_json(data["torsion"], space=space)
    aux = tuple(tensor_from_json(item, space=space) for item in data.get("aux", []))
    return InfinitesimalModel(space=space, curvature=curvature, torsion=torsion, aux=aux)
