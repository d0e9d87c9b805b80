"""Symbolic coordinate-chart calculus over exact rational function fields.

A chart is a single coordinate patch with a symplectic 2-form, Christoffel
symbols and optional named tensor fields, all with rational-function
entries.  Verification happens in the function field (generic-point
semantics): a check passes when the relevant expression is the zero
rational function, so poles such as {x = 0} are excluded implicitly and
pointwise operations reject pole points explicitly.

Index conventions (all 0-based in code, 1-based in files and witnesses):

* christoffel[k][i][j] is the coefficient of d_k in the covariant
  derivative of d_j along d_i.
* The curvature sign is R(X,Y)Z = nabla_{[X,Y]} Z - nabla_X nabla_Y Z
  + nabla_Y nabla_X Z -- note this is the OPPOSITE of the most common
  textbook convention; for coordinate fields the bracket term drops.
* The covariant differential adds its derivative slot FIRST:
  (nabla T)(X; ...) = (nabla_X T)(...).

A connection shifted by a structure tensor S uses Gamma' = Gamma - S.
The built-in example charts are loaded from packaged fixture files; the
first one ships verbatim (where its printed signs fail the checks) plus an
emended variant found by exhaustive search over the sign patterns.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import linalg
from .linalg import is_zero_scalar
from .models import InfinitesimalModel, standard_omega_tensor
from .rationals import Polynomial, RationalFunction, parse_ratfun
from .reporting import Check, Report
from .symplectic import COV, CON, SymplecticSpace, Tensor, change_basis


class ChartFormatError(ValueError):
    """Malformed chart input (bad keys, non-antisymmetric omega, parse errors)."""


class NotLinearTypeError(ValueError):
    """The supplied pointwise structure tensor has no linear-type vector."""


@dataclass(frozen=True)
class Chart:
    """One coordinate patch with exact rational-function data."""

    coords: tuple[str, ...]
    omega: tuple          # [i][j] RationalFunction, antisymmetric
    christoffel: tuple    # [k][i][j] RationalFunction
    fields: dict = field(default_factory=dict)
    excluded_locus: str = ""

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def n(self) -> int:
        return len(self.coords) // 2

    def rf_zero(self) -> RationalFunction:
        return RationalFunction.constant(0, self.coords)

    def field_tensor(self, name: str) -> Tensor:
        if name not in self.fields:
            raise KeyError(f"chart has no field named {name!r}")
        return self.fields[name]


def _rf(chart_coords, value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value.with_variables(chart_coords) if set(value.variables) != set(chart_coords) else value
    return RationalFunction.constant(value, chart_coords)


def make_chart(coords, omega_entries, christoffel_entries, fields=None,
               excluded_locus: str = "") -> Chart:
    """Build a chart from sparse {(i,j): rf} and {(k,i,j): rf} maps (0-based)."""
    coords = tuple(coords)
    d = len(coords)
    if d % 2 != 0:
        raise ChartFormatError("charts need an even number of coordinates")
    zero = RationalFunction.constant(0, coords)
    omega = [[zero] * d for _ in range(d)]
    for (i, j), value in omega_entries.items():
        value = _rf(coords, value)
        if i == j and not value.is_zero():
            raise ChartFormatError("omega must vanish on the diagonal")
        if not omega[i][j].is_zero() and not (omega[i][j] == value):
            raise ChartFormatError(f"conflicting omega entries at ({i + 1},{j + 1})")
        omega[i][j] = value
        omega[j][i] = -value
    gamma = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for (k, i, j), value in christoffel_entries.items():
        gamma[k][i][j] = _rf(coords, value)
    return Chart(coords=coords,
                 omega=tuple(tuple(row) for row in omega),
                 christoffel=tuple(tuple(tuple(r) for r in plane) for plane in gamma),
                 fields=dict(fields or {}),
                 excluded_locus=excluded_locus)


# -- structural checks -----------------------------------------------------------

def omega_is_closed(chart: Chart) -> tuple[bool, tuple | None]:
    """d omega = 0: the cyclic sum of coordinate partials vanishes exactly."""
    w = chart.omega
    for i, j, k in itertools.combinations(range(chart.dim), 3):
        total = (w[j][k].partial(chart.coords[i])
                 + w[k][i].partial(chart.coords[j])
                 + w[i][j].partial(chart.coords[k]))
        if not total.is_zero():
            return False, (i, j, k)
    return True, None


def omega_is_nondegenerate(chart: Chart) -> bool:
    return not linalg.det([list(row) for row in chart.omega]).is_zero()


def verify_chart_structure(chart: Chart) -> Report:
    closed, bad = omega_is_closed(chart)
    return Report(title="chart structure", checks=[
        Check("omega_closed", closed,
              None if closed else f"cyclic partial sum nonzero at {_w(bad)}"),
        Check("omega_nondegenerate", omega_is_nondegenerate(chart),
              None),
    ])


# -- basic chart calculus ----------------------------------------------------------

def tilde_christoffel(chart: Chart, structure: Tensor) -> tuple:
    """Christoffel symbols of the shifted connection Gamma - S."""
    d = chart.dim
    if structure.valence != (COV, COV, CON):
        raise ValueError("structure tensor must be a (1,2) field")
    return tuple(tuple(tuple(chart.christoffel[k][i][j] - structure[i, j, k]
                             for j in range(d)) for i in range(d)) for k in range(d))


def _gamma(chart: Chart, structure: Tensor | None):
    return chart.christoffel if structure is None else tilde_christoffel(chart, structure)


def chart_torsion(chart: Chart, structure: Tensor | None = None) -> Tensor:
    """Torsion (1,2) field: T(i,j) = Gamma[k][i][j] - Gamma[k][j][i]."""
    gamma = _gamma(chart, structure)
    return Tensor.build(chart.dim, (COV, COV, CON),
                        lambda i, j, k: gamma[k][i][j] - gamma[k][j][i])


def chart_curvature(chart: Chart, structure: Tensor | None = None) -> Tensor:
    """Curvature (1,3) field under the sign convention in the module docstring."""
    gamma = _gamma(chart, structure)
    d = chart.dim
    coords = chart.coords

    def entry(i, j, k, l):
        total = (-gamma[l][j][k].partial(coords[i])
                 + gamma[l][i][k].partial(coords[j]))
        for m in range(d):
            if not gamma[m][j][k].is_zero():
                total = total - gamma[m][j][k] * gamma[l][i][m]
            if not gamma[m][i][k].is_zero():
                total = total + gamma[m][i][k] * gamma[l][j][m]
        return total

    return Tensor.build(d, (COV, COV, COV, CON), entry)


def covariant_derivative(chart: Chart, tensor: Tensor,
                         structure: Tensor | None = None) -> Tensor:
    """Coordinate covariant derivative; the new covariant slot comes first."""
    gamma = _gamma(chart, structure)
    d = chart.dim
    coords = chart.coords

    def entry(*idx):
        i, rest = idx[0], idx[1:]
        total = tensor[rest].partial(coords[i])
        for slot, kind in enumerate(tensor.valence):
            for m in range(d):
                src = list(rest)
                src[slot] = m
                value = tensor[tuple(src)]
                if value.is_zero():
                    continue
                if kind == CON:
                    coeff = gamma[rest[slot]][i][m]
                else:
                    coeff = -gamma[m][i][rest[slot]]
                if not coeff.is_zero():
                    total = total + coeff * value
        return total

    return Tensor.build(d, (COV,) + tensor.valence, entry)


def omega_tensor(chart: Chart) -> Tensor:
    return Tensor.build(chart.dim, (COV, COV), lambda i, j: chart.omega[i][j])


def pairing_with(chart: Chart, vec: Tensor) -> list:
    """Covector omega(., v): component j is sum_m omega[j][m] v^m."""
    if vec.valence != (CON,):
        raise ValueError("expected a vector field")
    d = chart.dim
    zero = chart.rf_zero()
    return [sum((chart.omega[j][m] * vec[(m,)] for m in range(d)
                 if not vec[(m,)].is_zero()), zero)
            for j in range(d)]


def lie_bracket(chart: Chart, x: Tensor, y: Tensor) -> Tensor:
    """[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k."""
    if x.valence != (CON,) or y.valence != (CON,):
        raise ValueError("expected vector fields")
    d = chart.dim
    coords = chart.coords

    def entry(k):
        total = chart.rf_zero()
        for i in range(d):
            if not x[(i,)].is_zero():
                total = total + x[(i,)] * y[(k,)].partial(coords[i])
            if not y[(i,)].is_zero():
                total = total - y[(i,)] * x[(k,)].partial(coords[i])
        return total

    return Tensor.build(d, (CON,), entry)


def lie_derivative_omega(chart: Chart, xi: Tensor) -> Tensor:
    """(L_xi omega)_ij = xi^m d_m w_ij + w_mj d_i xi^m + w_im d_j xi^m."""
    d = chart.dim
    coords = chart.coords
    w = chart.omega

    def entry(i, j):
        total = chart.rf_zero()
        for m in range(d):
            if not xi[(m,)].is_zero():
                total = total + xi[(m,)] * w[i][j].partial(coords[m])
            total = total + w[m][j] * xi[(m,)].partial(coords[i])
            total = total + w[i][m] * xi[(m,)].partial(coords[j])
        return total

    return Tensor.build(d, (COV, COV), entry)


# -- linear-type structures -----------------------------------------------------------

def linear_type_structure(chart: Chart, xi: Tensor) -> Tensor:
    """S_X Y = omega(X,Y) xi - omega(Y,xi) X as a (1,2) field."""
    if xi.valence != (CON,):
        raise ValueError("expected a vector field")
    omega_xi = pairing_with(chart, xi)  # omega(., xi)

    def entry(i, j, k):
        total = chart.omega[i][j] * xi[(k,)]
        if k == i:
            total = total - omega_xi[j]
        return total

    return Tensor.build(chart.dim, (COV, COV, CON), entry)


def xi_perp_field(chart: Chart, xi: Tensor) -> Tensor:
    """A field with omega(xi_perp, xi) = 1: the first coordinate field with a
    nonvanishing pairing, rescaled in the function field."""
    omega_xi = pairing_with(chart, xi)  # omega(d_a, xi)
    for a in range(chart.dim):
        if not omega_xi[a].is_zero():
            scale = 1 / omega_xi[a]
            return Tensor.build(chart.dim, (CON,),
                                lambda k: scale if k == a else chart.rf_zero())
    raise ValueError("the vector field vanishes identically; no transversal exists")


# -- verification suites ----------------------------------------------------------------

def _w(idx) -> str:
    return "(" + ",".join(str(i + 1) for i in idx) + ")"


def _zero_check(name: str, tensor: Tensor) -> Check:
    hit = tensor.first_nonzero()
    return Check(name, hit is None,
                 None if hit is None else f"component {_w(hit[0])} = {hit[1]}")


def verify_as_conditions(chart: Chart, structure: Tensor) -> Report:
    """The parallelism conditions for the shifted connection.

    Checks, in order: the base connection is Fedosov (parallel omega,
    torsion-free), and the shifted connection makes omega, the structure
    tensor, both curvatures and its own torsion parallel.
    """
    w = omega_tensor(chart)
    base_r = chart_curvature(chart)
    tilde_r = chart_curvature(chart, structure)
    tilde_t = chart_torsion(chart, structure)
    checks = [
        _zero_check("nabla_omega_zero", covariant_derivative(chart, w)),
        _zero_check("torsion_zero", chart_torsion(chart)),
        _zero_check("tilde_nabla_omega_zero", covariant_derivative(chart, w, structure)),
        _zero_check("tilde_nabla_structure_zero",
                    covariant_derivative(chart, structure, structure)),
        _zero_check("tilde_nabla_base_curvature_zero",
                    covariant_derivative(chart, base_r, structure)),
        _zero_check("tilde_nabla_tilde_curvature_zero",
                    covariant_derivative(chart, tilde_r, structure)),
        _zero_check("tilde_nabla_tilde_torsion_zero",
                    covariant_derivative(chart, tilde_t, structure)),
    ]
    return Report(title="parallelism conditions", checks=checks)


def verify_linear_type_suite(chart: Chart, xi: Tensor,
                             xi_perp: Tensor | None = None) -> Report:
    """Identity suite for linear-type structures on a Fedosov base.

    Verifies the Fedosov preconditions, the defining covariant-derivative
    form of xi, the curvature degeneracies forced by it, the two curvature
    reconstruction identities against a transversal field (user-supplied
    via `xi_perp` with omega(xi_perp, xi) = 1, or auto-constructed), and
    the geometric properties of xi (geodesic, symplectic flow, integrable
    kernel distribution).
    """
    d = chart.dim
    coords = chart.coords
    zero = chart.rf_zero()
    structure = linear_type_structure(chart, xi)
    checks: list[Check] = []

    checks.append(_zero_check("nabla_omega_zero",
                              covariant_derivative(chart, omega_tensor(chart))))
    checks.append(_zero_check("torsion_zero", chart_torsion(chart)))

    checks.append(_zero_check("tilde_nabla_xi_zero",
                              covariant_derivative(chart, xi, structure)))

    omega_xi = pairing_with(chart, xi)  # omega(d_i, xi)
    nabla_xi = covariant_derivative(chart, xi)
    linear_form = Tensor.build(d, (COV, CON),
                               lambda i, k: nabla_xi[i, k] - omega_xi[i] * xi[(k,)])
    checks.append(_zero_check("nabla_xi_linear_form", linear_form))

    r = chart_curvature(chart)
    kills = Tensor.build(d, (COV, COV, CON),
                         lambda i, j, l: sum((r[i, j, k, l] * xi[(k,)]
                                              for k in range(d)
                                              if not xi[(k,)].is_zero()),
                                             zero))
    checks.append(_zero_check("curvature_kills_xi", kills))

    slot_sym = Tensor.build(d, (COV, COV, CON),
                            lambda j, k, l: sum((xi[(i,)] * (r[i, j, k, l] - r[i, k, j, l])
                                                 for i in range(d)
                                                 if not xi[(i,)].is_zero()),
                                                zero))
    checks.append(_zero_check("curvature_xi_slot_symmetry", slot_sym))

    r4 = Tensor.build(d, (COV, COV, COV, COV),
                      lambda i, j, k, m: sum((r[i, j, k, l] * chart.omega[l][m]
                                              for l in range(d)
                                              if not r[i, j, k, l].is_zero()),
                                             zero))
    pair_sym = Tensor.build(d, (COV, COV, COV, COV),
                            lambda i, j, k, m: r4[i, j, k, m] - r4[i, j, m, k])
    checks.append(_zero_check("curvature_last_pair_symmetry", pair_sym))

    # xi contracted into the first slot of the lowered curvature
    r_xi = Tensor.build(d, (COV, COV, COV),
                        lambda z, u, w: sum((xi[(a,)] * r4[a, z, u, w]
                                             for a in range(d)
                                             if not xi[(a,)].is_zero()),
                                            zero))

    cyclic_identity = Tensor.build(
        d, (COV, COV, COV, COV, COV),
        lambda x, y, z, u, w: sum(
            (chart.omega[a][b] * r_xi[c, u, w] + omega_xi[a] * r4[b, c, u, w]
             for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y))),
            zero))
    checks.append(_zero_check("curvature_cyclic_xi_identity", cyclic_identity))

    proportionality = Tensor.build(
        d, (COV, COV, COV, COV),
        lambda x, y, u, w: omega_xi[x] * r_xi[y, u, w] - omega_xi[y] * r_xi[x, u, w])
    checks.append(_zero_check("curvature_xi_proportionality", proportionality))

    if xi_perp is not None:
        if xi_perp.valence != (CON,):
            raise ValueError("the transversal field must be a vector field")
        normalization = sum((xi_perp[(a,)] * omega_xi[a] for a in range(d)
                             if not xi_perp[(a,)].is_zero()), zero)
        if not (normalization - 1).is_zero():
            raise ValueError("the supplied transversal field does not satisfy "
                             "omega(xi_perp, xi) = 1")
        perp = xi_perp
    else:
        try:
            perp = xi_perp_field(chart, xi)
        except ValueError as err:
            raise ValueError(f"linear-type suite needs a nonzero vector field: {err}") from None

    def contract_perp_first(x, u, w):
        return sum((perp[(a,)] * r4[a, x, u, w] for a in range(d)
                    if not perp[(a,)].is_zero()), zero)

    def contract_perp_second(y, u, w):
        return sum((perp[(b,)] * r4[y, b, u, w] for b in range(d)
                    if not perp[(b,)].is_zero()), zero)

    # c = R(xi, perp, perp, perp)
    scalar_c = chart.rf_zero()
    for b in range(d):
        if perp[(b,)].is_zero():
            continue
        for c in range(d):
            if perp[(c,)].is_zero():
                continue
            for e in range(d):
                if not perp[(e,)].is_zero():
                    scalar_c = scalar_c + perp[(b,)] * perp[(c,)] * perp[(e,)] * r_xi[b, c, e]

    rank_one = Tensor.build(
        d, (COV, COV, COV),
        lambda x, y, z: r_xi[x, y, z] - omega_xi[x] * omega_xi[y] * omega_xi[z] * scalar_c)
    checks.append(_zero_check("curvature_xi_rank_one", rank_one))

    omega_perp = pairing_with(chart, perp)  # omega(d_i, perp) = -omega(perp, d_i)

    def reconstruction(x, y, u, w):
        prefactor = (-chart.omega[x][y]
                     + omega_perp[x] * omega_xi[y]
                     - omega_perp[y] * omega_xi[x])
        value = prefactor * omega_xi[u] * omega_xi[w] * scalar_c
        value = value - omega_xi[x] * contract_perp_second(y, u, w)
        value = value - omega_xi[y] * contract_perp_first(x, u, w)
        return r4[x, y, u, w] - value

    leafwise = Tensor.build(d, (COV, COV, COV, COV), reconstruction)
    checks.append(_zero_check("curvature_leafwise_flatness", leafwise))

    geodesic = Tensor.build(d, (CON,),
                            lambda k: sum((xi[(i,)] * nabla_xi[i, k] for i in range(d)
                                           if not xi[(i,)].is_zero()), zero))
    checks.append(_zero_check("xi_geodesic", geodesic))

    checks.append(_zero_check("xi_flow_preserves_omega",
                              lie_derivative_omega(chart, xi)))

    checks.append(integrability_check(chart, xi))

    return Report(title="linear-type identity suite", checks=checks)


def integrability_check(chart: Chart, xi: Tensor) -> Check:
    """omega([X,Y], xi) = 0 for a spanning set of the kernel distribution of
    omega(., xi); the spanning fields are d_j - (beta_j / beta_a) d_a for a
    pivot index a with beta_a nonzero.  In dimension 2 the kernel is a line
    and there is nothing to bracket."""
    d = chart.dim
    beta = pairing_with(chart, xi)
    pivot = next((a for a in range(d) if not beta[a].is_zero()), None)
    if pivot is None:
        return Check("xi_kernel_integrable", False, "vector field vanishes identically")
    one = RationalFunction.constant(1, chart.coords)
    spanning = []
    for j in range(d):
        if j == pivot:
            continue
        ratio = beta[j] / beta[pivot]
        spanning.append(Tensor.build(
            d, (CON,),
            lambda k, j=j, ratio=ratio: (one if k == j
                                         else (-ratio if k == pivot else chart.rf_zero()))))
    for a in range(len(spanning)):
        for b in range(a + 1, len(spanning)):
            bracket = lie_bracket(chart, spanning[a], spanning[b])
            value = sum((bracket[(m,)] * beta[m] for m in range(d)
                         if not bracket[(m,)].is_zero()), Fraction(0))
            if not is_zero_scalar(value):
                return Check("xi_kernel_integrable", False,
                             f"bracket of spanning fields {a + 1},{b + 1} leaves the kernel")
    return Check("xi_kernel_integrable", True, None)


@dataclass(frozen=True)
class HamiltonianReport:
    oneform: Tensor
    closed: bool
    closedness_witness: tuple | None
    candidate_matches: bool | None


def hamiltonian_oneform(chart: Chart, xi: Tensor,
                        candidate: RationalFunction | None = None) -> HamiltonianReport:
    """The 1-form omega(xi, .), its exact closedness, and an optional dH check.

    The primitive itself is never integrated symbolically (it usually
    involves logarithms outside the rational function field); closedness is
    the machine-checkable statement, and a caller-supplied rational
    candidate H is verified against dH = alpha when present.
    """
    d = chart.dim
    coords = chart.coords
    zero = chart.rf_zero()
    alpha = Tensor.build(d, (COV,),
                         lambda j: sum((xi[(i,)] * chart.omega[i][j] for i in range(d)
                                        if not xi[(i,)].is_zero()), zero))
    closed = True
    witness = None
    for i in range(d):
        for j in range(i + 1, d):
            value = alpha[(j,)].partial(coords[i]) - alpha[(i,)].partial(coords[j])
            if not value.is_zero():
                closed = False
                witness = (i, j)
                break
        if not closed:
            break
    matches = None
    if candidate is not None:
        candidate = candidate.with_variables(coords)
        matches = all((candidate.partial(coords[j]) - alpha[(j,)]).is_zero()
                      for j in range(d))
    return HamiltonianReport(oneform=alpha, closed=closed,
                             closedness_witness=witness, candidate_matches=matches)


# -- pointwise operations -----------------------------------------------------------------

def evaluate_tensor(t: Tensor, point: dict) -> Tensor:
    return Tensor(t.dim, t.valence,
                  [c.evaluate(point) if isinstance(c, RationalFunction) else Fraction(c)
                   for c in t.comps])


def evaluate_matrix(matrix, point: dict) -> list[list[Fraction]]:
    return [[x.evaluate(point) if isinstance(x, RationalFunction) else Fraction(x)
             for x in row] for row in matrix]


def symplectic_basis_matrix(omega_p: list[list[Fraction]]) -> list[list[Fraction]]:
    """Columns form a basis in which the form becomes the standard one.

    Iterative hyperbolic-pair extraction: pick u, find w with omega(u,w) = 1
    after rescaling, project the rest onto the symplectic complement with
    P(v) = v - omega(v,w) u + omega(v,u) w, and recurse.
    """
    dim = len(omega_p)

    def pairing(u, v):
        return sum(u[i] * omega_p[i][j] * v[j]
                   for i in range(dim) for j in range(dim)
                   if u[i] != 0 and v[j] != 0 and omega_p[i][j] != 0)

    def independent_subset(vectors, count):
        kept = []
        rows = []
        for v in vectors:
            vec = list(v)
            for row in rows:
                pivot = next(i for i, x in enumerate(row) if x != 0)
                if vec[pivot] != 0:
                    factor = vec[pivot]
                    vec = [a - factor * b for a, b in zip(vec, row)]
            first = next((i for i, x in enumerate(vec) if x != 0), None)
            if first is None:
                continue
            inv = vec[first]
            rows.append([x / inv for x in vec])
            kept.append(v)
            if len(kept) == count:
                break
        return kept

    working = [[Fraction(1) if i == j else Fraction(0) for i in range(dim)]
               for j in range(dim)]
    us, ws = [], []
    while working:
        u = working[0]
        partner = next((w for w in working[1:] if pairing(u, w) != 0), None)
        if partner is None:
            raise ValueError("the evaluated form is degenerate at this point")
        scale = pairing(u, partner)
        w = [x / scale for x in partner]
        us.append(u)
        ws.append(w)
        projected = []
        for v in working:
            if v is u or v is partner:
                continue
            pv = [a - pairing(v, w) * b + pairing(v, u) * c
                  for a, b, c in zip(v, u, w)]
            if any(x != 0 for x in pv):
                projected.append(pv)
        working = independent_subset(projected, dim - 2 * len(us))
    columns = us + ws
    return [[columns[c][r] for c in range(dim)] for r in range(dim)]


def model_at_point(chart: Chart, structure: Tensor, point: dict):
    """Evaluate the shifted connection's data at a point into a model.

    Returns (model, basis_matrix): the model lives over the standard
    symplectic space reached by the returned change of basis, and its aux
    list is (omega, structure tensor).  Raises `PoleError` at poles.
    """
    point = {k: Fraction(v) for k, v in point.items()}
    missing = [c for c in chart.coords if c not in point]
    if missing:
        raise ValueError(f"point does not assign coordinates {missing}")
    omega_p = evaluate_matrix(chart.omega, point)
    tilde_r = evaluate_tensor(chart_curvature(chart, structure), point)
    tilde_t = evaluate_tensor(chart_torsion(chart, structure), point)
    s_p = evaluate_tensor(structure, point)

    m = symplectic_basis_matrix(omega_p)
    m_inv = linalg.inverse(m)
    n = chart.n
    space = SymplecticSpace(n)
    product = linalg.matmul(linalg.matmul(linalg.transpose(m), omega_p), m)
    if any(product[i][j] != space.omega[i][j] for i in range(2 * n) for j in range(2 * n)):
        raise AssertionError("change of basis failed to reach the standard form")

    def standardize(t: Tensor) -> Tensor:
        out = change_basis(t, m, m_inv)
        return Tensor(out.dim, out.valence, out.comps, space=space)

    model = InfinitesimalModel(
        space=space,
        curvature=standardize(tilde_r),
        torsion=standardize(tilde_t),
        aux=(standard_omega_tensor(space), standardize(s_p)),
    )
    return model, m


def metric_obstruction(s_point: Tensor, omega_p: list[list[Fraction]]):
    """Decide whether any nondegenerate symmetric bilinear form is annihilated.

    Builds the exact solution space of g(S_X Y, Z) + g(Y, S_X Z) = 0 over
    symmetric matrices, then tests whether the determinant of the generic
    solution is the zero polynomial in the solution parameters.  A zero
    structure tensor is reported as a degenerate precondition (any metric
    works) rather than an obstruction.
    """
    if s_point.valence != (COV, COV, CON):
        raise ValueError("expected a pointwise (1,2) structure tensor")
    d = s_point.dim

    if s_point.is_zero():
        return ObstructionVerdict(obstructed=False, degenerate_input=True,
                                  xi=None, solution_dimension=d * (d + 1) // 2)

    # extract the linear-type vector: S_X Y = omega(X,Y) xi - omega(Y,xi) X
    rows, rhs = [], []
    for i in range(d):
        for j in range(d):
            for k in range(d):
                row = []
                for c in range(d):
                    coeff = Fraction(0)
                    if k == c:
                        coeff += omega_p[i][j]
                    if k == i:
                        coeff -= omega_p[j][c]
                    row.append(coeff)
                rows.append(row)
                rhs.append(s_point[i, j, k])
    xi = linalg.solve(rows, rhs)
    if xi is None:
        raise NotLinearTypeError("structure tensor is not of linear type")
    residual_ok = all(
        sum(r * x for r, x in zip(row, xi)) == b for row, b in zip(rows, rhs))
    if not residual_ok or all(x == 0 for x in xi):
        raise NotLinearTypeError("structure tensor is not of linear type")

    unknowns = [(a, b) for a in range(d) for b in range(a, d)]
    position = {pair: pos for pos, pair in enumerate(unknowns)}

    def add(row, a, b, value):
        row[position[(min(a, b), max(a, b))]] += value

    grows = []
    for i in range(d):
        for j in range(d):
            for k in range(j, d):
                row = [Fraction(0)] * len(unknowns)
                for m in range(d):
                    if s_point[i, j, m] != 0:
                        add(row, m, k, s_point[i, j, m])
                    if s_point[i, k, m] != 0:
                        add(row, j, m, s_point[i, k, m])
                if any(v != 0 for v in row):
                    grows.append(row)
    solutions = linalg.nullspace(grows, ncols=len(unknowns))
    if not solutions:
        return ObstructionVerdict(obstructed=True, degenerate_input=False,
                                  xi=xi, solution_dimension=0)

    params = [f"t{r + 1}" for r in range(len(solutions))]
    entries = [[Polynomial.constant(0, params) for _ in range(d)] for _ in range(d)]
    for r, sol in enumerate(solutions):
        exp = tuple(1 if s == r else 0 for s in range(len(solutions)))
        for (a, b), value in zip(unknowns, sol):
            if value == 0:
                continue
            mono = Polynomial(params, {exp: value})
            entries[a][b] = entries[a][b] + mono
            if a != b:
                entries[b][a] = entries[b][a] + mono
    determinant = _poly_det(entries)
    return ObstructionVerdict(obstructed=determinant.is_zero(),
                              degenerate_input=False, xi=xi,
                              solution_dimension=len(solutions))


@dataclass(frozen=True)
class ObstructionVerdict:
    obstructed: bool
    degenerate_input: bool
    xi: list | None
    solution_dimension: int


def _poly_det(entries) -> Polynomial:
    d = len(entries)
    total = None
    for perm in itertools.permutations(range(d)):
        sign = _perm_sign(perm)
        product = None
        for i in range(d):
            cell = entries[i][perm[i]]
            if cell.is_zero():
                product = None
                break
            product = cell if product is None else product * cell
        if product is None:
            continue
        signed = product if sign > 0 else -product
        total = signed if total is None else total + signed
    if total is None:
        return Polynomial.constant(0, entries[0][0].variables)
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        pos = start
        while not seen[pos]:
            seen[pos] = True
            pos = perm[pos]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- serialization and the packaged examples -------------------------------------------

def chart_from_json(data: dict) -> Chart:
    try:
        coords = tuple(data["coords"])
    except KeyError:
        raise ChartFormatError("chart file is missing 'coords'") from None
    if len(coords) % 2 != 0 or not coords:
        raise ChartFormatError("charts need a positive even number of coordinates")

    def parse(text, context):
        try:
            return parse_ratfun(str(text), coords)
        except ValueError as err:
            raise ChartFormatError(f"{context}: {err}") from None

    omega_entries = {}
    for key, text in data.get("omega", {}).items():
        parts = key.split(",")
        if len(parts) != 2:
            raise ChartFormatError(f"bad omega key {key!r}")
        i, j = (int(p) - 1 for p in parts)
        if not (0 <= i < len(coords) and 0 <= j < len(coords)):
            raise ChartFormatError(f"omega key {key!r} out of range")
        omega_entries[(i, j)] = parse(text, f"omega[{key}]")
    christoffel_entries = {}
    for key, text in data.get("christoffel", {}).items():
        parts = key.split(",")
        if len(parts) != 3:
            raise ChartFormatError(f"bad christoffel key {key!r}")
        k, i, j = (int(p) - 1 for p in parts)
        if not all(0 <= v < len(coords) for v in (k, i, j)):
            raise ChartFormatError(f"christoffel key {key!r} out of range")
        christoffel_entries[(k, i, j)] = parse(text, f"christoffel[{key}]")
    fields = {}
    for name, field_data in data.get("fields", {}).items():
        valence = tuple(field_data.get("valence", []))
        dim = len(coords)
        zero = RationalFunction.constant(0, coords)
        comps = [zero] * (dim ** len(valence))
        for key, text in field_data.get("components", {}).items():
            idx = tuple(int(p) - 1 for p in key.split(","))
            if len(idx) != len(valence) or any(i < 0 or i >= dim for i in idx):
                raise ChartFormatError(f"field {name!r}: bad component key {key!r}")
            flat = 0
            for i in idx:
                flat = flat * dim + i
            comps[flat] = parse(text, f"fields[{name!r}][{key}]")
        fields[name] = Tensor(dim, valence, comps)
    return make_chart(coords, omega_entries, christoffel_entries, fields,
                      excluded_locus=data.get("excluded_locus", ""))


def chart_to_json(chart: Chart) -> dict:
    d = chart.dim
    omega = {}
    for i in range(d):
        for j in range(i + 1, d):
            if not chart.omega[i][j].is_zero():
                omega[f"{i + 1},{j + 1}"] = str(chart.omega[i][j])
    christoffel = {}
    for k in range(d):
        for i in range(d):
            for j in range(d):
                if not chart.christoffel[k][i][j].is_zero():
                    christoffel[f"{k + 1},{i + 1},{j + 1}"] = str(chart.christoffel[k][i][j])
    fields = {}
    for name, tensor in chart.fields.items():
        comps = {}
        for idx in tensor.indices():
            value = tensor[idx]
            if not value.is_zero():
                comps[",".join(str(i + 1) for i in idx)] = str(value)
        fields[name] = {"valence": list(tensor.valence), "components": comps}
    out = {"coords": list(chart.coords), "omega": omega, "christoffel": christoffel}
    if fields:
        out["fields"] = fields
    if chart.excluded_locus:
        out["excluded_locus"] = chart.excluded_locus
    return out


def load_chart_file(path) -> Chart:
    with open(path, "r", encoding="utf-8") as handle:
        return chart_from_json(json.load(handle))


EXAMPLE_FILES = {
    "example1": "example1.json",
    "example1-emended": "example1_emended.json",
    "example2": "example2.json",
}


def _load_fixture(name: str) -> dict:
    text = resources.files("fedosov.data").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def load_example(which: int | str, emended: bool = False) -> Chart:
    """Load a built-in example chart.

    `load_example(1)` is the half-plane chart exactly as printed (whose
    signs fail the torsion-free and parallel-omega checks);
    `load_example(1, emended=True)` re-runs the exhaustive sign search and
    returns the unique repaired variant.  `load_example(2)` needs no
    emendation.
    """
    key = {1: "example1", 2: "example2",
           "example1": "example1", "example2": "example2",
           "example1-emended": "example1-emended"}.get(which)
    if key is None:
        raise ValueError(f"unknown example {which!r}")
    if key == "example1" and emended:
        return emend_chart_signs(load_example(1))
    if key == "example1-emended":
        return emend_chart_signs(load_example(1))
    return chart_from_json(_load_fixture(EXAMPLE_FILES[key]))


def emend_chart_signs(chart: Chart) -> Chart:
    """Exhaustive sign search over the nonzero Christoffel entries.

    Returns the unique sign assignment under which the connection is
    torsion-free and makes omega parallel; raises if no assignment or more
    than one works.
    """
    entries = [(k, i, j) for k in range(chart.dim)
               for i in range(chart.dim) for j in range(chart.dim)
               if not chart.christoffel[k][i][j].is_zero()]
    winners = []
    for signs in itertools.product((1, -1), repeat=len(entries)):
        candidate = make_chart(
            chart.coords,
            {(i, j): chart.omega[i][j]
             for i in range(chart.dim) for j in range(i + 1, chart.dim)},
            {(k, i, j): (chart.christoffel[k][i][j] if s == 1
                         else -chart.christoffel[k][i][j])
             for (k, i, j), s in zip(entries, signs)},
            fields=chart.fields,
            excluded_locus=chart.excluded_locus)
        if not chart_torsion(candidate).is_zero():
            continue
        if not covariant_derivative(candidate, omega_tensor(candidate)).is_zero():
            continue
        winners.append(candidate)
    if len(winners) != 1:
        raise ValueError(f"sign search found {len(winners)} admissible variants, "
                         "expected exactly one")
    return winners[0]
