"""Symplectic vector spaces, dense tensors and the index calculus between pictures.

Conventions fixed here and used everywhere else:

* The standard symplectic basis (e_1, ..., e_n, e_{n+1}, ..., e_{2n})
  satisfies omega(e_i, e_{i+n}) = 1 for 1 <= i <= n and every other basis
  pairing in the upper triangle is 0.  Indices are 0-based in code, 1-based
  in serialized form and error messages.

* A (1,2)-tensor written A_X Y is stored with slot order (X, Y, output);
  a (1,3)-tensor written A_XY Z with slot order (X, Y, Z, output).

* Lowering conventions relating the (1,2) and (0,3) pictures:
  torsion-like   T(X,Y,Z) = omega(T_X Y, Z)      (antisymmetric in X, Y),
  cotorsion-like S(X,Y,Z) = omega(S_Z X, Y)      (symmetric in X, Y exactly
  when each endomorphism S_Z is in the symplectic Lie algebra).

Tensors are dense: at n = 4 a (0,3)-tensor has 512 entries, so sparsity
machinery would be unjustified.  Components may be `Fraction` (constant
tensors) or `RationalFunction` (coordinate fields); all operations are pure
and instances are treated as immutable once built.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg
from .linalg import is_zero_scalar

COV = "cov"
CON = "con"


class SymplecticSpace:
    """R^{2n} with the standard symplectic form."""

    __slots__ = ("n", "dim", "omega", "omega_inv")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("half-dimension must be a positive integer")
        self.n = n
        self.dim = 2 * n
        zero = Fraction(0)
        one = Fraction(1)
        omega = [[zero] * self.dim for _ in range(self.dim)]
        for i in range(n):
            omega[i][i + n] = one
            omega[i + n][i] = -one
        self.omega = tuple(tuple(row) for row in omega)
        # For the standard block form, omega^2 = -Id.
        self.omega_inv = tuple(tuple(-x for x in row) for row in omega)

    def pairing(self, u: Sequence, v: Sequence):
        """omega(u, v) for coordinate vectors."""
        total = Fraction(0)
        for i, ui in enumerate(u):
            if is_zero_scalar(ui):
                continue
            row = self.omega[i]
            for j, vj in enumerate(v):
                if not is_zero_scalar(vj) and row[j] != 0:
                    total = total + ui * row[j] * vj
        return total

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and other.n == self.n

    def __hash__(self):
        return hash(("SymplecticSpace", self.n))

    def __repr__(self):
        return f"SymplecticSpace(n={self.n})"


class Tensor:
    """Dense multi-index array with a declared covariant/contravariant valence."""

    __slots__ = ("dim", "valence", "comps", "space")

    def __init__(self, dim: int, valence: Sequence[str], comps: list,
                 space: SymplecticSpace | None = None):
        self.dim = dim
        self.valence = tuple(valence)
        for kind in self.valence:
            if kind not in (COV, CON):
                raise ValueError(f"bad slot kind {kind!r}")
        expected = dim ** len(self.valence)
        if len(comps) != expected:
            raise ValueError(f"expected {expected} components, got {len(comps)}")
        self.comps = comps
        self.space = space
        if space is not None and space.dim != dim:
            raise ValueError("space dimension does not match tensor dimension")

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, dim: int, valence: Sequence[str], *, zero=Fraction(0),
              space: SymplecticSpace | None = None) -> Tensor:
        return cls(dim, valence, [zero] * (dim ** len(valence)), space=space)

    @classmethod
    def build(cls, dim: int, valence: Sequence[str], fn: Callable[..., object],
              *, space: SymplecticSpace | None = None) -> Tensor:
        """Componentwise constructor: fn(*indices) -> scalar."""
        comps = [fn(*idx) for idx in itertools.product(range(dim), repeat=len(valence))]
        return cls(dim, valence, comps, space=space)

    # -- indexing ----------------------------------------------------------

    def _flat(self, idx: tuple[int, ...]) -> int:
        flat = 0
        for i in idx:
            flat = flat * self.dim + i
        return flat

    def __getitem__(self, idx: tuple[int, ...]):
        return self.comps[self._flat(idx)]

    def indices(self):
        return itertools.product(range(self.dim), repeat=len(self.valence))

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: Tensor):
        if self.dim != other.dim or self.valence != other.valence:
            raise ValueError("tensors have different shape or valence")

    def __add__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(self.dim, self.valence,
                      [a + b for a, b in zip(self.comps, other.comps)],
                      space=self.space or other.space)

    def __sub__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(self.dim, self.valence,
                      [a - b for a, b in zip(self.comps, other.comps)],
                      space=self.space or other.space)

    def __neg__(self) -> Tensor:
        return Tensor(self.dim, self.valence, [-a for a in self.comps], space=self.space)

    def scale(self, c) -> Tensor:
        return Tensor(self.dim, self.valence, [c * a for a in self.comps], space=self.space)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if self.dim != other.dim or self.valence != other.valence:
            return False
        return all(is_zero_scalar(a - b) for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(is_zero_scalar(c) for c in self.comps)

    def first_nonzero(self) -> tuple[tuple[int, ...], object] | None:
        """First (multi-index, value) with a nonzero value, indices 0-based."""
        for idx in self.indices():
            v = self[idx]
            if not is_zero_scalar(v):
                return idx, v
        return None

    # -- symmetry -----------------------------------------------------------

    def _swapped(self, a: int, b: int, idx: tuple[int, ...]) -> tuple[int, ...]:
        swapped = list(idx)
        swapped[a], swapped[b] = swapped[b], swapped[a]
        return tuple(swapped)

    def is_symmetric_in(self, a: int, b: int) -> bool:
        return all(is_zero_scalar(self[idx] - self[self._swapped(a, b, idx)])
                   for idx in self.indices())

    def is_antisymmetric_in(self, a: int, b: int) -> bool:
        return all(is_zero_scalar(self[idx] + self[self._swapped(a, b, idx)])
                   for idx in self.indices())

    def first_symmetry_violation(self, a: int, b: int, *, anti: bool) -> tuple[int, ...] | None:
        for idx in self.indices():
            other = self[self._swapped(a, b, idx)]
            bad = self[idx] + other if anti else self[idx] - other
            if not is_zero_scalar(bad):
                return idx
        return None

    def map_components(self, fn: Callable[[object], object]) -> Tensor:
        return Tensor(self.dim, self.valence, [fn(c) for c in self.comps], space=self.space)

    def __repr__(self):
        nz = sum(1 for c in self.comps if not is_zero_scalar(c))
        return f"Tensor(dim={self.dim}, valence={self.valence}, nonzero={nz})"


def _resolve_omega(t: Tensor, omega):
    if omega is not None:
        return omega
    if t.space is None:
        raise ValueError("tensor has no symplectic space and no omega was supplied")
    return t.space.omega


def _omega_inverse(omega) -> list[list]:
    return linalg.inverse([list(row) for row in omega])


# -- musical isomorphisms ---------------------------------------------------

def musical_flat(space: SymplecticSpace, vector: Sequence) -> list:
    """X -> X* with X*(Y) = omega(X, Y); returns covector components."""
    return [space.pairing(vector, _unit(space.dim, j)) for j in range(space.dim)]


def musical_sharp(space: SymplecticSpace, covector: Sequence) -> list:
    """Inverse of `musical_flat`."""
    # alpha_j = sum_i X^i omega_ij  =>  X = (omega^T)^{-1} alpha = -omega_inv^T... solved directly:
    # X^m = sum_j alpha_j (omega^{-1})_jm
    inv = space.omega_inv
    return [sum((covector[j] * inv[j][m] for j in range(space.dim)), Fraction(0))
            for m in range(space.dim)]


def _unit(dim: int, i: int) -> list[Fraction]:
    vec = [Fraction(0)] * dim
    vec[i] = Fraction(1)
    return vec


# -- raising and lowering ----------------------------------------------------

def torsion_lower(t: Tensor, omega=None) -> Tensor:
    """(1,2) antisymmetric T_X Y  ->  (0,3) with T(X,Y,Z) = omega(T_X Y, Z)."""
    if t.valence != (COV, COV, CON):
        raise ValueError("expected a (1,2)-tensor with valence (cov, cov, con)")
    bad = t.first_symmetry_violation(0, 1, anti=True)
    if bad is not None:
        raise ValueError(f"tensor is not antisymmetric in its arguments at {_one_based(bad)}")
    omega = _resolve_omega(t, omega)
    d = t.dim

    def entry(i, j, k):
        return sum((t[i, j, l] * omega[l][k] for l in range(d)
                    if not is_zero_scalar(t[i, j, l])), Fraction(0))

    return Tensor.build(d, (COV, COV, COV), entry, space=t.space)


def torsion_raise(t: Tensor, omega=None) -> Tensor:
    """Inverse of `torsion_lower`."""
    if t.valence != (COV, COV, COV):
        raise ValueError("expected a (0,3)-tensor")
    omega = _resolve_omega(t, omega)
    inv = t.space.omega_inv if (t.space is not None and omega is t.space.omega) \
        else _omega_inverse(omega)
    d = t.dim

    def entry(i, j, l):
        return sum((t[i, j, k] * inv[k][l] for k in range(d)
                    if not is_zero_scalar(t[i, j, k])), Fraction(0))

    return Tensor.build(d, (COV, COV, CON), entry, space=t.space)


def cotorsion_lower(t: Tensor, omega=None) -> Tensor:
    """(1,2) S_Z X -> (0,3) with S(X,Y,Z) = omega(S_Z X, Y).

    The subscript slot of S is the first storage slot, so the component
    S(X,Y,Z) reads storage index (Z, X, output) contracted with omega.
    """
    if t.valence != (COV, COV, CON):
        raise ValueError("expected a (1,2)-tensor with valence (cov, cov, con)")
    omega = _resolve_omega(t, omega)
    d = t.dim

    def entry(i, j, k):
        return sum((t[k, i, l] * omega[l][j] for l in range(d)
                    if not is_zero_scalar(t[k, i, l])), Fraction(0))

    return Tensor.build(d, (COV, COV, COV), entry, space=t.space)


def cotorsion_raise(t: Tensor, omega=None) -> Tensor:
    """Inverse of `cotorsion_lower`."""
    if t.valence != (COV, COV, COV):
        raise ValueError("expected a (0,3)-tensor")
    omega = _resolve_omega(t, omega)
    inv = t.space.omega_inv if (t.space is not None and omega is t.space.omega) \
        else _omega_inverse(omega)
    d = t.dim

    def entry(k, i, l):
        # S(X=i, Y=j, Z=k) = sum_l storage[k][i][l] omega[l][j]
        return sum((t[i, j, k] * inv[j][l] for j in range(d)
                    if not is_zero_scalar(t[i, j, k])), Fraction(0))

    return Tensor.build(d, (COV, COV, CON), entry, space=t.space)


# -- contractions -------------------------------------------------------------

def _require_n(t: Tensor) -> int:
    if t.dim % 2 != 0:
        raise ValueError("tensor dimension is odd; no symplectic half-dimension")
    return t.dim // 2


def contract_s13(t: Tensor) -> list:
    """s13(S)(Z) = sum_i (S(e_i, Z, e_{i+n}) - S(e_{i+n}, Z, e_i)) for symmetric S."""
    if t.valence != (COV, COV, COV):
        raise ValueError("expected a (0,3)-tensor")
    bad = t.first_symmetry_violation(0, 1, anti=False)
    if bad is not None:
        raise ValueError(f"tensor is not symmetric in slots (1,2) at {_one_based(bad)}")
    n = _require_n(t)
    return [sum((t[i, z, i + n] - t[i + n, z, i] for i in range(n)), Fraction(0))
            for z in range(t.dim)]


def contract_t12(t: Tensor) -> list:
    """t12(T)(Z) = sum_i T(e_i, e_{i+n}, Z) for T antisymmetric in (1,2)."""
    if t.valence != (COV, COV, COV):
        raise ValueError("expected a (0,3)-tensor")
    bad = t.first_symmetry_violation(0, 1, anti=True)
    if bad is not None:
        raise ValueError(f"tensor is not antisymmetric in slots (1,2) at {_one_based(bad)}")
    n = _require_n(t)
    return [sum((t[i, i + n, z] for i in range(n)), Fraction(0)) for z in range(t.dim)]


def contract_t13(t: Tensor) -> list:
    """t13(T)(Y) = sum_i (T(e_i, Y, e_{i+n}) - T(e_{i+n}, Y, e_i)) for antisymmetric T."""
    if t.valence != (COV, COV, COV):
        raise ValueError("expected a (0,3)-tensor")
    bad = t.first_symmetry_violation(0, 1, anti=True)
    if bad is not None:
        raise ValueError(f"tensor is not antisymmetric in slots (1,2) at {_one_based(bad)}")
    n = _require_n(t)
    return [sum((t[i, y, i + n] - t[i + n, y, i] for i in range(n)), Fraction(0))
            for y in range(t.dim)]


def cyclic_sum(t: Tensor) -> Tensor:
    """(cyclic_sum A)(X,Y,Z) = A(X,Y,Z) + A(Y,Z,X) + A(Z,X,Y)."""
    if t.valence != (COV, COV, COV):
        raise ValueError("expected a (0,3)-tensor")
    return Tensor.build(t.dim, t.valence,
                        lambda i, j, k: t[i, j, k] + t[j, k, i] + t[k, i, j],
                        space=t.space)


# -- change of basis -----------------------------------------------------------

def change_basis(t: Tensor, basis_matrix: Sequence[Sequence], basis_inverse=None) -> Tensor:
    """Components in the basis whose vectors are the columns of `basis_matrix`.

    Covariant slots contract with the matrix, contravariant slots with its
    inverse: T'(a...) = sum T(i...) M[i][a] ... Minv[b][j] ...
    """
    d = t.dim
    m = [list(row) for row in basis_matrix]
    minv = [list(row) for row in (basis_inverse if basis_inverse is not None
                                  else linalg.inverse(m))]
    current = t
    for slot, kind in enumerate(t.valence):
        matrix = m if kind == COV else minv
        comps = []
        for idx in current.indices():
            total = Fraction(0)
            for l in range(d):
                src = list(idx)
                src[slot] = l
                value = current[tuple(src)]
                if is_zero_scalar(value):
                    continue
                factor = matrix[l][idx[slot]] if kind == COV else matrix[idx[slot]][l]
                if is_zero_scalar(factor):
                    continue
                total = total + value * factor
            comps.append(total)
        current = Tensor(d, t.valence, comps, space=t.space)
    return current


def is_symplectic_matrix(space: SymplecticSpace, matrix: Sequence[Sequence]) -> bool:
    """M^T omega M = omega, i.e. the columns form a symplectic basis."""
    mt = linalg.transpose(matrix)
    product = linalg.matmul(linalg.matmul(mt, [list(r) for r in space.omega]), matrix)
    return all(product[i][j] == space.omega[i][j]
               for i in range(space.dim) for j in range(space.dim))


# -- serialization --------------------------------------------------------------

def _one_based(idx: Iterable[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in idx)


def tensor_to_json(t: Tensor) -> dict:
    """JSON form: 1-based comma-joined index keys, `p/q` strings, zeros omitted."""
    components = {}
    for idx in t.indices():
        v = t[idx]
        if not is_zero_scalar(v):
            components[",".join(str(i + 1) for i in idx)] = str(v)
    return {"n": t.dim // 2, "valence": list(t.valence), "components": components}


def tensor_from_json(data: dict, *, space: SymplecticSpace | None = None,
                     parse_scalar: Callable[[str], object] | None = None,
                     zero=Fraction(0)) -> Tensor:
    """Inverse of `tensor_to_json`; `parse_scalar` defaults to Fraction parsing."""
    n = int(data["n"])
    dim = 2 * n
    valence = tuple(data["valence"])
    if space is not None and space.n != n:
        raise ValueError(f"tensor declares n={n} but space has n={space.n}")
    parse = parse_scalar if parse_scalar is not None else Fraction
    t = Tensor.zeros(dim, valence, zero=zero, space=space)
    comps = list(t.comps)
    for key, text in data.get("components", {}).items():
        idx = tuple(int(part) - 1 for part in key.split(","))
        if len(idx) != len(valence) or any(i < 0 or i >= dim for i in idx):
            raise ValueError(f"bad component index {key!r} for dimension {dim}")
        flat = 0
        for i in idx:
            flat = flat * dim + i
        comps[flat] = parse(text)
    return Tensor(dim, valence, comps, space=space)
