"""Exact integer linear algebra: Smith normal form, finitely generated abelian groups, homomorphisms,
chain complexes and exactness checks.

Integer matrices are numpy arrays with ``dtype=object`` so every entry is an arbitrary-precision Python integer.
Groups are stored in coordinate form, ``Z/m_1 + ... + Z/m_k`` with ``m_i = 0`` for an infinite cyclic coordinate;
their invariant factors are computed from the Smith normal form on demand.
"""

__all__ = [
    "int_matrix",
    "zeros",
    "identity",
    "matmul",
    "block_matrix",
    "SmithDecomposition",
    "smith_normal_form",
    "integer_kernel",
    "solve_integer",
    "FGAbelianGroup",
    "AbHom",
    "cokernel",
    "kernel",
    "image",
    "subgroup",
    "quotient",
    "HomologyData",
    "ChainComplexAb",
    "homology",
    "induced_map_on_homology",
    "JunctionVerdict",
    "ExactnessReport",
    "verify_exact",
]

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import ENUMERATION_LIMIT
from .utils import StructuralError, format_group

# pylint: disable=invalid-name


# -------------------------------------------------------------------------------------------------------------------
# Integer matrices
def int_matrix(data, shape=None):
    """
    Convert nested lists (or an array) into an exact integer matrix

    Parameters
    ----------
    data : list of lists or numpy.ndarray
        Row-major entries
    shape : tuple
        Shape to use when ``data`` is empty (eg a 3x0 matrix)

    Returns
    -------
    numpy.ndarray of Python integers (dtype=object)
    """
    if data is None or (not isinstance(data, np.ndarray) and len(data) == 0):
        if shape is None:
            raise ValueError("Empty matrix data needs an explicit shape")
        return zeros(*shape)

    arr = np.array(data, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if shape is None else arr.reshape(shape)
    if arr.ndim != 2:
        raise ValueError(f"Matrix data must be two-dimensional, got {arr.ndim} dimensions")
    if shape is not None and arr.shape != tuple(shape):
        if arr.size == 0:
            return zeros(*shape)
        raise ValueError(f"Matrix has shape {arr.shape}, expected {tuple(shape)}")

    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = int(arr[idx])
    return out


def zeros(rows, cols):
    """Zero integer matrix"""
    return np.zeros((rows, cols), dtype=object)


def identity(size):
    """Identity integer matrix"""
    out = zeros(size, size)
    for i in range(size):
        out[i, i] = 1
    return out


def matmul(a, b):
    """Exact matrix product; empty inner dimensions give a zero matrix"""
    if a.shape[1] != b.shape[0]:
        raise StructuralError(f"Cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def _apply(matrix, vector):
    """Matrix times a coordinate vector, returned as a list of integers"""
    column = np.array(list(vector), dtype=object).reshape(-1, 1)
    if column.shape[0] == 0:
        column = zeros(0, 1)
    return [int(x) for x in matmul(matrix, column)[:, 0]]


def block_matrix(blocks, row_sizes, col_sizes):
    """
    Assemble a matrix from a grid of blocks

    Parameters
    ----------
    blocks : list of lists
        ``blocks[i][j]`` is a matrix of shape (row_sizes[i], col_sizes[j]) or None for a zero block
    row_sizes : list of int
    col_sizes : list of int

    Returns
    -------
    numpy.ndarray
    """
    out = zeros(sum(row_sizes), sum(col_sizes))
    row = 0
    for i, rsize in enumerate(row_sizes):
        col = 0
        for j, csize in enumerate(col_sizes):
            block = blocks[i][j]
            if block is not None and rsize and csize:
                if block.shape != (rsize, csize):
                    raise StructuralError(f"Block ({i}, {j}) has shape {block.shape}, expected {(rsize, csize)}")
                out[row : row + rsize, col : col + csize] = block
            col += csize
        row += rsize
    return out


# -------------------------------------------------------------------------------------------------------------------
# Smith normal form
@dataclass(eq=False)
class SmithDecomposition:
    """Result of :func:`smith_normal_form`: ``U @ A @ V == D`` with U, V unimodular"""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray

    @property
    def diagonal(self):
        """Diagonal entries d_1 | d_2 | ... (length min(rows, cols))"""
        return [int(self.D[i, i]) for i in range(min(self.D.shape))]

    @property
    def rank(self):
        """Number of nonzero diagonal entries"""
        return sum(1 for d in self.diagonal if d != 0)


def _find_pivot(D, t):
    # Smallest absolute value, ties broken by row then column
    best = None
    rows, cols = D.shape
    for i in range(t, rows):
        for j in range(t, cols):
            value = D[i, j]
            if value != 0 and (best is None or abs(value) < abs(D[best[0], best[1]])):
                best = (i, j)
    return best


def smith_normal_form(matrix):
    """
    Smith normal form of an integer matrix

    Parameters
    ----------
    matrix : array-like
        Integer matrix A

    Returns
    -------
    SmithDecomposition
        ``U @ A @ V == D`` with D diagonal, d_1 | d_2 | ..., all d_i >= 0
    """
    A = int_matrix(matrix) if not isinstance(matrix, np.ndarray) else int_matrix(matrix, shape=matrix.shape)
    rows, cols = A.shape
    D = A.copy()
    U = identity(rows)
    U_inv = identity(rows)
    V = identity(cols)

    t = 0
    while t < min(rows, cols):
        pivot = _find_pivot(D, t)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != t:
                D[[t, i], :] = D[[i, t], :]
                U[[t, i], :] = U[[i, t], :]
                U_inv[:, [t, i]] = U_inv[:, [i, t]]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]
            p = D[t, t]

            clean = True
            for i in range(t + 1, rows):
                q = D[i, t] // p
                if q:
                    D[i, :] = D[i, :] - q * D[t, :]
                    U[i, :] = U[i, :] - q * U[t, :]
                    U_inv[:, t] = U_inv[:, t] + q * U_inv[:, i]
                if D[i, t] != 0:
                    clean = False
            for j in range(t + 1, cols):
                q = D[t, j] // p
                if q:
                    D[:, j] = D[:, j] - q * D[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]
                if D[t, j] != 0:
                    clean = False
            if not clean:
                pivot = _find_pivot(D, t)
                continue

            # Every remaining entry must be divisible by the pivot
            offender = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i, j] % p != 0), None
            )
            if offender is None:
                break
            i = offender[0]
            D[t, :] = D[t, :] + D[i, :]
            U[t, :] = U[t, :] + U[i, :]
            U_inv[:, i] = U_inv[:, i] - U_inv[:, t]
            pivot = _find_pivot(D, t)

        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]
            U_inv[:, t] = -U_inv[:, t]
        t += 1

    return SmithDecomposition(U=U, D=D, V=V, U_inv=U_inv)


def integer_kernel(matrix):
    """
    Basis of the integer null space ``{x : A x = 0}``

    Returns
    -------
    numpy.ndarray
        Matrix whose columns form a basis (shape cols x nullity)
    """
    decomposition = smith_normal_form(matrix)
    return decomposition.V[:, decomposition.rank :].copy()


def solve_integer(matrix, target):
    """
    One integer solution of ``A x = b``

    Parameters
    ----------
    matrix : numpy.ndarray
        Integer matrix A
    target : sequence of int
        Right-hand side b

    Returns
    -------
    list of int, or None when no integer solution exists
    """
    A = matrix
    rows, cols = A.shape
    target = [int(b) for b in target]
    if len(target) != rows:
        raise StructuralError(f"Right-hand side has length {len(target)}, expected {rows}")

    decomposition = smith_normal_form(A)
    c = _apply(decomposition.U, target)
    diagonal = decomposition.diagonal
    rank = decomposition.rank
    y = [0] * cols
    for i in range(rank):
        if c[i] % diagonal[i] != 0:
            return None
        y[i] = c[i] // diagonal[i]
    if any(c[i] != 0 for i in range(rank, rows)):
        return None
    return _apply(decomposition.V, y)


# -------------------------------------------------------------------------------------------------------------------
# Finitely generated abelian groups
class FGAbelianGroup:
    """
    Finitely generated abelian group ``Z/m_1 + ... + Z/m_k`` in coordinate form.

    A coordinate with modulus 0 is an infinite cyclic summand. Groups produced by :func:`cokernel` are in
    canonical form (free coordinates first, then the invariant factors t_1 | t_2 | ...) and remember the
    presentation they came from together with the change of basis to and from the presentation generators.

    Equality compares coordinate moduli only, so two groups with identical coordinates are interchangeable as
    sources and targets of homomorphisms. Use :meth:`is_isomorphic` to compare up to isomorphism.
    """

    def __init__(self, moduli=(), labels=None, presentation=None, basis_map=None, section=None):
        """
        Parameters
        ----------
        moduli : sequence of int
            Order of each cyclic coordinate, 0 for an infinite cyclic coordinate
        labels : sequence of str
            Names of the coordinate generators. Default: g0, g1, ...
        presentation : numpy.ndarray
            Presentation matrix this group is the cokernel of, if any
        basis_map : numpy.ndarray
            Matrix sending presentation generator coordinates to this group's coordinates
        section : numpy.ndarray
            Matrix sending this group's coordinates back to presentation generator coordinates
        """
        self.moduli = tuple(int(m) for m in moduli)
        if any(m < 0 for m in self.moduli):
            raise ValueError(f"Moduli must be non-negative, got {self.moduli}")
        if labels is None:
            labels = [f"g{i}" for i in range(len(self.moduli))]
        self.labels = tuple(str(s) for s in labels)
        if len(self.labels) != len(self.moduli):
            raise ValueError(f"Got {len(self.labels)} labels for {len(self.moduli)} coordinates")
        self.presentation = presentation
        self.basis_map = basis_map
        self.section = section

    @classmethod
    def trivial(cls):
        """The zero group"""
        return cls(())

    @classmethod
    def cyclic(cls, order, label="g0"):
        """Cyclic group Z/order (order 0 means Z)"""
        if order == 1:
            return cls.trivial()
        return cls((order,), labels=[label])

    @classmethod
    def direct_sum(cls, *groups):
        """Direct sum, concatenating coordinates"""
        moduli = []
        labels = []
        for group in groups:
            moduli.extend(group.moduli)
            labels.extend(group.labels)
        return cls(moduli, labels=labels)

    # Basic structure
    @property
    def ngens(self):
        """Number of coordinates"""
        return len(self.moduli)

    @cached_property
    def _invariants(self):
        diagonal = smith_normal_form(np.diag(np.array(self.moduli, dtype=object)).reshape(self.ngens, self.ngens))
        factors = diagonal.diagonal
        rank = sum(1 for d in factors if d == 0)
        torsion = sorted(d for d in factors if d > 1)
        return rank, tuple(torsion)

    @property
    def rank(self):
        """Number of infinite cyclic summands"""
        return self._invariants[0]

    @property
    def torsion(self):
        """Invariant factors t_1 | t_2 | ... (each >= 2)"""
        return list(self._invariants[1])

    @property
    def invariants(self):
        """(rank, torsion) pair; equal for isomorphic groups"""
        return self._invariants

    @property
    def is_finite(self):
        return self.rank == 0

    @property
    def order(self):
        """Group order, or None when the group is infinite"""
        if not self.is_finite:
            return None
        return math.prod(self.torsion)

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def is_isomorphic(self, other):
        return self.invariants == other.invariants

    def __eq__(self, other):
        if not isinstance(other, FGAbelianGroup):
            return NotImplemented
        return self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __str__(self):
        return format_group(self.rank, self.torsion)

    def __repr__(self):
        return f"FGAbelianGroup({str(self)}, coordinates={self.moduli})"

    # Elements
    def reduce(self, vector):
        """Reduce a coordinate vector componentwise"""
        vector = [int(x) for x in vector]
        if len(vector) != self.ngens:
            raise StructuralError(f"Element has {len(vector)} coordinates, group has {self.ngens}")
        return tuple(x % m if m else x for x, m in zip(vector, self.moduli))

    def zero(self):
        return tuple([0] * self.ngens)

    def basis_vector(self, index, coefficient=1):
        vector = [0] * self.ngens
        vector[index] = coefficient
        return self.reduce(vector)

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def scale(self, k, a):
        return self.reduce([k * x for x in a])

    def is_zero(self, vector):
        return all(x == 0 for x in self.reduce(vector))

    def relation_matrix(self):
        """Columns m_i e_i for every finite coordinate"""
        finite = [i for i, m in enumerate(self.moduli) if m > 0]
        out = zeros(self.ngens, len(finite))
        for col, i in enumerate(finite):
            out[i, col] = self.moduli[i]
        return out

    def elements(self, limit=ENUMERATION_LIMIT):
        """
        Enumerate all elements of a finite group

        Parameters
        ----------
        limit : int
            Refuse to enumerate groups larger than this

        Returns
        -------
        list of tuples
        """
        if not self.is_finite:
            raise ValueError(f"Cannot enumerate the infinite group {self}")
        if math.prod(m for m in self.moduli if m) > limit:
            raise ValueError(f"Group {self} has more than {limit} elements")
        return [tuple(x) for x in itertools.product(*[range(m) for m in self.moduli])]

    def canonical_key(self, vector):
        """Sort key for the deterministic coordinate lex order (free coordinates by size, then sign)"""
        key = []
        for x, m in zip(self.reduce(vector), self.moduli):
            key.append((x, 0) if m else (abs(x), 1 if x < 0 else 0))
        return tuple(key)

    def solve_in_span(self, generators, vector):
        """
        Coefficients c with ``generators @ c == vector`` in this group

        Parameters
        ----------
        generators : numpy.ndarray
            Matrix whose columns are elements of this group
        vector : sequence of int
            Element to express

        Returns
        -------
        list of int, or None when the element is not in the subgroup generated by the columns
        """
        relations = self.relation_matrix()
        stacked = np.hstack([generators, relations]) if generators.shape[1] else relations
        if stacked.shape[1] == 0:
            return [] if self.is_zero(vector) else None
        solution = solve_integer(stacked, list(vector))
        if solution is None:
            return None
        return solution[: generators.shape[1]]

    def format_element(self, vector):
        """Render an element using the coordinate labels, eg ``6ν`` or ``2y + x∘η²``"""
        terms = []
        for coefficient, label in zip(self.reduce(vector), self.labels):
            if coefficient == 0:
                continue
            if any(c in label for c in " +-"):
                label = f"({label})"
            if coefficient == 1:
                terms.append(("+", label))
            elif coefficient == -1:
                terms.append(("-", label))
            else:
                terms.append(("+" if coefficient > 0 else "-", f"{abs(coefficient)}{label}"))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, term in terms[1:]:
            text += f" {sign} {term}"
        return text

    def to_dict(self):
        return {"rank": self.rank, "torsion": self.torsion, "name": str(self)}


# -------------------------------------------------------------------------------------------------------------------
# Homomorphisms
class AbHom:
    """Homomorphism of finitely generated abelian groups, given by a matrix in coordinates"""

    def __init__(self, source, target, matrix, check=True):
        """
        Parameters
        ----------
        source : FGAbelianGroup
        target : FGAbelianGroup
        matrix : array-like
            Matrix of shape (target.ngens, source.ngens); column j is the image of source generator j
        check : bool
            Verify that the matrix respects the torsion of the source. Default: True
        """
        self.source = source
        self.target = target
        matrix = int_matrix(matrix, shape=(target.ngens, source.ngens))
        for j in range(source.ngens):
            matrix[:, j] = list(target.reduce(matrix[:, j]))
        self.matrix = matrix

        if check:
            for j, m in enumerate(source.moduli):
                if m and not target.is_zero([m * x for x in matrix[:, j]]):
                    raise StructuralError(
                        f"Matrix does not respect torsion: {m} * {source.labels[j]} must map to zero, "
                        f"got {target.format_element([m * x for x in matrix[:, j]])}"
                    )

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, zeros(target.ngens, source.ngens), check=False)

    @classmethod
    def identity(cls, group):
        return cls(group, group, identity(group.ngens), check=False)

    def __call__(self, vector):
        return self.target.reduce(_apply(self.matrix, self.source.reduce(vector)))

    def compose(self, other):
        """``self ∘ other``"""
        if other.target != self.source:
            raise StructuralError(f"Cannot compose {self} after {other}: {other.target!r} is not {self.source!r}")
        return AbHom(other.source, self.target, matmul(self.matrix, other.matrix), check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def _check_parallel(self, other):
        if self.source != other.source or self.target != other.target:
            raise StructuralError("Homomorphisms must share source and target")

    def __add__(self, other):
        self._check_parallel(other)
        return AbHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        self._check_parallel(other)
        return AbHom(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return AbHom(self.source, self.target, -self.matrix, check=False)

    def __eq__(self, other):
        if not isinstance(other, AbHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(self.matrix[idx] == other.matrix[idx] for idx in np.ndindex(self.matrix.shape))
        )

    __hash__ = None

    def is_zero(self):
        return all(x == 0 for x in self.matrix.flat)

    def __repr__(self):
        return f"AbHom({self.source} -> {self.target}, {self.matrix.tolist()})"


# -------------------------------------------------------------------------------------------------------------------
# Kernels, images, cokernels
def cokernel(matrix, labels=None, shape=None):
    """
    Abelian group presented by generators (rows) and relations (columns)

    Parameters
    ----------
    matrix : array-like
        Presentation matrix; column j is a relation among the row generators
    labels : sequence of str
        Names of the presentation generators, used to label the canonical generators
    shape : tuple
        Shape of the matrix if it is given empty

    Returns
    -------
    FGAbelianGroup
        Canonical form ``Z^rank + Z/t_1 + ... ``, with ``presentation``, ``basis_map`` and ``section`` populated
    """
    A = int_matrix(matrix, shape=shape) if shape is not None or not isinstance(matrix, np.ndarray) else matrix
    rows, cols = A.shape
    decomposition = smith_normal_form(A)
    diagonal = [decomposition.D[i, i] if i < cols else 0 for i in range(rows)]

    free = [i for i in range(rows) if diagonal[i] == 0]
    torsion = [i for i in range(rows) if diagonal[i] > 1]
    kept = free + torsion

    basis_map = decomposition.U[kept, :] if kept else zeros(0, rows)
    section = decomposition.U_inv[:, kept] if kept else zeros(rows, 0)

    presentation_group = FGAbelianGroup([0] * rows, labels=labels)
    canonical_labels = [presentation_group.format_element(section[:, k]) for k in range(len(kept))]
    return FGAbelianGroup(
        [int(diagonal[i]) for i in kept],
        labels=canonical_labels,
        presentation=A,
        basis_map=int_matrix(basis_map, shape=(len(kept), rows)),
        section=int_matrix(section, shape=(rows, len(kept))),
    )


def subgroup(group, generators):
    """Subgroup of ``group`` generated by the columns of ``generators``, with its inclusion"""
    count = generators.shape[1]
    relations = group.relation_matrix()
    stacked = np.hstack([generators, -relations]) if relations.shape[1] else generators
    if stacked.shape[1] == 0:
        relation_lattice = zeros(0, 0)
    else:
        relation_lattice = integer_kernel(stacked)[:count, :]
    sub = cokernel(relation_lattice, shape=(count, relation_lattice.shape[1]))
    inclusion = matmul(generators, sub.section)
    sub.labels = tuple(group.format_element(inclusion[:, k]) for k in range(sub.ngens))
    return sub, AbHom(sub, group, inclusion)


def kernel(hom):
    """
    Kernel of a homomorphism

    Returns
    -------
    (FGAbelianGroup, AbHom)
        The kernel and its inclusion into the source
    """
    source, target = hom.source, hom.target
    relations = target.relation_matrix()
    stacked = np.hstack([hom.matrix, -relations]) if relations.shape[1] else hom.matrix
    if source.ngens == 0:
        lifts = zeros(0, 0)
    else:
        lifts = integer_kernel(stacked)[: source.ngens, :]
    return subgroup(source, lifts)


def image(hom):
    """
    Image of a homomorphism

    Returns
    -------
    (FGAbelianGroup, AbHom)
        The image and its inclusion into the target
    """
    return subgroup(hom.target, hom.matrix)


def quotient(group, generators):
    """
    Quotient of a group by the subgroup generated by some of its elements

    Parameters
    ----------
    group : FGAbelianGroup
    generators : numpy.ndarray
        Matrix whose columns are the elements to divide out

    Returns
    -------
    (FGAbelianGroup, AbHom)
        The quotient and the projection onto it
    """
    relations = group.relation_matrix()
    parts = [m for m in (generators, relations) if m.shape[1]]
    presentation = np.hstack(parts) if parts else zeros(group.ngens, 0)
    result = cokernel(presentation, labels=group.labels, shape=presentation.shape)
    return result, AbHom(group, result, result.basis_map)


# -------------------------------------------------------------------------------------------------------------------
# Chain complexes
@dataclass(eq=False)
class HomologyData:
    """Homology at one index together with the data needed to compute induced maps"""

    group: FGAbelianGroup
    cycles: FGAbelianGroup
    inclusion: AbHom
    projection: AbHom

    def representative(self, index):
        """A cycle (in chain coordinates) representing canonical generator ``index`` of the homology"""
        lift = self.group.section[:, index] if self.group.section is not None else zeros(self.cycles.ngens, 1)
        return self.inclusion(list(lift))


class ChainComplexAb:
    """
    Chain (or cochain) complex of finitely generated abelian groups.

    Homological complexes carry differentials ``d_k: C_k -> C_{k-1}``; cohomological ones carry coboundaries
    ``d^k: C^k -> C^{k+1}``. In both cases ``differentials[k]`` is the map leaving index k. Indices outside the
    stored range hold the zero group, and missing differentials are zero maps.
    """

    def __init__(self, groups, differentials=None, cohomological=False, check=True):
        """
        Parameters
        ----------
        groups : list of FGAbelianGroup
            C_0, C_1, ...
        differentials : dict of int: AbHom
            Map leaving each index
        cohomological : bool
            Direction flag. Default: False (homological)
        check : bool
            Verify shapes and that consecutive differentials compose to zero. Default: True
        """
        self.groups = list(groups)
        self.cohomological = cohomological
        self.differentials = dict(differentials or {})
        if check:
            self._check()

    @property
    def step(self):
        return 1 if self.cohomological else -1

    def __len__(self):
        return len(self.groups)

    def group(self, index):
        if 0 <= index < len(self.groups):
            return self.groups[index]
        return FGAbelianGroup.trivial()

    def outgoing(self, index):
        """Differential leaving ``index`` (a zero map if none is stored)"""
        if index in self.differentials:
            return self.differentials[index]
        return AbHom.zero(self.group(index), self.group(index + self.step))

    def incoming(self, index):
        """Differential arriving at ``index``"""
        return self.outgoing(index - self.step)

    def _check(self):
        for index, hom in self.differentials.items():
            if hom.source != self.group(index) or hom.target != self.group(index + self.step):
                raise StructuralError(f"Differential at index {index} does not match the groups of the complex")
        for index in self.differentials:
            composite = self.outgoing(index + self.step).compose(self.outgoing(index))
            if not composite.is_zero():
                raise StructuralError(f"Differentials do not compose to zero at index {index}")

    def homology_data(self, index):
        return homology_data(self, index)

    def homology(self, index):
        return homology(self, index)


def homology_data(complex_, index):
    """Homology at ``index`` with cycles, inclusion and projection (see :class:`HomologyData`)"""
    chains = complex_.group(index)
    cycles, inclusion = kernel(complex_.outgoing(index))
    boundaries = complex_.incoming(index).matrix
    lifts = zeros(cycles.ngens, boundaries.shape[1])
    for j in range(boundaries.shape[1]):
        coefficients = chains.solve_in_span(inclusion.matrix, boundaries[:, j])
        if coefficients is None:
            raise StructuralError(f"Boundary {j} at index {index} is not a cycle")
        lifts[:, j] = coefficients
    group, projection = quotient(cycles, lifts)
    return HomologyData(group=group, cycles=cycles, inclusion=inclusion, projection=projection)


def homology(complex_, index):
    """
    Homology ``ker(d) / im(d)`` at one index of a complex

    Parameters
    ----------
    complex_ : ChainComplexAb
    index : int
        Index outside the complex gives the zero group

    Returns
    -------
    FGAbelianGroup
    """
    return homology_data(complex_, index).group


def induced_map_on_homology(chain_map, source_data, target_data):
    """
    Map on homology induced by a map of chains at one index

    Parameters
    ----------
    chain_map : AbHom
        Map between the chain groups that sends cycles to cycles and boundaries to boundaries
    source_data, target_data : HomologyData
        Homology at the source and target index

    Returns
    -------
    AbHom between the homology groups
    """
    target_chains = target_data.inclusion.target
    matrix = zeros(target_data.group.ngens, source_data.group.ngens)
    for k in range(source_data.group.ngens):
        value = chain_map(source_data.representative(k))
        coefficients = target_chains.solve_in_span(target_data.inclusion.matrix, value)
        if coefficients is None:
            raise StructuralError("Chain map does not send cycles to cycles")
        matrix[:, k] = list(target_data.projection(coefficients))
    return AbHom(source_data.group, target_data.group, matrix)


# -------------------------------------------------------------------------------------------------------------------
# Exactness
@dataclass
class JunctionVerdict:
    """Exactness verdict at the group between two consecutive maps"""

    index: int
    label: str
    exact: bool
    reason: str = ""
    witness: tuple = None
    witness_text: str = ""


@dataclass
class ExactnessReport:
    """Per-junction verdicts of :func:`verify_exact`"""

    junctions: list = field(default_factory=list)

    @property
    def exact(self):
        return all(j.exact for j in self.junctions)

    @property
    def failures(self):
        return [j for j in self.junctions if not j.exact]

    def to_dict(self):
        return {
            "exact": self.exact,
            "junctions": [
                {
                    "index": j.index,
                    "label": j.label,
                    "exact": j.exact,
                    "reason": j.reason,
                    "witness": list(j.witness) if j.witness is not None else None,
                    "witness_text": j.witness_text,
                }
                for j in self.junctions
            ],
        }


def verify_exact(sequence, labels=None):
    """
    Check a sequence of homomorphisms for exactness at every inner group

    Parameters
    ----------
    sequence : list of AbHom
        Consecutive maps f_0, f_1, ...; f_{i+1} must start where f_i ends
    labels : list of str
        Names of the junction groups (the target of each f_i except the last)

    Returns
    -------
    ExactnessReport
    """
    report = ExactnessReport()
    for i, (f, g) in enumerate(zip(sequence, sequence[1:])):
        if f.target != g.source:
            raise StructuralError(f"Maps {i} and {i + 1} are not composable")
        label = labels[i] if labels is not None else f"junction {i}"
        middle = f.target

        composite = g.compose(f)
        if not composite.is_zero():
            j = next(j for j in range(f.source.ngens) if not composite.target.is_zero(composite.matrix[:, j]))
            witness = f.source.basis_vector(j)
            report.junctions.append(
                JunctionVerdict(i, label, False, "image not contained in kernel", witness, f.source.format_element(witness))
            )
            continue

        cycles, inclusion = kernel(g)
        failure = None
        for k in range(cycles.ngens):
            element = middle.reduce(inclusion.matrix[:, k])
            if middle.solve_in_span(f.matrix, element) is None:
                failure = element
                break
        if failure is None:
            report.junctions.append(JunctionVerdict(i, label, True))
        else:
            report.junctions.append(
                JunctionVerdict(i, label, False, "kernel not contained in image", failure, middle.format_element(failure))
            )
    return report
