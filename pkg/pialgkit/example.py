"""
Worked example: the stable Pi-algebra of the real projective plane near the stable range, two maps from it to
the homotopy of a sphere, resolutions of both, and the brackets that decide whether the maps are realizable.

The same data ships as an input document, see :func:`example_path`.
"""

# pylint: disable=invalid-name

__all__ = [
    "example_path",
    "projective_plane",
    "sphere",
    "projective_plane_resolution",
    "sphere_resolution",
    "degree_one_map",
    "degree_two_map",
    "WorkedExample",
    "worked_example",
]

import os
from dataclasses import dataclass, field

from .abelian import FGAbelianGroup
from .pialg import PiMap, StablePiAlgebra, as_module, free_algebra, loop, loop_coefficients, restrict_scalars
from .resolution import FreeGradedModule, FreeModuleMap, FreeResolution
from .stems import StemTable
from .toda import BracketTriple, bracket

EXAMPLE_FILE = "rp2_example.json"

# Recorded readings of the bracket of eta, 2 and eta in the sphere
ETA_TWO_ETA_READINGS = {
    "ν + η³": [(1,), (13,)],
    "±ν": [(1,), (23,)],
    "ν, 12ν": [(1,), (12,)],
}


def example_path():
    """Location of the bundled input document"""
    return os.path.join(os.path.dirname(__file__), "data", EXAMPLE_FILE)


def projective_plane(stems=None):
    """
    Λ: Z/2⟨α⟩ in degree n, Z/2⟨αη⟩ in n+1 and Z/4⟨β⟩ in n+2, with ``(αη)∘η = 2β`` so that ``α∘η² = 2β``
    """
    stems = stems or StemTable.default()
    groups = {
        0: FGAbelianGroup([2], labels=["α"]),
        1: FGAbelianGroup([2], labels=["αη"]),
        2: FGAbelianGroup([4], labels=["β"]),
    }
    action = {(0, "η"): [[1]], (1, "η"): [[2]]}
    return StablePiAlgebra((0, 2), groups, action, stems=stems, name="Λ")


def sphere(stems=None):
    """The free algebra on one generator in degree n-1, kept up to degree n+2"""
    return free_algebra(-1, (-1, 2), stems=stems or StemTable.default(), name="S")


def degree_one_map(source, target):
    """φ: α ↦ η, αη ↦ η², β ↦ 6ν"""
    return PiMap(source, target, {0: [[1]], 1: [[1]], 2: [[6]]}, name="φ")


def degree_two_map(source, target):
    """ψ: α ↦ 0, αη ↦ 0, β ↦ 12ν"""
    return PiMap(source, target, {0: [[0]], 1: [[0]], 2: [[12]]}, name="ψ")


def projective_plane_resolution(algebra):
    """
    Resolution of Λ on generators x (n), y (n+2) with

    ``∂z = 2x``, ``∂w = 2y - x∘η²``, ``∂u = z∘η``, ``∂v = 2u``, ``∂s = v∘η``, ``∂t = 2s``
    """
    stems = algebra.stems
    levels = [
        [("x", 0), ("y", 2)],
        [("z", 0), ("w", 2)],
        [("u", 1)],
        [("v", 1)],
        [("s", 2)],
        [("t", 2)],
    ]
    modules = [FreeGradedModule(level, stems) for level in levels]
    boundaries = [
        {"z": [("x", "ι", 2)], "w": [("y", "ι", 2), ("x", "η²", -1)]},
        {"u": [("z", "η", 1)]},
        {"v": [("u", "ι", 2)]},
        {"s": [("v", "η", 1)]},
        {"t": [("s", "ι", 2)]},
    ]
    differentials = [
        FreeModuleMap.from_terms(modules[k], modules[k - 1], terms) for k, terms in enumerate(boundaries, start=1)
    ]
    return FreeResolution(algebra, modules, differentials, {"x": [1], "y": [1]}, name="X")


def sphere_resolution(algebra):
    """A free algebra is its own resolution: one generator x' in degree n-1"""
    module = FreeGradedModule([("x'", -1)], algebra.stems)
    return FreeResolution(algebra, [module], [], {"x'": [1]}, name="W")


@dataclass(eq=False)
class WorkedExample:
    """Every object of the worked example, built in code"""

    stems: StemTable
    algebra: object
    sphere: object
    phi: PiMap
    psi: PiMap
    resolution: FreeResolution
    sphere_resolution: FreeResolution
    brackets: dict = field(default_factory=dict)
    readings: dict = field(default_factory=dict)

    @property
    def loop_algebra(self):
        """ΩΛ as a module over Λ"""
        return as_module(loop(self.algebra), base=self.algebra, name="ΩΛ")

    @property
    def loop_sphere(self):
        """ΩS as a module over S"""
        return as_module(loop(self.sphere), base=self.sphere, name="ΩS")

    def restricted_loop_sphere(self, phi=None):
        """ΩS as a module over Λ, along φ (or another map)"""
        return restrict_scalars(self.loop_sphere, phi or self.phi)

    def coefficients(self, phi=None, times=1):
        """``Ω^k φ`` as a coefficient map over ``φ``"""
        return loop_coefficients(phi or self.phi, times)


def worked_example(stems=None):
    """
    Build the worked example

    Returns
    -------
    WorkedExample
        With brackets ``⟨η,2,α⟩`` (representative β), ``⟨η,2,η⟩`` (representative ν) and ``⟨η,2,0⟩``
    """
    stems = stems or StemTable.default()
    algebra = projective_plane(stems)
    target = sphere(stems)
    two = stems.element("ι", 2)
    eta = stems.element("η")

    brackets = {
        "⟨η,2,α⟩": bracket(BracketTriple(eta, two, algebra, 0, (1,), name="⟨η,2,α⟩"), [1]),
        "⟨η,2,η⟩": bracket(BracketTriple(eta, two, target, 0, (1,), name="⟨η,2,η⟩"), [1]),
        "⟨η,2,0⟩": bracket(BracketTriple(eta, two, target, 0, (0,), name="⟨η,2,0⟩"), [0]),
    }
    return WorkedExample(
        stems=stems,
        algebra=algebra,
        sphere=target,
        phi=degree_one_map(algebra, target),
        psi=degree_two_map(algebra, target),
        resolution=projective_plane_resolution(algebra),
        sphere_resolution=sphere_resolution(target),
        brackets=brackets,
        readings={"⟨η,2,η⟩": dict(ETA_TWO_ETA_READINGS)},
    )
