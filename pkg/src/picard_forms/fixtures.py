"""Bundled fixture corpus.

Surfaces: the Fermat quartic, a smooth quadric and cubic, the Steiner Roman
surface with its three double lines, and the two cones that produce nonzero
solution spaces at desk scale.  Each also exists in a `_randomized` variant
(seeded random coordinate change).  Plane curves: the nodal cubic, the
three-node quartic, and smooth curves of degree 2..4.
"""

from __future__ import annotations

import copy

from .plane_lemma import PlaneCurve, load_plane_curve
from .surface import SurfaceModel, load_surface, randomized_variant

SURFACE_DOCUMENTS = {
    "fermat_quartic": {
        "name": "fermat_quartic",
        "field": "rationals",
        "F": "x^4 + y^4 + z^4 + w^4",
        "double_curve": {"generators": [], "samples": []},
        "ordinary": True,
        "expected": {"q_an": 0, "p_g": 1, "delta": 36, "euler": 24, "sectional_genus": 3},
    },
    "smooth_quadric": {
        "name": "smooth_quadric",
        "field": "rationals",
        "F": "x^2 + y^2 + z^2 + w^2",
        "double_curve": {"generators": [], "samples": []},
        "ordinary": True,
        "expected": {"q_an": 0, "p_g": 0, "delta": 2, "euler": 4, "sectional_genus": 0},
    },
    "smooth_cubic": {
        "name": "smooth_cubic",
        "field": "rationals",
        "F": "x^3 + y^3 + z^3 + w^3",
        "double_curve": {"generators": [], "samples": []},
        "ordinary": True,
        "expected": {"q_an": 0, "p_g": 0, "delta": 12, "euler": 9, "sectional_genus": 1},
    },
    "steiner_roman": {
        "name": "steiner_roman",
        "field": "rationals",
        "F": "x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*w",
        "double_curve": {
            "generators": ["x*y", "y*z", "z*x"],
            "samples": [
                [0, 0, 1, 0],
                [0, 0, 1, 1],
                [0, 0, 1, 2],
                [1, 0, 0, 0],
                [1, 0, 0, 1],
                [0, 1, 0, 0],
                [0, 1, 0, 3],
                [0, 0, 0, 1],
            ],
            "parametrizations": [
                {"coords": ["0", "0", "t", "1"]},
                {"coords": ["t", "0", "0", "1"]},
                {"coords": ["0", "t", "0", "1"]},
            ],
            "generators_complete": True,
        },
        "ordinary": True,
        "triple_points": 1,
        "expected": {"q_an": 0, "p_g": 0},
    },
    "cone_cubic": {
        "name": "cone_cubic",
        "field": "rationals",
        "F": "x^3 + y^3 + z^3",
        "double_curve": {"generators": [], "samples": []},
        "ordinary": False,
        "expected": {"q_an": 1, "p_g": 0},
    },
    "cone_quartic": {
        "name": "cone_quartic",
        "field": "rationals",
        "F": "x^4 + y^4 + z^4",
        "double_curve": {"generators": [], "samples": []},
        "ordinary": False,
        "expected": {"q_an": 4, "p_g": 1},
    },
}

CURVE_DOCUMENTS = {
    "nodal_cubic": {
        "name": "nodal_cubic",
        "field": "rationals",
        "g": "y^2*z - x^3 - x^2*z",
        "nodal": True,
        "nodes": [[0, 0, 1]],
    },
    "nodal_quartic": {
        "name": "nodal_quartic",
        "field": "rationals",
        "g": "x^2*y^2 + y^2*z^2 + z^2*x^2",
        "nodal": True,
        "nodes": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    },
    "smooth_conic_curve": {
        "name": "smooth_conic_curve",
        "field": "rationals",
        "g": "x^2 + y^2 + z^2",
        "nodal": True,
        "nodes": [],
    },
    "smooth_cubic_curve": {
        "name": "smooth_cubic_curve",
        "field": "rationals",
        "g": "x^3 + y^3 + z^3",
        "nodal": True,
        "nodes": [],
    },
    "smooth_quartic_curve": {
        "name": "smooth_quartic_curve",
        "field": "rationals",
        "g": "x^4 + y^4 + z^4",
        "nodal": True,
        "nodes": [],
    },
}

# one fixed seed per randomized variant keeps the corpus reproducible
RANDOMIZE_SEED = 20127


def surface_names() -> list[str]:
    names = sorted(SURFACE_DOCUMENTS)
    return names + [f"{n}_randomized" for n in names]


def curve_names() -> list[str]:
    return sorted(CURVE_DOCUMENTS)


def bundled_surface(name: str) -> SurfaceModel:
    if name.endswith("_randomized"):
        base = bundled_surface(name[: -len("_randomized")])
        return randomized_variant(base, RANDOMIZE_SEED)
    return load_surface(copy.deepcopy(SURFACE_DOCUMENTS[name]))


def bundled_curve(name: str) -> PlaneCurve:
    return load_plane_curve(copy.deepcopy(CURVE_DOCUMENTS[name]))


def bundled_document(name: str) -> dict:
    """Fixture document by name; randomized variants are serialized models."""
    if name in CURVE_DOCUMENTS:
        return copy.deepcopy(CURVE_DOCUMENTS[name])
    if name in SURFACE_DOCUMENTS:
        return copy.deepcopy(SURFACE_DOCUMENTS[name])
    if name.endswith("_randomized") and name[: -len("_randomized")] in SURFACE_DOCUMENTS:
        return bundled_surface(name).to_document()
    raise KeyError(name)


def all_fixture_names() -> list[str]:
    return surface_names() + curve_names()
