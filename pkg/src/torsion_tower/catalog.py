"""The bundled orbifold catalog.

Two kinds of entries: runnable specs with full presentation and generator
matrices (small, independently sourced examples used throughout the tests),
and metadata-only specs M1..M5 recording defining polynomial, field
discriminant, quaternion-algebra ramification, level-prime norm, and base
volume for orbifolds whose presentations were never published.  The latter
load fine but cannot be run until the user fills in the presentation slots.
"""

import json
from importlib import resources

from .config import parse_orbifold


def _raw_catalog():
    data = resources.files("torsion_tower.data").joinpath("catalog.json")
    return json.loads(data.read_text(encoding="utf-8"))


def catalog_specs():
    """All bundled OrbifoldSpecs, runnable entries first, in file order."""
    return [parse_orbifold(o) for o in _raw_catalog()["orbifolds"]]


def catalog_spec(oid):
    """The bundled spec with the given id."""
    for spec in catalog_specs():
        if spec.id == oid:
            return spec
    raise KeyError(f"no bundled orbifold named {oid!r}")


def runnable_specs():
    return [s for s in catalog_specs() if s.runnable]
