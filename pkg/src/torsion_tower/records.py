"""Cover volumes, the normalized torsion statistic, and per-cover records.

For a finite-volume hyperbolic 3-manifold or 3-orbifold the statistic is

    tr = 6*pi * ( log|H_1 tor| / vol  -  log(vol) / vol )

with natural logs throughout; the 1/(6*pi) normalization comes from the
L^2-analytic torsion of hyperbolic 3-space, and the second term makes tr
agree with 6*pi times the analytic torsion in the b_1 = 0 case (by the
Cheeger-Mueller identification of analytic torsion with homological torsion
and the regulator, i.e. the covolume of the harmonic-form lattice).  The
regulator and analytic-torsion quantities themselves are never computed
here.

Volume is multiplicative under finite covers, so a degree-d cover of a base
of volume v has volume d*v exactly.
"""

import math
from dataclasses import dataclass
from typing import Optional


class NonpositiveVolume(ValueError):
    """Hyperbolic volumes are strictly positive."""


def cover_volume(base_vol, index):
    """Volume of a degree-`index` cover of a base with volume base_vol."""
    if base_vol <= 0:
        raise NonpositiveVolume(f"base volume {base_vol} must be positive")
    assert index >= 1
    return base_vol * index


def tr_invariant(log_torsion, volume):
    """6*pi * (log_torsion/volume - log(volume)/volume)."""
    if volume <= 0:
        raise NonpositiveVolume(f"volume {volume} must be positive")
    assert log_torsion >= 0
    return 6 * math.pi * (log_torsion - math.log(volume)) / volume


@dataclass(frozen=True)
class CoverRecord:
    """One row of the experiment: a single congruence cover of one orbifold.

    Records with a nonempty error string carry whatever fields were computed
    before the failure; numeric fields that never got a value are None.
    """

    orbifold_id: str
    p: int
    root: int
    n: int
    index: Optional[int] = None
    volume: Optional[float] = None
    b1: Optional[int] = None
    log_torsion: Optional[float] = None
    tr: Optional[float] = None
    transitive: Optional[bool] = None
    error: str = ""

    @property
    def ok(self):
        return self.error == ""

    def sort_key(self):
        return (self.orbifold_id, self.p, self.root, self.n)


def assemble_record(orbifold_id, prime, n, index, summary, base_vol,
                    transitive=True):
    """Populate a CoverRecord from the component results of one cover."""
    assert index >= 1
    vol = cover_volume(base_vol, index)
    return CoverRecord(
        orbifold_id=orbifold_id,
        p=prime.p,
        root=prime.root,
        n=n,
        index=index,
        volume=vol,
        b1=summary.b1,
        log_torsion=summary.log_torsion,
        tr=tr_invariant(summary.log_torsion, vol),
        transitive=transitive,
    )
