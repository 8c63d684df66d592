"""thetalab: finite group machinery behind theta transformation laws, verified numerically.

Subpackages by theme: exact roots of unity (`cyclo`), finite Heisenberg
groups and their splittings (`heisenberg`), the Schroedinger representation
(`schrodinger`), mod-4 symplectic groups with the discriminant character
(`symplectic4`), congruence subgroups of SL2(Z) (`congruence`), the
metaplectic double cover (`metaplectic`), the m-dimensional unitary
representation it acts through (`weilrep`), certified theta numerics and
the transformation-law verifier (`thetanum`), and the `thetalab` command
line (`cli`).
"""

from . import (
    congruence,
    cyclo,
    heisenberg,
    metaplectic,
    schrodinger,
    symplectic4,
    thetanum,
    weilrep,
)

__version__ = "0.1.0"

__all__ = [
    "congruence",
    "cyclo",
    "heisenberg",
    "metaplectic",
    "schrodinger",
    "symplectic4",
    "thetanum",
    "weilrep",
    "__version__",
]
