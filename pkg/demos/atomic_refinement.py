"""A joint atomic context for commuting observables.

Any family of jointly commuting observables shares an orthonormal
eigenbasis.  The rank-one projections onto that basis form an atomic
observable whose Lüders instrument refines every member of the family:
conditioning a member on it gives the member back.
"""

import numpy as np

from qcond import (
    NotJointlyCommutingError,
    Observable,
    atomic_context,
    condition_observable,
    distribution,
    is_atomic,
    jointly_commuting,
)

# Two observables diagonal in the same (rotated) basis of C^3.
theta = 0.3
c, s = np.cos(theta), np.sin(theta)
U = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]], dtype=complex)


def rotated(d):
    return U @ np.diag(d).astype(complex) @ U.conj().T


A = Observable(("lo", "hi"), {"lo": rotated([1, 1, 0]), "hi": rotated([0, 0, 1])})
B = Observable(("even", "odd"), {"even": rotated([1, 0, 1]), "odd": rotated([0, 1, 0])})

print("jointly commuting:", jointly_commuting([A, B]))

atoms, ins = atomic_context([A, B])
print("atomic outcomes:", atoms.outcomes)
print("each outcome rank one:", all(is_atomic(atoms.effects[x]) for x in atoms.outcomes))

# Each member effect is a sum of atoms...
for obs, label in [(A, "lo"), (A, "hi"), (B, "even"), (B, "odd")]:
    back = sum(
        atoms.effects[x] for x in atoms.outcomes
        if np.trace(atoms.effects[x] @ obs.effects[label]).real > 0.5
    )
    print(f"reconstructed {label}: ", np.allclose(back, obs.effects[label]))

# ...and conditioning a member on the atomic instrument leaves it unchanged.
for obs, name in [(A, "A"), (B, "B")]:
    cond = condition_observable(obs, ins)
    unchanged = all(
        np.allclose(cond.effects[x], obs.effects[x]) for x in obs.outcomes
    )
    print(f"({name} | atoms) == {name}:", unchanged)

rho = np.diag([0.5, 0.3, 0.2]).astype(complex)
print("atomic distribution:", {k: round(v, 6) for k, v in distribution(rho, atoms).items()})

# A noncommuting family has no joint context.
plus3 = np.zeros((3, 3), dtype=complex)
plus3[:2, :2] = 0.5
C = Observable(("p", "q"), {"p": plus3, "q": np.eye(3) - plus3})
try:
    atomic_context([A, C])
except NotJointlyCommutingError as err:
    print("rejected noncommuting family:", err)
