"""Measurement entropies: sequential versus conditional.

For an effect b measured after a context, two entropies compete:

  sequential   -p ln(p / tr(dual(b)))   (entropy of "a, then b")
  conditional  -p ln(p / tr(b))         (entropy of b after the update)

They share the numerator p, so their order is decided by the denominators:
sequential <= conditional for every state exactly when
tr(dual(b)) <= tr(b).  Lüders contexts always satisfy it; Holevo contexts
can break it.
"""

import math

import numpy as np

from qcond import (
    Observable,
    conditional_effect_entropy,
    conditional_observable_entropy_double,
    conditional_observable_entropy_single,
    effect_entropy,
    holevo,
    luders,
    luders_instrument,
    observable_entropy,
    sequential_entropy,
    sequential_entropy_dominated,
)

a = np.diag([0.5, 0.125]).astype(complex)
b = np.diag([0.25, 0.75]).astype(complex)
rho = np.diag([0.75, 0.25]).astype(complex)

print("H(a) =", effect_entropy(rho, a))

# --- Lüders: sequential never exceeds conditional ----------------------------

ctx = luders(a)
print("dominated (Lüders):", sequential_entropy_dominated(ctx, b))
print("sequential :", sequential_entropy(rho, ctx, b))
print("conditional:", conditional_effect_entropy(rho, ctx, b))

# --- Holevo: the order can flip ----------------------------------------------
# Measure the trivial effect I but re-prepare |+><+|; follow with the atomic
# effect b = |+><+|.  Then dual(b) = tr(alpha b) I = I has trace 2 while
# tr(b) = 1, so the sequential entropy is strictly larger.

plus = np.full((2, 2), 0.5, dtype=complex)
hol = holevo(np.eye(2), plus)
print("\ndominated (Holevo):", sequential_entropy_dominated(hol, plus))
s_seq = sequential_entropy(rho, hol, plus)
s_cond = conditional_effect_entropy(rho, hol, plus)
print("sequential :", s_seq, "(= ln 2:", math.isclose(s_seq, math.log(2)), ")")
print("conditional:", s_cond)

# --- observable entropies and the conditioning chain -------------------------
# Double-bar conditioning is just the plain entropy at the bar-channel image,
# so it composes exactly along a chain of instruments.

P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)
Z = Observable(("0", "1"), {"0": P0, "1": P1})
X = Observable(("+", "-"), {"+": plus, "-": np.eye(2) - plus})
ins = luders_instrument(Z)

print("\nH(X) =", observable_entropy(rho, X))
print("H(X || Z) double:", conditional_observable_entropy_double(rho, ins, X))
print("H(X | Z) single: ", conditional_observable_entropy_single(rho, ins, X))
