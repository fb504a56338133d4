"""Lüders conditioning, and where the kernel sum identity breaks.

For events made of a single subspace, the kernels of the calling-off maps
add up to the kernel of the meet.  Two complete measurements in different
bases both keep the identity operator, so the sum of their kernels lies
inside the traceless operators; their meet is the null event, whose kernel
is everything.
"""

import numpy as np

from adbelief import QuantumEvent, luders, q_event_meet
from adbelief.quantum import kernel_sum_residual

ket0, ket1 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
plus, minus = (ket0 + ket1) / np.sqrt(2), (ket0 - ket1) / np.sqrt(2)

rho = np.outer(plus, plus)
print("|+><+| conditioned on |0>:\n", luders(rho, QuantumEvent.from_vectors(2, [[ket0]])).real)

line0 = QuantumEvent.from_vectors(2, [[ket0]])
line_plus = QuantumEvent.from_vectors(2, [[plus]])
print("two lines: residual", kernel_sum_residual(line0, line_plus))

z = QuantumEvent.from_vectors(2, [[ket0], [ket1]])
x = QuantumEvent.from_vectors(2, [[plus], [minus]])
print("meet of the two measurements is null:", q_event_meet(z, x).is_null)
print("two measurements: residual", round(kernel_sum_residual(z, x), 6))
