"""Annealing schedules: linear AQA and the locally suppressed LSTF family.

An LSTF plan singles out one target qubit k.  Its transverse drive is
held at c_x until s_x and then ramped linearly to c_1, while its
longitudinal schedule is the single linear function (s - s_x)/(1 - s_x)
over the whole anneal, which is negative before s_x and so flips the
sign of h^z_k there.  Every other qubit keeps full drive until s_x and
only then starts the usual linear crossover.
"""

from dataclasses import dataclass

import numpy as np

AQA = "aqa"
LSTF = "lstf"


@dataclass(frozen=True)
class SchedulePlan:
    """Evaluable per-qubit schedule family.

    variant is "aqa" (a_i = 1-s, b_i = b_ij = s for every qubit) or
    "lstf" with fields target_k, s_x, c_x, c_1.
    """

    variant: str
    target_k: int = None
    s_x: float = 0.2
    c_x: float = 0.0
    c_1: float = 0.0

    def __post_init__(self):
        if self.variant not in (AQA, LSTF):
            raise ValueError(f"unknown schedule variant {self.variant!r}")
        if self.variant == LSTF:
            if self.target_k is None or self.target_k < 0:
                raise ValueError("lstf plan needs a nonnegative target_k")
            if not 0.0 < self.s_x < 1.0:
                raise ValueError(f"s_x must lie in (0, 1), got {self.s_x}")
            if not 0.0 <= self.c_x <= 1.0 or not 0.0 <= self.c_1 <= 1.0:
                raise ValueError("c_x and c_1 must lie in [0, 1]")

    @property
    def is_lstf(self):
        return self.variant == LSTF

    def validate_for(self, n_qubits):
        """Raise if the plan names a qubit the problem does not have."""
        if self.variant == LSTF and not 0 <= self.target_k < n_qubits:
            raise ValueError(
                f"target_k = {self.target_k} outside qubit range 0..{n_qubits - 1}"
            )


def aqa_plan():
    return SchedulePlan(variant=AQA)


def lstf_plan(target_k, s_x=0.2, c_x=0.0, c_1=0.0):
    return SchedulePlan(variant=LSTF, target_k=target_k, s_x=s_x, c_x=c_x, c_1=c_1)


def _checked(s):
    arr = np.asarray(s, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > 1 + 1e-12):
        raise ValueError(f"s outside [0, 1]: {s}")
    return np.clip(arr, 0.0, 1.0)


def _as_input(value, s):
    return float(value) if np.ndim(s) == 0 else value


def driver_coeff(plan, i, s):
    """Transverse-drive schedule a_i(s)."""
    sv = _checked(s)
    if plan.variant == AQA:
        return _as_input(1.0 - sv, s)
    ramp = (sv - plan.s_x) / (1.0 - plan.s_x)
    if i == plan.target_k:
        out = np.where(sv <= plan.s_x, plan.c_x, plan.c_x + (plan.c_1 - plan.c_x) * ramp)
    else:
        out = np.where(sv <= plan.s_x, 1.0, 1.0 - ramp)
    return _as_input(out, s)


def problem_coeff(plan, i, s):
    """Longitudinal-field schedule b_i(s)."""
    sv = _checked(s)
    if plan.variant == AQA:
        return _as_input(sv, s)
    ramp = (sv - plan.s_x) / (1.0 - plan.s_x)
    if i == plan.target_k:
        out = ramp
    else:
        out = np.where(sv <= plan.s_x, 0.0, ramp)
    return _as_input(out, s)


def coupler_coeff(plan, ij, s):
    """Coupler schedule b_ij(s); same form as the non-target b_i."""
    sv = _checked(s)
    if plan.variant == AQA:
        return _as_input(sv, s)
    ramp = (sv - plan.s_x) / (1.0 - plan.s_x)
    out = np.where(sv <= plan.s_x, 0.0, ramp)
    return _as_input(out, s)


def breakpoints(plan):
    """Ordered s values at which any schedule has a kink."""
    if plan.variant == LSTF:
        return (0.0, plan.s_x, 1.0)
    return (0.0, 1.0)
