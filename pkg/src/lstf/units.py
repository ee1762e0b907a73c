"""Unit conventions and physical constants.

Energies are carried in linear-frequency GHz everywhere outside the
integrators; the dynamical phase accumulated over a time t (in ns) by an
energy E (in GHz) is 2*pi*E*t.  Bath spectral densities use angular
frequency in rad/ns, so the single conversion point between the two
conventions is ``angular()``.
"""

import numpy as np

TWO_PI = 2.0 * np.pi

# k_B/hbar in angular GHz (rad/ns) per mK; equivalently k_B/h = 20.837 GHz/K.
KB_OVER_HBAR_PER_MK = 0.1309


def angular(freq_ghz):
    """Convert linear-frequency GHz to angular rad/ns."""
    return TWO_PI * freq_ghz


def inverse_temperature(temperature_mk):
    """Thermal beta = hbar/(k_B T) in ns/rad, for T in mK.

    beta * omega is dimensionless when omega is in rad/ns.
    """
    if temperature_mk <= 0:
        raise ValueError(f"temperature must be positive, got {temperature_mk}")
    return 1.0 / (KB_OVER_HBAR_PER_MK * temperature_mk)
