"""Simulator for teleportation-based noiseless amplification of coherent states.

Three cross-validated models of the same protocol:

- ``pure``: closed forms for the ideal protocol (pure resource, exact
  conditioning on the central teleportation outcome);
- ``phasespace``: realistic Husimi-mixture model with noisy squeezed sources,
  on-off click detectors, a finite Gaussian acceptance window and corrective
  feed-forward displacement;
- ``fock``: brute-force truncated-Fock oracle used to pin both down.

The ``teleamp`` CLI exposes parameter sweeps (CSV), calibration of the
auxiliary squeezing to a target gain, committed figure datasets and the
cross-model validation suite.
"""

from .params import AmplifierParams, Metrics

__all__ = ["AmplifierParams", "Metrics"]
__version__ = "0.1.0"
