"""
flagshare: flagged and shared-flag parallel syndrome extraction for small CSS codes.

The package builds syndrome-extraction circuits (standard flagged, shared-flag
parallel and mutual-flag parts), certifies them against every single fault,
decodes flag outcomes with lookup tables and estimates logical error rates
and pseudo-thresholds by Monte Carlo.

Modules:
    - pauli, gf2: Phase-free Pauli operators and GF(2) spans
    - codes: CSS code catalog and minimum-weight decoding
    - circuit: Circuits, builders, schemes and location census
    - faults, propagate: Noise model and Pauli-frame propagation
    - decode, protocol: Flag decoders and the round driver
    - ftcheck: Fault tables, certification and schedule searches
    - schemes, reference: Shipped schemes and reference values
    - montecarlo: Rate estimates and threshold search
"""

__version__ = "1.0.0"
