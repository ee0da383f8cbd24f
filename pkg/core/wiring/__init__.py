"""Classical wirings around boxes and the named protocols built from them."""

from .codec import dumps_wiring, loads_wiring, read_wiring_file, write_wiring_file
from .compose import WiredBox, compose, identity_wiring, run_gates
from .gates import Gate, GateOp, format_gate, parse_gate
from .models import RandomnessSpec, Stage, Wiring
from .protocols import (
    pr_to_racbox_wiring,
    rac_to_pr_plus_erasure_protocol,
    rac_to_pr_plus_erasure_wiring,
    racbox_plus_cbit_to_rac,
    racbox_plus_cbit_wiring,
    racbox_to_pr_wiring,
    signalling_racbox_wiring,
)

__all__ = [
    "Gate",
    "GateOp",
    "RandomnessSpec",
    "Stage",
    "WiredBox",
    "Wiring",
    "compose",
    "dumps_wiring",
    "format_gate",
    "identity_wiring",
    "loads_wiring",
    "parse_gate",
    "pr_to_racbox_wiring",
    "rac_to_pr_plus_erasure_protocol",
    "rac_to_pr_plus_erasure_wiring",
    "racbox_plus_cbit_to_rac",
    "racbox_plus_cbit_wiring",
    "racbox_to_pr_wiring",
    "read_wiring_file",
    "run_gates",
    "signalling_racbox_wiring",
    "write_wiring_file",
]
