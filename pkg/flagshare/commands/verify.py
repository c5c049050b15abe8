"""
verify: certify a shipped scheme against every single fault.

Writes the certificate as JSON and, per main gadget, its full single-fault
table and its wire table (X and Z after each CNOT) as CSV under
``<out>/verify/``.
"""

import logging
from pathlib import Path

from ..decode import Mode, Procedure
from ..ftcheck import certify, certify_exrec, fault_table, wire_fault_table, write_fault_table
from ..schemes import build_scheme, check_procedure
from ..utils.decorators import EXIT_FAILURE, EXIT_OK, logged_command

# Initialize logger
logger = logging.getLogger(__name__)


@logged_command
def run(args) -> int:
    scheme = build_scheme(args.code, args.scheme, args.scheme_seed)
    procedure = Procedure(args.procedure)
    check_procedure(scheme, procedure)
    certificate = certify(scheme, procedure, Mode(args.mode))

    folder = Path(args.out) / "verify"
    base = f"{args.code}_{args.scheme}_{procedure.value}"
    certificate.write(str(folder / f"{base}_certificate.json"))
    for i, gadget in enumerate(scheme.gadgets):
        write_fault_table(fault_table(gadget, scheme.code), str(folder / f"{base}_main{i}_faults.csv"))
        write_fault_table(wire_fault_table(gadget, scheme.code), str(folder / f"{base}_main{i}_wires.csv"))

    print(f"{certificate.subject} [{certificate.procedure}, {certificate.mode}]: {certificate.verdict} "
          f"({certificate.faults_checked} cases)")
    for name, count in certificate.b_counts.items():
        print(f"  b_count {name}: {count}")
    for bad in certificate.bad_locations:
        print(f"  bad: {bad.slot} {bad.fault} -> {bad.final}")
    for collision in certificate.collisions:
        print(f"  collision: {collision['key']} {collision['conflicting']}")
    passed = certificate.passed

    if args.exrec:
        exrec = certify_exrec(scheme, procedure, Mode(args.mode))
        exrec.write(str(folder / f"{base}_exrec_certificate.json"))
        print(f"{exrec.subject}: {exrec.verdict} ({exrec.faults_checked} faults)")
        for bad in exrec.bad_locations:
            print(f"  bad: {bad.fault} -> {bad.final}")
        passed = passed and exrec.passed

    return EXIT_OK if passed else EXIT_FAILURE
