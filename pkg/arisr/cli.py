#! /usr/bin/env python3

"""Command line front end.

Exit codes: 2 when the input cannot be parsed or used, 1 when a
verification fails, 0 otherwise.
"""

import argparse
import logging
import os
from pathlib import Path
import sys

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent))
    __package__ = module_dir.name

logger = logging.getLogger(__name__ if __name__ != '__main__' else os.path.basename(sys.argv[0]))

from .common import ArisrError, format_polynomial
from .matroids.matroid import tutte
from .matroids.arith import arithmetic_tutte, arithmetic_tutte_at_one, check_axioms
from .parsers.input_spec import load_input, STRUCTURES
from .posets.poset import (build_poset, components, poset_f_vector, poset_h_vector,
                           element_labels, export_dot)
from .rings.sr_ring import sr_ideal, render_ideal, verify_hilbert, verify_reduced_hilbert
from .structures.gstruct import validate_structure, format_set

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

def command_tutte(spec, args) -> int:
    M = spec.matroid()
    m = spec.multiplicity()
    print(f"Tutte: {format_polynomial(tutte(M))}")
    if m.total:
        print(f"arithmetic Tutte: {format_polynomial(arithmetic_tutte(M, m))}")
    else:
        print(f"arithmetic Tutte at y=1: {format_polynomial(arithmetic_tutte_at_one(M, m))}")
    return EXIT_OK

def command_poset(spec, args) -> int:
    P = build_poset(spec.structure(args.structure, args.torsion_free))
    parts = components(P)
    print(f"{len(P)} elements, {len(parts)} component(s), rank {P.rank}")
    for i, C in enumerate(parts):
        print(f"component {i}: f = {poset_f_vector(C)}, h = {poset_h_vector(C)}")
    if args.dot:
        Path(args.dot).write_text(export_dot(P, element_labels(P)))
        logger.info(f"Hasse diagram written to {args.dot}")
    return EXIT_OK

def command_ideal(spec, args) -> int:
    P = build_poset(spec.structure(args.structure, args.torsion_free))
    sys.stdout.write(render_ideal(sr_ideal(P), element_labels(P)))
    return EXIT_OK

def command_hilbert(spec, args) -> int:
    G = spec.structure(args.structure)
    if G.order(()) == 1:
        report = verify_hilbert(build_poset(G), args.max_degree)
    else:
        report = verify_reduced_hilbert(G, args.max_degree)
    print(report.render())
    return EXIT_OK if report else EXIT_FAILED

def command_check_axioms(spec, args) -> int:
    report = check_axioms(spec.matroid(), spec.multiplicity())
    print(report.render())
    return EXIT_OK if report.all_hold else EXIT_FAILED

def command_validate(spec, args) -> int:
    G = spec.structure(args.structure, args.torsion_free)
    for S in G.faces:
        print(f"{format_set(S)}: {G.group(S)}")
    report = validate_structure(G)
    if report:
        print("valid")
        return EXIT_OK
    for failure in report.failures:
        print(f"invalid: {failure}")
    return EXIT_FAILED

COMMANDS = {
    'tutte': command_tutte,
    'poset': command_poset,
    'ideal': command_ideal,
    'hilbert': command_hilbert,
    'check-axioms': command_check_axioms,
    'validate': command_validate,
}

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arisr",
                                     description="Arithmetic matroids, independence posets and their Stanley-Reisner rings.")
    parser.add_argument("--debug", dest="debug", action="store_true",
                        default=False,
                        help="Display debug messages")
    subparsers = parser.add_subparsers(dest="command")

    def add_command(name: str, help: str, structure: bool = False):
        sub = subparsers.add_parser(name, help=help)
        sub.add_argument("source", type=str,
                         help="Input file (JSON or YAML)")
        if structure:
            sub.add_argument("--structure", choices=STRUCTURES, default="cyclic",
                             help="Group structure to build (default cyclic)")
        return sub

    add_command("tutte", "Tutte and arithmetic Tutte polynomials")
    sub = add_command("poset", "f- and h-vectors of the independence poset", structure=True)
    sub.add_argument("--torsion-free", action="store_true", default=False,
                     help="Use the torsion-free reduction of the structure")
    sub.add_argument("--dot", type=str, default=None,
                     help="Write the Hasse diagram in DOT format to this file")
    sub = add_command("ideal", "Generators of the Stanley-Reisner ideal", structure=True)
    sub.add_argument("--torsion-free", action="store_true", default=False,
                     help="Use the torsion-free reduction of the structure")
    sub = add_command("hilbert", "Compare the Hilbert function with the closed form", structure=True)
    sub.add_argument("--max-degree", type=int, default=None,
                     help="Highest degree to check (default rank + 3)")
    add_command("check-axioms", "Check the axioms (P), (A1) and (A2)")
    sub = add_command("validate", "Validate the group structure", structure=True)
    sub.add_argument("--torsion-free", action="store_true", default=False,
                     help="Use the torsion-free reduction of the structure")
    return parser

def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_INPUT
    loglevel = logging.INFO
    if args.debug:
        loglevel = logging.DEBUG
    logging.basicConfig(level=loglevel,
                        format='%(asctime)s %(levelname)-8s %(name)s %(message)s',
                        datefmt='%Y-%m-%d %H:%M:%S')
    try:
        spec = load_input(Path(args.source))
    except ArisrError as e:
        logger.error(f"Cannot use {args.source}: {e}")
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](spec, args)
    except ArisrError as e:
        logger.error(f"{args.command} failed on {args.source}: {e}")
        return EXIT_INPUT

def main():
    sys.exit(run())

if __name__ == "__main__":
    main()
