#! /usr/bin/env python3

# Compute polynomials, posets, ideals and Hilbert checks for every fixture
import argparse
import atexit
import logging
import os
from pathlib import Path
import re
import sys

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent))
    __package__ = module_dir.name

from .common import ArisrError, Config, FixtureStatus, format_polynomial

logger = logging.getLogger(__name__ if __name__ != '__main__' else os.path.basename(sys.argv[0]))

from .matroids.matroid import tutte, f_vector, h_vector
from .matroids.arith import arithmetic_tutte, arithmetic_tutte_at_one, check_axioms
from .parsers.input_spec import load_input
from .posets.poset import build_poset, components, poset_f_vector, poset_h_vector, element_labels, export_dot
from .rings.sr_ring import sr_ideal, render_ideal, verify_hilbert, verify_reduced_hilbert

def tutte_data(spec) -> dict:
    M = spec.matroid()
    m = spec.multiplicity()
    data = { 'tutte': format_polynomial(tutte(M)),
             'f': f_vector(M),
             'h': h_vector(M),
             'multiplicity': m.as_list() }
    if m.total:
        data['arithmetic_tutte'] = format_polynomial(arithmetic_tutte(M, m))
        data['axioms'] = check_axioms(M, m).as_dict()
    else:
        data['arithmetic_tutte_at_one'] = format_polynomial(arithmetic_tutte_at_one(M, m))
    return data

def poset_data(P) -> dict:
    return { 'elements': len(P),
             'rank': P.rank,
             'components': [ { 'f': poset_f_vector(C), 'h': poset_h_vector(C) }
                             for C in components(P) ] }

def execute_workflow(args):
    config = Config(args.data_dir, args.output_dir)

    for name in config.fixtures():
        if args.limit_fixture and not re.match(args.limit_fixture, name):
            continue
        status = config.status(name)
        if FixtureStatus.verified in status and not args.force:
            logger.debug(f"Fixture {name} already verified - not redoing")
            continue
        try:
            spec = load_input(config.file(name, 'fixtures'))
        except ArisrError as e:
            logger.error(f"Cannot parse fixture {name}: {e}")
            continue
        logger.info(f"Processing {name}")
        report = { 'fixture': name, 'structure': args.structure }

        try:
            if args.tutte:
                report['tutte'] = tutte_data(spec)

            G = None
            if args.poset or args.ideal or args.hilbert:
                G = spec.structure(args.structure)

            if args.poset:
                P = build_poset(G)
                report['poset'] = poset_data(P)
                config.save_data(export_dot(P, element_labels(P)), name, 'dot')

            if args.ideal:
                reduced = G if G.order(()) == 1 else spec.structure(args.structure, torsion_free=True)
                P = build_poset(reduced)
                config.save_data(render_ideal(sr_ideal(P), element_labels(P)), name, 'ideals')

            if args.hilbert:
                if G.order(()) == 1:
                    hilbert = verify_hilbert(build_poset(G), args.max_degree)
                else:
                    hilbert = verify_reduced_hilbert(G, args.max_degree)
                report['hilbert'] = hilbert.as_dict()
                if not hilbert:
                    logger.warning(f"Hilbert function mismatch for {name}")
        except ArisrError as e:
            logger.error(f"Cannot process fixture {name}: {e}")
            report['error'] = str(e)

        config.save_data({ 'data': report }, name, 'reports')
    logger.info("Workflow done")

if __name__ == "__main__":

    parser = argparse.ArgumentParser(description="Process every fixture of a data directory.")
    parser.add_argument("data_dir", type=str, nargs='?',
                        help="Data directory (with a fixtures/ subdirectory) - mandatory")
    parser.add_argument("--output-dir", type=str, default=None,
                        help="Output directory (default is DATADIR/output)")
    parser.add_argument("--debug", dest="debug", action="store_true",
                        default=False,
                        help="Display debug messages")
    parser.add_argument("--force", dest="force", action="store_true",
                        default=False,
                        help="Process fixtures even if they are already verified")
    parser.add_argument("--single-instance", action=argparse.BooleanOptionalAction,
                        default=True,
                        help="Exits if a lockfile is present (the process is already running)")
    parser.add_argument("--limit-fixture", action="store",
                        default="",
                        help="Limit processing to fixtures matching regexp (eg pair for doubled_pair, torsion_pair)")
    parser.add_argument("--structure", choices=["layer", "cyclic", "face"], default="cyclic",
                        help="Group structure to build")
    parser.add_argument("--max-degree", type=int, default=None,
                        help="Highest degree for the Hilbert check (default rank + 3)")

    # Processing steps
    parser.add_argument("--tutte", action=argparse.BooleanOptionalAction,
                        default=True,
                        help="Compute Tutte polynomials and check the axioms")
    parser.add_argument("--poset", action=argparse.BooleanOptionalAction,
                        default=True,
                        help="Build the independence poset and its Hasse diagram")
    parser.add_argument("--ideal", action=argparse.BooleanOptionalAction,
                        default=False,
                        help="Write the Stanley-Reisner ideal")
    parser.add_argument("--hilbert", action=argparse.BooleanOptionalAction,
                        default=False,
                        help="Compare the Hilbert function with the closed form")

    args = parser.parse_args()
    if args.data_dir is None:
        parser.print_help()
        sys.exit(1)
    loglevel = logging.INFO
    if args.debug:
        loglevel = logging.DEBUG
    logging.basicConfig(level=loglevel,
                        format='%(asctime)s %(levelname)-8s %(name)s %(message)s',
                        datefmt='%Y-%m-%d %H:%M:%S')

    args.data_dir = Path(args.data_dir)

    if args.single_instance:
        lockfile = args.data_dir / "arisr.lock"
        # Checking for the presence of lock file
        if lockfile.exists():
            logger.error(f"workflow already running as process {lockfile.read_text()} - exiting")
            sys.exit(1)
        else:
            lockfile.write_text(str(os.getpid()))
            # Remove file on script exit
            atexit.register(lambda f: f.unlink(), lockfile)

    execute_workflow(args)
