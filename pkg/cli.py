#!/usr/bin/env python3
"""
Command-line surface: build family balls, decide embeddings, emit and check
certificates, and run verification sweeps.

Exit codes: 0 success / Embeds, 1 negative answer or failed self-check,
2 invalid input or unexpected error.
"""

import os
import sys
import logging
import argparse
from typing import List, Optional

from config import Settings, load_settings, setup_logging
from ordinal import compare, fund_seq, parse_ordinal, format_ordinal
from family import (
    ball, ball_size, family_embed_map, format_address, parse_address,
)
from embed import TreeMinorSolver, horizon_family_minor, validate_witness
from certify import certify_nonembed, check_certificate, expand_all, certificate_to_json
from harness import DEFAULT_CORPUS, parse_corpus, run_verification, write_report
from file_processors import load_tree_file, write_output
from formatters import (
    TREE_FORMATS, format_tree, format_ordinal_info, format_decision_line,
    format_record_line, format_summary_lines,
)
from utils import parse_mode, parse_non_negative_int, parse_positive_int

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

# Color codes for terminal output
RED = '\033[0;31m'
GREEN = '\033[0;32m'
YELLOW = '\033[1;33m'
BLUE = '\033[0;34m'
NC = '\033[0m'  # No Color


def print_colored(message, color=NC):
    """Status message on stderr; color only on a terminal"""
    if sys.stderr.isatty():
        message = f"{color}{message}{NC}"
    print(message, file=sys.stderr)


# Commands

def cmd_build(args, settings: Settings) -> int:
    alpha = parse_ordinal(args.alpha)
    radius = parse_non_negative_int(args.radius, 'radius')
    t = ball(alpha, radius)
    write_output(format_tree(t, args.format), args.out)
    print_colored(f"ball({format_ordinal(alpha)}, {radius}): {t.n} vertices", GREEN)
    return EXIT_OK


def cmd_embed(args, settings: Settings) -> int:
    guest = load_tree_file(args.guest, settings.max_tree_bytes, args.input_format)
    host = load_tree_file(args.host, settings.max_tree_bytes, args.input_format)
    mode = parse_mode(args.mode)
    decision = TreeMinorSolver(host).decide(guest, mode)
    print_colored(f"{mode.value}: {format_decision_line(decision)}", GREEN if decision.embeds else YELLOW)
    if not decision.embeds:
        return EXIT_NEGATIVE
    if args.witness:
        if not validate_witness(guest, host, decision.witness):
            print_colored("Witness failed validation", RED)
            return EXIT_ERROR
        write_output(decision.witness.to_json(), args.out)
    return EXIT_OK


def cmd_family_embed(args, settings: Settings) -> int:
    alpha = parse_ordinal(args.alpha)
    beta = parse_ordinal(args.beta)
    image = family_embed_map(alpha, beta, parse_address(args.addr))
    write_output(format_address(image), args.out)
    return EXIT_OK


def cmd_certify(args, settings: Settings) -> int:
    alpha = parse_ordinal(args.alpha)
    beta = parse_ordinal(args.beta)
    expand = parse_non_negative_int(args.expand, 'expand')
    certificate = certify_nonembed(beta, alpha)
    if expand:
        certificate = expand_all(certificate, expand)
    report = check_certificate(certificate, settings.cert_instance_depth)
    if not report.accepted:
        print_colored(f"Self-check failed at {list(report.path)}: {report.reason}", RED)
        return EXIT_NEGATIVE
    write_output(certificate_to_json(certificate), args.out)
    print_colored(f"Certificate for T_{format_ordinal(beta)} not into T_{format_ordinal(alpha)} "
                  f"checked ({report.nodes_checked} nodes)", GREEN)
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    corpus = parse_corpus(args.corpus) if args.corpus else [parse_ordinal(a) for a in DEFAULT_CORPUS]
    d = parse_positive_int(args.d if args.d is not None else settings.verify_guest_radius, 'd')
    dmax = parse_positive_int(args.dmax if args.dmax is not None else settings.verify_host_radius, 'Dmax')
    out = args.out or os.path.join(settings.reports_dir, 'verify_report.json')

    print_colored(f"Verifying {len(set(corpus))} ordinals (d={d}, Dmax={dmax})", BLUE)
    report = run_verification(corpus, d, dmax, settings)
    for record in report['records']:
        ok = record['certificate']['status'] == 'ok' and not record['witnesses_failed']
        print_colored(format_record_line(record), GREEN if ok else RED)
    for line in format_summary_lines(report['summary']):
        print_colored(f"  {line}", BLUE)
    write_report(report, out)
    print_colored(f"Report written to {out}", GREEN)

    summary = report['summary']
    if summary['witnesses_failed'] or summary['certificates_ok'] != summary['pairs']:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_ordinal(args, settings: Settings) -> int:
    first = parse_ordinal(args.ordinal)
    if args.action in ('parse', 'classify'):
        output = format_ordinal_info(first)
        if args.action == 'parse':
            write_output(output['ordinal'])
        else:
            write_output(output['kind'])
        return EXIT_OK
    if args.action == 'compare':
        if args.other is None:
            raise ValueError("compare needs a second ordinal")
        write_output(compare(first, parse_ordinal(args.other)).name)
        return EXIT_OK
    if args.other is None:
        raise ValueError("fundseq needs an index i >= 1")
    write_output(format_ordinal(fund_seq(first, parse_positive_int(args.other, 'i'))))
    return EXIT_OK


def cmd_horizon(args, settings: Settings) -> int:
    guest = load_tree_file(args.guest, settings.max_tree_bytes, args.input_format)
    alpha = parse_ordinal(args.alpha)
    horizon = parse_positive_int(args.horizon if args.horizon is not None else settings.horizon_default,
                                 'horizon')
    decision = horizon_family_minor(guest, alpha, horizon)
    print_colored(format_decision_line(decision), GREEN if decision.embeds else YELLOW)
    if not decision.embeds:
        return EXIT_NEGATIVE
    if args.witness:
        if not validate_witness(guest, alpha, decision.witness):
            print_colored("Witness failed validation", RED)
            return EXIT_ERROR
        write_output(decision.witness.to_json(), args.out)
    return EXIT_OK


def cmd_ball_size(args, settings: Settings) -> int:
    alpha = parse_ordinal(args.alpha)
    radius = parse_non_negative_int(args.radius, 'radius')
    write_output(str(ball_size(alpha, radius)))
    return EXIT_OK


# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='tree-minor',
                                     description='Topological minors of rooted trees and the family T_alpha')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    parser.add_argument('--log-dir', help='also log to <dir>/app.log')
    subparsers = parser.add_subparsers(dest='command', required=True)

    build = subparsers.add_parser('build', help='emit ball(T_alpha, radius)')
    build.add_argument('--alpha', required=True)
    build.add_argument('--radius', required=True)
    build.add_argument('--format', choices=TREE_FORMATS, default='text')
    build.add_argument('--out')
    build.set_defaults(handler=cmd_build)

    embed = subparsers.add_parser('embed', help='decide guest <= host')
    embed.add_argument('guest')
    embed.add_argument('host')
    embed.add_argument('--mode', default='rooted', choices=('rooted', 'free'))
    embed.add_argument('--witness', action='store_true', help='print the validated witness JSON')
    embed.add_argument('--input-format', choices=('text', 'json'))
    embed.add_argument('--out')
    embed.set_defaults(handler=cmd_embed)

    family = subparsers.add_parser('family-embed', help='image of an address under T_alpha <= T_beta')
    family.add_argument('--alpha', required=True)
    family.add_argument('--beta', required=True)
    family.add_argument('--addr', required=True)
    family.add_argument('--out')
    family.set_defaults(handler=cmd_family_embed)

    certify = subparsers.add_parser('certify', help='certificate that T_beta does not embed into T_alpha')
    certify.add_argument('--alpha', required=True)
    certify.add_argument('--beta', required=True)
    certify.add_argument('--expand', default=0, help='expand schematic nodes for instances 1..k')
    certify.add_argument('--out')
    certify.set_defaults(handler=cmd_certify)

    verify = subparsers.add_parser('verify', help='verification sweep over an ordinal corpus')
    verify.add_argument('--corpus', help='comma-separated ordinals or a file holding them')
    verify.add_argument('-d', '--d', dest='d', help='guest radius')
    verify.add_argument('-D', '--dmax', dest='dmax', help='host radius cap')
    verify.add_argument('--out', help='report path')
    verify.set_defaults(handler=cmd_verify)

    ordinal = subparsers.add_parser('ordinal', help='ordinal notation utilities')
    ordinal.add_argument('action', choices=('parse', 'compare', 'fundseq', 'classify'))
    ordinal.add_argument('ordinal')
    ordinal.add_argument('other', nargs='?', help='second ordinal (compare) or index (fundseq)')
    ordinal.set_defaults(handler=cmd_ordinal)

    horizon = subparsers.add_parser('horizon', help='bounded search for guest <= T_alpha')
    horizon.add_argument('guest')
    horizon.add_argument('--alpha', required=True)
    horizon.add_argument('--horizon')
    horizon.add_argument('--witness', action='store_true')
    horizon.add_argument('--input-format', choices=('text', 'json'))
    horizon.add_argument('--out')
    horizon.set_defaults(handler=cmd_horizon)

    size = subparsers.add_parser('ball-size', help='|ball(T_alpha, radius)| from the size recurrence')
    size.add_argument('--alpha', required=True)
    size.add_argument('--radius', required=True)
    size.set_defaults(handler=cmd_ball_size)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR

    settings = load_settings()
    if args.log_dir:
        settings.log_dir = args.log_dir
    setup_logging('DEBUG' if args.verbose else settings.log_level, settings.log_dir)

    try:
        return args.handler(args, settings)
    except ValueError as e:
        print_colored(f"Error: {e}", RED)
        return EXIT_ERROR
    except RecursionError:
        logger.error(f"Recursion limit reached in {args.command}")
        print_colored("Error: input too deep for this command", RED)
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}")
        print_colored(f"Error: {e}", RED)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
