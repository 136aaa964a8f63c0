"""
Desk-scale verification sweep over an ordinal corpus: positive host radii,
finite refutations (rooted and free), and certificate checks per pair
"""

import os
import json
import time
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ordinal import Ordinal, format_ordinal, parse_ordinal
from family import EmbedMode, ball
from embed import EmbedDecision, TreeMinorSolver, validate_witness
from certify import certify_nonembed, check_certificate, certificate_depth
from config import Settings

logger = logging.getLogger(__name__)

DEFAULT_CORPUS = ('1', '2', '3', '4', '5', 'w', 'w+1', 'w+2', 'w*2', 'w*2+1', 'w^2', 'w^2+w', 'w^w')


class WitnessCounter:
    """Validates every Embeds witness produced during a sweep"""

    def __init__(self):
        self.validated = 0
        self.failed = 0

    def check(self, guest, host, decision: EmbedDecision):
        if not decision.embeds:
            return
        if validate_witness(guest, host, decision.witness):
            self.validated += 1
        else:
            self.failed += 1
            logger.error(f"Witness failed validation for {guest.n}-vertex guest into {host.n}-vertex host")


def min_host_radius(alpha: Ordinal, beta: Ordinal, d: int, dmax: int,
                    counter: Optional[WitnessCounter] = None) -> Tuple[Optional[int], Optional[EmbedDecision]]:
    """Smallest D <= dmax with ball(alpha, d) a rooted minor of ball(beta, D)"""
    guest = ball(alpha, d)
    for radius in range(dmax + 1):
        host = ball(beta, radius)
        decision = TreeMinorSolver(host).rooted(guest)
        if decision.embeds:
            if counter is not None:
                counter.check(guest, host, decision)
            return radius, decision
    return None, None


def refutation_radius(beta: Ordinal, alpha: Ordinal, d: int, dmax: int,
                      mode: EmbedMode = EmbedMode.ROOTED,
                      counter: Optional[WitnessCounter] = None) -> Optional[int]:
    """Smallest d_w <= d with ball(beta, d_w) not a minor of ball(alpha, dmax)"""
    host = ball(alpha, dmax)
    solver = TreeMinorSolver(host)
    for radius in range(1, d + 1):
        guest = ball(beta, radius)
        decision = solver.decide(guest, mode)
        if not decision.embeds:
            return radius
        if counter is not None:
            counter.check(guest, host, decision)
    return None


def refuted_at_all_radii(beta: Ordinal, alpha: Ordinal, d_w: int, dmax: int,
                         mode: EmbedMode = EmbedMode.ROOTED) -> bool:
    """Monotone evidence: ball(beta, d_w) fails against every ball(alpha, D), D <= dmax"""
    guest = ball(beta, d_w)
    return all(not TreeMinorSolver(ball(alpha, radius)).decide(guest, mode).embeds
               for radius in range(dmax + 1))


def verify_pair(alpha: Ordinal, beta: Ordinal, d: int, dmax: int, settings: Settings) -> Dict:
    """All evidence for one pair alpha < beta"""
    started = time.perf_counter()
    counter = WitnessCounter()
    record = {'alpha': format_ordinal(alpha), 'beta': format_ordinal(beta)}

    radius, _ = min_host_radius(alpha, beta, d, dmax, counter)
    record['positive'] = {'min_host_radius': radius} if radius is not None else {'not_found_up_to': dmax}

    d_w = refutation_radius(beta, alpha, d, dmax, EmbedMode.ROOTED, counter)
    if d_w is not None:
        record['negative'] = {'refutation_radius': d_w, 'host_radius': dmax}
    else:
        record['negative'] = {'no_finite_refutation_up_to': d, 'host_radius': dmax}
        logger.warning(f"No finite refutation of T_{record['beta']} <= T_{record['alpha']} up to radius {d}")

    if d_w is not None:
        free_d_w = refutation_radius(beta, alpha, d, dmax, EmbedMode.FREE, counter)
        if free_d_w is not None:
            record['free_negative'] = {'refutation_radius': free_d_w, 'host_radius': dmax}
        else:
            record['free_negative'] = {'no_finite_refutation_up_to': d, 'host_radius': dmax}
    else:
        record['free_negative'] = {'skipped': 'no rooted refutation'}

    certificate = certify_nonembed(beta, alpha)
    report = check_certificate(certificate, settings.cert_instance_depth)
    depth = certificate_depth(certificate)
    record['certificate'] = {'status': 'ok' if report.accepted else 'fail', 'depth': depth,
                             'depth_exceeded': depth > settings.cert_max_depth,
                             'nodes_checked': report.nodes_checked}
    if not report.accepted:
        record['certificate']['reason'] = report.reason
    elif depth > settings.cert_max_depth:
        logger.warning(f"Certificate for ({record['alpha']}, {record['beta']}) has depth {depth}, "
                       f"above the configured bound {settings.cert_max_depth}")

    record['witnesses_validated'] = counter.validated
    record['witnesses_failed'] = counter.failed
    record['seconds'] = round(time.perf_counter() - started, 4)
    logger.info(f"Verified pair ({record['alpha']}, {record['beta']}) in {record['seconds']}s")
    return record


def chain_summary(records: Sequence[Dict]) -> Dict:
    return {
        'pairs': len(records),
        'positive_found': sum(1 for r in records if 'min_host_radius' in r['positive']),
        'finite_refutations': sum(1 for r in records if 'refutation_radius' in r['negative']),
        'no_finite_refutation': sum(1 for r in records if 'no_finite_refutation_up_to' in r['negative']),
        'free_refutations': sum(1 for r in records if 'refutation_radius' in r['free_negative']),
        'certificates_ok': sum(1 for r in records if r['certificate']['status'] == 'ok'),
        'certificates_over_depth_bound': sum(1 for r in records if r['certificate'].get('depth_exceeded')),
        'witnesses_failed': sum(r['witnesses_failed'] for r in records),
    }


def run_verification(corpus: Sequence[Ordinal], d: int, dmax: int, settings: Settings) -> Dict:
    """Report over every pair alpha < beta of the corpus"""
    if d < 1 or dmax < d:
        raise ValueError(f"Need 1 <= d <= Dmax, got d={d}, Dmax={dmax}")
    ordinals = sorted(set(corpus))
    if not ordinals or not ordinals[0]:
        raise ValueError("Corpus ordinals must all be >= 1")

    logger.info(f"Verifying {len(ordinals)} ordinals with guest radius {d} and host radius cap {dmax}")
    records: List[Dict] = []
    for index, alpha in enumerate(ordinals):
        for beta in ordinals[index + 1:]:
            records.append(verify_pair(alpha, beta, d, dmax, settings))

    seconds = np.array([r['seconds'] for r in records], dtype=float)
    timings = {
        'total_seconds': round(float(seconds.sum()), 4) if seconds.size else 0.0,
        'median_record_seconds': round(float(np.median(seconds)), 4) if seconds.size else 0.0,
        'max_record_seconds': round(float(seconds.max()), 4) if seconds.size else 0.0,
    }
    return {
        'corpus': {
            'ordinals': [format_ordinal(a) for a in ordinals],
            'guest_radius': d,
            'host_radius_cap': dmax,
            'instance_depth': settings.cert_instance_depth,
        },
        'records': records,
        'summary': chain_summary(records),
        'timings': timings,
    }


def parse_corpus(text: str) -> List[Ordinal]:
    """Comma- or whitespace-separated ordinal list; a path to a file holding one is also accepted"""
    if os.path.isfile(text):
        with open(text, 'r') as f:
            text = f.read()
    parts = [part for part in text.replace(',', ' ').split() if part]
    return [parse_ordinal(part) for part in parts]


def write_report(report: Dict, path: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(report, f, indent=2)
    logger.info(f"Report written to {path}")
